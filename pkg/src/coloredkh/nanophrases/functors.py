"""Sign functions and the functors to the built-in target alphabets."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from ..errors import ValidationError
from .data import ONE, STAR, TWO, ZERO, HomotopyData
from .phrase import Nanophrase

# (sign_L, second sign) -> alpha_* letter
STAR_LABELS = {(1, 1): "a+", (1, -1): "b+", (-1, 1): "b-", (-1, -1): "a-"}


@dataclass(frozen=True)
class SignProfile:
    """A subset ``L`` of the alphabet, optionally refined by ``L1 ⊂ L``.

    ``L`` must be disjoint from its image under the profile's involution
    (``tau`` by default, ``nu`` for the second-type functor).  When ``L1`` is
    given, ``nu(L) = L``, ``L1`` is disjoint from ``nu(L1)`` and both are
    nonempty.
    """

    data: HomotopyData
    L: frozenset
    L1: frozenset | None = None
    involution: str = "tau"

    def __post_init__(self):
        L = frozenset(self.L)
        object.__setattr__(self, "L", L)
        if self.involution not in ("tau", "nu"):
            raise ValidationError("involution must be 'tau' or 'nu'")
        alpha = set(self.data.alphabet)
        if not L:
            raise ValidationError("L must be nonempty")
        if not L <= alpha:
            raise ValidationError(f"L contains letters outside the alphabet: {sorted(L - alpha)}")
        flip = self.flip()
        if L & flip:
            raise ValidationError(f"L meets {self.involution}(L) in {sorted(L & flip)}")
        if self.L1 is not None:
            if self.involution != "tau":
                raise ValidationError("L1 refines a tau-profile only")
            L1 = frozenset(self.L1)
            object.__setattr__(self, "L1", L1)
            nu = self.data.nu
            if not L1:
                raise ValidationError("L1 must be nonempty")
            if {nu[a] for a in L} != L:
                raise ValidationError("L must be closed under nu")
            nuL1 = {nu[a] for a in L1}
            if not L1 <= L:
                raise ValidationError("L1 must lie inside L")
            if L1 & nuL1:
                raise ValidationError(f"L1 meets nu(L1) in {sorted(L1 & nuL1)}")

    @classmethod
    def make(cls, data: HomotopyData, L: Iterable[str], L1: Iterable[str] | None = None,
             involution: str = "tau") -> "SignProfile":
        return cls(data, frozenset(L), None if L1 is None else frozenset(L1), involution)

    def flip(self) -> frozenset:
        f = self.data.tau if self.involution == "tau" else self.data.nu
        return frozenset(f[a] for a in self.L)

    def tau_L(self) -> frozenset:
        return frozenset(self.data.tau[a] for a in self.L)

    def sign_L(self, label: str) -> int:
        if label in self.L:
            return 1
        if label in self.flip():
            return -1
        return 0

    def second_sign(self, label: str) -> int:
        if self.L1 is None:
            raise ValidationError("the second sign needs L1")
        tau, nu = self.data.tau, self.data.nu
        if label in self.L:
            ref = self.L1
        elif label in self.tau_L():
            ref = frozenset(tau[a] for a in self.L1)
        else:
            return 0
        if label in ref:
            return 1
        if label in {nu[a] for a in ref}:
            return -1
        return 0

    def to_json(self) -> dict:
        out = {"L": sorted(self.L)}
        if self.L1 is not None:
            out["L1"] = sorted(self.L1)
        if self.involution != "tau":
            out["involution"] = self.involution
        return out


def sign_couple(label: str, profile: SignProfile) -> tuple[int, int]:
    """``(sign_L, second sign)`` of a letter with projection ``label``."""
    return profile.sign_L(label), profile.second_sign(label)


def _relabel(P: Nanophrase, label_of) -> Nanophrase:
    proj = P.projection
    new = {a: label_of(proj[a]) for a in P.letters}
    keep = {a: l for a, l in new.items() if l is not None}
    words = [[a for a in w if a in keep] for w in P.words]
    return Nanophrase.build(words, keep)


def functor_V(P: Nanophrase, profile: SignProfile) -> Nanophrase:
    """Delete letters with a zero in their couple, relabel the rest into alpha_*."""
    if profile.L1 is None:
        raise ValidationError("V needs a profile with L1")
    if not profile.data.commutes():
        raise ValidationError("V needs nu tau = tau nu on the source data")
    P.check_alphabet(profile.data)
    return _relabel(P, lambda l: STAR_LABELS.get(sign_couple(l, profile)))


def functor_V1(P: Nanophrase, profile: SignProfile) -> Nanophrase:
    """Relabel by ``sign_L`` into alpha_1 (source needs nu = id)."""
    d = profile.data
    if any(d.nu[a] != a for a in d.alphabet):
        raise ValidationError("V1 needs nu = id on the source data")
    if profile.involution != "tau":
        raise ValidationError("V1 needs a tau-profile")
    P.check_alphabet(d)
    return _relabel(P, lambda l: {1: "1", -1: "-1"}.get(profile.sign_L(l)))


def functor_V2(P: Nanophrase, profile: SignProfile) -> Nanophrase:
    """Relabel by the nu-sign of ``L`` into alpha_2 (source needs tau = id)."""
    d = profile.data
    if any(d.tau[a] != a for a in d.alphabet):
        raise ValidationError("V2 needs tau = id on the source data")
    if profile.involution != "nu":
        raise ValidationError("V2 needs a profile built with involution='nu'")
    P.check_alphabet(d)
    return _relabel(P, lambda l: {1: "c", -1: "d"}.get(profile.sign_L(l)))


def functor_U(P: Nanophrase, profile: SignProfile) -> Nanophrase:
    """Relabel by ``sign_L`` into alpha_0 (source needs nu = tau)."""
    d = profile.data
    if any(d.nu[a] != d.tau[a] for a in d.alphabet):
        raise ValidationError("U needs nu = tau on the source data")
    if profile.involution != "tau":
        raise ValidationError("U needs a tau-profile")
    P.check_alphabet(d)
    return _relabel(P, lambda l: {1: "a", -1: "b"}.get(profile.sign_L(l)))


FUNCTORS = {"V": (functor_V, STAR), "V1": (functor_V1, ONE), "V2": (functor_V2, TWO), "U": (functor_U, ZERO)}
