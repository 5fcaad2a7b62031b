"""Integer Laurent polynomials in a single variable ``q``."""
from __future__ import annotations

from typing import Iterable, Mapping


class LaurentPolynomial:
    """Immutable element of Z[q, q^-1] stored as ``{exponent: coefficient}``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        acc: dict[int, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            acc[int(e)] = acc.get(int(e), 0) + int(c)
        self._terms = {e: c for e, c in sorted(acc.items()) if c}
        self._hash = None

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPolynomial":
        return cls({exponent: coeff})

    @classmethod
    def constant(cls, c: int) -> "LaurentPolynomial":
        return cls({0: c})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def degree_range(self) -> tuple[int, int] | None:
        if not self._terms:
            return None
        return min(self._terms), max(self._terms)

    def coeff(self, e: int) -> int:
        return self._terms.get(e, 0)

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are only defined for monomials; use shift()")
        result = LaurentPolynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by ``q**k``."""
        return LaurentPolynomial({e + k: c for e, c in self._terms.items()})

    def evaluate(self, q):
        return sum(c * q**e for e, c in self._terms.items())

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.constant(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def to_pairs(self) -> list[list[int]]:
        """Sorted ``[exponent, coefficient]`` pairs, the serialized form."""
        return [[e, c] for e, c in self._terms.items()]

    @classmethod
    def from_pairs(cls, pairs) -> "LaurentPolynomial":
        return cls((e, c) for e, c in pairs)

    def __str__(self):
        if not self._terms:
            return "0"
        out = ""
        for e, c in self._terms.items():
            mono = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
            mag = str(abs(c)) if abs(c) != 1 or not mono else ""
            sign = "-" if c < 0 else "+"
            if not out:
                out = ("-" if c < 0 else "") + mag + mono
            else:
                out += f" {sign} {mag}{mono}"
        return out

    def __repr__(self):
        return f"LaurentPolynomial({self._terms!r})"


def _coerce(x) -> LaurentPolynomial:
    if isinstance(x, LaurentPolynomial):
        return x
    if isinstance(x, int):
        return LaurentPolynomial.constant(x)
    raise TypeError(f"cannot combine LaurentPolynomial with {type(x).__name__}")


Q = LaurentPolynomial.monomial(1)
ONE = LaurentPolynomial.constant(1)
ZERO = LaurentPolynomial()
UNKNOT = LaurentPolynomial({1: 1, -1: 1})


def quantum_integer(n: int) -> LaurentPolynomial:
    """``[n]_q = q^(n-1) + q^(n-3) + ... + q^(1-n)``; ``[0] = 0``."""
    if n < 0:
        return -quantum_integer(-n)
    return LaurentPolynomial({n - 1 - 2 * t: 1 for t in range(n)})
