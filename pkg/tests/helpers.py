"""Shared builders for the test-suite."""
import numpy as np

from coloredkh.algebra import GradedChainComplex, IntegerMatrix


def unimodular(rng, n, steps=None):
    """Random integer matrix with determinant +-1 and its inverse."""
    U = np.eye(n, dtype=object)
    V = np.eye(n, dtype=object)
    for _ in range(steps if steps is not None else 3 * n):
        if n < 2:
            break
        i, j = rng.choice(n, 2, replace=False)
        f = int(rng.integers(-2, 3))
        U[i] = U[i] + f * U[j]  # U <- E U
        V[:, j] = V[:, j] - f * V[:, i]  # V <- V E^-1
    return U, V


def invariant_form(orders):
    """Invariant factors ``d1 | d2 | ...`` of a product of cyclic groups."""
    from sympy import factorint

    powers = {}
    for n in orders:
        for p, e in factorint(n).items():
            powers.setdefault(p, []).append(p ** e)
    width = max((len(v) for v in powers.values()), default=0)
    out = [1] * width
    for v in powers.values():
        for slot, q in enumerate(sorted(v, reverse=True)):
            out[width - 1 - slot] *= q
    return tuple(out)


def random_complex(rng, length=3, pieces=6, torsion=(1, 1, 2, 3)):
    """Random cochain complex with known homology.

    Built as a sum of pieces ``0 -> Z -c-> Z -> 0`` and free ``Z``'s, then
    conjugated by random unimodular changes of basis.  Returns the complex and
    the expected ``{degree: (rank, torsion)}``.
    """
    dims = [0] * length
    arrows = []  # (degree, source index, target index, c)
    free = [0] * length
    for _ in range(pieces):
        k = int(rng.integers(0, length))
        if k + 1 < length and rng.random() < 0.7:
            c = int(rng.choice(torsion))
            arrows.append((k, dims[k], dims[k + 1], c))
            dims[k] += 1
            dims[k + 1] += 1
        else:
            free[k] += 1
            dims[k] += 1
    base = {k: np.zeros((dims[k + 1], dims[k]), dtype=object) for k in range(length - 1)}
    for k, s, t, c in arrows:
        base[k][t, s] = c
    change = [unimodular(rng, d) for d in dims]
    diffs = {}
    for k in range(length - 1):
        U1, _ = change[k + 1]
        _, V0 = change[k]
        M = U1.dot(base[k]).dot(V0) if dims[k] and dims[k + 1] else base[k]
        diffs[(k,)] = IntegerMatrix.from_dense(M.tolist()) if M.size else IntegerMatrix(dims[k + 1], dims[k])
    expected = {}
    for k in range(length):
        tors = [c for kk, _, _, c in arrows if kk + 1 == k and c > 1]
        expected[k] = (free[k], invariant_form(tors))
    C = GradedChainComplex({(k,): d for k, d in enumerate(dims)}, diffs, (1,))
    return C, expected


def tensor_bicomplex(A: GradedChainComplex, B: GradedChainComplex):
    """``A (x) B`` as a bicomplex at ``(k, i, 0)`` with the Koszul sign on ``d''``."""
    from coloredkh.algebra import Bicomplex

    def dense(M):
        return np.array(M.to_dense(), dtype=object).reshape(M.shape)

    ranks, d1, d2 = {}, {}, {}
    for (k,), a in A.ranks.items():
        for (i,), b in B.ranks.items():
            ranks[(k, i, 0)] = a * b
    for (k,), a in A.ranks.items():
        for (i,), b in B.ranks.items():
            dA = dense(A.d((k,)))
            dB = dense(B.d((i,)))
            if dA.size:
                d1[(k, i, 0)] = IntegerMatrix.from_dense(np.kron(dA, np.eye(b, dtype=object)).tolist())
            if dB.size:
                d2[(k, i, 0)] = IntegerMatrix.from_dense(((-1) ** k * np.kron(np.eye(a, dtype=object), dB)).tolist())
    return Bicomplex(ranks, d1, d2)


def reidemeister_pairs(knots, per_family=3):
    """Scripted ``(family, base name, D, D')`` pairs one classical move apart."""
    from coloredkh.nanophrases import reidemeister_neighbors

    pairs = []
    for name in ("unknot", "right_trefoil", "figure_eight", "hopf"):
        D = knots[name]
        found = {}
        near = reidemeister_neighbors(D)
        for fam, _, E in near:
            if len(found.setdefault(fam, [])) < per_family:
                found[fam].append(E)
        # a third move needs a triangle, so look one R2 further out
        for fam, _, E in near:
            if fam != "R2" or "R3" in found:
                continue
            for fam2, _, F in reidemeister_neighbors(E, extra=0):
                if fam2 == "R3":
                    pairs.append(("R2+R3", name, D, F))
                    found["R3"] = [(E, F)]
                    pairs.append(("R3", name, E, F))
                    break
        for fam, items in found.items():
            if fam in ("R1", "R2", "basepoint"):
                pairs.extend((fam, name, D, E) for E in items)
    return pairs


# -- nanophrase instances ---------------------------------------------------

def random_involution(rng, alpha):
    rest = list(alpha)
    rng.shuffle(rest)
    f = {}
    while rest:
        a = rest.pop()
        if rest and rng.random() < 0.6:
            b = rest.pop()
            f[a], f[b] = b, a
        else:
            f[a] = a
    return f


def all_profiles(data, kind):
    """Every valid sign profile of the given functor kind, by brute force."""
    from itertools import combinations

    from coloredkh.errors import ValidationError
    from coloredkh.nanophrases import SignProfile

    alpha = data.alphabet
    out = []
    for r in range(1, len(alpha) + 1):
        for L in combinations(alpha, r):
            refinements = [None]
            if kind == "V":
                refinements = [L1 for k in range(1, r + 1) for L1 in combinations(L, k)]
            for L1 in refinements:
                try:
                    out.append(SignProfile.make(data, L, L1, "nu" if kind == "V2" else "tau"))
                except ValidationError:
                    pass
    return out


def random_instance(rng, kind, max_alpha=6):
    """Random S-sharp data suited to ``kind`` and a random valid profile."""
    from coloredkh.nanophrases import make_s_sharp

    while True:
        alpha = [f"x{i}" for i in range(rng.randint(1, max_alpha))]
        tau = random_involution(rng, alpha)
        if kind == "V1":
            nu = {a: a for a in alpha}
        elif kind == "U":
            nu = dict(tau)
        elif kind == "V2":
            tau, nu = {a: a for a in alpha}, tau
        else:
            nu = random_involution(rng, alpha)
            if any(nu[tau[a]] != tau[nu[a]] for a in alpha):
                continue
        data = make_s_sharp(alpha, tau, nu)
        profiles = all_profiles(data, kind)
        if profiles:
            return data, rng.choice(profiles)


def random_phrase(rng, data, max_letters=4):
    """Up to ``max_letters`` letters in one or two words.

    Half the time the phrase is seeded with an H2 or H3 pattern so those
    moves are exercised, not just insertions.
    """
    from coloredkh.nanophrases import Nanophrase

    alpha = data.alphabet
    k = rng.randint(0, max_letters)
    letters = [chr(65 + i) for i in range(k)]
    proj = {a: rng.choice(alpha) for a in letters}
    seed = rng.random()
    if k >= 3 and seed < 0.3:
        A, B, C = letters[:3]
        proj[A], proj[B], proj[C] = rng.choice(sorted(data.S))
        occ, rest = [A, B, A, C, B, C], letters[3:] * 2
    elif k >= 2 and seed < 0.5:
        A, B = letters[:2]
        proj[B] = data.tau[proj[A]]
        occ, rest = [A, B, B, A], letters[2:] * 2
    else:
        occ, rest = [], letters * 2
    rng.shuffle(rest)
    for x in rest:
        occ.insert(rng.randint(0, len(occ)), x)
    if rng.random() < 0.35:
        cut = rng.randint(0, len(occ))
        words = [occ[:cut], occ[cut:]]
    else:
        words = [occ]
    return Nanophrase.build(words, proj)
