import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from coloredkh.algebra import (
    Bicomplex,
    FilteredComplex,
    GradedChainComplex,
    HomologyTable,
    IntegerMatrix,
    bicomplex_pages,
    determinant,
    filtration_degree,
    homology,
    invariant_factors,
    rank_mod_p,
    signed_rank_sum,
    smith_normal_form,
    spectral_pages,
)
from coloredkh.errors import InvariantViolation, ValidationError
from helpers import random_complex, tensor_bicomplex

small_matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def q_rank(M: IntegerMatrix) -> int:
    if not M.rows or not M.cols:
        return 0
    return Matrix(M.to_dense()).rank()


# -- matrices ----------------------------------------------------------------

def test_from_coo_sums_duplicates_and_drops_zeros():
    M = IntegerMatrix.from_coo(2, 2, np.array([0, 0, 1]), np.array([1, 1, 0]), np.array([2, -2, 5]))
    assert M.entries == {(1, 0): 5}
    assert M.nnz == 1


def test_matmul_matches_numpy():
    rng = np.random.default_rng(3)
    for _ in range(20):
        a = rng.integers(-3, 4, size=(4, 5))
        b = rng.integers(-3, 4, size=(5, 3))
        got = IntegerMatrix.from_dense(a.tolist()) @ IntegerMatrix.from_dense(b.tolist())
        assert got.to_dense() == (a @ b).tolist()


def test_matrix_json_round_trip_and_transpose():
    M = IntegerMatrix.from_dense([[1, 0, 2], [0, -3, 0]])
    assert IntegerMatrix.from_json(json.loads(json.dumps(M.to_json()))) == M
    assert M.transpose().to_dense() == [[1, 0], [0, -3], [2, 0]]
    assert M.transpose().transpose() == M


@given(small_matrices)
@settings(max_examples=80, deadline=None)
def test_determinant_matches_sympy(rows):
    n = min(len(rows), len(rows[0]))
    sq = [r[:n] for r in rows[:n]]
    assert determinant(IntegerMatrix.from_dense(sq)) == Matrix(sq).det()


@given(small_matrices)
@settings(max_examples=150, deadline=None)
def test_smith_normal_form_fuzz(rows):
    M = IntegerMatrix.from_dense(rows)
    D, U, V = smith_normal_form(M)
    assert U @ M @ V == D
    assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1
    diag = [D.entries.get((k, k), 0) for k in range(min(D.shape))]
    assert all(((r, c) in [(k, k) for k in range(len(diag))]) for r, c in D.entries)
    nonzero = [d for d in diag if d]
    assert all(d > 0 for d in nonzero)
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    # sympy as an independent oracle (its signs are not normalized)
    ref = sympy_snf(Matrix(rows), domain=ZZ)
    ref_diag = sorted(abs(ref[k, k]) for k in range(min(ref.shape)) if ref[k, k] != 0)
    assert sorted(nonzero) == ref_diag
    assert invariant_factors(M) == nonzero
    assert rank_mod_p(M) == len(nonzero)


def test_invariant_factors_sparse_path():
    rng = np.random.default_rng(11)
    for _ in range(30):
        a = rng.integers(-2, 3, size=(12, 9)) * (rng.random((12, 9)) < 0.3)
        M = IntegerMatrix.from_dense(a.tolist())
        D, _, _ = smith_normal_form(M)
        want = [D.entries[(k, k)] for k in range(9) if (k, k) in D.entries]
        assert invariant_factors(M) == want


# -- complexes -------------------------------------------------------------

def test_projective_plane_cellular_cohomology():
    C = GradedChainComplex({(0,): 1, (1,): 1, (2,): 1},
                           {(0,): IntegerMatrix.zero(1, 1), (1,): IntegerMatrix.from_dense([[2]])})
    H = homology(C)
    assert (H.rank((0,)), H.torsion((0,))) == (1, ())
    assert (H.rank((1,)), H.torsion((1,))) == (0, ())
    assert (H.rank((2,)), H.torsion((2,))) == (0, (2,))
    HQ = homology(C, coefficients="Q")
    assert HQ.torsion((2,)) == () and HQ.total_rank() == 1


@pytest.mark.parametrize("seed", range(40))
def test_homology_of_random_complexes(seed):
    rng = np.random.default_rng(seed)
    C, expected = random_complex(rng, length=int(rng.integers(2, 5)), pieces=int(rng.integers(2, 9)))
    H = homology(C)
    for k, (r, t) in expected.items():
        assert H.rank((k,)) == r
        assert H.torsion((k,)) == t
    assert homology(C, threads=2) == H
    chi = sum((-1) ** k * r for k, (r, _) in expected.items())
    assert sum((-1) ** k * v for (k,), v in C.ranks.items()) == chi


def test_d_squared_violation_is_reported():
    C = GradedChainComplex({(0,): 1, (1,): 1, (2,): 1},
                           {(0,): IntegerMatrix.from_dense([[1]]), (1,): IntegerMatrix.from_dense([[1]])})
    with pytest.raises(InvariantViolation):
        C.check_d_squared()
    with pytest.raises(InvariantViolation):
        homology(C)


def test_complex_shape_validation():
    with pytest.raises(ValidationError):
        GradedChainComplex({(0,): 2, (1,): 1}, {(0,): IntegerMatrix.from_dense([[1]])})


def test_complex_and_table_json_round_trip():
    rng = np.random.default_rng(5)
    C, _ = random_complex(rng, 3, 6)
    assert GradedChainComplex.from_json(C.dumps()) == C
    H = homology(C)
    assert HomologyTable.from_json(H.dumps()) == H


# -- spectral sequences ------------------------------------------------------

def _column_ranks(C: GradedChainComplex):
    """Rational cohomology ranks of a one-graded complex by direct rank counts."""
    out = {}
    for (k,), n in C.ranks.items():
        out[k] = n - q_rank(C.d((k,))) - q_rank(C.d((k - 1,)))
    return out


@pytest.mark.parametrize("seed", range(12))
def test_two_column_filtration_matches_exact_sequence(seed):
    # A has two degrees, so filtering A (x) B by the A-degree has two levels and
    # the sequence is the long exact sequence of the pair.
    rng = np.random.default_rng(100 + seed)
    A, _ = random_complex(rng, 2, int(rng.integers(1, 5)))
    B, _ = random_complex(rng, 3, int(rng.integers(1, 6)))
    T = tensor_bicomplex(A, B)
    pages = bicomplex_pages(T, "row-first", 3)
    a_dims = {k: A.rank((k,)) for k in range(2)}
    hb = _column_ranks(B)
    ha = _column_ranks(A)
    for k in range(2):
        for i in range(3):
            assert pages[1].ranks.get((k, i, 0), 0) == a_dims[k] * hb.get(i, 0)
            assert pages[2].ranks.get((k, i, 0), 0) == ha.get(k, 0) * hb.get(i, 0)
    total, _ = T.total_complex()
    HT = homology(total, coefficients="Q")
    assert pages[-1].stable
    assert pages[-1].total_rank() == HT.total_rank()
    # each d_1 pair removes one class from the source and one from the target
    drop = pages[1].total_rank() - pages[2].total_rank()
    assert drop == 2 * sum(pages[1].d_ranks.values())


@pytest.mark.parametrize("seed", range(8))
def test_random_bicomplex_both_orientations(seed):
    rng = np.random.default_rng(200 + seed)
    A, _ = random_complex(rng, 3, int(rng.integers(2, 6)))
    B, _ = random_complex(rng, 3, int(rng.integers(2, 6)))
    T = tensor_bicomplex(A, B)
    T.check()
    total, _ = T.total_complex()
    total.check_d_squared()
    HT = homology(total, coefficients="Q")
    for orientation in ("row-first", "column-first"):
        pages = bicomplex_pages(T, orientation, 4)
        assert pages[-1].total_rank() == HT.total_rank()
        euler = {signed_rank_sum(P) for P in pages}
        assert len(euler) == 1
    row = bicomplex_pages(T, "row-first", 4)
    col = bicomplex_pages(T, "column-first", 4)
    # Kunneth over Q: both converge to H(A) (x) H(B) position by position
    ha, hb = _column_ranks(A), _column_ranks(B)
    for P in (row[-1], col[-1]):
        for (k, i, _), v in P.ranks.items():
            assert v == ha[k] * hb[i]


def test_anticommutation_failure_is_detected():
    one = IntegerMatrix.from_dense([[1]])
    ranks = {(0, 0, 0): 1, (1, 0, 0): 1, (0, 1, 0): 1, (1, 1, 0): 1}
    B = Bicomplex(ranks, {(0, 0, 0): one, (0, 1, 0): one}, {(0, 0, 0): one, (1, 0, 0): one})
    with pytest.raises(InvariantViolation):
        B.check()


def test_filtration_degree_and_levels():
    # 0 -> Z^2 -> Z with d = [1, 1]; levels 0 and 1 on the source
    C = GradedChainComplex({(0,): 1, (1,): 2, (2,): 1},
                           {(1,): IntegerMatrix.from_dense([[1, 1]]), (0,): IntegerMatrix.from_dense([[1], [-1]])})
    F = FilteredComplex(C, {(0,): [0], (1,): [0, 1], (2,): [1]})
    F.check()
    # the boundary of the degree-0 generator is zero in homology
    assert filtration_degree(F, (1,), [1, -1]) is None
    pages = spectral_pages(F, 2)
    assert pages[-1].total_rank() == homology(C, "Q").total_rank() == 0
    bad = FilteredComplex(C, {(0,): [0], (1,): [0, 1], (2,): [0]})
    with pytest.raises(InvariantViolation):
        bad.check()


def test_filtration_degree_of_surviving_class():
    # Z^2 in one degree with no differential: each basis vector keeps its level
    C = GradedChainComplex({(0,): 2}, {})
    F = FilteredComplex(C, {(0,): [3, 5]})
    assert filtration_degree(F, (0,), [1, 0]) == 3
    assert filtration_degree(F, (0,), [0, 2]) == 5
    assert filtration_degree(F, (0,), [1, 1]) == 3
