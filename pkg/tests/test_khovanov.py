import pytest
import sympy

from coloredkh.algebra import homology
from coloredkh.diagrams.cabling import cable, normalize_framing, orient_cable
from coloredkh.diagrams.gauss import parse_gauss
from coloredkh.diagrams.pd import EMPTY, UNKNOT
from coloredkh.errors import BudgetExceeded, NotRealizable
from coloredkh.khovanov import (
    jones_from_euler,
    kauffman_bracket_jones,
    khovanov_complex,
    khovanov_homology,
    resolution_cube,
)
from coloredkh.polynomial import LaurentPolynomial
from helpers import reidemeister_pairs
from test_diagrams import loops_by_graph

q = sympy.Symbol("q")

RIGHT_TREFOIL = {(0, 1): (1, ()), (0, 3): (1, ()), (2, 5): (1, ()), (3, 7): (0, (2,)), (3, 9): (1, ())}
HOPF = {(0, 0): (1, ()), (0, 2): (1, ()), (2, 4): (1, ()), (2, 6): (1, ())}
FIGURE_EIGHT = {
    (-2, -5): (1, ()), (-1, -3): (0, (2,)), (-1, -1): (1, ()), (0, -1): (1, ()), (0, 1): (1, ()),
    (1, 1): (1, ()), (2, 3): (0, (2,)), (2, 5): (1, ()),
}


def table(H):
    return {k: (r, t) for k, (r, t) in H.groups.items() if r or t}


def sympy_jones(D):
    """Unnormalized Jones polynomial straight from the state sum."""
    n = D.n_crossings
    total = 0
    for s in range(2 ** n):
        r = bin(s).count("1")
        total += (-q) ** r * (q + 1 / q) ** loops_by_graph(D, s)
    total *= (-1) ** D.n_minus * q ** (D.n_plus - 2 * D.n_minus)
    shift = 4 * n + D.free_loops + 2
    poly = sympy.Poly(sympy.expand(total * q ** shift), q)
    return LaurentPolynomial({e[0] - shift: int(c) for e, c in poly.terms()})


def test_right_trefoil_integral_table(knots):
    assert table(khovanov_homology(knots["right_trefoil"])) == RIGHT_TREFOIL


def test_left_trefoil_is_the_mirror_table(knots):
    # Kh^{i,j}(mirror) free part sits at (-i,-j); torsion moves from (i,j) to (1-i,-j)
    H = table(khovanov_homology(knots["left_trefoil"]))
    free = {(-i, -j): (r, ()) for (i, j), (r, _) in RIGHT_TREFOIL.items() if r}
    tors = {(1 - i, -j): (0, t) for (i, j), (_, t) in RIGHT_TREFOIL.items() if t}
    assert {k: v for k, v in H.items() if v[0]} == free
    assert {k: (0, v[1]) for k, v in H.items() if v[1]} == tors


def test_hopf_and_figure_eight_tables(knots):
    assert table(khovanov_homology(knots["hopf"])) == HOPF
    assert table(khovanov_homology(knots["figure_eight"])) == FIGURE_EIGHT


def test_unknot_and_empty():
    assert table(khovanov_homology(UNKNOT)) == {(0, 1): (1, ()), (0, -1): (1, ())}
    assert table(khovanov_homology(EMPTY)) == {(0, 0): (1, ())}


def test_rational_coefficients_drop_torsion(knots):
    H = khovanov_homology(knots["right_trefoil"], coefficients="Q")
    assert table(H) == {k: v for k, v in RIGHT_TREFOIL.items() if v[0]}


@pytest.mark.parametrize("name", ["unknot", "right_trefoil", "left_trefoil", "figure_eight", "hopf"])
def test_euler_characteristic_is_the_bracket(knots, name):
    D = knots[name]
    K = khovanov_complex(D)
    K.complex.check_d_squared()
    J = jones_from_euler(khovanov_homology(D))
    assert J == kauffman_bracket_jones(D) == sympy_jones(D)


def test_cable_complex_is_a_complex_and_matches_bracket(knots):
    C = orient_cable(knots["right_trefoil"], [2])
    K = khovanov_complex(C)
    assert K.diagram.n_crossings == 12
    assert jones_from_euler(homology(K.complex, coefficients="Q")) == kauffman_bracket_jones(C)


def test_known_jones_values(knots):
    # right trefoil q + q^3 + q^5 - q^9 ; figure eight symmetric
    assert kauffman_bracket_jones(knots["right_trefoil"]) == LaurentPolynomial({1: 1, 3: 1, 5: 1, 9: -1})
    J = kauffman_bracket_jones(knots["figure_eight"])
    assert J == LaurentPolynomial({-e: c for e, c in J.terms.items()})


def test_resolution_cube_shape(knots):
    cube = resolution_cube(knots["figure_eight"])
    edges = list(cube.edges())
    assert len(edges) == 4 * 2 ** 3


def test_budget_and_realizability_guards(knots):
    with pytest.raises(BudgetExceeded):
        khovanov_homology(knots["figure_eight"], budget=3)
    with pytest.raises(NotRealizable):
        khovanov_homology(parse_gauss("A:+O B:+O\nABAB\n"))


def test_budget_environment_override(knots, monkeypatch):
    monkeypatch.setenv("COLOREDKH_HOMOLOGY_BUDGET", "2")
    with pytest.raises(BudgetExceeded):
        khovanov_homology(knots["right_trefoil"])


def test_reidemeister_pairs_preserve_homology(knots):
    pairs = reidemeister_pairs(knots)
    assert len(pairs) >= 20
    assert {fam for fam, *_ in pairs} >= {"R1", "R2", "R3"}
    for fam, name, D, E in pairs:
        assert table(khovanov_homology(E)) == table(khovanov_homology(D)), (fam, name)


def test_framing_kinks_do_not_change_homology(knots):
    T = knots["right_trefoil"]
    assert table(khovanov_homology(normalize_framing(T))) == RIGHT_TREFOIL
    assert cable(T, [1]).n_crossings == 3
