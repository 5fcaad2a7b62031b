import pytest

from coloredkh.diagrams.cabling import orient_cable
from coloredkh.errors import MultiComponent, ValidationError
from coloredkh.khovanov import khovanov_homology
from coloredkh.lee import (
    canonical_generators,
    colored_rasmussen,
    generator_degrees,
    lee_complex,
    lee_homology,
    lee_pages,
    orientations,
    s_knot,
    s_link,
)
from helpers import reidemeister_pairs

S_VALUES = {"unknot": 0, "right_trefoil": 2, "left_trefoil": -2, "figure_eight": 0}


@pytest.fixture(scope="module")
def trefoil_cable(knots):
    return orient_cable(knots["right_trefoil"], [2])


@pytest.mark.parametrize("name", ["unknot", "right_trefoil", "left_trefoil", "figure_eight", "hopf"])
def test_lee_complex_identities(knots, name):
    # check=True verifies d preserves j, Phi raises it by 4, (d + Phi)^2 = 0 and Phi^2 = 0
    L = lee_complex(knots[name], check=True)
    L.filtered.check()


@pytest.mark.parametrize("name", ["unknot", "right_trefoil", "left_trefoil", "figure_eight", "hopf"])
def test_first_page_is_rational_khovanov_homology(knots, name):
    D = knots[name]
    pages = lee_pages(D, r_max=8)
    KhQ = khovanov_homology(D, coefficients="Q").ranks()
    assert pages[1].ranks == {k: v for k, v in KhQ.items() if v}
    assert pages[-1].stable
    assert pages[-1].total_rank() == 2 ** D.n_components


def test_cable_pages_and_dimension(trefoil_cable):
    pages = lee_pages(trefoil_cable, r_max=8)
    KhQ = khovanov_homology(trefoil_cable, coefficients="Q").ranks()
    assert pages[1].ranks == {k: v for k, v in KhQ.items() if v}
    assert pages[-1].total_rank() == 4
    assert lee_homology(trefoil_cable).dimension == 4


@pytest.mark.parametrize("name, s", sorted(S_VALUES.items()))
def test_rasmussen_values(knots, name, s):
    D = knots[name]
    assert s_knot(D) == s
    assert s_link(D) == s
    H = lee_homology(D)
    assert H.gradings == (s - 1, s + 1)
    assert generator_degrees(D) in {(s - 1, s + 1), (s + 1, s - 1)}


def test_hopf_orientations(knots):
    H = knots["hopf"]
    values = [s_link(H, o) for o in orientations(2)]
    # positive Hopf link for (+,+) and (-,-), negative after one reversal
    assert values == [1, -1, -1, 1]
    assert lee_homology(H).dimension == 4


def test_difference_convention(knots):
    assert s_link(knots["unknot"], convention="difference") in (-1, 1)
    with pytest.raises(ValidationError):
        s_link(knots["unknot"], convention="median")


def test_s_knot_rejects_links(knots):
    with pytest.raises(MultiComponent):
        s_knot(knots["hopf"])


def test_canonical_generators_are_cycles(knots):
    for name in ("right_trefoil", "figure_eight", "hopf"):
        D = knots[name]
        for o in orientations(D.n_components):
            g = canonical_generators(D, o)  # raises if either vector is not a cycle
            assert set(g.labels) <= {"a", "b"}
            assert len(g.s_o) == len(g.s_obar)


def test_s_is_invariant_under_moves(knots):
    for fam, name, D, E in reidemeister_pairs(knots):
        if D.n_components == 1:
            assert s_knot(E) == s_knot(D) == S_VALUES[name], (fam, name)
            assert s_link(E) == s_link(D)


def test_colored_rasmussen_trefoil(knots):
    R = colored_rasmussen(knots["right_trefoil"], (2,), framing="blackboard")
    entry = [e for e in R.entries if e.k == (1,)]
    assert entry and all(e.empty and e.s == 0 for e in entry)
    cable_entries = [e for e in R.entries if e.k == (0,)]
    assert len(cable_entries) == 2
    C = orient_cable(knots["right_trefoil"], [2])
    assert {e.s for e in cable_entries} == {s_link(C), s_link(C, (-1, -1))}


def test_colored_rasmussen_json_shape(knots):
    R = colored_rasmussen(knots["unknot"], (2,))
    obj = R.to_json()
    assert obj["n"] == [2]
    assert [e["k"] for e in obj["entries"]] == [[0], [0], [1], [1]]
