import itertools
import json

import networkx as nx
import pytest

from coloredkh.diagrams.cabling import cable, cable_strands, normalize_framing, orient_cable, strand_orientations
from coloredkh.diagrams.gauss import (
    euler_characteristics,
    face_cycles,
    gauss_to_pd,
    is_planar,
    parse_gauss,
    pd_to_gauss,
    realizable,
)
from coloredkh.diagrams.pd import EMPTY, UNKNOT, PDCode, infer_signs, parse_pd
from coloredkh.diagrams.states import all_loop_counts, count_loops, resolve, smoothing_pairs
from coloredkh.errors import NotRealizable, ValidationError
from coloredkh.khovanov import kauffman_bracket_jones


def loops_by_graph(D: PDCode, state: int) -> int:
    """Independent loop count: components of the arc graph after smoothing."""
    G = nx.Graph()
    G.add_nodes_from(D.arcs)
    for x, (a, b, c, d) in enumerate(D.crossings):
        if state >> x & 1:
            G.add_edges_from([(a, d), (b, c)])
        else:
            G.add_edges_from([(a, b), (c, d)])
    return nx.number_connected_components(G) + D.free_loops


# -- PD codes ----------------------------------------------------------------

def test_corpus_signs_and_components(knots):
    assert knots["right_trefoil"].signs == (1, 1, 1)
    assert knots["left_trefoil"].signs == (-1, -1, -1)
    assert knots["figure_eight"].signs == (1, 1, -1, -1)
    assert knots["hopf"].n_components == 2
    assert knots["hopf"].linking_number(0, 1) == 1
    assert knots["unknot"].n_components == 1
    assert knots["figure_eight"].writhe() == 0


def test_pd_json_round_trip(knots):
    for D in knots.values():
        assert parse_pd(D.dumps()) == D
        assert parse_pd(json.loads(D.dumps())) == D


@pytest.mark.parametrize("text, fragment", [
    ("not json", "malformed"),
    ('{"crossings": [[1, 2, 3]]}', "four"),
    ('{"crossings": [[1, 2, 2, 1], [1, 3, 4, 5]]}', "appears"),
    ('[]', "object"),
])
def test_pd_validation_errors(text, fragment):
    with pytest.raises(ValidationError, match=fragment):
        parse_pd(text)


def test_infer_signs_matches_declared(knots):
    for D in knots.values():
        if D.n_crossings:
            assert infer_signs(D.crossings) == D.signs


def test_mirror_and_reorient(knots):
    T = knots["right_trefoil"]
    M = T.mirror()
    assert M.signs == (-1, -1, -1)
    assert M.mirror() == T
    H = knots["hopf"]
    R = H.reorient([1])
    assert R.linking_number(0, 1) == -1
    assert R.reorient([1]).signs == H.signs


def test_empty_and_unknot_constants():
    assert EMPTY.n_components == 0 and UNKNOT.n_components == 1
    assert kauffman_bracket_jones(EMPTY).to_pairs() == [[0, 1]]


# -- states -----------------------------------------------------------------

def test_loop_counts_against_graph_oracle(knots):
    for D in list(knots.values()) + [cable(knots["right_trefoil"], [2])]:
        counts = all_loop_counts(D)
        assert len(counts) == 2 ** D.n_crossings
        for s in range(0, 2 ** D.n_crossings, max(1, 2 ** D.n_crossings // 64)):
            assert counts[s] == loops_by_graph(D, s) == count_loops(D, s)


def test_resolve_reports_bits_and_loops(knots):
    D = knots["figure_eight"]
    S = resolve(D, 0b0101)
    assert S.r == 2 and S.bit(0) == 1 and S.bit(1) == 0
    assert S.loop_count == loops_by_graph(D, 0b0101)
    arcs, zero, one = smoothing_pairs(D)
    assert len(zero) == len(one) == D.n_crossings


# -- Gauss phrases ------------------------------------------------------------

def test_gauss_round_trip_preserves_jones(knots):
    for D in knots.values():
        G = pd_to_gauss(D)
        assert G.realizable
        E = gauss_to_pd(G)
        assert E.n_crossings == D.n_crossings
        assert kauffman_bracket_jones(E) == kauffman_bracket_jones(D)
        assert parse_gauss(G.dumps()) == G


def test_virtual_trefoil_is_not_realizable():
    G = parse_gauss("A:+O B:+O\nABAB\n")
    assert not realizable(G)
    with pytest.raises(NotRealizable):
        gauss_to_pd(G)
    assert not is_planar(G.to_abstract_pd())


def test_kink_is_realizable_for_every_decoration():
    for sign, first in itertools.product("+-", "OU"):
        G = parse_gauss(f"A:{sign}{first}\nAA\n")
        assert G.realizable


def test_face_count_gives_sphere(knots):
    for name in ("right_trefoil", "figure_eight", "hopf"):
        D = knots[name]
        faces = face_cycles(D)
        # V - E + F = 2 for a connected planar 4-valent graph
        assert D.n_crossings - 2 * D.n_crossings + len(faces) == 2
        assert euler_characteristics(D) == [2]


def test_gauss_parse_errors():
    with pytest.raises(ValidationError):
        parse_gauss("A:+O\nABA\n")
    with pytest.raises(ValidationError):
        parse_gauss("A:+X\nAA\n")


# -- cabling ------------------------------------------------------------------

@pytest.mark.parametrize("m", [1, 2, 3])
def test_cable_crossings_and_components(knots, m):
    T = knots["right_trefoil"]
    C = cable(T, [m])
    assert C.n_crossings == 3 * m * m
    assert C.n_components == m
    assert is_planar(C)


def test_cable_of_link_uses_colors_per_component(knots):
    H = knots["hopf"]
    C = cable(H, [2, 1])
    assert C.n_crossings == 2 * (2 * 1)
    assert C.n_components == 3
    assert cable(H, [0, 1]).n_components == 1


def test_blackboard_cable_linking_follows_writhe(knots):
    T = knots["right_trefoil"]
    C = orient_cable(T, [2])
    # strands run in opposite directions, so the framing appears with a minus sign
    assert C.linking_number(0, 1) == -T.writhe()
    Z = orient_cable(normalize_framing(T), [2])
    assert Z.linking_number(0, 1) == 0


def test_normalize_framing_zeroes_self_writhe(knots):
    for D in knots.values():
        N = normalize_framing(D)
        assert all(N.self_writhe(i) == 0 for i in range(N.n_components))
        assert kauffman_bracket_jones(N) == kauffman_bracket_jones(D)


def test_strand_orientations_alternate(knots):
    T = knots["right_trefoil"]
    dirs = [d for _, _, d in strand_orientations(T, [3])]
    assert dirs == [1, -1, 1]
    _, strands = cable_strands(T, [3])
    assert sorted(t for _, t in strands) == [0, 1, 2]
    with pytest.raises(ValidationError):
        orient_cable(T, [2], [1, 1])
