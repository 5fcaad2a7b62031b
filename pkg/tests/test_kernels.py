import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coloredkh import _fallback, kernels
from coloredkh.diagrams.cabling import orient_cable
from coloredkh.diagrams.states import smoothing_pairs

compiled = pytest.mark.skipif(not kernels.COMPILED, reason="compiled kernels not built")


@st.composite
def smoothings(draw):
    narcs = draw(st.integers(1, 12))
    c = draw(st.integers(0, 7))
    arc = st.integers(0, narcs - 1)
    quad = st.tuples(arc, arc, arc, arc)
    return draw(st.lists(quad, min_size=c, max_size=c)), draw(st.lists(quad, min_size=c, max_size=c)), narcs


@st.composite
def sparse_columns(draw):
    nrows = draw(st.integers(1, 15))
    ncols = draw(st.integers(0, 15))
    cols = []
    for _ in range(ncols):
        rows = draw(st.lists(st.integers(0, nrows - 1), max_size=nrows, unique=True))
        vals = draw(st.lists(st.integers(-9, 9), min_size=len(rows), max_size=len(rows)))
        cols.append((np.array(rows, dtype=np.int64), np.array(vals, dtype=np.int64)))
    return cols, nrows


@compiled
@settings(max_examples=300, deadline=None)
@given(smoothings())
def test_loop_counts_agree(args):
    zero, one, narcs = args
    ours = kernels._compiled.state_loop_counts(zero, one, narcs).tolist()
    assert ours == _fallback.state_loop_counts(zero, one, narcs)


@compiled
@settings(max_examples=300, deadline=None)
@given(sparse_columns(), st.sampled_from([2, 3, 7, 65_521, kernels.DEFAULT_PRIME]))
def test_column_reduction_agrees(args, p):
    cols, nrows = args
    assert kernels._compiled.reduce_columns(cols, nrows, p) == _fallback.reduce_columns(cols, nrows, p)


@settings(max_examples=100, deadline=None)
@given(sparse_columns())
def test_large_prime_matches_exact_rank(args):
    cols, nrows = args
    exact = _fallback.reduce_columns(cols, nrows, 0)
    modp = kernels.reduce_columns(cols, nrows)
    assert sum(l >= 0 for l in exact) == sum(l >= 0 for l in modp)


@compiled
def test_cable_loop_counts_agree(knots):
    C = orient_cable(knots["right_trefoil"], [2])
    arcs, zero, one = smoothing_pairs(C)
    assert kernels._compiled.state_loop_counts(zero, one, len(arcs)).tolist() == \
        _fallback.state_loop_counts(zero, one, len(arcs))


def test_pure_mode_gives_the_same_homology():
    code = ("from coloredkh import kernels, corpus; from coloredkh.khovanov import khovanov_homology;"
            "from coloredkh.lee import lee_pages;"
            "D = corpus.diagram('figure_eight'); print(kernels.COMPILED);"
            "print(khovanov_homology(D).to_json()); print([p.to_json() for p in lee_pages(D, r_max=4)])")
    outs = {}
    for pure in ("", "1"):
        env = dict(os.environ, COLOREDKH_PURE=pure)
        if not pure:
            env.pop("COLOREDKH_PURE")
        proc = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env, check=True)
        flag, *rest = proc.stdout.splitlines()
        outs[pure] = rest
        if pure:
            assert flag == "False"
    assert outs[""] == outs["1"]
