"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3]

Workloads: loop counts over every state of the 2-cable of the trefoil
(12 crossings, 4096 states), and mod-p column reduction of the largest
Khovanov differential of the same diagram.
"""
import argparse
import timeit

from coloredkh import _fallback, corpus, kernels
from coloredkh.diagrams.cabling import orient_cable
from coloredkh.diagrams.states import smoothing_pairs
from coloredkh.khovanov import khovanov_complex


def workloads():
    C = orient_cable(corpus.diagram("right_trefoil"), [2])
    arcs, zero, one = smoothing_pairs(C)
    K = khovanov_complex(C).complex
    M = max(K.differentials.values(), key=lambda m: m.nnz)
    cols = M.columns()
    return {
        "state_loop_counts (12 crossings)": (
            lambda: _fallback.state_loop_counts(zero, one, len(arcs)),
            lambda: kernels._compiled.state_loop_counts(zero, one, len(arcs)),
        ),
        f"reduce_columns ({M.rows}x{M.cols}, nnz {M.nnz})": (
            lambda: _fallback.reduce_columns(cols, M.rows, kernels.DEFAULT_PRIME),
            lambda: kernels._compiled.reduce_columns(cols, M.rows, kernels.DEFAULT_PRIME),
        ),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not kernels.COMPILED:
        raise SystemExit("compiled kernels are not available; build with pip install -e .")
    print(f"{'kernel':<40} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for name, (py, cy) in workloads().items():
        assert list(py()) == list(cy())
        t_py = min(timeit.repeat(py, number=1, repeat=args.repeat))
        t_cy = min(timeit.repeat(cy, number=1, repeat=args.repeat))
        print(f"{name:<40} {t_py:>10.4f} {t_cy:>11.4f} {t_py / t_cy:>7.1f}x")


if __name__ == "__main__":
    main()
