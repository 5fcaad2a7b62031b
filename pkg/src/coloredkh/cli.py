"""Command-line front end.

Every subcommand prints one JSON document (or a plain text table with
``--format text``).  Exit codes: 0 success, 2 invalid input, 3 crossing or
search budget exceeded, 1 internal invariant failure.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys

import numpy as np

from . import corpus
from .errors import BudgetExceeded, ColoredKhError, InvariantViolation, ValidationError

EXIT_OK, EXIT_INTERNAL, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2, 3


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.replace(",", " ").split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("value must be nonnegative")
    return v


def _letters(text: str) -> tuple[str, ...]:
    return tuple(t for t in text.replace(",", " ").split() if t)


def _pd_args(p):
    p.add_argument("--pd", required=True, help="PD JSON file or a bundled name (trefoil, hopf, ...)")


def _budget_args(p):
    p.add_argument("--budget", type=_positive, help="crossing budget for homology computations")
    p.add_argument("--bracket-budget", type=_positive, help="crossing budget for bracket state sums")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--threads", type=_positive, default=1)
    common.add_argument("--seed", type=int, default=0, help="seed for any randomized step")

    parser = argparse.ArgumentParser(prog="coloredkh", description="Khovanov, Lee and colored Jones computations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kh", parents=[common], help="integral or rational Khovanov homology")
    _pd_args(p)
    _budget_args(p)
    p.add_argument("--coefficients", choices=("Z", "Q"), default="Z")

    p = sub.add_parser("lee", parents=[common], help="Lee homology and its q-filtration pages")
    _pd_args(p)
    _budget_args(p)
    p.add_argument("--r-max", type=_positive, default=6)

    p = sub.add_parser("s", parents=[common], help="Rasmussen invariant (colored with --n)")
    _pd_args(p)
    _budget_args(p)
    p.add_argument("--orientation", type=_ints, help="+1/-1 per component")
    p.add_argument("--convention", choices=("mean", "difference"), default="mean")
    p.add_argument("--n", type=_ints, help="color vector; reports every cable entry")
    p.add_argument("--framing", choices=("zero", "blackboard"), default="zero")

    p = sub.add_parser("colored-jones", parents=[common], help="colored Jones polynomial")
    _pd_args(p)
    _budget_args(p)
    p.add_argument("--n", type=_ints, required=True)
    p.add_argument("--framing", choices=("zero", "blackboard"), default="zero")

    p = sub.add_parser("pages", parents=[common], help="spectral sequence pages")
    _pd_args(p)
    _budget_args(p)
    p.add_argument("--n", type=_ints, help="color vector (default: all ones)")
    p.add_argument("--r-max", type=_positive, default=3)
    p.add_argument("--sequence", choices=("row-first", "column-first", "lee"), default="row-first")
    p.add_argument("--framing", choices=("zero", "blackboard"), default="zero")

    p = sub.add_parser("euler-check", parents=[common], help="compare colored Jones with page Euler characteristics")
    _pd_args(p)
    _budget_args(p)
    p.add_argument("--n", type=_ints, required=True)
    p.add_argument("--r-max", type=_positive, default=2)
    p.add_argument("--framing", choices=("zero", "blackboard"), default="zero")

    def nano_source(p, required=True):
        p.add_argument("--data", required=required,
                       help="homotopy data file, or one of the built-in targets star, 1, 2, 0")
        p.add_argument("--L", type=_letters, help="sign subset L (comma separated)")
        p.add_argument("--L1", type=_letters, help="refinement L1 of L")

    p = sub.add_parser("nano-map", parents=[common], help="image of a nanophrase under a functor")
    nano_source(p)
    p.add_argument("--phrase", required=True)
    p.add_argument("--functor", choices=("V", "V1", "V2", "U"), default="V")

    p = sub.add_parser("nano-equal", parents=[common], help="bounded homotopy search")
    p.add_argument("--data", required=True)
    p.add_argument("--p1", required=True)
    p.add_argument("--p2", required=True)
    p.add_argument("--depth", type=_positive, default=6)
    p.add_argument("--length-cap", type=_positive)
    p.add_argument("--max-states", type=_positive, default=500_000)

    p = sub.add_parser("nano-invariants", parents=[common], help="colored Jones and Khovanov data of a nanophrase")
    nano_source(p, required=False)
    _budget_args(p)
    p.add_argument("--phrase", required=True)
    p.add_argument("--n", type=_ints)
    p.add_argument("--framing", choices=("zero", "blackboard"), default="zero")
    return parser


# -- helpers --------------------------------------------------------------

def _data(source: str):
    from .nanophrases import TARGETS, parse_data

    if source in TARGETS and not os.path.exists(source):
        return TARGETS[source]
    return parse_data(corpus.read_source(source, ".txt"))


def _phrase(source: str):
    from .nanophrases import parse_phrase_with_data

    return parse_phrase_with_data(corpus.read_source(source, ".np"))


def _profile(args, data):
    from .nanophrases import SignProfile

    if not args.L:
        raise ValidationError("--L is required to build a sign profile")
    involution = "nu" if getattr(args, "functor", None) == "V2" else "tau"
    return SignProfile.make(data, args.L, args.L1, involution)


def _table_text(rows: dict) -> str:
    return "\n".join(f"{k}: {v}" for k, v in rows.items())


def _pages_json(pages) -> list:
    from .algebra.spectral import signed_rank_sum

    out = []
    for P in pages:
        d = P.to_json()
        d["euler"] = signed_rank_sum(P).to_pairs()
        out.append(d)
    return out


# -- subcommands ------------------------------------------------------------

def cmd_kh(args):
    from .khovanov import khovanov_homology

    D = corpus.load_diagram(args.pd)
    H = khovanov_homology(D, coefficients=args.coefficients, threads=args.threads, budget=args.budget)
    return H.to_json(), H.to_text()


def cmd_lee(args):
    from .lee import lee_homology, lee_pages

    D = corpus.load_diagram(args.pd)
    H = lee_homology(D, budget=args.budget)
    pages = lee_pages(D, r_max=args.r_max, budget=args.budget)
    out = H.to_json()
    out["pages"] = _pages_json(pages)
    text = f"dimension {H.dimension}\nq-gradings {list(H.gradings)}"
    return out, text


def cmd_s(args):
    from .lee import colored_rasmussen, s_link

    D = corpus.load_diagram(args.pd)
    if args.n is not None:
        R = colored_rasmussen(D, args.n, framing=args.framing, convention=args.convention,
                              budget=args.budget, threads=args.threads)
        text = "\n".join(f"k={list(e.k)} o={e.to_json()['orientation']} s={e.s}" for e in R.entries)
        return R.to_json(), text
    if args.orientation is not None and len(args.orientation) != D.n_components:
        raise ValidationError(f"--orientation needs {D.n_components} entries")
    s = s_link(D, args.orientation, args.convention, budget=args.budget)
    return {"s": s, "convention": args.convention}, f"s = {s}"


def cmd_colored_jones(args):
    from .colored import colored_jones

    D = corpus.load_diagram(args.pd)
    J = colored_jones(D, args.n, framing=args.framing, budget=args.bracket_budget)
    return {"n": list(args.n), "framing": args.framing, "polynomial": J.to_pairs()}, str(J)


def cmd_pages(args):
    D = corpus.load_diagram(args.pd)
    if args.sequence == "lee" and args.n is None:
        from .lee import lee_pages

        pages = lee_pages(D, r_max=args.r_max, budget=args.budget)
    else:
        from .colored import assemble_colored_bicomplex, three_sequences

        n = args.n if args.n is not None else (1,) * D.n_components
        B = assemble_colored_bicomplex(D, n, framing=args.framing, budget=args.budget)
        S = three_sequences(B, args.r_max, threads=args.threads)
        pages = {"row-first": S.row_first, "column-first": S.column_first, "lee": S.lee}[args.sequence]
    out = {"sequence": args.sequence, "pages": _pages_json(pages)}
    text = "\n".join(f"E_{P.r}: total rank {P.total_rank()}" + (" (stable)" if P.stable else "") for P in pages)
    return out, text


def cmd_euler_check(args):
    from .colored import euler_identity_check

    D = corpus.load_diagram(args.pd)
    R = euler_identity_check(D, args.n, r_max=args.r_max, framing=args.framing, budget=args.budget,
                             threads=args.threads)
    lines = [f"J = {R.colored_jones}"]
    for name, rows in R.sequences.items():
        for r, p, eq, cmp in rows:
            status = ("equal" if eq else "DIFFERENT") if cmp else "not compared"
            lines.append(f"{name} E_{r}: {status}")
    lines.append("ok" if R.ok else "FAILED")
    return R.to_json(), "\n".join(lines)


def cmd_nano_map(args):
    from .nanophrases import FUNCTORS

    data = _data(args.data)
    P, inline = _phrase(args.phrase)
    f, target = FUNCTORS[args.functor]
    image = f(P, _profile(args, data))
    return {"functor": args.functor, "target": target.name, "image": str(image),
            "phrase": image.dumps()}, image.dumps().rstrip()


def cmd_nano_equal(args):
    from .nanophrases import BUDGET_EXCEEDED, homotopic

    data = _data(args.data)
    P1, _ = _phrase(args.p1)
    P2, _ = _phrase(args.p2)
    R = homotopic(P1, P2, data, depth=args.depth, length_cap=args.length_cap, max_states=args.max_states)
    if R.verdict == BUDGET_EXCEEDED:
        raise BudgetExceeded(f"homotopy search explored more than {args.max_states} states")
    return R.to_json(), R.verdict


def cmd_nano_invariants(args):
    from .nanophrases import nanophrase_invariants

    P, inline = _phrase(args.phrase)
    profile = None
    if args.data is not None or args.L:
        data = _data(args.data) if args.data is not None else inline
        if data is None:
            raise ValidationError("a sign profile needs homotopy data (--data or inline lines)")
        profile = _profile(args, data)
    R = nanophrase_invariants(P, profile, args.n, framing=args.framing, budget=args.bracket_budget,
                              homology_budget=args.budget)
    text = f"J = {R.colored_jones}\n" + (R.khovanov.to_text() if R.khovanov is not None else "not realizable")
    return R.to_json(), text


COMMANDS = {
    "kh": cmd_kh, "lee": cmd_lee, "s": cmd_s, "colored-jones": cmd_colored_jones, "pages": cmd_pages,
    "euler-check": cmd_euler_check, "nano-map": cmd_nano_map, "nano-equal": cmd_nano_equal,
    "nano-invariants": cmd_nano_invariants,
}


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    random.seed(args.seed)
    np.random.seed(args.seed % 2**32)
    try:
        report, text = COMMANDS[args.command](args)
    except BudgetExceeded as exc:
        print(f"error: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvariantViolation as exc:
        print(f"error: invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ColoredKhError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if args.format == "json":
        out.write(json.dumps({"command": args.command, "result": report}) + "\n")
    else:
        out.write(text + "\n")
    return EXIT_OK


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
