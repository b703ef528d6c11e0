"""Command line front end: ``fmatch <command> [flags]``.

Exit status is 2 for usage errors (bad flags, unreadable or malformed
input), 1 when a checked invariant fails, 0 otherwise.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from pathlib import Path

from .construct import (ConstructionError, DegeneratePatternError, build_Y, build_Z,
                        compute_d, find_r0, g_sequence)
from .counting import Variant, count, count_mod, oracle_count
from .experiment import SAMPLERS, TrialConfig, residue_experiment, rleaf_experiment
from .patterns import PatternError, parse_pattern
from .trees import (FunctionTable, LabeledTree, RootedTree, TreeError, from_pruefer,
                    joyal_inverse, joyal_tree)


class UsageError(Exception):
    pass


def _variant(args) -> Variant:
    return Variant.INDUCED if args.induced else Variant.PLAIN


def _pattern(text: str) -> LabeledTree:
    try:
        return parse_pattern(text)
    except (PatternError, TreeError) as exc:
        raise UsageError(str(exc)) from None


def _read_tree(path: str) -> LabeledTree:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read tree file: {exc}") from None
    try:
        return LabeledTree.from_edgelist(text)
    except TreeError as exc:
        raise UsageError(f"{path}: not a tree: {exc}") from None


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "out", None) and args.cmd in ("montecarlo", "rleaf"):
        Path(args.out).write_text(json.dumps(payload, indent=2) + "\n")
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def cmd_count(args) -> int:
    F = _pattern(args.F)
    T = _read_tree(args.tree)
    v = _variant(args)
    value = count(F, T, v) if args.mod is None else count_mod(F, T, args.mod, v)
    _emit(args, {"pattern": args.F, "variant": v.value, "n": T.n, "mod": args.mod, "count": value},
          str(value))
    return 0


def cmd_nullify(args) -> int:
    F = _pattern(args.F)
    v = _variant(args)
    r0 = find_r0(F, args.mod, v)
    Y = build_Y(F, args.mod, v)
    Z = build_Z(F, args.mod, v)
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    (out / "Y.txt").write_text(Y.tree.to_edgelist())
    (out / "Z.txt").write_text(Z.tree.to_edgelist())
    payload = {"pattern": args.F, "variant": v.value, "mod": args.mod, "d": compute_d(F, v),
               "r0": r0, "Y_size": Y.n, "Z_size": Z.n, "Y_root": Y.root, "Z_root": Z.root,
               "Y_count": count(F, Y.tree, v), "files": [str(out / "Y.txt"), str(out / "Z.txt")]}
    text = "\n".join([f"r0 {r0}", f"|Y| {Y.n}", f"|Z| {Z.n}",
                      f"wrote {out / 'Y.txt'} {out / 'Z.txt'} (roots at vertex 1)"])
    _emit(args, payload, text)
    return 0


def cmd_recurrence(args) -> int:
    F = _pattern(args.F)
    v = _variant(args)
    seq = g_sequence(F, args.rmax, v)
    payload = {"pattern": args.F, "variant": v.value, "d": seq.d, "order": seq.order,
               "g": list(seq.values), "recurrence_verified": True}
    text = "\n".join([f"d {seq.d}", "g " + " ".join(map(str, seq.values)),
                      "recurrence verified"])
    _emit(args, payload, text)
    return 0


def cmd_montecarlo(args) -> int:
    cfg = TrialConfig(n=args.n, m=args.mod, F=_pattern(args.F), variant=_variant(args),
                      trials=args.trials, seed=args.seed, sampler=args.sampler,
                      workers=args.threads, pattern=args.F)
    report = residue_experiment(cfg)
    if args.format == "csv":
        print(report.to_csv(), end="")
        if args.out:
            Path(args.out).write_text(json.dumps(report.to_dict(), indent=2) + "\n")
        return 0
    args.format = "json"
    _emit(args, report.to_dict(), "")
    return 0


def cmd_rleaf(args) -> int:
    R = _pattern(args.R)
    if not 1 <= args.root <= R.n:
        raise UsageError(f"--root must be a vertex of R (1..{R.n})")
    if args.n < R.n + 1:
        raise UsageError(f"--n must be at least |R| + 1 = {R.n + 1}")
    report = rleaf_experiment(RootedTree(R, args.root), args.n, args.trials, args.seed,
                              args.sampler, args.threads)
    args.format = "json"
    _emit(args, report.to_dict(), "")
    return 0


def cmd_joyal(args) -> int:
    try:
        f = FunctionTable(tuple(int(x) for x in args.func.split(",")))
    except (ValueError, TreeError) as exc:
        raise UsageError(f"bad --func: {exc}") from None
    mt = joyal_tree(f)
    back = joyal_inverse(mt)
    ok = back == f
    payload = {"f": list(f.values), "n": mt.tree.n, "edges": [list(e) for e in mt.tree.edges],
               "left": mt.left, "right": mt.right, "roundtrip": ok}
    text = "\n".join([mt.tree.to_edgelist().rstrip(), f"left {mt.left}", f"right {mt.right}",
                      f"roundtrip {'ok' if ok else 'FAILED'}"])
    _emit(args, payload, text)
    return 0 if ok else 1


def cmd_selftest(args) -> int:
    patterns = ["vertex", "edge", "path:3", "star:3"]
    failures = 0
    checked = 0
    for n in range(1, args.max_n + 1):
        trees = ([LabeledTree.single()] if n == 1 else
                 [from_pruefer(c) for c in itertools.product(range(1, n + 1), repeat=n - 2)])
        for T in trees:
            for name in patterns:
                F = parse_pattern(name)
                for v in Variant:
                    checked += 1
                    if count(F, T, v) != oracle_count(F, T, v):
                        failures += 1
                        print(f"MISMATCH {name} {v.value} {list(T.edges)}", file=sys.stderr)
    status = "ok" if failures == 0 else "FAILED"
    _emit(args, {"checked": checked, "failures": failures, "max_n": args.max_n},
          f"selftest {status}: {checked} comparisons, {failures} mismatches")
    return 0 if failures == 0 else 1


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fmatch", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="cmd", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(fn=fn)
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.add_argument("--out", help="output path (JSON report, or directory for nullify)")
        return p

    p = add("count", cmd_count, "count F-matchings in a tree")
    p.add_argument("--F", required=True, help="pattern: vertex, edge, path:k, star:k, file:<path>")
    p.add_argument("--tree", required=True, help="edge-list file, or - for stdin")
    p.add_argument("--induced", action="store_true")
    p.add_argument("--mod", type=_positive)

    p = add("nullify", cmd_nullify, "build the nullifying trees Y and Z")
    p.add_argument("--F", required=True)
    p.add_argument("--mod", type=_positive, required=True)
    p.add_argument("--induced", action="store_true")

    p = add("recurrence", cmd_recurrence, "print d and g(1..rmax)")
    p.add_argument("--F", required=True)
    p.add_argument("--rmax", type=_positive, default=12)
    p.add_argument("--induced", action="store_true")

    p = add("montecarlo", cmd_montecarlo, "residues of counts over random trees")
    p.add_argument("--F", required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--mod", type=_positive, required=True)
    p.add_argument("--trials", type=_positive, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--sampler", choices=SAMPLERS, default="pruefer")
    p.add_argument("--induced", action="store_true")

    p = add("rleaf", cmd_rleaf, "frequency of an R-leaf in random trees")
    p.add_argument("--R", required=True, help="pattern for the rooted tree R")
    p.add_argument("--root", type=_positive, default=1, help="root vertex of R")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--trials", type=_positive, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--sampler", choices=SAMPLERS, default="pruefer")

    p = add("joyal", cmd_joyal, "map a function to its marked tree and back")
    p.add_argument("--func", required=True, help="comma separated values f(1),...,f(n)")

    p = add("selftest", cmd_selftest, "compare the DP with the brute-force oracle")
    p.add_argument("--max-n", type=_positive, default=6)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except (UsageError, DegeneratePatternError) as exc:
        print(f"fmatch {args.cmd}: {exc}", file=sys.stderr)
        return 2
    except ConstructionError as exc:
        print(f"fmatch {args.cmd}: invariant violated: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
