"""Command-line front end.

Exit status: 0 when the computed property holds, 1 when it fails (the report
is still printed on stdout), 2 for malformed input or flags.
"""

from __future__ import annotations

import argparse
import sys
from itertools import combinations
from pathlib import Path

from . import codes, inflation, search, simplex, transforms
from .codes import Code, format_code, parse_code
from .errors import CodeError, InvalidChoice, LemmaViolation, NotACode, NotNeighborly, ParseError
from .words import Letter


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str) -> Code:
    return parse_code(_read(path))


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _letter(text: str) -> Letter:
    try:
        return Letter("01*".index(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"letter must be 0, 1 or *, got {text!r}") from None


def _n_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    if not sep or not lo.isdigit() or not hi.isdigit() or int(lo) > int(hi):
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}")
    return range(int(lo), int(hi) + 1)


def _fmt_set(cols) -> str:
    return "{" + ",".join(map(str, sorted(cols))) + "}"


def cmd_check(args, out) -> int:
    V = _load(args.file)
    rep = codes.validate(V, d=args.d, neighborly=args.neighborly, twin_free=args.twin_free)
    out.write(f"words={len(V)} n={V.n}\n")
    out.write(f"code={str(rep.is_code).lower()}\n")
    out.write(f"d={rep.d if rep.d is not None else 'mixed'}\n")
    out.write(f"neighborly={str(rep.is_neighborly).lower()}\n")
    out.write(f"twin_pairs={rep.twin_pair_count}\n")
    for a, b in rep.twin_pairs:
        out.write(f"twin {a} {b}\n")
    for prop in rep.failures:
        a, b = rep.witness[prop]
        out.write(f"FAIL {prop} witness={a},{b}\n")
    return 0 if rep.ok else 1


def cmd_volume(args, out) -> int:
    V = _load(args.file)
    try:
        out.write(f"{codes.volume(V)}\n")
    except NotACode as exc:
        out.write(f"not a code: {exc}\n")
        return 1
    return 0


def cmd_slice(args, out) -> int:
    V = _load(args.file)
    V.check_position(args.pos)
    out.write(format_code(codes.slice_code(V, args.pos, args.letter)))
    return 0


def cmd_partition(args, out) -> int:
    V = _load(args.file)
    V.check_position(args.pos)
    try:
        p = codes.partition_at(V, args.pos)
    except (NotNeighborly, LemmaViolation) as exc:
        out.write(f"FAIL {exc}\n")
        return 1
    out.write(f"C0={_fmt_set(p.c0)}\nC1={_fmt_set(p.c1)}\nD={_fmt_set(p.d)}\n")
    return 0


def cmd_standardize(args, out) -> int:
    V = _load(args.file)
    try:
        W, info = transforms.standardize(V)
    except (NotNeighborly, LemmaViolation, transforms.SliceTooSmall) as exc:
        out.write(f"FAIL {type(exc).__name__}: {exc}\n")
        return 1
    out.write(f"# transform {info.transform}\n")
    out.write(f"# s={info.s} r={info.r} sizes={','.join(map(str, info.sizes))}\n")
    out.write(format_code(W))
    return 0


def cmd_iso(args, out) -> int:
    U, W = _load(args.first), _load(args.second)
    try:
        t = transforms.are_isomorphic(U, W)
    except (transforms.SizeMismatch, transforms.LengthMismatch) as exc:
        out.write(f"not isomorphic: {exc}\n")
        return 1
    if t is None:
        out.write("not isomorphic\n")
        return 1
    out.write(f"{t}\n")
    return 0


def cmd_canon(args, out) -> int:
    V = _load(args.file)
    C, t = transforms.canonical_form(V)
    out.write(f"# transform {t}\n")
    out.write(format_code(C))
    return 0


def _write_trace(trace: inflation.InflationTrace, out) -> None:
    for st, pick in zip(trace.states, trace.delta):
        out.write(f"# step {st.position}: vol0={st.vol0} vol1={st.vol1} {st.state} delta={pick}\n")
    for k, fate in enumerate(trace.fates, 1):
        if fate.removed_at is not None:
            via = "".join(f" via {w}" for _, w in fate.history)
            out.write(f"# {k} {fate.original} removed step={fate.removed_at}{via}\n")
        else:
            out.write(f"# {k} {fate.original} {fate.status} {fate.final}\n")


def cmd_inflate(args, out) -> int:
    V = _load(args.file)
    for i in args.order:
        V.check_position(i)
    if args.delta is not None and any(b not in (0, 1) for b in args.delta):
        raise UsageError("delta entries must be 0 or 1")
    try:
        W, trace = inflation.inflate(V, args.order, args.delta, tie_break=args.tie_break)
    except InvalidChoice as exc:
        out.write(f"InvalidChoice: {exc}\n")
        return 1
    if args.trace:
        _write_trace(trace, out)
    out.write(format_code(W))
    return 0


def cmd_inflate_all(args, out) -> int:
    V = _load(args.file)
    outs = inflation.inflate_all(V, args.positions, limit=args.limit)
    out.write("\n".join(format_code(U) for U in outs))
    return 0


def cmd_corollary(args, out) -> int:
    V = _load(args.file)
    rep = inflation.verify_structure_corollary(V, limit=args.limit)
    if rep.unsatisfied:
        out.write(f"HypothesesUnsatisfied: {', '.join(rep.unsatisfied)}\n")
        return 1
    out.write(f"outcomes={rep.outcomes} holds={str(rep.holds).lower()}\n")
    for key, val in rep.details.items():
        out.write(f"{key}={str(val).lower()}\n")
    if rep.counterexample is not None:
        out.write("# counterexample\n")
        out.write(format_code(rep.counterexample))
    return 0 if rep.holds else 1


def cmd_search(args, out) -> int:
    if (args.n is None) == (args.n_range is None):
        raise UsageError("give exactly one of --n and --n-range")
    ns = [args.n] if args.n is not None else list(args.n_range)
    status = 0
    for n in ns:
        res = search.search_max(args.d, n, node_limit=args.node_limit)
        out.write(res.header() + "\n")
        for W in res.witnesses:
            out.write("\n" + format_code(W))
        if not res.exhaustive:
            status = 1
        if n != ns[-1]:
            out.write("\n")
    return status


def cmd_random(args, out) -> int:
    V = search.random_code(args.d, args.n, args.seed, args.target, twin_free=not args.allow_twins)
    out.write(format_code(V))
    return 0


def _load_family(path: str) -> simplex.SimplexFamily:
    return simplex.parse_simplices(_read(path))


def cmd_simplex2code(args, out) -> int:
    fam = _load_family(args.file)
    V, legend = simplex.build_code(fam)
    for k, h in enumerate(legend, 1):
        out.write(f"# {k} {h}\n")
    out.write(format_code(V))
    return 0


def cmd_neighborly2d(args, out) -> int:
    fam = _load_family(args.file)
    if fam.d != 2:
        raise UsageError("neighborly2d needs d=2")
    ok = True
    for (a, s), (b, t) in combinations(enumerate(fam.simplices, 1), 2):
        res = simplex.neighborly_pair_2d(s, t)
        ok &= res
        out.write(f"{a} {b} {str(res).lower()}\n")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="neighborly", description="Neighborly codes over {0,1,*}.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="validate a code file")
    c.add_argument("file")
    c.add_argument("--d", type=int)
    c.add_argument("--neighborly", action="store_true")
    c.add_argument("--twin-free", action="store_true")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("volume", help="exact volume of a code")
    c.add_argument("file")
    c.set_defaults(func=cmd_volume)

    c = sub.add_parser("slice", help="words with a given letter at a position")
    c.add_argument("file")
    c.add_argument("--pos", type=int, required=True)
    c.add_argument("--letter", type=_letter, required=True)
    c.set_defaults(func=cmd_slice)

    c = sub.add_parser("partition", help="column partition C0, C1, D at a pivot")
    c.add_argument("file")
    c.add_argument("--pos", type=int, required=True)
    c.set_defaults(func=cmd_partition)

    c = sub.add_parser("standardize", help="bring a neighborly code to standard form")
    c.add_argument("file")
    c.set_defaults(func=cmd_standardize)

    c = sub.add_parser("iso", help="find an isomorphism between two codes")
    c.add_argument("first")
    c.add_argument("second")
    c.set_defaults(func=cmd_iso)

    c = sub.add_parser("canon", help="canonical representative of a code")
    c.add_argument("file")
    c.set_defaults(func=cmd_canon)

    c = sub.add_parser("inflate", help="inflate along an order of positions")
    c.add_argument("file")
    c.add_argument("--order", type=_int_list, required=True)
    c.add_argument("--delta", type=_int_list)
    c.add_argument("--tie-break", type=int, choices=(0, 1), default=0)
    c.add_argument("--trace", action="store_true")
    c.set_defaults(func=cmd_inflate)

    c = sub.add_parser("inflate-all", help="all inflation outcomes on a set of positions")
    c.add_argument("file")
    c.add_argument("--positions", type=_int_list, required=True)
    c.add_argument("--limit", type=int, default=inflation.INFLATE_ALL_LIMIT)
    c.set_defaults(func=cmd_inflate_all)

    c = sub.add_parser("corollary", help="check the structure corollary on a code")
    c.add_argument("file")
    c.add_argument("--limit", type=int, default=inflation.INFLATE_ALL_LIMIT)
    c.set_defaults(func=cmd_corollary)

    c = sub.add_parser("search", help="largest neighborly twin-free d-code")
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--n", type=int)
    c.add_argument("--n-range", type=_n_range)
    c.add_argument("--node-limit", type=int, default=search.DEFAULT_NODE_LIMIT)
    c.set_defaults(func=cmd_search)

    c = sub.add_parser("random", help="random neighborly d-code (greedy)")
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--target", type=int, required=True)
    c.add_argument("--seed", type=int, required=True)
    c.add_argument("--allow-twins", action="store_true")
    c.set_defaults(func=cmd_random)

    c = sub.add_parser("simplex2code", help="code of a family of simplices")
    c.add_argument("file")
    c.set_defaults(func=cmd_simplex2code)

    c = sub.add_parser("neighborly2d", help="pairwise neighborliness of triangles")
    c.add_argument("file")
    c.set_defaults(func=cmd_neighborly2d)
    return p


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (UsageError, ParseError, CodeError) as exc:
        err.write(f"neighborly {args.command}: {type(exc).__name__}: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
