"""Command-line front end.

Exit codes: 0 success, 1 a ``check-*`` command or selftest found a violation,
2 bad input, 3 the quotient enumeration hit its size cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import campaigns
from .l2 import analyze
from .overgroups import ENV_LIMIT, EnumerationLimitError, crit, enumerate_quotients, l2_closure, pi_bar
from .pullback import intersect
from .stallings import (
    CoreGraph,
    GraphFormatError,
    GraphValidationError,
    accepts,
    basis,
    finite_index,
    from_generators,
    from_json,
    join,
    rank,
    to_dict,
    to_dot,
)
from .words import Alphabet, RankError, WordParseError, min_rank_for, parse

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


class InputError(Exception):
    pass


def _expand(tokens: list[str]) -> list[str]:
    """Replace ``@file`` tokens by the file's lines (one word per line)."""
    out = []
    for tok in tokens:
        if tok.startswith("@"):
            try:
                text = Path(tok[1:]).read_text()
            except OSError as exc:
                raise InputError(f"cannot read {tok[1:]}: {exc}") from exc
            out += [line.strip() for line in text.splitlines() if line.strip() and not line.startswith("#")]
        else:
            out.append(tok)
    return out


def _graph_file(tokens: list[str]) -> str | None:
    if len(tokens) == 1 and tokens[0].startswith("@") and tokens[0].endswith(".json"):
        return tokens[0][1:]
    return None


def _rank_of(args, *token_lists: list[str]) -> int:
    if args.ambient_rank is not None:
        return args.ambient_rank
    needed = 1
    for tokens in token_lists:
        path = _graph_file(tokens)
        if path is not None:
            needed = max(needed, _load_graph(path).rank)
        else:
            needed = max(needed, min_rank_for(_expand(tokens)))
    return needed


def _load_graph(path: str) -> CoreGraph:
    try:
        return from_json(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _subgroup(tokens: list[str], r: int) -> CoreGraph:
    path = _graph_file(tokens)
    if path is not None:
        g = _load_graph(path)
        if g.rank != r:
            g = from_generators([parse(str(w), Alphabet(r)) for w in basis(g)], r)
        return g
    alphabet = Alphabet(r)
    return from_generators([parse(w, alphabet) for w in _expand(tokens)], r)


def _emit(args, payload, text: str | None = None) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=False))
    else:
        print(text if text is not None else payload)


def _words(ws) -> list[str]:
    return [str(w) for w in ws]


def _pretty(ws) -> str:
    return "\n".join(w.pretty() for w in ws) if ws else "(trivial subgroup)"


def _graph_text(g: CoreGraph) -> str:
    lines = [f"vertices {g.num_vertices}  edges {g.num_edges}  rank {rank(g)}"]
    lines += [f"  {u} -{'abcdefghijklmnopqrstuvwxyz'[x - 1]}-> {v}" for x, u, v in g.edges]
    return "\n".join(lines)


def _emit_graph(args, g: CoreGraph) -> None:
    if args.format == "dot":
        sys.stdout.write(to_dot(g))
    elif args.format == "json":
        print(json.dumps(to_dict(g)))
    else:
        print(_graph_text(g))


# --------------------------------------------------------------------------
# commands


def cmd_fold(args) -> int:
    _emit_graph(args, _subgroup(args.words, _rank_of(args, args.words)))
    return EXIT_OK


cmd_export = cmd_fold


def cmd_rank(args) -> int:
    g = _subgroup(args.words, _rank_of(args, args.words))
    idx = finite_index(g)
    _emit(args, {"rank": rank(g), "index": idx}, str(rank(g)))
    return EXIT_OK


def cmd_basis(args) -> int:
    b = basis(_subgroup(args.words, _rank_of(args, args.words)))
    _emit(args, _words(b), _pretty(b))
    return EXIT_OK


def cmd_member(args) -> int:
    if not args.subgroup:
        raise InputError("member needs --subgroup")
    r = _rank_of(args, args.subgroup, args.words)
    H = _subgroup(args.subgroup, r)
    words = _expand(args.words)
    results = [accepts(H, parse(w, Alphabet(r))) for w in words]
    _emit(args, dict(zip(words, results)), "\n".join("true" if x else "false" for x in results))
    return EXIT_OK


def _pair(args) -> tuple[CoreGraph, CoreGraph]:
    if not args.subgroup:
        raise InputError(f"{args.command} needs --subgroup")
    r = _rank_of(args, args.subgroup, args.words)
    return _subgroup(args.subgroup, r), _subgroup(args.words, r)


def cmd_intersect(args) -> int:
    g = intersect(*_pair(args))
    if args.format == "text":
        print(_pretty(basis(g)))
    else:
        _emit_graph(args, g)
    return EXIT_OK


def cmd_join(args) -> int:
    g = join(*_pair(args))
    if args.format == "text":
        print(_pretty(basis(g)))
    else:
        _emit_graph(args, g)
    return EXIT_OK


def cmd_quotients(args) -> int:
    qs = enumerate_quotients(_subgroup(args.words, _rank_of(args, args.words)))
    payload = {"count": len(qs), "min_rank": qs.min_rank, "rank_histogram": {str(k): v for k, v in qs.histogram().items()}}
    if args.members:
        payload["members"] = [_words(basis(m)) for m in qs.sorted_members()]
    text = [f"quotients {len(qs)}", "rank histogram: " + ", ".join(f"{k}:{v}" for k, v in qs.histogram().items())]
    if args.members:
        text += ["  " + (" ".join(w.pretty() for w in basis(m)) or "1") for m in qs.sorted_members()]
    _emit(args, payload, "\n".join(text))
    return EXIT_OK


def cmd_pibar(args) -> int:
    p = pi_bar(_subgroup(args.words, _rank_of(args, args.words)))
    _emit(args, {"pi_bar": p}, str(p))
    return EXIT_OK


def cmd_crit(args) -> int:
    cs = crit(_subgroup(args.words, _rank_of(args, args.words)))
    payload = {
        "pi_bar": cs.pi_bar,
        "members": [_words(basis(m)) for m in cs.members],
        "closure": _words(basis(cs.closure)),
    }
    text = [f"pi_bar {cs.pi_bar}", f"members {len(cs.members)}"]
    text += ["  " + " ".join(w.pretty() for w in basis(m)) for m in cs.members]
    text.append("closure " + " ".join(w.pretty() for w in basis(cs.closure)))
    _emit(args, payload, "\n".join(text))
    return EXIT_OK


def cmd_closure(args) -> int:
    g = l2_closure(_subgroup(args.words, _rank_of(args, args.words)))
    b = basis(g)
    if args.format == "dot":
        sys.stdout.write(to_dot(g))
    else:
        _emit(args, _words(b), _pretty(b))
    return EXIT_OK


def cmd_analyze(args) -> int:
    if args.ambient_rank is None:
        raise InputError("analyze needs --ambient-rank (beta0 depends on the ambient free group)")
    rep = analyze(_subgroup(args.words, args.ambient_rank), args.ambient_rank)
    d = rep.to_dict()
    text = "\n".join(
        f"{k}: {' '.join(w.pretty() for w in rep.closure_basis) if k == 'closure_basis' else v}"
        for k, v in d.items()
    )
    _emit(args, d, text)
    return EXIT_OK


def _report_check(args, res: campaigns.CheckResult) -> int:
    d = res.to_dict()
    if args.format == "json" or not res.passed:
        print(json.dumps(d))
    else:
        print(f"{res.name}: {'ok' if res.passed else 'FAILED'} ({res.checked} checked)")
        for k, v in res.notes.items():
            print(f"  {k}: {v}")
    return EXIT_OK if res.passed else EXIT_VIOLATION


def _optional_subgroup(args, tokens, r):
    return _subgroup(tokens, r) if tokens else None


def cmd_check_inert(args) -> int:
    r = _rank_of(args, args.words)
    H = _optional_subgroup(args, args.words, r)
    return _report_check(args, campaigns.check_inert(H, r, args.seed, args.trials, args.max_len))


def cmd_check_strong_inert(args) -> int:
    r = _rank_of(args, args.words, args.subgroup or [])
    H = _optional_subgroup(args, args.words, r)
    U = _optional_subgroup(args, args.subgroup, r)
    return _report_check(args, campaigns.check_strong_inertness(H, U, r, args.seed, args.trials, args.max_len))


def cmd_check_crit_lattice(args) -> int:
    r = _rank_of(args, args.words)
    H = _optional_subgroup(args, args.words, r)
    return _report_check(args, campaigns.check_crit_lattice(H, r, args.seed, args.trials))


def cmd_selftest(args) -> int:
    results = campaigns.selftest(args.seed, args.budget)
    report = {
        "seed": args.seed,
        "budget": args.budget,
        "passed": all(r.passed for r in results),
        "suites": [r.to_dict(timings=args.timings) for r in results],
    }
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        for r in results:
            t = f"  {r.seconds:.2f}s" if args.timings else ""
            print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}  checked={r.checked} violations={r.violations}{t}")
    return EXIT_OK if report["passed"] else EXIT_VIOLATION


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-r", "--ambient-rank", type=int, default=None,
                        help="rank of the ambient free group (default: largest letter used)")
    common.add_argument("--format", choices=["text", "json", "dot"], default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=100)
    common.add_argument("--max-len", type=int, default=10)

    parser = argparse.ArgumentParser(
        prog="subrigid",
        description="Stallings graphs, minimum overgroup rank, Crit and L2-closure of subgroups of free groups.",
        epilog=f"Words: lowercase = generator, uppercase = inverse (e.g. abA). "
               f"Use @file for one word per line, or @graph.json for a saved core graph. "
               f"{ENV_LIMIT} caps the quotient enumeration.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, words="*", subgroup=False):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("words", nargs=words, metavar="WORD")
        if subgroup:
            p.add_argument("-s", "--subgroup", action="append", metavar="WORD",
                           help="generator of the second subgroup (repeatable)")
        p.set_defaults(func=fn)
        return p

    add("fold", cmd_fold, "core graph of the subgroup")
    add("rank", cmd_rank, "rank of the subgroup")
    add("basis", cmd_basis, "free basis read off a spanning tree")
    add("member", cmd_member, "membership of each WORD in --subgroup", words="+", subgroup=True)
    add("intersect", cmd_intersect, "intersection with --subgroup", subgroup=True)
    add("join", cmd_join, "subgroup generated together with --subgroup", subgroup=True)
    q = add("quotients", cmd_quotients, "count the folded quotient overgroups")
    q.add_argument("--members", action="store_true", help="also list every member")
    add("pibar", cmd_pibar, "minimum rank of an overgroup")
    add("crit", cmd_crit, "overgroups of minimum rank and their maximum")
    add("closure", cmd_closure, "L2-closure (largest minimum-rank overgroup)")
    add("analyze", cmd_analyze, "L2-Betti numbers and predicates (needs --ambient-rank)")
    add("check-inert", cmd_check_inert, "randomized compressed <=> inert check")
    add("check-strong-inert", cmd_check_strong_inert, "randomized strong inertness check", subgroup=True)
    add("check-crit-lattice", cmd_check_crit_lattice, "check Crit is closed under meet and join")
    add("export", cmd_export, "export the core graph as JSON or DOT")
    st = sub.add_parser("selftest", parents=[common], help="run every verification suite")
    st.add_argument("--budget", type=int, default=1)
    st.add_argument("--timings", action="store_true", help="include wall-clock times (breaks byte-identical output)")
    st.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except EnumerationLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (InputError, WordParseError, RankError, GraphFormatError, GraphValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
