"""Command-line front end.

Exit codes: 0 success / property true, 1 property false or verification
failure, 2 input or capacity error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path as FilePath

from .eargraft import EarCandidate, build, decompose, verify_decomposition
from .errors import GraftkitError, InputError
from .factorcritical import is_factor_critical_graph, is_factor_critical_graft
from .files import (
    ParsedInstance,
    decomposition_from_json,
    decomposition_to_json,
    emit_graft_text,
    emit_join_text,
    parse_graft_text,
    parse_join_text,
    to_dot,
)
from .generators import GenConfig, generate
from .grafts import Graft
from .quasicomb import is_comb, is_critical, is_quasicomb
from .solver import SolverLimits, best_min_join, distance, verify_minimum


def _limits(args: argparse.Namespace) -> SolverLimits:
    return SolverLimits(
        max_cyclomatic=args.limit_cyclomatic, max_terminals=args.limit_tsize
    )


def _add_limit_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--limit-cyclomatic", type=int, default=20, metavar="N")
    p.add_argument("--limit-tsize", type=int, default=20, metavar="N")


def _read(path: str) -> str:
    try:
        return FilePath(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _write(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        FilePath(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from None


def _load(path: str) -> ParsedInstance:
    return parse_graft_text(_read(path))


def _resolve_root(explicit: str | None, parsed: ParsedInstance) -> str:
    root = explicit if explicit else parsed.root
    if root is None:
        raise InputError("no root given and the file declares none")
    return root


def _load_join(path: str | None, parsed: ParsedInstance):
    if path is None:
        return None
    return parse_join_text(_read(path), parsed.graft.graph)


def _cmd_solve(args) -> int:
    parsed = _load(args.file)
    res = best_min_join(parsed.graft, _limits(args))
    print(f"nu {res.size}")
    print("join " + " ".join(sorted(res.join)))
    return 0


def _cmd_dist(args) -> int:
    parsed = _load(args.file)
    limits = _limits(args)
    join = _load_join(args.join, parsed)
    if join is None:
        join = best_min_join(parsed.graft, limits).join
    elif not verify_minimum(parsed.graft, join, limits):
        raise InputError("the supplied join is not minimum")
    res = distance(parsed.graft, join, args.u, args.v, limits, precheck=False)
    print(f"distance {res.distance}")
    print("path " + " ".join(res.witness.vertices))
    print("path-edges " + " ".join(res.witness.edges))
    return 0


def _cmd_check(args) -> int:
    parsed = _load(args.file)
    limits = _limits(args)
    if args.quasicomb:
        verdict = is_quasicomb(parsed.bipartite, limits)
        print(f"quasicomb {str(verdict).lower()}")
        return 0 if verdict else 1
    if args.comb:
        verdict = is_comb(parsed.bipartite, limits)
        print(f"comb {str(verdict).lower()}")
        return 0 if verdict else 1
    if args.critical is not None:
        root = _resolve_root(args.critical or None, parsed)
        report = is_critical(parsed.bipartite, root, limits)
        print(f"critical {str(report.verdict).lower()} root {root}")
        for vertex, reason in report.violations:
            print(f"violation {vertex} {reason}")
        return 0 if report.verdict else 1
    root = args.factor_critical or parsed.root
    if root:
        verdict = is_factor_critical_graft(parsed.graft, root)
        print(f"factor-critical-graft {str(verdict).lower()} root {root}")
    else:
        verdict = is_factor_critical_graph(parsed.graft.graph)
        print(f"factor-critical-graph {str(verdict).lower()}")
    return 0 if verdict else 1


def _cmd_decompose(args) -> int:
    parsed = _load(args.file)
    limits = _limits(args)
    bg = parsed.bipartite
    root = _resolve_root(args.root, parsed)
    join = _load_join(args.join, parsed)
    if join is None:
        join = best_min_join(bg.graft, limits).join
    d = decompose(bg, root, join, limits)
    _write(args.output, decomposition_to_json(d))
    return 0


def _cmd_build(args) -> int:
    limits = _limits(args)
    d = decomposition_from_json(_read(args.script))
    candidates = [
        EarCandidate(
            s.edges,
            frozenset(s.terminals),
            frozenset(s.spine),
            frozenset(s.tooth),
            frozenset(s.join) if s.join else None,
        )
        for s in d.steps
    ]
    result = build(d.root, candidates, limits)
    _write(args.output, emit_graft_text(result.graft, root=d.root))
    if args.certificate:
        _write(args.certificate, decomposition_to_json(result.decomposition))
    if args.join_out:
        _write(args.join_out, emit_join_text(result.join))
    return 0


def _cmd_gen(args) -> int:
    cfg_kwargs = {"seed": args.seed, "kind": args.kind}
    if args.kind == "critical-quasicomb":
        cfg_kwargs["max_ears"] = args.size
        cfg_kwargs["max_vertices"] = max(4 * args.size + 1, 1)
    else:
        cfg_kwargs["max_vertices"] = args.size
    cfg = GenConfig(**cfg_kwargs)
    out = generate(cfg)
    if args.kind == "graft":
        text = emit_graft_text(out)
    elif args.kind == "critical-quasicomb":
        text = emit_graft_text(out.graft, root="r")
    else:
        # factor-critical graphs are emitted as grafts without terminals
        text = emit_graft_text(Graft(out, frozenset()), root="r")
    _write(args.output, text)
    return 0


def _cmd_verify(args) -> int:
    parsed = _load(args.file)
    limits = _limits(args)
    bg = parsed.bipartite
    cert = decomposition_from_json(_read(args.certificate))
    join = _load_join(args.join, parsed)
    root = args.root or cert.root
    outcome = verify_decomposition(bg, root, cert, join, limits)
    print(f"verify {'ok' if outcome.ok else 'failed'}")
    if not outcome.ok:
        where = "final" if outcome.failed_step is None else f"step {outcome.failed_step}"
        print(f"reason {where}: {outcome.reason}")
    return 0 if outcome.ok else 1


def _cmd_dot(args) -> int:
    parsed = _load(args.file)
    join = _load_join(args.join, parsed) or frozenset()
    _write(args.output, to_dot(parsed.instance, join))
    return 0


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graftkit",
        description="Minimum joins, join distances, and ear-decomposition "
        "certificates for grafts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="minimum join size and one minimum join")
    p.add_argument("file")
    _add_limit_flags(p)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("dist", help="join distance between two vertices")
    p.add_argument("file")
    p.add_argument("u")
    p.add_argument("v")
    p.add_argument("--join", metavar="JFILE")
    _add_limit_flags(p)
    p.set_defaults(func=_cmd_dist)

    p = sub.add_parser("check", help="recognizers: quasicomb, comb, critical, factor-critical")
    p.add_argument("file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--quasicomb", action="store_true")
    group.add_argument("--comb", action="store_true")
    group.add_argument("--critical", nargs="?", const="", metavar="ROOT")
    group.add_argument("--factor-critical", nargs="?", const="", metavar="ROOT")
    _add_limit_flags(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("decompose", help="emit an ear-decomposition certificate")
    p.add_argument("file")
    p.add_argument("--root", metavar="R")
    p.add_argument("--join", metavar="JFILE")
    p.add_argument("-o", "--output", metavar="CERT")
    _add_limit_flags(p)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("build", help="build a graft from an ear script (certificate JSON)")
    p.add_argument("script")
    p.add_argument("-o", "--output", metavar="GRAFT")
    p.add_argument("-c", "--certificate", metavar="CERT")
    p.add_argument("--join-out", metavar="JFILE")
    _add_limit_flags(p)
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("--kind", choices=["graft", "critical-quasicomb", "factor-critical"], required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--size", type=int, required=True, metavar="N")
    p.add_argument("-o", "--output", metavar="FILE")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("verify", help="verify a certificate against a graft file")
    p.add_argument("file")
    p.add_argument("certificate")
    p.add_argument("--join", metavar="JFILE")
    p.add_argument("--root", metavar="R")
    _add_limit_flags(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("dot", help="render a graft (and optional join) as DOT")
    p.add_argument("file")
    p.add_argument("--join", metavar="JFILE")
    p.add_argument("-o", "--output", metavar="FILE")
    p.set_defaults(func=_cmd_dot)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except GraftkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
