"""Command-line interface.

Machine-readable JSON goes to stdout (and to ``--out`` when given); human
summaries go to stderr.  Exit codes: 0 all checks passed, 1 a verification
failed, 2 usage or configuration error.  Every flag can be defaulted through
an environment variable with the ``COBCALC_`` prefix (e.g. ``COBCALC_LAW``).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import (
    CobcalcError,
    CoefficientModeError,
    ConfigError,
    InvolutionError,
    NotMinimalRankError,
    RepeatedWeightError,
    UnsupportedTypeError,
)
from .fgl import build_law
from .gkm import (
    GKMClass,
    flag_gkm,
    gln_relations,
    invariants_basis,
    line_bundle_class,
    membership,
    subring_basis,
)
from .roots import build_root_datum
from .schubert import bott_samelson
from .series import GradedSeries
from .verify import RunConfig, SUITES, run_suite, suite_fgl_check

_CONFIG_ERRORS = (
    ConfigError,
    UnsupportedTypeError,
    CoefficientModeError,
    NotMinimalRankError,
    InvolutionError,
    RepeatedWeightError,
)


def _env(name: str, fallback=None):
    return os.environ.get("COBCALC_" + name.upper().replace("-", "_"), fallback)


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--law", default=_env("law", "universal:4"),
                   help="additive | multiplicative[:beta] | universal:N")
    p.add_argument("--type", dest="type_tag", default=_env("type", "gl2"),
                   help="root datum tag (gl2, gl3, a2, b2, g2, psl2xpsl2, ...)")
    p.add_argument("--degree", type=int, default=int(_env("degree", 5)),
                   help="working degree (see each subcommand)")
    p.add_argument("--rational", action="store_true",
                   default=_env("rational", "") not in ("", "0", "false"),
                   help="compute with rational coefficients")
    p.add_argument("--seed", type=int, default=int(_env("seed", 0)))
    p.add_argument("--cache-dir", default=_env("cache-dir"))
    p.add_argument("--out", default=_env("out"),
                   help="also write the JSON artifact to this path")
    p.add_argument("--threads", type=int, default=int(_env("threads", 1)))
    p.add_argument("--case", default=_env("case", "group:psl2"),
                   help="symmetric case tag, e.g. group:psl2")
    p.add_argument("--word", default=_env("word", ""),
                   help="comma-separated 1-based simple root indices")
    p.add_argument("--count", type=int, default=int(_env("count", 200)),
                   help="sample count for randomized suites")
    p.add_argument("--probe-degree", type=int,
                   default=int(_env("probe-degree", -1)),
                   help="max degree for span probes (-1: per-type default)")
    p.add_argument("--class-file", default=_env("class-file"),
                   help="GKM class JSON to verify (gkm verify)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cobcalc",
        description="Exact truncated-series calculus for formal group laws, "
        "Demazure operators, and moment-graph models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fgl", help="formal group law tools")
    fgl_sub = p.add_subparsers(dest="subcommand", required=True)
    _add_common(fgl_sub.add_parser("check", help="run the law axiom suite"))

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    _add_common(p)

    p = sub.add_parser("compute", help="compute a JSON artifact")
    p.add_argument("what", choices=("bott-samelson", "subring-basis", "invariants"))
    _add_common(p)

    p = sub.add_parser("schubert", help="Schubert calculus commands")
    sch_sub = p.add_subparsers(dest="subcommand", required=True)
    _add_common(sch_sub.add_parser("bott-samelson",
                                   help="compute a Bott-Samelson class"))

    p = sub.add_parser("gkm", help="moment graph commands")
    gkm_sub = p.add_subparsers(dest="subcommand", required=True)
    _add_common(gkm_sub.add_parser("verify", help="check graph/class congruences"))
    _add_common(gkm_sub.add_parser("basis", help="graded congruence-tuple basis"))

    p = sub.add_parser("symmetric", help="wonderful symmetric variety commands")
    sym_sub = p.add_subparsers(dest="subcommand", required=True)
    _add_common(sym_sub.add_parser("verify",
                                   help="compare the invariant subring routes"))
    return parser


def _parse_word(text: str) -> tuple:
    text = (text or "").strip()
    if not text:
        return ()
    try:
        return tuple(int(x) - 1 for x in text.split(","))
    except ValueError:
        raise ConfigError(f"cannot parse word {text!r}") from None


def _config(args) -> RunConfig:
    return RunConfig(
        law=args.law,
        degree=args.degree,
        type_tag=args.type_tag,
        case=args.case,
        rational=args.rational,
        seed=args.seed,
        cache_dir=args.cache_dir,
        threads=args.threads,
        word=_parse_word(args.word),
        count=args.count,
        probe_degree=None if args.probe_degree < 0 else args.probe_degree,
    )


def _emit(obj: dict, out_path: str | None) -> None:
    text = json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"
    sys.stdout.write(text)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)


def _summarize(report: dict) -> None:
    for check in report.get("checks", ()):
        mark = "ok" if check["pass"] else "FAIL"
        print(f"[{mark}] {check['name']}", file=sys.stderr)
    if "pass" in report:
        print(
            f"{report.get('suite', 'run')}: "
            + ("pass" if report["pass"] else "FAIL"),
            file=sys.stderr,
        )


def _cmd_compute(args, cfg: RunConfig) -> dict:
    what = args.what if hasattr(args, "what") else "bott-samelson"
    if what == "bott-samelson":
        datum = build_root_datum(cfg.type_tag)
        ctx = cfg.context()
        graph = flag_gkm(datum, ctx)
        cls = bott_samelson(cfg.word, graph)
        return cls.to_json()
    if what == "subring-basis":
        datum = build_root_datum(cfg.type_tag)
        ctx = build_law(cfg.law_spec(), max(5, cfg.degree),
                        rational=cfg.rational, cache_dir=cfg.cache_dir)
        graph = flag_gkm(datum, ctx)
        basis = subring_basis(graph, cfg.degree)
        return {
            "type": cfg.type_tag,
            "degree": cfg.degree,
            "rank": len(basis),
            "basis": [c.to_json() for c in basis],
        }
    if what == "invariants":
        datum = build_root_datum(cfg.type_tag)
        ctx = build_law(cfg.law_spec(), max(5, cfg.degree),
                        rational=cfg.rational, cache_dir=cfg.cache_dir)
        basis = invariants_basis(datum, ctx, cfg.degree)
        return {
            "type": cfg.type_tag,
            "degree": cfg.degree,
            "rank": len(basis),
            "basis": [s.to_json(ctx.ngens) for s in basis],
        }
    raise ConfigError(f"unknown artifact {what!r}")


def _cmd_gkm(args, cfg: RunConfig) -> dict:
    datum = build_root_datum(cfg.type_tag)
    if args.subcommand == "basis":
        ctx = build_law(cfg.law_spec(), max(5, cfg.degree),
                        rational=cfg.rational, cache_dir=cfg.cache_dir)
        graph = flag_gkm(datum, ctx)
        basis = subring_basis(graph, cfg.degree)
        return {
            "type": cfg.type_tag,
            "degree": cfg.degree,
            "rank": len(basis),
            "basis": [c.to_json() for c in basis],
        }
    ctx = cfg.context()
    graph = flag_gkm(datum, ctx)
    checks = []
    if args.class_file:
        with open(args.class_file) as fh:
            data = json.load(fh)
        values = [GradedSeries.from_json(data[vid]) for vid in graph.ids]
        ok, witness = membership(GKMClass(graph, values), graph)
        checks.append({"name": "class_congruences", "pass": ok, "witness": witness})
    else:
        expected_edges = graph.nvertices * len(datum.positive_roots) // 2
        checks.append(
            {
                "name": "edge_count",
                "pass": len(graph.edges) == expected_edges,
                "vertices": graph.nvertices,
                "edges": len(graph.edges),
            }
        )
        ok = True
        for i in range(datum.rank):
            chi = tuple(1 if j == i else 0 for j in range(datum.rank))
            member, _ = membership(line_bundle_class(chi, graph), graph)
            ok = ok and member
        checks.append({"name": "line_bundle_congruences", "pass": ok})
        if datum.label.startswith("gl"):
            rel = gln_relations(datum.rank, graph)
            checks.append({"name": "symmetric_relations", "pass": rel["pass"]})
    return {
        "suite": "gkm-verify",
        "config": cfg.to_json(),
        "graph": graph.to_json(),
        "checks": checks,
        "pass": all(c["pass"] for c in checks),
    }


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args)
        if args.command == "fgl":
            report = suite_fgl_check(cfg)
        elif args.command == "verify":
            report = run_suite(args.suite, cfg)
        elif args.command == "compute":
            report = _cmd_compute(args, cfg)
        elif args.command == "schubert":
            report = _cmd_compute(argparse.Namespace(what="bott-samelson"), cfg)
        elif args.command == "gkm":
            report = _cmd_gkm(args, cfg)
        elif args.command == "symmetric":
            report = run_suite("esph", cfg)
        else:  # pragma: no cover
            raise ConfigError(f"unknown command {args.command!r}")
    except _CONFIG_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CobcalcError as exc:
        print(f"verification error: {exc}", file=sys.stderr)
        return 1
    _emit(report, args.out)
    _summarize(report)
    return 0 if report.get("pass", True) else 1


if __name__ == "__main__":
    raise SystemExit(main())
