"""Command line interface: analyze, sweep, verify.

Exit codes: 0 success, 1 verification failure or bound violation,
2 input error, 3 cap exceeded (partial report emitted).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import BoundViolationError, GraphError
from .graphs import generate_family, parse_edge_list, parse_family_spec
from .report import (
    SWEEP_COLUMNS,
    AnalysisConfig,
    analyze_graph,
    report_json,
    report_text,
    run_sweep,
    sweep_row,
)
from .verify import run_verification

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_INPUT = 2
EXIT_CAP = 3


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=1, help="master RNG seed (default 1)")
    p.add_argument("--rank-tol", type=float, default=1e-9,
                   help="relative singular value cutoff for numerical rank")
    p.add_argument("--restarts", type=int, default=8,
                   help="optimizer restarts for manifolds with several orbits")
    p.add_argument("--max-group", type=int, default=1_000_000,
                   help="group element enumeration cap")
    p.add_argument("--base", choices=("nats", "bits"), default="nats",
                   help="log base for reported entropies and bounds")
    p.add_argument("--out", type=Path, default=None, help="write output to this file")


def _config(args, fmt: str | None = None) -> AnalysisConfig:
    bip = None
    if getattr(args, "bipartition", None):
        try:
            bip = tuple(int(t) for t in args.bipartition.split(","))
        except ValueError:
            raise GraphError(f"bad --bipartition '{args.bipartition}'") from None
    return AnalysisConfig(
        bipartition=bip,
        seed=args.seed,
        rank_tol=args.rank_tol,
        restarts=args.restarts,
        max_group=args.max_group,
        log_base=args.base,
        format=fmt or getattr(args, "format", "json"),
    )


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _cmd_analyze(args) -> int:
    cfg = _config(args)
    if args.family:
        spec = parse_family_spec(args.family)
        graph = generate_family(spec)
    else:
        graph = parse_edge_list(Path(args.edges).read_text())
        spec = None
    rep = analyze_graph(graph, cfg, family=spec)
    if args.format == "json":
        _emit(report_json(rep), args.out)
    elif args.format == "text":
        _emit(report_text(rep), args.out)
    else:  # csv: single sweep-style row
        row = sweep_row(rep)
        _emit(",".join(SWEEP_COLUMNS) + "\n" +
              ",".join(str(row[c]) for c in SWEEP_COLUMNS) + "\n", args.out)
    return EXIT_OK if rep.complete else EXIT_CAP


def _parse_range(text: str) -> range:
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise GraphError(f"--range must be START:STOP[:STEP], got '{text}'")
    try:
        nums = [int(p) for p in parts]
    except ValueError:
        raise GraphError(f"non-integer in --range '{text}'") from None
    start, stop = nums[0], nums[1]
    step = nums[2] if len(nums) == 3 else 2
    if step <= 0:
        raise GraphError("--range step must be positive")
    return range(start, stop + 1, step)


def _cmd_sweep(args) -> int:
    cfg = _config(args, fmt="csv")
    sizes = list(_parse_range(args.range))
    odd = [n for n in sizes if n % 2 or n < 4]
    if odd:
        raise GraphError(f"{args.family} sweep needs even sizes >= 4, got {odd}")
    _emit(run_sweep(args.family, sizes, cfg), args.out)
    return EXIT_OK


def _cmd_verify(args) -> int:
    cfg = _config(args)
    results = run_verification(cfg)
    lines = []
    n_fail = 0
    for res in results:
        tag = {"pass": "PASS", "fail": "FAIL", "info": "INFO"}[res.status]
        n_fail += res.status == "fail"
        lines.append(f"[{tag}] {res.name}" + (f": {res.detail}" if res.detail else ""))
    lines.append(f"checks: {len(results)}, failures: {n_fail}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if n_fail == 0 else EXIT_VERIFY_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symcut",
        description="Exact max-cut ground-state entanglement and symmetry bounds",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="full pipeline on one graph")
    src = pa.add_mutually_exclusive_group(required=True)
    src.add_argument("--family", help="family spec like cycle:8 or complete_bipartite:3,3")
    src.add_argument("--edges", help="edge list file ('u v' per line, optional 'n <count>' header)")
    pa.add_argument("--bipartition", help="comma separated vertices of part A (default first half)")
    pa.add_argument("--format", choices=("json", "text", "csv"), default="json")
    _add_common(pa)
    pa.set_defaults(func=_cmd_analyze)

    ps = sub.add_parser("sweep", help="CSV table over a family size range")
    ps.add_argument("--family", choices=("cycle", "complete"), required=True)
    ps.add_argument("--range", required=True, help="START:STOP[:STEP], inclusive, default step 2")
    _add_common(ps)
    ps.set_defaults(func=_cmd_sweep)

    pv = sub.add_parser("verify", help="run the numeric verification suite")
    _add_common(pv)
    pv.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BoundViolationError as exc:
        print(f"bound violation: {exc}", file=sys.stderr)
        return EXIT_VERIFY_FAIL


if __name__ == "__main__":
    sys.exit(main())
