"""Command-line front end.

    quintic-qk gw --max-degree 4 [--format json|csv|pretty]
    quintic-qk jk --max-degree 4 [--cache PATH]
    quintic-qk coeffs --degree 2 --root-order 2
    quintic-qk verify --max-degree 5 [--checks identity,coeffs,structure]
    quintic-qk cache {write,read,info} [--path PATH] [--max-degree D]

Exit status: 0 success, 1 verification mismatch, 2 usage error,
3 internal assertion failure or unusable cache.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import cache as cache_mod
from ._validation import ReconstructionError, check_degree, check_root_order
from .gwside import GwTable, compute_gw_table
from .qkside import ReconState, reconstruct_jk
from .verify import CHECK_GROUPS, extract_coefficients, run_verification

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3
DEFAULT_MAX_DEGREE = 4

log = logging.getLogger("quintic_qk")


@dataclass
class RunConfig:
    command: str
    max_degree: int = DEFAULT_MAX_DEGREE
    output_format: str = "json"
    cache_path: Path | None = None
    checks: tuple[str, ...] = CHECK_GROUPS
    degree: int | None = None
    root_order: int | None = None
    cache_action: str | None = None
    extra: dict = field(default_factory=dict)


class UsageError(ValueError):
    pass


def _emit(obj, out) -> None:
    out.write(json.dumps(obj, sort_keys=True, indent=2))
    out.write("\n")


def _load_state(config: RunConfig) -> tuple[ReconState | None, GwTable | None]:
    if config.cache_path is None or not config.cache_path.exists():
        return None, None
    return cache_mod.read_cache(config.cache_path)


def _reconstruct(config: RunConfig, D: int) -> tuple[ReconState, GwTable]:
    state, table = _load_state(config)
    before = state.max_degree if state is not None else 0
    if before < D:
        state = reconstruct_jk(D, state)
    if table is None or table.max_degree < D:
        table = compute_gw_table(D)
    if config.cache_path is not None and state.max_degree > before:
        cache_mod.write_cache(config.cache_path, state, table)
    log.info("reconstruction through Q^%d (%d new degrees)", state.max_degree,
             max(state.max_degree - before, 0))
    return state, table


def _gw_output(table: GwTable, fmt: str, out) -> None:
    if fmt == "json":
        _emit(table.to_dict(), out)
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["d", "GW", "GV"])
        for d in sorted(table.gw):
            writer.writerow([d, str(table.gw[d]), str(table.gv[d])])
        out.write(buf.getvalue())
    else:
        out.write(f"{'d':>3}  {'GW_d':>40}  {'GV_d':>32}\n")
        for d in sorted(table.gw):
            out.write(f"{d:>3}  {str(table.gw[d]):>40}  {str(table.gv[d]):>32}\n")


def _jk_output(state: ReconState, D: int, fmt: str, out) -> None:
    if fmt == "pretty":
        for M in range(D + 1):
            out.write(f"Q^{M}:\n")
            for i, c in enumerate(state.jk[M].coords):
                out.write(f"  x^{i}: {c}\n")
        return
    payload = cache_mod.state_to_payload(state.truncate(D) if state.max_degree > D else state, None)
    payload.pop("gw_table")
    _emit(payload, out)


def validate_config(config: RunConfig) -> None:
    """Reject malformed configurations with :class:`UsageError`."""
    try:
        if config.command in ("gw", "jk", "verify") or config.cache_action == "write":
            check_degree(config.max_degree)
        if config.command == "coeffs":
            check_root_order(config.root_order, check_degree(config.degree, "degree"))
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    if config.command == "gw" and config.output_format not in ("json", "csv", "pretty"):
        raise UsageError(f"unknown format {config.output_format!r}")
    if config.command != "gw" and config.output_format == "csv":
        raise UsageError("csv output is only available for the gw table")
    unknown = set(config.checks) - set(CHECK_GROUPS)
    if unknown:
        raise UsageError(f"unknown check groups {sorted(unknown)}")


def run(config: RunConfig, out=None) -> int:
    out = out if out is not None else sys.stdout
    validate_config(config)
    cmd = config.command
    if cmd == "gw":
        D = check_degree(config.max_degree)
        _gw_output(compute_gw_table(D), config.output_format, out)
        return EXIT_OK
    if cmd == "jk":
        D = check_degree(config.max_degree)
        state, _ = _reconstruct(config, D)
        _jk_output(state, D, config.output_format, out)
        return EXIT_OK
    if cmd == "coeffs":
        M = check_degree(config.degree, "degree")
        r = check_root_order(config.root_order, M)
        state, _ = _reconstruct(config, M)
        _emit(extract_coefficients(state.jk[M], M, r).to_dict(), out)
        return EXIT_OK
    if cmd == "verify":
        D = check_degree(config.max_degree)
        state, table = _reconstruct(config, D)
        report = run_verification(D, config.checks, state=state, table=table)
        _emit(report.to_dict(), out)
        return EXIT_OK if report.passed else EXIT_MISMATCH
    if cmd == "cache":
        path = config.cache_path or cache_mod.default_cache_path()
        if config.cache_action == "write":
            D = check_degree(config.max_degree)
            cfg = RunConfig("jk", D, cache_path=path)
            state, table = _reconstruct(cfg, D)
            if not path.exists():
                cache_mod.write_cache(path, state, table)
            _emit(cache_mod.cache_info(path), out)
        elif config.cache_action == "read":
            state, table = cache_mod.read_cache(path)
            payload = cache_mod.state_to_payload(state, table)
            _emit(payload, out)
        else:
            _emit(cache_mod.cache_info(path), out)
        return EXIT_OK
    raise UsageError(f"unknown command {cmd!r}")


def _parse_checks(text: str) -> tuple[str, ...]:
    checks = tuple(c.strip() for c in text.split(",") if c.strip())
    unknown = [c for c in checks if c not in CHECK_GROUPS]
    if unknown or not checks:
        raise argparse.ArgumentTypeError(
            f"unknown check group(s) {unknown}; choose from {','.join(CHECK_GROUPS)}")
    return checks


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quintic-qk", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def degree_arg(p):
        p.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE,
                       help=f"Novikov truncation order (default {DEFAULT_MAX_DEGREE})")

    def cache_arg(p):
        p.add_argument("--cache", type=Path, default=None,
                       help=f"reuse/extend a reconstruction cache (env {cache_mod.CACHE_ENV})")

    p = sub.add_parser("gw", help="GW and GV table")
    degree_arg(p)
    p.add_argument("--format", choices=("json", "csv", "pretty"), default="json")

    p = sub.add_parser("jk", help="small J^K coefficients and reconstruction state")
    degree_arg(p)
    cache_arg(p)
    p.add_argument("--format", choices=("json", "pretty"), default="json")

    p = sub.add_parser("coeffs", help="principal-part coefficients at roots of unity")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--root-order", type=int, required=True)
    cache_arg(p)

    p = sub.add_parser("verify", help="run the verification suite")
    degree_arg(p)
    cache_arg(p)
    p.add_argument("--checks", type=_parse_checks, default=CHECK_GROUPS,
                   help="comma-separated subset of " + ",".join(CHECK_GROUPS))

    p = sub.add_parser("cache", help="manage the reconstruction cache")
    p.add_argument("action", choices=("write", "read", "info"))
    p.add_argument("--path", type=Path, default=None)
    degree_arg(p)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cache_path = getattr(args, "cache", None) or getattr(args, "path", None)
    if cache_path is None and args.command != "gw":
        if cache_mod.CACHE_ENV in os.environ:
            cache_path = cache_mod.default_cache_path()
    return RunConfig(
        command=args.command,
        max_degree=getattr(args, "max_degree", DEFAULT_MAX_DEGREE),
        output_format=getattr(args, "format", "json"),
        cache_path=cache_path,
        checks=getattr(args, "checks", CHECK_GROUPS),
        degree=getattr(args, "degree", None),
        root_order=getattr(args, "root_order", None),
        cache_action=getattr(args, "action", None),
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    config = config_from_args(args)
    try:
        return run(config)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"quintic-qk: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ReconstructionError, cache_mod.CacheError) as exc:
        diag = {"error": type(exc).__name__, "message": str(exc)}
        for attr in ("degree", "component"):
            if getattr(exc, attr, None) is not None:
                diag[attr] = getattr(exc, attr)
        print(json.dumps(diag, sort_keys=True), file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
