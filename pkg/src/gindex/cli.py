"""Command-line entry point.

Exit codes: 0 success, 1 failed verification, 2 malformed input,
3 inconsistent data.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import apps, verify
from .action import action_from_json, ak2_standard, ak7_example, morita_example
from .errors import ConventionMismatch, GIndexError, InconsistentData, InvalidInput
from .report import analyze, dumps, render_table

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INCONSISTENT = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    fmt: str = "table"
    args: dict[str, Any] = field(default_factory=dict)


def _read_json(path: str) -> Any:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from exc


def _emit(obj: Any, fmt: str) -> None:
    sys.stdout.write(dumps(obj) if fmt == "json" else render_table(obj))


def run_analyze(cfg: RunConfig) -> int:
    a = action_from_json(_read_json(cfg.args["path"]))
    _emit(analyze(a), cfg.fmt)
    return EXIT_OK


def run_example(cfg: RunConfig) -> int:
    name, m, h = cfg.args["name"], cfg.args.get("m"), cfg.args.get("h")
    if name == "morita":
        a = morita_example(m if m is not None else 7, h if h is not None else 2)
        out: Any = analyze(a)
    elif name == "ak7":
        ak = ak7_example(h if h is not None else 2, cfg.args.get("j0") or 1)
        out = {"base_genus": ak.base_genus, "fiber_genus": ak.fiber_genus, **analyze(ak.base_action)}
    elif name == "ak2":
        out = {}
        for i, (a, base) in enumerate(ak2_standard(), start=1):
            out[f"fibering_{i}"] = {
                "base_genus": base,
                "eigenranks": apps.eigenrank_report(a),
                **analyze(a, include_system=False),
            }
    else:
        raise InvalidInput(f"unknown example {name!r}")
    _emit(out, cfg.fmt)
    return EXIT_OK


def run_verify(cfg: RunConfig) -> int:
    bounds = verify.Bounds().capped(cfg.args.get("max_m"), cfg.args.get("max_z"))
    results = verify.run_all(bounds)
    if cfg.fmt == "json":
        _emit(
            {
                "results": [
                    {
                        "criterion": r.criterion,
                        "name": r.name,
                        "passed": r.passed,
                        "count": r.count,
                        "failures": r.failures[:10],
                    }
                    for r in results
                ],
                "all_passed": all(r.passed for r in results),
            },
            "json",
        )
    else:
        for r in results:
            print(r.line())
        print(f"{sum(r.passed for r in results)}/{len(results)} passed")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def run_toledo(cfg: RunConfig) -> int:
    try:
        rep = apps.toledo_ak7(cfg.args["h"], cfg.args.get("j0"))
    except ConventionMismatch as exc:
        _emit({"error": str(exc), "solved_tables": {str(k): v for k, v in exc.table.items()}}, cfg.fmt)
        return EXIT_FAIL
    _emit(rep.to_json(), cfg.fmt)
    return EXIT_OK


def _numerics(arg: str) -> apps.BundleNumerics:
    if not Path(arg).exists() and not arg.endswith(".json"):
        return apps.load_numerics(arg)
    return apps.BundleNumerics.from_json(_read_json(arg))


def run_cobordism(cfg: RunConfig) -> int:
    f1, f2 = _numerics(cfg.args["f1"]), _numerics(cfg.args["f2"])
    _emit(apps.cobordism_compare(f1, f2), cfg.fmt)
    return EXIT_OK


COMMANDS = {
    "analyze": run_analyze,
    "example": run_example,
    "verify": run_verify,
    "toledo": run_toledo,
    "cobordism": run_cobordism,
}


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gindex", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=["table", "json"], default="table")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("analyze", help="full report for an action JSON file (or - for stdin)")
    s.add_argument("path")

    s = sub.add_parser("example", help="report for a named construction")
    s.add_argument("name", choices=["morita", "ak7", "ak2"])
    s.add_argument("--m", type=int)
    s.add_argument("--h", type=int)
    s.add_argument("--j0", type=int)

    s = sub.add_parser("verify", help="run the invariant sweeps")
    s.add_argument("--max-m", type=_positive, dest="max_m")
    s.add_argument("--max-z", type=_positive, dest="max_z")

    s = sub.add_parser("toledo", help="Toledo invariants of the order-7 construction")
    s.add_argument("--h", type=int, required=True)
    s.add_argument("--j0", type=int)

    s = sub.add_parser("cobordism", help="compare Chern numbers of two fiberings")
    s.add_argument("f1", help="numerics JSON file or a bundled name such as ak2_fibering1")
    s.add_argument("f2")

    # allow --format after the subcommand as well
    for action in sub.choices.values():
        action.add_argument("--format", choices=["table", "json"], default=argparse.SUPPRESS)
    return p


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    args = {k: v for k, v in vars(ns).items() if k not in ("command", "format")}
    cfg = RunConfig(ns.command, ns.format, args)
    try:
        return COMMANDS[cfg.command](cfg)
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InconsistentData as exc:
        print(f"inconsistent data: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except GIndexError as exc:
        print(f"internal failure: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
