"""Command-line interface.

Three subcommands::

    ember run       one optimizer on one benchmark function
    ember grid      a full experiment grid from a JSON config file
    ember validate  evaluate every registry function at its known minimum

Exit codes: 0 success, 1 validation or experiment failure, 2 configuration
error, 3 evaluation error (an objective returned NaN or infinity). The
``EMBER_SEED`` environment variable, when set, overrides the master seed of
any grid config.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import replace
from pathlib import Path

from .baselines import OptimizerSpec, optimizer_names, run_optimizer
from .errors import ConfigError, EmberError, EvaluationError
from .functions import domain_box, get_function, make_objective, validate_registry
from .harness import (
    CATEGORIES,
    distance_per_unit_time,
    grid_from_mapping,
    rank_top3,
    run_grid,
    summarize,
    write_summary_csv,
)

__all__ = ["main", "entrypoint"]

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_EVALUATION = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ember",
        description="Benchmark harness for FFO and reference optimizers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run one optimizer on one function")
    run_p.add_argument("--fn", required=True, help="benchmark function name")
    run_p.add_argument("--dim", type=int, default=2, help="problem dimension (default 2)")
    run_p.add_argument("--algo", default="ffo", choices=optimizer_names(),
                       help="optimizer to run (default ffo)")
    run_p.add_argument("--agents", type=int, default=100, help="population size (default 100)")
    run_p.add_argument("--iters", type=int, default=500, help="iteration budget (default 500)")
    run_p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    run_p.add_argument("--conditions", choices=("on", "off"), default=None,
                       help="FFO early-termination conditions (default off)")
    run_p.add_argument("--no-trajectory", action="store_true",
                       help="do not store visited positions (the streaming "
                            "distance total is kept either way)")
    run_p.add_argument("--out", default=None,
                       help="write the best-so-far history to this CSV file")

    grid_p = sub.add_parser("grid", help="run an experiment grid from a JSON config")
    grid_p.add_argument("config", help="path to the grid config JSON file")
    grid_p.add_argument("--jobs", type=int, default=None,
                        help="worker processes (overrides the config)")
    grid_p.add_argument("--out", default=None,
                        help="output directory (overrides the config)")

    val_p = sub.add_parser("validate", help="check registry values at known minima")
    val_p.add_argument("--fn", action="append", default=None,
                       help="restrict to this function (repeatable)")
    val_p.add_argument("--tol", type=float, default=None,
                       help="uniform residual tolerance (overrides per-function values)")
    return parser


def cmd_run(args) -> int:
    get_function(args.fn)
    params = {}
    if args.conditions is not None:
        if args.algo != "ffo":
            raise ConfigError("--conditions only applies to the ffo optimizer")
        params["use_additional_conditions"] = args.conditions == "on"
    spec = OptimizerSpec(
        name=args.algo,
        params=params,
        max_iter=args.iters,
        num_agents=args.agents,
        seed=args.seed,
    )
    objective = make_objective(args.fn, args.dim)
    domain = domain_box(args.fn, args.dim)
    outcome = run_optimizer(spec, objective, domain,
                            record_trajectory=not args.no_trajectory)
    if outcome.execution_time > 0:
        dput = distance_per_unit_time(outcome.total_distance, outcome.execution_time)
    else:
        dput = 0.0
    print(f"function: {args.fn}")
    print(f"dimension: {args.dim}")
    print(f"algorithm: {args.algo}")
    print(f"seed: {args.seed}")
    print(f"best_fitness: {outcome.best_fitness}")
    print(f"best_agent: {outcome.best_agent.tolist()}")
    print(f"iterations_run: {outcome.iterations_run}")
    print(f"execution_time_s: {outcome.execution_time}")
    print(f"total_distance: {outcome.total_distance}")
    print(f"distance_per_unit_time: {dput}")
    if args.out is not None:
        path = Path(args.out)
        if path.parent != Path(""):
            path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(("iteration", "best_fitness"))
            for i, value in enumerate(outcome.fitness_history, start=1):
                writer.writerow((i, str(value)))
        print(f"history: {path}")
    return EXIT_OK


def cmd_grid(args) -> int:
    config_path = Path(args.config)
    try:
        text = config_path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {config_path}: {exc}") from exc
    try:
        mapping = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {config_path} is not valid JSON: {exc}") from exc
    grid = grid_from_mapping(mapping)

    env_seed = os.environ.get("EMBER_SEED")
    if env_seed is not None:
        try:
            grid = replace(grid, master_seed=int(env_seed))
        except ValueError as exc:
            raise ConfigError(f"EMBER_SEED must be an integer, got {env_seed!r}") from exc
    if args.jobs is not None:
        grid = replace(grid, jobs=args.jobs)
    if args.out is not None:
        grid = replace(grid, output=args.out)
    if grid.output is None:
        grid = replace(grid, output="ember_results")

    records = run_grid(grid)
    out_dir = Path(grid.output)
    rows = summarize(records)
    write_summary_csv(rows, out_dir / "summary.csv")
    report = rank_top3(records)
    with (out_dir / "rankings.json").open("w") as fh:
        json.dump(report.as_dict(), fh, indent=2)
        fh.write("\n")

    counts = {status: 0 for status in ("ok", "skipped", "error")}
    for record in records:
        counts[record.status] = counts.get(record.status, 0) + 1
    print(f"cells: {len(records)} total, {counts['ok']} ok, "
          f"{counts['skipped']} skipped, {counts['error']} error")
    print(f"output: {out_dir}")
    for category in CATEGORIES:
        ranked = sorted(report.global_counts[category].items(), key=lambda kv: (-kv[1], kv[0]))
        top = ", ".join(f"{name} ({count})" for name, count in ranked[:3]) or "none"
        print(f"top3 {category}: {top}")
    if counts["ok"] == 0:
        print("no cell completed successfully", file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK


def cmd_validate(args) -> int:
    functions = None
    if args.fn:
        functions = {name: get_function(name) for name in args.fn}
    rows = validate_registry(functions=functions, tolerance=args.tol)
    width = max(len(r.name) for r in rows)
    failed = 0
    for row in rows:
        if row.status == "skipped":
            print(f"{row.name:<{width}} dim={row.dimension:<3} skipped ({row.detail})")
            continue
        print(f"{row.name:<{width}} dim={row.dimension:<3} residual={row.residual:.3e} "
              f"tol={row.tolerance:.3e} {row.status}")
        if not row.ok:
            failed += 1
    checked = sum(1 for r in rows if r.status != "skipped")
    print(f"checked {checked} function/dimension pairs, {failed} failed")
    return EXIT_OK if failed == 0 else EXIT_FAILURE


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handlers = {"run": cmd_run, "grid": cmd_grid, "validate": cmd_validate}
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except EvaluationError as exc:
        print(f"evaluation error: {exc}", file=sys.stderr)
        return EXIT_EVALUATION
    except EmberError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EVALUATION


def entrypoint() -> None:
    sys.exit(main())
