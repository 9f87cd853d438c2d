"""
Command-line interface.

    jsdseg list-scenarios
    jsdseg run --scenario q1_xyz_pure --seed 42 --out-dir out
    jsdseg run --config my.json --trials 100 --seed 0
    jsdseg generate --scenario fig5 --seed 3 --out-dir out
    jsdseg segment-file out/q2_xxyyzz_s3.seq.txt
"""
from __future__ import annotations

import argparse
import json
import secrets
import sys
from pathlib import Path

import numpy as np

from .qmath import QuantumState, pure_to_density
from .scenarios import SCENARIOS, Scenario, build_scenario, list_scenarios, scenario_from_parts
from .segment import (estimate_changepoint, format_profile_csv, segment_recursive,
                      summary_dict)
from .seqgen import read_sequence, write_sequence


class ConfigError(ValueError):
    pass


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _complex(value, where):
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, list) and len(value) == 2 and all(isinstance(x, (int, float)) for x in value):
        return complex(value[0], value[1])
    raise ConfigError(f"{where}: complex numbers are [re, im] pairs, got {value!r}")


def _state(spec, where):
    if not isinstance(spec, dict) or len(spec.keys() & {"ket", "density"}) != 1:
        raise ConfigError(f"{where}: a state is {{'ket': [...]}} or {{'density': [[...]]}}")
    if "ket" in spec:
        amps = [_complex(a, f"{where}.ket[{i}]") for i, a in enumerate(spec["ket"])]
        return pure_to_density(amps)
    rows = spec["density"]
    if not isinstance(rows, list):
        raise ConfigError(f"{where}.density must be a list of rows")
    return QuantumState(np.array([[_complex(x, f"{where}.density") for x in row] for row in rows]))


def load_config(path) -> tuple:
    """
    Read a run configuration.

    Returns ``(scenario, options)`` where ``options`` holds any of ``seed``,
    ``trials``, ``threshold``, ``min_segment``, ``tolerance`` given in the
    file. Everything is validated before returning.
    """
    try:
        cfg = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    options = {k: cfg[k] for k in ("seed", "trials", "threshold", "min_segment", "tolerance") if k in cfg}
    if "scenario" in cfg:
        return build_scenario(cfg["scenario"]), options
    for key in ("observables", "states", "lengths"):
        if key not in cfg:
            raise ConfigError(f"config needs 'scenario' or all of observables/states/lengths (missing {key!r})")
    states = [_state(s, f"states[{i}]") for i, s in enumerate(cfg["states"])]
    lengths = cfg["lengths"]
    if (not isinstance(lengths, list) or len(lengths) != len(states)
            or not all(isinstance(l, int) and l > 0 for l in lengths)):
        raise ConfigError("lengths must be positive integers, one per state")
    if sum(lengths) < 2:
        raise ConfigError("n >= 2 required")
    if not isinstance(cfg["observables"], list) or not cfg["observables"]:
        raise ConfigError("observables must be a non-empty list of Pauli strings")
    scenario = scenario_from_parts(cfg.get("name", Path(path).stem), cfg["observables"],
                                   states, lengths)
    return scenario, options


def _resolve_seed(seed):
    if seed is None or seed == "auto":
        return secrets.randbits(64)
    try:
        return int(seed)
    except (TypeError, ValueError):
        raise ConfigError(f"seed must be an integer or 'auto', got {seed!r}") from None


def _merge(args, options):
    for key in ("seed", "trials", "threshold", "min_segment", "tolerance"):
        if getattr(args, key, None) is None:
            setattr(args, key, options.get(key))
    args.seed = _resolve_seed(args.seed)
    args.trials = 1 if args.trials is None else int(args.trials)
    args.threshold = 0.01 if args.threshold is None else float(args.threshold)
    args.min_segment = 50 if args.min_segment is None else int(args.min_segment)
    args.tolerance = 100 if args.tolerance is None else int(args.tolerance)
    if args.trials < 1:
        raise ConfigError("trials must be positive")


def _scenario(args) -> tuple:
    if bool(args.scenario) == bool(args.config):
        raise ConfigError("give exactly one of --scenario or --config")
    if args.scenario:
        return build_scenario(args.scenario), {}
    return load_config(args.config)


def _segment(seq, args, **extra):
    result = estimate_changepoint(seq)
    summary = summary_dict(result, seq.seed, **extra)
    if getattr(args, "recursive", False):
        summary["changepoints"] = segment_recursive(seq, args.threshold, args.min_segment)
    return summary, result


def aggregate(summaries, true_changepoint: int, tolerance: int) -> dict:
    """Order-independent statistics over per-trial summaries."""
    est = np.sort([s["estimated_changepoint"] for s in summaries])
    err = np.sort(np.abs(est - true_changepoint))
    agg = {
        "trials": len(summaries),
        "true_changepoint": int(true_changepoint),
        "median_estimate": float(np.median(est)),
        "median_abs_error": float(np.median(err)),
        "tolerance": int(tolerance),
        "success_rate": float(np.mean(err <= tolerance)),
        "no_signal_count": int(sum(s["no_signal"] for s in summaries)),
    }
    agg["detected"] = agg["median_abs_error"] <= tolerance and agg["no_signal_count"] < len(summaries)
    return agg


def cmd_run(args) -> int:
    scenario, options = _scenario(args)
    _merge(args, options)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    summaries = []
    for t in range(args.trials):
        seed = args.seed + t
        seq = scenario.generate(seed)
        summary, result = _segment(seq, args, scenario=scenario.name,
                                   true_changepoint=scenario.true_changepoint)
        stem = out / f"{scenario.name}_s{seed}"
        Path(f"{stem}.profile.csv").write_text(format_profile_csv(result.profile), encoding="utf-8")
        Path(f"{stem}.summary.json").write_text(_dumps(summary) + "\n", encoding="utf-8")
        summaries.append(summary)
    if args.trials > 1:
        agg = {"scenario": scenario.name, "first_seed": args.seed,
               "distinguishing_observables": list(scenario.distinguishing_observables),
               **aggregate(summaries, scenario.true_changepoint, args.tolerance)}
        Path(out / f"{scenario.name}.aggregate.json").write_text(_dumps(agg) + "\n",
                                                                  encoding="utf-8")
        print(_dumps(agg))
    else:
        print(_dumps(summaries[0]))
    return 0


def cmd_generate(args) -> int:
    scenario, options = _scenario(args)
    _merge(args, options)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for t in range(args.trials):
        seed = args.seed + t
        path = out / f"{scenario.name}_s{seed}.seq.txt"
        write_sequence(scenario.generate(seed), path)
        print(path)
    return 0


def cmd_segment_file(args) -> int:
    catalog = [s.strip() for s in args.catalog.split(",")] if args.catalog else None
    seq = read_sequence(args.path, catalog)
    if seq.n < 2:
        raise ConfigError("n >= 2 required")
    _merge(args, {})
    summary, result = _segment(seq, args)
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        stem = out / Path(args.path).name.split(".")[0]
        Path(f"{stem}.profile.csv").write_text(format_profile_csv(result.profile), encoding="utf-8")
        Path(f"{stem}.summary.json").write_text(_dumps(summary) + "\n", encoding="utf-8")
    print(_dumps(summary))
    return 0


def format_scenario_line(sc: Scenario) -> str:
    labels = ",".join(sc.distinguishing_observables) or "-"
    return f"{sc.name:<14} {sc.alias:<6} n={sc.n} i_c={sc.true_changepoint} distinguishing={labels}"


def cmd_list_scenarios(args) -> int:
    for sc in list_scenarios():
        print(format_scenario_line(sc))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jsdseg", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def source(p):
        p.add_argument("--scenario", help=f"one of: {', '.join(SCENARIOS)} (or a figure alias)")
        p.add_argument("--config", help="JSON run configuration")
        p.add_argument("--seed", help="integer seed or 'auto' (default)")
        p.add_argument("--trials", type=int, help="number of seeds: seed, seed+1, ...")
        p.add_argument("--out-dir", default="jsdseg-out")

    def recursion(p):
        p.add_argument("--recursive", action="store_true", help="also report multiple change points")
        p.add_argument("--threshold", type=float, help="minimum divergence in nats (default 0.01)")
        p.add_argument("--min-segment", type=int, help="minimum segment length (default 50)")

    p = sub.add_parser("run", help="simulate and segment")
    source(p)
    recursion(p)
    p.add_argument("--tolerance", type=int, help="success window around the true change point (default 100)")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("generate", help="simulate and write sequence files")
    source(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("segment-file", help="segment a sequence file")
    p.add_argument("path")
    p.add_argument("--catalog", help="comma-separated observable labels")
    p.add_argument("--out-dir")
    recursion(p)
    p.set_defaults(func=cmd_segment_file)

    p = sub.add_parser("list-scenarios", help="list built-in scenarios")
    p.set_defaults(func=cmd_list_scenarios)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"jsdseg: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
