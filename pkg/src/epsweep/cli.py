"""Command line front end.

    epsweep sweep --config fig1_n6 --out results/
    epsweep eps --config fig1_pair12 --out results/
    epsweep reproduce fig2 --out results/

Exit codes: 0 success, 2 configuration/usage error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import sys

from . import __version__
from .config import ConfigError, RunConfig, load_config
from .eigensolver import ConvergenceError
from .epfinder import find_eps_2x2, find_near_coalescence
from .output import dumps, fmt_float, staged_outputs, trajectory_csv, trajectory_json
from .rigidity import EmptyWindowError, average_rigidity
from .sweep import SweepError, sweep

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

REFERENCE_ONE_MINUS_R = {3: 0.119819, 4: 0.122872, 5: 0.164372, 6: 0.0634185}
FIGURE_CONFIGS = ("fig1_n3", "fig1_n4", "fig1_n5", "fig1_n6")


def _resolve(args) -> RunConfig:
    return load_config(args.config).with_overrides(
        steps=args.steps, a_start=args.a_start, a_end=args.a_end, window=args.window)


def _out_dir(args, cfg: RunConfig | None = None) -> str:
    if args.out:
        return args.out
    if cfg is not None and cfg.out_dir:
        return cfg.out_dir
    return "."


def _fmt(args, cfg: RunConfig | None = None) -> str:
    if args.format:
        return args.format
    return cfg.fmt if cfg is not None else "csv"


def _run_sweep(cfg: RunConfig, workers: int | None):
    tol = cfg.tolerances
    return sweep(cfg.model, cfg.grid, tol.tol_resid, tol.tol_defect, workers=workers)


def _trajectory_file(traj, stem: str, fmt: str):
    if fmt == "json":
        return f"{stem}.json", trajectory_json(traj)
    return f"{stem}.csv", trajectory_csv(traj)


def cmd_sweep(args) -> int:
    cfg = _resolve(args)
    fmt = _fmt(args, cfg)
    traj = _run_sweep(cfg, args.workers)
    report = average_rigidity(traj, cfg.window)
    with staged_outputs(_out_dir(args, cfg)) as files:
        name, text = _trajectory_file(traj, f"{cfg.name}_trajectories", fmt)
        files[name] = text
        files[f"{cfg.name}_rigidity.json"] = dumps(report.to_dict())
    print(f"{cfg.name}: N={cfg.model.n} points={cfg.grid.steps} "
          f"R={fmt_float(report.averaged_R)} 1-R={fmt_float(report.one_minus_R)} "
          f"samples={report.samples}")
    return EXIT_OK


def cmd_eps(args) -> int:
    cfg = _resolve(args)
    traj = _run_sweep(cfg, args.workers)
    tol = cfg.tolerances
    sampled = find_near_coalescence(traj, tol.gap_tol, tol.rigidity_tol)
    records = []
    if cfg.model.n == 2:
        exact = find_eps_2x2(cfg.model, (cfg.grid.a_start, cfg.grid.a_end))
        records += [dict(c.to_dict(), source="closed_form") for c in exact]
        step = abs(cfg.grid.a_end - cfg.grid.a_start) / (cfg.grid.steps - 1)
        gap = abs(traj.values[:, 0] - traj.values[:, 1])
        a_min = float(traj.a[gap.argmin()])
        for c in exact:
            if c.kind == "off_axis":
                continue
            agree = abs(c.a_star - a_min) <= step
            print(f"cross-check: closed-form {c.kind} at a={fmt_float(c.a_star)}, "
                  f"sampled gap minimum at a={fmt_float(a_min)} "
                  f"({'agrees' if agree else 'DISAGREES'} within one grid step)")
    records += [dict(c.to_dict(), source="sampled") for c in sampled]
    with staged_outputs(_out_dir(args, cfg)) as files:
        files[f"{cfg.name}_eps.json"] = dumps(records)
    kinds = {}
    for r in records:
        kinds[r["kind"]] = kinds.get(r["kind"], 0) + 1
    summary = ", ".join(f"{k}={v}" for k, v in sorted(kinds.items())) or "none"
    print(f"{cfg.name}: {len(records)} candidates ({summary})")
    return EXIT_OK


def reproduce(figure_id: str, *, steps=None, a_start=None, a_end=None, window=None,
              fmt: str = "csv", workers=None) -> dict:
    """Build the output file set for ``fig1`` or ``fig2`` in memory."""
    files = {}
    rows = []
    for cfg_name in FIGURE_CONFIGS:
        cfg = load_config(cfg_name).with_overrides(steps=steps, a_start=a_start,
                                                    a_end=a_end, window=window)
        traj = _run_sweep(cfg, workers)
        n = cfg.model.n
        name, text = _trajectory_file(traj, f"{figure_id}_N{n}", fmt)
        files[name] = text
        if figure_id == "fig2":
            rep = average_rigidity(traj, cfg.window)
            ref = REFERENCE_ONE_MINUS_R[n]
            rel = (rep.one_minus_R - ref) / ref
            rows.append({
                "N": n, "a_start": cfg.grid.a_start, "a_end": cfg.grid.a_end,
                "steps": cfg.grid.steps, "window": list(cfg.window),
                "samples": rep.samples, "R": rep.averaged_R,
                "one_minus_R": rep.one_minus_R, "reference_one_minus_R": ref,
                "rel_deviation": rel, "within_25pct": abs(rel) <= 0.25,
            })
    if rows:
        header = "N,R,one_minus_R,reference_one_minus_R,rel_deviation,within_25pct,samples"
        lines = [header] + [
            ",".join((str(r["N"]), fmt_float(r["R"]), fmt_float(r["one_minus_R"]),
                      fmt_float(r["reference_one_minus_R"]), fmt_float(r["rel_deviation"]),
                      "true" if r["within_25pct"] else "false", str(r["samples"])))
            for r in rows]
        files["fig2_summary.csv"] = "\n".join(lines) + "\n"
        files["fig2_summary.json"] = dumps(rows)
    return {"files": files, "summary": rows}


def cmd_reproduce(args) -> int:
    result = reproduce(args.figure_id, steps=args.steps, a_start=args.a_start,
                       a_end=args.a_end, window=args.window, fmt=_fmt(args),
                       workers=args.workers)
    with staged_outputs(_out_dir(args)) as files:
        files.update(result["files"])
    for name in sorted(result["files"]):
        print(f"wrote {name}")
    if result["summary"]:
        print(f"{'N':>2} {'1-R':>10} {'ref':>10} {'rel.dev':>9}")
        for r in result["summary"]:
            print(f"{r['N']:>2} {r['one_minus_R']:>10.6f} {r['reference_one_minus_R']:>10.6f} "
                  f"{r['rel_deviation']:>+9.3f}")
    return EXIT_OK


def _add_common(p: argparse.ArgumentParser, config: bool = True):
    if config:
        p.add_argument("--config", required=True,
                       help="config JSON path or bundled name (e.g. fig1_n6)")
    p.add_argument("--out", help="output directory (default: config outputs.dir or .)")
    p.add_argument("--format", choices=("csv", "json"), help="trajectory table format")
    p.add_argument("--steps", type=int, help="override sweep.steps")
    p.add_argument("--a-start", type=float, help="override sweep.a_start")
    p.add_argument("--a-end", type=float, help="override sweep.a_end")
    p.add_argument("--window", help="rigidity energy window 'lo,hi'")
    p.add_argument("--workers", type=int, default=None,
                   help="threads for per-point eigendecompositions")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="epsweep", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="trajectory table and averaged rigidity")
    _add_common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("eps", help="exceptional-point candidates")
    _add_common(p)
    p.set_defaults(func=cmd_eps)

    p = sub.add_parser("reproduce", help="regenerate the fig1/fig2 datasets from the bundled configs")
    p.add_argument("figure_id", choices=("fig1", "fig2"))
    _add_common(p, config=False)
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (SweepError, ConvergenceError, EmptyWindowError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
