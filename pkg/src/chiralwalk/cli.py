"""Batch command-line front end: file-to-file, deterministic, scriptable.

Exit codes: 0 success, 1 property violation, 2 usage or parse error.
All angles are radians unless ``--degrees`` is given, which converts at
the argument boundary only.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from .circuit import circuit_sweep_table, three_cycle_probabilities, trotter_error
from .defaults import DEFAULTS
from .graph import GraphFormatError, load_graph
from .propagator import sweep_time
from .properties import format_property_report, run_property_suite
from .symmetry import SymmetryReport, classify

PI = math.pi

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2

DEFAULT_SWEEP_ALPHAS = (0.0, PI / 2, PI, 3 * PI / 2)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _write_output(target: str | None, text: str) -> None:
    if target is None or target == "-":
        sys.stdout.write(text)
    else:
        Path(target).write_text(text, encoding="utf-8")


def _angle(value: float, degrees: bool) -> float:
    return math.radians(value) if degrees else float(value)


def _theta_grid(theta_min: float, theta_max: float, theta_step: float) -> list[float]:
    if theta_step <= 0:
        raise ValueError("theta step must be positive")
    if theta_max < theta_min:
        raise ValueError("theta range is empty")
    count = int(round((theta_max - theta_min) / theta_step)) + 1
    return [theta_min + k * theta_step for k in range(count)]


def experiment_theta_grid() -> list[float]:
    """37 angles: every pi/18 step across [-pi, pi]."""
    return [-PI + k * PI / 18 for k in range(37)]


# ---------------------------------------------------------------------------
# subcommands

def cmd_classify(args) -> int:
    reports: list[SymmetryReport] = []
    for path in args.graph:
        reports.append(classify(load_graph(path), tol=args.tol))
    if args.csv or len(reports) > 1:
        lines = [SymmetryReport.csv_header()]
        lines += [report.to_csv_row() for report in reports]
        _write_output(args.out, "\n".join(lines) + "\n")
    else:
        _write_output(args.out, reports[0].to_text())
    return EXIT_OK


def cmd_evolve(args) -> int:
    graph = load_graph(args.graph)
    if args.t_count < 1:
        raise ValueError("t-count must be at least 1")
    if args.t_count == 1:
        grid = [args.t_min]
    else:
        step = (args.t_max - args.t_min) / (args.t_count - 1)
        grid = [args.t_min + k * step for k in range(args.t_count)]
    table = sweep_time(graph, grid)
    _write_output(args.out, table.to_csv())
    return EXIT_OK


def cmd_circuit_sweep(args) -> int:
    if args.alpha:
        alphas = [_angle(a, args.degrees) for a in args.alpha]
    else:
        alphas = list(DEFAULT_SWEEP_ALPHAS)
    thetas = _theta_grid(_angle(args.theta_min, args.degrees),
                         _angle(args.theta_max, args.degrees),
                         _angle(args.theta_step, args.degrees))
    table = circuit_sweep_table(alphas, thetas, fuse_center=args.fuse_center)
    _write_output(args.out, table.to_csv())
    return EXIT_OK


def _transfer_csv(alphas, thetas, probs, from_node=0, to_node=2) -> str:
    lines = ["alpha,theta,from,to,probability"]
    for a_index, alpha in enumerate(alphas):
        for t_index, theta in enumerate(thetas):
            p = probs[a_index, t_index, to_node, from_node]
            lines.append(f"{_fmt(alpha)},{_fmt(theta)},{from_node},{to_node},{_fmt(p)}")
    return "\n".join(lines) + "\n"


def cmd_reproduce_fig2(args) -> int:
    if args.grid < 2:
        raise ValueError("surface grid must have at least 2 points per axis")
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    count = args.grid
    surface_alphas = [k * 2 * PI / count for k in range(count)]
    surface_thetas = [-PI + (k + 1) * 2 * PI / count for k in range(count)]
    surface = three_cycle_probabilities(surface_alphas, surface_thetas)
    (out_dir / "surface.csv").write_text(
        _transfer_csv(surface_alphas, surface_thetas, surface), encoding="utf-8")

    slice_thetas = experiment_theta_grid()
    slice_alphas = list(DEFAULT_SWEEP_ALPHAS)
    slices = three_cycle_probabilities(slice_alphas, slice_thetas)
    slice_names = ("slice_alpha_0.csv", "slice_alpha_pi_over_2.csv",
                   "slice_alpha_pi.csv", "slice_alpha_3pi_over_2.csv")
    for a_index, name in enumerate(slice_names):
        (out_dir / name).write_text(
            _transfer_csv([slice_alphas[a_index]], slice_thetas,
                          slices[a_index:a_index + 1]), encoding="utf-8")

    transfer = surface[:, :, 2, 0]
    flat = int(np.argmax(transfer))
    a_star, t_star = divmod(flat, count)
    slice_max = slices[:, :, 2, 0].max(axis=1)
    summary = [
        "# transfer summary for the three-node palindrome, start node 0 -> node 2",
        f"surface_grid={count}x{count}",
        f"surface_max={_fmt(transfer.max())}",
        f"surface_max_alpha={_fmt(surface_alphas[a_star])}",
        f"surface_max_theta={_fmt(surface_thetas[t_star])}",
    ]
    for name, alpha, value in zip(slice_names, slice_alphas, slice_max):
        summary.append(f"{name}: alpha={_fmt(alpha)} max={_fmt(value)}")
    summary.append(f"symmetric_slice_bound=0.6 "
                   f"(observed {_fmt(slice_max[0])} at alpha=0)")
    (out_dir / "summary.txt").write_text("\n".join(summary) + "\n", encoding="utf-8")
    return EXIT_OK


def cmd_trotter_check(args) -> int:
    graph = load_graph(args.graph)
    if args.halvings < 1:
        raise ValueError("halvings must be at least 1")
    thetas = [args.theta_start / (2 ** k) for k in range(args.halvings + 1)]
    errors = [trotter_error(graph, theta) for theta in thetas]
    lines = ["# symmetric splitting error ladder", "# theta error"]
    lines += [f"{_fmt(th)} {_fmt(err)}" for th, err in zip(thetas, errors)]
    lines.append("# successive ratios error(theta)/error(theta/2)")
    for k in range(len(thetas) - 1):
        ratio = errors[k] / errors[k + 1] if errors[k + 1] > 0 else math.inf
        lines.append(f"{_fmt(thetas[k])}/{_fmt(thetas[k + 1])} {_fmt(ratio)}")
    _write_output(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


def _parse_trials(items) -> dict[str, int]:
    overrides = {}
    for item in items or ():
        name, _, value = item.partition("=")
        if not value or not value.isdigit():
            raise ValueError(f"bad --trials override {item!r} (expected NAME=COUNT)")
        overrides[name] = int(value)
    return overrides


def cmd_properties(args) -> int:
    results = run_property_suite(args.seed, _parse_trials(args.trials),
                                 inject_fault=args.inject_fault)
    _write_output(args.out, format_property_report(results, args.seed))
    return EXIT_OK if all(r.passed for r in results) else EXIT_VIOLATION


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chiralwalk",
        description="Chiral quantum walks: classification, evolution sweeps, "
                    "and palindromic-circuit transport.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="symmetry report for graph files")
    p.add_argument("--graph", action="append", required=True,
                   help="graph file (repeatable)")
    p.add_argument("--out", default=None)
    p.add_argument("--csv", action="store_true",
                   help="one CSV row per graph instead of a text block")
    p.add_argument("--tol", type=float, default=DEFAULTS.pts)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("evolve", help="transition-probability table over a time grid")
    p.add_argument("--graph", required=True)
    p.add_argument("--t-min", type=float, default=0.0)
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--t-count", type=int, default=256)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("circuit-sweep",
                       help="triangle-palindrome transport over an (alpha, theta) grid")
    p.add_argument("--alpha", type=float, action="append",
                   help="chirality phase (repeatable; default 0, pi/2, pi, 3pi/2)")
    p.add_argument("--theta-min", type=float, default=-PI)
    p.add_argument("--theta-max", type=float, default=PI)
    p.add_argument("--theta-step", type=float, default=PI / 18)
    p.add_argument("--fuse-center", action="store_true",
                   help="merge the doubled middle gate (same unitary)")
    p.add_argument("--degrees", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_circuit_sweep)

    p = sub.add_parser("reproduce-fig2",
                       help="full transfer surface, four constant-alpha slices, "
                            "and a summary of extrema")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--grid", type=int, default=64,
                   help="surface grid resolution per axis")
    p.set_defaults(func=cmd_reproduce_fig2)

    p = sub.add_parser("trotter-check",
                       help="splitting-error ladder for a uniform-magnitude graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--theta-start", type=float, default=0.2)
    p.add_argument("--halvings", type=int, default=4)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_trotter_check)

    p = sub.add_parser("properties", help="run the quantified invariant suites")
    p.add_argument("--seed", type=int, default=20260808)
    p.add_argument("--trials", action="append", metavar="NAME=COUNT",
                   help="override a suite's trial count (repeatable)")
    p.add_argument("--inject-fault", action="store_true",
                   help="flip one gate phase so flux-dependence must fail")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_properties)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GraphFormatError, OSError, ValueError) as exc:
        print(f"chiralwalk: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
