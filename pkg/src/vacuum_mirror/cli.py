"""Command-line front end: sweeps, figure data, SI estimates and self-checks.

Exit codes are 0 on success, 1 when a verification case fails and 2 on
usage or configuration errors. Outputs are byte-for-byte reproducible.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from .errors import VacuumMirrorError
from .radiation import combined_curve, fluctuation_to_shot_ratio, s_longitudinal, s_total, s_transverse
from .rates import sweep_rates
from .units import Scenario, estimate
from .verification import SCHEMA_VERSION, SUITES, run_suite

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

CONFIG_KEYS = ("charge_multiple", "mass_kg", "distance_m", "duration_s", "omega_rad_per_s")
DRIVE_KEYS = ("peak_field_V_per_m", "intensity_W_per_cm2")

SVG_WIDTH, SVG_HEIGHT = 800, 500
_MARGIN = 60
_COLORS = ("#1f77b4", "#d62728")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _fmt(x: float) -> str:
    # adding 0.0 folds -0.0 into 0.0
    return "%.17g" % (x + 0.0)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _grid(xi_min: float, xi_max: float, steps: int) -> np.ndarray:
    if not (math.isfinite(xi_min) and math.isfinite(xi_max) and 0.0 < xi_min < xi_max):
        raise UsageError(f"need 0 < xi-min < xi-max, got {xi_min} and {xi_max}")
    if steps < 2:
        raise UsageError(f"steps must be at least 2, got {steps}")
    return np.linspace(xi_min, xi_max, steps)


def rates_table(xi_min: float, xi_max: float, steps: int) -> str:
    _grid(xi_min, xi_max, steps)
    return _csv(("xi", "R_z", "R_x"), ((r.xi, r.r_z, r.r_x) for r in sweep_rates(xi_min, xi_max, steps)))


RADIATION_HEADER = ("xi", "S_T", "S_z", "S_x", "ratio_z", "ratio_x", "combined_z", "combined_x")


def radiation_rows(grid):
    for x in grid:
        x = float(x)
        yield (x, s_total(x), s_longitudinal(x), s_transverse(x),
               fluctuation_to_shot_ratio("z", x), fluctuation_to_shot_ratio("x", x),
               combined_curve("z", x), combined_curve("x", x))


def radiation_table(xi_min: float, xi_max: float, steps: int) -> str:
    return _csv(RADIATION_HEADER, radiation_rows(_grid(xi_min, xi_max, steps)))


def svg_polyline(x, series, labels, x_label: str) -> str:
    """Minimal standalone SVG with linear axes and up to two polylines."""
    if not 1 <= len(series) <= 2:
        raise ValueError("one or two series are supported")
    x = np.asarray(x, dtype=float)
    ys = [np.asarray(s, dtype=float) for s in series]
    x0, x1 = float(x.min()), float(x.max())
    y0 = min(float(s.min()) for s in ys)
    y1 = max(float(s.max()) for s in ys)
    if y1 == y0:
        y1 = y0 + 1.0
    w, h, m = SVG_WIDTH, SVG_HEIGHT, _MARGIN

    def px(v):
        return m + (v - x0) / (x1 - x0) * (w - 2 * m)

    def py(v):
        return h - m - (v - y0) / (y1 - y0) * (h - 2 * m)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
        f'<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>',
        f'<line x1="{m}" y1="{h - m}" x2="{w - m}" y2="{h - m}" stroke="black"/>',
        f'<line x1="{m}" y1="{m}" x2="{m}" y2="{h - m}" stroke="black"/>',
    ]
    if y0 < 0.0 < y1:
        lines.append(f'<line x1="{m}" y1="{py(0.0):.3f}" x2="{w - m}" y2="{py(0.0):.3f}" '
                     'stroke="gray" stroke-dasharray="4 4"/>')
    lines.append(f'<text x="{w / 2:.0f}" y="{h - 15}" text-anchor="middle" font-size="14">{x_label}</text>')
    lines.append(f'<text x="{m}" y="{h - m + 18}" text-anchor="middle" font-size="12">{x0:.3g}</text>')
    lines.append(f'<text x="{w - m}" y="{h - m + 18}" text-anchor="middle" font-size="12">{x1:.3g}</text>')
    lines.append(f'<text x="{m - 6}" y="{py(y0):.3f}" text-anchor="end" font-size="12">{y0:.3g}</text>')
    lines.append(f'<text x="{m - 6}" y="{py(y1):.3f}" text-anchor="end" font-size="12">{y1:.3g}</text>')
    for k, (s, label) in enumerate(zip(ys, labels)):
        pts = " ".join(f"{px(a):.3f},{py(b):.3f}" for a, b in zip(x, s))
        lines.append(f'<polyline fill="none" stroke="{_COLORS[k]}" stroke-width="1.5" points="{pts}"/>')
        lines.append(f'<text x="{w - m - 10}" y="{m + 20 * (k + 1)}" text-anchor="end" '
                     f'font-size="14" fill="{_COLORS[k]}">{label}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def figure_data(which: int):
    """Return ``(header, rows, plotted_columns)`` for figures 1 to 3."""
    if which == 1:
        rows = [(r.xi, r.r_z, r.r_x) for r in sweep_rates(0.02, 10.0, 500)]
        return ("xi", "R_z", "R_x"), rows, (1, 2)
    grid = [0.05 * k for k in range(1, 401)]
    if which == 2:
        rows = [(x, s_longitudinal(x), combined_curve("z", x)) for x in grid]
        return ("xi", "S_z", "combined_z"), rows, (1, 2)
    if which == 3:
        rows = [(x, s_transverse(x), combined_curve("x", x)) for x in grid]
        return ("xi", "S_x", "combined_x"), rows, (1, 2)
    raise UsageError(f"unknown figure {which}")


def write_figures(which, outdir: Path) -> list[Path]:
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for n in which:
        header, rows, cols = figure_data(n)
        cols_data = list(zip(*rows))
        csv_path = outdir / f"fig{n}.csv"
        svg_path = outdir / f"fig{n}.svg"
        csv_path.write_text(_csv(header, rows), encoding="utf-8", newline="\n")
        svg = svg_polyline(cols_data[0], [cols_data[c] for c in cols], [header[c] for c in cols], "xi")
        svg_path.write_text(svg, encoding="utf-8", newline="\n")
        written += [csv_path, svg_path]
    return written


def load_scenario(path: str) -> tuple[Scenario, dict]:
    try:
        with open(path, encoding="utf-8") as fh:
            config = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"config {path} is not valid JSON: {exc}") from None
    if not isinstance(config, dict):
        raise UsageError("config must be a JSON object")
    unknown = sorted(set(config) - set(CONFIG_KEYS) - set(DRIVE_KEYS))
    if unknown:
        raise UsageError(f"unknown config field: {unknown[0]}")
    for key in CONFIG_KEYS:
        if key not in config:
            raise UsageError(f"missing config field: {key}")
    drives = [k for k in DRIVE_KEYS if k in config]
    if len(drives) != 1:
        raise UsageError(f"config needs exactly one of {DRIVE_KEYS[0]} and {DRIVE_KEYS[1]}")
    for key, value in config.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value) or value <= 0:
            raise UsageError(f"invalid config field: {key} must be a positive number")
    values = {k: float(v) for k, v in config.items()}
    return Scenario(**values), values


def estimate_document(path: str) -> str:
    scenario, inputs = load_scenario(path)
    doc = estimate(scenario).as_dict()
    doc["inputs"] = inputs
    doc["schema_version"] = SCHEMA_VERSION
    return _json(doc)


def verify_document(suite: str, tolerance: float | None):
    names = SUITES if suite == "all" else (suite,)
    reports = [run_suite(n, tolerance) for n in names]
    if suite == "all":
        doc = {
            "max_relative_deviation": max(r.max_relative_deviation for r in reports),
            "passed": all(r.passed for r in reports),
            "reports": [r.as_dict() for r in reports],
            "schema_version": SCHEMA_VERSION,
            "suite": "all",
        }
    else:
        doc = reports[0].as_dict()
    return _json(doc), reports


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="vacuum-mirror", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("rates", help="tabulate R_z and R_x")
    p.add_argument("--xi-min", type=float, default=0.1)
    p.add_argument("--xi-max", type=float, default=10.0)
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--out", default=None, help="CSV path (default: standard output)")

    p = sub.add_parser("radiation", help="tabulate shape factors, ratios and combined curves")
    p.add_argument("--xi-min", type=float, default=0.05)
    p.add_argument("--xi-max", type=float, default=20.0)
    p.add_argument("--steps", type=int, default=400)
    p.add_argument("--out", default=None)

    p = sub.add_parser("figures", help="write figure data as CSV and SVG")
    p.add_argument("--which", choices=("1", "2", "3", "all"), default="all")
    p.add_argument("--out", required=True, help="output directory")

    p = sub.add_parser("estimate", help="evaluate an SI scenario from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--out", default=None)

    p = sub.add_parser("verify", help="run oracle cross-checks")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--tolerance", type=float, default=None,
                   help="override the tolerance of oracle-comparison cases")
    p.add_argument("--out", default=None)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "rates":
            _emit(rates_table(args.xi_min, args.xi_max, args.steps), args.out)
        elif args.command == "radiation":
            _emit(radiation_table(args.xi_min, args.xi_max, args.steps), args.out)
        elif args.command == "figures":
            which = (1, 2, 3) if args.which == "all" else (int(args.which),)
            write_figures(which, Path(args.out))
        elif args.command == "estimate":
            _emit(estimate_document(args.config), args.out)
        elif args.command == "verify":
            if args.tolerance is not None and not (math.isfinite(args.tolerance) and args.tolerance > 0):
                raise UsageError("tolerance must be a positive number")
            text, reports = verify_document(args.suite, args.tolerance)
            _emit(text, args.out)
            failed = [c.id for r in reports for c in r.failures()]
            if failed:
                print(f"{len(failed)} case(s) failed: {', '.join(failed)}", file=sys.stderr)
                return EXIT_FAILED
        return EXIT_OK
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        # --help exits through argparse
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    except VacuumMirrorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
