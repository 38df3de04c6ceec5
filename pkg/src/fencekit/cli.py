"""Command-line front end.

Exit codes: 0 on success, 1 when a check fails or a sweep flags an anomaly,
2 on bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import svg
from .arcs import DISC_C, arc_optimality_residuals, relaxed_C, shortest_halving_arc
from .auerbach import AREA as AUERBACH_AREA
from .auerbach import C_VALUE as AUERBACH_C
from .auerbach import G_VALUE as AUERBACH_G
from .auerbach import auerbach_reports, build_auerbach, verify_zindler
from .centrosym import CentroSymBody, centrosym_bound, shortest_center_chord
from .chl import (
    DISC_AREA,
    I_CONSTANT,
    ROUNDED_TRIANGLE_AREA,
    ThetaProfile,
    build,
    check_fg_inequality,
    disc_profile,
    remark_I_constant,
    rounded_triangle_profile,
    verify_halving,
)
from .chords import AUERBACH_G as G_BOUND
from .chords import relaxed_G
from .constants import isoperimetric_report
from .generators import body_from_spec, disc, equilateral_triangle, valtr_polygon
from .geometry import ConvexBody, GeometryError, width

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
SWEEP_TOL = 5e-3
SWEEP_COLUMNS = [
    "index", "seed", "n_vertices", "area", "C", "C_kind", "arc_length",
    "G", "G_kind", "chord_length", "width", "status",
]  # fmt: skip


class InputError(Exception):
    pass


def _load_body(arg: str) -> ConvexBody:
    try:
        text = arg if arg.lstrip().startswith("{") else Path(arg).read_text()
        data = json.loads(text)
        return body_from_spec(data)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"cannot read body {arg!r}: {exc}") from exc


def _emit(data: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(data, indent=2, default=_jsonable))
        return
    for key, val in data.items():
        if isinstance(val, float):
            val = f"{val:.10g}"
        elif isinstance(val, dict):
            val = ", ".join(f"{k}={v:.4g}" if isinstance(v, float) else f"{k}={v}" for k, v in val.items())
        print(f"{key:>22}: {val}")


def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(type(obj).__name__)


def _write_svg(path: str | None, body, cuts, labels=(), title=None) -> None:
    if path:
        Path(path).write_text(svg.render(body, cuts, labels, title))


# ---------------------------------------------------------------------------
# commands


def cmd_chord(args) -> int:
    body = _load_body(args.body)
    rep = relaxed_G(body, n_grid=args.grid)
    chord = rep.witness
    out = {
        "G": rep.value,
        "kind": rep.kind,
        "chord_length": chord.length,
        "a": chord.a.tolist(),
        "b": chord.b.tolist(),
        "area_fraction": rep.witness_area_fraction,
        "residuals": rep.residuals,
        "candidates": rep.candidates,
        "bound_ok": rep.value <= G_BOUND + SWEEP_TOL,
    }
    _emit(out, args.json)
    _write_svg(args.svg, body, [chord], title="shortest halving chord")
    return EXIT_OK if out["bound_ok"] else EXIT_FAIL


def cmd_arc(args) -> int:
    body = _load_body(args.body)
    point = shortest_halving_arc(body, grid=args.grid)
    rep = relaxed_C(body, grid=args.grid)
    out = {
        "length": point.length,
        "s1": point.s1,
        "s2": point.s2,
        "opening": point.arc.opening,
        "C": rep.value,
        "kind": rep.kind,
        "residuals": arc_optimality_residuals(body, point.arc),
        "candidates": rep.candidates,
        "bound_ok": rep.value <= DISC_C + SWEEP_TOL,
    }
    _emit(out, args.json)
    _write_svg(args.svg, body, [rep.witness], title="optimal arc")
    return EXIT_OK if out["bound_ok"] else EXIT_FAIL


def _profile(name: str, L: float) -> ThetaProfile:
    if name == "disc":
        return disc_profile(L)
    if name == "rounded-triangle":
        return rounded_triangle_profile(L)
    try:
        data = json.loads(Path(name).read_text())
    except (OSError, ValueError) as exc:
        raise InputError(f"cannot read profile {name!r}: {exc}") from exc
    data.setdefault("L", L)
    return ThetaProfile.from_dict(data)


def cmd_chl(args) -> int:
    chl = build(_profile(args.profile, args.L))
    L = chl.L
    out = {
        "L": L,
        "samples": chl.profile.n,
        "area_shoelace": chl.body.area,
        "area_gauss": chl.area_gauss,
        "area_fourier": chl.area_fourier,
        "area_over_L2": chl.area_gauss / L**2,
        "disc_area_over_L2": DISC_AREA,
        "closure_defect": chl.closure_defect,
    }
    ok = True
    if args.report:
        n = chl.profile.n
        worst = 0.0
        longest = 0.0
        for j in range(0, n // 2, max(1, n // 256)):
            left, right = verify_halving(chl, chl.profile.sigma[j])
            worst = max(worst, abs(left - right) / chl.body.area)
            longest = max(longest, abs(chl.arc(j).length - L) / L)
        fg = check_fg_inequality(L)
        out.update(
            {
                "halving_defect": worst,
                "arc_length_defect": longest,
                "fg_min_margin": fg.min_margin,
                "ineq_min_slack": fg.ineq_min_slack,
                "I": remark_I_constant(),
            }
        )
        ok = worst <= 1e-4 and longest <= 1e-3 and fg.min_margin >= -1e-10 and fg.ineq_min_slack >= 0
    _emit(out, args.json)
    _write_svg(args.svg, chl.body, [chl.arc(j) for j in range(0, chl.profile.n // 2, chl.profile.n // 12)])
    return EXIT_OK if ok else EXIT_FAIL


def cmd_auerbach(args) -> int:
    tri = build_auerbach(args.samples)
    out = {
        "area_polygon": tri.body.area,
        "area_closed_form": AUERBACH_AREA,
        "junction_mismatch": tri.junction_mismatch,
    }
    ok = abs(tri.body.area - AUERBACH_AREA) <= 1e-4
    cuts = []
    if args.verify:
        g, c = auerbach_reports(tri)
        dl, dp = verify_zindler(tri, 4096)
        out.update(
            {
                "G": g.value,
                "G_closed_form": AUERBACH_G,
                "C": c.value,
                "C_closed_form": AUERBACH_C,
                "C_witness_opening": c.witness.opening,
                "zindler_length_dev": dl,
                "zindler_perimeter_dev": dp,
            }
        )
        ok &= abs(g.value - AUERBACH_G) <= 2e-3 and abs(c.value - AUERBACH_C) <= 2e-3 and dl <= 1e-3
        cuts = [g.witness, c.witness]
    _emit(out, args.json)
    _write_svg(args.svg, tri.body, cuts, [("π/3", tri.triangle[0] + [0.02, -0.12])], "Auerbach triangle")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_centrosym(args) -> int:
    body = _load_body(args.body)
    try:
        s = CentroSymBody.from_body(body)
    except GeometryError as exc:
        raise InputError(str(exc)) from exc
    chord, length = shortest_center_chord(s)
    bound = centrosym_bound(s)
    out = {"length": length, "bound": bound, "ok": length <= bound + 1e-6}
    _emit(out, args.json)
    _write_svg(args.svg, body, [chord])
    return EXIT_OK if out["ok"] else EXIT_FAIL


def cmd_constants(args) -> int:
    body = _load_body(args.body)
    try:
        alphas = [float(a) for a in args.alpha.split(",")]
    except ValueError as exc:
        raise InputError(f"bad --alpha {args.alpha!r}") from exc
    if any(a < 0.5 for a in alphas):
        raise InputError("alpha must be at least 1/2")
    rep = isoperimetric_report(body, alphas)
    data = rep.to_dict()
    if args.json:
        _emit(data, True)
    else:
        for a in alphas:
            print(f"gamma_{a:g}: {rep.gamma_alpha[a]:.10g}   disc: {rep.disc_values['gamma_alpha'][a]:.10g}")
        print(f"mu1: {rep.mu1:.10g}   disc: {rep.disc_values['mu1']:.10g}")
        print(f"I upper bound: {rep.I_upper:.10g}   disc I: {rep.disc_values['I']:.10g}")
    worse = any(rep.gamma_alpha[a] > rep.disc_values["gamma_alpha"][a] + SWEEP_TOL for a in alphas)
    return EXIT_FAIL if worse else EXIT_OK


# -- sweep --------------------------------------------------------------------


def sweep_body(index: int, seed: int) -> tuple[ConvexBody, np.random.Generator]:
    """The index-th sweep body; depends only on (seed, index)."""
    rng = np.random.default_rng([seed, index])
    n = int(rng.integers(3, 25))
    return valtr_polygon(n, rng), rng


def sweep_record(index: int, seed: int, grid: int) -> dict:
    t0 = time.perf_counter()
    body, _ = sweep_body(index, seed)
    c = relaxed_C(body, grid=grid)
    g = relaxed_G(body)
    # lengths of the shortest halving arc and chord, whichever family won
    arc_len = math.sqrt(0.5 * c.candidates["arc"] * body.area)
    chord_len = math.sqrt(0.5 * g.candidates["chord"] * body.area)
    bad = c.value > DISC_C + SWEEP_TOL or g.value > G_BOUND + SWEEP_TOL
    return {
        "index": index,
        "seed": seed,
        "n_vertices": body.n,
        "area": body.area,
        "C": c.value,
        "C_kind": c.kind,
        "arc_length": arc_len,
        "G": g.value,
        "G_kind": g.kind,
        "chord_length": chord_len,
        "width": width(body),
        "status": "ANOMALY" if bad else "OK",
        "wall_time": time.perf_counter() - t0,
    }


def _workers() -> int:
    env = os.environ.get("FENCEKIT_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise InputError(f"FENCEKIT_THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def run_sweep(n: int, seed: int, grid: int, workers: int = 1) -> list[dict]:
    if workers <= 1 or n == 1:
        return [sweep_record(i, seed, grid) for i in range(n)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(sweep_record, range(n), [seed] * n, [grid] * n, chunksize=8))


def sweep_csv(records: list[dict], timing: bool = False) -> str:
    cols = SWEEP_COLUMNS + (["wall_time"] if timing else [])
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in records:
        w.writerow([f"{r[c]:.12g}" if isinstance(r[c], float) else r[c] for c in cols])
    return buf.getvalue()


def cmd_sweep(args) -> int:
    if args.n < 1:
        raise InputError("--n must be at least 1")
    records = run_sweep(args.n, args.seed, args.grid, _workers())
    text = sweep_csv(records, args.timing)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    anomalies = sum(r["status"] != "OK" for r in records)
    print(f"{len(records)} bodies, {anomalies} anomalies", file=sys.stderr)
    return EXIT_FAIL if anomalies else EXIT_OK


# -- report -------------------------------------------------------------------


def report_rows() -> list[dict]:
    rows = []

    def row(name, value, reference, tol):
        rows.append(
            {
                "quantity": name,
                "value": value,
                "reference": reference,
                "deviation": abs(value - reference),
                "tolerance": tol,
                "pass": abs(value - reference) <= tol,
            }
        )

    row("C(disc)", relaxed_C(disc(1.0)).value, DISC_C, 5e-3)
    row("C(equilateral triangle)", relaxed_C(equilateral_triangle()).value, 2 * math.pi / 3, 2e-3)
    tri = build_auerbach()
    g, c = auerbach_reports(tri)
    row("G(Auerbach)", g.value, AUERBACH_G, 2e-3)
    row("C(Auerbach)", c.value, AUERBACH_C, 2e-3)
    row("|Auerbach|", tri.body.area, AUERBACH_AREA, 1e-4)
    chl = build(rounded_triangle_profile())
    row("|rounded triangle|/L^2", chl.area_gauss, ROUNDED_TRIANGLE_AREA, 1e-3)
    row("I", remark_I_constant(), I_CONSTANT, 1e-4)
    row("|CHL disc|/L^2", build(disc_profile()).area_gauss, DISC_AREA, 1e-8)
    return rows


def cmd_report(args) -> int:
    rows = report_rows()
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        print(f"{'quantity':<26}{'computed':>16}{'reference':>16}{'deviation':>12}  ok")
        for r in rows:
            print(
                f"{r['quantity']:<26}{r['value']:>16.10f}{r['reference']:>16.10f}"
                f"{r['deviation']:>12.2e}  {'yes' if r['pass'] else 'NO'}"
            )
    return EXIT_OK if all(r["pass"] for r in rows) else EXIT_FAIL


# -- render -------------------------------------------------------------------


def cmd_render(args) -> int:
    target = args.target
    labels = []
    if target == "auerbach":
        tri = build_auerbach()
        body = tri.body
        labels = [("π/3", tri.triangle[0] + [0.02, -0.12])]
        cuts = {"outline": [], "chord": [relaxed_G(body).witness], "arc": [relaxed_C(body).witness]}
    elif target == "rounded-triangle":
        chl = build(rounded_triangle_profile())
        body = chl.body
        arcs = [chl.arc(j) for j in range(0, chl.profile.n // 2, chl.profile.n // 24)]
        cuts = {"outline": [], "chord": [relaxed_G(body).witness], "arc": arcs}
    else:
        body = _load_body(target)
        cuts = {"outline": [], "chord": [relaxed_G(body).witness], "arc": [relaxed_C(body).witness]}
    chosen = [] if args.cuts == "none" else cuts["chord"] + cuts["arc"] if args.cuts == "both" else cuts[args.cuts]
    text = svg.render(body, chosen, labels, title=target)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fencekit", description="Shortest halving chords and arcs of convex bodies.")
    p.add_argument("-v", "--verbose", action="store_true", help="log solver warnings")
    sub = p.add_subparsers(dest="command", required=True)
    body_help = 'body JSON file or inline JSON: {"vertices": [[x, y], ...]} or a generator request'

    s = sub.add_parser("chord", help="shortest halving chord and G(K)")
    s.add_argument("body", help=body_help)
    s.add_argument("--grid", type=int, default=720, help="direction grid size (default 720)")
    s.add_argument("--svg")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_chord)

    s = sub.add_parser("arc", help="shortest halving arc and C(K)")
    s.add_argument("body", help=body_help)
    s.add_argument("--grid", type=int, default=256, help="boundary grid size (default 256)")
    s.add_argument("--svg")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_arc)

    s = sub.add_parser("chl", help="build a constant-halving-length body")
    s.add_argument("--profile", default="rounded-triangle", help="disc, rounded-triangle or a profile JSON file")
    s.add_argument("--L", type=float, default=1.0)
    s.add_argument("--svg")
    s.add_argument("--report", action="store_true", help="also check halving, arc lengths and the f/g inequality")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_chl)

    s = sub.add_parser("auerbach", help="build the Auerbach triangle")
    s.add_argument("--samples", type=int, default=4096, help="samples per curved part (default 4096)")
    s.add_argument("--svg")
    s.add_argument("--verify", action="store_true", help="compute G, C and the Zindler deviations")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_auerbach)

    s = sub.add_parser("centrosym", help="shortest chord through the centre of a symmetric body")
    s.add_argument("body", help=body_help)
    s.add_argument("--svg")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_centrosym)

    s = sub.add_parser("constants", help="gamma_alpha, mu_1 and the Poincare bound")
    s.add_argument("body", help=body_help)
    s.add_argument("--alpha", default="0.5,1.0", help="comma-separated exponents >= 1/2")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_constants)

    s = sub.add_parser(
        "sweep",
        help="random Valtr polygons against both bounds",
        description="CSV columns: " + ", ".join(SWEEP_COLUMNS) + " (plus wall_time with --timing). "
        "status is ANOMALY when C > 8/pi + 5e-3 or G > 2.5789 + 5e-3. "
        "FENCEKIT_THREADS caps the number of worker processes.",
    )
    s.add_argument("--n", type=int, default=1000)
    s.add_argument("--seed", type=int, default=1)
    s.add_argument("--grid", type=int, default=256, help="arc-solver boundary grid (default 256)")
    s.add_argument("--timing", action="store_true", help="append a wall_time column (not reproducible)")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("report", help="table of the reference constants")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_report)

    s = sub.add_parser("render", help="SVG of a body with its optimal cuts")
    s.add_argument("target", help="auerbach, rounded-triangle, or a body JSON")
    s.add_argument("--cuts", choices=["none", "chord", "arc", "both"], default="both")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.WARNING if args.verbose else logging.ERROR, format="%(message)s")
    try:
        return args.func(args)
    except (InputError, GeometryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
