"""Command-line experiment drivers.

Subcommands:

* ``gate-info``  -- invariants / Cartan coefficients of a single gate class
* ``sweep``      -- entropy-vs-p curves for one gate over several sizes
* ``collapse``   -- (p_c, nu) fit plus crossing estimate from curve CSVs
* ``plane-scan`` -- sampled (e_p, g_t) plane: entropy and optional fits
* ``analytic``   -- closed-form measurement-only curve

Every command is deterministic given its master seed; sweeps and scans skip
work whose output file already exists, so interrupted campaigns resume.
Errors exit nonzero after printing one JSON line to stderr.
"""

import argparse
import csv
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import analytics, gates, scaling
from .circuit import sweep
from .curves import load_curve_csv, save_curve_csv
from .gates import CartanCoeffs

DEFAULT_P_GRID = [round(x, 10) for x in np.linspace(0.0, 0.6, 21)]
DEFAULT_N_TRAJ = 1500

PLANE_COLUMNS = ["idx", "e_p", "g_t", "c1", "c2", "c3", "p", "mean_entropy_nats", "std_err"]
PLANE_FIT_COLUMNS = PLANE_COLUMNS + ["p_c", "p_c_err", "nu", "nu_err"]
ANALYTIC_COLUMNS = ["N", "t", "p", "entropy_nats"]


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _log(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def _seed_for(master_seed: int, *keys: int) -> int:
    ss = np.random.SeedSequence(master_seed, spawn_key=tuple(keys))
    return int(ss.generate_state(1, np.uint64)[0])


def _resolve_gate(gate_spec: dict) -> CartanCoeffs:
    if "cartan" in gate_spec:
        return CartanCoeffs(*(float(x) for x in gate_spec["cartan"]))
    return gates.cartan_from_invariants(float(gate_spec["e_p"]), float(gate_spec["g_t"]))


def _t_steps_for(rule, L: int) -> int:
    if rule is None or rule == "2L":
        return 2 * L
    return int(rule)


class ExperimentSpec:
    """Sweep campaign description, JSON round-trippable with defaults resolved."""

    def __init__(self, doc: dict):
        self.name = str(doc["name"])
        self.gate = dict(doc["gate"])
        self.sizes = [int(x) for x in doc["sizes"]]
        self.p_grid = [float(x) for x in doc.get("p_grid", DEFAULT_P_GRID)]
        self.n_traj = int(doc.get("n_traj", DEFAULT_N_TRAJ))
        self.t_steps = doc.get("t_steps", "2L")
        self.master_seed = int(doc["master_seed"])
        self.output_dir = Path(doc["output_dir"])

    def resolved_doc(self) -> dict:
        return {
            "name": self.name,
            "gate": self.gate,
            "sizes": self.sizes,
            "p_grid": self.p_grid,
            "n_traj": self.n_traj,
            "t_steps": self.t_steps,
            "master_seed": self.master_seed,
            "output_dir": str(self.output_dir),
        }

    def curve_path(self, L: int) -> Path:
        return self.output_dir / f"{self.name}_L{L:02d}.csv"


def run_experiment(spec: ExperimentSpec, n_workers: int | None = None) -> list[Path]:
    """Run (or resume) all sizes of a sweep campaign; returns curve paths."""
    cartan = _resolve_gate(spec.gate)
    spec.output_dir.mkdir(parents=True, exist_ok=True)
    with open(spec.output_dir / f"{spec.name}_spec.json", "w") as fh:
        json.dump(spec.resolved_doc(), fh, indent=2)
    paths = []
    for L in spec.sizes:
        path = spec.curve_path(L)
        paths.append(path)
        if path.exists():
            _log(f"[sweep {spec.name}] L={L}: exists, skipping")
            continue
        t0 = time.time()
        curve = sweep(
            L=L,
            cartan=cartan,
            p_grid=spec.p_grid,
            n_traj=spec.n_traj,
            t_steps=_t_steps_for(spec.t_steps, L),
            seed=_seed_for(spec.master_seed, L),
            n_workers=n_workers,
        )
        tmp = path.with_suffix(".csv.tmp")
        save_curve_csv(curve, tmp)
        tmp.rename(path)
        _log(f"[sweep {spec.name}] L={L}: {time.time() - t0:.1f}s -> {path}")
    return paths


def cmd_gate_info(args) -> int:
    if args.cartan is not None:
        coeffs = CartanCoeffs(*args.cartan)
    else:
        coeffs = gates.cartan_from_invariants(*args.invariants)
    inv = gates.invariants_from_cartan(coeffs)
    spectrum = gates.operator_schmidt(gates.cartan_gate(coeffs))
    report = {
        "cartan": list(coeffs.as_tuple()),
        "e_p": inv.e_p,
        "g_t": inv.g_t,
        "E_U": inv.E_U,
        "E_US": inv.E_US,
        "operator_schmidt": list(spectrum.lambdas),
        "dual_unitary": inv.is_dual_unitary,
        "t_dual": inv.is_t_dual,
    }
    print(f"cartan coefficients : ({coeffs.c1:.12g}, {coeffs.c2:.12g}, {coeffs.c3:.12g})")
    print(f"entangling power e_p: {inv.e_p:.12g}")
    print(f"gate typicality  g_t: {inv.g_t:.12g}")
    print(f"E(U) = {inv.E_U:.12g}   E(U.SWAP) = {inv.E_US:.12g}")
    print(f"operator Schmidt    : {[round(x, 12) for x in spectrum.lambdas]}")
    print(f"dual-unitary: {inv.is_dual_unitary}   T-dual: {inv.is_t_dual}")
    if args.json:
        Path(args.json).parent.mkdir(parents=True, exist_ok=True)
        with open(args.json, "w") as fh:
            json.dump(report, fh, indent=2)
    return 0


def cmd_sweep(args) -> int:
    with open(args.spec) as fh:
        doc = json.load(fh)
    spec = ExperimentSpec(doc)
    if args.output_dir:
        spec.output_dir = Path(args.output_dir)
    if args.seed is not None:
        spec.master_seed = args.seed
    run_experiment(spec, n_workers=args.workers)
    return 0


def cmd_collapse(args) -> int:
    curves = [load_curve_csv(p) for p in args.curves]
    fit = scaling.fit_collapse(
        curves,
        p_c_range=tuple(args.p_c_range),
        nu_range=tuple(args.nu_range),
        n_bootstrap=args.bootstrap,
        seed=args.seed if args.seed is not None else 0,
    )
    try:
        cross_median, cross_band = scaling.crossing_estimate(curves)
        crossing = {"median": cross_median, "band": list(cross_band)}
    except Exception as exc:  # keep the fit even if no crossing exists
        crossing = {"error": str(exc)}
    report = {
        "p_c": fit.p_c,
        "nu": fit.nu,
        "p_c_err": fit.p_c_err,
        "nu_err": fit.nu_err,
        "quality": fit.quality,
        "sizes_used": fit.sizes_used,
        "convergence_warning": fit.convergence_warning,
        "crossing": crossing,
        "inputs": [str(p) for p in args.curves],
        "p_c_range": list(args.p_c_range),
        "nu_range": list(args.nu_range),
        "n_bootstrap": args.bootstrap,
    }
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w") as fh:
        json.dump(report, fh, indent=2)
    if args.collapsed_csv:
        path = Path(args.collapsed_csv)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["L", "p", "x", "y", "std_err"])
            from scipy.interpolate import CubicSpline

            for c in sorted(curves, key=lambda cu: cu.L):
                s_c = float(CubicSpline(c.p_values, c.mean_entropy)(fit.p_c))
                x = (c.p_values - fit.p_c) * c.L ** (1.0 / fit.nu)
                y = c.mean_entropy - s_c
                for i in range(c.p_values.size):
                    writer.writerow(
                        [c.L, _fmt(c.p_values[i]), _fmt(x[i]), _fmt(y[i]), _fmt(c.std_err[i])]
                    )
    print(f"p_c = {fit.p_c:.4f} +- {fit.p_c_err:.4f}   nu = {fit.nu:.3f} +- {fit.nu_err:.3f}")
    return 0


def _sample_plane_points(n_points: int, seed: int) -> list[tuple[float, float]]:
    rng = np.random.default_rng(seed)
    points = []
    while len(points) < n_points:
        e_p = rng.random() * (2.0 / 3.0)
        g_t = rng.random()
        if gates.is_feasible(e_p, g_t):
            points.append((e_p, g_t))
    return points


def cmd_plane_scan(args) -> int:
    if (args.n_points is None) == (not args.at):
        raise ValueError("give exactly one of --n-points (random sample) or --at (explicit points)")
    out_dir = Path(args.output_dir)
    points_dir = out_dir / "points"
    points_dir.mkdir(parents=True, exist_ok=True)
    if args.at:
        points = [(float(e), float(g)) for e, g in args.at]
    else:
        points = _sample_plane_points(args.n_points, args.seed)
    fit_sizes = [int(x) for x in args.fit_sizes] if args.fit_sizes else None
    columns = PLANE_FIT_COLUMNS if fit_sizes else PLANE_COLUMNS

    rows = []
    for idx, (e_p, g_t) in enumerate(points):
        cache = points_dir / f"point_{idx:04d}_seed{args.seed}.json"
        if cache.exists():
            with open(cache) as fh:
                rows.append(json.load(fh))
            continue
        t0 = time.time()
        coeffs = gates.cartan_from_invariants(e_p, g_t)
        point_seed = _seed_for(args.seed, idx)
        curve = sweep(
            L=args.L,
            cartan=coeffs,
            p_grid=[args.p],
            n_traj=args.n_traj,
            t_steps=_t_steps_for(args.t_steps, args.L),
            seed=_seed_for(point_seed, args.L),
            n_workers=args.workers,
        )
        row = {
            "idx": idx,
            "e_p": e_p,
            "g_t": g_t,
            "c1": coeffs.c1,
            "c2": coeffs.c2,
            "c3": coeffs.c3,
            "p": args.p,
            "mean_entropy_nats": float(curve.mean_entropy[0]),
            "std_err": float(curve.std_err[0]),
        }
        if fit_sizes:
            fit_curves = [
                sweep(
                    L=L,
                    cartan=coeffs,
                    p_grid=[float(x) for x in args.fit_p_grid],
                    n_traj=args.fit_n_traj,
                    t_steps=_t_steps_for(args.t_steps, L),
                    seed=_seed_for(point_seed, L),
                    n_workers=args.workers,
                )
                for L in fit_sizes
            ]
            fit = scaling.fit_collapse(fit_curves, n_bootstrap=args.bootstrap, seed=point_seed)
            row.update(p_c=fit.p_c, p_c_err=fit.p_c_err, nu=fit.nu, nu_err=fit.nu_err)
        with open(cache, "w") as fh:
            json.dump(row, fh)
        rows.append(row)
        _log(f"[plane] point {idx + 1}/{len(points)} done in {time.time() - t0:.1f}s")

    table = out_dir / "plane.csv"
    with open(table, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(columns)
        for row in rows:
            writer.writerow(
                [row["idx"]] + [_fmt(float(row[k])) for k in columns[1:]]
            )
    _log(f"[plane] wrote {table}")
    return 0


def cmd_analytic(args) -> int:
    path = Path(args.out)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(ANALYTIC_COLUMNS)
        for p in args.p_grid:
            s = analytics.measurement_only_entropy(
                analytics.MeasurementOnlyParams(N=args.N, p=float(p), t=args.t)
            )
            writer.writerow([args.N, args.t, _fmt(float(p)), _fmt(s)])
    print(f"wrote {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mipt", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gate-info", help="invariants of a gate class")
    src = g.add_mutually_exclusive_group(required=True)
    src.add_argument("--cartan", nargs=3, type=float, metavar=("C1", "C2", "C3"))
    src.add_argument("--invariants", nargs=2, type=float, metavar=("E_P", "G_T"))
    g.add_argument("--json", help="also write the report as JSON")
    g.set_defaults(func=cmd_gate_info)

    s = sub.add_parser("sweep", help="run a sweep campaign from a JSON spec")
    s.add_argument("--spec", required=True)
    s.add_argument("--output-dir", help="override the spec's output_dir")
    s.add_argument("--seed", type=int, help="override the spec's master_seed")
    s.add_argument("--workers", type=int, default=None,
                   help="worker processes (default: MIPT_WORKERS env var, else 1)")
    s.set_defaults(func=cmd_sweep)

    c = sub.add_parser("collapse", help="fit (p_c, nu) from curve CSVs")
    c.add_argument("--curves", nargs="+", required=True)
    c.add_argument("--out", required=True, help="fit report JSON path")
    c.add_argument("--collapsed-csv", help="also write collapsed points CSV")
    c.add_argument("--p-c-range", nargs=2, type=float, default=list(scaling.DEFAULT_PC_RANGE))
    c.add_argument("--nu-range", nargs=2, type=float, default=list(scaling.DEFAULT_NU_RANGE))
    c.add_argument("--bootstrap", type=int, default=100)
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_collapse)

    p = sub.add_parser("plane-scan", help="sample the (e_p, g_t) plane")
    p.add_argument("--n-points", type=int, default=None,
                   help="number of uniformly sampled feasible points")
    p.add_argument("--at", nargs=2, action="append", metavar=("E_P", "G_T"),
                   help="explicit plane point; repeatable, replaces sampling")
    p.add_argument("--L", type=int, default=12)
    p.add_argument("--p", type=float, default=0.2)
    p.add_argument("--n-traj", type=int, default=DEFAULT_N_TRAJ)
    p.add_argument("--t-steps", default="2L")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output-dir", required=True)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--fit-sizes", nargs="*", default=None,
                   help="fit (p_c, nu) per point over these sizes")
    p.add_argument("--fit-p-grid", nargs="*", type=float, default=DEFAULT_P_GRID)
    p.add_argument("--fit-n-traj", type=int, default=300)
    p.add_argument("--bootstrap", type=int, default=25)
    p.set_defaults(func=cmd_plane_scan)

    a = sub.add_parser("analytic", help="closed-form measurement-only curve")
    a.add_argument("--N", type=int, required=True, help="half-chain qubit count")
    a.add_argument("--t", type=int, required=True)
    a.add_argument("--p-grid", nargs="+", type=float, default=DEFAULT_P_GRID)
    a.add_argument("--out", required=True)
    a.set_defaults(func=cmd_analytic)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, RuntimeError, ArithmeticError, OSError) as exc:
        print(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}),
            file=sys.stderr,
        )
        return 1


if __name__ == "__main__":
    sys.exit(main())
