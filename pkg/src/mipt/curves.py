"""Entropy-vs-probability curves and their CSV persistence.

CSV schema (one file per system size, numbers at 17 significant digits so
values round-trip bit-exactly):

    L,p,mean_entropy_nats,std_dev,std_err,n_traj,master_seed
"""

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

CURVE_COLUMNS = ["L", "p", "mean_entropy_nats", "std_dev", "std_err", "n_traj", "master_seed"]


def _fmt(x: float) -> str:
    return f"{x:.17g}"


@dataclass
class EntropyCurve:
    """Trajectory-averaged half-chain entropy versus measurement probability."""

    L: int
    p_values: np.ndarray
    mean_entropy: np.ndarray
    std_err: np.ndarray
    n_traj: int
    std_dev: np.ndarray | None = None
    master_seed: int = 0

    def __post_init__(self):
        self.p_values = np.asarray(self.p_values, dtype=float)
        self.mean_entropy = np.asarray(self.mean_entropy, dtype=float)
        self.std_err = np.asarray(self.std_err, dtype=float)
        if self.std_dev is not None:
            self.std_dev = np.asarray(self.std_dev, dtype=float)
        n = self.p_values.size
        if self.mean_entropy.size != n or self.std_err.size != n:
            raise ValueError("p_values, mean_entropy and std_err must have equal length")
        if n > 1 and not np.all(np.diff(self.p_values) > 0):
            raise ValueError("p_values must be strictly ascending")
        # Deterministic points (e.g. p = 1) legitimately have zero spread, so
        # only negative errors are rejected.
        if np.any(self.std_err < 0):
            raise ValueError("std_err entries must be nonnegative")

    @property
    def p_range(self) -> tuple[float, float]:
        return float(self.p_values[0]), float(self.p_values[-1])


def save_curve_csv(curve: EntropyCurve, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    std_dev = curve.std_dev
    if std_dev is None:
        std_dev = curve.std_err * np.sqrt(curve.n_traj)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CURVE_COLUMNS)
        for i, p in enumerate(curve.p_values):
            writer.writerow(
                [
                    curve.L,
                    _fmt(p),
                    _fmt(curve.mean_entropy[i]),
                    _fmt(std_dev[i]),
                    _fmt(curve.std_err[i]),
                    curve.n_traj,
                    curve.master_seed,
                ]
            )


def load_curve_csv(path: str | Path) -> EntropyCurve:
    rows = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != CURVE_COLUMNS:
            raise ValueError(
                f"{path}: expected columns {CURVE_COLUMNS}, found {reader.fieldnames}"
            )
        rows = list(reader)
    if not rows:
        raise ValueError(f"{path}: empty curve file")
    sizes = {int(r["L"]) for r in rows}
    seeds = {int(r["master_seed"]) for r in rows}
    n_trajs = {int(r["n_traj"]) for r in rows}
    if len(sizes) != 1 or len(seeds) != 1 or len(n_trajs) != 1:
        raise ValueError(f"{path}: mixed L / seed / n_traj values in one curve file")
    return EntropyCurve(
        L=sizes.pop(),
        p_values=np.array([float(r["p"]) for r in rows]),
        mean_entropy=np.array([float(r["mean_entropy_nats"]) for r in rows]),
        std_err=np.array([float(r["std_err"]) for r in rows]),
        n_traj=n_trajs.pop(),
        std_dev=np.array([float(r["std_dev"]) for r in rows]),
        master_seed=seeds.pop(),
    )
