"""Readers for the simulator's persisted file schemas."""

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

CURVE_COLUMNS = ["L", "p", "mean_entropy_nats", "std_dev", "std_err", "n_traj", "master_seed"]
ANALYTIC_COLUMNS = ["N", "t", "p", "entropy_nats"]
PLANE_BASE_COLUMNS = ["idx", "e_p", "g_t", "c1", "c2", "c3", "p", "mean_entropy_nats", "std_err"]
PLANE_FIT_COLUMNS = PLANE_BASE_COLUMNS + ["p_c", "p_c_err", "nu", "nu_err"]
COLLAPSED_COLUMNS = ["L", "p", "x", "y", "std_err"]


class SchemaError(ValueError):
    """Input file does not match the expected CSV schema."""


def _read_rows(path: str | Path, columns: list[str]) -> list[dict]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != columns:
            raise SchemaError(
                f"{path}: expected columns {columns}, found {reader.fieldnames}"
            )
        rows = list(reader)
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return rows


@dataclass
class Curve:
    L: int
    p: np.ndarray
    mean: np.ndarray
    std_dev: np.ndarray
    std_err: np.ndarray
    n_traj: int


def read_curve(path: str | Path) -> Curve:
    rows = _read_rows(path, CURVE_COLUMNS)
    return Curve(
        L=int(rows[0]["L"]),
        p=np.array([float(r["p"]) for r in rows]),
        mean=np.array([float(r["mean_entropy_nats"]) for r in rows]),
        std_dev=np.array([float(r["std_dev"]) for r in rows]),
        std_err=np.array([float(r["std_err"]) for r in rows]),
        n_traj=int(rows[0]["n_traj"]),
    )


@dataclass
class AnalyticCurve:
    N: int
    t: int
    p: np.ndarray
    entropy: np.ndarray


def read_analytic(path: str | Path) -> AnalyticCurve:
    rows = _read_rows(path, ANALYTIC_COLUMNS)
    return AnalyticCurve(
        N=int(rows[0]["N"]),
        t=int(rows[0]["t"]),
        p=np.array([float(r["p"]) for r in rows]),
        entropy=np.array([float(r["entropy_nats"]) for r in rows]),
    )


def read_plane(path: str | Path) -> dict[str, np.ndarray]:
    with open(path, newline="") as fh:
        header = csv.reader(fh).__next__()
    columns = PLANE_FIT_COLUMNS if header == PLANE_FIT_COLUMNS else PLANE_BASE_COLUMNS
    rows = _read_rows(path, columns)
    return {k: np.array([float(r[k]) for r in rows]) for k in columns}


def read_collapsed(path: str | Path) -> dict[str, np.ndarray]:
    rows = _read_rows(path, COLLAPSED_COLUMNS)
    return {k: np.array([float(r[k]) for r in rows]) for k in COLLAPSED_COLUMNS}


def read_fit_report(path: str | Path) -> dict:
    with open(path) as fh:
        return json.load(fh)
