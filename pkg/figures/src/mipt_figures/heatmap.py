"""Heatmaps over the permissible gate region from plane-scan tables."""

import argparse

import matplotlib.pyplot as plt
import numpy as np
from scipy.interpolate import griddata

from .io import read_plane
from .region import VERTICES, boundary_path, inside

FIELD_COLUMNS = {"entropy": "mean_entropy_nats", "p_c": "p_c", "nu": "nu"}
FIELD_LABELS = {
    "entropy": "half-chain entropy (nats)",
    "p_c": "critical probability p_c",
    "nu": "critical exponent nu",
}


def plot_heatmap(plane_path, field="entropy", out_path="heatmap.png", title=None, dpi=150):
    """Linear scattered-data interpolation clipped to the permissible region."""
    table = read_plane(plane_path)
    column = FIELD_COLUMNS[field]
    if column not in table:
        raise ValueError(f"{plane_path} has no '{column}' column (run with fits enabled)")
    pts = np.column_stack([table["e_p"], table["g_t"]])
    vals = table[column]
    if pts.shape[0] < 3:
        raise ValueError(f"need at least 3 plane points to interpolate, got {pts.shape[0]}")

    ge, gg = np.meshgrid(np.linspace(0, 2 / 3, 240), np.linspace(0, 1, 360))
    z = griddata(pts, vals, (ge, gg), method="linear")
    hole = np.isnan(z)
    if np.any(hole):  # corners outside the sample hull: fall back to nearest
        z[hole] = griddata(pts, vals, (ge[hole], gg[hole]), method="nearest")
    z = np.ma.masked_where(~inside(ge, gg), z)

    fig, ax = plt.subplots(figsize=(5.6, 6.2))
    mesh = ax.pcolormesh(ge, gg, z, shading="auto", cmap="viridis")
    fig.colorbar(mesh, ax=ax, label=FIELD_LABELS[field])
    be, bg = boundary_path()
    ax.plot(be, bg, "k-", lw=1.2)
    offsets = {"I": (6, -2), "CNOT": (-34, -2), "iSWAP": (-42, -4), "SWAP": (6, -6)}
    for name, (e_p, g_t) in VERTICES.items():
        ax.plot([e_p], [g_t], "k.", ms=6)
        ax.annotate(name, (e_p, g_t), textcoords="offset points",
                    xytext=offsets[name], fontsize=9)
    ax.set_xlabel("entangling power $e_p$")
    ax.set_ylabel("gate typicality $g_t$")
    ax.set_xlim(-0.04, 0.74)
    ax.set_ylim(-0.05, 1.05)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(out_path, dpi=dpi)
    plt.close(fig)
    return out_path


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="plot a plane-scan heatmap")
    parser.add_argument("--plane", required=True, help="plane-scan CSV")
    parser.add_argument("--field", choices=sorted(FIELD_COLUMNS), default="entropy")
    parser.add_argument("--out", required=True)
    parser.add_argument("--title")
    parser.add_argument("--dpi", type=int, default=150)
    args = parser.parse_args(argv)
    plot_heatmap(args.plane, args.field, args.out, title=args.title, dpi=args.dpi)
    print(args.out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
