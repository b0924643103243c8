"""Data-collapse figures from fit reports and collapsed-point tables."""

import argparse

import matplotlib.pyplot as plt
import numpy as np

from .io import read_collapsed, read_fit_report

MARKERS = ["o", "s", "^", "v", "D", "p", "*", "X"]


def plot_collapse(fit_path, collapsed_path, out_path="collapse.png", title=None, dpi=150):
    """Rescaled points per size with the fitted (p_c, nu) annotated."""
    fit = read_fit_report(fit_path)
    table = read_collapsed(collapsed_path)
    fig, ax = plt.subplots(figsize=(6.4, 4.6))
    sizes = np.unique(table["L"]).astype(int)
    for k, L in enumerate(sizes):
        sel = table["L"] == L
        ax.errorbar(
            table["x"][sel], table["y"][sel], yerr=table["std_err"][sel],
            fmt=MARKERS[k % len(MARKERS)], ms=4, lw=0, elinewidth=0.8,
            color=f"C{k % 10}", label=f"L = {L}",
        )
    label = (
        f"$p_c$ = {fit['p_c']:.3f} $\\pm$ {fit['p_c_err']:.3f}\n"
        f"$\\nu$ = {fit['nu']:.2f} $\\pm$ {fit['nu_err']:.2f}"
    )
    ax.annotate(label, xy=(0.03, 0.05), xycoords="axes fraction", fontsize=9,
                bbox={"boxstyle": "round", "fc": "white", "alpha": 0.8})
    ax.set_xlabel(r"$(p - p_c)\, L^{1/\nu}$")
    ax.set_ylabel(r"$S - S_c(L)$ (nats)")
    if title:
        ax.set_title(title)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=dpi)
    plt.close(fig)
    return out_path


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="plot a data collapse")
    parser.add_argument("--fit", required=True, help="collapse fit report JSON")
    parser.add_argument("--collapsed", required=True, help="collapsed-points CSV")
    parser.add_argument("--out", required=True)
    parser.add_argument("--title")
    parser.add_argument("--dpi", type=int, default=150)
    args = parser.parse_args(argv)
    plot_collapse(args.fit, args.collapsed, args.out, title=args.title, dpi=args.dpi)
    print(args.out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
