"""Shifted-entropy (S - ln L) crossing figures."""

import argparse

import matplotlib.pyplot as plt
import numpy as np

from .io import read_curve

MARKERS = ["o", "s", "^", "v", "D", "p", "*", "X"]


def plot_crossing(curve_paths, out_path="crossing.png", title=None, dpi=150):
    """S - ln L versus p for every curve; crossings localize the transition."""
    curves = sorted((read_curve(p) for p in curve_paths), key=lambda c: c.L)
    fig, ax = plt.subplots(figsize=(6.4, 4.6))
    for k, c in enumerate(curves):
        ax.errorbar(
            c.p, c.mean - np.log(c.L), yerr=c.std_err,
            fmt=MARKERS[k % len(MARKERS)] + "-", ms=4, lw=0.9, elinewidth=0.8,
            color=f"C{k % 10}", label=f"L = {c.L}",
        )
    ax.set_xlabel("measurement probability p")
    ax.set_ylabel(r"$S - \ln L$ (nats)")
    if title:
        ax.set_title(title)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=dpi)
    plt.close(fig)
    return out_path


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="plot shifted-entropy crossings")
    parser.add_argument("--curves", nargs="+", required=True, help="curve CSV files")
    parser.add_argument("--out", required=True)
    parser.add_argument("--title")
    parser.add_argument("--dpi", type=int, default=150)
    args = parser.parse_args(argv)
    plot_crossing(args.curves, args.out, title=args.title, dpi=args.dpi)
    print(args.out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
