"""Entropy-versus-probability curve families, optionally with analytic overlays."""

import argparse

import matplotlib.pyplot as plt

from .io import read_analytic, read_curve

MARKERS = ["o", "s", "^", "v", "D", "p", "*", "X"]


def plot_curve_family(
    curve_paths,
    analytic_paths=(),
    out_path="curves.png",
    title=None,
    band=True,
    dpi=150,
):
    """Markers with error bars per curve; solid lines for analytic overlays."""
    curves = [read_curve(p) for p in curve_paths]
    overlays = [read_analytic(p) for p in analytic_paths]
    fig, ax = plt.subplots(figsize=(6.4, 4.6))
    for k, c in enumerate(sorted(curves, key=lambda c: c.L)):
        color = f"C{k % 10}"
        ax.errorbar(
            c.p, c.mean, yerr=c.std_err, fmt=MARKERS[k % len(MARKERS)],
            ms=4.5, lw=0, elinewidth=1, color=color, label=f"L = {c.L}",
        )
        if band:
            ax.fill_between(c.p, c.mean - c.std_dev, c.mean + c.std_dev,
                            color=color, alpha=0.15, lw=0)
    for k, a in enumerate(sorted(overlays, key=lambda a: (a.N, a.t))):
        ax.plot(a.p, a.entropy, "-", lw=1.4, color=f"C{k % 10}",
                label=f"analytic N={a.N}, t={a.t}")
    ax.set_xlabel("measurement probability p")
    ax.set_ylabel("half-chain entropy (nats)")
    if title:
        ax.set_title(title)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=dpi)
    plt.close(fig)
    return out_path


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="plot entropy-vs-p curve families")
    parser.add_argument("--curves", nargs="+", required=True, help="curve CSV files")
    parser.add_argument("--analytic", nargs="*", default=[], help="analytic overlay CSVs")
    parser.add_argument("--out", required=True)
    parser.add_argument("--title")
    parser.add_argument("--no-band", action="store_true", help="skip std-dev bands")
    parser.add_argument("--dpi", type=int, default=150)
    args = parser.parse_args(argv)
    plot_curve_family(
        args.curves, args.analytic, args.out, title=args.title,
        band=not args.no_band, dpi=args.dpi,
    )
    print(args.out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
