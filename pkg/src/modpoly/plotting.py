"""Figures for the growth and benchmark reports (written to files, never shown)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def growth_figure(rows, asym, path):
    """Left: ln c_k(n) against the 4 pi sqrt((n+k)k) bound.  Right: k=1 asymptotic ratio."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    for k in sorted({r.k for r in rows}):
        sel = [r for r in rows if r.k == k]
        ax1.plot([r.n for r in sel], [r.logcoeff for r in sel], lw=1, label=f"k={k}")
        ax1.plot([r.n for r in sel], [r.upper for r in sel], lw=0.6, ls="--", color="grey")
    ax1.set_xlabel("n")
    ax1.set_ylabel("ln coefficient")
    ax1.set_title("coefficients of j^k (dashed: upper bound)")
    ax1.legend(fontsize=6, ncol=2)
    ax2.plot([a.n for a in asym], [a.ratio for a in asym])
    ax2.axhline(1.0, color="grey", lw=0.6)
    ax2.set_xlabel("n")
    ax2.set_ylabel("c(n) sqrt(2) n^(3/4) / exp(4 pi sqrt(n))")
    ax2.set_title("k = 1 asymptotic ratio")
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)


def bench_figure(rows, path):
    fig, ax = plt.subplots(figsize=(5, 4))
    for kind, marker in (("local", "o"), ("full", "s")):
        sel = [r for r in rows if r.kind == kind]
        if not sel:
            continue
        slope = sel[0].slope
        label = kind if slope is None else f"{kind} (slope {slope:.2f})"
        ax.loglog([r.ell for r in sel], [r.seconds for r in sel], marker=marker, label=label)
    ax.set_xlabel("l")
    ax.set_ylabel("seconds")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
