"""Report rendering: the table CSV plus two figures.

`write_report` computes the Betti tables for k = 1..kmax and writes, into
the output directory:

    betti_table.csv       same bytes as `table --format csv`
    chdim_progression.png computed chdim per k, with the predicted line and
                          the connectivity upper bound where applicable
    betti_heatmap.png     k x degree matrix of Betti numbers
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .analysis import betti_table, kallel_upper_bound, predicted_chdim


def write_report(a, kmax, outdir, reduced=None, max_basis=None) -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    tables = []
    for k in range(1, kmax + 1):
        use_reduced = (a.closed and k >= 2) if reduced is None else reduced
        if use_reduced and not (a.closed and k >= 2):
            raise ValueError("--reduced needs a closed ring and k >= 2")
        tables.append(betti_table(a, k, reduced=use_reduced, max_monomials=max_basis))

    from .cli import table_csv_lines  # local import to avoid a cycle

    csv_path = outdir / "betti_table.csv"
    csv_path.write_text("\n".join(table_csv_lines(a, kmax, reduced, max_basis)) + "\n")

    paths = [csv_path]
    paths.append(_chdim_figure(a, tables, outdir / "chdim_progression.png"))
    paths.append(_heatmap_figure(a, tables, outdir / "betti_heatmap.png"))
    return paths


def _chdim_figure(a, tables, path: Path) -> Path:
    ks = [t.k for t in tables]
    chdims = [t.chdim_rational for t in tables]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ks, chdims, "o-", color="tab:blue", label="computed chdim")
    pred = [(k, predicted_chdim(a, k)) for k in ks]
    pred = [(k, p) for k, p in pred if p is not None]
    if pred:
        ax.plot(
            [k for k, _ in pred],
            [p for _, p in pred],
            "s--",
            color="tab:green",
            alpha=0.7,
            label="predicted (arithmetic)",
        )
    if a.connectivity is not None:
        kk = [k for k in ks if k >= 2]
        if kk:
            bounds = [
                kallel_upper_bound(a.d, k, a.connectivity, boundary_or_u_nonempty=not a.closed)
                for k in kk
            ]
            ax.plot(kk, bounds, ":", color="tab:red", label="connectivity upper bound")
    ax.set_xlabel("number of points k")
    ax.set_ylabel("top nonzero degree")
    ax.set_title(f"{a.name}: cohomological dimension growth")
    ax.set_xticks(ks)
    ax.grid(alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def _heatmap_figure(a, tables, path: Path) -> Path:
    degrees = sorted({d for t in tables for d in t.betti})
    if not degrees:
        degrees = [0]
    grid = [[t.betti.get(d, 0) for d in degrees] for t in tables]
    fig, ax = plt.subplots(figsize=(max(4, 0.6 * len(degrees) + 2), max(3, 0.4 * len(tables) + 1.5)))
    im = ax.imshow(grid, cmap="viridis", aspect="auto")
    ax.set_xticks(range(len(degrees)), [str(d) for d in degrees])
    ax.set_yticks(range(len(tables)), [str(t.k) for t in tables])
    ax.set_xlabel("degree")
    ax.set_ylabel("k")
    ax.set_title(f"{a.name}: rational Betti numbers")
    if len(degrees) * len(tables) <= 400:
        vmax = max((max(row) for row in grid), default=0)
        for i, row in enumerate(grid):
            for j, val in enumerate(row):
                if val:
                    color = "white" if vmax and val < 0.6 * vmax else "black"
                    ax.text(j, i, str(val), ha="center", va="center", color=color, fontsize=8)
    fig.colorbar(im, ax=ax, shrink=0.8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
