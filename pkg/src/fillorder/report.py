"""Report rendering: delimited per-step logs plus matplotlib figures."""

from __future__ import annotations

import json
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .graphs import Graph, MinDegreeEngine, OrderingResult


def format_degree(d) -> str:
    if isinstance(d, float) and d.is_integer():
        return str(int(d))
    if isinstance(d, float):
        return f"{d:.6g}"
    return str(d)


def step_table(g: Graph, result: OrderingResult, with_truth: bool = True):
    """Rows (step, vertex, reported degree, true degree, true minimum)."""
    rows = []
    eng = MinDegreeEngine(g) if with_truth else None
    for step, (u, d) in enumerate(zip(result.order, result.degrees)):
        if eng is not None:
            true_min, _ = eng.min_entry()
            true_deg = eng.degree_of(u)
            eng.pivot(u)
            rows.append((step, u, d, true_deg, true_min))
        else:
            rows.append((step, u, d, None, None))
    return rows


def write_degree_log(path: str, rows) -> None:
    with open(path, "w") as fh:
        fh.write("step\tvertex\treported_degree\ttrue_degree\ttrue_minimum\n")
        for step, u, d, td, tm in rows:
            td_s = "" if td is None else str(td)
            tm_s = "" if tm is None else str(tm)
            fh.write(f"{step}\t{u}\t{format_degree(d)}\t{td_s}\t{tm_s}\n")


def render_degree_profile(path: str, rows, title: str) -> None:
    steps = [r[0] for r in rows]
    reported = [float(r[2]) for r in rows]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(steps, reported, lw=1.0, label="pivoted degree (reported)")
    if rows and rows[0][4] is not None:
        ax.plot(steps, [r[4] for r in rows], lw=1.0, ls="--", label="true minimum")
    ax.set_xlabel("elimination step")
    ax.set_ylabel("fill degree")
    ax.set_title(title)
    ax.legend(frameon=False)
    ax.spines["right"].set_visible(False)
    ax.spines["top"].set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_fill_growth(path: str, rows, title: str) -> None:
    steps = [r[0] for r in rows]
    degs = [r[3] if r[3] is not None else float(r[2]) for r in rows]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(steps, np.cumsum(degs), lw=1.2)
    ax.set_xlabel("elimination step")
    ax.set_ylabel("cumulative fill (factor non-zeros)")
    ax.set_title(title)
    ax.spines["right"].set_visible(False)
    ax.spines["top"].set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_report(outdir: str, prefix: str, g: Graph, result: OrderingResult,
                 with_truth: bool = True) -> dict:
    """Write the permutation, the degree log, both figures, and the audit
    counters under outdir; returns the path map."""
    os.makedirs(outdir, exist_ok=True)
    base = os.path.join(outdir, prefix)
    paths = {
        "perm": base + ".perm",
        "degrees": base + "_degrees.tsv",
        "degree_profile": base + "_degree_profile.png",
        "fill_growth": base + "_fill_growth.png",
        "audit": base + "_audit.json",
    }
    with open(paths["perm"], "w") as fh:
        for u in result.order:
            fh.write(f"{u}\n")
    rows = step_table(g, result, with_truth=with_truth)
    write_degree_log(paths["degrees"], rows)
    title = f"{result.method} ordering, n={g.n}, m={g.m}"
    render_degree_profile(paths["degree_profile"], rows, title)
    render_fill_growth(paths["fill_growth"], rows, title)
    with open(paths["audit"], "w") as fh:
        json.dump({"method": result.method, "seed": result.seed, **result.audit}, fh, indent=2)
        fh.write("\n")
    return paths
