"""Write a verification run to disk: JSON, a CSV of verdicts, and matplotlib figures."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .analysis import additive_orders  # noqa: E402
from .brace import FiniteBrace  # noqa: E402
from .suite import RunReport  # noqa: E402

STATUS_COLORS = {"pass": "#2b8a3e", "no-counterexample": "#e8a317", "fail": "#c92a2a"}


def _style(ax):
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    ax.tick_params(labelsize=8)


def plot_check_times(run: RunReport, path: Path):
    names = [c.name for c in run.checks]
    secs = [max(c.seconds, 1e-4) for c in run.checks]
    colors = [STATUS_COLORS.get(c.status, "grey") for c in run.checks]
    fig, ax = plt.subplots(figsize=(7, 0.25 * len(names) + 1.2))
    ax.barh(range(len(names)), secs, color=colors)
    ax.set_yticks(range(len(names)), names)
    ax.invert_yaxis()
    ax.set_xscale("log")
    ax.set_xlabel("wall-clock seconds")
    ax.set_title(f"checks for order {run.order} ({run.level})", fontsize=9)
    _style(ax)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_closure_growth(run: RunReport, path: Path):
    fig, ax = plt.subplots(figsize=(5, 3.5))
    for g, trace in sorted(run.closure_traces.items()):
        ax.plot(range(1, len(trace) + 1), trace, marker="o", ms=3, lw=1, label=f"gen {g}")
    ax.axhline(run.order, color="k", lw=0.6, ls="--")
    ax.set_yscale("log")
    ax.set_xlabel("closure round")
    ax.set_ylabel("ideal size")
    if run.closure_traces:
        ax.legend(fontsize=7, frameon=False)
    _style(ax)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_additive_orders(B: FiniteBrace, path: Path):
    orders = additive_orders(B)
    values, counts = np.unique(orders, return_counts=True)
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.bar([str(v) for v in values], counts, color="#364fc7")
    ax.set_yscale("log")
    ax.set_xlabel("additive order")
    ax.set_ylabel("elements")
    _style(ax)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_report(run: RunReport, brace: FiniteBrace, out_dir: str | Path) -> dict[str, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "json": out / "report.json",
        "csv": out / "checks.csv",
        "check_times": out / "check_times.png",
        "closure_growth": out / "closure_growth.png",
        "additive_orders": out / "additive_orders.png",
    }
    paths["json"].write_text(json.dumps(run.as_dict(), indent=2))
    with paths["csv"].open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["check", "status", "checked", "seed", "seconds", "witness"])
        for c in run.checks:
            witness = "" if c.witness is None else " ".join(str(int(w)) for w in c.witness)
            writer.writerow([c.name, c.status, c.checked, "" if c.seed is None else c.seed, f"{c.seconds:.4f}", witness])
    plot_check_times(run, paths["check_times"])
    plot_closure_growth(run, paths["closure_growth"])
    plot_additive_orders(brace, paths["additive_orders"])
    return paths
