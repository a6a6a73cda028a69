#!/usr/bin/env python3
"""Quick-look plots for catsim output directories.

    python3 tools/plot.py OUT_DIR [--save DIR]

Draws every wigner_*.json as a colour map and timeseries.csv as one panel per
column. Only reads the files the CLI writes; nothing here is needed by the core.
"""

import argparse
import csv
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def plot_wigner(path, save):
    d = json.loads(path.read_text())
    w = np.array(d["values"])
    lim = np.abs(w).max()
    fig, ax = plt.subplots(figsize=(4.2, 3.6))
    m = ax.pcolormesh(d["re"], d["im"], w, cmap="RdBu_r", vmin=-lim, vmax=lim, shading="auto")
    fig.colorbar(m, ax=ax)
    ax.set_xlabel("Re alpha")
    ax.set_ylabel("Im alpha")
    ax.set_title(f"W_{d['mode']}  t={d['t']}")
    ax.set_aspect("equal")
    fig.tight_layout()
    fig.savefig(save / (path.stem + ".png"), dpi=120)
    plt.close(fig)


def plot_timeseries(path, save):
    with path.open() as f:
        rows = list(csv.reader(f))
    head, data = rows[0], np.array(rows[1:], dtype=float)
    cols = head[1:]
    fig, axes = plt.subplots(len(cols), 1, figsize=(5, 1.6 * len(cols)), sharex=True)
    for ax, name, k in zip(np.atleast_1d(axes), cols, range(1, len(head))):
        ax.plot(data[:, 0], data[:, k])
        ax.set_ylabel(name, fontsize=8)
    np.atleast_1d(axes)[-1].set_xlabel("t")
    fig.tight_layout()
    fig.savefig(save / "timeseries.png", dpi=120)
    plt.close(fig)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("out_dir", type=Path)
    ap.add_argument("--save", type=Path, help="where to put the PNGs (default: next to the data)")
    args = ap.parse_args()
    for ts in sorted(args.out_dir.rglob("timeseries.csv")):
        plot_timeseries(ts, args.save or ts.parent)
    for w in sorted(args.out_dir.rglob("wigner_*.json")):
        plot_wigner(w, args.save or w.parent)


if __name__ == "__main__":
    main()
