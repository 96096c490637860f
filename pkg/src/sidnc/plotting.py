"""Render sweep results as figures next to the CSV output."""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def _series(rows):
    groups = {}
    for row in rows:
        groups.setdefault((row.scheme, row.algorithm), []).append(row)
    for key in groups:
        groups[key].sort(key=lambda r: r.receivers)
    return groups


def _plot_metric(rows, mean_attr, stderr_attr, ylabel, path):
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for (scheme, algorithm), series in sorted(_series(rows).items()):
        xs = [r.receivers for r in series if getattr(r, mean_attr) is not None]
        ys = [getattr(r, mean_attr) for r in series if getattr(r, mean_attr) is not None]
        if not xs:
            continue
        errs = None
        if stderr_attr is not None:
            errs = [getattr(r, stderr_attr) or 0.0 for r in series if getattr(r, mean_attr) is not None]
        label = scheme if scheme in ("rlnc", "limits") else f"{scheme} ({algorithm})"
        ax.errorbar(xs, ys, yerr=errs, marker="o", capsize=2, label=label)
    ax.set_xlabel("receivers")
    ax.set_ylabel(ylabel)
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_figures(rows, outdir) -> list:
    """Write completion-time and delay figures; returns the file paths."""
    os.makedirs(outdir, exist_ok=True)
    written = []
    written.append(
        _plot_metric(
            rows,
            "mean_completion",
            "stderr_completion",
            "mean block completion time (slots)",
            os.path.join(outdir, "completion_vs_receivers.png"),
        )
    )
    written.append(
        _plot_metric(
            rows,
            "mean_delay",
            "stderr_delay",
            "mean packet decoding delay (slots)",
            os.path.join(outdir, "delay_vs_receivers.png"),
        )
    )
    return written
