"""Figures for the temporal reports, written straight to image files."""

from __future__ import annotations

from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .temporal import TemporalBucket  # noqa: E402


def _series(buckets: list[TemporalBucket]) -> dict[str, list[float]]:
    series: dict[str, list[float]] = defaultdict(lambda: [0.0] * len(buckets))
    for i, b in enumerate(buckets):
        for label, value in b.payload.items():
            series[label][i] = float(value)
    return series


def _top_labels(series: dict[str, list[float]], top_n: int) -> list[str]:
    return sorted(series, key=lambda k: (-max(series[k]), k))[:top_n]


def plot_area_popularity(buckets: list[TemporalBucket], path, top_n: int = 8,
                         title: str | None = None) -> None:
    """Line chart of area shares per bucket, one line per area."""
    series = _series(buckets)
    labels = [b.label() for b in buckets]
    fig, ax = plt.subplots(figsize=(8, 4.5))
    for area in _top_labels(series, top_n):
        ax.plot(labels, [100 * v for v in series[area]], marker="o", label=area)
    ax.set_xlabel("years")
    ax.set_ylabel("share of papers (%)")
    if title:
        ax.set_title(title)
    if series:
        ax.legend(fontsize="small", loc="best")
    ax.grid(alpha=0.3)
    fig.autofmt_xdate()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_techniques_in_area(buckets: list[TemporalBucket], path, top_n: int = 10,
                            title: str | None = None) -> None:
    """Heat map of technique counts, techniques down, buckets across."""
    series = _series(buckets)
    techs = _top_labels(series, top_n)
    fig, ax = plt.subplots(figsize=(8, max(2.5, 0.35 * len(techs) + 1.5)))
    if techs:
        grid = [series[t] for t in techs]
        im = ax.imshow(grid, aspect="auto", cmap="Blues")
        ax.set_yticks(range(len(techs)), techs)
        fig.colorbar(im, ax=ax, label="citing papers")
    ax.set_xticks(range(len(buckets)), [b.label() for b in buckets], rotation=45, ha="right")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
