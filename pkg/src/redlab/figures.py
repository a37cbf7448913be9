"""Matplotlib renderings of sweep results, written next to the CSV/JSON report."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.labelsize": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 7,
    "ytick.labelsize": 8,
    "xtick.direction": "in",
    "ytick.direction": "in",
    "svg.hashsalt": "redlab",
}


def _cell_label(r: dict) -> str:
    return f"{r['mode'][0].upper()} n{r['n']} k{r['k']} m{r['m']}"


def plot_sweep(records: list[dict], path: str) -> None:
    """Bar chart of P(A>B) and P(B>A) per cell with their confidence intervals.

    A is component-level redundancy, B system-level.  The format follows the
    file extension of ``path``.
    """
    with plt.rc_context(STYLE):
        width = max(4.0, 0.45 * len(records) + 1.5)
        fig, ax = plt.subplots(figsize=(width, 3.4))
        xs = range(len(records))
        for offset, key, ci, colour, label in (
            (-0.2, "p_gt", "ci_gt", "tab:blue", "P(A > B), component level wins"),
            (0.2, "p_lt", "ci_lt", "tab:red", "P(B > A), system level wins"),
        ):
            heights = [r[key] for r in records]
            lower = [r[key] - r[ci][0] for r in records]
            upper = [r[ci][1] - r[key] for r in records]
            ax.bar([x + offset for x in xs], heights, width=0.4, color=colour, label=label,
                   yerr=[lower, upper], capsize=2, error_kw={"elinewidth": 0.8})
        ax.set_xticks(list(xs))
        ax.set_xticklabels([_cell_label(r) for r in records], rotation=60, ha="right")
        ax.set_ylabel("probability")
        ax.set_ylim(0.0, 1.0)
        ax.legend(loc="lower left", bbox_to_anchor=(0.0, 1.0), ncol=2, frameon=False)
        fig.tight_layout()
        fig.savefig(path, metadata=_metadata(path))
        plt.close(fig)


def _metadata(path: str):
    # Drop the software/date stamps so repeated runs write identical files.
    if path.lower().endswith(".png"):
        return {"Software": None}
    if path.lower().endswith(".pdf"):
        return {"Creator": None, "Producer": None, "CreationDate": None}
    if path.lower().endswith(".svg"):
        return {"Date": None, "Creator": None}
    return None
