"""Serialization: CSV profiles, JSON verification reports, optional figures.

CSV contract: header exactly `r,perimeter,ratio,err_estimate`, 17
significant digit decimal floats, LF line endings, no locale. 17
significant digits round-trip binary64 exactly.
"""

from __future__ import annotations

import json
from typing import Iterable, Sequence

from .calculus import IdentityReport
from .perimeter import ProfileRow, ProfileTable

CSV_HEADER = "r,perimeter,ratio,err_estimate"


def fmt17(x: float) -> str:
    return format(float(x), ".17g")


def profile_csv(table: ProfileTable) -> str:
    lines = [CSV_HEADER]
    for row in table.rows:
        lines.append(
            ",".join(fmt17(v) for v in (row.r, row.perimeter, row.ratio, row.err_estimate))
        )
    return "\n".join(lines) + "\n"


def write_profile_csv(table: ProfileTable, path: str) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(profile_csv(table))


def parse_profile_csv(text: str) -> list:
    """Inverse of profile_csv; returns ProfileRow entries."""
    lines = [ln for ln in text.split("\n") if ln]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError("bad profile CSV header")
    rows = []
    for ln in lines[1:]:
        parts = ln.split(",")
        if len(parts) != 4:
            raise ValueError(f"bad profile CSV row: {ln!r}")
        rows.append(ProfileRow(*(float(p) for p in parts)))
    return rows


def profile_json(table: ProfileTable) -> str:
    obj = {
        "g": table.g_label,
        "t0": table.t0,
        "Q": table.Q,
        "rows": [
            {
                "r": row.r,
                "perimeter": row.perimeter,
                "ratio": row.ratio,
                "err_estimate": row.err_estimate,
            }
            for row in table.rows
        ],
    }
    return json.dumps(obj, indent=2) + "\n"


def verify_json(config: dict, reports: Sequence[IdentityReport], wall_time_seconds: float) -> str:
    obj = {
        "config": config,
        "results": [rep.as_dict() for rep in reports],
        "wall_time_seconds": wall_time_seconds,
    }
    return json.dumps(obj, indent=2) + "\n"


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def plot_profile(table: ProfileTable, path: str) -> None:
    """Rescaled profile curve P(r)/r^3 against r."""
    plt = _pyplot()
    rs = table.column("r")
    ratios = table.column("ratio")
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(rs, ratios, marker="o", ms=3, lw=1)
    if rs.min() > 0 and rs.max() / rs.min() > 30:
        ax.set_xscale("log")
    ax.set_xlabel("r")
    ax.set_ylabel("P(r) / r^3")
    ax.set_title(f"g={table.g_label} t0={table.t0:g}")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_verify(reports: Iterable[IdentityReport], path: str) -> None:
    """Residuals vs tolerances, log scale, one bar per check."""
    plt = _pyplot()
    reports = list(reports)
    names = [r.name for r in reports]
    floor = 1e-18
    residuals = [max(r.max_residual, floor) for r in reports]
    tols = [r.tolerance for r in reports]
    fig, ax = plt.subplots(figsize=(7, 4))
    xs = range(len(names))
    ax.bar(xs, residuals, color=["tab:green" if r.passed else "tab:red" for r in reports])
    ax.plot(xs, tols, "k_", ms=18, label="tolerance")
    ax.set_yscale("log")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(names, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel("max residual")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
