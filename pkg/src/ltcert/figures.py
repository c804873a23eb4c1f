"""Figure data tables (CSV) and their rendered companions (PNG).

fig1: the sphere series H_S2(a) and the scaled remainder
(H_S2(a) - 1 + 8/(3 pi a)) a^3, which approaches -64/(315 pi).
fig2: the torus series H_T2(a) and the Poisson remainder R(a).

CSV values are written with 17 significant digits and '.' decimals, so the
tables reproduce bit-for-bit; headers carry the reference constants.
"""

import math
import os

import numpy as np

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from ltcert.records import write_csv
from ltcert.sphere_series import REMAINDER_LIMIT, h_s2_grid
from ltcert.torus_series import h_t2_grid

FIG1_GRID = (1.0, 100.0, 0.25)
FIG2_GRID = (1.0, 50.0, 0.25)


def _grid(lo, hi, step):
    return np.arange(lo, hi + 0.5 * step, step)


def fig1_table():
    """Columns (a, H_S2, remainder_scaled) plus CSV header comments."""
    a = _grid(*FIG1_GRID)
    values, _ = h_s2_grid(a, tol=1e-13)
    remainder = (values - 1.0 + 8.0 / (3.0 * math.pi * a)) * a**3
    comments = (
        "sphere series H_S2(a) and scaled remainder (H_S2(a) - 1 + 8/(3 pi a)) a^3",
        f"reference constant: -64/(315 pi) = {REMAINDER_LIMIT!r} (remainder limit)",
        "reference constant: 1 (strict upper bound for H_S2)",
    )
    rows = list(zip(a, values, remainder))
    return comments, ("a", "H_S2", "remainder_scaled"), rows


def fig2_table():
    """Columns (a, H_T2, R) plus CSV header comments."""
    a = _grid(*FIG2_GRID)
    values, _ = h_t2_grid(a, tol=1e-13)
    remainder = math.pi**2 * a / 4.0 * (values - 1.0) + 1.0
    comments = (
        "torus series H_T2(a) and Poisson remainder R(a) = (pi^2 a/4)(H_T2 - 1) + 1",
        "reference constant: 1 (strict upper bound for H_T2; |R| < 1 certifies it)",
        "R values below ~1e-11 sit at the truncation noise floor",
    )
    rows = list(zip(a, values, remainder))
    return comments, ("a", "H_T2", "R"), rows


def _render(path, rows, left_label, right_label, right_reference=None):
    data = np.asarray(rows, dtype=float)
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11.0, 4.2))
    ax1.plot(data[:, 0], data[:, 1], lw=1.2)
    ax1.axhline(1.0, color="red", lw=0.8, ls="--")
    ax1.set_xlabel("a")
    ax1.set_ylabel(left_label)
    ax2.plot(data[:, 0], data[:, 2], lw=1.2)
    if right_reference is not None:
        ax2.axhline(right_reference, color="red", lw=0.8)
    ax2.set_xlabel("a")
    ax2.set_ylabel(right_label)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_figure(which: str, out_dir: str, render: bool = True):
    """Write <which>.csv (and <which>.png unless render=False); returns paths."""
    os.makedirs(out_dir, exist_ok=True)
    if which == "fig1":
        comments, cols, rows = fig1_table()
        reference = REMAINDER_LIMIT
        labels = ("H_S2(a)", "(H_S2(a) - 1 + 8/(3 pi a)) a^3")
    elif which == "fig2":
        comments, cols, rows = fig2_table()
        reference = None
        labels = ("H_T2(a)", "R(a)")
    else:
        raise ValueError(f"unknown figure {which!r}")
    csv_path = os.path.join(out_dir, f"{which}.csv")
    write_csv(csv_path, cols, rows, header_comments=comments)
    paths = [csv_path]
    if render:
        png_path = os.path.join(out_dir, f"{which}.png")
        _render(png_path, rows, labels[0], labels[1], right_reference=reference)
        paths.append(png_path)
    return paths
