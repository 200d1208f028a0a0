"""Render a rescaled distribution against the analytic density curve.

Consumes the simulation CSV (``x,x_over_t,prob,t_prob,binned_density``) and
the density CSV (``x,w,f_k,density``) written by the walk CLI, and draws
(t_prob against x_over_t) under the density curve in one figure.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass
from pathlib import Path

import matplotlib
import numpy as np

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

SIM_HEADER = ["x", "x_over_t", "prob", "t_prob", "binned_density"]
DENSITY_HEADER = ["x", "w", "f_k", "density"]


class SchemaError(Exception):
    """Input file does not conform to the expected CSV schema."""


@dataclass(frozen=True)
class OverlaySpec:
    sim_path: Path
    density_path: Path
    out_path: Path
    title: str = ""
    t_label: str = ""
    ymax: float | None = None  # None: robust automatic limit


def _load_csv(path: Path, expected_header: list[str]) -> np.ndarray:
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            try:
                header = next(reader)
            except StopIteration:
                raise SchemaError(f"{path}: file is empty") from None
            if header != expected_header:
                raise SchemaError(
                    f"{path}: header {header!r} does not match {expected_header!r}"
                )
            rows = []
            for lineno, row in enumerate(reader, start=2):
                if len(row) != len(expected_header):
                    raise SchemaError(f"{path}:{lineno}: expected {len(expected_header)} columns")
                try:
                    rows.append([float(v) for v in row])
                except ValueError:
                    raise SchemaError(f"{path}:{lineno}: non-numeric value") from None
    except OSError as exc:
        raise SchemaError(f"{path}: {exc}") from None
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return np.asarray(rows)


def load_simulation_csv(path: Path) -> np.ndarray:
    """Simulation table as an array with the columns of SIM_HEADER."""
    return _load_csv(path, SIM_HEADER)


def load_density_csv(path: Path) -> np.ndarray:
    """Density table as an array with the columns of DENSITY_HEADER."""
    return _load_csv(path, DENSITY_HEADER)


def render_overlay(spec: OverlaySpec) -> Path:
    """Draw the overlay figure and write it to ``spec.out_path``.

    The empirical trace is a thin line through the occupied sites in the
    rescaled coordinates (x/t, t P_t(x)); the analytic density is a heavier
    contrasting line on top.
    """
    sim = load_simulation_csv(spec.sim_path)
    den = load_density_csv(spec.density_path)
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(sim[:, 1], sim[:, 3], lw=0.7, color="#5b7fa6",
            label=f"$t\\,P_t(x)$ {spec.t_label}".rstrip())
    ax.plot(den[:, 0], den[:, 3], lw=2.0, color="#b0413e", label="limit density")
    ax.set_xlim(-1.0, 1.0)
    if spec.ymax is not None:
        top = spec.ymax
    else:
        # the density diverges at the band edges and the localized mass
        # spikes at the origin; clip to a robust quantile so the bulk shows
        vals = np.concatenate([sim[:, 3], den[:, 3]])
        top = 1.5 * float(np.percentile(vals[np.isfinite(vals)], 95))
        top = max(top, 1e-3)
    ax.set_ylim(0.0, top)
    ax.set_xlabel("$x/t$")
    ax.set_ylabel("rescaled probability")
    if spec.title:
        ax.set_title(spec.title)
    ax.legend(loc="upper left", frameon=False)
    fig.tight_layout()
    fig.savefig(spec.out_path)
    plt.close(fig)
    return spec.out_path


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot_overlay",
        description="Overlay a rescaled walk distribution with its analytic limit density.",
    )
    parser.add_argument("--sim", required=True, help="simulation CSV from the walk CLI")
    parser.add_argument("--density", required=True, help="density CSV from the walk CLI")
    parser.add_argument("--out", required=True,
                        help="output image path (.svg recommended; format from suffix)")
    parser.add_argument("--title", default="")
    parser.add_argument("--t-label", default="")
    parser.add_argument("--ymax", type=float, default=None,
                        help="fixed upper y limit (default: robust automatic)")
    ns = parser.parse_args(argv)
    out = Path(ns.out)
    if out.suffix == "":
        out = out.with_suffix(".svg")
    spec = OverlaySpec(
        sim_path=Path(ns.sim),
        density_path=Path(ns.density),
        out_path=out,
        title=ns.title,
        t_label=ns.t_label,
        ymax=ns.ymax,
    )
    try:
        render_overlay(spec)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
