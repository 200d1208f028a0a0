"""Overlay renderer for walk simulation CSVs and analytic density CSVs."""

from .overlay import OverlaySpec, load_density_csv, load_simulation_csv, render_overlay

__version__ = "0.1.0"
