"""Reference density curve families for the scalar (m = 1) case.

Each preset fixes nu and one of (k, t) and sweeps the other over a
documented default list; the first swept value is the preset's default.
Curves are the scalar Pearson II-Riesz density on (-1, 1),

    f(r) = Gamma((nu + 1)/2 + k + t) / (Gamma(t + 1/2) Gamma(nu/2 + k))
           * (1 - r^2)^(nu/2 + k - 1) * r^(2 t),

which is exactly normalized in one dimension.  The preset's n parameter
enters the matrix-variate constant only, not the curve shape, and is
recorded in the metadata for reference.
"""

from __future__ import annotations

import numpy as np

from .algebra import Algebra
from .densities import PearsonIIRieszParams, pearson2riesz_logpdf_many

__all__ = ["FIGURE_PRESETS", "GRID_POINTS", "figure_grid", "figure_curves"]

GRID_POINTS = 1001

FIGURE_PRESETS = {
    1: {"nu": 15.0, "n": 18, "fixed": ("t", 7.0), "sweep": ("k", (0.0, 1.0, 2.0, 3.0))},
    2: {"nu": 3.0, "n": 18, "fixed": ("k", 0.0), "sweep": ("t", (0.0, 1.0, 2.0, 3.0))},
}


def figure_grid() -> np.ndarray:
    """Symmetric open grid of GRID_POINTS midpoints on (-1, 1)."""
    j = np.arange(GRID_POINTS)
    return -1.0 + (2.0 * j + 1.0) / GRID_POINTS


def scalar_curve(nu: float, k: float, t: float, r: np.ndarray) -> np.ndarray:
    """Scalar Pearson II-Riesz density values on the grid r."""
    params = PearsonIIRieszParams(Algebra.REAL, 1, 1, nu=nu, k=k, tau=(t,))
    data = r.reshape(-1, 1, 1, 1)
    out = np.exp(pearson2riesz_logpdf_many(data, params))
    return out


def figure_curves(which: int):
    """Grid, ordered (label, values) curve columns and metadata for a preset."""
    if which not in FIGURE_PRESETS:
        raise ValueError(f"unknown figure preset {which!r}")
    preset = FIGURE_PRESETS[which]
    r = figure_grid()
    fixed_name, fixed_value = preset["fixed"]
    sweep_name, sweep_values = preset["sweep"]
    columns = []
    for value in sweep_values:
        args = {fixed_name: fixed_value, sweep_name: value}
        columns.append(
            (f"{sweep_name}={value:g}", scalar_curve(preset["nu"], args["k"], args["t"], r))
        )
    meta = {
        "figure": which,
        "nu": preset["nu"],
        "n": preset["n"],
        fixed_name: fixed_value,
        "sweep_parameter": sweep_name,
        "sweep_values": list(sweep_values),
        "grid_points": GRID_POINTS,
        "interval": [-1.0, 1.0],
        "assumptions": [
            f"unstated {sweep_name} defaults to {sweep_values[0]:g} (first column)",
            "n enters the matrix-variate constant only; curves use the scalar normalization",
        ],
    }
    return r, columns, meta
