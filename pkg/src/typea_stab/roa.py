"""Region of attraction of the stable slip equilibrium over the (slip, wind) plane.

In one dimension the basin is exact: it runs from the analysis floor (s = 0)
up to the unstable equilibrium, or to the domain cap when there is none.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import ModelDef
from .dynamics import net_acceleration
from .equilibria import find_equilibria, stable_equilibrium
from .errors import NoEquilibrium, StabilityMismatch
from .parallel import ordered_map

SIGN_ZERO_BAND = 1e-12
DEFAULT_S_RANGE = (0.0, 0.5)
DEFAULT_V_RANGE = (0.6, 1.2)
DEFAULT_MESH = (15, 12)


@dataclass(frozen=True)
class Basin:
    lower: float
    upper: float
    # False when ``upper`` is just the domain cap
    bounded_by_equilibrium: bool

    def contains(self, s) -> np.ndarray | bool:
        s = np.asarray(s)
        below = s < self.upper if self.bounded_by_equilibrium else s <= self.upper
        return (s >= self.lower) & below

    @property
    def width(self) -> float:
        return self.upper - self.lower


def basin(model: ModelDef, v_w) -> Basin:
    s0 = stable_equilibrium(model, v_w).s_star
    for eq in find_equilibria(model, v_w):
        if eq.s_star > s0 and not eq.stable:
            return Basin(0.0, eq.s_star, True)
    return Basin(0.0, model.slip_domain_upper, False)


def basin_interval(model: ModelDef, v_w) -> tuple[float, float]:
    b = basin(model, v_w)
    return b.lower, b.upper


@dataclass
class GridMap:
    s_axis: np.ndarray
    v_axis: np.ndarray
    # all three indexed [i_s, j_v]; column j is one wind velocity
    w_value: np.ndarray
    w_sign: np.ndarray
    in_basin: np.ndarray
    basins: list

    @property
    def shape(self):
        return self.w_value.shape

    def records(self):
        """Long-format rows ``(s, v_w, w_value, w_sign, in_basin)``, wind-major."""
        for j, v in enumerate(self.v_axis):
            for i, s in enumerate(self.s_axis):
                yield (float(s), float(v), float(self.w_value[i, j]), int(self.w_sign[i, j]), bool(self.in_basin[i, j]))


def _axis(rng, n, name):
    lo, hi = float(rng[0]), float(rng[1])
    if n < 2:
        raise ValueError(f"{name} mesh must have at least 2 points, got {n}")
    if hi < lo:
        raise ValueError(f"{name} range must satisfy lo <= hi, got ({lo}, {hi})")
    return np.linspace(lo, hi, n)


def sign_with_band(w):
    w = np.asarray(w)
    return np.where(np.abs(w) <= SIGN_ZERO_BAND, 0, np.sign(w)).astype(int)


def _column(model, s_axis, v):
    w = np.asarray(net_acceleration(model, v, s_axis), dtype=float)
    try:
        b = basin(model, v)
    except (NoEquilibrium, StabilityMismatch):
        return w, np.zeros(s_axis.shape, dtype=bool), None
    return w, np.asarray(b.contains(s_axis), dtype=bool), b


def classify_grid(model: ModelDef, s_range=DEFAULT_S_RANGE, v_range=DEFAULT_V_RANGE, mesh=DEFAULT_MESH, threads=None):
    """Evaluate ``W = (T_m - T_e)/M`` and basin membership at every grid node.

    Wind columns without a stable equilibrium have no basin (all False).
    """
    s_axis = _axis(s_range, mesh[0], "slip")
    v_axis = _axis(v_range, mesh[1], "wind")
    cols = ordered_map(lambda v: _column(model, s_axis, float(v)), v_axis, threads)
    w = np.column_stack([c[0] for c in cols])
    return GridMap(
        s_axis=s_axis,
        v_axis=v_axis,
        w_value=w,
        w_sign=sign_with_band(w),
        in_basin=np.column_stack([c[1] for c in cols]),
        basins=[c[2] for c in cols],
    )


def vector_field_samples(model: ModelDef, s_range=DEFAULT_S_RANGE, v_range=DEFAULT_V_RANGE, mesh=DEFAULT_MESH, threads=None):
    """Quiver data ``(s, v_w, W, 0)``; wind is a parameter, so its component is zero."""
    s_axis = _axis(s_range, mesh[0], "slip")
    v_axis = _axis(v_range, mesh[1], "wind")
    cols = ordered_map(lambda v: np.asarray(net_acceleration(model, float(v), s_axis), dtype=float), v_axis, threads)
    return [
        (float(s), float(v), float(w), 0.0)
        for v, col in zip(v_axis, cols)
        for s, w in zip(s_axis, col)
    ]
