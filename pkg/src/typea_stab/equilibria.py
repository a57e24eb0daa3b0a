"""Equilibria of the slip dynamics for a fixed wind velocity."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import ModelDef
from .dynamics import net_torque
from .errors import DomainError, NoEquilibrium, StabilityMismatch
from .machine import pullout_slip, thevenin_reduce

SCAN_FLOOR = 1e-6
SCAN_POINTS = 2000
BISECT_WIDTH = 1e-12
SLOPE_STEP = 1e-8
MAX_WIND = 2.0


@dataclass(frozen=True)
class Equilibrium:
    s_star: float
    v_w: float
    stability: str  # "stable" | "unstable"
    residual: float

    @property
    def stable(self) -> bool:
        return self.stability == "stable"


def bisect(g, lo, hi, glo, width=BISECT_WIDTH):
    """Shrink a sign-change bracket of ``g`` until it is narrower than ``width``."""
    while hi - lo >= width:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        gm = g(mid)
        if gm == 0.0:
            return mid
        if (gm > 0) == (glo > 0):
            lo, glo = mid, gm
        else:
            hi = mid
    ghi = g(hi)
    return lo if abs(glo) <= abs(ghi) else hi


def net_torque_slope(model: ModelDef, v_w, s, h=SLOPE_STEP):
    return (net_torque(model, v_w, s + h) - net_torque(model, v_w, s - h)) / (2.0 * h)


def find_equilibria(model: ModelDef, v_w, n_grid=SCAN_POINTS):
    """All roots of ``T_m - T_e`` on ``[1e-6, slip_domain_upper]``, ascending.

    Sign changes on an ``n_grid`` point scan are refined by bisection and
    classified by the sign of the slope of ``T_m - T_e`` (negative: stable).
    """
    if not 0 < v_w <= MAX_WIND:
        raise DomainError(f"wind velocity must be in (0, {MAX_WIND}], got {v_w!r}")

    def g(s):
        return net_torque(model, v_w, s)

    grid = np.linspace(SCAN_FLOOR, model.slip_domain_upper, n_grid)
    values = g(grid)
    roots = []
    for i in range(n_grid - 1):
        g0, g1 = values[i], values[i + 1]
        if g0 == 0.0:
            if not roots or roots[-1] != grid[i]:
                roots.append(float(grid[i]))
            continue
        if g1 == 0.0:
            roots.append(float(grid[i + 1]))
        elif (g0 > 0) != (g1 > 0):
            roots.append(bisect(g, float(grid[i]), float(grid[i + 1]), float(g0)))
    if values[-1] == 0.0 and (not roots or roots[-1] != grid[-1]):
        roots.append(float(grid[-1]))

    if not roots:
        raise NoEquilibrium(f"T_m - T_e has no sign change on the domain at v_w = {v_w!r}", v_w=v_w)

    result = []
    for r in roots:
        slope = net_torque_slope(model, v_w, r)
        result.append(
            Equilibrium(
                s_star=r,
                v_w=v_w,
                stability="stable" if slope < 0 else "unstable",
                residual=abs(g(r)),
            )
        )
    return result


def stable_equilibrium(model: ModelDef, v_w) -> Equilibrium:
    """The lowest equilibrium, which must be stable and below the pull-out slip."""
    lowest = find_equilibria(model, v_w)[0]
    m = model.machine
    s_max = pullout_slip(thevenin_reduce(m), m.r_r, m.r_mult)
    if not lowest.stable or not 0 < lowest.s_star < s_max:
        raise StabilityMismatch(
            f"lowest equilibrium at v_w = {v_w!r} is s = {lowest.s_star:.6g} ({lowest.stability}), "
            f"expected a stable root in (0, {s_max:.6g})"
        )
    return lowest
