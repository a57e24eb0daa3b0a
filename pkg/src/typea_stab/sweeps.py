"""Torque-curve families and basin sensitivity to compensation and rotor resistance."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .config import ModelDef, check, is_resonant
from .errors import NoEquilibrium, ResonanceError, StabilityMismatch
from .machine import electrical_torque, pullout_slip, thevenin_reduce
from .parallel import ordered_map
from .roa import basin
from .turbine import mechanical_torque

DEFAULT_WIND = (0.6, 0.8, 0.9, 1.0, 1.1)
DEFAULT_YC = (0.0, 0.1, 0.2, 0.25)
# integer steps of a 0..3 compensation sweep; all but 0 lie above resonance
WIDE_YC = (0.0, 1.0, 2.0, 3.0)
DEFAULT_R = (1.0, 2.0, 3.0, 4.0)
DEFAULT_S_RANGE = (0.0, 0.4, 400)


@dataclass(frozen=True)
class CurveSummary:
    s_max: float
    t_max: float
    s_max_grid: float
    t_max_grid: float
    extrapolated: bool = False
    # closed form and grid argmax disagree by more than one grid step
    grid_disagrees: bool = False
    above_resonance: bool = False


@dataclass
class CurveFamily:
    parameter_name: str
    parameter_values: list
    s_axis: np.ndarray
    curves: np.ndarray  # (n_curves, n_s)
    summary: list

    def labels(self):
        return [v if isinstance(v, str) else f"{v:.12g}" for v in self.parameter_values]

    def records(self):
        for label, curve in zip(self.labels(), self.curves):
            for s, t in zip(self.s_axis, curve):
                yield (label, float(s), float(t))

    def summary_records(self):
        for label, row in zip(self.labels(), self.summary):
            yield (label, row.s_max, row.t_max)

    def split(self):
        """(below-resonance family, above-resonance family); the second may be empty."""
        below = [k for k, row in enumerate(self.summary) if not row.above_resonance]
        above = [k for k, row in enumerate(self.summary) if row.above_resonance]
        return self._subset(below), self._subset(above)

    def _subset(self, idx):
        return CurveFamily(
            self.parameter_name,
            [self.parameter_values[k] for k in idx],
            self.s_axis,
            self.curves[idx] if idx else np.empty((0, self.s_axis.size)),
            [self.summary[k] for k in idx],
        )


def slip_axis(s_range=DEFAULT_S_RANGE):
    lo, hi, n = s_range
    return np.linspace(float(lo), float(hi), int(n))


def _grid_peak(s_axis, curve):
    k = int(np.argmax(curve))
    return float(s_axis[k]), float(curve[k])


def _te_summary(machine, s_axis, curve, above=False):
    th = thevenin_reduce(machine)
    s_max = pullout_slip(th, machine.r_r, machine.r_mult)
    t_max = electrical_torque(th, machine.r_r, machine.r_mult, s_max)
    s_grid, t_grid = _grid_peak(s_axis, curve)
    step = float(s_axis[1] - s_axis[0]) if s_axis.size > 1 else 0.0
    extrapolated = not s_axis[0] <= s_max <= s_axis[-1]
    return CurveSummary(
        s_max=s_max,
        t_max=t_max,
        s_max_grid=s_grid,
        t_max_grid=t_grid,
        extrapolated=bool(extrapolated),
        grid_disagrees=bool(not extrapolated and abs(s_grid - s_max) > step * (1 + 1e-9)),
        above_resonance=above,
    )


def _te_curve(machine, s_axis):
    return np.asarray(electrical_torque(thevenin_reduce(machine), machine.r_r, machine.r_mult, s_axis), dtype=float)


def torque_family_wind(model: ModelDef, v_list=DEFAULT_WIND, s_range=DEFAULT_S_RANGE):
    """The electrical torque curve followed by one mechanical torque curve per wind velocity."""
    v_list = [float(v) for v in v_list]
    if not v_list or min(v_list) <= 0:
        raise ValueError("wind list must be non-empty with all values > 0")
    s_axis = slip_axis(s_range)
    m = model.machine
    te = _te_curve(m, s_axis)
    curves = [te] + [np.asarray(mechanical_torque(model.turbine, v, s_axis), dtype=float) for v in v_list]
    summary = [_te_summary(m, s_axis, te)]
    for curve in curves[1:]:
        s_grid, t_grid = _grid_peak(s_axis, curve)
        summary.append(CurveSummary(s_grid, t_grid, s_grid, t_grid))
    labels = ["Te"] + [f"Tm@{v:.12g}" for v in v_list]
    return CurveFamily("v_w", labels, s_axis, np.vstack(curves), summary)


def _compensated(model, y_c, allow_above_resonance):
    m = model.machine
    if is_resonant(m.x_m_prime, y_c):
        raise ResonanceError(
            f"y_c = {y_c!r} is within the resonance guard band of 1/x_m_prime = {m.resonance_yc!r}", y_c=y_c
        )
    above = y_c > m.resonance_yc
    if above and not allow_above_resonance:
        raise ResonanceError(
            f"y_c = {y_c!r} lies above resonance (1/x_m_prime = {m.resonance_yc!r}); pass allow_above_resonance",
            y_c=y_c,
        )
    return check(replace(model, machine=replace(m, y_c=float(y_c)))), above


def compensation_sweep(model: ModelDef, yc_list=DEFAULT_YC, s_range=DEFAULT_S_RANGE, allow_above_resonance=False, threads=None):
    """One electrical torque curve per compensation susceptance.

    Values above resonance need ``allow_above_resonance``; they are tagged in the
    summary so :meth:`CurveFamily.split` can separate them.
    """
    s_axis = slip_axis(s_range)
    variants = [_compensated(model, float(y), allow_above_resonance) for y in yc_list]
    curves = ordered_map(lambda mv: _te_curve(mv[0].machine, s_axis), variants, threads)
    summary = [_te_summary(mv.machine, s_axis, c, above) for (mv, above), c in zip(variants, curves)]
    return CurveFamily("y_c", [float(y) for y in yc_list], s_axis, np.vstack(curves), summary)


def _with_rotor(model, r):
    return check(replace(model, machine=replace(model.machine, r_mult=float(r))))


def rotor_resistance_sweep(model: ModelDef, r_list=DEFAULT_R, s_range=DEFAULT_S_RANGE, threads=None):
    """One electrical torque curve per rotor-resistance multiplier (slip-ring rotor)."""
    s_axis = slip_axis(s_range)
    variants = [_with_rotor(model, r) for r in r_list]
    curves = ordered_map(lambda mv: _te_curve(mv.machine, s_axis), variants, threads)
    summary = [_te_summary(mv.machine, s_axis, c) for mv, c in zip(variants, curves)]
    return CurveFamily("r_mult", [float(r) for r in r_list], s_axis, np.vstack(curves), summary)


def basin_vs_parameter(model: ModelDef, parameter, values, v_w, allow_above_resonance=False):
    """Basin upper edge at ``v_w`` for each compensation (``"y_c"``) or rotor multiplier (``"r_mult"``)."""
    out = []
    for value in values:
        if parameter == "y_c":
            variant, _ = _compensated(model, float(value), allow_above_resonance)
        elif parameter == "r_mult":
            variant = _with_rotor(model, value)
        else:
            raise ValueError(f"unknown parameter {parameter!r}; expected 'y_c' or 'r_mult'")
        try:
            upper = basin(variant, v_w).upper
        except (NoEquilibrium, StabilityMismatch) as exc:
            raise NoEquilibrium(f"{parameter} = {value!r}: {exc}", v_w=v_w, parameter_value=value) from exc
        out.append((float(value), upper))
    return out
