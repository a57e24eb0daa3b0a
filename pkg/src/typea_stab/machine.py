"""Induction machine: Thevenin reduction and the electrical torque-slip curve.

The stator resistance is kept outside the reduced source, so the reduced
circuit is ``v_th`` behind ``j x_th`` feeding ``r_s`` and the slip-dependent
rotor resistance ``-r_r/s`` in series. Electrical torque equals rotor air-gap
power in per unit (synchronous speed 1 pu).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .config import RESONANCE_GUARD, MachineParams
from .errors import DegenerateCircuit, ResonanceError


@dataclass(frozen=True)
class TheveninEquivalent:
    v_th: float
    x_th: float
    x_m_eff: float
    r_s: float


def compensated_reactance(x_m_prime: float, y_c: float) -> float:
    """Magnetizing reactance in parallel with a shunt susceptance ``y_c``.

    Equivalent to ``x_m' x_c / (x_m' + x_c)`` with ``x_c = -1/y_c``.
    """
    denom = 1.0 - x_m_prime * y_c
    if abs(denom) < RESONANCE_GUARD:
        raise ResonanceError(
            f"y_c = {y_c!r} is within the resonance guard band of 1/x_m_prime = {1.0 / x_m_prime!r}",
            y_c=y_c,
        )
    return x_m_prime / denom


@lru_cache(maxsize=256)
def thevenin_reduce(machine: MachineParams) -> TheveninEquivalent:
    x_m = compensated_reactance(machine.x_m_prime, machine.y_c)
    total = x_m + machine.x_l
    if total == 0.0 or abs(total) < 1e-12 * max(abs(x_m), machine.x_l):
        raise DegenerateCircuit(f"x_m_eff + x_l = {total!r}: no finite Thevenin source")
    v_th = machine.v_b * x_m / total
    x_th = x_m * machine.x_l / total + machine.x_s + machine.x_r
    return TheveninEquivalent(v_th=v_th, x_th=x_th, x_m_eff=x_m, r_s=machine.r_s)


def electrical_torque(th: TheveninEquivalent, r_r: float, r_mult: float, s):
    """Electrical torque (pu) at slip ``s``; scalar or array.

    Positive for generation (s > 0), negative for motoring (s < 0). The s = 0
    singularity is replaced by its limit, 0.
    """
    rr = r_mult * r_r
    if np.isscalar(s):
        if s == 0:
            return 0.0
        u = rr / s
        return th.v_th * th.v_th * u / ((th.r_s - u) ** 2 + th.x_th * th.x_th)

    s = np.asarray(s, dtype=float)
    zero = s == 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        u = rr / np.where(zero, 1.0, s)
        te = th.v_th**2 * u / ((th.r_s - u) ** 2 + th.x_th**2)
    return np.where(zero, 0.0, te)


def pullout_slip(th: TheveninEquivalent, r_r: float, r_mult: float) -> float:
    """Slip of maximum electrical torque; exactly proportional to ``r_mult``."""
    return r_mult * (r_r / math.sqrt(th.r_s**2 + th.x_th**2))


def max_torque(th: TheveninEquivalent, r_r: float, r_mult: float) -> float:
    # depends on rotor resistance only through r_mult * r_r / s, so the
    # value at the pull-out slip does not depend on r_mult
    return electrical_torque(th, r_r, r_mult, pullout_slip(th, r_r, r_mult))


def machine_torque(machine: MachineParams, s):
    """Electrical torque straight from machine parameters."""
    return electrical_torque(thevenin_reduce(machine), machine.r_r, machine.r_mult, s)
