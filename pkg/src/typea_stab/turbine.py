"""Per-unit aerodynamic model of the turbine rotor.

Power coefficient fit: ``C_p(lambda) = (a/lambda - b) exp(-c/lambda)`` with
tip-speed ratio ``lambda = lambda_0 v_w / (s + 1)``. C_p is not clamped; it
goes negative once ``lambda > a/b``.
"""

from __future__ import annotations

import math

import numpy as np

from .config import TurbineParams
from .errors import DomainError


def _check_point(v_w, s):
    if np.isscalar(v_w) and np.isscalar(s):
        if not v_w > 0:
            raise DomainError(f"wind velocity must be > 0, got {v_w!r}")
        if not s > -1:
            raise DomainError(f"slip must be > -1 (positive rotor speed), got {s!r}")
        return
    if np.any(~(np.asarray(v_w) > 0)):
        raise DomainError(f"wind velocity must be > 0, got {v_w!r}")
    if np.any(~(np.asarray(s) > -1)):
        raise DomainError(f"slip must be > -1 (positive rotor speed), got {s!r}")


def tip_speed_ratio(tp: TurbineParams, v_w, s):
    _check_point(v_w, s)
    return tp.lambda_0 * v_w / (s + 1.0)


def power_coefficient(tp: TurbineParams, lam):
    if np.isscalar(lam):
        if not lam > 0:
            raise DomainError(f"tip-speed ratio must be > 0, got {lam!r}")
        return (tp.a / lam - tp.b) * math.exp(-tp.c / lam)
    lam = np.asarray(lam, dtype=float)
    if np.any(~(lam > 0)):
        raise DomainError("tip-speed ratio must be > 0")
    return (tp.a / lam - tp.b) * np.exp(-tp.c / lam)


def mechanical_power(tp: TurbineParams, v_w, s):
    return v_w**3 * power_coefficient(tp, tip_speed_ratio(tp, v_w, s))


def mechanical_torque(tp: TurbineParams, v_w, s):
    return mechanical_power(tp, v_w, s) / (s + 1.0)


def positivity_condition(tp: TurbineParams, v_w, s):
    """True where ``a (s+1) / (lambda_0 v_w) - b >= 0``, which guarantees P >= 0."""
    _check_point(v_w, s)
    return tp.a * (s + 1.0) / (tp.lambda_0 * v_w) - tp.b >= 0


def optimal_tip_speed_ratio(tp: TurbineParams) -> float:
    """Maximizer of the C_p fit, ``a c / (a + b c)``. Not necessarily ``lambda_0``."""
    return tp.a * tp.c / (tp.a + tp.b * tp.c)
