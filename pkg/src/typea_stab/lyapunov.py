"""Integral Lyapunov function around the stable slip equilibrium.

With ``f(x)`` the slip dynamics in the displacement ``x = s - s0``,
``L(x) = -int_0^x f`` and its derivative along trajectories is ``-f(x)^2``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import ModelDef
from .dynamics import shifted_field
from .equilibria import stable_equilibrium
from .errors import WindowExceedsDomain
from .quadrature import adaptive_simpson

QUAD_TOL = 1e-10


def lyapunov_value(model: ModelDef, v_w, s0, x, tol=QUAD_TOL):
    if x == 0:
        return 0.0
    return -adaptive_simpson(lambda xp: shifted_field(model, v_w, s0, xp), 0.0, x, tol)


def lyapunov_derivative(model: ModelDef, v_w, s0, x):
    fx = shifted_field(model, v_w, s0, x)
    return -(fx * fx)


def lyapunov_profile(model: ModelDef, v_w, s0, xs, tol=QUAD_TOL):
    """``L`` at many points, integrating outward from 0 one segment at a time.

    Each side of the origin gets a total error budget of ``tol``, split across
    segments in proportion to their length.
    """
    xs = np.asarray(xs, dtype=float)
    out = np.zeros_like(xs)
    extent = float(np.max(np.abs(xs))) if xs.size else 0.0
    if extent == 0.0:
        return out

    def field(xp):
        return shifted_field(model, v_w, s0, xp)

    for sign in (1.0, -1.0):
        idx = np.nonzero(sign * xs > 0)[0]
        idx = idx[np.argsort(sign * xs[idx], kind="stable")]
        prev, acc = 0.0, 0.0
        for i in idx:
            x = float(xs[i])
            if x != prev:
                seg_tol = tol * abs(x - prev) / extent
                acc -= adaptive_simpson(field, prev, x, seg_tol)
                prev = x
            out[i] = acc
    return out


@dataclass
class LyapunovReport:
    v_w: float
    s0: float
    window: tuple[float, float]
    l_zero: float
    positivity_ok: bool
    derivative_ok: bool
    x: np.ndarray
    L: np.ndarray
    dLdt: np.ndarray
    oddness_defect: float
    # x f(x) < 0 at every sampled x != 0; false once the window crosses another equilibrium
    restoring_ok: bool = True

    @property
    def samples(self):
        return list(zip(self.x.tolist(), self.L.tolist(), self.dLdt.tolist()))

    @property
    def ok(self) -> bool:
        return self.positivity_ok and self.derivative_ok


def oddness_defect(model: ModelDef, v_w, s0, half_width, n=201):
    """``max |f(x) + f(-x)|`` over ``[0, half_width]``; zero only for an odd field."""
    if half_width <= 0:
        return 0.0
    xs = np.linspace(0.0, half_width, n)
    return float(np.max(np.abs(shifted_field(model, v_w, s0, xs) + shifted_field(model, v_w, s0, -xs))))


def verify_candidate(model: ModelDef, v_w, window=(-0.01, 0.01), n_samples=401, tol=QUAD_TOL):
    """Sample ``L`` and ``dL/dt`` on a uniform grid and check the Lyapunov sign conditions.

    A failed positivity flag is a result, not an error: it is expected when
    the window reaches past the unstable equilibrium.
    """
    lo, hi = float(window[0]), float(window[1])
    if not lo <= 0.0 <= hi:
        raise ValueError(f"window must contain 0, got ({lo}, {hi})")
    s0 = stable_equilibrium(model, v_w).s_star
    if s0 + lo <= -1.0 or s0 + hi > model.slip_domain_upper:
        raise WindowExceedsDomain(
            f"window ({lo}, {hi}) around s0 = {s0:.6g} leaves the slip range (-1, {model.slip_domain_upper}]"
        )

    if lo == hi:
        xs = np.zeros(1)
    else:
        xs = np.linspace(lo, hi, n_samples)
        xs[np.abs(xs) <= 1e-12 * (hi - lo)] = 0.0

    L = lyapunov_profile(model, v_w, s0, xs, tol)
    fx = np.asarray(shifted_field(model, v_w, s0, xs), dtype=float)
    dLdt = -(fx * fx)
    nonzero = xs != 0.0
    return LyapunovReport(
        v_w=v_w,
        s0=s0,
        window=(lo, hi),
        l_zero=lyapunov_value(model, v_w, s0, 0.0),
        positivity_ok=bool(np.all(L[nonzero] > 0)),
        derivative_ok=bool(np.all(dLdt <= 0)),
        x=xs,
        L=L,
        dLdt=dLdt,
        oddness_defect=oddness_defect(model, v_w, s0, min(-lo, hi)),
        restoring_ok=bool(np.all(xs[nonzero] * fx[nonzero] < 0)),
    )
