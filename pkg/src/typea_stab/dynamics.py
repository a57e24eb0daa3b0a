"""Slip swing equation ``M ds/dt = T_m(s) - T_e(s)`` and its fixed-step integration."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .config import ModelDef
from .errors import StepError
from .machine import electrical_torque, thevenin_reduce
from .turbine import mechanical_torque

DIVERGENCE_FLOOR = -0.1
CONVERGENCE_RATE = 1e-9
CONVERGENCE_TOL = 1e-6


def net_torque(model: ModelDef, v_w, s):
    """Accelerating torque ``T_m - T_e`` (pu); scalar or array in ``s``."""
    m = model.machine
    th = thevenin_reduce(m)
    return mechanical_torque(model.turbine, v_w, s) - electrical_torque(th, m.r_r, m.r_mult, s)


def net_acceleration(model: ModelDef, v_w, s):
    return net_torque(model, v_w, s) / model.turbine.inertia_m


def shifted_field(model: ModelDef, v_w, s0, x):
    """Right-hand side of the dynamics written in the displacement ``x = s - s0``."""
    return net_acceleration(model, v_w, s0 + x)


@dataclass(frozen=True)
class Outcome:
    kind: str  # "converged" | "diverged" | "undecided"
    slip: float | None = None
    direction: str | None = None  # "up" | "down"

    @classmethod
    def converged(cls, slip):
        return cls("converged", slip=slip)

    @classmethod
    def diverged(cls, direction):
        return cls("diverged", direction=direction)

    @classmethod
    def undecided(cls):
        return cls("undecided")

    def __str__(self):
        if self.kind == "converged":
            return f"converged({self.slip:.12g})"
        if self.kind == "diverged":
            return f"diverged({self.direction})"
        return "undecided"


@dataclass
class Trajectory:
    t: np.ndarray
    s: np.ndarray
    outcome: Outcome
    step: float

    @property
    def samples(self):
        return list(zip(self.t.tolist(), self.s.tolist()))

    def to_csv(self, path):
        from .io import write_table

        write_table(Path(path), ["t", "s"], zip(self.t, self.s))


def rk4_step(f, y, h):
    k1 = f(y)
    k2 = f(y + 0.5 * h * k1)
    k3 = f(y + 0.5 * h * k2)
    k4 = f(y + h * k3)
    return y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def rk4_integrate(f, y0, h, n_steps):
    """Plain RK4 for ``n_steps`` steps without any stopping logic."""
    ys = np.empty(n_steps + 1)
    ys[0] = y = y0
    for k in range(n_steps):
        y = rk4_step(f, y, h)
        ys[k + 1] = y
    return ys


def simulate(model: ModelDef, v_w, s_init, step=1e-3, t_end=50.0, equilibria=None):
    """Integrate the slip dynamics with classic RK4 at a fixed step.

    Stops early when the slip settles on a known equilibrium
    (``|ds/dt| < 1e-9`` and within ``1e-6`` of it) or leaves the box
    ``[-0.1, slip_domain_upper]``. ``equilibria`` is a list of equilibrium
    slips; when omitted it is computed from the model.
    """
    if not step > 0:
        raise StepError(f"step must be > 0, got {step!r}")
    if not t_end >= step:
        raise StepError(f"t_end ({t_end!r}) must be >= step ({step!r})")

    if equilibria is None:
        from .equilibria import find_equilibria
        from .errors import NoEquilibrium

        try:
            equilibria = [eq.s_star for eq in find_equilibria(model, v_w)]
        except NoEquilibrium:
            equilibria = []
    targets = np.asarray(sorted(equilibria), dtype=float)

    upper = model.slip_domain_upper
    n_steps = int(round(t_end / step))

    def f(y):
        return net_acceleration(model, v_w, y)

    def settled(y, rate):
        if abs(rate) >= CONVERGENCE_RATE or targets.size == 0:
            return None
        i = int(np.argmin(np.abs(targets - y)))
        return float(targets[i]) if abs(targets[i] - y) <= CONVERGENCE_TOL else None

    ss = [float(s_init)]
    y = float(s_init)
    outcome = Outcome.undecided()
    for _ in range(n_steps + 1):
        if y > upper or y < DIVERGENCE_FLOOR:
            outcome = Outcome.diverged("up" if y > upper else "down")
            break
        k1 = f(y)
        hit = settled(y, k1)
        if hit is not None:
            outcome = Outcome.converged(hit)
            break
        if len(ss) > n_steps:
            break
        k2 = f(y + 0.5 * step * k1)
        k3 = f(y + 0.5 * step * k2)
        k4 = f(y + step * k3)
        y = y + step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        ss.append(y)

    s_arr = np.asarray(ss)
    t_arr = np.arange(s_arr.size) * step
    return Trajectory(t=t_arr, s=s_arr, outcome=outcome, step=step)
