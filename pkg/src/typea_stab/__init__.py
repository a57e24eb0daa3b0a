"""Transient stability analysis of a fixed-speed (Type-A) wind turbine on an infinite bus."""

from .config import MachineParams, ModelDef, TurbineParams, load_model, reference_model, validate
from .dynamics import Trajectory, net_acceleration, shifted_field, simulate
from .equilibria import Equilibrium, find_equilibria, stable_equilibrium
from .errors import (
    DegenerateCircuit,
    DomainError,
    NoEquilibrium,
    ParseError,
    QuadratureError,
    ResonanceError,
    StabError,
    StabilityMismatch,
    StepError,
    ValidationError,
    WindowExceedsDomain,
)
from .machine import (
    TheveninEquivalent,
    electrical_torque,
    max_torque,
    pullout_slip,
    thevenin_reduce,
)

__version__ = "0.1.0"

__all__ = [
    "DegenerateCircuit",
    "DomainError",
    "Equilibrium",
    "MachineParams",
    "ModelDef",
    "NoEquilibrium",
    "ParseError",
    "QuadratureError",
    "ResonanceError",
    "StabError",
    "StabilityMismatch",
    "StepError",
    "TheveninEquivalent",
    "Trajectory",
    "TurbineParams",
    "ValidationError",
    "WindowExceedsDomain",
    "electrical_torque",
    "find_equilibria",
    "load_model",
    "max_torque",
    "net_acceleration",
    "pullout_slip",
    "reference_model",
    "shifted_field",
    "simulate",
    "stable_equilibrium",
    "thevenin_reduce",
    "validate",
]
