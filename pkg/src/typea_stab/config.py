"""Model parameters, validation and TOML config ingestion.

All quantities are per unit on the machine base with synchronous speed 1 pu,
so rotor speed is ``s + 1``. Capacitive compensation is stored as a shunt
susceptance ``y_c``; ``y_c = 0`` means no compensation.
"""

from __future__ import annotations

import math
import sys
from dataclasses import MISSING, dataclass, field, fields
from importlib import resources
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import ParseError, ValidationError

# relative guard band around 1 - x_m' * y_c = 0
RESONANCE_GUARD = 1e-6


@dataclass(frozen=True)
class MachineParams:
    r_s: float
    x_s: float
    x_m_prime: float
    r_r: float
    x_r: float
    x_l: float
    v_b: float = 1.0
    y_c: float = 0.0
    r_mult: float = 1.0

    @property
    def resonance_yc(self) -> float:
        """Susceptance at which compensation resonates with the magnetizing branch."""
        return 1.0 / self.x_m_prime


@dataclass(frozen=True)
class TurbineParams:
    lambda_0: float
    a: float
    b: float
    c: float
    inertia_m: float


@dataclass(frozen=True)
class ModelDef:
    machine: MachineParams
    turbine: TurbineParams
    slip_domain_upper: float = 0.5


@dataclass
class ValidationReport:
    violations: list[tuple[str, str]] = field(default_factory=list)
    warnings: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def fields(self) -> list[str]:
        return [name for name, _ in self.violations]

    def __str__(self) -> str:
        if self.ok and not self.warnings:
            return "pass"
        lines = ["pass" if self.ok else "fail"]
        lines += [f"  error {name}: {msg}" for name, msg in self.violations]
        lines += [f"  warning {name}: {msg}" for name, msg in self.warnings]
        return "\n".join(lines)


def is_resonant(x_m_prime: float, y_c: float) -> bool:
    return abs(1.0 - x_m_prime * y_c) < RESONANCE_GUARD


def _positive(report, section, obj, names):
    for name in names:
        value = getattr(obj, name)
        if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
            report.violations.append((f"{section}.{name}", f"must be finite and > 0, got {value!r}"))


def validate(model: ModelDef) -> ValidationReport:
    """Check every parameter invariant and collect violations by field name.

    Never raises for numeric input; non-finite values are reported as violations.
    """
    report = ValidationReport()
    m, t = model.machine, model.turbine
    _positive(report, "machine", m, ["r_s", "x_s", "x_m_prime", "r_r", "x_r", "x_l", "v_b"])

    if not (math.isfinite(m.y_c) and m.y_c >= 0):
        report.violations.append(("machine.y_c", f"must be finite and >= 0, got {m.y_c!r}"))
    elif math.isfinite(m.x_m_prime) and m.x_m_prime > 0:
        if is_resonant(m.x_m_prime, m.y_c):
            report.violations.append(
                ("machine.y_c", f"y_c = {m.y_c!r} resonates with x_m_prime (1/x_m_prime = {1 / m.x_m_prime!r})")
            )
        elif m.y_c > 1.0 / m.x_m_prime:
            report.warnings.append(
                ("machine.y_c", "above parallel resonance: effective magnetizing reactance is negative")
            )

    if not (math.isfinite(m.r_mult) and m.r_mult >= 1):
        report.violations.append(("machine.r_mult", f"must be finite and >= 1, got {m.r_mult!r}"))

    _positive(report, "turbine", t, ["lambda_0", "a", "b", "c", "inertia_m"])

    u = model.slip_domain_upper
    if not (math.isfinite(u) and u > 0):
        report.violations.append(("analysis.slip_domain_upper", f"must be finite and > 0, got {u!r}"))
    return report


def check(model: ModelDef) -> ModelDef:
    """Return ``model`` unchanged or raise :class:`ValidationError`."""
    report = validate(model)
    if not report.ok:
        detail = "; ".join(f"{name}: {msg}" for name, msg in report.violations)
        raise ValidationError(f"invalid model ({detail})", fields=report.fields)
    return model


def _read_section(doc, name, cls):
    raw = doc.get(name)
    if not isinstance(raw, dict):
        raise ParseError(f"missing section [{name}]")
    known = {f.name: f for f in fields(cls)}
    unknown = sorted(set(raw) - set(known))
    if unknown:
        raise ParseError(f"unknown key(s) in [{name}]: {', '.join(unknown)}")
    kwargs = {}
    for key, spec in known.items():
        if key not in raw:
            if spec.default is MISSING:
                raise ParseError(f"missing required key {name}.{key}")
            continue
        value = raw[key]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ParseError(f"{name}.{key} must be a number, got {value!r}")
        kwargs[key] = float(value)
    return cls(**kwargs)


def parse_model(text: str, strict: bool = True) -> ModelDef:
    """Parse config text into a :class:`ModelDef`, validated unless ``strict`` is off."""
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ParseError(f"malformed config: {exc}") from exc

    unknown = sorted(set(doc) - {"machine", "turbine", "analysis"})
    if unknown:
        raise ParseError(f"unknown section(s): {', '.join(unknown)}")

    machine = _read_section(doc, "machine", MachineParams)
    turbine = _read_section(doc, "turbine", TurbineParams)

    analysis = doc.get("analysis", {})
    if not isinstance(analysis, dict):
        raise ParseError("[analysis] must be a table")
    extra = sorted(set(analysis) - {"slip_domain_upper"})
    if extra:
        raise ParseError(f"unknown key(s) in [analysis]: {', '.join(extra)}")
    upper = analysis.get("slip_domain_upper", 0.5)
    if isinstance(upper, bool) or not isinstance(upper, (int, float)):
        raise ParseError(f"analysis.slip_domain_upper must be a number, got {upper!r}")

    model = ModelDef(machine, turbine, float(upper))
    return check(model) if strict else model


def load_model(path, strict: bool = True) -> ModelDef:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return parse_model(text, strict)


def dumps_model(model: ModelDef) -> str:
    """Serialize to the config format; floats use ``repr`` so parsing round-trips exactly."""
    out = []
    for section, obj in (("machine", model.machine), ("turbine", model.turbine)):
        out.append(f"[{section}]")
        out += [f"{f.name} = {float(getattr(obj, f.name))!r}" for f in fields(obj)]
        out.append("")
    out.append("[analysis]")
    out.append(f"slip_domain_upper = {float(model.slip_domain_upper)!r}")
    return "\n".join(out) + "\n"


def bundled_model_path():
    """Traversable pointing at the bundled ``paper.toml`` fixture."""
    return resources.files("typea_stab") / "data" / "paper.toml"


def reference_model() -> ModelDef:
    """The bundled reference parameter set (uncompensated machine, M = 0.8)."""
    return parse_model(bundled_model_path().read_text(encoding="utf-8"))
