"""Golden CSV fixtures, one per standard study, and drift detection.

Layout::

    goldens/
      checksums.json      name -> {"command": [...], "files": {file: sha256}}
      <name>/<file>.csv   reviewable copies of the emitted tables
"""

from __future__ import annotations

import contextlib
import io
import json
import shutil
import tempfile
from dataclasses import dataclass
from pathlib import Path

from .errors import DriftError
from .io import sha256

GOLDEN_COMMANDS = {
    "torque_vs_slip": ["torque-curves", "--v", "1.0", "--s=-0.4:0.4:801"],
    "torque_vs_wind": ["torque-curves", "--v", "0.6,0.8,0.9,1.0,1.1", "--s", "0:0.4:400"],
    "equilibria": ["equilibria", "--v", "0.6,0.8,0.9,1.0,1.05,1.1,1.15"],
    "transient": ["simulate", "--v", "1.0", "--s-init", "0.001", "--step", "0.001", "--t-end", "5"],
    "shifted_field": ["lyapunov", "--v", "0.6,0.8,1.0", "--window=-0.05:0.05", "--n", "201"],
    "lyapunov": ["lyapunov", "--v", "0.6,1.0,1.05", "--window=-0.01:0.01", "--n", "401"],
    "region_of_attraction": ["roa", "--s", "0:0.5:15", "--v", "0.6:1.2:12", "--threads", "2"],
    "compensation": ["sweep-comp", "--yc", "0,0.1,0.2,0.25", "--s", "0:0.4:400", "--basin-v", "1.0"],
    "rotor_resistance": ["sweep-rotor", "--r", "1,2,3,4", "--s", "0:0.4:400", "--basin-v", "1.0,1.1"],
}


@dataclass(frozen=True)
class GoldenFixture:
    name: str
    command: list
    checksums: dict


def produce(name, workdir) -> GoldenFixture:
    from .cli import run

    workdir = Path(workdir)
    argv = GOLDEN_COMMANDS[name] + ["--output-dir", str(workdir)]
    with contextlib.redirect_stdout(io.StringIO()):
        code = run(argv)
    if code != 0:
        raise DriftError(f"golden command {name!r} exited with code {code}", changed=[name])
    files = sorted(p for p in workdir.iterdir() if p.suffix == ".csv")
    return GoldenFixture(name, GOLDEN_COMMANDS[name], {p.name: sha256(p) for p in files})


def regenerate_goldens(goldens_dir="goldens", update=False, names=None):
    """Re-run every fixture command and compare against the stored checksums.

    Returns ``{name: [changed files]}``. With ``update`` the fixtures are
    rewritten; otherwise any difference raises :class:`DriftError`.
    """
    goldens_dir = Path(goldens_dir)
    index_path = goldens_dir / "checksums.json"
    stored = json.loads(index_path.read_text()) if index_path.exists() else {}
    names = list(GOLDEN_COMMANDS) if names is None else list(names)

    report = {}
    index = dict(stored)
    with tempfile.TemporaryDirectory() as tmp:
        for name in names:
            work = Path(tmp) / name
            work.mkdir()
            fixture = produce(name, work)
            old = stored.get(name, {}).get("files", {})
            changed = sorted(
                f for f in set(old) | set(fixture.checksums) if old.get(f) != fixture.checksums.get(f)
            )
            report[name] = changed
            if update:
                target = goldens_dir / name
                if target.exists():
                    shutil.rmtree(target)
                target.mkdir(parents=True)
                for f in fixture.checksums:
                    shutil.copy2(work / f, target / f)
                index[name] = {"command": fixture.command, "files": fixture.checksums}

    if update:
        goldens_dir.mkdir(parents=True, exist_ok=True)
        index_path.write_text(json.dumps(index, indent=2, sort_keys=True) + "\n")
        return report

    drift = {k: v for k, v in report.items() if v}
    if drift:
        listing = "; ".join(f"{k}: {', '.join(v)}" for k, v in drift.items())
        raise DriftError(f"golden drift detected ({listing})", changed=sorted(f"{k}/{f}" for k, v in drift.items() for f in v))
    return report
