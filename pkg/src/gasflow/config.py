"""JSON scenario files and CSV output for the command-line front end."""
from __future__ import annotations

import csv
import json
import math
import os
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError, InvalidParameter
from .homentropic import ConstraintConstants, constants_from_model, s0_from_C5
from .thermo import ThermoModel

SCHEMA_VERSION = 1

_KNOWN = {
    "version", "model", "n", "R", "s0", "C5", "C2", "alpha1", "alpha2", "alpha3",
    "rho_range", "samples", "times", "t_max", "output_dir", "T_range", "isotherms",
}


@dataclass
class ScenarioConfig:
    """One run of the CLI.  Defaults reproduce the reference van der Waals case."""

    model: str = "vdw"
    n: float = 3.0
    R: float = 1.0
    s0: float | None = None
    C5: float | None = None
    C2: float = 1.0
    alpha1: float = 1.0
    alpha2: float = 2.0
    alpha3: float = 1.0
    rho_range: tuple = (0.01, 2.95)
    samples: int = 2001
    times: list = field(default_factory=lambda: [0.0, 30.0])
    t_max: float = 32.53
    output_dir: str = "out"
    T_range: tuple = (0.85, 1.0)
    isotherms: list = field(default_factory=lambda: [0.85, 0.9, 0.95, 1.0, 1.05])
    version: int = SCHEMA_VERSION

    def __post_init__(self):
        if self.s0 is None and self.C5 is None:
            self.C5 = 240.0

    # -- derived objects -------------------------------------------------
    def thermo_model(self) -> ThermoModel:
        if self.model == "vdw":
            return ThermoModel.van_der_waals(self.n)
        return ThermoModel.ideal(self.n, self.R)

    def entropy_level(self) -> float:
        if self.s0 is not None:
            return float(self.s0)
        return s0_from_C5(self.thermo_model(), self.C5)

    def constants(self) -> ConstraintConstants:
        return constants_from_model(
            self.thermo_model(), self.entropy_level(),
            C2=self.C2, alpha1=self.alpha1, alpha2=self.alpha2, alpha3=self.alpha3,
        )

    # -- validation ------------------------------------------------------
    def validate(self):
        if self.version != SCHEMA_VERSION:
            raise ConfigError(f"unsupported config version {self.version!r}")
        if self.model not in ("vdw", "ideal"):
            raise ConfigError(f"model must be 'vdw' or 'ideal', got {self.model!r}")
        if (self.s0 is None) == (self.C5 is None):
            raise ConfigError("give exactly one of s0 and C5")
        for name in ("n", "R", "C2", "alpha1", "alpha2", "alpha3", "t_max"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(f"{name} must be finite")
        if not (self.n > 0 and self.R > 0):
            raise ConfigError("n and R must be positive")
        if self.alpha1 == 0:
            raise ConfigError("alpha1 must be non-zero")
        if self.C5 is not None and not self.C5 > 0:
            raise ConfigError("C5 must be positive")
        lo, hi = self.rho_range
        if not 0 < lo < hi:
            raise ConfigError(f"rho_range must satisfy 0 < lo < hi, got {self.rho_range}")
        if self.model == "vdw" and not hi < 3:
            raise ConfigError("van der Waals densities must stay below 3")
        if self.samples < 2:
            raise ConfigError("samples must be at least 2")
        Tlo, Thi = self.T_range
        if not 0 < Tlo <= Thi <= 1:
            raise ConfigError(f"T_range must satisfy 0 < lo <= hi <= 1, got {self.T_range}")
        if any(not T > 0 for T in self.isotherms):
            raise ConfigError("isotherm temperatures must be positive")
        try:
            self.constants()
        except InvalidParameter as exc:
            raise ConfigError(str(exc)) from exc
        return self

    @classmethod
    def from_dict(cls, data: dict) -> "ScenarioConfig":
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        unknown = set(data) - _KNOWN
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        if "version" not in data:
            raise ConfigError("config is missing 'version'")
        kw = dict(data)
        try:
            for key in ("rho_range", "T_range"):
                if key in kw:
                    kw[key] = tuple(float(v) for v in kw[key])
                    if len(kw[key]) != 2:
                        raise ConfigError(f"{key} needs two entries")
            for key in ("times", "isotherms"):
                if key in kw:
                    kw[key] = [float(v) for v in kw[key]]
            for key in ("n", "R", "s0", "C5", "C2", "alpha1", "alpha2", "alpha3", "t_max"):
                if kw.get(key) is not None:
                    kw[key] = float(kw[key])
            if "samples" in kw:
                if isinstance(kw["samples"], bool) or int(kw["samples"]) != kw["samples"]:
                    raise ConfigError("samples must be an integer")
                kw["samples"] = int(kw["samples"])
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"malformed config value: {exc}") from exc
        return cls(**kw).validate()

    @classmethod
    def load(cls, path) -> "ScenarioConfig":
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON in {path}: {exc}") from exc
        return cls.from_dict(data)


def thread_cap() -> int:
    """Worker limit from GASFLOW_THREADS (default 1, i.e. serial)."""
    raw = os.environ.get("GASFLOW_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ConfigError(f"GASFLOW_THREADS must be an integer, got {raw!r}") from None


def _fmt(v):
    if isinstance(v, str):
        return v
    if isinstance(v, (int,)) and not isinstance(v, bool):
        return str(v)
    return "%.17g" % float(v)


def write_csv(path, header, rows):
    """Write rows with a one-line header and round-trip-exact floats."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])
    return path
