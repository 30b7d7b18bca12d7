"""System configuration, unit helpers and the plain-text config format.

The config file is ``key = value`` per line, ``#`` starts a comment, and
unknown keys are rejected.  Powers are given in dBm; everything downstream
works in watts.
"""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, fields

from .errors import InvalidConfig

SPEED_OF_LIGHT = 299_792_458.0
K_MAX = 10**6


def dbm_to_watt(dbm):
    return 10.0 ** ((dbm - 30.0) / 10.0)


def watt_to_dbm(watt):
    return 10.0 * math.log10(watt) + 30.0


@dataclass(frozen=True)
class SystemConfig:
    """Radio, geometry, harvesting and protocol parameters.

    Defaults are the reference simulation setting: 2.7 GHz carrier,
    n_eff = 1.4, alpha = 0.01 Np/m, a 10 m x 10 m user region, waveguides
    at h = 3 m separated by L = 4 m, tau = 0.4, eta = 0.8, R = 2.5 BPCU,
    noise at -90 dBm and K = 50 quadrature nodes.  ``Ps_dBm`` has no
    reference value; 30 dBm is used.
    """

    fc: float = 2.7e9
    n_eff: float = 1.4
    alpha: float = 0.01
    h: float = 3.0
    L: float = 4.0
    Dx: float = 10.0
    Dy: float = 10.0
    tau: float = 0.4
    eta: float = 0.8
    Ps_dBm: float = 30.0
    sigma2_dBm: float = -90.0
    R: float = 2.5
    T: float = 1.0
    N1: int = 1
    N2: int = 1
    K: int = 50

    def __post_init__(self):
        checks = (
            ("fc", self.fc > 0, "must be > 0"),
            ("n_eff", self.n_eff >= 1, "must be >= 1"),
            ("alpha", self.alpha >= 0, "must be >= 0"),
            ("h", self.h > 0, "must be > 0"),
            ("L", self.L >= 0, "must be >= 0"),
            ("Dx", self.Dx > 0, "must be > 0"),
            ("Dy", self.Dy > 0, "must be > 0"),
            ("tau", 0 < self.tau < 1, "must lie in (0, 1)"),
            ("eta", 0 < self.eta <= 1, "must lie in (0, 1]"),
            ("R", self.R > 0, "must be > 0"),
            ("T", self.T > 0, "must be > 0"),
            ("N1", self.N1 >= 1, "must be >= 1"),
            ("N2", self.N2 >= 1, "must be >= 1"),
            ("K", 1 <= self.K <= K_MAX, f"must lie in [1, {K_MAX}]"),
        )
        for name, ok, msg in checks:
            value = getattr(self, name)
            if isinstance(value, float) and not math.isfinite(value):
                raise InvalidConfig(name, f"must be finite, got {value!r}")
            if not ok:
                raise InvalidConfig(name, f"{msg}, got {value!r}")
        for name in ("N1", "N2", "K"):
            if int(getattr(self, name)) != getattr(self, name):
                raise InvalidConfig(name, "must be an integer")
        for name in ("Ps_dBm", "sigma2_dBm"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidConfig(name, "must be finite")

    @property
    def lossless(self):
        return self.alpha == 0

    @property
    def Ps(self):
        """PS transmit power in watts."""
        return dbm_to_watt(self.Ps_dBm)

    @property
    def sigma2(self):
        """Noise power in watts."""
        return dbm_to_watt(self.sigma2_dBm)

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True)
class UserPosition:
    x_m: float
    y_m: float

    def check_bounds(self, cfg: SystemConfig):
        if not (0 <= self.x_m <= cfg.Dx and -cfg.Dy / 2 <= self.y_m <= cfg.Dy / 2):
            raise InvalidConfig("user", f"({self.x_m}, {self.y_m}) outside the user region")
        return self


@dataclass(frozen=True)
class PinchPositions:
    x1_pin: float
    x2_pin: float

    def check_bounds(self, cfg: SystemConfig):
        for name in ("x1_pin", "x2_pin"):
            if not 0 <= getattr(self, name) <= cfg.Dx:
                raise InvalidConfig(name, "must lie on the waveguide [0, Dx]")
        return self


_INT_FIELDS = {"N1", "N2", "K"}
FIELD_NAMES = tuple(f.name for f in fields(SystemConfig))


def parse_config(text, base=None):
    """Parse ``key = value`` text into a SystemConfig layered over ``base``."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidConfig(f"line {lineno}", f"expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in FIELD_NAMES:
            raise InvalidConfig(key, "unknown config key")
        if key in values:
            raise InvalidConfig(key, "given twice")
        try:
            values[key] = int(value) if key in _INT_FIELDS else float(value)
        except ValueError:
            raise InvalidConfig(key, f"cannot parse {value!r} as a number") from None
    return dataclasses.replace(base or SystemConfig(), **values)


def load_config(path, base=None):
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read(), base)


def dump_config(cfg: SystemConfig):
    """Serialize every field; ``parse_config(dump_config(c)) == c``."""
    lines = []
    for name in FIELD_NAMES:
        value = getattr(cfg, name)
        lines.append(f"{name} = {value!r}" if name not in _INT_FIELDS else f"{name} = {int(value)}")
    return "\n".join(lines) + "\n"
