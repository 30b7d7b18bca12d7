"""Performance model of a wireless-powered pinching-antenna system."""
from ._kernels import BACKEND
from .analytic import (
    OutageResult,
    RateResult,
    RegimeTag,
    Table,
    classify_regime,
    ergodic_lossless,
    ergodic_lossy,
    ergodic_rate,
    outage_lossless,
    outage_lossy,
    outage_probability,
)
from .config import PinchPositions, SystemConfig, UserPosition, load_config, parse_config
from .errors import InvalidAlpha, InvalidConfig, NoRegime, PinchWPCError, UnsupportedGeometry
from .mc import Estimate, McSpec, mc_outage, mc_rate, quad_outage, quad_rate
from .physics import derived_params, snr_aligned, snr_general
from .sweep import __version__

__all__ = [
    "BACKEND",
    "Estimate",
    "InvalidAlpha",
    "InvalidConfig",
    "McSpec",
    "NoRegime",
    "OutageResult",
    "PinchPositions",
    "PinchWPCError",
    "RateResult",
    "RegimeTag",
    "SystemConfig",
    "Table",
    "UnsupportedGeometry",
    "UserPosition",
    "__version__",
    "classify_regime",
    "derived_params",
    "ergodic_lossless",
    "ergodic_lossy",
    "ergodic_rate",
    "load_config",
    "mc_outage",
    "mc_rate",
    "outage_lossless",
    "outage_lossy",
    "outage_probability",
    "parse_config",
    "quad_outage",
    "quad_rate",
    "snr_aligned",
    "snr_general",
]
