__version__ = "0.1.0"

from ._errors import (
    WarpwaveError,
    ValidationError,
    DomainError,
    OversamplingTooLowError,
    SplitPreconditionError,
    ConvergenceError,
    InfeasibleDesignError,
    NumericalError,
    MonotonicityError,
    ZeroForcingError,
)
from .types import (
    SampledSignal,
    PulseSpec,
    RolloffProfile,
    WarpDerivativeParams,
    WarpingMap,
    WaveformConfig,
    LinkScenario,
    UtilityCase,
    QAM_ORDERS,
)
from .core import warp_eval, warp_anchor, load_config, save_config, dump_config, config_hash
from .pulses import rc_time, asym_rc_time, rc_freq_prototype, warped_pulse_samples
from .rolloff import solve_profile
from .warpdesign import optimize_warp, fit_spline, expansion_D
from .phy import preset, tx_filterbank, tx_split, rx_chain

__all__ = [
    "WarpwaveError",
    "ValidationError",
    "DomainError",
    "OversamplingTooLowError",
    "SplitPreconditionError",
    "ConvergenceError",
    "InfeasibleDesignError",
    "NumericalError",
    "MonotonicityError",
    "ZeroForcingError",
    "SampledSignal",
    "PulseSpec",
    "RolloffProfile",
    "WarpDerivativeParams",
    "WarpingMap",
    "WaveformConfig",
    "LinkScenario",
    "UtilityCase",
    "QAM_ORDERS",
    "warp_eval",
    "warp_anchor",
    "load_config",
    "save_config",
    "dump_config",
    "config_hash",
    "rc_time",
    "asym_rc_time",
    "rc_freq_prototype",
    "warped_pulse_samples",
    "solve_profile",
    "optimize_warp",
    "fit_spline",
    "expansion_D",
    "preset",
    "tx_filterbank",
    "tx_split",
    "rx_chain",
]
