"""Uplink NOMA outage analysis under Bernoulli-Gaussian impulsive noise.

Thin wrapper over the C++ core; see the project README for the model and the
command-line interface.
"""

from noma_outage._core import (  # noqa: F401
    AccuracyError,
    Config,
    ConfigError,
    ConditionViolated,
    SweepRow,
    UserOutageEstimate,
    WrongEngine,
    __version__,
    asymptotic_diversity,
    diversity_slope,
    estimate_outage,
    estimate_tdma_outage,
    high_snr_outage_approx,
    load_config,
    make_config,
    mixture_sinr,
    noise_pdf,
    noise_precisions,
    outage,
    powers_from_backoff,
    rate_threshold,
    read_csv,
    run_backoff_sweep,
    run_snr_sweep,
    sample_ordered_gains,
    success_probability,
    tdma_outage,
    write_csv,
)

__all__ = [
    "AccuracyError",
    "Config",
    "ConfigError",
    "ConditionViolated",
    "SweepRow",
    "UserOutageEstimate",
    "WrongEngine",
    "asymptotic_diversity",
    "diversity_slope",
    "estimate_outage",
    "estimate_tdma_outage",
    "high_snr_outage_approx",
    "load_config",
    "make_config",
    "mixture_sinr",
    "noise_pdf",
    "noise_precisions",
    "outage",
    "powers_from_backoff",
    "rate_threshold",
    "read_csv",
    "run_backoff_sweep",
    "run_snr_sweep",
    "sample_ordered_gains",
    "success_probability",
    "tdma_outage",
    "write_csv",
]
