"""Driven-dissipative Dicke / LMG time-crystal simulations.

Keyword arguments of simulate, classify, sweep and threshold_scan are the
configuration-file keys, e.g. ``classify(model="nom", kappa=0.5, A=0.5, wd=0.8)``.
"""

from ._dtcsim import (
    ConfigError,
    classify,
    critical_coupling,
    lambda_critical,
    lmg_steady_state,
    polariton_frequencies,
    resonance_prediction,
    resonant_amplitude,
    setting_keys,
    simulate,
    sweep,
    threshold_scan,
    version,
)

__all__ = [
    "ConfigError",
    "classify",
    "critical_coupling",
    "lambda_critical",
    "lmg_steady_state",
    "polariton_frequencies",
    "resonance_prediction",
    "resonant_amplitude",
    "setting_keys",
    "simulate",
    "sweep",
    "threshold_scan",
    "version",
]
