"""Dip fitting, synthetic data and tolerance sweeps."""

from .fitting import FitResult, fit_dip, initial_guess, synth_dip
from .sweep import (
    Distribution,
    Interpretation,
    Metric,
    SweepMode,
    SweepPoint,
    SweepReport,
    UnknownLabelError,
    VarySpec,
    sweep_eta,
)

__all__ = [
    "FitResult",
    "fit_dip",
    "initial_guess",
    "synth_dip",
    "Distribution",
    "Interpretation",
    "Metric",
    "SweepMode",
    "SweepPoint",
    "SweepReport",
    "UnknownLabelError",
    "VarySpec",
    "sweep_eta",
]
