"""Two-photon interference: visibilities, accidentals and the dip model."""

from .dip import (
    FWHM_PER_SIGMA,
    PARAM_NAMES,
    SPEED_OF_LIGHT,
    DipCurve,
    DipParams,
    delay_um_to_seconds,
    dip_fwhm_from_filter,
    dip_jacobian,
    dip_model,
    filter_model_ratio,
    fwhm_from_width,
    poisson_error,
    width_from_fwhm,
)
from .visibility import (
    ACCIDENTAL_WINDOW_S,
    AccidentalCorrectionError,
    VisibilityRecord,
    classical_coincidence,
    correct_accidentals,
    dip_minimum_for_eta,
    quantum_coincidence,
    v_ideal,
    visibility,
    visibility_record,
)

__all__ = [
    "ACCIDENTAL_WINDOW_S",
    "AccidentalCorrectionError",
    "VisibilityRecord",
    "classical_coincidence",
    "quantum_coincidence",
    "correct_accidentals",
    "dip_minimum_for_eta",
    "v_ideal",
    "visibility",
    "visibility_record",
    "DipCurve",
    "DipParams",
    "PARAM_NAMES",
    "FWHM_PER_SIGMA",
    "SPEED_OF_LIGHT",
    "dip_model",
    "dip_jacobian",
    "dip_fwhm_from_filter",
    "filter_model_ratio",
    "delay_um_to_seconds",
    "fwhm_from_width",
    "width_from_fwhm",
    "poisson_error",
]
