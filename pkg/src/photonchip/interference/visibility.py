"""Two-photon interference visibility and accidental-count correction."""

import logging
import math
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional, Tuple

logger = logging.getLogger(__name__)

# Coincidence window of the detection electronics; pairs from separate
# down-conversion events inside it are counted as accidentals.
ACCIDENTAL_WINDOW_S = 5e-9
UNCERTAINTY_METHOD = "poisson-first-order"


class AccidentalCorrectionError(ValueError):
    """Raised when an accidental rate exceeds the measured coincidences."""


def _check_eta(eta: float) -> None:
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"reflectivity {eta} outside [0, 1]")


def v_ideal(eta: float) -> float:
    """Ideal visibility of a coupler with reflectivity ``eta``.

    ``2 eta (1 - eta) / (1 - 2 eta + 2 eta^2)``; 1 at eta = 1/2 and 0.8 at
    eta = 1/3. The denominator never drops below 1/2.
    """
    _check_eta(eta)
    return 2.0 * eta * (1.0 - eta) / (1.0 - 2.0 * eta + 2.0 * eta**2)


def classical_coincidence(eta: float) -> float:
    """Coincidence probability for distinguishable photons, eta^2 + (1 - eta)^2."""
    _check_eta(eta)
    return eta**2 + (1.0 - eta) ** 2


def quantum_coincidence(eta: float) -> float:
    """Coincidence probability for indistinguishable photons, (2 eta - 1)^2."""
    _check_eta(eta)
    return (2.0 * eta - 1.0) ** 2


def visibility(c_class: float, c_quant: float) -> float:
    """Dip visibility ``(C_class - C_quant) / C_class``.

    Negative values (an anti-dip) are returned as-is.

    Raises:
        ValueError: If ``c_class`` is not positive
    """
    if c_class <= 0:
        raise ValueError(f"classical rate must be positive, got {c_class}")
    v = (c_class - c_quant) / c_class
    if v < 0:
        logger.warning("Negative visibility %.6f: coincidences rise at zero delay", v)
    return v


def correct_accidentals(
    c_class: float, c_quant: float, c_acc: float
) -> Tuple[float, float]:
    """Subtract the accidental rate from both coincidence rates.

    Args:
        c_class: Rate away from the dip
        c_quant: Rate at the dip minimum
        c_acc: Accidental-coincidence rate, same units

    Returns:
        Tuple of corrected (c_class, c_quant)

    Raises:
        AccidentalCorrectionError: If ``c_acc`` exceeds ``c_quant`` or is not
            below ``c_class``, or is negative
    """
    if c_acc == 0:
        return c_class, c_quant
    if c_acc < 0:
        raise AccidentalCorrectionError(
            f"accidental rate must be non-negative, got {c_acc}"
        )
    if c_acc > c_quant:
        raise AccidentalCorrectionError(
            f"accidental rate {c_acc} exceeds the dip rate {c_quant}; "
            "corrected coincidences would be negative"
        )
    if c_acc >= c_class:
        raise AccidentalCorrectionError(
            f"accidental rate {c_acc} is not below the classical rate {c_class}"
        )
    return c_class - c_acc, c_quant - c_acc


def dip_minimum_for_eta(c_class: float, eta: float, c_acc: float = 0.0) -> float:
    """Coincidence rate expected at the dip centre for perfect interference.

    Args:
        c_class: Classical (off-dip) coincidence rate including accidentals
        eta: Coupler reflectivity
        c_acc: Accidental rate

    Returns:
        ``c_acc + (c_class - c_acc) * (1 - v_ideal(eta))``
    """
    return c_acc + (c_class - c_acc) * (1.0 - v_ideal(eta))


def _visibility_error(
    c_class: float, c_quant: float, var_class: float, var_quant: float
) -> float:
    # dV/dCq = -1/Cc, dV/dCc = Cq/Cc^2; variances are of non-negative counts
    var_class, var_quant = max(var_class, 0.0), max(var_quant, 0.0)
    return math.sqrt(var_quant / c_class**2 + var_class * c_quant**2 / c_class**4)


@dataclass(frozen=True)
class VisibilityRecord:
    """Raw, corrected, ideal and relative visibility of one coupler."""

    c_class: float
    c_quant: float
    c_acc: float
    v_raw: float
    v_corrected: float
    v_ideal: float
    v_rel: Optional[float]
    v_raw_err: float
    v_corrected_err: float
    v_rel_err: Optional[float]
    eta: Optional[float] = None
    method: str = UNCERTAINTY_METHOD

    @property
    def anti_dip(self) -> bool:
        return self.v_raw < 0

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["anti_dip"] = self.anti_dip
        data["accidental_window_s"] = ACCIDENTAL_WINDOW_S
        return data


def visibility_record(
    c_class: float, c_quant: float, c_acc: float = 0.0, eta: Optional[float] = None
) -> VisibilityRecord:
    """Build a :class:`VisibilityRecord` with Poisson uncertainties.

    Rates are treated as counts for the error model: each has variance
    equal to itself, and the accidental count is subtracted from both. The
    relative visibility uses ``eta`` when given, else a balanced coupler.
    A dip rate below zero, as a fit with ``v > 1`` gives, is kept in the
    visibilities and counted as zero in the error model.

    Raises:
        ValueError: If ``c_class`` is not positive
        AccidentalCorrectionError: If the accidental rate is too large
    """
    v_raw = visibility(c_class, c_quant)
    v_raw_err = _visibility_error(c_class, c_quant, c_class, c_quant)

    cc, cq = correct_accidentals(c_class, c_quant, c_acc)
    v_corr = visibility(cc, cq)
    v_corr_err = _visibility_error(cc, cq, c_class + c_acc, c_quant + c_acc)

    ideal = v_ideal(0.5 if eta is None else eta)
    v_rel = v_corr / ideal if ideal > 0 else None
    v_rel_err = v_corr_err / ideal if ideal > 0 else None

    if v_corr > 1.0:
        logger.info("Corrected visibility %.6f exceeds 1; reported unclamped", v_corr)

    return VisibilityRecord(
        c_class=c_class,
        c_quant=c_quant,
        c_acc=c_acc,
        v_raw=v_raw,
        v_corrected=v_corr,
        v_ideal=ideal,
        v_rel=v_rel,
        v_raw_err=v_raw_err,
        v_corrected_err=v_corr_err,
        v_rel_err=v_rel_err,
        eta=eta,
    )
