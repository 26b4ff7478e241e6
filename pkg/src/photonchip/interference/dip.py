"""
Coincidence-dip model and measured dip curves.

Delays are micrometres of optical path. The dip is a Gaussian on a
baseline with a small linear slope, the slope accounting for the collection
efficiency drifting as one arm is translated.
"""

import logging
import math
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Dict, Iterator, Sequence, Tuple, Union

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)

SPEED_OF_LIGHT = 299_792_458.0  # m/s, exact
FWHM_PER_SIGMA = 2.0 * math.sqrt(2.0 * math.log(2.0))
PARAM_NAMES = ("a", "b", "v", "x0", "w")
CSV_COLUMNS = ("delay_um", "counts")


@dataclass(frozen=True)
class DipParams:
    """Parameters of the dip model.

    Attributes:
        a: Baseline counts at the dip centre
        b: Baseline slope, counts per micrometre
        v: Visibility of the dip
        x0: Dip centre, micrometres
        w: Gaussian width (standard deviation), micrometres
    """

    a: float
    b: float
    v: float
    x0: float
    w: float

    @classmethod
    def from_fwhm(
        cls, a: float, b: float, v: float, x0: float, fwhm: float
    ) -> "DipParams":
        return cls(a=a, b=b, v=v, x0=x0, w=width_from_fwhm(fwhm))

    @classmethod
    def from_array(cls, values: Sequence[float]) -> "DipParams":
        return cls(*(float(x) for x in values))

    def to_array(self) -> np.ndarray:
        return np.array([self.a, self.b, self.v, self.x0, self.w], dtype=float)

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)

    @property
    def fwhm(self) -> float:
        return fwhm_from_width(self.w)

    def validate(self) -> None:
        """Check a > 0, w > 0 and 0 <= v <= 1."""
        if self.a <= 0:
            raise ValueError(f"baseline a must be positive, got {self.a}")
        if self.w <= 0:
            raise ValueError(f"width w must be positive, got {self.w}")
        if not 0.0 <= self.v <= 1.0:
            raise ValueError(f"visibility v must lie in [0, 1], got {self.v}")


def fwhm_from_width(w: float) -> float:
    """FWHM of a Gaussian with standard deviation ``w``."""
    return FWHM_PER_SIGMA * w


def width_from_fwhm(fwhm: float) -> float:
    """Standard deviation of a Gaussian with the given FWHM."""
    return fwhm / FWHM_PER_SIGMA


def dip_model(
    delay: Union[float, np.ndarray], params: DipParams
) -> Union[float, np.ndarray]:
    """Expected coincidence counts at ``delay``.

    ``(a + b (x - x0)) * (1 - v exp(-(x - x0)^2 / (2 w^2)))``
    """
    d = np.asarray(delay, dtype=float) - params.x0
    gauss = np.exp(-(d**2) / (2.0 * params.w**2))
    counts = (params.a + params.b * d) * (1.0 - params.v * gauss)
    return float(counts) if np.ndim(counts) == 0 else counts


def dip_jacobian(delay: np.ndarray, params: DipParams) -> np.ndarray:
    """Analytic derivatives of :func:`dip_model` with respect to (a, b, v, x0, w).

    Returns:
        Array of shape (len(delay), 5)
    """
    d = np.asarray(delay, dtype=float) - params.x0
    gauss = np.exp(-(d**2) / (2.0 * params.w**2))
    baseline = params.a + params.b * d
    dip = 1.0 - params.v * gauss

    d_a = dip
    d_b = d * dip
    d_v = -baseline * gauss
    d_x0 = -params.b * dip - baseline * params.v * gauss * d / params.w**2
    d_w = -baseline * params.v * gauss * d**2 / params.w**3
    return np.column_stack([d_a, d_b, d_v, d_x0, d_w])


def dip_fwhm_from_filter(center_wavelength_nm: float, filter_fwhm_nm: float) -> float:
    """Dip FWHM in path length for Gaussian-filtered photons.

    ``2 ln 2 * lambda^2 / (pi * delta_lambda)``, returned in micrometres.
    804 nm with a 2 nm filter gives about 142.6 um.

    Raises:
        ValueError: If either argument is not positive
    """
    if center_wavelength_nm <= 0 or filter_fwhm_nm <= 0:
        raise ValueError("wavelength and filter width must be positive")
    fwhm_nm = 2.0 * math.log(2.0) * center_wavelength_nm**2 / (math.pi * filter_fwhm_nm)
    return fwhm_nm * 1e-3


def filter_model_ratio(
    measured_fwhm_um: float, center_wavelength_nm: float, filter_fwhm_nm: float
) -> float:
    """Measured dip FWHM over the Gaussian-filter prediction."""
    return measured_fwhm_um / dip_fwhm_from_filter(center_wavelength_nm, filter_fwhm_nm)


def delay_um_to_seconds(delay_um: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """Convert optical path delay in micrometres to seconds."""
    seconds = np.asarray(delay_um, dtype=float) * 1e-6 / SPEED_OF_LIGHT
    return float(seconds) if np.ndim(seconds) == 0 else seconds


def poisson_error(counts: Union[float, np.ndarray]) -> np.ndarray:
    """Counting error ``sqrt(max(counts, 1))``."""
    return np.sqrt(np.maximum(np.asarray(counts, dtype=float), 1.0))


@dataclass(frozen=True)
class DipCurve:
    """Coincidence counts sampled against relative delay.

    Attributes:
        delays: Strictly increasing delays, micrometres
        counts: Non-negative counts per delay
    """

    delays: np.ndarray
    counts: np.ndarray

    def __post_init__(self) -> None:
        delays = np.asarray(self.delays, dtype=float)
        counts = np.asarray(self.counts, dtype=float)
        if delays.ndim != 1 or delays.shape != counts.shape:
            raise ValueError("delays and counts must be 1-D arrays of equal length")
        if delays.size > 1 and np.any(np.diff(delays) <= 0):
            raise ValueError("delays must be strictly increasing")
        if np.any(counts < 0) or not np.all(np.isfinite(counts)):
            raise ValueError("counts must be finite and non-negative")
        object.__setattr__(self, "delays", delays)
        object.__setattr__(self, "counts", counts)

    @classmethod
    def from_arrays(
        cls, delays: Sequence[float], counts: Sequence[float]
    ) -> "DipCurve":
        return cls(np.asarray(delays, dtype=float), np.asarray(counts, dtype=float))

    @property
    def errors(self) -> np.ndarray:
        return poisson_error(self.counts)

    @property
    def points(self) -> Iterator[Tuple[float, float, float]]:
        """(delay, counts, error) triples."""
        return zip(self.delays.tolist(), self.counts.tolist(), self.errors.tolist())

    def __len__(self) -> int:
        return int(self.delays.size)

    def to_dataframe(self) -> pd.DataFrame:
        return pd.DataFrame({CSV_COLUMNS[0]: self.delays, CSV_COLUMNS[1]: self.counts})

    def to_csv(self, path: Union[str, Path]) -> Path:
        """Write ``delay_um,counts`` CSV; errors are recomputed on read."""
        out = Path(path)
        out.parent.mkdir(parents=True, exist_ok=True)
        self.to_dataframe().to_csv(out, index=False, float_format="%.12g")
        return out

    @classmethod
    def from_csv(cls, path: Union[str, Path]) -> "DipCurve":
        """Read a ``delay_um,counts`` CSV.

        Raises:
            FileNotFoundError: If the file does not exist
            ValueError: If columns are missing or values are invalid
        """
        csv_path = Path(path)
        if not csv_path.exists():
            raise FileNotFoundError(f"Dip data file not found: {csv_path}")
        df = pd.read_csv(csv_path)
        missing = [c for c in CSV_COLUMNS if c not in df.columns]
        if missing:
            raise ValueError(f"{csv_path}: missing column(s) {', '.join(missing)}")
        logger.debug("Read %d dip points from %s", len(df), csv_path)
        delay_col, count_col = CSV_COLUMNS
        return cls(df[delay_col].to_numpy(float), df[count_col].to_numpy(float))
