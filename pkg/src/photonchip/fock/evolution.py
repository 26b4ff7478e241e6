"""Exact multi-photon evolution through linear-optical unitaries."""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterator, Optional, Sequence, Tuple

import numpy as np

from .permanent import permanent
from .states import FockState, enumerate_basis

logger = logging.getLogger(__name__)

USER_UNITARITY_TOLERANCE = 1e-6
INTERNAL_UNITARITY_TOLERANCE = 1e-12
PROBABILITY_TOLERANCE = 1e-10

# Per-mode post-selection constraint: an exact photon count, or None for "any"
ModeConstraint = Optional[int]
# Rail-group constraint: (modes, required total photon count over those modes)
GroupConstraint = Tuple[Tuple[int, ...], int]


class UnitarityError(ValueError):
    """Raised when a matrix is not unitary within tolerance."""


class PhotonNumberError(ValueError):
    """Raised when input and output photon numbers differ."""


def unitarity_deviation(u: np.ndarray) -> float:
    """Max-norm of U^dagger U - I."""
    u = np.asarray(u, dtype=complex)
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])), initial=0.0))


def check_unitary(
    u: np.ndarray, tolerance: float = USER_UNITARITY_TOLERANCE
) -> np.ndarray:
    """Validate that ``u`` is a square unitary matrix.

    Args:
        u: Candidate matrix
        tolerance: Allowed max-norm deviation of U^dagger U from identity

    Returns:
        ``u`` as a complex array

    Raises:
        UnitarityError: If ``u`` is not square or deviates beyond tolerance
    """
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise UnitarityError(f"unitary must be square, got shape {u.shape}")
    deviation = unitarity_deviation(u)
    if deviation > tolerance:
        raise UnitarityError(
            f"matrix deviates from unitarity by {deviation:.3e} "
            f"(tolerance {tolerance:.0e})"
        )
    return u


@dataclass(frozen=True)
class OutputDistribution:
    """Probabilities of output Fock states, with optional amplitudes.

    Attributes:
        entries: State to probability
        amplitudes: State to complex amplitude, when retained
    """

    entries: Dict[FockState, float] = field(default_factory=dict)
    amplitudes: Optional[Dict[FockState, complex]] = None

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[FockState]:
        return iter(self.entries)

    def probability(self, state: FockState) -> float:
        """Probability of ``state``; zero when absent."""
        return self.entries.get(state, 0.0)

    def amplitude(self, state: FockState) -> complex:
        """Amplitude of ``state``; raises if amplitudes were not kept."""
        if self.amplitudes is None:
            raise ValueError("amplitudes were not retained for this distribution")
        return self.amplitudes.get(state, 0j)

    @property
    def total(self) -> float:
        return float(sum(self.entries.values()))

    def nonzero(self, threshold: float = 0.0) -> Dict[FockState, float]:
        """Entries with probability above ``threshold``."""
        return {s: p for s, p in self.entries.items() if p > threshold}


def _mode_list(state: FockState) -> np.ndarray:
    return np.repeat(np.arange(state.n_modes), state.occupations)


def transition_amplitude(
    u: np.ndarray, input_state: FockState, output_state: FockState
) -> complex:
    """Amplitude <output| U |input> for bosonic Fock states.

    The permanent of the n x n matrix built by repeating columns of U per
    input occupation and rows per output occupation, divided by the square
    root of the product of all occupation factorials.

    Args:
        u: m x m unitary; entry U[k][j] maps mode j to mode k
        input_state: Input Fock state over m modes
        output_state: Output Fock state over m modes

    Returns:
        Complex amplitude

    Raises:
        PhotonNumberError: If photon numbers differ
        ValueError: If the states do not match the matrix dimension
    """
    u = np.asarray(u, dtype=complex)
    m = u.shape[0]
    if input_state.n_modes != m or output_state.n_modes != m:
        raise ValueError(
            f"states have {input_state.n_modes}/{output_state.n_modes} modes, "
            f"unitary has {m}"
        )
    if input_state.n_photons != output_state.n_photons:
        raise PhotonNumberError(
            f"photon number mismatch: input {input_state} has {input_state.n_photons}, "
            f"output {output_state} has {output_state.n_photons}"
        )

    sub = u[np.ix_(_mode_list(output_state), _mode_list(input_state))]
    norm = math.prod(math.factorial(n) for n in input_state.occupations) * math.prod(
        math.factorial(n) for n in output_state.occupations
    )
    return permanent(sub) / math.sqrt(norm)


def evolve(
    u: np.ndarray,
    input_state: FockState,
    tolerance: float = USER_UNITARITY_TOLERANCE,
    keep_amplitudes: bool = True,
) -> OutputDistribution:
    """Evolve a Fock state through a unitary over the full n-photon basis.

    Args:
        u: m x m unitary
        input_state: Input Fock state
        tolerance: Unitarity tolerance for ``u``
        keep_amplitudes: Whether to retain complex amplitudes

    Returns:
        Distribution over every n-photon output state

    Raises:
        UnitarityError: If ``u`` deviates from unitarity beyond ``tolerance``
    """
    u = check_unitary(u, tolerance)
    basis = enumerate_basis(input_state.n_photons, u.shape[0])
    logger.debug("Evolving %s over a basis of %d states", input_state, len(basis))

    amplitudes = {state: transition_amplitude(u, input_state, state) for state in basis}
    entries = {state: float(abs(amp) ** 2) for state, amp in amplitudes.items()}

    total = sum(entries.values())
    if abs(total - 1.0) > max(PROBABILITY_TOLERANCE, 10 * tolerance):
        logger.warning(
            "Output probabilities sum to %.12f for input %s", total, input_state
        )

    return OutputDistribution(
        entries=entries, amplitudes=amplitudes if keep_amplitudes else None
    )


def matches(
    state: FockState,
    pattern: Sequence[ModeConstraint],
    groups: Sequence[GroupConstraint] = (),
) -> bool:
    """Whether ``state`` satisfies a per-mode pattern and rail-group constraints."""
    for count, required in zip(state.occupations, pattern):
        if required is not None and count != required:
            return False
    for modes, required in groups:
        if sum(state.occupations[mode] for mode in modes) != required:
            return False
    return True


def post_select(
    dist: OutputDistribution,
    pattern: Sequence[ModeConstraint],
    groups: Sequence[GroupConstraint] = (),
) -> Tuple[OutputDistribution, float]:
    """Condition a distribution on a detection pattern.

    Args:
        dist: Distribution to condition
        pattern: One entry per mode, an exact photon count or None for any
        groups: Extra constraints requiring an exact total photon count
            across a set of modes, e.g. one photon per qubit rail pair

    Returns:
        Tuple of (renormalized distribution over matching states,
        success probability). With no matches the success probability is 0
        and the distribution is empty.

    Raises:
        ValueError: If the pattern length differs from the mode count
    """
    first = next(iter(dist), None)
    if first is not None and len(pattern) != first.n_modes:
        raise ValueError(
            f"pattern has {len(pattern)} entries but states have {first.n_modes} modes"
        )

    selected = [s for s in dist if matches(s, pattern, groups)]
    success = float(sum(dist.entries[s] for s in selected))
    if success <= 0.0:
        empty = {} if dist.amplitudes is not None else None
        return OutputDistribution(entries={}, amplitudes=empty), 0.0

    entries = {s: dist.entries[s] / success for s in selected}
    amplitudes = None
    if dist.amplitudes is not None:
        scale = 1.0 / math.sqrt(success)
        amplitudes = {s: dist.amplitudes[s] * scale for s in selected}
    return OutputDistribution(entries=entries, amplitudes=amplitudes), success
