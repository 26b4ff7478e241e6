"""Fock states and n-photon bases."""

from dataclasses import dataclass
from typing import Iterator, Tuple

from scipy.special import comb


@dataclass(frozen=True, order=True)
class FockState:
    """Occupation-number state over a fixed set of modes.

    Attributes:
        occupations: Photon count per mode, 0-based mode order
    """

    occupations: Tuple[int, ...]

    def __post_init__(self) -> None:
        occupations = tuple(int(n) for n in self.occupations)
        if any(n < 0 for n in occupations):
            raise ValueError(f"occupations must be non-negative, got {occupations}")
        object.__setattr__(self, "occupations", occupations)

    @classmethod
    def of(cls, *occupations: int) -> "FockState":
        """Build a state from positional occupations, e.g. ``FockState.of(1, 1)``."""
        return cls(tuple(occupations))

    @property
    def n_modes(self) -> int:
        return len(self.occupations)

    @property
    def n_photons(self) -> int:
        return sum(self.occupations)

    def __len__(self) -> int:
        return len(self.occupations)

    def __getitem__(self, mode: int) -> int:
        return self.occupations[mode]

    def __iter__(self) -> Iterator[int]:
        return iter(self.occupations)

    def __str__(self) -> str:
        return "|" + ",".join(str(n) for n in self.occupations) + "⟩"


@dataclass(frozen=True)
class FockBasis:
    """All n-photon Fock states over m modes in lexicographic-descending order."""

    n_photons: int
    n_modes: int
    states: Tuple[FockState, ...]

    def __len__(self) -> int:
        return len(self.states)

    def __iter__(self) -> Iterator[FockState]:
        return iter(self.states)

    def __getitem__(self, index: int) -> FockState:
        return self.states[index]

    def index(self, state: FockState) -> int:
        """Position of ``state`` in the basis."""
        return self.states.index(state)


def basis_size(n_photons: int, n_modes: int) -> int:
    """Number of n-photon states in m modes, binomial(n + m - 1, n)."""
    return int(comb(n_photons + n_modes - 1, n_photons, exact=True))


def _compositions(n_photons: int, n_modes: int) -> Iterator[Tuple[int, ...]]:
    if n_modes == 1:
        yield (n_photons,)
        return
    for first in range(n_photons, -1, -1):
        for rest in _compositions(n_photons - first, n_modes - 1):
            yield (first,) + rest


def enumerate_basis(n_photons: int, n_modes: int) -> FockBasis:
    """Enumerate every n-photon state over m modes.

    States are ordered lexicographically descending on their occupation
    vectors, so ``(2, 2)`` gives ``[(2,0), (1,1), (0,2)]``.

    Args:
        n_photons: Total photon number, >= 0
        n_modes: Number of modes, >= 1

    Returns:
        The complete basis

    Raises:
        ValueError: If ``n_modes`` < 1 or ``n_photons`` < 0
    """
    if n_modes < 1:
        raise ValueError(f"n_modes must be at least 1, got {n_modes}")
    if n_photons < 0:
        raise ValueError(f"n_photons must be non-negative, got {n_photons}")

    states = tuple(FockState(occ) for occ in _compositions(n_photons, n_modes))
    return FockBasis(n_photons=n_photons, n_modes=n_modes, states=states)
