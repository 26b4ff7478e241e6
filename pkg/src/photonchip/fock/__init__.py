"""Bosonic Fock-state evolution with permanents and post-selection."""

from .evolution import (
    OutputDistribution,
    PhotonNumberError,
    UnitarityError,
    check_unitary,
    evolve,
    post_select,
    transition_amplitude,
    unitarity_deviation,
)
from .permanent import permanent, permanent_naive
from .states import FockBasis, FockState, basis_size, enumerate_basis

__all__ = [
    "FockState",
    "FockBasis",
    "OutputDistribution",
    "UnitarityError",
    "PhotonNumberError",
    "enumerate_basis",
    "basis_size",
    "permanent",
    "permanent_naive",
    "transition_amplitude",
    "evolve",
    "post_select",
    "check_unitary",
    "unitarity_deviation",
]
