"""Shared fixtures for the photonchip test suite."""

import logging
import logging.handlers
from pathlib import Path
from typing import Callable, Iterator, Tuple

import numpy as np
import pytest

from photonchip.circuits.cnot import CnotEtas, cnot_from_etas
from photonchip.circuits.netlist import LogicalEncoding, Netlist

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture(autouse=True)
def reset_logging() -> Iterator[None]:
    """Drop handlers the CLI installs on the root logger."""
    yield
    root = logging.getLogger()
    for handler in list(root.handlers):
        if type(handler) in (
            logging.StreamHandler,
            logging.handlers.RotatingFileHandler,
        ):
            root.removeHandler(handler)


@pytest.fixture
def data_dir() -> Path:
    """Directory of the shipped netlists."""
    return DATA_DIR


@pytest.fixture
def nominal_cnot() -> Tuple[Netlist, LogicalEncoding]:
    """CNOT with design reflectivities."""
    return cnot_from_etas(CnotEtas.nominal())


@pytest.fixture
def measured_cnot() -> Tuple[Netlist, LogicalEncoding]:
    """CNOT with the reflectivities measured on the fabricated chip."""
    return cnot_from_etas(CnotEtas.measured())


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator for property checks."""
    return np.random.default_rng(20240611)


@pytest.fixture
def random_unitary(rng: np.random.Generator) -> Callable[[int], np.ndarray]:
    """Factory of Haar-like unitaries from QR of complex Gaussian matrices."""

    def make(n: int) -> np.ndarray:
        z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        q, r = np.linalg.qr(z)
        return q * (np.diag(r) / np.abs(np.diag(r)))

    return make
