"""Truth tables and gate-quality metrics."""

from .truth_table import (
    BASIS,
    CNOT,
    IDENTITY,
    PostSelectionError,
    TruthTable,
    logical_fidelity,
    similarity,
    truth_table,
)

__all__ = [
    "BASIS",
    "CNOT",
    "IDENTITY",
    "PostSelectionError",
    "TruthTable",
    "truth_table",
    "logical_fidelity",
    "similarity",
]
