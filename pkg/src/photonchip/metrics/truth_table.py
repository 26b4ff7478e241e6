"""
Logical truth tables of post-selected two-qubit gates.

Rows and columns are ordered 00, 01, 10, 11 with the control bit first.
Each row is the output distribution conditioned on gate success; the
success probabilities are kept alongside and play no part in the metrics.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from ..circuits.netlist import Convention, LogicalEncoding, Netlist
from ..circuits.unitary import assemble_unitary
from ..fock.evolution import evolve, post_select
from ..fock.states import FockState
from ..utils.helpers import read_json, write_json

logger = logging.getLogger(__name__)

BASIS = ("00", "01", "10", "11")
CNOT = (0, 1, 3, 2)
IDENTITY = (0, 1, 2, 3)
ROW_TOLERANCE = 1e-9


class PostSelectionError(RuntimeError):
    """Raised when a logical input never passes post-selection."""

    def __init__(self, logical_input: str, message: Optional[str] = None) -> None:
        self.logical_input = logical_input
        super().__init__(
            message
            or f"post-selection never succeeds for logical input {logical_input}"
        )


@dataclass(frozen=True)
class TruthTable:
    """4 x 4 row-stochastic table over the logical basis."""

    rows: np.ndarray
    success: np.ndarray = field(default_factory=lambda: np.ones(4))

    def __post_init__(self) -> None:
        rows = np.asarray(self.rows, dtype=float)
        success = np.asarray(self.success, dtype=float)
        if rows.shape != (4, 4):
            raise ValueError(f"truth table must be 4x4, got shape {rows.shape}")
        if success.shape != (4,):
            raise ValueError(f"success must have 4 entries, got shape {success.shape}")
        if np.any(rows < -1e-12) or np.any(rows > 1 + 1e-12):
            raise ValueError("truth table entries must lie in [0, 1]")
        sums = rows.sum(axis=1)
        if np.any(np.abs(sums - 1.0) > ROW_TOLERANCE):
            raise ValueError(f"truth table rows must sum to 1, got {sums.tolist()}")
        object.__setattr__(self, "rows", np.clip(rows, 0.0, 1.0))
        object.__setattr__(self, "success", success)

    @classmethod
    def from_permutation(cls, permutation: Sequence[int]) -> "TruthTable":
        rows = np.zeros((4, 4))
        rows[np.arange(4), list(permutation)] = 1.0
        return cls(rows)

    @classmethod
    def uniform(cls) -> "TruthTable":
        return cls(np.full((4, 4), 0.25))

    @classmethod
    def from_counts(
        cls,
        counts: Union[np.ndarray, Sequence[Sequence[float]]],
        accidentals: Union[None, float, np.ndarray] = None,
    ) -> "TruthTable":
        """Measured table from a 4 x 4 matrix of coincidence counts.

        Rows are logical inputs, columns logical outputs. ``accidentals`` (one
        rate for every cell, or a 4 x 4 matrix) is subtracted first, counts
        falling below zero are clipped, then each row is normalised.

        Raises:
            ValueError: On a bad shape, negative counts or an empty row
        """
        raw = np.asarray(counts, dtype=float)
        if raw.shape != (4, 4):
            raise ValueError(f"count matrix must be 4x4, got shape {raw.shape}")
        if np.any(raw < 0):
            raise ValueError("coincidence counts must be non-negative")
        background = np.broadcast_to(
            np.asarray(0.0 if accidentals is None else accidentals, dtype=float),
            (4, 4),
        )
        if np.any(background < 0):
            raise ValueError("accidental counts must be non-negative")
        net = np.clip(raw - background, 0.0, None)
        totals = net.sum(axis=1)
        for label, total in zip(BASIS, totals):
            if total <= 0:
                raise ValueError(
                    f"no coincidences left for logical input {label} "
                    "after accidental subtraction"
                )
        clipped = int(np.sum(raw < background))
        if clipped:
            logger.warning("%d cells fell below the accidental level", clipped)
        return cls(net / totals[:, None])

    @classmethod
    def from_counts_csv(
        cls,
        path: Union[str, Path],
        accidentals: Union[None, float, np.ndarray] = None,
    ) -> "TruthTable":
        """Read counts from CSV with header ``input,00,01,10,11``."""
        counts_path = Path(path)
        if not counts_path.exists():
            raise FileNotFoundError(f"Counts file not found: {counts_path}")
        df = pd.read_csv(counts_path, dtype={"input": str}).set_index("input")
        df.columns = [str(c) for c in df.columns]
        missing = sorted(set(BASIS) - set(df.index) | set(BASIS) - set(df.columns))
        if missing:
            raise ValueError(f"counts file lacks basis labels {missing}")
        return cls.from_counts(df.loc[list(BASIS), list(BASIS)].to_numpy(), accidentals)

    def probability(self, logical_input: str, logical_output: str) -> float:
        return float(self.rows[BASIS.index(logical_input), BASIS.index(logical_output)])

    def to_dict(self) -> Dict[str, Any]:
        return {"basis": list(BASIS), "rows": self.rows, "success": self.success}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "TruthTable":
        basis = tuple(data.get("basis", BASIS))
        if basis != BASIS:
            raise ValueError(
                f"unsupported basis order {list(basis)}, expected {list(BASIS)}"
            )
        rows = np.array(data["rows"], dtype=float)
        return cls(rows, np.array(data.get("success", [1.0] * 4), dtype=float))

    def to_json(self, path: Union[str, Path]) -> Path:
        return write_json(self.to_dict(), path)

    @classmethod
    def from_json(cls, path: Union[str, Path]) -> "TruthTable":
        table_path = Path(path)
        if not table_path.exists():
            raise FileNotFoundError(f"Truth table file not found: {table_path}")
        return cls.from_dict(read_json(table_path))


def _logical_state(
    encoding: LogicalEncoding, n_modes: int, control: int, target: int
) -> FockState:
    occupations = [0] * n_modes
    occupations[encoding.control_modes[control]] = 1
    occupations[encoding.target_modes[target]] = 1
    return FockState(tuple(occupations))


def truth_table(
    netlist: Netlist,
    encoding: LogicalEncoding,
    convention: Union[Convention, str] = Convention.REAL,
) -> TruthTable:
    """Simulate the post-selected truth table of a two-qubit netlist.

    Each logical input injects one photon into a control rail and one into
    a target rail; success means one photon across the control rails, one
    across the target rails and none in the ancillae.

    Raises:
        PostSelectionError: If an input has zero success probability
    """
    n_modes = netlist.n_modes
    encoding.validate(n_modes)
    u = assemble_unitary(netlist, convention)

    pattern: List[Any] = [None] * n_modes
    for mode in encoding.ancilla_modes:
        pattern[mode] = 0
    groups: Tuple[Tuple[Tuple[int, ...], int], ...] = (
        (encoding.control_modes, 1),
        (encoding.target_modes, 1),
    )

    rows = np.zeros((4, 4))
    success = np.zeros(4)
    for i, label in enumerate(BASIS):
        state = _logical_state(encoding, n_modes, int(label[0]), int(label[1]))
        output = evolve(u, state, keep_amplitudes=False)
        selected, p_success = post_select(output, pattern, groups)
        if p_success <= 0.0:
            raise PostSelectionError(label)
        success[i] = p_success
        for j, out_label in enumerate(BASIS):
            control, target = int(out_label[0]), int(out_label[1])
            out_state = _logical_state(encoding, n_modes, control, target)
            rows[i, j] = selected.probability(out_state)
        logger.debug(
            "Input %s: success %.6f, row %s",
            label,
            p_success,
            rows[i].round(6).tolist(),
        )

    logger.info("Truth table built: mean success %.6f", success.mean())
    return TruthTable(rows, success)


def logical_fidelity(table: TruthTable, target: Sequence[int] = CNOT) -> float:
    """Mean probability of the target output over the four logical inputs."""
    return float(np.mean(table.rows[np.arange(4), list(target)]))


def similarity(ideal: TruthTable, measured: TruthTable) -> float:
    """Classical-fidelity overlap of two truth tables.

    ``(sum_ij sqrt(I_ij M_ij))^2 / 16``; 1 exactly when the tables agree.
    """
    return float(np.sum(np.sqrt(ideal.rows * measured.rows)) ** 2 / 16.0)
