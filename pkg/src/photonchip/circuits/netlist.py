"""
Circuit netlist types.

A netlist is an ordered list of directional couplers and phase shifters
over a fixed number of waveguide modes, applied from input to output.
Mode indices are 0-based here; the text format is 1-based.
"""

from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional, Sequence, Tuple, Union


class Convention(Enum):
    """Directional-coupler matrix conventions."""

    REAL = "real"  # [[r, t], [t, -r]]
    SYMMETRIC = "symmetric"  # [[r, it], [it, r]]

    @classmethod
    def parse(cls, value: Union[str, "Convention"]) -> "Convention":
        if isinstance(value, Convention):
            return value
        try:
            return cls(value.strip().lower())
        except ValueError as e:
            choices = ", ".join(c.value for c in cls)
            raise ValueError(f"unknown convention '{value}' (choose {choices})") from e


@dataclass(frozen=True)
class CouplerSpec:
    """Reflectivity of a directional coupler.

    Attributes:
        eta: Probability that a photon exits the same-side port, in [0, 1]
        uncertainty: Measurement uncertainty of eta, if known
    """

    eta: float
    uncertainty: Optional[float] = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.eta <= 1.0:
            raise ValueError(f"reflectivity {self.eta} outside [0, 1]")
        if self.uncertainty is not None and self.uncertainty < 0.0:
            raise ValueError(f"uncertainty {self.uncertainty} must be non-negative")


@dataclass(frozen=True)
class DirectionalCoupler:
    """Two-mode coupler element; ``mode_a`` is the first matrix port."""

    mode_a: int
    mode_b: int
    coupler: CouplerSpec
    label: Optional[str] = None

    @property
    def modes(self) -> Tuple[int, ...]:
        return (self.mode_a, self.mode_b)

    @property
    def eta(self) -> float:
        return self.coupler.eta


@dataclass(frozen=True)
class PhaseShifter:
    """Single-mode phase element, multiplying the mode by exp(i * phase)."""

    mode: int
    phase: float
    label: Optional[str] = None

    @property
    def modes(self) -> Tuple[int, ...]:
        return (self.mode,)


Element = Union[DirectionalCoupler, PhaseShifter]


@dataclass(frozen=True)
class Netlist:
    """Ordered circuit description over ``n_modes`` modes."""

    n_modes: int
    elements: Tuple[Element, ...] = ()

    def __post_init__(self) -> None:
        if self.n_modes < 1:
            raise ValueError(f"a netlist needs at least one mode, got {self.n_modes}")
        object.__setattr__(self, "elements", tuple(self.elements))
        for position, element in enumerate(self.elements):
            for mode in element.modes:
                if not 0 <= mode < self.n_modes:
                    raise ValueError(
                        f"element {position} uses mode {mode + 1} "
                        f"outside [1, {self.n_modes}]"
                    )
            if (
                isinstance(element, DirectionalCoupler)
                and element.mode_a == element.mode_b
            ):
                raise ValueError(
                    f"element {position} couples mode {element.mode_a + 1} to itself"
                )

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def labels(self) -> Tuple[str, ...]:
        """Element labels in netlist order, unlabelled elements skipped."""
        return tuple(e.label for e in self.elements if e.label)

    @property
    def couplers(self) -> Tuple[DirectionalCoupler, ...]:
        return tuple(e for e in self.elements if isinstance(e, DirectionalCoupler))

    def element(self, label: str) -> Element:
        """Element carrying ``label``.

        Raises:
            KeyError: If no element has that label
        """
        for e in self.elements:
            if e.label == label:
                return e
        raise KeyError(label)

    def with_eta(self, label: str, eta: float) -> "Netlist":
        """Copy of the netlist with the labelled coupler set to ``eta``."""
        found = False
        elements = []
        for e in self.elements:
            if e.label == label:
                if not isinstance(e, DirectionalCoupler):
                    raise ValueError(f"element '{label}' is not a directional coupler")
                e = replace(e, coupler=replace(e.coupler, eta=eta))
                found = True
            elements.append(e)
        if not found:
            raise KeyError(label)
        return Netlist(self.n_modes, tuple(elements))

    def with_etas(self, assignment: Sequence[Tuple[str, float]]) -> "Netlist":
        """Apply several ``(label, eta)`` overrides in turn."""
        netlist = self
        for label, eta in assignment:
            netlist = netlist.with_eta(label, eta)
        return netlist

    def reversed(self) -> "Netlist":
        """Same elements applied in the opposite order."""
        return Netlist(self.n_modes, tuple(reversed(self.elements)))


@dataclass(frozen=True)
class LogicalEncoding:
    """Dual-rail two-qubit encoding of a six-mode gate.

    Attributes:
        control_modes: (|0>c rail, |1>c rail)
        target_modes: (|0>t rail, |1>t rail)
        ancilla_modes: Modes that receive no photons and must be empty on success
    """

    control_modes: Tuple[int, int]
    target_modes: Tuple[int, int]
    ancilla_modes: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "control_modes", tuple(self.control_modes))
        object.__setattr__(self, "target_modes", tuple(self.target_modes))
        object.__setattr__(self, "ancilla_modes", tuple(self.ancilla_modes))
        modes = self.all_modes
        if len(set(modes)) != len(modes):
            raise ValueError(f"encoding modes must be distinct, got {modes}")
        if any(m < 0 for m in modes):
            raise ValueError(f"encoding modes must be non-negative, got {modes}")

    @property
    def all_modes(self) -> Tuple[int, ...]:
        return self.control_modes + self.target_modes + self.ancilla_modes

    def validate(self, n_modes: int) -> None:
        """Check every encoding mode exists in an ``n_modes`` circuit."""
        bad = [m for m in self.all_modes if m >= n_modes]
        if bad:
            raise ValueError(
                f"encoding uses modes {[m + 1 for m in bad]} "
                f"but the circuit has {n_modes}"
            )

    def swapped_target(self) -> "LogicalEncoding":
        """Encoding with the two target rails exchanged."""
        return replace(self, target_modes=(self.target_modes[1], self.target_modes[0]))

    def swapped_control(self) -> "LogicalEncoding":
        """Encoding with the two control rails exchanged."""
        return replace(
            self, control_modes=(self.control_modes[1], self.control_modes[0])
        )

    def swapped_roles(self) -> "LogicalEncoding":
        """Encoding with the control and target qubits exchanged."""
        return replace(
            self, control_modes=self.target_modes, target_modes=self.control_modes
        )


def default_encoding(n_modes: int = 6) -> LogicalEncoding:
    """The six-mode CNOT layout extended to ``n_modes``.

    The six modes are ancilla-A, c0, c1, t0, t1 and ancilla-B.

    Modes 2-5 (1-based) carry the qubits; every other mode is an ancilla.
    """
    if n_modes < 5:
        raise ValueError(
            f"the default encoding needs at least 5 modes, got {n_modes}"
        )
    ancillas = tuple(m for m in range(n_modes) if m not in (1, 2, 3, 4))
    return LogicalEncoding(
        control_modes=(1, 2), target_modes=(3, 4), ancilla_modes=ancillas
    )
