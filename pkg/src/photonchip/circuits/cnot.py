"""
Builder for the six-mode post-selected CNOT gate.

Mode order is (ancilla-A, c0, c1, t0, t1, ancilla-B). The target qubit
passes through a Mach-Zehnder interferometer formed by two 1/2 couplers;
inside it the |1>c rail meets the |0>t arm at a 1/3 coupler, while the
|0>c rail and the |1>t arm each lose amplitude to an empty ancilla at a 1/3
coupler so that every successful path has the same weight 1/3.
"""

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

from .netlist import (
    Convention,
    CouplerSpec,
    DirectionalCoupler,
    Element,
    LogicalEncoding,
    Netlist,
    PhaseShifter,
)

ANCILLA_A, C0, C1, T0, T1, ANCILLA_B = range(6)

HALF_1 = "half-1"
HALF_2 = "half-2"
CONTROL_THIRD = "control-third"
LOWER_THIRD_A = "lower-third-a"
LOWER_THIRD_B = "lower-third-b"
LOWER_THIRDS = (LOWER_THIRD_A, LOWER_THIRD_B)

CNOT_ENCODING = LogicalEncoding(
    control_modes=(C0, C1), target_modes=(T0, T1), ancilla_modes=(ANCILLA_A, ANCILLA_B)
)


@dataclass(frozen=True)
class CnotEtas:
    """Reflectivities of the five CNOT couplers."""

    eta_third_control: CouplerSpec
    eta_third_lower_a: CouplerSpec
    eta_third_lower_b: CouplerSpec
    eta_half_1: CouplerSpec
    eta_half_2: CouplerSpec

    @classmethod
    def nominal(cls) -> "CnotEtas":
        third = CouplerSpec(1.0 / 3.0)
        half = CouplerSpec(0.5)
        return cls(third, third, third, half, half)

    @classmethod
    def measured(cls) -> "CnotEtas":
        """Fabricated device values.

        The embedded thirds are taken equal to the control one.
        """
        third = CouplerSpec(0.3078, 0.0009)
        half_1 = CouplerSpec(0.442, 0.001)
        half_2 = CouplerSpec(0.452, 0.001)
        return cls(third, third, third, half_1, half_2)

    @classmethod
    def from_sequence(cls, values: Sequence[Union[float, CouplerSpec]]) -> "CnotEtas":
        """Build from ``(third_control, third_a, third_b, half_1, half_2)``."""
        if len(values) != 5:
            raise ValueError(f"expected 5 reflectivities, got {len(values)}")
        specs = [
            v if isinstance(v, CouplerSpec) else CouplerSpec(float(v)) for v in values
        ]
        return cls(*specs)


def _coupler(
    mode_a: int, mode_b: int, spec: CouplerSpec, label: str, convention: Convention
) -> List[Element]:
    element = DirectionalCoupler(mode_a, mode_b, spec, label)
    if convention is Convention.REAL:
        return [element]
    # diag(1, -i) S diag(1, -i) equals the REAL matrix
    return [
        PhaseShifter(mode_b, -math.pi / 2),
        element,
        PhaseShifter(mode_b, -math.pi / 2),
    ]


def cnot_netlist(
    *,
    eta_half_1: CouplerSpec,
    eta_half_2: CouplerSpec,
    eta_third_control: CouplerSpec,
    eta_third_lower_a: CouplerSpec,
    eta_third_lower_b: CouplerSpec,
    convention: Union[Convention, str] = Convention.REAL,
) -> Tuple[Netlist, LogicalEncoding]:
    """Six-mode CNOT netlist and its logical encoding.

    Element order: first 1/2 coupler on (t0, t1); the control 1/3 coupler on
    (c0, ancilla-A); the central 1/3 coupler on (c1, t0); the lower 1/3
    coupler on (t1, ancilla-B); the second 1/2 coupler on (t0, t1). The
    lower coupler puts ancilla-B on its first port so that both target arms
    pick up the same sign under the REAL convention. For the SYMMETRIC
    convention every coupler is wrapped in compensating phases on its second
    port, which makes the assembled unitary identical.

    Returns:
        Tuple of (netlist, encoding)
    """
    convention = Convention.parse(convention)
    elements: List[Element] = []
    elements += _coupler(T0, T1, eta_half_1, HALF_1, convention)
    elements += _coupler(C0, ANCILLA_A, eta_third_control, CONTROL_THIRD, convention)
    elements += _coupler(C1, T0, eta_third_lower_a, LOWER_THIRD_A, convention)
    elements += _coupler(ANCILLA_B, T1, eta_third_lower_b, LOWER_THIRD_B, convention)
    elements += _coupler(T0, T1, eta_half_2, HALF_2, convention)
    return Netlist(6, tuple(elements)), CNOT_ENCODING


def cnot_from_etas(
    etas: CnotEtas, convention: Union[Convention, str] = Convention.REAL
) -> Tuple[Netlist, LogicalEncoding]:
    """:func:`cnot_netlist` from a :class:`CnotEtas` bundle."""
    return cnot_netlist(
        eta_half_1=etas.eta_half_1,
        eta_half_2=etas.eta_half_2,
        eta_third_control=etas.eta_third_control,
        eta_third_lower_a=etas.eta_third_lower_a,
        eta_third_lower_b=etas.eta_third_lower_b,
        convention=convention,
    )
