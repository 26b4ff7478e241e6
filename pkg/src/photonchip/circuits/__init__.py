"""Directional-coupler circuits: netlists, the .pqc format and unitaries."""

from .cnot import (
    CNOT_ENCODING,
    CONTROL_THIRD,
    HALF_1,
    HALF_2,
    LOWER_THIRD_A,
    LOWER_THIRD_B,
    LOWER_THIRDS,
    CnotEtas,
    cnot_from_etas,
    cnot_netlist,
)
from .netlist import (
    Convention,
    CouplerSpec,
    DirectionalCoupler,
    Element,
    LogicalEncoding,
    Netlist,
    PhaseShifter,
    default_encoding,
)
from .parser import (
    NetlistParseError,
    load_netlist,
    parse_netlist,
    save_netlist,
    serialize_netlist,
)
from .unitary import assemble_unitary, coupler_unitary

__all__ = [
    "Convention",
    "CouplerSpec",
    "DirectionalCoupler",
    "PhaseShifter",
    "Element",
    "Netlist",
    "LogicalEncoding",
    "default_encoding",
    "NetlistParseError",
    "parse_netlist",
    "serialize_netlist",
    "load_netlist",
    "save_netlist",
    "coupler_unitary",
    "assemble_unitary",
    "CnotEtas",
    "cnot_netlist",
    "cnot_from_etas",
    "CNOT_ENCODING",
    "HALF_1",
    "HALF_2",
    "CONTROL_THIRD",
    "LOWER_THIRD_A",
    "LOWER_THIRD_B",
    "LOWER_THIRDS",
]
