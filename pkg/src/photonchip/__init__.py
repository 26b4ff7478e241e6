"""photonchip - post-selected linear-optical gate simulation.

Simulates integrated-waveguide circuits of directional couplers acting on
Fock states, builds post-selected logical truth tables, and analyses
two-photon interference dips.
"""

__version__ = "0.1.0"

from .circuits.cnot import CnotEtas, cnot_netlist
from .circuits.netlist import Convention, LogicalEncoding, Netlist
from .circuits.parser import load_netlist, parse_netlist, serialize_netlist
from .core.config import Config
from .fock.evolution import evolve, post_select
from .fock.states import FockState
from .metrics.truth_table import TruthTable, logical_fidelity, similarity, truth_table

__all__ = [
    "Config",
    "CnotEtas",
    "Convention",
    "FockState",
    "LogicalEncoding",
    "Netlist",
    "TruthTable",
    "cnot_netlist",
    "evolve",
    "load_netlist",
    "logical_fidelity",
    "parse_netlist",
    "post_select",
    "serialize_netlist",
    "similarity",
    "truth_table",
]
