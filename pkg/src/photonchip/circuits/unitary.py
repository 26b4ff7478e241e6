"""Assemble mode unitaries from netlists."""

import logging
from typing import Union

import numpy as np

from ..fock.evolution import INTERNAL_UNITARITY_TOLERANCE, check_unitary
from .netlist import Convention, CouplerSpec, DirectionalCoupler, Netlist

logger = logging.getLogger(__name__)


def coupler_unitary(
    coupler: CouplerSpec, convention: Union[Convention, str] = Convention.REAL
) -> np.ndarray:
    """2 x 2 matrix of a directional coupler.

    REAL: ``[[r, t], [t, -r]]``; SYMMETRIC: ``[[r, it], [it, r]]`` with
    ``r = sqrt(eta)`` and ``t = sqrt(1 - eta)``.

    Args:
        coupler: Coupler reflectivity
        convention: Matrix convention

    Returns:
        Complex 2 x 2 unitary
    """
    convention = Convention.parse(convention)
    r = np.sqrt(coupler.eta)
    t = np.sqrt(1.0 - coupler.eta)
    if convention is Convention.REAL:
        return np.array([[r, t], [t, -r]], dtype=complex)
    return np.array([[r, 1j * t], [1j * t, r]], dtype=complex)


def assemble_unitary(
    netlist: Netlist, convention: Union[Convention, str] = Convention.REAL
) -> np.ndarray:
    """Mode unitary of a whole netlist.

    Each element is embedded in the identity and left-multiplied in netlist
    order, so the first element acts first on the input modes.

    Args:
        netlist: Circuit description
        convention: Coupler matrix convention

    Returns:
        m x m complex unitary, checked to 1e-12
    """
    convention = Convention.parse(convention)
    u = np.eye(netlist.n_modes, dtype=complex)

    for element in netlist.elements:
        step = np.eye(netlist.n_modes, dtype=complex)
        if isinstance(element, DirectionalCoupler):
            idx = np.ix_(element.modes, element.modes)
            step[idx] = coupler_unitary(element.coupler, convention)
        else:
            step[element.mode, element.mode] = np.exp(1j * element.phase)
        u = step @ u

    logger.debug(
        "Assembled %dx%d unitary from %d elements (%s)",
        netlist.n_modes,
        netlist.n_modes,
        len(netlist),
        convention.value,
    )
    return check_unitary(u, INTERNAL_UNITARITY_TOLERANCE)
