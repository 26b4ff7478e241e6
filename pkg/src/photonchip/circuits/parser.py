"""
Reader and writer for the ``.pqc`` netlist text format.

Grammar (UTF-8, line oriented, 1-based mode indices)::

    # pqc v1
    modes <m>
    dc <a> <b> <eta> [±<unc>] [#label]
    ph <a> <radians> [#label]

``#`` starts a comment; on an element line the comment text is the element
label. Blank lines are ignored and the first non-comment line must be
``modes``.
"""

import logging
import math
from pathlib import Path
from typing import List, Optional, Set, Tuple, Union

from ..utils.helpers import format_sig
from .netlist import CouplerSpec, DirectionalCoupler, Element, Netlist, PhaseShifter

logger = logging.getLogger(__name__)

FORMAT_HEADER = "# pqc v1"
UNCERTAINTY_PREFIXES = ("±", "+-", "+/-")


class NetlistParseError(ValueError):
    """Raised for malformed netlist text; carries the 1-based line number."""

    def __init__(self, line_number: int, message: str) -> None:
        self.line_number = line_number
        self.reason = message
        super().__init__(f"line {line_number}: {message}")


def _split_comment(line: str) -> Tuple[str, Optional[str]]:
    body, sep, comment = line.partition("#")
    label = comment.strip() if sep else None
    return body.strip(), label or None


def _parse_int(token: str, what: str, line_number: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise NetlistParseError(
            line_number, f"{what} must be an integer, got '{token}'"
        ) from None


def _parse_float(token: str, what: str, line_number: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise NetlistParseError(
            line_number, f"{what} must be a number, got '{token}'"
        ) from None
    if not math.isfinite(value):
        raise NetlistParseError(line_number, f"{what} must be finite, got '{token}'")
    return value


def _parse_mode(token: str, n_modes: int, line_number: int) -> int:
    mode = _parse_int(token, "mode index", line_number)
    if not 1 <= mode <= n_modes:
        raise NetlistParseError(
            line_number, f"mode index {mode} out of range [1, {n_modes}]"
        )
    return mode - 1


def _parse_uncertainty(tokens: List[str], line_number: int) -> Optional[float]:
    if not tokens:
        return None
    text = "".join(tokens)
    for prefix in UNCERTAINTY_PREFIXES:
        if text.startswith(prefix):
            value = _parse_float(text[len(prefix):], "uncertainty", line_number)
            if value < 0:
                raise NetlistParseError(
                    line_number, f"uncertainty {value} must be non-negative"
                )
            return value
    trailing = " ".join(tokens)
    raise NetlistParseError(line_number, f"unexpected trailing text '{trailing}'")


def _parse_coupler(
    tokens: List[str], n_modes: int, label: Optional[str], line_number: int
) -> DirectionalCoupler:
    if len(tokens) < 4:
        raise NetlistParseError(line_number, "expected 'dc <a> <b> <eta> [±<unc>]'")
    mode_a = _parse_mode(tokens[1], n_modes, line_number)
    mode_b = _parse_mode(tokens[2], n_modes, line_number)
    if mode_a == mode_b:
        raise NetlistParseError(
            line_number, f"coupler joins mode {mode_a + 1} to itself"
        )
    eta = _parse_float(tokens[3], "reflectivity", line_number)
    if not 0.0 <= eta <= 1.0:
        raise NetlistParseError(line_number, f"reflectivity {eta} out of range [0, 1]")
    uncertainty = _parse_uncertainty(tokens[4:], line_number)
    return DirectionalCoupler(mode_a, mode_b, CouplerSpec(eta, uncertainty), label)


def _parse_phase(
    tokens: List[str], n_modes: int, label: Optional[str], line_number: int
) -> PhaseShifter:
    if len(tokens) != 3:
        raise NetlistParseError(line_number, "expected 'ph <a> <radians>'")
    mode = _parse_mode(tokens[1], n_modes, line_number)
    phase = _parse_float(tokens[2], "phase", line_number)
    return PhaseShifter(mode, phase, label)


def parse_netlist(text: str) -> Netlist:
    """Parse ``.pqc`` text into a netlist.

    Args:
        text: Netlist source

    Returns:
        Parsed netlist with 0-based mode indices

    Raises:
        NetlistParseError: For unknown directives, out-of-range mode indices
            or reflectivities, a missing or duplicate ``modes`` line, or
            duplicate labels; the message names the line number
    """
    n_modes: Optional[int] = None
    elements: List[Element] = []
    seen_labels: Set[str] = set()

    for line_number, raw in enumerate(text.splitlines(), start=1):
        body, label = _split_comment(raw)
        if not body:
            continue

        tokens = body.split()
        directive = tokens[0].lower()

        if directive == "modes":
            if n_modes is not None:
                raise NetlistParseError(line_number, "duplicate 'modes' line")
            if len(tokens) != 2:
                raise NetlistParseError(line_number, "expected 'modes <m>'")
            n_modes = _parse_int(tokens[1], "mode count", line_number)
            if n_modes < 1:
                raise NetlistParseError(
                    line_number, f"mode count must be at least 1, got {n_modes}"
                )
            continue

        if n_modes is None:
            raise NetlistParseError(
                line_number, "the first directive must be 'modes <m>'"
            )

        if directive == "dc":
            element: Element = _parse_coupler(tokens, n_modes, label, line_number)
        elif directive == "ph":
            element = _parse_phase(tokens, n_modes, label, line_number)
        else:
            raise NetlistParseError(line_number, f"unknown directive '{tokens[0]}'")

        if label is not None:
            if label in seen_labels:
                raise NetlistParseError(line_number, f"duplicate label '{label}'")
            seen_labels.add(label)
        elements.append(element)

    if n_modes is None:
        last_line = max(1, len(text.splitlines()))
        raise NetlistParseError(last_line, "missing 'modes <m>' line")

    logger.debug("Parsed netlist: %d modes, %d elements", n_modes, len(elements))
    return Netlist(n_modes, tuple(elements))


def serialize_netlist(netlist: Netlist) -> str:
    """Write a netlist as ``.pqc`` text with twelve significant digits."""
    lines = [FORMAT_HEADER, f"modes {netlist.n_modes}"]
    for element in netlist.elements:
        if isinstance(element, DirectionalCoupler):
            modes = f"{element.mode_a + 1} {element.mode_b + 1}"
            line = f"dc {modes} {format_sig(element.eta)}"
            if element.coupler.uncertainty is not None:
                line += f" ±{format_sig(element.coupler.uncertainty)}"
        else:
            line = f"ph {element.mode + 1} {format_sig(element.phase)}"
        if element.label:
            line += f" #{element.label}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def load_netlist(path: Union[str, Path]) -> Netlist:
    """Read and parse a ``.pqc`` file."""
    netlist_path = Path(path)
    if not netlist_path.exists():
        raise FileNotFoundError(f"Netlist file not found: {netlist_path}")
    with open(netlist_path, "r", encoding="utf-8") as f:
        return parse_netlist(f.read())


def save_netlist(netlist: Netlist, path: Union[str, Path]) -> Path:
    """Serialize ``netlist`` to ``path``."""
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", encoding="utf-8") as f:
        f.write(serialize_netlist(netlist))
    return out
