"""
Reflectivity tolerance sweeps over labelled couplers.

A sweep perturbs selected couplers around their nominal reflectivity,
rebuilds the truth table for each assignment and scores it against a
reference, either by similarity to a reference table or by logical
fidelity to a target permutation.
"""

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from tqdm import tqdm

from ..circuits.netlist import Convention, DirectionalCoupler, LogicalEncoding, Netlist
from ..metrics.truth_table import (
    CNOT,
    PostSelectionError,
    TruthTable,
    logical_fidelity,
    similarity,
    truth_table,
)
from ..utils.helpers import read_json, write_json

logger = logging.getLogger(__name__)

RNG_ALGORITHM = "numpy.random.PCG64 seeded by SeedSequence([seed, sample_index])"
IDEAL_NOTE = (
    "Both tables are simulated: the reference is an ideal-model table, not measured "
    "counts, so this bounds the ideal-versus-ideal similarity only."
)
QUANTILES = (0.01, 0.5, 0.99)

Assignment = Tuple[Tuple[str, float], ...]


class UnknownLabelError(KeyError):
    """A swept label is not a coupler of the netlist."""

    def __init__(self, label: str, available: Sequence[str]) -> None:
        self.label = label
        self.available = tuple(available)
        super().__init__(label)

    def __str__(self) -> str:
        available = ", ".join(self.available) or "(none)"
        return f"unknown element label '{self.label}'; available: {available}"


class Interpretation(Enum):
    """How a half-width is applied to the nominal reflectivity."""

    ABSOLUTE = "absolute"
    RELATIVE = "relative"


class Distribution(Enum):
    """Monte Carlo sampling law; GAUSSIAN uses the half-width as sigma."""

    UNIFORM = "uniform"
    GAUSSIAN = "gaussian"


class Metric(Enum):
    SIMILARITY = "similarity"
    FIDELITY = "fidelity"


@dataclass(frozen=True)
class VarySpec:
    """One swept coupler."""

    label: str
    half_width: float
    distribution: Distribution = Distribution.UNIFORM

    def __post_init__(self) -> None:
        if self.half_width < 0:
            raise ValueError(f"half-width for '{self.label}' must be non-negative")
        object.__setattr__(self, "distribution", Distribution(self.distribution))

    @classmethod
    def parse(
        cls, text: str, distribution: Union[Distribution, str] = Distribution.UNIFORM
    ) -> "VarySpec":
        """Parse ``label=half_width``."""
        label, sep, width = text.partition("=")
        if not sep or not label.strip():
            raise ValueError(f"expected label=half_width, got '{text}'")
        try:
            half_width = float(width)
        except ValueError:
            raise ValueError(f"invalid half-width in '{text}'") from None
        return cls(label.strip(), half_width, Distribution(distribution))

    def spread(self, nominal: float, interpretation: Interpretation) -> float:
        if interpretation is Interpretation.RELATIVE:
            return self.half_width * nominal
        return self.half_width


@dataclass(frozen=True)
class SweepMode:
    """GRID with ``count`` points per axis, or MC with ``count`` samples."""

    kind: str
    count: int

    def __post_init__(self) -> None:
        if self.kind not in ("grid", "mc"):
            raise ValueError(f"sweep mode must be grid or mc, got '{self.kind}'")
        if self.count < 1:
            raise ValueError(f"sweep mode count must be at least 1, got {self.count}")

    @classmethod
    def grid(cls, points: int) -> "SweepMode":
        return cls("grid", points)

    @classmethod
    def mc(cls, samples: int) -> "SweepMode":
        return cls("mc", samples)

    @classmethod
    def parse(
        cls, text: str, default_counts: Optional[Dict[str, int]] = None
    ) -> "SweepMode":
        """Parse ``grid:N`` or ``mc:N``.

        A bare ``grid`` or ``mc`` takes its count from ``default_counts``.
        """
        kind, sep, count = text.partition(":")
        kind = kind.strip().lower()
        if not sep:
            defaults = default_counts or {}
            if kind in defaults:
                return cls(kind, defaults[kind])
            raise ValueError(f"expected grid:N or mc:N, got '{text}'")
        try:
            return cls(kind, int(count))
        except ValueError as e:
            raise ValueError(f"invalid sweep mode '{text}': {e}") from None

    def __str__(self) -> str:
        return f"{self.kind}:{self.count}"


@dataclass(frozen=True)
class SweepPoint:
    value: float
    etas: Dict[str, float]

    def to_dict(self) -> Dict[str, Any]:
        return {"value": self.value, "etas": dict(self.etas)}


@dataclass(frozen=True)
class SweepReport:
    """Summary of a sweep; a deterministic function of its inputs and seed."""

    samples: int
    metric_name: str
    worst: SweepPoint
    best: SweepPoint
    quantiles: Dict[str, float]
    seed: int
    mode: str
    interpretation: str
    distribution: str
    nominal: Dict[str, float]
    half_widths: Dict[str, float]
    excluded: int = 0
    worst_at_corner: Optional[bool] = None
    rng: str = RNG_ALGORITHM
    note: str = IDEAL_NOTE

    def to_dict(self) -> Dict[str, Any]:
        return {
            "samples": self.samples,
            "metric": self.metric_name,
            "mode": self.mode,
            "interpretation": self.interpretation,
            "distribution": self.distribution,
            "seed": self.seed,
            "rng": self.rng,
            "nominal": self.nominal,
            "half_widths": self.half_widths,
            "worst": self.worst.to_dict(),
            "best": self.best.to_dict(),
            "quantiles": self.quantiles,
            "excluded": self.excluded,
            "worst_at_corner": self.worst_at_corner,
            "note": self.note,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SweepReport":
        def point(d: Dict[str, Any]) -> SweepPoint:
            etas = {k: float(v) for k, v in d["etas"].items()}
            return SweepPoint(float(d["value"]), etas)

        return cls(
            samples=int(data["samples"]),
            metric_name=data["metric"],
            worst=point(data["worst"]),
            best=point(data["best"]),
            quantiles={k: float(v) for k, v in data["quantiles"].items()},
            seed=int(data["seed"]),
            mode=data["mode"],
            interpretation=data["interpretation"],
            distribution=data["distribution"],
            nominal={k: float(v) for k, v in data["nominal"].items()},
            half_widths={k: float(v) for k, v in data["half_widths"].items()},
            excluded=int(data.get("excluded", 0)),
            worst_at_corner=data.get("worst_at_corner"),
            rng=data.get("rng", RNG_ALGORITHM),
            note=data.get("note", IDEAL_NOTE),
        )

    def to_json(self, path: Union[str, Path]) -> Path:
        return write_json(self.to_dict(), path)

    @classmethod
    def from_json(cls, path: Union[str, Path]) -> "SweepReport":
        return cls.from_dict(read_json(path))


@dataclass
class _Evaluator:
    netlist: Netlist
    encoding: LogicalEncoding
    convention: Convention
    metric: Metric
    reference_table: Optional[TruthTable]
    target: Sequence[int]

    def __call__(self, assignment: Assignment) -> Optional[float]:
        try:
            netlist = self.netlist.with_etas(assignment)
            table = truth_table(netlist, self.encoding, self.convention)
        except PostSelectionError as e:
            logger.warning("Excluding assignment %s: %s", dict(assignment), e)
            return None
        if self.reference_table is not None:
            return similarity(self.reference_table, table)
        return logical_fidelity(table, self.target)


def _nominal_etas(netlist: Netlist, vary: Sequence[VarySpec]) -> Dict[str, float]:
    available = tuple(e.label for e in netlist.couplers if e.label)
    nominal = {}
    for spec in vary:
        try:
            element = netlist.element(spec.label)
        except KeyError:
            raise UnknownLabelError(spec.label, available) from None
        if not isinstance(element, DirectionalCoupler):
            raise UnknownLabelError(spec.label, available)
        nominal[spec.label] = element.eta
    return nominal


def _grid_assignments(
    vary: Sequence[VarySpec],
    nominal: Dict[str, float],
    spreads: Dict[str, float],
    points: int,
) -> Tuple[List[Assignment], List[Assignment]]:
    axes = []
    corner_axes = []
    for spec in vary:
        eta, spread = nominal[spec.label], spreads[spec.label]
        lo, hi = eta - spread, eta + spread
        values = np.linspace(lo, hi, points) if points > 1 else np.array([eta])
        axes.append([(spec.label, float(x)) for x in values])
        ends = {(spec.label, float(values[0])), (spec.label, float(values[-1]))}
        corner_axes.append(sorted(ends))
    return list(itertools.product(*axes)), list(itertools.product(*corner_axes))


def _mc_assignment(
    index: int,
    seed: int,
    vary: Sequence[VarySpec],
    nominal: Dict[str, float],
    spreads: Dict[str, float],
) -> Assignment:
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, index])))
    assignment = []
    for spec in vary:
        eta, spread = nominal[spec.label], spreads[spec.label]
        if spec.distribution is Distribution.GAUSSIAN:
            value = float(np.clip(rng.normal(eta, spread), 0.0, 1.0))
        else:
            value = float(rng.uniform(eta - spread, eta + spread))
        assignment.append((spec.label, value))
    return tuple(assignment)


def sweep_eta(
    netlist: Netlist,
    encoding: LogicalEncoding,
    vary: Sequence[VarySpec],
    mode: SweepMode,
    metric: Union[Metric, str] = Metric.SIMILARITY,
    reference: Union[TruthTable, Sequence[int], None] = None,
    seed: int = 0,
    convention: Union[Convention, str] = Convention.REAL,
    interpretation: Union[Interpretation, str] = Interpretation.ABSOLUTE,
    max_workers: int = 1,
    progress: bool = False,
) -> SweepReport:
    """Evaluate a gate metric across perturbed coupler reflectivities.

    Args:
        netlist: Nominal circuit; swept couplers are addressed by label
        encoding: Logical encoding of the gate
        vary: Couplers to perturb with their half-widths
        mode: GRID (all corners included) or MC sampling
        metric: Similarity to ``reference`` or fidelity to a permutation
        reference: TruthTable for similarity (the nominal netlist's own
            table when omitted) or a permutation for fidelity (CNOT when
            omitted)
        seed: MC seed; every sample draws from its own stream
        convention: Coupler matrix convention
        interpretation: Half-widths as absolute reflectivity or relative fraction
        max_workers: Thread count; results do not depend on it
        progress: Show a tqdm progress bar

    Returns:
        SweepReport

    Raises:
        UnknownLabelError: If a label is not a coupler of ``netlist``
        ValueError: If an interval leaves [0, 1] or the reference does not
            fit the metric
        PostSelectionError: If every assignment fails post-selection
    """
    metric = Metric(metric)
    interpretation = Interpretation(interpretation)
    convention = Convention.parse(convention)
    if not vary:
        raise ValueError("at least one coupler must be varied")

    nominal = _nominal_etas(netlist, vary)
    spreads = {
        spec.label: spec.spread(nominal[spec.label], interpretation) for spec in vary
    }
    for spec in vary:
        eta, spread = nominal[spec.label], spreads[spec.label]
        if spec.distribution is Distribution.UNIFORM or mode.kind == "grid":
            if eta - spread < 0.0 or eta + spread > 1.0:
                raise ValueError(
                    f"interval {eta:.6f} +/- {spread:.6f} for '{spec.label}' "
                    "leaves [0, 1]"
                )

    reference_table: Optional[TruthTable] = None
    target: Sequence[int] = CNOT
    if metric is Metric.SIMILARITY:
        if reference is None:
            reference_table = truth_table(netlist, encoding, convention)
        elif isinstance(reference, TruthTable):
            reference_table = reference
        else:
            raise ValueError("similarity sweeps need a reference truth table")
    elif reference is not None:
        if isinstance(reference, TruthTable):
            raise ValueError("fidelity sweeps need a target permutation, not a table")
        target = tuple(reference)

    corners: List[Assignment] = []
    if mode.kind == "grid":
        assignments, corners = _grid_assignments(vary, nominal, spreads, mode.count)
    else:
        assignments = [
            _mc_assignment(i, seed, vary, nominal, spreads) for i in range(mode.count)
        ]
    logger.info(
        "Sweeping %d assignments over %s (%s)", len(assignments), list(nominal), mode
    )

    evaluate = _Evaluator(
        netlist, encoding, convention, metric, reference_table, target
    )
    bar = tqdm(total=len(assignments), desc="sweep", unit="pt", disable=not progress)
    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            values = []
            for value in pool.map(evaluate, assignments):
                values.append(value)
                bar.update()
    else:
        values = []
        for assignment in assignments:
            values.append(evaluate(assignment))
            bar.update()
    bar.close()

    kept = [(v, a) for v, a in zip(values, assignments) if v is not None]
    excluded = len(assignments) - len(kept)
    if not kept:
        raise PostSelectionError(
            "all", "post-selection fails for every swept assignment"
        )
    if excluded:
        logger.warning(
            "%d of %d assignments excluded: zero success probability",
            excluded,
            len(assignments),
        )

    scores = np.array([v for v, _ in kept])
    worst_idx = int(np.argmin(scores))
    best_idx = int(np.argmax(scores))
    worst_value = float(scores[worst_idx])

    worst_at_corner: Optional[bool] = None
    if corners:
        by_assignment = dict(zip(assignments, values))
        corner_values = [by_assignment[c] for c in corners]
        finite = [v for v in corner_values if v is not None]
        worst_at_corner = bool(finite) and min(finite) <= worst_value + 1e-12

    quantile_values = np.quantile(scores, QUANTILES)
    laws = {spec.distribution.value for spec in vary}
    distribution = laws.pop() if len(laws) == 1 else "mixed"
    report = SweepReport(
        samples=len(assignments),
        metric_name=metric.value,
        worst=SweepPoint(worst_value, dict(kept[worst_idx][1])),
        best=SweepPoint(float(scores[best_idx]), dict(kept[best_idx][1])),
        quantiles={
            f"{q * 100:g}%": float(x) for q, x in zip(QUANTILES, quantile_values)
        },
        seed=seed,
        mode=str(mode),
        interpretation=interpretation.value,
        distribution=distribution,
        nominal=nominal,
        half_widths={spec.label: spreads[spec.label] for spec in vary},
        excluded=excluded,
        worst_at_corner=worst_at_corner,
    )
    logger.info(
        "Sweep finished: worst %s %.6f, best %.6f",
        metric.value,
        report.worst.value,
        report.best.value,
    )
    return report
