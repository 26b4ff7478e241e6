"""Command-line interface for photonchip."""

import logging
from pathlib import Path
from typing import Any, List, Optional, Tuple

import click
import numpy as np
import pandas as pd

from .analysis.fitting import fit_dip, synth_dip
from .analysis.sweep import (
    Distribution,
    Interpretation,
    Metric,
    SweepMode,
    UnknownLabelError,
    VarySpec,
    sweep_eta,
)
from .circuits.cnot import CnotEtas, cnot_from_etas
from .circuits.netlist import Convention, LogicalEncoding, Netlist, default_encoding
from .circuits.parser import NetlistParseError, load_netlist
from .core.config import Config
from .interference.dip import (
    DipCurve,
    DipParams,
    dip_fwhm_from_filter,
    filter_model_ratio,
)
from .interference.visibility import (
    AccidentalCorrectionError,
    dip_minimum_for_eta,
    v_ideal,
    visibility_record,
)
from .metrics.truth_table import (
    BASIS,
    CNOT,
    IDENTITY,
    PostSelectionError,
    TruthTable,
    logical_fidelity,
    similarity,
    truth_table,
)
from .plotting.figures import FigureWriter
from .utils.helpers import parse_float_list, write_json
from .utils.logging import setup_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_SIMULATION = 3
EXIT_NOT_CONVERGED = 4

TARGETS = {"cnot": CNOT, "identity": IDENTITY}
SEED_HELP = "Seed (falls back to PHOTONCHIP_SEED, then configuration)"


def _fail(ctx: Any, command: str, error: Exception, code: int) -> None:
    click.echo(f"Error: {error}", err=True)
    logger.error("%s command failed: %s", command, error)
    ctx.exit(code)


def _circuit_options(func: Any) -> Any:
    """Shared --circuit/--cnot/--etas/--convention options."""
    func = click.option(
        "--convention",
        type=click.Choice([c.value for c in Convention]),
        help="Coupler matrix convention (defaults to configuration)",
    )(func)
    func = click.option(
        "--etas",
        help="Five CNOT reflectivities: third-control,third-a,third-b,half-1,half-2",
    )(func)
    func = click.option(
        "--cnot", is_flag=True, help="Use the built-in six-mode CNOT"
    )(func)
    func = click.option(
        "--circuit", type=click.Path(), help="Netlist file (.pqc)"
    )(func)
    return func


def _load_circuit(
    circuit: Optional[str], cnot: bool, etas: Optional[str], convention: Convention
) -> Tuple[Netlist, LogicalEncoding]:
    if bool(circuit) == cnot:
        raise ValueError("give exactly one of --circuit or --cnot")
    if circuit:
        if etas:
            raise ValueError("--etas only applies to --cnot")
        netlist = load_netlist(circuit)
        return netlist, default_encoding(netlist.n_modes)
    if etas:
        bundle = CnotEtas.from_sequence(parse_float_list(etas, 5))
    else:
        bundle = CnotEtas.nominal()
    return cnot_from_etas(bundle, convention)


@click.group()
@click.option(
    "--config", "-c", type=click.Path(exists=True), help="Configuration file path"
)
@click.option("--log-level", help="Logging level (defaults to configuration)")
@click.option("--log-file", help="Log file path")
@click.pass_context
def main(
    ctx: Any,
    config: Optional[str] = None,
    log_level: Optional[str] = None,
    log_file: Optional[str] = None,
) -> None:
    """photonchip - linear-optical gate simulation and dip analysis."""
    if config:
        config_obj = Config.from_file(config)
        source = config
    else:
        default_config_path = Path("config/settings.yaml")
        if default_config_path.exists():
            config_obj = Config.from_file(str(default_config_path))
            source = str(default_config_path)
        else:
            config_obj = Config()
            source = "built-in defaults"

    try:
        config_obj = Config.from_env(config_obj)
    except ValueError as e:
        _fail(ctx, "startup", e, EXIT_INPUT)

    setup_logging(
        level=log_level or config_obj.log_level,
        log_file=log_file or config_obj.log_file,
    )
    logger.info("Configuration loaded from %s", source)
    ctx.obj = config_obj


@main.command("truth-table")
@_circuit_options
@click.option("--out", "-o", type=click.Path(), help="Truth table JSON output path")
@click.pass_context
def truth_table_cmd(
    ctx: Any,
    circuit: Optional[str],
    cnot: bool,
    etas: Optional[str],
    convention: Optional[str],
    out: Optional[str],
) -> None:
    """Simulate the post-selected truth table of a gate."""
    config: Config = ctx.obj
    try:
        conv = Convention.parse(convention or config.simulation.convention)
        netlist, encoding = _load_circuit(circuit, cnot, etas, conv)
        table = truth_table(netlist, encoding, conv)
    except PostSelectionError as e:
        _fail(ctx, "truth-table", e, EXIT_SIMULATION)
    except (NetlistParseError, ValueError, OSError) as e:
        _fail(ctx, "truth-table", e, EXIT_INPUT)

    click.echo("in\\out  " + "  ".join(f"{b:>8}" for b in BASIS))
    for label, row in zip(BASIS, table.rows):
        click.echo(f"{label:>6}  " + "  ".join(f"{p:8.6f}" for p in row))
    fidelity = logical_fidelity(table, CNOT)
    click.echo(f"F = {fidelity:.6f}")
    click.echo(f"S = {similarity(TruthTable.from_permutation(CNOT), table):.6f}")
    for label, p in zip(BASIS, table.success):
        click.echo(f"success {label} = {p:.6f}")

    if out:
        table.to_json(out)
        click.echo(f"Truth table written to {out}")


@main.command()
@click.option(
    "--ideal", type=click.Path(), help="Ideal truth table JSON (defaults to target)"
)
@click.option("--measured", type=click.Path(), help="Measured truth table JSON")
@click.option(
    "--counts", type=click.Path(), help="Coincidence counts CSV (input,00,01,10,11)"
)
@click.option(
    "--accidentals", type=float, help="Accidental counts subtracted from every cell"
)
@click.option(
    "--target",
    type=click.Choice(sorted(TARGETS)),
    default="cnot",
    show_default=True,
    help="Target permutation for fidelity",
)
@click.option("--out", "-o", type=click.Path(), help="Measured table JSON output")
@click.pass_context
def compare(
    ctx: Any,
    ideal: Optional[str],
    measured: Optional[str],
    counts: Optional[str],
    accidentals: Optional[float],
    target: str,
    out: Optional[str],
) -> None:
    """Compare a measured truth table with an ideal one."""
    try:
        if bool(measured) == bool(counts):
            raise ValueError("give exactly one of --measured or --counts")
        if measured and accidentals is not None:
            raise ValueError("--accidentals only applies to --counts")
        if counts:
            table = TruthTable.from_counts_csv(counts, accidentals)
        elif measured:
            table = TruthTable.from_json(measured)
        if ideal:
            reference = TruthTable.from_json(ideal)
        else:
            reference = TruthTable.from_permutation(TARGETS[target])
    except (ValueError, KeyError, OSError) as e:
        _fail(ctx, "compare", e, EXIT_INPUT)

    click.echo("in\out  " + "  ".join(f"{b:>8}" for b in BASIS))
    for label, row in zip(BASIS, table.rows):
        click.echo(f"{label:>6}  " + "  ".join(f"{p:8.6f}" for p in row))
    click.echo(f"F = {logical_fidelity(table, TARGETS[target]):.6f}")
    click.echo(f"S = {similarity(reference, table):.6f}")

    if out:
        table.to_json(out)
        click.echo(f"Measured table written to {out}")


@main.command()
@click.option("--eta", type=float, required=True, help="Coupler reflectivity")
@click.option(
    "--scan", is_flag=True, help="Write visibility over reflectivities in [0, 1]"
)
@click.option("--points", type=int, default=101, show_default=True, help="Scan points")
@click.option("--out", "-o", type=click.Path(), help="Scan output (.csv or .svg)")
@click.pass_context
def hom(ctx: Any, eta: float, scan: bool, points: int, out: Optional[str]) -> None:
    """Ideal two-photon visibility of a coupler."""
    config: Config = ctx.obj
    try:
        value = v_ideal(eta)
        if scan and not out:
            raise ValueError("--scan needs --out")
        if points < 2:
            raise ValueError("--points must be at least 2")
    except ValueError as e:
        _fail(ctx, "hom", e, EXIT_INPUT)

    click.echo(f"V_ideal = {value:.6f}")

    if scan:
        etas = np.linspace(0.0, 1.0, points)
        visibilities = np.array([v_ideal(x) for x in etas])
        out_path = Path(out)
        if out_path.suffix.lower() == ".svg":
            FigureWriter(config.plotting).visibility_scan(
                etas, visibilities, out_path, marker=eta
            )
        else:
            out_path.parent.mkdir(parents=True, exist_ok=True)
            pd.DataFrame({"eta": etas, "v_ideal": visibilities}).to_csv(
                out_path, index=False, float_format="%.12g"
            )
        click.echo(f"Scan written to {out_path}")


@main.command("fit-dip")
@click.option(
    "--data", type=click.Path(), required=True, help="Dip CSV (delay_um,counts)"
)
@click.option(
    "--eta", type=float, help="Coupler reflectivity for the relative visibility"
)
@click.option("--accidentals", type=float, help="Accidental coincidence rate")
@click.option(
    "--out", "-o", type=click.Path(), required=True, help="Fit result JSON path"
)
@click.option("--plot", type=click.Path(), help="SVG figure path")
@click.pass_context
def fit_dip_cmd(
    ctx: Any,
    data: str,
    eta: Optional[float],
    accidentals: Optional[float],
    out: str,
    plot: Optional[str],
) -> None:
    """Fit a coincidence dip and report its visibility."""
    config: Config = ctx.obj
    try:
        curve = DipCurve.from_csv(data)
        if eta is not None:
            v_ideal(eta)
        if accidentals is not None and accidentals > curve.counts.min():
            raise AccidentalCorrectionError(
                f"accidental rate {accidentals} exceeds "
                f"the minimum count {curve.counts.min():g}"
            )
        fit = fit_dip(
            curve,
            max_iterations=config.fitting.max_iterations,
            tolerance=config.fitting.tolerance,
        )
        c_class = fit.params.a
        c_quant = fit.params.a * (1.0 - fit.params.v)
        record = visibility_record(c_class, c_quant, accidentals or 0.0, eta)
        model_fwhm = dip_fwhm_from_filter(
            config.fitting.center_wavelength_nm, config.fitting.filter_fwhm_nm
        )
        ratio = filter_model_ratio(
            fit.fwhm, config.fitting.center_wavelength_nm, config.fitting.filter_fwhm_nm
        )
    except (ValueError, OSError) as e:
        _fail(ctx, "fit-dip", e, EXIT_INPUT)

    payload = fit.to_dict()
    payload["visibility"] = record.to_dict()
    payload["filter_model"] = {
        "center_wavelength_nm": config.fitting.center_wavelength_nm,
        "filter_fwhm_nm": config.fitting.filter_fwhm_nm,
        "fwhm_um": model_fwhm,
        "ratio": ratio,
    }
    write_json(payload, out)

    click.echo(f"V = {fit.params.v:.6f} +/- {fit.uncertainties.v:.6f}")
    click.echo(f"FWHM = {fit.fwhm:.6f} +/- {fit.fwhm_err:.6f} um")
    click.echo(f"FWHM filter model = {model_fwhm:.6f} um (ratio {ratio:.6f})")
    if accidentals is not None:
        click.echo(
            f"V_corrected = {record.v_corrected:.6f} +/- {record.v_corrected_err:.6f}"
        )
    if eta is not None:
        click.echo(f"V_rel = {fit.params.v / record.v_ideal:.6f}")
    if fit.degenerate:
        click.echo("Warning: flat data, visibility pinned near zero", err=True)

    if plot:
        expected = None
        if eta is not None:
            expected = dip_minimum_for_eta(c_class, eta, accidentals or 0.0)
        FigureWriter(config.plotting).dip(curve, plot, fit, accidentals, expected)

    if not fit.converged:
        click.echo(f"Error: fit did not converge: {fit.message}", err=True)
        ctx.exit(EXIT_NOT_CONVERGED)


@main.command()
@_circuit_options
@click.option(
    "--vary",
    multiple=True,
    required=True,
    help="label=half_width, repeatable or comma-separated",
)
@click.option(
    "--mode",
    help="grid:N or mc:N; a bare grid or mc uses the configured count "
    "(default grid, or mc when --distribution is given)",
)
@click.option(
    "--metric",
    type=click.Choice([m.value for m in Metric]),
    default="similarity",
    show_default=True,
)
@click.option(
    "--reference", type=click.Path(), help="Reference truth table JSON for similarity"
)
@click.option(
    "--target",
    type=click.Choice(sorted(TARGETS)),
    default="cnot",
    show_default=True,
    help="Target permutation for fidelity",
)
@click.option(
    "--interpretation",
    type=click.Choice([i.value for i in Interpretation]),
    help="Half-width interpretation",
)
@click.option(
    "--distribution",
    type=click.Choice([d.value for d in Distribution]),
    help="Monte Carlo distribution",
)
@click.option("--seed", type=int, help=SEED_HELP)
@click.option("--workers", type=int, help="Worker threads")
@click.option("--progress/--no-progress", default=None, help="Show a progress bar")
@click.option("--out", "-o", type=click.Path(), help="Sweep report JSON path")
@click.pass_context
def sweep(
    ctx: Any,
    circuit: Optional[str],
    cnot: bool,
    etas: Optional[str],
    convention: Optional[str],
    vary: Tuple[str, ...],
    mode: Optional[str],
    metric: str,
    reference: Optional[str],
    target: str,
    interpretation: Optional[str],
    distribution: Optional[str],
    seed: Optional[int],
    workers: Optional[int],
    progress: Optional[bool],
    out: Optional[str],
) -> None:
    """Sweep coupler reflectivities and report the worst-case metric."""
    config: Config = ctx.obj
    settings = config.sweep
    try:
        conv = Convention.parse(convention or config.simulation.convention)
        netlist, encoding = _load_circuit(circuit, cnot, etas, conv)
        dist = distribution or settings.distribution
        specs: List[VarySpec] = [
            VarySpec.parse(item, dist)
            for entry in vary
            for item in entry.split(",")
            if item.strip()
        ]
        defaults = {"grid": settings.grid_points, "mc": settings.mc_samples}
        if mode:
            sweep_mode = SweepMode.parse(mode, defaults)
        elif distribution:
            sweep_mode = SweepMode.mc(settings.mc_samples)
        else:
            sweep_mode = SweepMode.grid(settings.grid_points)
        ref: Any = None
        if metric == Metric.SIMILARITY.value and reference:
            ref = TruthTable.from_json(reference)
        elif metric == Metric.FIDELITY.value:
            ref = TARGETS[target]
        report = sweep_eta(
            netlist,
            encoding,
            specs,
            sweep_mode,
            metric=metric,
            reference=ref,
            seed=config.seed if seed is None else seed,
            convention=conv,
            interpretation=interpretation or settings.interpretation,
            max_workers=workers or settings.max_workers,
            progress=settings.progress if progress is None else progress,
        )
    except UnknownLabelError as e:
        _fail(ctx, "sweep", e, EXIT_INPUT)
    except PostSelectionError as e:
        _fail(ctx, "sweep", e, EXIT_SIMULATION)
    except (ValueError, OSError) as e:
        _fail(ctx, "sweep", e, EXIT_INPUT)

    etas_text = ", ".join(f"{k}={v:.6f}" for k, v in report.worst.etas.items())
    click.echo(f"worst {report.metric_name} = {report.worst.value:.6f} at {etas_text}")
    click.echo(f"best {report.metric_name} = {report.best.value:.6f}")
    quantiles = ", ".join(f"{k} {v:.6f}" for k, v in report.quantiles.items())
    click.echo(f"quantiles: {quantiles}")
    if report.excluded:
        click.echo(f"excluded samples: {report.excluded}")
    if out:
        report.to_json(out)
        click.echo(f"Sweep report written to {out}")


@main.command("synth-dip")
@click.option("--a", "baseline", type=float, default=1000.0, help="Baseline counts")
@click.option("--b", "slope", type=float, default=0.0, help="Baseline slope per um")
@click.option("--v", "vis", type=float, default=0.95, help="Visibility")
@click.option("--x0", type=float, default=0.0, help="Dip centre, um")
@click.option("--fwhm", type=float, default=249.4, help="Dip FWHM, um")
@click.option("--span", type=float, default=4.0, help="Scan width in FWHMs")
@click.option("--points", type=int, default=60, help="Number of delays")
@click.option("--seed", type=int, help=SEED_HELP)
@click.option("--out", "-o", type=click.Path(), required=True, help="CSV output path")
@click.pass_context
def synth_dip_cmd(
    ctx: Any,
    baseline: float,
    slope: float,
    vis: float,
    x0: float,
    fwhm: float,
    span: float,
    points: int,
    seed: Optional[int],
    out: str,
) -> None:
    """Write a Poisson-sampled synthetic dip."""
    config: Config = ctx.obj
    try:
        params = DipParams.from_fwhm(a=baseline, b=slope, v=vis, x0=x0, fwhm=fwhm)
        params.validate()
        if points < 2:
            raise ValueError("--points must be at least 2")
        half = span * fwhm / 2.0
        delays = np.linspace(x0 - half, x0 + half, points)
        curve = synth_dip(params, delays, config.seed if seed is None else seed)
    except ValueError as e:
        _fail(ctx, "synth-dip", e, EXIT_INPUT)

    curve.to_csv(out)
    click.echo(f"Synthetic dip written to {out}")


@main.command("export-config")
@click.option(
    "--out", "-o", type=click.Path(), default="config/settings.yaml", show_default=True
)
@click.pass_context
def export_config(ctx: Any, out: str) -> None:
    """Write the effective configuration to YAML."""
    ctx.obj.save_to_file(out)
    click.echo(f"Configuration written to {out}")


if __name__ == "__main__":
    main()
