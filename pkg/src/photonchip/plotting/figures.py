"""
SVG figures for visibility scans and coincidence dips.

Figures are written with the Agg backend, a fixed SVG hash salt and no
date metadata so that repeated runs produce identical files.
"""

import logging
from pathlib import Path
from typing import Optional, Sequence, Union

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402

from ..analysis.fitting import FitResult  # noqa: E402
from ..core.config import PlottingConfig  # noqa: E402
from ..interference.dip import DipCurve, dip_model  # noqa: E402

logger = logging.getLogger(__name__)

SVG_HASH_SALT = "photonchip"
FIT_SAMPLES = 400


class FigureWriter:
    """Draws and saves the command-line figures."""

    def __init__(self, config: Optional[PlottingConfig] = None) -> None:
        self.config = config or PlottingConfig()

    def _new_figure(self) -> Figure:
        fig, _ = plt.subplots(
            figsize=tuple(self.config.figure_size), dpi=self.config.dpi
        )
        return fig

    def save(self, fig: Figure, output_path: Union[str, Path]) -> Path:
        """Write ``fig`` as SVG and close it."""
        output_file = Path(output_path)
        output_file.parent.mkdir(parents=True, exist_ok=True)
        try:
            rc = {"svg.hashsalt": SVG_HASH_SALT, "svg.fonttype": "path"}
            with plt.rc_context(rc):
                fig.savefig(
                    output_file,
                    format="svg",
                    metadata={"Date": None},
                    facecolor="white",
                    edgecolor="none",
                )
        finally:
            plt.close(fig)
        logger.info("Figure written to %s", output_file)
        return output_file

    def visibility_scan(
        self,
        etas: Sequence[float],
        visibilities: Sequence[float],
        output_path: Union[str, Path],
        marker: Optional[float] = None,
    ) -> Path:
        """Ideal two-photon visibility against coupler reflectivity."""
        fig = self._new_figure()
        ax = fig.axes[0]
        ax.plot(etas, visibilities, color=self.config.color("curve"), linewidth=1.5)
        if marker is not None:
            ax.axvline(
                marker, color=self.config.color("expected"), linestyle="--", linewidth=1
            )
        ax.set_xlim(0.0, 1.0)
        ax.set_ylim(0.0, 1.05)
        ax.set_xlabel("reflectivity η")
        ax.set_ylabel("ideal visibility")
        ax.grid(True, alpha=0.3)
        return self.save(fig, output_path)

    def dip(
        self,
        curve: DipCurve,
        output_path: Union[str, Path],
        fit: Optional[FitResult] = None,
        accidentals: Optional[float] = None,
        expected_minimum: Optional[float] = None,
    ) -> Path:
        """Dip data with Poisson error bars, the fitted model and reference levels.

        Args:
            curve: Measured counts
            output_path: SVG destination
            fit: Fitted model to overlay
            accidentals: Accidental coincidence level, drawn as a horizontal line
            expected_minimum: Dip-centre counts expected from the coupler reflectivity
        """
        fig = self._new_figure()
        ax = fig.axes[0]
        ax.errorbar(
            curve.delays,
            curve.counts,
            yerr=curve.errors,
            fmt="o",
            markersize=3,
            capsize=2,
            color=self.config.color("data"),
            label="data",
        )
        if fit is not None:
            grid = np.linspace(curve.delays[0], curve.delays[-1], FIT_SAMPLES)
            ax.plot(
                grid,
                dip_model(grid, fit.params),
                color=self.config.color("fit"),
                label=f"fit, V={fit.params.v:.3f}",
            )
        if accidentals is not None:
            ax.axhline(
                accidentals, color=self.config.color("accidentals"), label="accidentals"
            )
        if expected_minimum is not None:
            ax.axhline(
                expected_minimum,
                color=self.config.color("expected"),
                linestyle="--",
                label="expected minimum",
            )
        ax.set_xlabel("delay (μm)")
        ax.set_ylabel("coincidences")
        ax.set_ylim(bottom=0.0)
        ax.legend(loc="lower right", fontsize="small")
        return self.save(fig, output_path)
