"""Configuration management for photonchip."""

import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional

import yaml


@dataclass
class SimulationConfig:
    """Configuration for circuit simulation."""

    convention: str = "real"  # real or symmetric coupler matrix


@dataclass
class FittingConfig:
    """Configuration for dip fitting."""

    max_iterations: int = 200
    tolerance: float = 1e-12
    center_wavelength_nm: float = 804.0  # for the filter-limited FWHM comparison
    filter_fwhm_nm: float = 2.0


@dataclass
class SweepConfig:
    """Configuration for reflectivity tolerance sweeps."""

    grid_points: int = 11
    mc_samples: int = 10000
    interpretation: str = "absolute"  # absolute or relative half-widths
    distribution: str = "uniform"  # uniform or gaussian (Monte Carlo only)
    max_workers: int = 1
    progress: bool = False


@dataclass
class PlottingConfig:
    """Configuration for SVG figures."""

    figure_size: tuple = (6.4, 4.8)
    dpi: int = 100
    colors: Optional[Dict[str, str]] = None

    def color(self, name: str) -> str:
        """Look up a named colour, falling back to the built-in palette."""
        defaults = {
            "data": "#000000",
            "fit": "#d62728",
            "accidentals": "#1f77b4",
            "expected": "#2ca02c",
            "curve": "#1f77b4",
        }
        if self.colors and name in self.colors:
            return self.colors[name]
        return defaults.get(name, "#333333")


@dataclass
class Config:
    """Main configuration class."""

    simulation: SimulationConfig = field(default_factory=SimulationConfig)
    fitting: FittingConfig = field(default_factory=FittingConfig)
    sweep: SweepConfig = field(default_factory=SweepConfig)
    plotting: PlottingConfig = field(default_factory=PlottingConfig)

    seed: int = 0

    # Logging
    log_level: str = "INFO"
    log_file: Optional[str] = None

    @classmethod
    def from_file(cls, config_path: str) -> "Config":
        """Load configuration from YAML file."""
        config_file = Path(config_path)

        if not config_file.exists():
            raise FileNotFoundError(f"Configuration file not found: {config_file}")

        with open(config_file, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}

        return cls.from_dict(data)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Config":
        """Create configuration from dictionary."""
        config = cls()

        if "simulation" in data:
            config.simulation = SimulationConfig(**data["simulation"])

        if "fitting" in data:
            config.fitting = FittingConfig(**data["fitting"])

        if "sweep" in data:
            config.sweep = SweepConfig(**data["sweep"])

        if "plotting" in data:
            plotting = dict(data["plotting"])
            if "figure_size" in plotting:
                plotting["figure_size"] = tuple(plotting["figure_size"])
            config.plotting = PlottingConfig(**plotting)

        nested = ["simulation", "fitting", "sweep", "plotting"]
        for key, value in data.items():
            if key not in nested and hasattr(config, key):
                setattr(config, key, value)

        return config

    @classmethod
    def from_env(cls, base: Optional["Config"] = None) -> "Config":
        """Apply environment variable overrides.

        Args:
            base: Configuration to override; defaults are used when None

        Returns:
            The updated configuration
        """
        config = base or cls()

        seed = os.getenv("PHOTONCHIP_SEED")
        if seed:
            try:
                config.seed = int(seed)
            except ValueError as e:
                raise ValueError(
                    f"PHOTONCHIP_SEED must be an integer, got '{seed}'"
                ) from e

        log_level = os.getenv("PHOTONCHIP_LOG_LEVEL")
        if log_level:
            config.log_level = log_level

        return config

    def to_dict(self) -> Dict[str, Any]:
        """Convert configuration to dictionary."""
        plotting = asdict(self.plotting)
        plotting["figure_size"] = list(self.plotting.figure_size)
        return {
            "simulation": asdict(self.simulation),
            "fitting": asdict(self.fitting),
            "sweep": asdict(self.sweep),
            "plotting": plotting,
            "seed": self.seed,
            "log_level": self.log_level,
            "log_file": self.log_file,
        }

    def save_to_file(self, config_path: str) -> None:
        """Save configuration to YAML file."""
        config_file = Path(config_path)
        config_file.parent.mkdir(parents=True, exist_ok=True)

        with open(config_file, "w", encoding="utf-8") as f:
            yaml.dump(self.to_dict(), f, default_flow_style=False, indent=2)
