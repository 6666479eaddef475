"""Configuration management."""

import os
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, ClassVar

import yaml

from .exceptions import ConfigError

DEFAULTS_PATH = Path(__file__).parent.parent.parent / "config" / "defaults.yaml"


def _env_override(name: str, current: Any) -> Any:
    """Return the environment value for ``name`` coerced to the type of ``current``."""
    raw = os.environ.get(name)
    if raw is None:
        return current
    try:
        if isinstance(current, bool):
            return raw.lower() == "true"
        if isinstance(current, int):
            return int(raw)
        if isinstance(current, float):
            return float(raw)
    except ValueError as e:
        raise ConfigError(f"{name}={raw!r} is not a valid {type(current).__name__}", name) from e
    return raw


@dataclass
class ConstructionConfig:
    """Limits for the lazy line and plane constructions.

    Usage in .env:
        UG_MAX_STEPS=100000        # sequential steps extend_to_bound may build
        UG_EPS_HALVINGS=64         # epsilon shrink budget per step
        UG_LOCATE_HALVINGS=64      # cover shrink budget in pattern location
        UG_EAGER_STEPS=2000        # beyond this, queries materialize single steps
    """

    max_steps: int = 100_000
    eps_halvings: int = 64
    locate_halvings: int = 64
    eager_steps: int = 2000

    ENV: ClassVar[dict[str, str]] = {
        "max_steps": "UG_MAX_STEPS",
        "eps_halvings": "UG_EPS_HALVINGS",
        "locate_halvings": "UG_LOCATE_HALVINGS",
        "eager_steps": "UG_EAGER_STEPS",
    }


@dataclass
class SamplingConfig:
    """Vertex sampling settings."""

    coordinate_bits: int = 40
    default_sigma: float = 5.0

    ENV: ClassVar[dict[str, str]] = {
        "coordinate_bits": "UG_COORD_BITS",
        "default_sigma": "UG_DEFAULT_SIGMA",
    }


@dataclass
class AnalysisConfig:
    """Thresholds and caps used by the verification suite."""

    census_cutoff: int = 1_000_000
    resample_limit: int = 10_000
    failure_cap: int = 20
    significance: float = 0.01
    exact_bits: int = 24
    small_count: float = 5.0
    small_count_fraction: float = 0.2

    ENV: ClassVar[dict[str, str]] = {
        "census_cutoff": "UG_CENSUS_CUTOFF",
        "resample_limit": "UG_RESAMPLE_LIMIT",
        "failure_cap": "UG_FAILURE_CAP",
        "significance": "UG_SIGNIFICANCE",
        "exact_bits": "UG_EXACT_BITS",
    }


def _build_section(cls: type, values: dict[str, Any] | None) -> Any:
    """Instantiate a config section from YAML values, then apply env overrides."""
    values = values or {}
    known = {f.name for f in fields(cls)}
    unknown = set(values) - known
    if unknown:
        raise ConfigError(f"Unknown keys in {cls.__name__}: {sorted(unknown)}")
    section = cls(**values)
    for attr, env_name in section.ENV.items():
        setattr(section, attr, _env_override(env_name, getattr(section, attr)))
    return section


@dataclass
class AppConfig:
    """Main application configuration."""

    construction: ConstructionConfig = field(default_factory=ConstructionConfig)
    sampling: SamplingConfig = field(default_factory=SamplingConfig)
    analysis: AnalysisConfig = field(default_factory=AnalysisConfig)
    log_level: str = "INFO"

    @classmethod
    def from_yaml(cls, config_path: Path | None = None) -> "AppConfig":
        """Load configuration from a YAML file, then apply environment overrides.

        Args:
            config_path: Path to defaults.yaml. If None, uses config/defaults.yaml
                         relative to the project root.

        Returns:
            AppConfig instance.

        Raises:
            ConfigError: If the file is malformed or has unknown keys.
        """
        if config_path is None:
            config_path = DEFAULTS_PATH

        try:
            with open(config_path) as f:
                data = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ConfigError(f"Invalid YAML in {config_path}: {e}") from e

        return cls(
            construction=_build_section(ConstructionConfig, data.get("construction")),
            sampling=_build_section(SamplingConfig, data.get("sampling")),
            analysis=_build_section(AnalysisConfig, data.get("analysis")),
            log_level=os.environ.get("LOG_LEVEL", data.get("log_level", "INFO")),
        )

    @classmethod
    def load(cls, config_path: Path | None = None) -> "AppConfig":
        """Load from YAML with a graceful fallback to built-in defaults."""
        try:
            return cls.from_yaml(config_path)
        except FileNotFoundError:
            return cls(
                construction=_build_section(ConstructionConfig, None),
                sampling=_build_section(SamplingConfig, None),
                analysis=_build_section(AnalysisConfig, None),
                log_level=os.environ.get("LOG_LEVEL", "INFO"),
            )
