"""
matmor Configuration

Typed settings for matmor, read from an optional YAML file (`matmor.yaml`)
and from `MATMOR_*` environment variables, which take precedence. Nested
sections use `__` in variable names, e.g. `MATMOR_PROBE__SAMPLES`.

The most important knob is `max_n`, the enumeration bound for rank tables and
subset-indexed polynomials. `MATMOR_MAX_N` overrides it.
"""

import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict

# Load environment variables from .env file
load_dotenv()

DEFAULT_MAX_N = 22
DEFAULT_SEED = 20190926
DEFAULT_GRID = ["1/8", "1/4", "3/8", "1/2", "5/8", "3/4", "7/8", "1"]
DEFAULT_LOCATIONS = ("config/matmor.yaml", "config/matmor.yml", "matmor.yaml", "matmor.yml")


class EnumerationConfig(BaseModel):
    """Bounds for the brute-force enumerations."""
    circuit_max_n: int = Field(default=20, description="Hard cap for circuit/flat enumeration")
    exhaustive_pairs_max_n: int = Field(
        default=10,
        description="Largest n for literal all-pairs scans; above it the equivalent local forms are used",
    )


class ProbeConfig(BaseModel):
    """Defaults for the L_n probe and the floating-point log-concavity probe."""
    grid: List[str] = Field(default_factory=lambda: list(DEFAULT_GRID))
    samples: int = 200
    tolerance: float = 1e-8
    low: float = 1e-2
    high: float = 1e2

    def grid_fractions(self) -> List[Fraction]:
        return [Fraction(p) for p in self.grid]


class Config(BaseSettings):
    """
    Global configuration for matmor.
    """
    max_n: int = Field(default=DEFAULT_MAX_N, description="Enumeration bound for rank tables and polynomials")
    debug: bool = Field(default=False, description="Print status lines and tracebacks to stderr")
    cross_check: bool = Field(
        default=False,
        description="Run the redundant consistency checks (equivalent conditions, lemmas) and fail loudly",
    )
    seed: int = Field(default=DEFAULT_SEED, description="Default seed for randomized routines")
    enumeration: EnumerationConfig = Field(default_factory=EnumerationConfig)
    probe: ProbeConfig = Field(default_factory=ProbeConfig)

    model_config = SettingsConfigDict(
        env_prefix='MATMOR_',
        env_nested_delimiter='__',
        extra='ignore',
        env_file='.env',
        env_file_encoding='utf-8'
    )

    @classmethod
    def settings_customise_sources(cls, settings_cls, init_settings, env_settings, dotenv_settings,
                                   file_secret_settings):
        # Environment beats the YAML file (which arrives as init kwargs).
        return env_settings, dotenv_settings, init_settings, file_secret_settings

    @classmethod
    def load(cls, config_path: Optional[Path] = None) -> "Config":
        """
        Build the configuration from the first YAML file found, then the environment.

        Args:
            config_path: explicit file tried before the default locations.
        """
        found = _find_config_file(config_path)
        data = _read_yaml(found) if found else {}
        if data.get("debug"):
            print(f"[CONFIG] Loaded configuration from: {found}", file=sys.stderr)
        return cls(**data)


def _find_config_file(config_path: Optional[Path]) -> Optional[Path]:
    candidates = [config_path] if config_path else []
    candidates += [Path(p) for p in DEFAULT_LOCATIONS] + [Path.home() / ".matmor" / "config.yaml"]
    return next((p.resolve() for p in candidates if p.is_file()), None)


def _read_yaml(path: Path) -> Dict[str, Any]:
    try:
        with open(path, encoding="utf-8") as f:
            return yaml.safe_load(f) or {}
    except (OSError, yaml.YAMLError) as e:
        print(f"[CONFIG] Warning: ignoring unreadable config file {path}: {e}", file=sys.stderr)
        return {}


# Global config instance
settings = Config.load()
