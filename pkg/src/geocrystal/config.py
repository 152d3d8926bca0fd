"""Configuration loader for verification suites.

A suite configuration names the type, rank and model under test together with the
sampling knobs. Every field has a default; CLI flags override values read from YAML.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any

import yaml
from pydantic import BaseModel, Field, ValidationError, model_validator

from geocrystal.cartan import AffineTypeId
from geocrystal.constants import (
    DEFAULT_LEVELS,
    DEFAULT_RADIUS,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    DEFAULT_SPECTRA,
    MAX_RESAMPLES,
    MIN_RANK,
    MODELS,
    TYPE_IDS,
    V2_TYPES,
)
from geocrystal.errors import BadConfig
from geocrystal.semiring import parse_scalar


class SuiteConfig(BaseModel):
    """Parameters of one verification run; the seed fixes every random draw."""

    type: str = "d1"
    rank: int = 4
    model: str = "V"
    spectra: list[str] = Field(default_factory=lambda: list(DEFAULT_SPECTRA))
    samples: int = Field(default=DEFAULT_SAMPLES, gt=0)
    seed: int = DEFAULT_SEED
    radius: int = Field(default=DEFAULT_RADIUS, ge=0)
    levels: list[int] = Field(default_factory=lambda: list(DEFAULT_LEVELS))
    max_resamples: int = Field(default=MAX_RESAMPLES, ge=0)

    @model_validator(mode="after")
    def validate_catalogue(self) -> SuiteConfig:
        if self.type not in TYPE_IDS:
            raise ValueError(f"unknown type {self.type!r}; expected one of {', '.join(TYPE_IDS)}")
        if self.rank < MIN_RANK[self.type]:
            raise ValueError(f"{self.type} needs rank >= {MIN_RANK[self.type]}")
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}")
        if self.model == "V2" and self.type not in V2_TYPES:
            raise ValueError(f"model V2 does not exist for {self.type}")
        for s in self.spectra:
            if parse_scalar(s) <= 0:
                raise ValueError("spectral parameters must be positive")
        if len(self.levels) < 2:
            raise ValueError("at least two levels are needed")
        return self

    @property
    def affine_type(self) -> AffineTypeId:
        return AffineTypeId(self.type, self.rank)

    @property
    def spectral_values(self) -> list:
        return [parse_scalar(s) for s in self.spectra]


def make_config(**raw: Any) -> SuiteConfig:
    """Build a SuiteConfig, reporting validation problems as BadConfig."""
    try:
        return SuiteConfig(**{k: v for k, v in raw.items() if v is not None})
    except (ValidationError, ValueError) as e:
        raise BadConfig(str(e)) from e


def load_config(config_path: str, **overrides: Any) -> SuiteConfig:
    """Load a suite config from YAML, then apply non-None overrides."""
    path = Path(config_path)
    if not path.exists():
        raise FileNotFoundError(f"Config file not found: {config_path}")

    with open(path, encoding="utf-8") as f:
        raw = yaml.safe_load(f) or {}
    if not isinstance(raw, dict):
        raise BadConfig(f"Config file must contain a mapping: {config_path}")

    raw.update({k: v for k, v in overrides.items() if v is not None})
    return make_config(**raw)
