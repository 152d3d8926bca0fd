"""Seeded random points and the resample loop shared by every verification suite."""

from __future__ import annotations

import logging
import random
from collections.abc import Callable
from fractions import Fraction

from geocrystal.cartan import AffineTypeId
from geocrystal.catalogue import GeometricCrystalModel, build_model
from geocrystal.constants import MAX_RESAMPLES, SAMPLE_MAX
from geocrystal.errors import DomainError
from geocrystal.models import CheckRecord, GCPoint

logger = logging.getLogger(__name__)

MAX_DETAILS = 5


# ============================================================
# Random scalars and points
# ============================================================


def random_positive(rng: random.Random, bound: int = SAMPLE_MAX) -> Fraction:
    """Uniform draw from {p/q : 1 <= p, q <= bound}."""
    return Fraction(rng.randint(1, bound), rng.randint(1, bound))


def random_values(
    gc: GeometricCrystalModel, rng: random.Random, spectral: Fraction
) -> dict[str, Fraction]:
    """Random coordinates for ``gc``; B-models solve their dependent coordinate."""
    values = {name: random_positive(rng) for name in gc.coords if name != gc.dependent}
    if gc.dependent is not None:
        values[gc.dependent] = gc.solve_dependent(values, spectral)
    return values


def random_point(
    t: AffineTypeId, model: str, rng: random.Random, spectral: Fraction | int = 1
) -> GCPoint:
    gc = build_model(t, model)
    spectral = Fraction(spectral)
    return GCPoint.build(t, model, spectral, random_values(gc, rng, spectral))


def unit_point(t: AffineTypeId, model: str, spectral: Fraction | int = 1) -> GCPoint:
    """All free coordinates 1; a B-model's dependent coordinate absorbs the constraint."""
    gc = build_model(t, model)
    spectral = Fraction(spectral)
    values = {name: Fraction(1) for name in gc.coords if name != gc.dependent}
    if gc.dependent is not None:
        values[gc.dependent] = gc.solve_dependent(values, spectral)
    return GCPoint.build(t, model, spectral, values)


# ============================================================
# Sampling loop
# ============================================================

Trial = Callable[[random.Random], str | None]


def run_trials(
    record: CheckRecord,
    trial: Trial,
    samples: int,
    rng: random.Random,
    max_resamples: int = MAX_RESAMPLES,
) -> CheckRecord:
    """Run ``trial`` ``samples`` times.

    A trial returns None on success or a failure message. DomainError triggers a fresh
    draw, up to ``max_resamples`` times, after which the sample counts as skipped.
    """
    for index in range(samples):
        for _ in range(max_resamples + 1):
            try:
                message = trial(rng)
            except DomainError as e:
                logger.debug("%s/%s sample %d resampled: %s", record.suite, record.check, index, e)
                continue
            if message is None:
                record.passed += 1
            else:
                record.failed += 1
                if len(record.details) < MAX_DETAILS:
                    record.details.append(f"sample {index}: {message}")
            break
        else:
            record.skipped += 1
            logger.debug("%s/%s sample %d skipped", record.suite, record.check, index)
    return record


def mismatch(left: dict, right: dict) -> str | None:
    """Name the first key whose values differ, or None when the dicts agree."""
    if left.keys() != right.keys():
        return f"keys differ: {sorted(left.keys() ^ right.keys())}"
    for key in left:
        if left[key] != right[key]:
            return f"{key}: {left[key]} != {right[key]}"
    return None
