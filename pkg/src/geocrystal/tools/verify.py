"""Suite runner: maps suite names to their record builders and assembles reports."""

from __future__ import annotations

import logging
import random
from collections.abc import Callable

from geocrystal.config import SuiteConfig
from geocrystal.constants import ALL_SUITE, FOLDED_TYPES, R_TYPES, SUITES
from geocrystal.errors import BadConfig
from geocrystal.models import CheckRecord, SuiteReport
from geocrystal.tools.folding import folding_suite
from geocrystal.tools.geom_crystal import (
    axioms_suite,
    iso_suite,
    schubert_chart,
    schubert_suite,
    sigma_bar_suite,
    verma_suite,
)
from geocrystal.tools.mmatrix import mmatrix_suite
from geocrystal.tools.product import product_suite
from geocrystal.tools.tropical_r import rmap_suite
from geocrystal.tools.ultradisc import ud_suite

logger = logging.getLogger(__name__)

SuiteFn = Callable[[SuiteConfig, random.Random], list[CheckRecord]]


def _axioms(cfg: SuiteConfig, rng: random.Random) -> list[CheckRecord]:
    records = axioms_suite(cfg, rng)
    if cfg.model == "V" and _has_schubert_chart(cfg):
        records.extend(schubert_suite(cfg, rng))
    return records


def _has_schubert_chart(cfg: SuiteConfig) -> bool:
    try:
        schubert_chart(cfg.affine_type)
    except (KeyError, ValueError):
        return False
    return True


_RUNNERS: dict[str, SuiteFn] = {
    "axioms": _axioms,
    "verma": verma_suite,
    "sigma-bar": sigma_bar_suite,
    "iso": iso_suite,
    "product": product_suite,
    "folding": folding_suite,
    "mmatrix": mmatrix_suite,
    "rmap": rmap_suite,
    "ud": ud_suite,
}


def applicable(cfg: SuiteConfig, suite: str) -> bool:
    """Whether ``suite`` has data for the configured type and model."""
    fam, model = cfg.type, cfg.model
    if suite == "sigma-bar":
        return model == "V"
    if suite == "iso":
        return fam != "a2-even-dagger" and model in ("V", "B")
    if suite == "folding":
        return fam == "d1" or fam in FOLDED_TYPES
    if suite == "mmatrix":
        return fam in ("a1", "d1") or fam in FOLDED_TYPES
    if suite == "rmap":
        return fam in R_TYPES
    return True


def suites_for(cfg: SuiteConfig, suite: str) -> list[str]:
    if suite == ALL_SUITE:
        return [name for name in SUITES if applicable(cfg, name)]
    if suite not in _RUNNERS:
        raise BadConfig(f"unknown suite {suite!r}; expected one of {', '.join((*SUITES, ALL_SUITE))}")
    if not applicable(cfg, suite):
        raise BadConfig(f"suite {suite!r} does not apply to {cfg.model}({cfg.affine_type})")
    return [suite]


def run_suite(cfg: SuiteConfig, suite: str) -> SuiteReport:
    """Run one suite (or every applicable one for "all") with a generator seeded by cfg.seed.

    Every suite gets its own generator seeded from cfg.seed, so a suite's records do not
    depend on which other suites ran before it.
    """
    names = suites_for(cfg, suite)
    report = SuiteReport(type=cfg.type, n=cfg.rank, suite=suite, seed=cfg.seed)
    for name in names:
        rng = random.Random(f"{cfg.seed}:{name}")
        logger.debug("running %s on %s(%s)", name, cfg.model, cfg.affine_type)
        records = _RUNNERS[name](cfg, rng)
        report.records.extend(records)
        failed = sum(r.failed for r in records if not r.advisory)
        logger.info("%s on %s: %d checks, %d failed samples", name, cfg.affine_type, len(records), failed)
    return report
