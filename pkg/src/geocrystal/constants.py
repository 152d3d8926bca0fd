"""Catalogue constants: type ids, rank bounds, sampling ranges and suite names.

Everything tunable about verification runs lives here so that suites and tests agree on
the same defaults.
"""

from __future__ import annotations

# ============================================================
# Affine type ids (JSON spelling) and minimal ranks
# ============================================================
TYPE_IDS: tuple[str, ...] = (
    "a1",
    "b1",
    "d1",
    "a2-odd",
    "d2",
    "a2-even",
    "a2-even-dagger",
)

MIN_RANK: dict[str, int] = {
    "a1": 2,
    "b1": 2,
    "d1": 4,
    "a2-odd": 3,
    "d2": 2,
    "a2-even": 2,
    "a2-even-dagger": 2,
}

# Folding hosts B(D1_N) are built from N = 3 on; B(D1_3) hosts B1_2.
HOST_MIN_RANK = 3

# Types whose V-model has a second chart V2 reached through σ̄.
V2_TYPES: frozenset[str] = frozenset({"a2-even", "a2-even-dagger"})

# Types that are restrictions of B(D1) to a fixed-point variety.
FOLDED_TYPES: tuple[str, ...] = ("b1", "d2", "a2-odd", "a2-even")

# Types with an explicit tropical R map.
R_TYPES: tuple[str, ...] = ("a1", "d1", "b1", "d2", "a2-odd", "a2-even")

MODELS: tuple[str, ...] = ("V", "B", "V2")

# ============================================================
# Random sampling
# Coordinates and c are drawn from {p/q : 1 <= p, q <= SAMPLE_MAX}.
# ============================================================
SAMPLE_MAX = 20
MAX_RESAMPLES = 10
DEFAULT_SAMPLES = 50
DEFAULT_SEED = 0
DEFAULT_SPECTRA: tuple[str, ...] = ("2", "3", "5")

# ============================================================
# Ultra-discretization
# ============================================================
DEFAULT_RADIUS = 2
DEFAULT_LEVELS: tuple[int, ...] = (1, 2, 3)
EXPONENT_RANGE = 5  # degree checks draw exponents from [-5, 5]
CONNECTIVITY_SLACK = 1
CONNECTIVITY_NODE_CAP = 500_000
# Above this many pairs the combinatorial R checks sample the box instead of sweeping it.
EXHAUSTIVE_PAIR_CAP = 2_000
DEGREE_VECTORS = 100

# ============================================================
# Suites understood by `geocrystal verify`
# ============================================================
SUITES: tuple[str, ...] = (
    "axioms",
    "verma",
    "sigma-bar",
    "iso",
    "product",
    "folding",
    "mmatrix",
    "rmap",
    "ud",
)
ALL_SUITE = "all"
