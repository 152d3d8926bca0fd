"""Geometric crystal operations on points and their verification suites."""

from __future__ import annotations

import logging
import random
from collections.abc import Sequence
from fractions import Fraction

from geocrystal.cartan import AffineTypeId, CartanData, cartan_matrix
from geocrystal.catalogue import (
    GeometricCrystalModel,
    MapSpec,
    build_model,
    sigma_bar_inverse_map,
    sigma_bar_map,
    xi_map,
    xi_spectral_power,
)
from geocrystal.config import SuiteConfig
from geocrystal.errors import DivisionByZero, UnsupportedModel
from geocrystal.models import CheckRecord, GCPoint
from geocrystal.tools.sampling import mismatch, random_positive, random_values, run_trials

logger = logging.getLogger(__name__)

Values = dict[str, Fraction]


# ============================================================
# Point-level operations
# ============================================================


def model_for(p: GCPoint) -> GeometricCrystalModel:
    """The model ``p`` lives on, after checking its coordinate names."""
    gc = build_model(p.affine_type, p.model)
    if set(p.coords) != set(gc.coords):
        raise UnsupportedModel(
            f"coordinates {sorted(p.coords)} do not match {p.model}({p.affine_type}): "
            f"expected {list(gc.coords)}"
        )
    return gc


def apply_e(gc: GeometricCrystalModel, i: int, c: Fraction | int, p: GCPoint) -> GCPoint:
    """e_i^c(p); the spectral parameter is unchanged."""
    c = Fraction(c)
    if c == 0:
        raise DivisionByZero("c must be nonzero")
    values = gc.act(i, c, p.values(), p.spectral)
    return p.replace(values)


def structure_functions(
    gc: GeometricCrystalModel, i: int, p: GCPoint
) -> tuple[Fraction, Fraction, Fraction]:
    """(gamma_i, epsilon_i, phi_i) at p with phi_i = gamma_i * epsilon_i."""
    gamma, eps = gc.structure(p.values(), p.spectral)
    return gamma[i], eps[i], gamma[i] * eps[i]


def constraint_holds(gc: GeometricCrystalModel, values: Values, spectral: Fraction) -> bool:
    if gc.constraint is None:
        return True
    return gc.constraint_value(values) == spectral**gc.constraint_power


def transport(chart_map: MapSpec, p: GCPoint) -> GCPoint:
    """Push a point along a rational map, converting the spectral parameter."""
    values = chart_map.run(p.values(), p.spectral)
    t, model = chart_map.target
    return GCPoint.build(t, model, chart_map.target_spectral(p.spectral), values)


def sigma_bar(p: GCPoint) -> tuple[GCPoint, Fraction]:
    """σ̄(p) and the scalar a(p)."""
    if p.model != "V":
        raise UnsupportedModel("σ̄ is defined on the V-model")
    chart_map = sigma_bar_map(p.affine_type)
    values, a = chart_map.run_with_factor(p.values(), p.spectral)
    t, model = chart_map.target
    return GCPoint.build(t, model, p.spectral, values), a


def sigma_bar_inverse(p: GCPoint) -> GCPoint:
    return transport(sigma_bar_inverse_map(p.affine_type), p)


def iso_xi(p: GCPoint, direction: str) -> GCPoint:
    """Ξ ("B->V") or Ξ⁻¹ ("V->B")."""
    chart_map = xi_map(p.affine_type, direction)
    source_model = chart_map.source[1]
    if p.model != source_model:
        raise UnsupportedModel(f"{direction} expects a {source_model}-point, got {p.model}")
    return transport(chart_map, p)


# ============================================================
# Verma relations
# ============================================================

# Words are written left to right and applied right to left.
Word = list[tuple[int, Fraction]]


def verma_words(a_ij: int, a_ji: int, i: int, j: int, c1: Fraction, c2: Fraction) -> tuple[Word, Word]:
    """Both sides of the Verma relation selected by (a_ij, a_ji)."""
    if (a_ij, a_ji) == (0, 0):
        return [(i, c1), (j, c2)], [(j, c2), (i, c1)]
    if (a_ij, a_ji) == (-1, -1):
        return (
            [(i, c1), (j, c1 * c2), (i, c2)],
            [(j, c2), (i, c1 * c2), (j, c1)],
        )
    if (a_ij, a_ji) == (-2, -1):
        return (
            [(i, c1), (j, c1**2 * c2), (i, c1 * c2), (j, c2)],
            [(j, c2), (i, c1 * c2), (j, c1**2 * c2), (i, c1)],
        )
    if (a_ij, a_ji) == (-3, -1):
        return (
            [(i, c1), (j, c1**3 * c2), (i, c1**2 * c2), (j, c1**3 * c2**2), (i, c1 * c2), (j, c2)],
            [(j, c2), (i, c1 * c2), (j, c1**3 * c2**2), (i, c1**2 * c2), (j, c1**3 * c2), (i, c1)],
        )
    if a_ji < a_ij:
        return verma_words(a_ji, a_ij, j, i, c1, c2)
    raise ValueError(f"No Verma relation for (a_ij, a_ji) = ({a_ij}, {a_ji})")


def apply_word(gc: GeometricCrystalModel, word: Word, values: Values, spectral: Fraction) -> Values:
    for i, c in reversed(word):
        values = gc.act(i, c, values, spectral)
    return values


def verify_verma(
    gc: GeometricCrystalModel,
    i: int,
    j: int,
    values: Values,
    spectral: Fraction,
    c1: Fraction,
    c2: Fraction,
) -> bool:
    if i == j:
        raise ValueError("Verma relations need i != j")
    a = cartan_matrix(gc.type)
    left, right = verma_words(a[i, j], a[j, i], i, j, c1, c2)
    return apply_word(gc, left, values, spectral) == apply_word(gc, right, values, spectral)


# ============================================================
# Schubert cell oracle
# ============================================================


def _schubert_terms(word: Sequence[int], coords: Sequence[Fraction], a: CartanData, i: int) -> list[tuple[int, Fraction]]:
    """(position, 1 / (c_1^{a_{i_1,i}} ... c_{m-1}^{a_{i_{m-1},i}} c_m)) for positions with i_m = i."""
    terms: list[tuple[int, Fraction]] = []
    weight = Fraction(1)
    for m, (letter, c_m) in enumerate(zip(word, coords)):
        if letter == i:
            terms.append((m, 1 / (weight * c_m)))
        weight *= c_m ** a[letter, i]
    return terms


def schubert_e_action(
    word: Sequence[int], coords: Sequence[Fraction], a: CartanData, i: int, c: Fraction
) -> list[Fraction]:
    """e_i^c on Y_{i_1}(c_1) ... Y_{i_k}(c_k) ξ, returning the new (c_1, ..., c_k)."""
    terms = _schubert_terms(word, coords, a, i)
    out = []
    for j, c_j in enumerate(coords):
        numer = sum((c * t if m <= j else t for m, t in terms), Fraction(0))
        denom = sum((c * t if m < j else t for m, t in terms), Fraction(0))
        if denom == 0:
            raise DivisionByZero("Schubert action denominator vanished")
        out.append(c_j * numer / denom if terms else c_j)
    return out


def schubert_structure(
    word: Sequence[int], coords: Sequence[Fraction], a: CartanData, i: int, alpha: Fraction
) -> tuple[Fraction, Fraction]:
    """(epsilon_i, gamma_i) on the cell; ``alpha`` is alpha_i evaluated at ξ."""
    eps = sum((t for _, t in _schubert_terms(word, coords, a, i)), Fraction(0))
    gamma = alpha
    for letter, c_m in zip(word, coords):
        gamma *= c_m ** a[letter, i]
    return eps, gamma


def schubert_chart(t: AffineTypeId) -> tuple[tuple[int, ...], tuple[str, ...]]:
    """Reduced word and the V-coordinates read along it, for the types with such a chart."""
    n = t.rank
    if t.family == "a1":
        word = tuple(range(n, 0, -1))
        return word, tuple(f"x{k}" for k in word)
    if t.family in ("b1", "a2-odd"):
        up = tuple(range(1, n + 1))
        down = tuple(range(n - 1, 0, -1))
        return up + down, tuple(f"x{k}" for k in up) + tuple(f"xb{k}" for k in down)
    if t.family == "d1":
        up = tuple(range(1, n - 1))
        down = tuple(range(n - 2, 0, -1))
        word = up + (n - 1, n) + down
        return word, tuple(f"x{k}" for k in up) + (f"x{n - 1}", f"x{n}") + tuple(
            f"xb{k}" for k in down
        )
    raise UnsupportedModel(f"No Schubert chart is catalogued for {t.family}")


def schubert_alpha(i: int, spectral: Fraction) -> Fraction:
    """alpha_i(ξ) for the catalogued charts: L at i = 1, otherwise 1."""
    return spectral if i == 1 else Fraction(1)


# ============================================================
# Suites
# ============================================================


def _draw(gc: GeometricCrystalModel, cfg: SuiteConfig, rng: random.Random) -> tuple[Values, Fraction]:
    spectral = rng.choice(cfg.spectral_values)
    return random_values(gc, rng, spectral), spectral


def axioms_suite(cfg: SuiteConfig, rng: random.Random) -> list[CheckRecord]:
    """gamma/epsilon transformation laws, the C^x-action property and the unit action."""
    gc = build_model(cfg.affine_type, cfg.model)
    a = cartan_matrix(gc.type)

    def weights(rng: random.Random) -> str | None:
        x, spectral = _draw(gc, cfg, rng)
        c = random_positive(rng)
        gamma, eps = gc.structure(x, spectral)
        for i in gc.indices:
            y = gc.act(i, c, x, spectral)
            gamma_y, eps_y = gc.structure(y, spectral)
            for j in gc.indices:
                if gamma_y[j] != c ** a[i, j] * gamma[j]:
                    return f"gamma_{j}(e_{i}^c x) != c^{a[i, j]} gamma_{j}(x)"
            if eps_y[i] != eps[i] / c:
                return f"epsilon_{i}(e_{i}^c x) != epsilon_{i}(x)/c"
            if not constraint_holds(gc, y, spectral):
                return f"e_{i} broke the product constraint"
        return None

    def composition(rng: random.Random) -> str | None:
        x, spectral = _draw(gc, cfg, rng)
        c1, c2 = random_positive(rng), random_positive(rng)
        for i in gc.indices:
            twice = gc.act(i, c1, gc.act(i, c2, x, spectral), spectral)
            once = gc.act(i, c1 * c2, x, spectral)
            if (diff := mismatch(twice, once)) is not None:
                return f"e_{i}: {diff}"
            if gc.act(i, Fraction(1), x, spectral) != x:
                return f"e_{i}^1 is not the identity"
        return None

    return [
        run_trials(CheckRecord(suite="axioms", check="weights"), weights, cfg.samples, rng, cfg.max_resamples),
        run_trials(
            CheckRecord(suite="axioms", check="action"), composition, cfg.samples, rng, cfg.max_resamples
        ),
    ]


def verma_suite(cfg: SuiteConfig, rng: random.Random) -> list[CheckRecord]:
    gc = build_model(cfg.affine_type, cfg.model)
    logger.debug("Verma relations on %s(%s)", cfg.model, cfg.affine_type)
    records = []
    for i in gc.indices:
        for j in gc.indices:
            if j <= i:
                continue

            def trial(rng: random.Random, i: int = i, j: int = j) -> str | None:
                x, spectral = _draw(gc, cfg, rng)
                c1, c2 = random_positive(rng), random_positive(rng)
                if verify_verma(gc, i, j, x, spectral, c1, c2):
                    return None
                return f"c1={c1}, c2={c2}"

            record = CheckRecord(suite="verma", check=f"({i},{j})")
            records.append(run_trials(record, trial, cfg.samples, rng, cfg.max_resamples))
    return records


def sigma_bar_suite(cfg: SuiteConfig, rng: random.Random) -> list[CheckRecord]:
    """σ̄ round trip, the e_0 definition by conjugation, and transport of e_i and epsilon_i."""
    t = cfg.affine_type
    v = build_model(t, "V")
    forward, back = sigma_bar_map(t), sigma_bar_inverse_map(t)
    w = build_model(*forward.target)
    sigma = cartan_matrix(t).sigma or tuple(t.indices)
    # Indices transported by σ̄; on the V2 charts σ̄ carries e_n only by construction.
    moved = [i for i in t.indices if i != 0 and sigma[i] != 0]
    if w.model == "V2":
        moved = [i for i in moved if i != t.rank]

    def round_trip(rng: random.Random) -> str | None:
        x, spectral = _draw(v, cfg, rng)
        y = forward.run(x, spectral)
        return mismatch(back.run(y, spectral), x)

    def e0_definition(rng: random.Random) -> str | None:
        x, spectral = _draw(v, cfg, rng)
        c = random_positive(rng)
        y = forward.run(x, spectral)
        via = back.run(w.act(sigma[0], c, y, spectral), spectral)
        if (diff := mismatch(v.act(0, c, x, spectral), via)) is not None:
            return f"e_0: {diff}"
        gamma_x, eps_x = v.structure(x, spectral)
        gamma_y, eps_y = w.structure(y, spectral)
        if eps_x[0] != eps_y[sigma[0]] or gamma_x[0] != gamma_y[sigma[0]]:
            return "gamma_0 / epsilon_0 differ from their σ̄-transport"
        return None

    def intertwining(rng: random.Random) -> str | None:
        x, spectral = _draw(v, cfg, rng)
        c = random_positive(rng)
        y = forward.run(x, spectral)
        _, eps_x = v.structure(x, spectral)
        _, eps_y = w.structure(y, spectral)
        for i in moved:
            if eps_y[sigma[i]] != eps_x[i]:
                return f"epsilon_{sigma[i]}(σ̄ x) != epsilon_{i}(x)"
            lhs = forward.run(v.act(i, c, x, spectral), spectral)
            if (diff := mismatch(lhs, w.act(sigma[i], c, y, spectral))) is not None:
                return f"e_{i}: {diff}"
        return None

    opts = (cfg.samples, rng, cfg.max_resamples)
    return [
        run_trials(CheckRecord(suite="sigma-bar", check="round-trip"), round_trip, *opts),
        run_trials(CheckRecord(suite="sigma-bar", check="e0-conjugation"), e0_definition, *opts),
        run_trials(CheckRecord(suite="sigma-bar", check="intertwining"), intertwining, *opts),
    ]


def iso_suite(cfg: SuiteConfig, rng: random.Random) -> list[CheckRecord]:
    """Ξ: round trips and intertwining of e_i, gamma_i, epsilon_i."""
    t = cfg.affine_type
    b, v = build_model(t, "B"), build_model(t, "V")
    to_v, to_b = xi_map(t, "B->V"), xi_map(t, "V->B")
    p = xi_spectral_power(t)

    def draw(rng: random.Random) -> tuple[Values, Fraction, Fraction]:
        spectral = rng.choice(cfg.spectral_values)
        lam = spectral**p
        return random_values(b, rng, lam), lam, spectral

    def round_trip(rng: random.Random) -> str | None:
        m, lam, spectral = draw(rng)
        x = to_v.run(m, lam)
        if (diff := mismatch(to_b.run(x, spectral), m)) is not None:
            return f"B->V->B {diff}"
        x2 = random_values(v, rng, spectral)
        return mismatch(to_v.run(to_b.run(x2, spectral), lam), x2)

    def intertwining(rng: random.Random) -> str | None:
        m, lam, spectral = draw(rng)
        c = random_positive(rng)
        x = to_v.run(m, lam)
        gamma_b, eps_b = b.structure(m, lam)
        gamma_v, eps_v = v.structure(x, spectral)
        for i in t.indices:
            if gamma_b[i] != gamma_v[i] or eps_b[i] != eps_v[i]:
                return f"structure functions differ at i={i}"
            lhs = to_v.run(b.act(i, c, m, lam), lam)
            if (diff := mismatch(lhs, v.act(i, c, x, spectral))) is not None:
                return f"e_{i}: {diff}"
        return None

    opts = (cfg.samples, rng, cfg.max_resamples)
    return [
        run_trials(CheckRecord(suite="iso", check="round-trip"), round_trip, *opts),
        run_trials(CheckRecord(suite="iso", check="intertwining"), intertwining, *opts),
    ]


def schubert_suite(cfg: SuiteConfig, rng: random.Random) -> list[CheckRecord]:
    """The V-model action and structure functions at i != 0 against the Schubert cell formulas."""
    t = cfg.affine_type
    v = build_model(t, "V")
    word, names = schubert_chart(t)
    a = cartan_matrix(t)

    def trial(rng: random.Random) -> str | None:
        x, spectral = _draw(v, cfg, rng)
        c = random_positive(rng)
        cell = [x[name] for name in names]
        gamma, eps = v.structure(x, spectral)
        for i in range(1, t.rank + 1):
            moved = dict(zip(names, schubert_e_action(word, cell, a, i, c)))
            if (diff := mismatch(v.act(i, c, x, spectral), moved)) is not None:
                return f"e_{i}: {diff}"
            eps_s, gamma_s = schubert_structure(word, cell, a, i, schubert_alpha(i, spectral))
            if eps_s != eps[i] or gamma_s != gamma[i]:
                return f"structure functions differ at i={i}"
        return None

    record = CheckRecord(suite="axioms", check="schubert")
    return [run_trials(record, trial, cfg.samples, rng, cfg.max_resamples)]
