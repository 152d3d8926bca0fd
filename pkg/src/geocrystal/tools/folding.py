"""Involutions Σ0–Σ4 on B(D1_N), their fixed-point varieties and the folded actions.

Points of B(D1_N) are dicts over l1..lN, lb1..lb(N-1). The involution formulas only use
+ * /, so they apply to Fractions and to Exprs.
"""

from __future__ import annotations

import logging
import random
from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction

from geocrystal.cartan import AffineTypeId
from geocrystal.catalogue import (
    build_model,
    d1_host,
    eta_inverse_map,
    eta_map,
    host_rank,
    host_spectral_power,
    host_type,
)
from geocrystal.config import SuiteConfig
from geocrystal.constants import FOLDED_TYPES, HOST_MIN_RANK
from geocrystal.errors import RankOutOfRange, UnsupportedModel
from geocrystal.models import CheckRecord, GCPoint
from geocrystal.tools.geom_crystal import transport
from geocrystal.tools.sampling import mismatch, random_positive, random_values, run_trials

logger = logging.getLogger(__name__)

INVOLUTIONS = ("sigma0", "sigma1", "sigma2", "sigma3", "sigma4")

# Fixed-point variety each folded type is embedded into.
FOLDED_INVOLUTION = {"b1": "sigma1", "d2": "sigma3", "a2-odd": "sigma2", "a2-even": "sigma4"}


# ============================================================
# Σ formulas
# ============================================================


def _sigma0(l: dict, N: int) -> dict:
    out = dict(l)
    out["l1"], out["lb1"] = l["lb1"], l["l1"]
    return out


def _sigma1(l: dict, N: int) -> dict:
    out = dict(l)
    top = l[f"l{N}"]
    out[f"l{N - 1}"] = l[f"l{N - 1}"] * top
    out[f"l{N}"] = 1 / top
    out[f"lb{N - 1}"] = top * l[f"lb{N - 1}"]
    return out


def _sigma2(l: dict, N: int) -> dict:
    def lv(k: int):
        return l[f"l{k}"]

    def lb(k: int):
        return l[f"lb{k}"]

    out = {}
    head = lv(N - 1) * lb(N - 1) / (lv(N - 1) + lb(N - 1))
    out["l1"] = head
    out["lb1"] = lv(N) * head
    out[f"l{N}"] = lb(1) / lv(1)
    s = lv(2) + lb(2)
    out[f"l{N - 1}"] = lv(1) * s / lv(2)
    out[f"lb{N - 1}"] = lv(1) * s / lb(2)
    for i in range(2, N - 1):
        common = lv(i) * lb(i) * (lv(i + 1) + lb(i + 1)) / (lv(i) + lb(i))
        out[f"l{N - i}"] = common / lv(i + 1)
        out[f"lb{N - i}"] = common / lb(i + 1)
    return out


def _swap(a: int, b: int, size: int) -> tuple[int, ...]:
    perm = list(range(size))
    perm[a], perm[b] = b, a
    return tuple(perm)


def _compose(*perms: tuple[int, ...]) -> tuple[int, ...]:
    """Permutation of applying perms[0] first, then perms[1], ..."""
    out = tuple(range(len(perms[0])))
    for p in perms:
        out = tuple(p[k] for k in out)
    return out


@dataclass(frozen=True)
class Involution:
    """Σ_k on B(D1_N) together with the diagram automorphism it realises."""

    which: str
    host: int

    def __post_init__(self) -> None:
        if self.which not in INVOLUTIONS:
            raise ValueError(f"Unknown involution {self.which!r}")
        if self.host < HOST_MIN_RANK:
            raise RankOutOfRange(f"B(D1_N) needs N >= {HOST_MIN_RANK}")
        if self.which == "sigma2" and self.host % 2:
            raise RankOutOfRange("sigma2 needs an even host rank 2n")
        if self.which == "sigma4" and (self.host % 2 or self.host < 6):
            raise RankOutOfRange("sigma4 needs host rank 2n+2 with n >= 2")

    def apply(self, l: dict) -> dict:
        N = self.host
        steps: dict[str, tuple[Callable[[dict, int], dict], ...]] = {
            "sigma0": (_sigma0,),
            "sigma1": (_sigma1,),
            "sigma2": (_sigma2,),
            "sigma3": (_sigma1, _sigma0),
            "sigma4": (_sigma0, _sigma1, _sigma2),
        }
        for step in steps[self.which]:
            l = step(l, N)
        return l

    @property
    def index_map(self) -> tuple[int, ...]:
        """σ with gamma_{σ(i)}(Σ l) = gamma_i(l)."""
        N = self.host
        size = N + 1
        s0 = _swap(0, 1, size)
        s1 = _swap(N - 1, N, size)
        s2 = tuple(N - i for i in range(size))
        return {
            "sigma0": s0,
            "sigma1": s1,
            "sigma2": s2,
            "sigma3": _compose(s1, s0),
            "sigma4": _compose(s0, s1, s2),
        }[self.which]


def apply_involution(inv: Involution, p: GCPoint) -> GCPoint:
    if p.model != "B" or (p.type, p.n) != ("d1", inv.host):
        raise UnsupportedModel(f"{inv.which} acts on B(d1_{inv.host}) points")
    return p.replace(inv.apply(p.values()))


def is_fixed(inv: Involution, values: dict) -> bool:
    return inv.apply(values) == values


# ============================================================
# η and the folded actions
# ============================================================


def eta_embed(p: GCPoint) -> GCPoint:
    """η(m) in B(D1_N); the spectral parameter becomes L or L**2."""
    if p.model != "B":
        raise UnsupportedModel("η is defined on B-model points")
    return transport(eta_map(p.affine_type), p)


def eta_pullback(t: AffineTypeId, p: GCPoint) -> GCPoint:
    return transport(eta_inverse_map(t), p)


def folded_indices(t: AffineTypeId, i: int) -> list[int]:
    """Host indices whose composite e-action realises e_i of the folded type."""
    n = t.rank
    if t.family == "b1":
        return [n, n + 1] if i == n else [i]
    if t.family == "d2":
        if i == 0:
            return [0, 1]
        return [n + 1, n + 2] if i == n else [i + 1]
    if t.family == "a2-odd":
        return [n] if i == n else [i, 2 * n - i]
    if t.family == "a2-even":
        if i == 0:
            return [0, 1, 2 * n + 1, 2 * n + 2]
        return [n + 1] if i == n else [i + 1, 2 * n + 1 - i]
    raise UnsupportedModel(f"{t.family} is not a folded type")


def folded_structure_index(t: AffineTypeId, i: int) -> int:
    """Host index whose gamma/epsilon restrict to gamma_i/epsilon_i of the folded type."""
    return i + 1 if t.family in ("d2", "a2-even") else i


def folded_action(t: AffineTypeId, i: int, c: Fraction, l: dict, host_spectral: Fraction) -> dict:
    host = build_model(host_type(t), "B")
    for k in folded_indices(t, i):
        l = host.act(k, c, l, host_spectral)
    return l


# ============================================================
# Suites
# ============================================================


def _random_host(N: int, rng: random.Random, spectral: Fraction) -> dict:
    return random_values(build_model(d1_host(N), "B"), rng, spectral)


def involution_records(inv: Involution, cfg: SuiteConfig, rng: random.Random) -> list[CheckRecord]:
    host = build_model(d1_host(inv.host), "B")
    sigma = inv.index_map

    def involutive(rng: random.Random) -> str | None:
        l = _random_host(inv.host, rng, rng.choice(cfg.spectral_values))
        return mismatch(inv.apply(inv.apply(l)), l)

    def defining_property(rng: random.Random) -> str | None:
        spectral = rng.choice(cfg.spectral_values)
        l = _random_host(inv.host, rng, spectral)
        moved = inv.apply(l)
        if host.constraint_value(moved) != spectral:
            return "product constraint broken"
        gamma, eps = host.structure(l, spectral)
        gamma_s, eps_s = host.structure(moved, spectral)
        for i in host.indices:
            if gamma_s[sigma[i]] != gamma[i] or eps_s[sigma[i]] != eps[i]:
                return f"structure functions not permuted at i={i}"
        return None

    opts = (cfg.samples, rng, cfg.max_resamples)
    return [
        run_trials(CheckRecord(suite="folding", check=f"{inv.which}-involutive"), involutive, *opts),
        run_trials(
            CheckRecord(suite="folding", check=f"{inv.which}-permutes"), defining_property, *opts
        ),
    ]


def folded_verma_record(cfg: SuiteConfig, rng: random.Random) -> CheckRecord:
    """E1^c e2^{c^2 d} E1^{cd} e2^d = e2^d E1^{cd} e2^{c^2 d} E1^c on B(D1_4), E1 = e1 e3."""
    host = build_model(AffineTypeId("d1", 4), "B")

    def run(word: list[tuple[tuple[int, ...], Fraction]], l: dict, spectral: Fraction) -> dict:
        for indices, c in reversed(word):
            for k in indices:
                l = host.act(k, c, l, spectral)
        return l

    def trial(rng: random.Random) -> str | None:
        spectral = rng.choice(cfg.spectral_values)
        l = _random_host(4, rng, spectral)
        c, d = random_positive(rng), random_positive(rng)
        big, two = (1, 3), (2,)
        left = [(big, c), (two, c * c * d), (big, c * d), (two, d)]
        right = [(two, d), (big, c * d), (two, c * c * d), (big, c)]
        return mismatch(run(left, l, spectral), run(right, l, spectral))

    return run_trials(CheckRecord(suite="folding", check="folded-verma-b2"), trial, cfg.samples, rng, cfg.max_resamples)


def embedding_records(t: AffineTypeId, cfg: SuiteConfig, rng: random.Random) -> list[CheckRecord]:
    """η lands in the fixed variety, is inverted by η⁻¹ and intertwines the folded actions."""
    b = build_model(t, "B")
    host = build_model(host_type(t), "B")
    inv = Involution(FOLDED_INVOLUTION[t.family], host_rank(t))
    eta, back = eta_map(t), eta_inverse_map(t)
    power = host_spectral_power(t)

    def draw(rng: random.Random) -> tuple[dict, Fraction]:
        spectral = rng.choice(cfg.spectral_values)
        return random_values(b, rng, spectral), spectral

    def membership(rng: random.Random) -> str | None:
        m, spectral = draw(rng)
        l = eta.run(m, spectral)
        if host.constraint_value(l) != spectral**power:
            return "η(m) violates the host product constraint"
        if not is_fixed(inv, l):
            return f"η(m) is not fixed by {inv.which}"
        return mismatch(back.run(l, spectral**power), m)

    def intertwining(rng: random.Random) -> str | None:
        m, spectral = draw(rng)
        c = random_positive(rng)
        lam = spectral**power
        l = eta.run(m, spectral)
        gamma_m, eps_m = b.structure(m, spectral)
        gamma_l, eps_l = host.structure(l, lam)
        for i in t.indices:
            k = folded_structure_index(t, i)
            if gamma_m[i] != gamma_l[k] or eps_m[i] != eps_l[k]:
                return f"gamma_{i}/epsilon_{i} differ from host index {k}"
            lhs = eta.run(b.act(i, c, m, spectral), spectral)
            if (diff := mismatch(lhs, folded_action(t, i, c, l, lam))) is not None:
                return f"e_{i}: {diff}"
        return None

    opts = (cfg.samples, rng, cfg.max_resamples)
    return [
        run_trials(CheckRecord(suite="folding", check="eta-fixed-point"), membership, *opts),
        run_trials(CheckRecord(suite="folding", check="eta-intertwining"), intertwining, *opts),
    ]


def involutions_for_rank(N: int) -> list[Involution]:
    out = [Involution("sigma0", N), Involution("sigma1", N), Involution("sigma3", N)]
    if N % 2 == 0:
        out.append(Involution("sigma2", N))
        if N >= 6:
            out.append(Involution("sigma4", N))
    return out


def folding_suite(cfg: SuiteConfig, rng: random.Random) -> list[CheckRecord]:
    t = cfg.affine_type
    records: list[CheckRecord] = []
    if t.family == "d1":
        for inv in involutions_for_rank(t.rank):
            records.extend(involution_records(inv, cfg, rng))
    elif t.family in FOLDED_TYPES:
        inv = Involution(FOLDED_INVOLUTION[t.family], host_rank(t))
        logger.debug("folding %s into B(D1_%d) via %s", t, inv.host, inv.which)
        records.extend(involution_records(inv, cfg, rng))
        records.extend(embedding_records(t, cfg, rng))
    else:
        raise UnsupportedModel(f"No folding data for {t.family}")
    records.append(folded_verma_record(cfg, rng))
    return records
