"""Ultra-discretization: the model expressions evaluated over (max, +).

Every operation here is the max-plus evaluation of the same ``Expr`` families that
implement the geometric crystals, with the spectral parameter replaced by an integer
level and c by an integer k:

    e_i^c  ->  ẽ_i^k,    gamma_i -> wt_i,    epsilon_i -> ε_i,    phi_i = ε_i + wt_i.

Lattice points are plain ``dict[str, int]`` keyed by the model coordinates; B-models keep
their dependent coordinate solved on the tropical constraint.
"""

from __future__ import annotations

import itertools
import logging
import random
from collections import deque
from collections.abc import Callable, Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from functools import lru_cache
from math import prod

from geocrystal.cartan import AffineTypeId, CartanData, cartan_matrix
from geocrystal.catalogue import GeometricCrystalModel, build_model
from geocrystal.config import SuiteConfig
from geocrystal.constants import (
    CONNECTIVITY_NODE_CAP,
    CONNECTIVITY_SLACK,
    DEGREE_VECTORS,
    EXHAUSTIVE_PAIR_CAP,
    EXPONENT_RANGE,
    R_TYPES,
)
from geocrystal.errors import DomainError, UnsupportedModel
from geocrystal.models import CheckRecord, LatticePoint
from geocrystal.semiring import MAX_PLUS, Expr, Program, Var, check_degree_consistency
from geocrystal.tools.product import pair_env, pair_exprs
from geocrystal.tools.sampling import MAX_DETAILS, mismatch, run_trials
from geocrystal.tools.tropical_r import r_map

logger = logging.getLogger(__name__)

Lattice = dict[str, int]
# A lattice point together with the crystal (and hence the level) it belongs to.
Placed = tuple["TropCrystal", Lattice]


# ============================================================
# Tropical crystals
# ============================================================


@dataclass(frozen=True, eq=False)
class TropCrystal:
    """UD of one chart at a fixed level."""

    gc: GeometricCrystalModel
    level: int = 0

    @property
    def type(self) -> AffineTypeId:
        return self.gc.type

    @property
    def coords(self) -> tuple[str, ...]:
        return self.gc.coords

    @property
    def free_coords(self) -> tuple[str, ...]:
        return tuple(name for name in self.gc.coords if name != self.gc.dependent)

    @property
    def indices(self) -> range:
        return self.gc.indices

    def complete(self, free: Mapping[str, int]) -> Lattice:
        """Lattice point with the given free coordinates (the dependent one is solved)."""
        b = {name: int(free[name]) for name in self.free_coords}
        if self.gc.dependent is not None:
            b[self.gc.dependent] = self.gc.solve_dependent(b, self.level, MAX_PLUS)
        return {name: b[name] for name in self.coords}

    def origin(self) -> Lattice:
        return self.complete({name: 0 for name in self.free_coords})

    def key(self, b: Mapping[str, int]) -> tuple[int, ...]:
        return tuple(b[name] for name in self.coords)

    def on_variety(self, b: Mapping[str, int]) -> bool:
        if self.gc.dependent is None:
            return True
        target = self.level * self.gc.constraint_power
        return self.gc.constraint_value(b, MAX_PLUS) == target

    def e(self, i: int, k: int, b: Mapping[str, int]) -> Lattice:
        """ẽ_i^k b."""
        return self.gc.act(i, k, b, self.level, MAX_PLUS)

    def structure(self, b: Mapping[str, int]) -> tuple[dict[int, int], dict[int, int]]:
        """(wt, ε) at b, both indexed by i."""
        return self.gc.structure(b, self.level, MAX_PLUS)

    def wt(self, i: int, b: Mapping[str, int]) -> int:
        return self.structure(b)[0][i]

    def eps(self, i: int, b: Mapping[str, int]) -> int:
        return self.structure(b)[1][i]

    def phi(self, i: int, b: Mapping[str, int]) -> int:
        wt, eps = self.structure(b)
        return eps[i] + wt[i]


@lru_cache(maxsize=None)
def ud_crystal(t: AffineTypeId, model: str = "V", level: int = 0) -> TropCrystal:
    return TropCrystal(build_model(t, model), level)


# ============================================================
# Lattice points
# ============================================================


def crystal_for(p: LatticePoint) -> TropCrystal:
    """The tropical crystal ``p`` lives on, after checking its coordinates."""
    tc = ud_crystal(p.affine_type, p.model, p.level)
    if set(p.coords) != set(tc.coords):
        raise UnsupportedModel(
            f"coordinates {sorted(p.coords)} do not match {p.model}({p.affine_type}): "
            f"expected {list(tc.coords)}"
        )
    if not tc.on_variety(p.coords):
        raise DomainError(f"point is off the level-{p.level} constraint of {p.model}({p.affine_type})")
    return tc


def lattice_point(tc: TropCrystal, b: Mapping[str, int]) -> LatticePoint:
    return LatticePoint(
        type=tc.type.family,
        n=tc.type.rank,
        model=tc.gc.model,
        level=tc.level,
        coords={name: int(b[name]) for name in tc.coords},
    )


def lattice_e(p: LatticePoint, i: int, k: int) -> LatticePoint:
    tc = crystal_for(p)
    if i not in tc.indices:
        raise UnsupportedModel(f"index {i} outside 0..{tc.type.rank}")
    return lattice_point(tc, tc.e(i, k, p.coords))


def lattice_structure(p: LatticePoint) -> dict[str, dict[int, int]]:
    """wt, ε and φ at p for every index."""
    tc = crystal_for(p)
    wt, eps = tc.structure(p.coords)
    return {"wt": wt, "eps": eps, "phi": {i: eps[i] + wt[i] for i in tc.indices}}


# ============================================================
# Boxes
# ============================================================


def box_size(tc: TropCrystal, radius: int) -> int:
    return (2 * radius + 1) ** len(tc.free_coords)


def box(tc: TropCrystal, radius: int) -> Iterator[Lattice]:
    """Points whose free coordinates lie in [-radius, radius]."""
    span = range(-radius, radius + 1)
    for combo in itertools.product(span, repeat=len(tc.free_coords)):
        yield tc.complete(dict(zip(tc.free_coords, combo)))


def random_lattice(tc: TropCrystal, radius: int, rng: random.Random) -> Lattice:
    return tc.complete({name: rng.randint(-radius, radius) for name in tc.free_coords})


def in_box(tc: TropCrystal, b: Mapping[str, int], radius: int) -> bool:
    return all(abs(b[name]) <= radius for name in tc.free_coords)


def lattice_tuples(
    crystals: Sequence[TropCrystal],
    radius: int,
    rng: random.Random,
    samples: int,
    cap: int = EXHAUSTIVE_PAIR_CAP,
) -> Iterator[tuple[Lattice, ...]]:
    """Every tuple of box points when there are at most ``cap``, else ``samples`` draws."""
    if prod(box_size(tc, radius) for tc in crystals) <= cap:
        yield from itertools.product(*(list(box(tc, radius)) for tc in crystals))
        return
    for _ in range(samples):
        yield tuple(random_lattice(tc, radius, rng) for tc in crystals)


def _tally(record: CheckRecord, cases: Iterable, check: Callable[..., str | None]) -> CheckRecord:
    for index, case in enumerate(cases):
        message = check(*case)
        if message is None:
            record.passed += 1
            continue
        record.failed += 1
        if len(record.details) < MAX_DETAILS:
            record.details.append(f"case {index}: {message}")
    return record


# ============================================================
# Crystal axioms
# ============================================================


def axiom_defect(tc: TropCrystal, a: CartanData, b: Lattice) -> str | None:
    """First violated axiom at b, or None."""
    wt, eps = tc.structure(b)
    for i in tc.indices:
        if tc.e(i, 0, b) != b:
            return f"ẽ_{i}^0 moved {b}"
        for k in (1, -1):
            moved = tc.e(i, k, b)
            if tc.e(i, -k, moved) != b:
                return f"ẽ_{i}^{-k} ẽ_{i}^{k} != id at {b}"
            if not tc.on_variety(moved):
                return f"ẽ_{i}^{k} left the constraint at {b}"
            wt_m, eps_m = tc.structure(moved)
            for j in tc.indices:
                if wt_m[j] != wt[j] + k * a[i, j]:
                    return f"wt_{j}(ẽ_{i}^{k} b) != wt_{j}(b) + {k * a[i, j]} at {b}"
            if eps_m[i] != eps[i] - k:
                return f"ε_{i}(ẽ_{i}^{k} b) != ε_{i}(b) - {k} at {b}"
            if eps_m[i] + wt_m[i] != eps[i] + wt[i] + k:
                return f"φ_{i}(ẽ_{i}^{k} b) != φ_{i}(b) + {k} at {b}"
    return None


def check_crystal_axioms(
    tc: TropCrystal, radius: int, cartan: CartanData | None = None
) -> CheckRecord:
    """Crystal axioms at every point of the box, swept lazily."""
    a = cartan or cartan_matrix(tc.type)
    logger.info("%s: sweeping %d box points of radius %d", tc.type, box_size(tc, radius), radius)
    record = CheckRecord(suite="ud", check=f"crystal-axioms@{tc.level}")
    return _tally(record, ((b,) for b in box(tc, radius)), lambda b: axiom_defect(tc, a, b))


# ============================================================
# Connectivity
# ============================================================


@dataclass(frozen=True)
class Connectivity:
    connected: bool
    box_points: int
    reached: int
    visited: int
    capped: bool

    def __bool__(self) -> bool:
        return self.connected


def _walk(tc: TropCrystal, radius: int, bound: int, cap: int) -> tuple[int, int, bool]:
    """BFS from the origin inside the box of radius ``bound``.

    Returns (points of the radius box reached, points visited, whether ``cap`` stopped it).
    """
    total = box_size(tc, radius)
    start = tc.origin()
    seen = {tc.key(start)}
    queue = deque([start])
    reached = 1
    while queue and reached < total:
        if len(seen) >= cap:
            return reached, len(seen), True
        b = queue.popleft()
        for i in tc.indices:
            for k in (1, -1):
                nb = tc.e(i, k, b)
                if not in_box(tc, nb, bound):
                    continue
                key = tc.key(nb)
                if key in seen:
                    continue
                seen.add(key)
                queue.append(nb)
                if in_box(tc, nb, radius):
                    reached += 1
    return reached, len(seen), False


def connectivity_sample(
    tc: TropCrystal,
    radius: int,
    slack: int = CONNECTIVITY_SLACK,
    cap: int = CONNECTIVITY_NODE_CAP,
) -> Connectivity:
    """BFS from the origin with ẽ_i^{±1}.

    The walk first stays inside the box. If box points remain unreached it is repeated
    with ``slack`` extra room in every free coordinate. Each walk visits at most ``cap``
    points; the box is connected when every box point was reached.
    """
    total = box_size(tc, radius)
    reached = visited = 0
    for bound in sorted({radius, radius + slack}):
        reached, visited, capped = _walk(tc, radius, bound, cap)
        if capped:
            logger.info("connectivity BFS on %s stopped at %d points", tc.type, visited)
            return Connectivity(False, total, reached, visited, True)
        if reached == total:
            break
    return Connectivity(reached == total, total, reached, visited, False)


# ============================================================
# Tensor products
# ============================================================


def tensor_structure(x: Placed, y: Placed, i: int) -> tuple[int, int]:
    """(wt_i, ε_i) of x ⊗ y."""
    (tx, bx), (ty, by) = x, y
    wt_x, eps_x = tx.structure(bx)
    wt_y, eps_y = ty.structure(by)
    phi_x = eps_x[i] + wt_x[i]
    return wt_x[i] + wt_y[i], max(eps_x[i], eps_x[i] + eps_y[i] - phi_x)


def tensor_split(k: int, phi_x: int, eps_y: int) -> tuple[int, int]:
    """(k1, k2) with k1 = max(k + φ, ε) - max(φ, ε) and k1 + k2 = k."""
    k1 = max(k + phi_x, eps_y) - max(phi_x, eps_y)
    return k1, k - k1


def tensor_e(x: Placed, y: Placed, i: int, k: int) -> tuple[Lattice, Lattice]:
    (tx, bx), (ty, by) = x, y
    phi_x = tx.phi(i, bx)
    k1, k2 = tensor_split(k, phi_x, ty.eps(i, by))
    return tx.e(i, k1, bx), ty.e(i, k2, by)


@lru_cache(maxsize=None)
def _pair_program(gc: GeometricCrystalModel, i: int) -> Program:
    return Program(pair_exprs(gc, i))


def tensor_rule_defect(x: Placed, y: Placed, i: int, k: int) -> str | None:
    """Piecewise-linear tensor rule against the max-plus value of the product expressions."""
    (tx, bx), (ty, by) = x, y
    env = pair_env(bx, tx.level, by, ty.level)
    env["c"] = k
    expected = _pair_program(tx.gc, i).run(env, MAX_PLUS)
    mx, my = tensor_e(x, y, i, k)
    got = {f"1:{name}": v for name, v in mx.items()}
    got.update({f"2:{name}": v for name, v in my.items()})
    got["gamma"], got["eps"] = tensor_structure(x, y, i)
    if (diff := mismatch(got, expected)) is not None:
        return f"i={i}, k={k}: {diff}"
    return None


def check_tensor_rule(
    t: AffineTypeId,
    model: str,
    samples: int,
    rng: random.Random,
    radius: int = 2,
    levels: tuple[int, int] = (1, 2),
) -> CheckRecord:
    tx, ty = ud_crystal(t, model, levels[0]), ud_crystal(t, model, levels[1])

    def trial(rng: random.Random) -> str | None:
        x = (tx, random_lattice(tx, radius, rng))
        y = (ty, random_lattice(ty, radius, rng))
        for i in tx.indices:
            k = rng.randint(-3, 3)
            if (defect := tensor_rule_defect(x, y, i, k)) is not None:
                return defect
        return None

    return run_trials(CheckRecord(suite="ud", check="tensor-rule"), trial, samples, rng)


# ============================================================
# Combinatorial R
# ============================================================


def combinatorial_r(
    t: AffineTypeId, model: str, levels: tuple[int, int], x: Lattice, y: Lattice
) -> tuple[Lattice, Lattice]:
    """UD of R: (x at λ, y at μ) -> (x' at μ, y' at λ)."""
    lam, mu = levels
    return r_map(t, model).run(x, y, lam, mu, MAX_PLUS)


def lattice_r(x: LatticePoint, y: LatticePoint) -> tuple[LatticePoint, LatticePoint]:
    if (x.type, x.n, x.model) != (y.type, y.n, y.model):
        raise UnsupportedModel("R needs two points of the same type, rank and model")
    tx, ty = crystal_for(x), crystal_for(y)
    xp, yp = combinatorial_r(x.affine_type, x.model, (x.level, y.level), x.coords, y.coords)
    return lattice_point(ty, xp), lattice_point(tx, yp)


def _three_levels(levels: Sequence[int]) -> tuple[int, int, int]:
    values = sorted(set(levels))
    while len(values) < 3:
        values.append(values[-1] + 1)
    return values[0], values[1], values[2]


def combinatorial_r_records(
    cfg: SuiteConfig, rng: random.Random, radius: int = 1
) -> list[CheckRecord]:
    """R at equal levels, inversion, commutation with ẽ_i, wt/ε preservation and YBE."""
    t, model = cfg.affine_type, cfg.model
    l1, l2, l3 = _three_levels(cfg.levels)
    cx, cy, cz = (ud_crystal(t, model, lv) for lv in (l1, l2, l3))

    def run(x: Lattice, y: Lattice, lam: int, mu: int) -> tuple[Lattice, Lattice]:
        return combinatorial_r(t, model, (lam, mu), x, y)

    def equal_levels(x: Lattice, y: Lattice) -> str | None:
        xp, yp = run(x, y, l1, l1)
        return mismatch(xp, x) or mismatch(yp, y)

    def inversion(x: Lattice, y: Lattice) -> str | None:
        xp, yp = run(x, y, l1, l2)
        if not (cy.on_variety(xp) and cx.on_variety(yp)):
            return "levels were not swapped"
        xb, yb = run(xp, yp, l2, l1)
        return mismatch(xb, x) or mismatch(yb, y)

    def commutes(x: Lattice, y: Lattice) -> str | None:
        xp, yp = run(x, y, l1, l2)
        before, after = ((cx, x), (cy, y)), ((cy, xp), (cx, yp))
        for i in cx.indices:
            if tensor_structure(*before, i) != tensor_structure(*after, i):
                return f"wt_{i}/ε_{i} not preserved"
            for k in (1, -1):
                lhs = run(*tensor_e(*before, i, k), l1, l2)
                rhs = tensor_e(*after, i, k)
                if (diff := mismatch(lhs[0], rhs[0]) or mismatch(lhs[1], rhs[1])) is not None:
                    return f"R ẽ_{i}^{k} != ẽ_{i}^{k} R: {diff}"
        return None

    def swap_at(word: list[tuple[Lattice, int]], k: int) -> list[tuple[Lattice, int]]:
        (x, lam), (y, mu) = word[k], word[k + 1]
        xp, yp = run(x, y, lam, mu)
        out = list(word)
        out[k], out[k + 1] = (xp, mu), (yp, lam)
        return out

    def yang_baxter(x: Lattice, y: Lattice, z: Lattice) -> str | None:
        word = [(x, l1), (y, l2), (z, l3)]
        left = swap_at(swap_at(swap_at(word, 0), 1), 0)
        right = swap_at(swap_at(swap_at(word, 1), 0), 1)
        for k, ((a, _), (b, _)) in enumerate(zip(left, right)):
            if (diff := mismatch(a, b)) is not None:
                return f"factor {k}: {diff}"
        return None

    def record(check: str) -> CheckRecord:
        return CheckRecord(suite="ud", check=check)

    samples = cfg.samples
    return [
        _tally(record("r-equal-levels"), lattice_tuples([cx, cx], radius, rng, samples), equal_levels),
        _tally(record("r-inversion"), lattice_tuples([cx, cy], radius, rng, samples), inversion),
        _tally(record("r-commutes-e"), lattice_tuples([cx, cy], radius, rng, samples), commutes),
        _tally(
            record("r-yang-baxter"), lattice_tuples([cx, cy, cz], radius, rng, samples), yang_baxter
        ),
    ]


# ============================================================
# Tropical-rational consistency
# ============================================================


def model_exprs(gc: GeometricCrystalModel) -> list[tuple[str, Expr]]:
    """γ_i, ε_i and every coordinate of e_i that actually moves."""
    out: list[tuple[str, Expr]] = []
    for i in gc.indices:
        out.append((f"gamma_{i}", gc.gamma[i]))
        out.append((f"epsilon_{i}", gc.epsilon[i]))
        for name, expr in gc.actions[i].items():
            if isinstance(expr, Var) and expr.name == name:
                continue
            out.append((f"e_{i}[{name}]", expr))
    return out


def degree_record(
    gc: GeometricCrystalModel, rng: random.Random, vectors: int = DEGREE_VECTORS
) -> CheckRecord:
    """Degree of every model expression at x = a t^k equals its max-plus value at k."""
    exprs = model_exprs(gc)
    names = (*gc.coords, "L", "c")

    def trial(rng: random.Random) -> str | None:
        exponents = {name: rng.randint(-EXPONENT_RANGE, EXPONENT_RANGE) for name in names}
        for label, expr in exprs:
            if not check_degree_consistency(expr, exponents, 1, rng):
                return f"{label} at {exponents}"
        return None

    return run_trials(CheckRecord(suite="ud", check="degree-consistency"), trial, vectors, rng)


# ============================================================
# Crystal graphs
# ============================================================


def _node_label(tc: TropCrystal, b: Lattice) -> str:
    return "(" + ",".join(str(v) for v in tc.key(b)) + ")"


def crystal_graph_dot(tc: TropCrystal, radius: int, name: str | None = None) -> str:
    """DOT digraph of the box: one node per point, an edge b -> ẽ_i b labelled i."""
    points = list(box(tc, radius))
    ids = {tc.key(b): f"n{k}" for k, b in enumerate(points)}
    graph = name or f"{tc.type.family.replace('-', '_')}_{tc.type.rank}_{tc.gc.model}"
    lines = [f"digraph {graph} {{"]
    lines.append(f'    label="{tc.gc.model}({tc.type}) level {tc.level} radius {radius}";')
    for b in points:
        lines.append(f'    {ids[tc.key(b)]} [label="{_node_label(tc, b)}"];')
    for b in points:
        for i in tc.indices:
            target = ids.get(tc.key(tc.e(i, 1, b)))
            if target is not None:
                lines.append(f'    {ids[tc.key(b)]} -> {target} [label="{i}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ============================================================
# Suite
# ============================================================


def connectivity_record(
    tc: TropCrystal, radius: int, cap: int = CONNECTIVITY_NODE_CAP
) -> CheckRecord:
    """One sample: the box is connected. A walk stopped by ``cap`` fails."""
    result = connectivity_sample(tc, radius, cap=cap)
    record = CheckRecord(suite="ud", check="connectivity")
    summary = f"reached {result.reached}/{result.box_points} box points, visited {result.visited}"
    if result.connected:
        record.passed = 1
    else:
        record.failed = 1
        record.details.append(f"node cap hit: {summary}" if result.capped else summary)
    logger.info("connectivity of %s(%s): %s", tc.gc.model, tc.type, summary)
    return record


def ud_suite(cfg: SuiteConfig, rng: random.Random) -> list[CheckRecord]:
    """Crystal axioms, connectivity, tensor rule, degree consistency and combinatorial R."""
    t, model = cfg.affine_type, cfg.model
    a = cartan_matrix(t)
    records = [
        check_crystal_axioms(ud_crystal(t, model, level), cfg.radius, a)
        for level in sorted({0, cfg.levels[0]})
    ]
    records.append(connectivity_record(ud_crystal(t, model, 0), cfg.radius))
    levels = (cfg.levels[0], cfg.levels[1])
    records.append(check_tensor_rule(t, model, cfg.samples, rng, cfg.radius, levels))
    records.append(degree_record(build_model(t, model), rng))
    if t.family in R_TYPES and model in ("V", "B"):
        records.extend(combinatorial_r_records(cfg, rng))
    return records
