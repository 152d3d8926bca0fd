"""Product geometric crystal structure on pairs and k-tuples of points.

For a pair (x, y):
    gamma_i(x, y)   = gamma_i(x) gamma_i(y)
    epsilon_i(x, y) = epsilon_i(x) + epsilon_i(x) epsilon_i(y) / phi_i(x)
    e_i^c(x, y)     = (e_i^{c1} x, e_i^{c2} y)
    c1 = (c phi_i(x) + epsilon_i(y)) / (phi_i(x) + epsilon_i(y)),  c2 = c / c1
with phi_i = gamma_i epsilon_i. k-fold products are left-associated.

The pair formulas only use + * /, so they work on Fractions and on Exprs alike.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from geocrystal.cartan import cartan_matrix
from geocrystal.catalogue import C, GeometricCrystalModel, build_model
from geocrystal.config import SuiteConfig
from geocrystal.errors import DivisionByZero
from geocrystal.models import CheckRecord, ProductPoint
from geocrystal.semiring import Expr, Memo, rename, substitute
from geocrystal.tools.geom_crystal import model_for, verma_words
from geocrystal.tools.sampling import mismatch, random_positive, random_values, run_trials

logger = logging.getLogger(__name__)


# ============================================================
# Pair formulas
# ============================================================


def pair_gamma(gamma_x, gamma_y):
    return gamma_x * gamma_y


def pair_epsilon(gamma_x, eps_x, eps_y):
    return eps_x + eps_x * eps_y / (gamma_x * eps_x)


def split_parameter(c, phi_x, eps_y):
    """(c1, c2) with c1 c2 = c."""
    c1 = (c * phi_x + eps_y) / (phi_x + eps_y)
    return c1, c / c1


# ============================================================
# Factor trees
# ============================================================


@dataclass(frozen=True)
class Factor:
    gc: GeometricCrystalModel
    values: dict[str, Fraction]
    spectral: Fraction


Tree = Union[Factor, tuple["Tree", "Tree"]]


def left_tree(factors: list[Factor]) -> Tree:
    tree: Tree = factors[0]
    for f in factors[1:]:
        tree = (tree, f)
    return tree


def right_tree(factors: list[Factor]) -> Tree:
    tree: Tree = factors[-1]
    for f in reversed(factors[:-1]):
        tree = (f, tree)
    return tree


def leaves(tree: Tree) -> list[Factor]:
    if isinstance(tree, Factor):
        return [tree]
    return leaves(tree[0]) + leaves(tree[1])


def tree_structure(tree: Tree, i: int) -> tuple[Fraction, Fraction]:
    """(gamma_i, epsilon_i) of a product tree."""
    if isinstance(tree, Factor):
        gamma, eps = tree.gc.structure(tree.values, tree.spectral)
        return gamma[i], eps[i]
    gx, ex = tree_structure(tree[0], i)
    gy, ey = tree_structure(tree[1], i)
    if ex == 0 or gx == 0:
        raise DivisionByZero("phi_i vanished on the left factor")
    return pair_gamma(gx, gy), pair_epsilon(gx, ex, ey)


def tree_act(tree: Tree, i: int, c: Fraction) -> Tree:
    if isinstance(tree, Factor):
        return Factor(tree.gc, tree.gc.act(i, c, tree.values, tree.spectral), tree.spectral)
    gx, ex = tree_structure(tree[0], i)
    _, ey = tree_structure(tree[1], i)
    denom = gx * ex + ey
    if denom == 0:
        raise DivisionByZero("phi_i(x) + epsilon_i(y) vanished")
    c1, c2 = split_parameter(c, gx * ex, ey)
    return tree_act(tree[0], i, c1), tree_act(tree[1], i, c2)


# ============================================================
# Point API
# ============================================================


def _factors(pp: ProductPoint) -> list[Factor]:
    return [Factor(model_for(p), p.values(), p.spectral) for p in pp.factors]


def product_apply_e(pp: ProductPoint, i: int, c: Fraction | int) -> ProductPoint:
    """e_i^c on a left-associated product; spectral parameters stay with their factors."""
    moved = leaves(tree_act(left_tree(_factors(pp)), i, Fraction(c)))
    return ProductPoint(factors=[p.replace(f.values) for p, f in zip(pp.factors, moved)])


def product_structure_functions(
    pp: ProductPoint, i: int
) -> tuple[Fraction, Fraction, Fraction]:
    gamma, eps = tree_structure(left_tree(_factors(pp)), i)
    return gamma, eps, gamma * eps


# ============================================================
# Symbolic pair (used by ultra-discretization)
# ============================================================


def prefixed(gc: GeometricCrystalModel, prefix: str) -> dict[str, str]:
    names = {name: f"{prefix}{name}" for name in gc.coords}
    names["L"] = f"{prefix}L"
    return names


def pair_exprs(gc: GeometricCrystalModel, i: int) -> dict[str, Expr]:
    """Exprs of e_i^c, gamma_i and epsilon_i on gc x gc in the variables "1:*", "2:*", c.

    Outputs are the moved coordinates "1:<name>", "2:<name>" plus "gamma" and "eps".
    """
    memo1: Memo = {}
    memo2: Memo = {}
    n1, n2 = prefixed(gc, "1:"), prefixed(gc, "2:")
    gx, ex = rename(gc.gamma[i], n1, memo1), rename(gc.epsilon[i], n1, memo1)
    gy, ey = rename(gc.gamma[i], n2, memo2), rename(gc.epsilon[i], n2, memo2)
    c1, c2 = split_parameter(C, gx * ex, ey)
    out: dict[str, Expr] = {"gamma": pair_gamma(gx, gy), "eps": pair_epsilon(gx, ex, ey)}
    sub1: Memo = {}
    sub2: Memo = {}
    for name, expr in gc.actions[i].items():
        out[f"1:{name}"] = substitute(rename(expr, n1, memo1), {"c": c1}, sub1)
        out[f"2:{name}"] = substitute(rename(expr, n2, memo2), {"c": c2}, sub2)
    return out


def pair_env(values_x: dict, spectral_x, values_y: dict, spectral_y) -> dict:
    env = {f"1:{k}": v for k, v in values_x.items()}
    env.update({f"2:{k}": v for k, v in values_y.items()})
    env["1:L"], env["2:L"] = spectral_x, spectral_y
    return env


# ============================================================
# Suite
# ============================================================


def product_suite(cfg: SuiteConfig, rng: random.Random, k: int = 2) -> list[CheckRecord]:
    """Crystal axioms, Verma relations and associativity on products of V-points."""
    t = cfg.affine_type
    gc = build_model(t, cfg.model)
    a = cartan_matrix(t)

    def draw(rng: random.Random, count: int) -> list[Factor]:
        out = []
        for _ in range(count):
            spectral = rng.choice(cfg.spectral_values)
            out.append(Factor(gc, random_values(gc, rng, spectral), spectral))
        return out

    def values_of(tree: Tree) -> list[dict[str, Fraction]]:
        return [f.values for f in leaves(tree)]

    def axioms(rng: random.Random) -> str | None:
        tree = left_tree(draw(rng, k))
        c = random_positive(rng)
        before = {i: tree_structure(tree, i) for i in t.indices}
        for i in t.indices:
            moved = tree_act(tree, i, c)
            for j in t.indices:
                gamma_j, eps_j = tree_structure(moved, j)
                if gamma_j != c ** a[i, j] * before[j][0]:
                    return f"gamma_{j}(e_{i}^c) != c^{a[i, j]} gamma_{j}"
                if j == i and eps_j != before[i][1] / c:
                    return f"epsilon_{i}(e_{i}^c) != epsilon_{i}/c"
        return None

    def verma(rng: random.Random) -> str | None:
        tree = left_tree(draw(rng, k))
        c1, c2 = random_positive(rng), random_positive(rng)
        for i in t.indices:
            for j in t.indices:
                if j <= i:
                    continue
                left, right = verma_words(a[i, j], a[j, i], i, j, c1, c2)
                lt, rt = tree, tree
                for idx, c in reversed(left):
                    lt = tree_act(lt, idx, c)
                for idx, c in reversed(right):
                    rt = tree_act(rt, idx, c)
                if values_of(lt) != values_of(rt):
                    return f"Verma relation ({i},{j}) fails"
        return None

    def associativity(rng: random.Random) -> str | None:
        factors = draw(rng, 3)
        c = random_positive(rng)
        lt, rt = left_tree(factors), right_tree(factors)
        for i in t.indices:
            if tree_structure(lt, i) != tree_structure(rt, i):
                return f"structure functions at i={i} depend on bracketing"
            moved_l, moved_r = values_of(tree_act(lt, i, c)), values_of(tree_act(rt, i, c))
            for x, y in zip(moved_l, moved_r):
                if (diff := mismatch(x, y)) is not None:
                    return f"e_{i} depends on bracketing: {diff}"
        return None

    def single(rng: random.Random) -> str | None:
        (f,) = draw(rng, 1)
        c = random_positive(rng)
        for i in t.indices:
            moved = tree_act(f, i, c)
            assert isinstance(moved, Factor)
            if moved.values != gc.act(i, c, f.values, f.spectral):
                return f"single-factor e_{i} differs from the base model"
        return None

    logger.debug("product of %d factors of %s(%s)", k, cfg.model, t)
    opts = (cfg.samples, rng, cfg.max_resamples)
    return [
        run_trials(CheckRecord(suite="product", check="axioms"), axioms, *opts),
        run_trials(CheckRecord(suite="product", check="verma"), verma, *opts),
        run_trials(CheckRecord(suite="product", check="associativity"), associativity, *opts),
        run_trials(CheckRecord(suite="product", check="single-factor"), single, *opts),
    ]
