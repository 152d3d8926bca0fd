"""Explicit geometric crystal models and the rational maps between them.

Each model is a family of subtraction-free expressions in the coordinate variables, the
action parameter ``c`` and the spectral parameter ``L``:

- ``V``  : the V(g)_L models for all seven families,
- ``V2`` : the second chart of the A2even / A2evenDagger V-models,
- ``B``  : the product-constrained B_L models (A1, D1 and the folded types).

Coordinate names:
    V   x0 (when present), x1..xn, xb(top)..xb1
    V2  y0, y1..yn, yb(n-1)..yb1
    B   l1..., lb... for A1 and D1; m0 (when present), m1..mn, mbn..mb1 otherwise

The maps σ̄ (V -> V or V -> V2), Ξ (B <-> V) and η (folded B -> B(D1)) are ``MapSpec``
objects over the same expression machinery.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from geocrystal.cartan import AffineTypeId
from geocrystal.errors import DomainError, UnsupportedModel
from geocrystal.semiring import (
    ONE,
    RATIONAL,
    Expr,
    Memo,
    Program,
    Semiring,
    Var,
    prod,
    substitute,
)

logger = logging.getLogger(__name__)

C = Var("c")
LAM = Var("L")


# ============================================================
# Model and map containers
# ============================================================


@dataclass(eq=False)
class GeometricCrystalModel:
    """Expression family implementing e_i^c, gamma_i and epsilon_i for one chart."""

    type: AffineTypeId
    model: str
    coords: tuple[str, ...]
    actions: dict[int, dict[str, Expr]]
    gamma: dict[int, Expr]
    epsilon: dict[int, Expr]
    # B-models: constraint monomial == L ** constraint_power
    constraint: Expr | None = None
    constraint_power: int = 1
    dependent: str | None = None
    _programs: dict[object, Program] = field(default_factory=dict, repr=False)

    @property
    def indices(self) -> range:
        return range(self.type.rank + 1)

    def action_program(self, i: int) -> Program:
        key = ("e", i)
        if key not in self._programs:
            self._programs[key] = Program(self.actions[i])
        return self._programs[key]

    def structure_program(self) -> Program:
        key = "structure"
        if key not in self._programs:
            outputs: dict[str, Expr] = {}
            for i in self.indices:
                outputs[f"gamma{i}"] = self.gamma[i]
                outputs[f"eps{i}"] = self.epsilon[i]
            self._programs[key] = Program(outputs)
        return self._programs[key]

    def constraint_program(self, part: str = "full") -> Program:
        """The constraint monomial; part "rest" sets the dependent coordinate to 1."""
        if self.constraint is None or self.dependent is None:
            raise UnsupportedModel(f"{self.model}({self.type}) has no product constraint")
        key = ("constraint", part)
        if key not in self._programs:
            expr = self.constraint if part == "full" else substitute(self.constraint, {self.dependent: ONE})
            self._programs[key] = Program({part: expr})
        return self._programs[key]

    def act(self, i, c, values: Mapping[str, object], spectral, semiring: Semiring = RATIONAL):
        env = dict(values)
        env["c"] = c
        env["L"] = spectral
        return self.action_program(i).run(env, semiring)

    def structure(self, values: Mapping[str, object], spectral, semiring: Semiring = RATIONAL):
        env = dict(values)
        env["L"] = spectral
        out = self.structure_program().run(env, semiring)
        return (
            {i: out[f"gamma{i}"] for i in self.indices},
            {i: out[f"eps{i}"] for i in self.indices},
        )

    def constraint_value(self, values: Mapping[str, object], semiring: Semiring = RATIONAL):
        return self.constraint_program().run(values, semiring)["full"]

    def solve_dependent(self, values: Mapping[str, object], spectral, semiring: Semiring = RATIONAL):
        """Value of the dependent coordinate making the product constraint hold."""
        rest = self.constraint_program("rest").run(values, semiring)["rest"]
        target = semiring.power(spectral, self.constraint_power)
        return semiring.div(target, rest)


@dataclass(eq=False)
class MapSpec:
    """A rational map between two charts.

    ``exprs`` are written in the source coordinates and the source spectral parameter
    ``L``. The target spectral parameter is L ** spectral_power (a power 1/2 means an
    exact square root is required).
    """

    name: str
    source: tuple[AffineTypeId, str]
    target: tuple[AffineTypeId, str]
    exprs: dict[str, Expr]
    spectral_power: Fraction = Fraction(1)
    factor: Expr | None = None
    _program: Program | None = field(default=None, repr=False)

    def program(self) -> Program:
        if self._program is None:
            outputs = dict(self.exprs)
            if self.factor is not None:
                outputs["__factor__"] = self.factor
            self._program = Program(outputs)
        return self._program

    def run_with_factor(
        self, values: Mapping[str, object], spectral, semiring: Semiring = RATIONAL
    ) -> tuple[dict, object | None]:
        env = dict(values)
        env["L"] = spectral
        out = self.program().run(env, semiring)
        factor = out.pop("__factor__", None)
        return out, factor

    def run(self, values: Mapping[str, object], spectral, semiring: Semiring = RATIONAL) -> dict:
        return self.run_with_factor(values, spectral, semiring)[0]

    def target_spectral(self, spectral: Fraction) -> Fraction:
        return power_spectral(spectral, self.spectral_power)

    def target_level(self, level: int) -> int:
        shifted = self.spectral_power * level
        if shifted.denominator != 1:
            raise DomainError(f"{self.name}: level {level} is not divisible")
        return int(shifted)


def power_spectral(spectral: Fraction, exponent: Fraction) -> Fraction:
    if exponent.denominator == 1:
        return Fraction(spectral) ** int(exponent)
    if exponent != Fraction(1, 2):
        raise ValueError(f"Unsupported spectral exponent {exponent}")
    root_num, root_den = _isqrt_exact(spectral.numerator), _isqrt_exact(spectral.denominator)
    if spectral <= 0 or root_num is None or root_den is None:
        raise DomainError(f"Spectral parameter {spectral} is not a rational square")
    return Fraction(root_num, root_den)


def _isqrt_exact(k: int) -> int | None:
    if k < 0:
        return None
    r = isqrt(k)
    return r if r * r == k else None


def _complete(actions: dict[int, dict[str, Expr]], coords: tuple[str, ...]) -> None:
    for changed in actions.values():
        for name in coords:
            changed.setdefault(name, Var(name))


# ============================================================
# V models
# ============================================================


def _v_a1(t: AffineTypeId) -> GeometricCrystalModel:
    n = t.rank
    x = {i: Var(f"x{i}") for i in range(1, n + 1)}
    coords = tuple(f"x{i}" for i in range(1, n + 1))
    actions: dict[int, dict[str, Expr]] = {0: {f"x{i}": x[i] / C for i in x}}
    for i in range(1, n + 1):
        actions[i] = {f"x{i}": C * x[i]}
    gamma = {0: ONE / (LAM * x[1] * x[n]), 1: LAM * x[1] ** 2 / x[2], n: x[n] ** 2 / x[n - 1]}
    for i in range(2, n):
        gamma[i] = x[i] ** 2 / (x[i - 1] * x[i + 1])
    epsilon = {0: LAM * x[1], n: ONE / x[n]}
    for i in range(1, n):
        epsilon[i] = x[i + 1] / x[i]
    _complete(actions, coords)
    return GeometricCrystalModel(t, "V", coords, actions, gamma, epsilon)


def _v_top(t: AffineTypeId) -> int:
    return t.rank - 2 if t.family == "d1" else t.rank - 1


def _v_coords(t: AffineTypeId) -> tuple[str, ...]:
    has_x0 = t.family in ("d2", "a2-even", "a2-even-dagger")
    head = ("x0",) if has_x0 else ()
    top = _v_top(t)
    return (
        head
        + tuple(f"x{i}" for i in range(1, t.rank + 1))
        + tuple(f"xb{i}" for i in range(top, 0, -1))
    )


def _v_chain(t: AffineTypeId) -> GeometricCrystalModel:
    """V-models built on the chain P_i = x_i * xb_i (every family except A1)."""
    fam, n = t.family, t.rank
    coords = _v_coords(t)
    top = _v_top(t)
    x = {int(name[1:]): Var(name) for name in coords if not name.startswith("xb")}
    xb = {i: Var(f"xb{i}") for i in range(1, top + 1)}

    P: dict[int, Expr] = {i: x[i] * xb[i] for i in range(1, top + 1)}
    if fam == "d1":
        P[top + 1] = x[n - 1] * x[n]
    elif fam in ("a2-odd", "a2-even"):
        P[n] = x[n]
    else:
        P[n] = x[n] ** 2
    if fam in ("d2", "a2-even"):
        X0: Expr = x[0] ** 2
        P[0] = x[0] ** 2 / LAM**2
    elif fam == "a2-even-dagger":
        X0 = x[0]
        P[0] = x[0] / LAM**2
    else:
        X0 = ONE
        P[0] = ONE / LAM

    actions: dict[int, dict[str, Expr]] = {}
    gamma: dict[int, Expr] = {}
    epsilon: dict[int, Expr] = {}

    for i in range(1, top + 1):
        plain = P[i] + P[i + 1]
        scaled = C * P[i] + P[i + 1]
        actions[i] = {
            f"x{i}": x[i] * scaled / plain,
            f"xb{i}": xb[i] * C * plain / scaled,
        }
        left = X0 if i == 1 else x[i - 1]
        epsilon[i] = left / x[i] * (1 + P[i + 1] / P[i])
        gamma[i] = P[i] ** 2 / (P[i - 1] * P[i + 1])

    # tail
    if fam == "d1":
        for k in (n - 1, n):
            actions[k] = {f"x{k}": C * x[k]}
            epsilon[k] = x[n - 2] / x[k]
            gamma[k] = x[k] ** 2 / P[n - 2]
    else:
        actions[n] = {f"x{n}": C * x[n]}
        if fam in ("a2-odd", "a2-even"):
            epsilon[n] = x[n - 1] ** 2 / x[n]
            gamma[n] = x[n] ** 2 / P[n - 1] ** 2
        else:
            epsilon[n] = x[n - 1] / x[n]
            gamma[n] = x[n] ** 2 / P[n - 1]

    # head
    if fam in ("b1", "d1", "a2-odd"):
        g = (C * P[1] + P[2]) / (P[1] + P[2])
        e0: dict[str, Expr] = {"x1": x[1] * g / C, "xb1": xb[1] / g}
        for k in range(2, n + 1):
            e0[f"x{k}"] = x[k] / (C**2 if (fam == "a2-odd" and k == n) else C)
        for k in range(2, top + 1):
            e0[f"xb{k}"] = xb[k] / C
        actions[0] = e0
        epsilon[0] = LAM * (P[1] + P[2]) / x[1]
        gamma[0] = ONE / (LAM * P[2])
    elif fam in ("d2", "a2-even"):
        x0sq = x[0] ** 2
        lp = LAM**2 * P[1]
        r = (C**2 * x0sq + lp) / (x0sq + lp)
        down = r / C**2
        e0 = {"x0": x[0] * r / C}
        for k in range(1, n + 1):
            e0[f"x{k}"] = x[k] * down
        for k in range(1, top + 1):
            e0[f"xb{k}"] = xb[k] * down
        if fam == "a2-even":
            e0[f"x{n}"] = x[n] * r**2 / C**4
        actions[0] = e0
        epsilon[0] = (x0sq + lp) / x[0] ** 3
        gamma[0] = x0sq / lp
    else:  # a2-even-dagger
        lp = LAM * P[1]
        r = (C * x[0] + lp) / (x[0] + lp)
        down = r / C
        e0 = {"x0": x[0] * r**2 / C}
        for k in range(1, n + 1):
            e0[f"x{k}"] = x[k] * down
        for k in range(1, top + 1):
            e0[f"xb{k}"] = xb[k] * down
        actions[0] = e0
        epsilon[0] = (1 + lp / x[0]) ** 2 / x[0]
        gamma[0] = x[0] ** 2 / lp**2

    _complete(actions, coords)
    return GeometricCrystalModel(t, "V", coords, actions, gamma, epsilon)


# ============================================================
# σ̄ maps
# ============================================================


def _chain_p(t: AffineTypeId, prefix: str = "x") -> tuple[dict[int, Var], dict[int, Var], dict[int, Expr]]:
    """Coordinates and P_i = x_i * xb_i (P_n = x_n or x_n**2) of a chain V-model."""
    n = t.rank
    top = _v_top(t)
    lo = 0 if t.family in ("d2", "a2-even", "a2-even-dagger") else 1
    x = {i: Var(f"{prefix}{i}") for i in range(lo, n + 1)}
    xb = {i: Var(f"{prefix}b{i}") for i in range(1, top + 1)}
    P: dict[int, Expr] = {i: x[i] * xb[i] for i in range(1, top + 1)}
    return x, xb, P


def _sigma_bar_exprs(t: AffineTypeId) -> tuple[dict[str, Expr], Expr]:
    fam, n = t.family, t.rank
    if fam == "a1":
        x = {i: Var(f"x{i}") for i in range(1, n + 1)}
        out = {"x1": ONE / (LAM * x[n])}
        for i in range(2, n + 1):
            out[f"x{i}"] = x[i - 1] / x[n]
        return out, ONE / x[n]

    x, xb, P = _chain_p(t)
    if fam in ("b1", "d1", "a2-odd"):
        a = ONE / (LAM * P[1])
        out = {name: a * Var(name) for name in _v_coords(t)}
        if fam == "a2-odd":
            out[f"x{n}"] = a**2 * x[n]
        return out, a

    if fam == "d2":
        a = (P[n - 1] + x[n] ** 2) / (LAM * x[n - 1] * x[n] ** 2)
        y: dict[int, Expr] = {0: LAM * a * x[n]}
        for i in range(1, n - 1):
            y[i] = LAM * a * (P[n - i - 1] + P[n - i]) / x[n - i - 1]
        y[n - 1] = a * LAM * (x[0] ** 2 / LAM**2 + P[1]) / x[0] ** 2
        y[n] = a * x[0] / LAM
        out = {f"x{i}": y[i] for i in range(n + 1)}
        for i in range(1, n):
            out[f"xb{i}"] = a**2 * P[n - i] / y[i]
        return out, a

    if fam == "a2-even":
        a = (P[n - 1] + x[n]) / (LAM**2 * x[n - 1] * x[n])
        x0sq = x[0] ** 2
        lp = LAM**2 * P[1]
        out = {
            "y0": a * x[0],
            "y1": a * (x0sq + lp) / x0sq,
            "yb1": LAM**2 * a * x0sq * P[1] / (x0sq + lp),
        }
        for i in range(2, n):
            out[f"y{i}"] = LAM**2 * a * (P[i - 1] + P[i]) / x[i - 1]
            out[f"yb{i}"] = a * P[i] * x[i - 1] / (P[i - 1] + P[i])
        out[f"y{n}"] = LAM**2 * a * (P[n - 1] + x[n]) / x[n - 1]
        return out, a

    if fam == "a2-even-dagger":
        a = (P[n - 1] + x[n] ** 2) / (LAM * x[n - 1] * x[n] ** 2)
        head = x[0] / LAM + P[1]
        out = {
            "y0": a**2 * x[0],
            "y1": LAM * a * head / x[0],
            "yb1": a * x[0] * P[1] / head,
        }
        for i in range(2, n):
            out[f"y{i}"] = LAM * a * (P[i - 1] + P[i]) / x[i - 1]
            out[f"yb{i}"] = a * x[i - 1] * P[i] / (P[i - 1] + P[i])
        out[f"y{n}"] = LAM * a * x[n]
        return out, a

    raise UnsupportedModel(f"No σ̄ for {t}")


def _sigma_bar_inverse_exprs(t: AffineTypeId) -> dict[str, Expr]:
    """Inverse of σ̄; σ̄ is an involution except for A1 and the V2 charts."""
    fam, n = t.family, t.rank
    if fam == "a1":
        y = {i: Var(f"x{i}") for i in range(1, n + 1)}
        out = {f"x{n}": ONE / (LAM * y[1])}
        for i in range(1, n):
            out[f"x{i}"] = y[i + 1] / (LAM * y[1])
        return out
    if fam in ("b1", "d1", "a2-odd", "d2"):
        return _sigma_bar_exprs(t)[0]

    y = {i: Var(f"y{i}") for i in range(n + 1)}
    yb = {i: Var(f"yb{i}") for i in range(1, n)}
    Q: dict[int, Expr] = {i: y[i] * yb[i] for i in range(1, n)}
    out: dict[str, Expr] = {}
    if fam == "a2-even":
        y0sq = y[0] ** 2
        a = y0sq * y[1] / (y0sq + Q[1])
        out["x0"] = y[0] / a
        for i in range(1, n - 1):
            out[f"x{i}"] = (Q[i] + Q[i + 1]) / (a * y[i + 1])
            out[f"xb{i}"] = Q[i] * y[i + 1] / (LAM**2 * a * (Q[i] + Q[i + 1]))
        out[f"x{n - 1}"] = (Q[n - 1] + y[n] / LAM**2) / (a * y[n])
        out[f"xb{n - 1}"] = Q[n - 1] * y[n] / (a * (LAM**2 * Q[n - 1] + y[n]))
        out[f"x{n}"] = y[n] / (LAM**4 * a**2)
        return out
    if fam == "a2-even-dagger":
        a = y[0] * y[1] / (y[0] + Q[1])
        out["x0"] = (y[0] + Q[1]) / (a * y[1])
        for i in range(1, n - 1):
            out[f"x{i}"] = (Q[i] + Q[i + 1]) / (a * y[i + 1])
            out[f"xb{i}"] = Q[i] * y[i + 1] / (LAM * a * (Q[i] + Q[i + 1]))
        yn2 = y[n] ** 2
        out[f"x{n - 1}"] = (Q[n - 1] + yn2 / LAM) / (a * yn2)
        out[f"xb{n - 1}"] = Q[n - 1] * yn2 / (a * (LAM * Q[n - 1] + yn2))
        out[f"x{n}"] = y[n] / (LAM * a)
        return out
    raise UnsupportedModel(f"No σ̄ for {t}")


@lru_cache(maxsize=None)
def sigma_bar_map(t: AffineTypeId) -> MapSpec:
    exprs, a = _sigma_bar_exprs(t)
    target = "V2" if t.family in ("a2-even", "a2-even-dagger") else "V"
    return MapSpec("sigma-bar", (t, "V"), (t, target), exprs, factor=a)


@lru_cache(maxsize=None)
def sigma_bar_inverse_map(t: AffineTypeId) -> MapSpec:
    source = "V2" if t.family in ("a2-even", "a2-even-dagger") else "V"
    return MapSpec("sigma-bar-inverse", (t, source), (t, "V"), _sigma_bar_inverse_exprs(t))


# ============================================================
# V2 charts (A2even, A2evenDagger)
# ============================================================


def _v2(t: AffineTypeId) -> GeometricCrystalModel:
    fam, n = t.family, t.rank
    dagger = fam == "a2-even-dagger"
    y = {i: Var(f"y{i}") for i in range(n + 1)}
    yb = {i: Var(f"yb{i}") for i in range(1, n)}
    coords = tuple(f"y{i}" for i in range(n + 1)) + tuple(f"yb{i}" for i in range(n - 1, 0, -1))
    Q: dict[int, Expr] = {i: y[i] * yb[i] for i in range(1, n)}
    Q[0] = y[0] if dagger else y[0] ** 2
    Q[n] = y[n] ** 2 if dagger else y[n]
    top_y = y[n] ** 2 if dagger else y[n]

    actions: dict[int, dict[str, Expr]] = {0: {"y0": C * y[0]}}
    gamma: dict[int, Expr] = {0: y[0] ** 2 / (Q[1] ** 2 if dagger else Q[1])}
    epsilon: dict[int, Expr] = {0: (y[1] ** 2 if dagger else y[1]) / y[0]}
    for i in range(1, n):
        plain = Q[i] + Q[i - 1]
        scaled = C * Q[i] + Q[i - 1]
        actions[i] = {f"y{i}": y[i] * scaled / plain, f"yb{i}": yb[i] * C * plain / scaled}
        gamma[i] = Q[i] ** 2 / (Q[i - 1] * Q[i + 1])
        upper = top_y if i == n - 1 else y[i + 1]
        epsilon[i] = upper / y[i] * (1 + Q[i - 1] / Q[i])

    # e_n, gamma_n, epsilon_n are transported from the V-model through σ̄
    v = build_model(t, "V")
    forward, _ = _sigma_bar_exprs(t)
    back = _sigma_bar_inverse_exprs(t)
    memo: Memo = {}
    moved = {name: substitute(expr, back, memo) for name, expr in v.actions[n].items()}
    actions[n] = {name: substitute(expr, moved) for name, expr in forward.items()}
    gamma[n] = substitute(v.gamma[n], back, memo)
    epsilon[n] = substitute(v.epsilon[n], back, memo)

    _complete(actions, coords)
    return GeometricCrystalModel(t, "V2", coords, actions, gamma, epsilon)


# ============================================================
# B models
# ============================================================


def _b_step(lo: Var, lo_b: Var, hi: Var, hi_b: Var) -> dict[str, Expr]:
    """e_i of the D1-like chain, moving weight from coordinate i+1 to i."""
    xi = (C * hi_b + hi) / (hi_b + hi)
    return {lo.name: C * lo / xi, hi.name: xi * hi / C, hi_b.name: xi * hi_b, lo_b.name: lo_b / xi}


def _b_head(first: Var, first_b: Var, hi: Var, hi_b: Var) -> dict[str, Expr]:
    xi = (C * hi_b + hi) / (hi_b + hi)
    return {first.name: first / xi, hi.name: xi * hi / C, hi_b.name: xi * hi_b, first_b.name: C * first_b / xi}


def _b_a1(t: AffineTypeId) -> GeometricCrystalModel:
    n = t.rank
    N = n + 1
    lv = {i: Var(f"l{i}") for i in range(1, N + 1)}
    coords = tuple(f"l{i}" for i in range(1, N + 1))
    actions: dict[int, dict[str, Expr]] = {0: {f"l{N}": C * lv[N], "l1": lv[1] / C}}
    gamma: dict[int, Expr] = {0: lv[N] / lv[1]}
    epsilon: dict[int, Expr] = {0: lv[1]}
    for i in range(1, n + 1):
        actions[i] = {f"l{i}": C * lv[i], f"l{i + 1}": lv[i + 1] / C}
        gamma[i] = lv[i] / lv[i + 1]
        epsilon[i] = lv[i + 1]
    _complete(actions, coords)
    return GeometricCrystalModel(
        t, "B", coords, actions, gamma, epsilon,
        constraint=prod(lv.values()), constraint_power=1, dependent=f"l{N}",
    )


def _b_d1(t: AffineTypeId) -> GeometricCrystalModel:
    n = t.rank
    lv = {i: Var(f"l{i}") for i in range(1, n + 1)}
    lb = {i: Var(f"lb{i}") for i in range(1, n)}
    coords = tuple(f"l{i}" for i in range(1, n + 1)) + tuple(f"lb{i}" for i in range(n - 1, 0, -1))
    actions: dict[int, dict[str, Expr]] = {0: _b_head(lv[1], lb[1], lv[2], lb[2])}
    epsilon: dict[int, Expr] = {0: lv[1] * (lv[2] / lb[2] + 1)}
    gamma: dict[int, Expr] = {0: lb[1] * lb[2] / (lv[1] * lv[2])}
    for i in range(1, n - 1):
        actions[i] = _b_step(lv[i], lb[i], lv[i + 1], lb[i + 1])
        epsilon[i] = lb[i] * (lv[i + 1] / lb[i + 1] + 1)
        gamma[i] = lv[i] * lb[i + 1] / (lb[i] * lv[i + 1])
    actions[n - 1] = {f"l{n - 1}": C * lv[n - 1], f"l{n}": lv[n] / C}
    actions[n] = {f"l{n}": C * lv[n], f"lb{n - 1}": lb[n - 1] / C}
    epsilon[n - 1] = lv[n] * lb[n - 1]
    epsilon[n] = lb[n - 1]
    gamma[n - 1] = lv[n - 1] / (lv[n] * lb[n - 1])
    gamma[n] = lv[n - 1] * lv[n] / lb[n - 1]
    _complete(actions, coords)
    return GeometricCrystalModel(
        t, "B", coords, actions, gamma, epsilon,
        constraint=prod([*lv.values(), *lb.values()]), constraint_power=1, dependent="lb1",
    )


def _b_folded(t: AffineTypeId) -> GeometricCrystalModel:
    """B-models of B1, D2, A2odd and A2even in the m-coordinates."""
    fam, n = t.family, t.rank
    has_m0 = fam in ("d2", "a2-even")
    m = {i: Var(f"m{i}") for i in range(0 if has_m0 else 1, n + 1)}
    mb = {i: Var(f"mb{i}") for i in range(1, n + 1)}
    coords = (("m0",) if has_m0 else ()) + tuple(f"m{i}" for i in range(1, n + 1)) + tuple(
        f"mb{i}" for i in range(n, 0, -1)
    )
    twisted = fam in ("a2-odd", "a2-even")
    chain_end = n - 1 if twisted else n  # e_i for i < chain_end is the D1-like step

    actions: dict[int, dict[str, Expr]] = {}
    gamma: dict[int, Expr] = {}
    epsilon: dict[int, Expr] = {}
    for i in range(1, chain_end):
        actions[i] = _b_step(m[i], mb[i], m[i + 1], mb[i + 1])
        epsilon[i] = mb[i] * (m[i + 1] / mb[i + 1] + 1)
        gamma[i] = m[i] * mb[i + 1] / (mb[i] * m[i + 1])

    actions[n] = {f"m{n}": C * m[n], f"mb{n}": mb[n] / C}
    epsilon[n] = mb[n]
    gamma[n] = m[n] / mb[n]

    inner = prod([*(m[i] for i in range(1, n)), *(mb[i] for i in range(1, n))])
    if has_m0:
        inner = m[0] ** 2 * inner
    if twisted:
        big_m = LAM / (inner * mb[n])
        big_mb = LAM / (inner * m[n])
        xi = (C + big_m) / (1 + big_m)
        k = n - 1
        actions[k] = {
            f"m{k}": C * m[k] / xi,
            f"m{n}": m[n] * xi**2 / C**2,
            f"mb{n}": mb[n] * xi**2,
            f"mb{k}": mb[k] / xi,
        }
        epsilon[k] = mb[k] * (big_m + 1)
        gamma[k] = m[k] / mb[k] * big_mb
        constraint = m[n] * mb[n] * inner**2
        power = 2
    else:
        constraint = inner * m[n] * mb[n]
        power = 1

    if has_m0:
        xi0 = (C**2 * mb[1] + m[1]) / (mb[1] + m[1])
        actions[0] = {"m0": C * m[0] / xi0, "m1": xi0 * m[1] / C**2, "mb1": xi0 * mb[1]}
        epsilon[0] = m[0] * (m[1] / mb[1] + 1)
        gamma[0] = mb[1] / m[1]
    else:
        actions[0] = _b_head(m[1], mb[1], m[2], mb[2])
        epsilon[0] = m[1] * (m[2] / mb[2] + 1)
        gamma[0] = mb[1] * mb[2] / (m[1] * m[2])

    _complete(actions, coords)
    dependent = f"mb{n}" if twisted else "mb1"
    return GeometricCrystalModel(
        t, "B", coords, actions, gamma, epsilon,
        constraint=constraint, constraint_power=power, dependent=dependent,
    )


# ============================================================
# Catalogue entry point
# ============================================================


@lru_cache(maxsize=None)
def build_model(t: AffineTypeId, model: str = "V") -> GeometricCrystalModel:
    """Expression family of the requested chart; the spectral parameter stays symbolic."""
    logger.debug("building %s model for %s", model, t)
    if model == "V":
        return _v_a1(t) if t.family == "a1" else _v_chain(t)
    if model == "V2":
        if t.family not in ("a2-even", "a2-even-dagger"):
            raise UnsupportedModel(f"V2 exists only for a2-even and a2-even-dagger, not {t.family}")
        return _v2(t)
    if model == "B":
        if t.family == "a1":
            return _b_a1(t)
        if t.family == "d1":
            return _b_d1(t)
        if t.family == "a2-even-dagger":
            raise UnsupportedModel("No B-model is catalogued for a2-even-dagger")
        return _b_folded(t)
    raise UnsupportedModel(f"Unknown model {model!r}")


def available_models(t: AffineTypeId) -> tuple[str, ...]:
    models = ["V"]
    if t.family != "a2-even-dagger":
        models.append("B")
    if t.family in ("a2-even", "a2-even-dagger"):
        models.append("V2")
    return tuple(models)


# ============================================================
# Ξ : B <-> V
# ============================================================


def xi_spectral_power(t: AffineTypeId) -> int:
    """V_L corresponds to B_{L**p}."""
    return 2 if t.family in ("d2", "a2-even") else 1


def _xi_b_to_v(t: AffineTypeId) -> dict[str, Expr]:
    fam, n = t.family, t.rank
    if fam == "a1":
        lv = [Var(f"l{i}") for i in range(1, n + 2)]
        return {f"x{i}": prod(lv[:i]) / LAM for i in range(1, n + 1)}
    if fam == "d1":
        lv = {i: Var(f"l{i}") for i in range(1, n + 1)}
        lb = {i: Var(f"lb{i}") for i in range(1, n)}
        out: dict[str, Expr] = {}
        for i in range(1, n - 1):
            out[f"x{i}"] = ONE / prod(lb[k] for k in range(1, i + 1))
            out[f"xb{i}"] = prod(lv[k] for k in range(1, i + 1)) / LAM
        bars = prod(lb[k] for k in range(1, n))
        out[f"x{n - 1}"] = ONE / (bars * lv[n])
        out[f"x{n}"] = ONE / bars
        return out

    has_m0 = fam in ("d2", "a2-even")
    m = {i: Var(f"m{i}") for i in range(0 if has_m0 else 1, n + 1)}
    mb = {i: Var(f"mb{i}") for i in range(1, n + 1)}
    twisted = fam in ("a2-odd", "a2-even")
    lead = m[0] ** 2 if has_m0 else ONE
    out = {}
    if has_m0:
        out["x0"] = ONE / m[0]
    last = n - 1 if twisted else n
    for i in range(1, last + 1):
        out[f"x{i}"] = ONE / (lead * prod(mb[k] for k in range(1, i + 1)))
    for i in range(1, n):
        out[f"xb{i}"] = prod(m[k] for k in range(1, i + 1)) / LAM
    if twisted:
        out[f"x{n}"] = ONE / (mb[n] * (lead * prod(mb[k] for k in range(1, n))) ** 2)
    return out


def _xi_v_to_b(t: AffineTypeId) -> dict[str, Expr]:
    fam, n = t.family, t.rank
    if fam == "a1":
        x = {i: Var(f"x{i}") for i in range(1, n + 1)}
        out: dict[str, Expr] = {"l1": LAM * x[1], f"l{n + 1}": ONE / x[n]}
        for i in range(2, n + 1):
            out[f"l{i}"] = x[i] / x[i - 1]
        return out
    x, xb, _ = _chain_p(t)
    if fam == "d1":
        out = {"l1": LAM * xb[1], "lb1": ONE / x[1]}
        for i in range(2, n - 1):
            out[f"l{i}"] = xb[i] / xb[i - 1]
            out[f"lb{i}"] = x[i - 1] / x[i]
        out[f"l{n - 1}"] = x[n - 1] / xb[n - 2]
        out[f"l{n}"] = x[n] / x[n - 1]
        out[f"lb{n - 1}"] = x[n - 2] / x[n]
        return out

    has_m0 = fam in ("d2", "a2-even")
    twisted = fam in ("a2-odd", "a2-even")
    lam = LAM**2 if has_m0 else LAM
    out = {"m1": lam * xb[1]}
    if has_m0:
        out["m0"] = ONE / x[0]
        out["mb1"] = x[0] ** 2 / x[1]
    else:
        out["mb1"] = ONE / x[1]
    for i in range(2, n):
        out[f"m{i}"] = xb[i] / xb[i - 1]
        out[f"mb{i}"] = x[i - 1] / x[i]
    if twisted:
        out[f"m{n}"] = x[n] / xb[n - 1] ** 2
        out[f"mb{n}"] = x[n - 1] ** 2 / x[n]
    else:
        out[f"m{n}"] = x[n] / xb[n - 1]
        out[f"mb{n}"] = x[n - 1] / x[n]
    return out


@lru_cache(maxsize=None)
def xi_map(t: AffineTypeId, direction: str) -> MapSpec:
    """Ξ ("B->V") or its inverse ("V->B")."""
    if t.family == "a2-even-dagger":
        raise UnsupportedModel("No B-model is catalogued for a2-even-dagger")
    p = xi_spectral_power(t)
    if direction == "B->V":
        return MapSpec("xi", (t, "B"), (t, "V"), _xi_b_to_v(t), Fraction(1, p))
    if direction == "V->B":
        return MapSpec("xi-inverse", (t, "V"), (t, "B"), _xi_v_to_b(t), Fraction(p))
    raise ValueError(f"Unknown direction {direction!r}; expected 'B->V' or 'V->B'")


# ============================================================
# η : folded B-model -> B(D1) fixed-point variety
# ============================================================


def host_rank(t: AffineTypeId) -> int:
    n = t.rank
    return {"b1": n + 1, "d2": n + 2, "a2-odd": 2 * n, "a2-even": 2 * n + 2}[t.family]


def d1_host(N: int) -> AffineTypeId:
    return AffineTypeId("d1", N, host=True)


def host_type(t: AffineTypeId) -> AffineTypeId:
    return d1_host(host_rank(t))


def host_spectral_power(t: AffineTypeId) -> int:
    return 2 if t.family in ("a2-odd", "a2-even") else 1


def _fold_upper(l: dict[int, Expr], lb: dict[int, Expr], N: int, low: int) -> None:
    """Fill l_{N-i}, lb_{N-i} for i = N/2 - 1 .. low and l_{N-1}, lb_{N-1}, l_N fixed by Σ2."""
    for i in range(N // 2 - 1, low - 1, -1):
        common = l[i] * lb[i] * (l[i + 1] + lb[i + 1]) / (l[i] + lb[i])
        l[N - i] = common / l[i + 1]
        lb[N - i] = common / lb[i + 1]
    s = l[2] + lb[2]
    l[N - 1] = l[1] * s / l[2]
    lb[N - 1] = l[1] * s / lb[2]


def _eta_exprs(t: AffineTypeId) -> dict[str, Expr]:
    fam, n = t.family, t.rank
    N = host_rank(t)
    l: dict[int, Expr] = {}
    lb: dict[int, Expr] = {}
    if fam == "b1":
        for i in range(1, n + 1):
            l[i], lb[i] = Var(f"m{i}"), Var(f"mb{i}")
        l[n + 1] = ONE
    elif fam == "d2":
        l[1] = lb[1] = Var("m0")
        for i in range(1, n + 1):
            l[i + 1], lb[i + 1] = Var(f"m{i}"), Var(f"mb{i}")
        l[n + 2] = ONE
    else:
        has_m0 = fam == "a2-even"
        shift = 1 if has_m0 else 0
        m = {i: Var(f"m{i}") for i in range(0 if has_m0 else 1, n + 1)}
        mb = {i: Var(f"mb{i}") for i in range(1, n + 1)}
        if has_m0:
            l[1] = lb[1] = m[0]
        for i in range(1, n):
            l[i + shift], lb[i + shift] = m[i], mb[i]
        inner = prod([*(m[i] for i in range(1, n)), *(mb[i] for i in range(1, n))])
        if has_m0:
            inner = m[0] ** 2 * inner
        big_m = LAM / (inner * mb[n])
        big_mb = LAM / (inner * m[n])
        mid = n + shift
        l[mid] = m[n] / (1 + big_m)
        lb[mid] = mb[n] / (1 + big_mb)
        _fold_upper(l, lb, N, 2)
        l[N] = lb[1] / l[1] if not has_m0 else ONE
    out = {f"l{i}": l[i] for i in range(1, N + 1)}
    out.update({f"lb{i}": lb[i] for i in range(1, N)})
    return out


def _eta_inverse_exprs(t: AffineTypeId) -> dict[str, Expr]:
    fam, n = t.family, t.rank
    lv = {i: Var(f"l{i}") for i in range(1, host_rank(t) + 1)}
    lb = {i: Var(f"lb{i}") for i in range(1, host_rank(t))}
    out: dict[str, Expr] = {}
    if fam == "b1":
        for i in range(1, n + 1):
            out[f"m{i}"], out[f"mb{i}"] = lv[i], lb[i]
        return out
    if fam == "d2":
        out["m0"] = lv[1]
        for i in range(1, n + 1):
            out[f"m{i}"], out[f"mb{i}"] = lv[i + 1], lb[i + 1]
        return out
    shift = 1 if fam == "a2-even" else 0
    if shift:
        out["m0"] = lv[1]
    for i in range(1, n):
        out[f"m{i}"], out[f"mb{i}"] = lv[i + shift], lb[i + shift]
    a, b = lv[n + shift], lb[n + shift]
    out[f"m{n}"] = a * (1 + a / b)
    out[f"mb{n}"] = b * (1 + b / a)
    return out


@lru_cache(maxsize=None)
def eta_map(t: AffineTypeId) -> MapSpec:
    if t.family not in ("b1", "d2", "a2-odd", "a2-even"):
        raise UnsupportedModel(f"{t.family} is not a folded type")
    return MapSpec(
        "eta", (t, "B"), (host_type(t), "B"), _eta_exprs(t), Fraction(host_spectral_power(t))
    )


@lru_cache(maxsize=None)
def eta_inverse_map(t: AffineTypeId) -> MapSpec:
    if t.family not in ("b1", "d2", "a2-odd", "a2-even"):
        raise UnsupportedModel(f"{t.family} is not a folded type")
    return MapSpec(
        "eta-inverse",
        (host_type(t), "B"),
        (t, "B"),
        _eta_inverse_exprs(t),
        Fraction(1, host_spectral_power(t)),
    )
