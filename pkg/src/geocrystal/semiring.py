"""Exact scalars, subtraction-free expressions and their evaluation over semirings.

An ``Expr`` is an immutable DAG built from variables, positive constants, sums, products,
quotients and integer powers. There is no subtraction node, so every expression is a
positive rational function and can be evaluated over

- the rational field (``RATIONAL``, exact ``Fraction`` arithmetic), or
- the max-plus semiring (``MAX_PLUS``), which is ultra-discretization.

Degrees of a univariate substitution x = a * t**k are read off an exact expansion in t
(``geocrystal.laurent.RATIONAL_FUNCTION``) and compared with the max-plus value.

Expressions are compiled once into a flat ``Program`` (one instruction per distinct node)
and evaluated many times.
"""

from __future__ import annotations

import operator
import random
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Any, Generic, TypeVar

from geocrystal.errors import DivisionByZero, UnboundVariable

T = TypeVar("T")

Scalar = Fraction


# ============================================================
# Scalars
# ============================================================


def parse_scalar(value: str | int | Fraction) -> Fraction:
    """Parse "p/q", "p", an int or a Fraction into an exact Fraction."""
    if isinstance(value, bool):
        raise ValueError(f"Not a scalar: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    text = str(value).strip()
    if not text:
        raise ValueError("Empty scalar")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"Not a scalar: {value!r}") from e


def format_scalar(value: Fraction | int) -> str:
    """Canonical "p/q" spelling, "p" when the denominator is 1."""
    q = Fraction(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# ============================================================
# Expression nodes
# ============================================================


class Expr:
    """Base class of subtraction-free expressions.

    Nodes compare and hash by identity; structural sharing is what makes large families
    (R maps, folded actions) cheap to evaluate.
    """

    __slots__ = ("__weakref__",)

    def __add__(self, other: Expr | int | Fraction) -> Expr:
        return add(self, as_expr(other))

    def __radd__(self, other: int | Fraction) -> Expr:
        return add(as_expr(other), self)

    def __mul__(self, other: Expr | int | Fraction) -> Expr:
        return mul(self, as_expr(other))

    def __rmul__(self, other: int | Fraction) -> Expr:
        return mul(as_expr(other), self)

    def __truediv__(self, other: Expr | int | Fraction) -> Expr:
        return Quotient(self, as_expr(other))

    def __rtruediv__(self, other: int | Fraction) -> Expr:
        return Quotient(as_expr(other), self)

    def __pow__(self, exponent: int) -> Expr:
        if not isinstance(exponent, int):
            raise TypeError("Expr powers must be integers")
        if exponent == 1:
            return self
        return IntPower(self, exponent)


class Var(Expr):
    __slots__ = ("name",)

    def __init__(self, name: str) -> None:
        self.name = name

    def __repr__(self) -> str:
        return self.name


class PosConst(Expr):
    __slots__ = ("value",)

    def __init__(self, value: int | Fraction) -> None:
        q = Fraction(value)
        if q <= 0:
            raise ValueError(f"Expr constants must be positive, got {q}")
        self.value = q

    def __repr__(self) -> str:
        return format_scalar(self.value)


class Sum(Expr):
    __slots__ = ("terms",)

    def __init__(self, terms: tuple[Expr, ...]) -> None:
        if len(terms) < 2:
            raise ValueError("Sum needs at least two terms")
        self.terms = terms

    def __repr__(self) -> str:
        return "(" + " + ".join(map(repr, self.terms)) + ")"


class Product(Expr):
    __slots__ = ("factors",)

    def __init__(self, factors: tuple[Expr, ...]) -> None:
        if len(factors) < 2:
            raise ValueError("Product needs at least two factors")
        self.factors = factors

    def __repr__(self) -> str:
        return "*".join(map(repr, self.factors))


class Quotient(Expr):
    __slots__ = ("numer", "denom")

    def __init__(self, numer: Expr, denom: Expr) -> None:
        self.numer = numer
        self.denom = denom

    def __repr__(self) -> str:
        return f"({self.numer!r})/({self.denom!r})"


class IntPower(Expr):
    __slots__ = ("base", "exponent")

    def __init__(self, base: Expr, exponent: int) -> None:
        self.base = base
        self.exponent = exponent

    def __repr__(self) -> str:
        return f"({self.base!r})^{self.exponent}"


ONE = PosConst(1)


def as_expr(value: Expr | int | Fraction) -> Expr:
    if isinstance(value, Expr):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        if value == 1:
            return ONE
        return PosConst(value)
    raise TypeError(f"Cannot use {value!r} in an expression")


def add(a: Expr, b: Expr) -> Expr:
    left = a.terms if isinstance(a, Sum) else (a,)
    right = b.terms if isinstance(b, Sum) else (b,)
    return Sum(left + right)


def mul(a: Expr, b: Expr) -> Expr:
    if a is ONE:
        return b
    if b is ONE:
        return a
    left = a.factors if isinstance(a, Product) else (a,)
    right = b.factors if isinstance(b, Product) else (b,)
    return Product(left + right)


def total(terms: Iterable[Expr | int | Fraction]) -> Expr:
    """Sum of a non-empty family."""
    items = tuple(as_expr(t) for t in terms)
    if not items:
        raise ValueError("Empty sum is not subtraction-free")
    return reduce(add, items)


def prod(factors: Iterable[Expr | int | Fraction]) -> Expr:
    """Product of a family; the empty product is 1."""
    return reduce(mul, (as_expr(f) for f in factors), ONE)


# ============================================================
# Semirings
# ============================================================


@dataclass(frozen=True)
class Semiring(Generic[T]):
    """Operations an expression is evaluated with."""

    name: str
    add: Callable[[T, T], T]
    mul: Callable[[T, T], T]
    div: Callable[[T, T], T]
    power: Callable[[T, int], T]
    const: Callable[[Fraction], T]

    def sum(self, values: Iterable[T]) -> T:
        return reduce(self.add, values)

    def product(self, values: Iterable[T], one: T) -> T:
        return reduce(self.mul, values, one)


def _q_div(a: Fraction, b: Fraction) -> Fraction:
    if b == 0:
        raise DivisionByZero("Denominator evaluated to zero")
    return a / b


def _q_pow(a: Fraction, k: int) -> Fraction:
    if a == 0 and k < 0:
        raise DivisionByZero("Negative power of zero")
    return a**k


RATIONAL: Semiring[Fraction] = Semiring(
    name="rational",
    add=operator.add,
    mul=operator.mul,
    div=_q_div,
    power=_q_pow,
    const=lambda q: q,
)

MAX_PLUS: Semiring[int] = Semiring(
    name="max-plus",
    add=max,
    mul=operator.add,
    div=operator.sub,
    power=operator.mul,
    const=lambda q: 0,
)


# ============================================================
# Compiled programs
# ============================================================

_VAR, _CONST, _SUM, _PROD, _QUOT, _POW = range(6)


class Program:
    """A family of expressions flattened into one instruction list.

    Each distinct node is evaluated once per run, whatever the number of outputs
    sharing it.
    """

    def __init__(self, outputs: Mapping[str, Expr]) -> None:
        self._ops: list[tuple[int, Any, tuple[int, ...]]] = []
        index: dict[int, int] = {}
        # keep nodes alive so ids stay unique while compiling
        self._keep: list[Expr] = []
        names: set[str] = set()

        def visit(node: Expr) -> int:
            key = id(node)
            if key in index:
                return index[key]
            if isinstance(node, Var):
                op: tuple[int, Any, tuple[int, ...]] = (_VAR, node.name, ())
                names.add(node.name)
            elif isinstance(node, PosConst):
                op = (_CONST, node.value, ())
            elif isinstance(node, Sum):
                op = (_SUM, None, tuple(visit(t) for t in node.terms))
            elif isinstance(node, Product):
                op = (_PROD, None, tuple(visit(f) for f in node.factors))
            elif isinstance(node, Quotient):
                op = (_QUOT, None, (visit(node.numer), visit(node.denom)))
            elif isinstance(node, IntPower):
                op = (_POW, node.exponent, (visit(node.base),))
            else:
                raise TypeError(f"Unknown expression node: {type(node).__name__}")
            index[key] = len(self._ops)
            self._ops.append(op)
            self._keep.append(node)
            return index[key]

        self._outputs = {name: visit(expr) for name, expr in outputs.items()}
        self.variables: frozenset[str] = frozenset(names)

    def __len__(self) -> int:
        return len(self._ops)

    @property
    def output_names(self) -> tuple[str, ...]:
        return tuple(self._outputs)

    def run(self, env: Mapping[str, T], semiring: Semiring[T]) -> dict[str, T]:
        add_, mul_, div_, pow_ = semiring.add, semiring.mul, semiring.div, semiring.power
        values: list[Any] = [None] * len(self._ops)
        for idx, (kind, payload, args) in enumerate(self._ops):
            if kind == _VAR:
                try:
                    values[idx] = env[payload]
                except KeyError:
                    raise UnboundVariable(payload) from None
            elif kind == _CONST:
                values[idx] = semiring.const(payload)
            elif kind == _SUM:
                acc = values[args[0]]
                for a in args[1:]:
                    acc = add_(acc, values[a])
                values[idx] = acc
            elif kind == _PROD:
                acc = values[args[0]]
                for a in args[1:]:
                    acc = mul_(acc, values[a])
                values[idx] = acc
            elif kind == _QUOT:
                values[idx] = div_(values[args[0]], values[args[1]])
            else:
                values[idx] = pow_(values[args[0]], payload)
        return {name: values[i] for name, i in self._outputs.items()}


@lru_cache(maxsize=4096)
def _single(expr: Expr) -> Program:
    return Program({"value": expr})


def evaluate(expr: Expr, env: Mapping[str, T], semiring: Semiring[T]) -> T:
    return _single(expr).run(env, semiring)["value"]


def eval_rational(expr: Expr, env: Mapping[str, Fraction]) -> Fraction:
    """Exact value of ``expr``; raises DivisionByZero outside the domain."""
    return evaluate(expr, env, RATIONAL)


def eval_tropical(expr: Expr, env: Mapping[str, int]) -> int:
    """Image of ``expr`` under Sum -> max, Product -> +, Quotient -> -, power k -> k*."""
    return evaluate(expr, env, MAX_PLUS)


def variables(expr: Expr) -> frozenset[str]:
    return _single(expr).variables


# ============================================================
# Substitution
# ============================================================


# id(node) -> (node, image). Holding the node keeps its id from being reused.
Memo = dict[int, tuple[Expr, Expr]]


def substitute(expr: Expr, mapping: Mapping[str, Expr], memo: Memo | None = None) -> Expr:
    """Replace variables by expressions, preserving sharing.

    Pass the same ``memo`` to several calls with the same ``mapping`` so that the results
    share their common sub-expressions too.
    """
    cache: Memo = {} if memo is None else memo

    def walk(node: Expr) -> Expr:
        key = id(node)
        hit = cache.get(key)
        if hit is not None and hit[0] is node:
            return hit[1]
        if isinstance(node, Var):
            out = mapping.get(node.name, node)
        elif isinstance(node, PosConst):
            out = node
        elif isinstance(node, Sum):
            out = Sum(tuple(walk(t) for t in node.terms))
        elif isinstance(node, Product):
            out = Product(tuple(walk(f) for f in node.factors))
        elif isinstance(node, Quotient):
            out = Quotient(walk(node.numer), walk(node.denom))
        elif isinstance(node, IntPower):
            out = IntPower(walk(node.base), node.exponent)
        else:
            raise TypeError(f"Unknown expression node: {type(node).__name__}")
        cache[key] = (node, out)
        return out

    return walk(expr)


def rename(expr: Expr, names: Mapping[str, str], memo: Memo | None = None) -> Expr:
    return substitute(expr, {old: Var(new) for old, new in names.items()}, memo)


# ============================================================
# Degree bookkeeping
# ============================================================


def leading_term(
    expr: Expr, exponents: Mapping[str, int], coefficients: Mapping[str, Fraction]
) -> tuple[int, Fraction]:
    """Leading (degree, coefficient) of expr at x = coefficient * t**exponent as t -> oo.

    The expression is expanded exactly as a quotient of Laurent polynomials in t.
    """
    # laurent imports this module
    from geocrystal.laurent import RATIONAL_FUNCTION, Laurent, leading

    one = Laurent.const(1)
    env = {
        name: (Laurent.monomial(exponents[name], coefficients[name]), one)
        for name in variables(expr)
    }
    return leading(evaluate(expr, env, RATIONAL_FUNCTION))


def check_degree_consistency(
    expr: Expr,
    exponents: Mapping[str, int],
    samples: int = 1,
    rng: random.Random | None = None,
) -> bool:
    """Degree in t of expr(x = a t**k) agrees with the max-plus value at k.

    Each sample draws fresh positive coefficients a and expands expr exactly in t; the
    leading coefficient must be positive.
    """
    rng = rng or random.Random(0)
    names = variables(expr)
    missing = names - set(exponents)
    if missing:
        raise UnboundVariable(sorted(missing)[0])
    tropical = eval_tropical(expr, {name: exponents[name] for name in names})
    for _ in range(max(samples, 1)):
        coefficients = {name: Fraction(rng.randint(1, 20), rng.randint(1, 20)) for name in names}
        degree, coefficient = leading_term(expr, exponents, coefficients)
        if degree != tropical or coefficient <= 0:
            return False
    return True
