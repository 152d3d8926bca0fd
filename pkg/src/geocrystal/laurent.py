"""Laurent polynomials with exact rational coefficients and square matrices of them.

Rational functions of one variable are kept as numerator/denominator pairs; they expand
an expression at x = a t**k exactly.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from fractions import Fraction
from typing import Any

from geocrystal.errors import DivisionByZero
from geocrystal.semiring import Semiring, format_scalar


class Laurent:
    """Finite sum of c_k z**k, k in Z. Zero coefficients are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, Fraction | int] | None = None) -> None:
        self.terms: dict[int, Fraction] = {
            k: Fraction(c) for k, c in (terms or {}).items() if c != 0
        }

    @classmethod
    def const(cls, value: Fraction | int) -> Laurent:
        return cls({0: value})

    @classmethod
    def monomial(cls, exponent: int, coefficient: Fraction | int = 1) -> Laurent:
        return cls({exponent: coefficient})

    def is_zero(self) -> bool:
        return not self.terms

    def exponent_range(self) -> tuple[int, int] | None:
        if not self.terms:
            return None
        return min(self.terms), max(self.terms)

    def _coerce(self, other: Laurent | Fraction | int) -> Laurent:
        return other if isinstance(other, Laurent) else Laurent.const(other)

    def __add__(self, other: Laurent | Fraction | int) -> Laurent:
        o = self._coerce(other)
        out = dict(self.terms)
        for k, c in o.terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return Laurent(out)

    __radd__ = __add__

    def __neg__(self) -> Laurent:
        return Laurent({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: Laurent | Fraction | int) -> Laurent:
        return self + (-self._coerce(other))

    def __mul__(self, other: Laurent | Fraction | int) -> Laurent:
        o = self._coerce(other)
        out: dict[int, Fraction] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in o.terms.items():
                out[k1 + k2] = out.get(k1 + k2, Fraction(0)) + c1 * c2
        return Laurent(out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Laurent.const(other)
        if not isinstance(other, Laurent):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def at(self, z: Fraction | int) -> Fraction:
        return sum((c * Fraction(z) ** k for k, c in self.terms.items()), Fraction(0))

    def to_json(self) -> dict[str, str]:
        return {str(k): format_scalar(c) for k, c in sorted(self.terms.items())}

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{format_scalar(c)}*z^{k}" for k, c in sorted(self.terms.items()))


ZERO = Laurent()


class PolyMatrix:
    """Square matrix with Laurent polynomial entries."""

    def __init__(self, rows: Iterable[Iterable[Laurent | Fraction | int]]) -> None:
        self.rows: list[list[Laurent]] = [
            [e if isinstance(e, Laurent) else Laurent.const(e) for e in row] for row in rows
        ]
        self.size = len(self.rows)
        if any(len(row) != self.size for row in self.rows):
            raise ValueError("PolyMatrix must be square")

    @classmethod
    def zeros(cls, size: int) -> PolyMatrix:
        return cls([[Laurent() for _ in range(size)] for _ in range(size)])

    @classmethod
    def identity(cls, size: int) -> PolyMatrix:
        return cls([[Laurent.const(1 if i == j else 0) for j in range(size)] for i in range(size)])

    def __getitem__(self, ij: tuple[int, int]) -> Laurent:
        i, j = ij
        return self.rows[i][j]

    def __setitem__(self, ij: tuple[int, int], value: Laurent | Fraction | int) -> None:
        i, j = ij
        self.rows[i][j] = value if isinstance(value, Laurent) else Laurent.const(value)

    def exponent_range(self) -> tuple[int, int] | None:
        ranges = [r for row in self.rows for e in row if (r := e.exponent_range()) is not None]
        if not ranges:
            return None
        return min(r[0] for r in ranges), max(r[1] for r in ranges)

    def __add__(self, other: PolyMatrix) -> PolyMatrix:
        self._check_size(other)
        return PolyMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __matmul__(self, other: PolyMatrix) -> PolyMatrix:
        self._check_size(other)
        n = self.size
        out = PolyMatrix.zeros(n)
        for i in range(n):
            row = self.rows[i]
            for k in range(n):
                a = row[k]
                if a.is_zero():
                    continue
                other_row = other.rows[k]
                for j in range(n):
                    b = other_row[j]
                    if not b.is_zero():
                        out.rows[i][j] = out.rows[i][j] + a * b
        left, right, result = self.exponent_range(), other.exponent_range(), out.exponent_range()
        if left and right and result:
            assert left[0] + right[0] <= result[0] and result[1] <= left[1] + right[1], (
                "Laurent exponent range escaped the product bounds"
            )
        return out

    def scale(self, factor: Laurent | Fraction | int) -> PolyMatrix:
        return PolyMatrix([[e * factor for e in row] for row in self.rows])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.size == other.size and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(tuple(tuple(row) for row in self.rows))

    def _check_size(self, other: PolyMatrix) -> None:
        if self.size != other.size:
            raise ValueError(f"Size mismatch: {self.size} vs {other.size}")

    def to_json(self) -> dict[str, Any]:
        return {"size": self.size, "entries": [[e.to_json() for e in row] for row in self.rows]}


# ============================================================
# Rational functions of t
# ============================================================

# (numerator, denominator); a monomial denominator is folded into the numerator.
RationalFunction = tuple[Laurent, Laurent]

_ONE = Laurent.const(1)


def _ratio(num: Laurent, den: Laurent) -> RationalFunction:
    if den.is_zero():
        raise DivisionByZero("Rational function with zero denominator")
    if len(den.terms) == 1:
        ((k, c),) = den.terms.items()
        return num * Laurent.monomial(-k, 1 / c), _ONE
    return num, den


def _rf_add(a: RationalFunction, b: RationalFunction) -> RationalFunction:
    if a[1] == b[1]:
        return _ratio(a[0] + b[0], a[1])
    return _ratio(a[0] * b[1] + b[0] * a[1], a[1] * b[1])


def _rf_div(a: RationalFunction, b: RationalFunction) -> RationalFunction:
    if b[0].is_zero():
        raise DivisionByZero("Division by the zero rational function")
    return _ratio(a[0] * b[1], a[1] * b[0])


def _rf_pow(a: RationalFunction, k: int) -> RationalFunction:
    num, den = (a[0], a[1]) if k >= 0 else (a[1], a[0])
    out_num, out_den = _ONE, _ONE
    for _ in range(abs(k)):
        out_num, out_den = out_num * num, out_den * den
    return _ratio(out_num, out_den)


RATIONAL_FUNCTION: Semiring[RationalFunction] = Semiring(
    name="rational-function",
    add=_rf_add,
    mul=lambda a, b: _ratio(a[0] * b[0], a[1] * b[1]),
    div=_rf_div,
    power=_rf_pow,
    const=lambda q: (Laurent.const(q), _ONE),
)


def leading(value: RationalFunction) -> tuple[int, Fraction]:
    """Degree in t as t -> oo and the leading coefficient."""
    num, den = value
    if num.is_zero():
        raise DivisionByZero("The zero rational function has no degree")
    top_num, top_den = max(num.terms), max(den.terms)
    return top_num - top_den, num.terms[top_num] / den.terms[top_den]
