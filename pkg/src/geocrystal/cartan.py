"""Affine root data: Cartan matrices, Dynkin automorphisms and Kac labels.

Convention: the entry a[i][j] is the exponent in gamma_j(e_i^c x) = c**a[i][j] * gamma_j(x).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from geocrystal.constants import HOST_MIN_RANK, MIN_RANK, TYPE_IDS
from geocrystal.errors import RankOutOfRange


@dataclass(frozen=True)
class AffineTypeId:
    """An affine family together with its rank n (index set {0, ..., n}).

    ``host`` marks a D1 folding host, which may sit one rank below the D1 bound.
    """

    family: str
    rank: int
    host: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.family not in TYPE_IDS:
            raise ValueError(f"Unknown affine type: {self.family!r}")
        minimum = HOST_MIN_RANK if self.host and self.family == "d1" else MIN_RANK[self.family]
        if self.rank < minimum:
            raise RankOutOfRange(f"{self.family} needs rank >= {minimum}, got {self.rank}")

    @property
    def indices(self) -> range:
        return range(self.rank + 1)

    def __str__(self) -> str:
        return f"{self.family}_{self.rank}"


@dataclass(frozen=True)
class CartanData:
    type: AffineTypeId
    matrix: tuple[tuple[int, ...], ...]
    sigma: tuple[int, ...] | None
    labels: tuple[int, ...]  # coefficients of delta
    dual_labels: tuple[int, ...]  # coefficients of c

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.matrix[i][j]

    @property
    def indices(self) -> range:
        return range(len(self.matrix))


def _chain(size: int, edges: list[tuple[int, int]]) -> list[list[int]]:
    a = [[2 if i == j else 0 for j in range(size)] for i in range(size)]
    for i, j in edges:
        a[i][j] = a[j][i] = -1
    return a


def _matrix(t: AffineTypeId) -> list[list[int]]:
    n = t.rank
    size = n + 1
    path = [(i, i + 1) for i in range(2, n)]
    if t.family == "a1":
        return _chain(size, [(i, (i + 1) % size) for i in range(size)])
    if t.family == "b1":
        a = _chain(size, [(0, 2), (1, 2), *path])
        if n == 2:
            a[2][0] = a[2][1] = -2
        else:
            a[n][n - 1] = -2
        return a
    if t.family == "d1":
        return _chain(size, [(0, 2), (1, 2), *[(i, i + 1) for i in range(2, n - 2)], (n - 2, n - 1), (n - 2, n)])
    if t.family == "a2-odd":
        a = _chain(size, [(0, 2), (1, 2), *path])
        a[n - 1][n] = -2
        return a
    line = _chain(size, [(i, i + 1) for i in range(n)])
    if t.family == "d2":
        line[0][1] = -2
        line[n][n - 1] = -2
    elif t.family == "a2-even":
        line[0][1] = -2
        line[n - 1][n] = -2
    else:  # a2-even-dagger
        line[1][0] = -2
        line[n][n - 1] = -2
    return line


def _labels(t: AffineTypeId) -> tuple[list[int], list[int]]:
    """(a, a_dual): coefficients of delta and of c."""
    n = t.rank
    if t.family == "a1":
        return [1] * (n + 1), [1] * (n + 1)
    if t.family == "b1":
        return [1, 1] + [2] * (n - 1), [1, 1] + [2] * (n - 2) + [1]
    if t.family == "d1":
        ones = [1, 1] + [2] * (n - 3) + [1, 1]
        return ones, list(ones)
    if t.family == "a2-odd":
        return [1, 1] + [2] * (n - 2) + [1], [1, 1] + [2] * (n - 1)
    if t.family == "d2":
        return [1] * (n + 1), [1] + [2] * (n - 1) + [1]
    if t.family == "a2-even":
        return [2] * n + [1], [1] + [2] * n
    return [1] + [2] * n, [2] * n + [1]  # a2-even-dagger


def _sigma(t: AffineTypeId) -> tuple[int, ...] | None:
    n = t.rank
    if t.family == "a1":
        return tuple((k + 1) % (n + 1) for k in range(n + 1))
    if t.family in ("b1", "d1", "a2-odd"):
        return (1, 0, *range(2, n + 1))
    if t.family == "d2":
        return tuple(n - i for i in range(n + 1))
    return None


@lru_cache(maxsize=None)
def cartan_matrix(t: AffineTypeId) -> CartanData:
    labels, dual = _labels(t)
    return CartanData(
        type=t,
        matrix=tuple(tuple(row) for row in _matrix(t)),
        sigma=_sigma(t),
        labels=tuple(labels),
        dual_labels=tuple(dual),
    )


def dynkin_automorphism(t: AffineTypeId) -> tuple[int, ...] | None:
    return cartan_matrix(t).sigma


def kac_labels(t: AffineTypeId) -> tuple[tuple[int, ...], tuple[int, ...]]:
    data = cartan_matrix(t)
    return data.labels, data.dual_labels


def null_vector_defects(data: CartanData) -> list[str]:
    """Rows/columns where delta or c fail to be null vectors (empty when consistent)."""
    defects: list[str] = []
    size = len(data.matrix)
    for j in range(size):
        if sum(data.dual_labels[i] * data.matrix[i][j] for i in range(size)) != 0:
            defects.append(f"c column {j}")
    for i in range(size):
        if sum(data.matrix[i][j] * data.labels[j] for j in range(size)) != 0:
            defects.append(f"delta row {i}")
    return defects
