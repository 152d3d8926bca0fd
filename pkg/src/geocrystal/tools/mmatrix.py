"""M-matrices of B(A1) and B(D1), the J-matrices realising Σ0–Σ4, and the R identity.

B(A1) is handled through N = M^{-1} so that every identity stays polynomial in z:
    M_L(l) M_K(m) = M_K(l') M_L(m')   <=>   N_K(m) N_L(l) = N_L(m') N_K(l').
"""

from __future__ import annotations

import logging
import random
from fractions import Fraction

from geocrystal.cartan import AffineTypeId
from geocrystal.catalogue import build_model, d1_host, host_rank
from geocrystal.config import SuiteConfig
from geocrystal.errors import DivisionByZero, RankOutOfRange, UnsupportedModel
from geocrystal.laurent import Laurent, PolyMatrix
from geocrystal.models import CheckRecord, GCPoint
from geocrystal.tools.folding import FOLDED_INVOLUTION, Involution, involutions_for_rank
from geocrystal.tools.sampling import random_values, run_trials

logger = logging.getLogger(__name__)

Z = Laurent.monomial(1)
Z_INV = Laurent.monomial(-1)


# ============================================================
# N (A1) and M (D1)
# ============================================================


def _inv(q: Fraction) -> Fraction:
    if q == 0:
        raise DivisionByZero("M-matrix entry needs a nonzero coordinate")
    return 1 / q


def n_matrix_a1(values: dict[str, Fraction]) -> PolyMatrix:
    """N with diagonal 1/l_i, subdiagonal -1 and corner -z; M = N^{-1}."""
    size = len(values)
    out = PolyMatrix.zeros(size)
    for i in range(size):
        out[i, i] = _inv(values[f"l{i + 1}"])
        if i > 0:
            out[i, i - 1] = -1
    out[0, size - 1] = Laurent.monomial(1, -1)
    return out


def _a_matrix_d1(values: dict[str, Fraction]) -> list[list[Fraction]]:
    n = (len(values) + 1) // 2
    size = 2 * n
    l = {i: values[f"l{i}"] for i in range(1, n + 1)}
    lb = {i: values[f"lb{i}"] for i in range(1, n)}
    A = [[Fraction(0)] * (size + 1) for _ in range(size + 1)]  # 1-based

    def span(v: dict[int, Fraction], a: int, b: int) -> Fraction:
        out = Fraction(1)
        for k in range(a, b + 1):
            out *= v[k]
        return out

    for i in range(1, n):
        A[i][i] = l[i] * _inv(lb[i])
        A[2 * n + 1 - i][2 * n + 1 - i] = lb[i] * _inv(l[i])
    A[n][n] = l[n]
    A[n + 1][n + 1] = _inv(l[n])
    for i in range(2, n):
        for j in range(1, i):
            A[i][j] = span(l, j, i - 1) * (1 + l[i] / lb[i])
            A[2 * n + 1 - j][2 * n + 1 - i] = span(lb, j, i - 1) * (1 + lb[i] / l[i])
    for j in range(1, n):
        A[n][j] = span(l, j, n)
        A[n + 1][j] = span(l, j, n - 1)
        A[2 * n + 1 - j][n] = span(lb, j, n - 1) * l[n]
        A[2 * n + 1 - j][n + 1] = span(lb, j, n - 1)
        for i in range(1, n):
            A[2 * n + 1 - i][j] = span(l, j, n) * span(lb, i, n - 1)
    return A


def m_matrix_d1(values: dict[str, Fraction], spectral: Fraction) -> PolyMatrix:
    """M_L(l, z) = A + z B + z^2 L E_{1,2n} with B_ij = A_i1 A_2n,j - L A_ij - δ_i1 δ_j,2n."""
    A = _a_matrix_d1(values)
    size = len(A) - 1
    out = PolyMatrix.zeros(size)
    for i in range(1, size + 1):
        for j in range(1, size + 1):
            b = A[i][1] * A[size][j] - spectral * A[i][j]
            if i == 1 and j == size:
                b -= 1
            out[i - 1, j - 1] = Laurent({0: A[i][j], 1: b})
    out[0, size - 1] = out[0, size - 1] + Laurent.monomial(2, spectral)
    return out


# ============================================================
# J matrices
# ============================================================


def _j0(size: int) -> PolyMatrix:
    """Self-inverse."""
    out = PolyMatrix.identity(size)
    out[0, 0] = 0
    out[size - 1, size - 1] = 0
    out[0, size - 1] = Z
    out[size - 1, 0] = Z_INV
    return out


def _j1(size: int) -> PolyMatrix:
    """Self-inverse."""
    out = PolyMatrix.identity(size)
    mid = size // 2
    out[mid - 1, mid - 1] = 0
    out[mid, mid] = 0
    out[mid - 1, mid] = 1
    out[mid, mid - 1] = 1
    return out


def _j2(size: int, inverse: bool = False) -> PolyMatrix:
    half = size // 2
    out = PolyMatrix.zeros(size)
    upper, lower = (Laurent.const(1), Z_INV) if inverse else (Z, Laurent.const(1))
    for k in range(half):
        out[k, half + k] = upper
        out[half + k, k] = lower
    return out


def j_matrix(which: str, host: int, inverse: bool = False) -> PolyMatrix:
    """J realising Σ on M-matrices of B(D1_host): M(Σ l) = J M(l) J^{-1}.

    J3 = J0 J1 and J4 = J2 J0 J1 follow the composition order of Σ3 and Σ4.
    """
    Involution(which, host)  # rank checks
    size = 2 * host
    if which == "sigma0":
        return _j0(size)
    if which == "sigma1":
        return _j1(size)
    if which == "sigma2":
        return _j2(size, inverse)
    j0, j1 = _j0(size), _j1(size)
    if which == "sigma3":
        return j1 @ j0 if inverse else j0 @ j1
    if inverse:
        return j1 @ j0 @ _j2(size, inverse=True)
    return _j2(size) @ j0 @ j1


# ============================================================
# Identities
# ============================================================


def check_conjugation(inv: Involution, values: dict[str, Fraction], spectral: Fraction) -> bool:
    """J^{-1} M(Σ l) J == M(l), exactly."""
    moved = m_matrix_d1(inv.apply(values), spectral)
    j, j_inv = j_matrix(inv.which, inv.host), j_matrix(inv.which, inv.host, inverse=True)
    return j_inv @ moved @ j == m_matrix_d1(values, spectral)


def check_r_matrix_identity(
    t: AffineTypeId,
    l: dict[str, Fraction],
    m: dict[str, Fraction],
    l_new: dict[str, Fraction],
    m_new: dict[str, Fraction],
    L: Fraction,
    K: Fraction,
) -> bool:
    """M_L(l) M_K(m) == M_K(l') M_L(m') for l in B_L, m in B_K."""
    if t.family == "a1":
        return n_matrix_a1(m) @ n_matrix_a1(l) == n_matrix_a1(m_new) @ n_matrix_a1(l_new)
    if t.family == "d1":
        return m_matrix_d1(l, L) @ m_matrix_d1(m, K) == m_matrix_d1(l_new, K) @ m_matrix_d1(
            m_new, L
        )
    raise UnsupportedModel(f"No M-matrix is catalogued for {t.family}")


def point_matrix(p: GCPoint) -> PolyMatrix:
    """N for B(A1) points, M for B(D1) points."""
    if p.model != "B":
        raise UnsupportedModel("M-matrices are defined on B-model points")
    if p.type == "a1":
        return n_matrix_a1(p.values())
    if p.type == "d1":
        return m_matrix_d1(p.values(), p.spectral)
    raise UnsupportedModel(f"No M-matrix is catalogued for {p.type}")


# ============================================================
# Suite
# ============================================================


def conjugation_records(N: int, invs: list[Involution], cfg: SuiteConfig, rng: random.Random) -> list[CheckRecord]:
    host = build_model(d1_host(N), "B")
    records = []
    for inv in invs:

        def trial(rng: random.Random, inv: Involution = inv) -> str | None:
            spectral = rng.choice(cfg.spectral_values)
            values = random_values(host, rng, spectral)
            return None if check_conjugation(inv, values, spectral) else "J-conjugation fails"

        record = CheckRecord(suite="mmatrix", check=f"{inv.which}-conjugation")
        records.append(run_trials(record, trial, cfg.samples, rng, cfg.max_resamples))
    return records


def mmatrix_suite(cfg: SuiteConfig, rng: random.Random) -> list[CheckRecord]:
    """J-conjugation identities and, for A1 and D1, the M-matrix form of R."""
    from geocrystal.tools.tropical_r import r_matrix_records

    t = cfg.affine_type
    if t.family == "d1":
        if t.rank < 4:
            raise RankOutOfRange("d1 needs rank >= 4")
        records = conjugation_records(t.rank, involutions_for_rank(t.rank), cfg, rng)
    elif t.family in FOLDED_INVOLUTION:
        inv = Involution(FOLDED_INVOLUTION[t.family], host_rank(t))
        records = conjugation_records(inv.host, [inv], cfg, rng)
        logger.debug("%s conjugation on host B(D1_%d)", inv.which, inv.host)
    elif t.family == "a1":
        records = []
    else:
        raise UnsupportedModel(f"No M-matrix data for {t.family}")
    if t.family in ("a1", "d1"):
        records.extend(r_matrix_records(cfg, rng))
    return records
