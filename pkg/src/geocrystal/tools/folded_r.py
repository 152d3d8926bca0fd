"""Closed forms of the tropical R on B(B1), B(D2), B(A2odd) and B(A2even).

These evaluate V_i, V_i^*, V_0^♯ and W_i directly in the folded coordinates at exact
inputs, without going through the host B(D1_N). D2 and A2even are read in the chain
indexing of B1 and A2odd one rank up: position 1 carries m0 on both sides of the chain and
position k+1 carries m_k, mb_k.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from geocrystal.cartan import AffineTypeId
from geocrystal.constants import FOLDED_TYPES
from geocrystal.errors import DivisionByZero, UnsupportedModel

Values = dict[str, Fraction]
Chain = dict[int, Fraction]

TWISTED = ("a2-odd", "a2-even")


@dataclass(frozen=True)
class _Pair:
    """Chain coordinates of l at L and m at M."""

    l: Chain
    lb: Chain
    m: Chain
    mb: Chain
    L: Fraction
    M: Fraction

    def star(self) -> _Pair:
        # l_i <-> mb_i, lb_i <-> m_i, L <-> M
        return _Pair(dict(self.mb), dict(self.m), dict(self.lb), dict(self.l), self.M, self.L)

    def sharp(self) -> _Pair:
        l, lb, m, mb = dict(self.l), dict(self.lb), dict(self.m), dict(self.mb)
        l[1], lb[1], m[1], mb[1] = lb[1], l[1], mb[1], m[1]
        return _Pair(l, lb, m, mb, self.L, self.M)


def _ratio(num: Chain, den: Chain, a: int, b: int) -> Fraction:
    """Π_{k=a}^{b} num_k / den_k, empty products being 1."""
    out = Fraction(1)
    for k in range(a, b + 1):
        out *= num[k] / den[k]
    return out


# ============================================================
# V_i
# ============================================================


def _v_untwisted(i: int, p: _Pair, n: int) -> Fraction:
    """V_i of B1_n; spectral parameters enter linearly."""
    l, lb, m, mb, L, M = p.l, p.lb, p.m, p.mb, p.L, p.M
    lead = _ratio(mb, lb, 1, i)
    total = Fraction(0)
    for j in range(1, n):
        total += L * _ratio(mb, lb, j + 1, i) if j <= i else M * _ratio(lb, mb, i + 1, j)
        total += L * lead * _ratio(m, l, 1, j)
    for j in range(1, n + 1):
        base = L * _ratio(mb, lb, j + 1, i) if j <= i else M * _ratio(lb, mb, i + 1, j)
        total += base * mb[j] / l[j]
        total += L * lead * _ratio(m, l, 1, j) * l[j] / mb[j]
    total += M * _ratio(lb, mb, i + 1, n)
    total += L * (L / M if i == n else 1) * lead * _ratio(m, l, 1, n)
    return total


def _mu(l: Chain, lb: Chain, spectral: Fraction, n: int) -> Fraction:
    """μ = spectral / (l_1 ... l_{n-1} lb_n ... lb_1)."""
    inner = Fraction(1)
    for k in range(1, n):
        inner *= l[k] * lb[k]
    return spectral / (inner * lb[n])


def _v_twisted(i: int, p: _Pair, n: int) -> Fraction:
    """V_i of A2odd_n; the host lives at L^2, M^2."""
    l, lb, m, mb = p.l, p.lb, p.m, p.mb
    L2, M2, LM = p.L**2, p.M**2, p.L * p.M
    mu_l, mu_m = _mu(l, lb, p.L, n), _mu(m, mb, p.M, n)
    delta = (1 + 1 / mu_l) / (1 + 1 / mu_m)
    at_top = i == n
    lead = _ratio(mb, lb, 1, i) * (delta if at_top else 1)

    total = Fraction(0)
    for j in range(1, 2 * n - 1):
        if j <= n:
            if j <= i:
                total += L2 * _ratio(mb, lb, j + 1, i) * delta ** (int(at_top) - int(j == n))
            else:
                total += M2 * _ratio(lb, mb, i + 1, j) * delta ** -int(j == n)
            total += L2 * lead * _ratio(m, l, 1, j) * ((1 + mu_l) / (1 + mu_m) if j == n else 1)
        else:
            q = 2 * n - j
            total += LM * lead * _ratio(m, l, 1, q - 1) * lb[q] * (m[q] + mb[q]) / (
                (l[q] + lb[q]) * mb[q]
            )
            total += LM * lead * _ratio(lb, mb, 1, q - 1) * m[q] * (l[q] + lb[q]) / (
                l[q] * (m[q] + mb[q])
            )
    for j in range(1, 2 * n + 1):
        if j <= n:
            weight = mb[j] / l[j] * (mu_l if j == n else 1)
            if j <= i:
                total += L2 * _ratio(mb, lb, j + 1, i) * weight * (delta if at_top else 1)
            else:
                total += M2 * _ratio(lb, mb, i + 1, j) * weight
            total += L2 * lead * _ratio(m, l, 1, j) * l[j] / mb[j] * (1 / mu_m if j == n else 1)
        elif j == n + 1:
            total += LM * lead * _ratio(m, l, 1, n - 1) * (1 + mu_m) / (1 + 1 / mu_l)
            total += L2 * lead * _ratio(m, l, 1, n) * (1 + mu_l) / ((1 + mu_m) * mu_m)
        elif j < 2 * n:
            q = 2 * n - j + 1
            total += LM * lead * _ratio(m, l, 1, q - 1) * (m[q] + mb[q]) * l[q] / (
                (l[q] + lb[q]) * mb[q]
            )
            total += LM * lead * _ratio(lb, mb, 1, q - 1) * (l[q] + lb[q]) * mb[q] / (
                (m[q] + mb[q]) * l[q]
            )
        else:
            total += LM * lead * lb[1] / l[1]
            total += LM * lead * m[1] / mb[1]
    return total


# ============================================================
# R
# ============================================================


@dataclass
class _Family:
    V: dict[int, Fraction]
    V_star: dict[int, Fraction]
    V0_sharp: Fraction
    W: dict[int, Fraction]


def _family(p: _Pair, n: int, twisted: bool) -> _Family:
    v = _v_twisted if twisted else _v_untwisted
    star = p.star()
    V = {i: v(i, p, n) for i in range(n + 1)}
    V_star = {i: v(i, star, n) for i in range(n + 1)}
    power = 2 if twisted else 1
    L, M = p.L**power, p.M**power
    W = {i: V[i] * V_star[i] + (M - L) * V_star[i] + (L - M) * V[i] for i in range(1, n + 1)}
    if not twisted:
        W[n] = V[n] * V_star[n]
    family = _Family(V, V_star, v(0, p.sharp(), n), W)
    if 0 in (*V.values(), *V_star.values(), *W.values(), family.V0_sharp):
        raise DivisionByZero("V or W vanished")
    return family


def _chain_r(p: _Pair, n: int, twisted: bool) -> tuple[Chain, Chain, Chain, Chain]:
    """(l', lb') at M and (m', mb') at L in chain indexing."""
    f = _family(p, n, twisted)
    V, Vs, W = f.V, f.V_star, f.W
    l, lb, m, mb = p.l, p.lb, p.m, p.mb
    lp: Chain = {1: m[1] * f.V0_sharp / V[1]}
    lbp: Chain = {1: mb[1] * V[0] / V[1]}
    mp: Chain = {1: l[1] * V[0] / Vs[1]}
    mbp: Chain = {1: lb[1] * f.V0_sharp / Vs[1]}
    last = n - 1 if twisted else n
    for i in range(2, last + 1):
        lp[i] = m[i] * V[i - 1] * W[i] / (V[i] * W[i - 1])
        lbp[i] = mb[i] * V[i - 1] / V[i]
        mp[i] = l[i] * Vs[i - 1] / Vs[i]
        mbp[i] = lb[i] * Vs[i - 1] * W[i] / (Vs[i] * W[i - 1])
    if twisted:
        mu_l, mu_m = _mu(l, lb, p.L, n), _mu(m, mb, p.M, n)
        up, low = W[n], W[n - 1]
        lp[n] = m[n] * V[n - 1] * up / ((1 + mu_m) * V[n] * low) * (
            1 + m[n] * up / (mb[n] * low * mu_m)
        )
        lbp[n] = mb[n] * V[n - 1] / ((1 + 1 / mu_m) * V[n]) * (1 + mb[n] * low * mu_m / (m[n] * up))
        mp[n] = l[n] * Vs[n - 1] / ((1 + mu_l) * Vs[n]) * (1 + l[n] * low / (lb[n] * up * mu_l))
        mbp[n] = lb[n] * Vs[n - 1] * up / ((1 + 1 / mu_l) * Vs[n] * low) * (
            1 + lb[n] * up * mu_l / (l[n] * low)
        )
    return lp, lbp, mp, mbp


def _to_chain(values: Values, n: int, has_m0: bool) -> tuple[Chain, Chain]:
    shift = 1 if has_m0 else 0
    l: Chain = {}
    lb: Chain = {}
    if has_m0:
        l[1] = lb[1] = values["m0"]
    for k in range(1, n + 1):
        l[k + shift], lb[k + shift] = values[f"m{k}"], values[f"mb{k}"]
    return l, lb


def _from_chain(l: Chain, lb: Chain, n: int, has_m0: bool) -> Values:
    shift = 1 if has_m0 else 0
    out: Values = {"m0": l[1]} if has_m0 else {}
    for k in range(1, n + 1):
        out[f"m{k}"], out[f"mb{k}"] = l[k + shift], lb[k + shift]
    return out


def closed_form_r(
    t: AffineTypeId, x: Values, y: Values, L: Fraction, M: Fraction
) -> tuple[Values, Values]:
    """R(x, y) = (x', y') on B_L x B_M of a folded type, x' at M and y' at L."""
    if t.family not in FOLDED_TYPES:
        raise UnsupportedModel(f"{t.family} is not a folded type")
    if any(v == 0 for v in (*x.values(), *y.values())):
        raise DivisionByZero("B-coordinates must be nonzero")
    has_m0 = t.family in ("d2", "a2-even")
    twisted = t.family in TWISTED
    chain_rank = t.rank + 1 if has_m0 else t.rank
    l, lb = _to_chain(x, t.rank, has_m0)
    m, mb = _to_chain(y, t.rank, has_m0)
    lp, lbp, mp, mbp = _chain_r(_Pair(l, lb, m, mb, L, M), chain_rank, twisted)
    return _from_chain(lp, lbp, t.rank, has_m0), _from_chain(mp, mbp, t.rank, has_m0)
