"""Closed-form MV integrals for G_2 along the word (2,1,2,1,2,1).

Coefficients are QScalars (Laurent polynomials in q); the weight of a datum is
its coweight sum_k m_k gamma_k^vee in simple-coroot coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .exactpoly import Q_INV, QScalar
from .lusztig import WordData, in_crystal, s_forms, weight_of, word_data
from .rootsys import build_cartan

G2_WORD = (2, 1, 2, 1, 2, 1)
ONE = QScalar.one()
ZERO = QScalar.zero()


class G2InputError(ValueError):
    pass


@lru_cache(maxsize=None)
def g2_word_data() -> WordData:
    return word_data(build_cartan("G", 2), G2_WORD)


@lru_cache(maxsize=None)
def _forms():
    return tuple(s_forms(g2_word_data()))


def s_values(lam: Sequence[int], m: Sequence[int]) -> tuple[int, ...]:
    return tuple(lam[a - 1] + f(m) for a, f in _forms())


def g_factor(s: int, m: int) -> QScalar:
    if m > 0:
        if s >= 0:
            return ONE - Q_INV
        if s == -1:
            return -Q_INV
        return ZERO
    return ONE if s >= 0 else ZERO


def i_small(a: int, b: int) -> QScalar:
    """I(a, b) = q^{a+b} times the integral of psi over varpi^a O^x."""
    if b == 0:
        return ONE if a >= 0 else ZERO
    if a >= 0:
        return QScalar.q_power(b) * (ONE - Q_INV)
    if a == -1:
        return -QScalar.q_power(b - 1)
    return ZERO


def _prod(factors) -> QScalar:
    out = ONE
    for f in factors:
        out = out * f
        if not out:
            return ZERO
    return out


@dataclass(frozen=True)
class G2Contribution:
    m: tuple[int, ...]
    s: tuple[int, ...]
    coefficient: QScalar
    weight: tuple[int, ...]
    in_crystal: bool
    resonant: bool
    totally_resonant: bool
    decoration: int | None

    def to_json(self) -> dict:
        return {"m": list(self.m), "s": list(self.s), "coefficient": self.coefficient.to_str(),
                "weight": list(self.weight), "in_crystal": self.in_crystal,
                "resonant": self.resonant, "totally_resonant": self.totally_resonant,
                "decoration": self.decoration}


def _check_lambda(lam: Sequence[int]) -> tuple[int, int]:
    lam = tuple(int(x) for x in lam)
    if len(lam) != 2 or any(x < 0 for x in lam):
        raise G2InputError(f"lambda must be a dominant G2 coweight, got {lam}")
    return lam


def decoration_of(s: Sequence[int], m: Sequence[int]) -> int | None:
    """d with s_3 = s_4 = -2d for resonant data on the even non-positive wall."""
    if m[2] == m[4] and s[2] == s[3] and s[2] <= 0 and s[2] % 2 == 0:
        return -s[2] // 2
    return None


def _classify(lam, m):
    lam = _check_lambda(lam)
    m = tuple(int(x) for x in m)
    if len(m) != 6 or any(x < 0 for x in m):
        raise G2InputError("m must be six non-negative integers")
    s = s_values(lam, m)
    inside = in_crystal(g2_word_data(), (lam[0] + 1, lam[1] + 1), m)
    resonant = m[2] == m[4]
    total = resonant and m[1] == m[5]
    return lam, m, s, inside, resonant, total


def _contribution(m, s, coef, inside, resonant, total) -> G2Contribution:
    return G2Contribution(m, s, coef, weight_of(g2_word_data(), m), inside, resonant, total,
                          decoration_of(s, m) if resonant else None)


def g1_value(s: Sequence[int], m: Sequence[int]) -> QScalar:
    factors = [g_factor(s[k], m[k]) for k in range(6) if k != 3]
    factors.append(g_factor(2 * min(s[2], s[3]) - s[3], m[3]))
    return _prod(factors)


def g_res_value(s: Sequence[int], m: Sequence[int], d: int) -> QScalar:
    rest = _prod(g_factor(s[k], m[k]) for k in (0, 1, 4, 5))
    return QScalar.q_power(-d) * (ONE - Q_INV) * rest


def standard_contribution(s: Sequence[int], m: Sequence[int]) -> QScalar:
    return _prod(g_factor(s[k], m[k]) for k in range(6))


def mv_integral(lam: Sequence[int], m: Sequence[int]) -> G2Contribution:
    lam, m, s, inside, resonant, total = _classify(lam, m)
    if inside:
        coef = g1_value(s, m)
    elif resonant and m[3] > 0 and s[2] == s[3] and s[2] < 0 and s[2] % 2 == 0:
        coef = g_res_value(s, m, -s[2] // 2)
    else:
        coef = ZERO
    return _contribution(m, s, coef, inside, resonant, total)


def _boundary_resonant(m, s) -> bool:
    return m[2] == m[4] and s[2] == 0 and s[3] == 0


def _rule_a(s, m) -> QScalar:
    """prod_{i=1,2,5} G * [prod_{j=3,4,6} G + q^-1 (1 - q^-1)]."""
    outer = _prod(g_factor(s[k], m[k]) for k in (0, 1, 4))
    inner = _prod(g_factor(s[k], m[k]) for k in (2, 3, 5)) + Q_INV * (ONE - Q_INV)
    return outer * inner


def _rule_b(s, m) -> QScalar:
    """prod_{i != 4,5} G * [prod_{j=4,5} G + q^-1]."""
    outer = _prod(g_factor(s[k], m[k]) for k in (0, 1, 2, 5))
    inner = _prod(g_factor(s[k], m[k]) for k in (3, 4)) + Q_INV
    return outer * inner


def _require_inside(inside: bool, m) -> None:
    if not inside:
        raise G2InputError(f"{m} is not in B(lambda+rho)")


def augmented_right(lam: Sequence[int], n: Sequence[int]) -> G2Contribution:
    lam, n, s, inside, resonant, total = _classify(lam, n)
    _require_inside(inside, n)
    base = mv_integral(lam, n)
    if resonant and n[1] != n[5]:
        if min(n[1], n[5]) > 0 and s[2] == 0 and s[3] == 0:
            return _contribution(n, s, _rule_a(s, n), inside, resonant, total)
        if n[5] > n[1] == 0 and n[2] > 0 and s[2] == 0 and s[3] == 0:
            return _contribution(n, s, _rule_b(s, n), inside, resonant, total)
    return base


def augmented_left(lam: Sequence[int], n: Sequence[int]) -> G2Contribution:
    lam, n, s, inside, resonant, total = _classify(lam, n)
    _require_inside(inside, n)
    base = mv_integral(lam, n)
    if resonant and n[1] != n[5]:
        if n[2] > 0 and s[2] == 0 and s[3] == 0:
            return _contribution(n, s, _rule_b(s, n), inside, resonant, total)
        if n[2] == 0 and n[1] > n[5] > 0 and s[1] == -1:
            return _contribution(n, s, _rule_a(s, n), inside, resonant, total)
    return base


def augmented(lam: Sequence[int], n: Sequence[int]) -> G2Contribution:
    lam, n, s, inside, resonant, total = _classify(lam, n)
    _require_inside(inside, n)
    if _boundary_resonant(n, s):
        if n[1] < n[5]:
            return augmented_left(lam, n)
        if n[1] > n[5]:
            return augmented_right(lam, n)
    return mv_integral(lam, n)
