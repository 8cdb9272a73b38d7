"""Both sides of the Tokuyama-type identities, compared exactly.

All tau-exponents are coweights of G written in simple-coroot coordinates.
The character chi_lambda is that of the dual group, shifted by -w_0(lambda) so
that its lowest weight sits at 0; this matches the sum side, whose m = 0 term
is tau^0 with coefficient 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactpoly import Q_INV, GroupAlgebraElement, LaurentPoly, QScalar
from .g2eval import _check_lambda, augmented, g2_word_data, g_factor, mv_integral
from .lusztig import bounding_data, enumerate_crystal, weight_of, word_data
from .resonance import relevant_families
from .rootsys import CartanDatum, build_cartan, gelfand_tsetlin_word


class CharacterError(ArithmeticError):
    pass


def _check_dominant(datum: CartanDatum, lam: Sequence[int]) -> tuple[int, ...]:
    lam = tuple(int(x) for x in lam)
    if len(lam) != datum.rank or any(x < 0 for x in lam):
        raise ValueError(f"{lam} is not a dominant weight of rank {datum.rank}")
    return lam


def _alternant(datum: CartanDatum, mu: Sequence[int], variables) -> LaurentPoly:
    terms: dict[tuple[int, ...], int] = {}
    for w in datum.weyl_group():
        e = w.act_on_weight(mu)
        terms[e] = terms.get(e, 0) + w.sign()
    return LaurentPoly(variables, terms)


def weyl_character(datum: CartanDatum, lam: Sequence[int]) -> GroupAlgebraElement:
    """Character of the irreducible module of highest weight lam, in fundamental-weight coordinates."""
    lam = _check_dominant(datum, lam)
    variables = tuple(f"x{i}" for i in range(1, datum.rank + 1))
    rho = datum.rho()
    num = _alternant(datum, tuple(a + b for a, b in zip(lam, rho)), variables)
    den = _alternant(datum, rho, variables)
    try:
        quot = num.exact_divide(den)
    except ArithmeticError as exc:
        raise CharacterError(f"Weyl numerator not divisible for {lam}") from exc
    return GroupAlgebraElement({e: c for e, c in quot})


def _to_coroot(datum: CartanDatum, mu: Sequence[int]) -> tuple[int, ...]:
    out = datum.coweight_to_coroot_coords(mu)
    if any(Fraction(x).denominator != 1 for x in out):
        raise CharacterError(f"{mu} is not in the coroot lattice")
    return tuple(int(x) for x in out)


def shifted_character(datum: CartanDatum, lam: Sequence[int]) -> GroupAlgebraElement:
    """tau^{-w_0 lam} chi_lam, with chi_lam the character of the dual group, in coroot coordinates."""
    dual = datum.dual()
    lam = _check_dominant(datum, lam)
    low = dual.longest_element.act_on_weight(lam)
    chi = weyl_character(dual, lam)
    out = GroupAlgebraElement()
    for mu, c in chi.items():
        out.add_term(_to_coroot(datum, tuple(a - b for a, b in zip(mu, low))), c)
    return out


def product_side(datum: CartanDatum, lam: Sequence[int]) -> GroupAlgebraElement:
    """prod over positive coroots (1 - q^-1 tau^{alpha^vee}) times the shifted character."""
    out = shifted_character(datum, lam)
    zero = (0,) * datum.rank
    for cv in datum.positive_coroots:
        factor = GroupAlgebraElement({zero: QScalar.one(), tuple(cv): -Q_INV})
        out = out * factor
    return out


def g2_datum() -> CartanDatum:
    return build_cartan("G", 2)


def g2_truncated_sum(lam: Sequence[int]) -> GroupAlgebraElement:
    """Sum of I_lambda over B(lambda+rho) alone, without family corrections."""
    lam = _check_lambda(lam)
    out = GroupAlgebraElement()
    for n in enumerate_crystal(g2_word_data(), (lam[0] + 1, lam[1] + 1)):
        c = mv_integral(lam, n)
        if c.coefficient:
            out.add_term(c.weight, c.coefficient)
    return out


def family_correction(lam: Sequence[int], totally_resonant_only: bool = False) -> GroupAlgebraElement:
    """Sum of G_res over members outside B(lambda+rho) of lambda-relevant families."""
    out = GroupAlgebraElement()
    for fam in relevant_families(lam):
        if totally_resonant_only and not fam.totally_resonant:
            continue
        for n in fam.interior:
            c = mv_integral(lam, n)
            if c.coefficient:
                out.add_term(c.weight, c.coefficient)
    return out


def g2_sum_v1(lam: Sequence[int]) -> GroupAlgebraElement:
    return g2_truncated_sum(lam) + family_correction(lam)


def g2_sum_v2(lam: Sequence[int]) -> GroupAlgebraElement:
    lam = _check_lambda(lam)
    out = GroupAlgebraElement()
    for n in enumerate_crystal(g2_word_data(), (lam[0] + 1, lam[1] + 1)):
        c = augmented(lam, n)
        if c.coefficient:
            out.add_term(c.weight, c.coefficient)
    return out + family_correction(lam, totally_resonant_only=True)


def g_factor_product(s: Sequence[int], m: Sequence[int]) -> QScalar:
    out = QScalar.one()
    for sk, mk in zip(s, m):
        out = out * g_factor(sk, mk)
        if not out:
            break
    return out


def typeA_sum(r: int, lam: Sequence[int]) -> GroupAlgebraElement:
    """Standard-contribution sum over B(lam+rho) along the Gelfand-Tsetlin word of A_r."""
    if r < 1:
        raise ValueError("rank must be positive")
    datum = build_cartan("A", r)
    lam = _check_dominant(datum, lam)
    wd = word_data(datum, gelfand_tsetlin_word(r))
    out = GroupAlgebraElement()
    for m in enumerate_crystal(wd, tuple(x + 1 for x in lam)):
        c = g_factor_product(bounding_data(wd, lam, m), m)
        if c:
            out.add_term(weight_of(wd, m), c)
    return out


@dataclass(frozen=True)
class IdentityReport:
    lhs: GroupAlgebraElement
    rhs: GroupAlgebraElement
    diff: GroupAlgebraElement

    @property
    def equal(self) -> bool:
        return not self.diff

    def mismatches(self) -> list[tuple[tuple[int, ...], QScalar, QScalar]]:
        return [(mu, self.lhs.coefficient(mu), self.rhs.coefficient(mu)) for mu, _ in self.diff.items()]

    def to_json(self) -> dict:
        return {
            "equal": self.equal,
            "lhs_terms": len(self.lhs),
            "rhs_terms": len(self.rhs),
            "diff": self.diff.to_json(),
            "mismatches": [{"weight": list(mu), "lhs": a.to_str(), "rhs": b.to_str()}
                           for mu, a, b in self.mismatches()],
        }


def verify(lhs: GroupAlgebraElement, rhs: GroupAlgebraElement) -> IdentityReport:
    return IdentityReport(lhs, rhs, lhs - rhs)
