"""Resonance arrays, their A1 x A1 operators, and resonance families for G_2.

An array records a resonant Lusztig datum m (m_3 = m_5) as

    top = (m_2, m_5, m_4, m_5, m_6)    mid = (s_2+1, s_6+1, s_5+1)

with decoration k defined by s_3 = s_4 = -2k.  The raising operators e1, e2
commute, so every array has a well defined head; a family is everything
reachable from its head by the lowering operators.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .exactpoly import QScalar
from .g2eval import G2InputError, _check_lambda, g2_word_data, mv_integral, s_values
from .lusztig import enumerate_crystal, in_crystal, weight_of


class ResonanceError(ValueError):
    pass


@dataclass(frozen=True)
class ResonanceArray:
    top: tuple[int, int, int, int, int]
    mid: tuple[int, int, int]
    decoration: int

    def __post_init__(self):
        if self.top[1] != self.top[3]:
            raise ResonanceError(f"top row must read (a,b,c,b,d), got {self.top}")
        if min(self.top + self.mid) < 0 or self.decoration < 0:
            raise ResonanceError(f"negative entry in array {self}")

    @classmethod
    def make(cls, a, b, c, d, x, y, z, k) -> "ResonanceArray":
        return cls((a, b, c, b, d), (x, y, z), k)

    @property
    def entries(self) -> tuple[int, ...]:
        a, b, c, _, d = self.top
        return (a, b, c, d) + self.mid + (self.decoration,)

    @property
    def weight(self) -> int:
        a, b, c, _, d = self.top
        return a + 6 * b + 2 * c + d

    def __str__(self) -> str:
        return f"[{self.top} {self.mid} k={self.decoration}]"


def e1(A: ResonanceArray) -> ResonanceArray | None:
    a, b, c, d, x, y, z, k = A.entries
    if min(a, d) == 0:
        return None
    return ResonanceArray.make(a - 1, b, c + 1, d - 1, x, y + 1, z, k + 1)


def e2(A: ResonanceArray) -> ResonanceArray | None:
    a, b, c, d, x, y, z, k = A.entries
    if b == 0:
        return None
    return ResonanceArray.make(a, b - 1, c + 3, d, x + 1, y, z + 1, k + 1)


def f1(A: ResonanceArray) -> ResonanceArray | None:
    a, b, c, d, x, y, z, k = A.entries
    if min(c, y, k) == 0:
        return None
    return ResonanceArray.make(a + 1, b, c - 1, d + 1, x, y - 1, z, k - 1)


def f2(A: ResonanceArray) -> ResonanceArray | None:
    a, b, c, d, x, y, z, k = A.entries
    if min(x, z, k) == 0 or c < 3:
        return None
    return ResonanceArray.make(a, b + 1, c - 3, d, x - 1, y, z - 1, k - 1)


RAISE = {1: e1, 2: e2}
LOWER = {1: f1, 2: f2}


def string_length(op, A: ResonanceArray) -> int:
    n = 0
    while (A := op(A)) is not None:
        n += 1
    return n


def epsilon(i: int, A: ResonanceArray) -> int:
    return string_length(RAISE[i], A)


def phi(i: int, A: ResonanceArray) -> int:
    return string_length(LOWER[i], A)


def head(A: ResonanceArray) -> ResonanceArray:
    for op in (e2, e1):
        while (B := op(A)) is not None:
            A = B
    return A


# Datum-level counterparts of the operators; they commute with array_of.
def datum_e1(m: Sequence[int]) -> tuple[int, ...]:
    return (m[0], m[1] - 1, m[2], m[3] + 1, m[4], m[5] - 1)


def datum_e2(m: Sequence[int]) -> tuple[int, ...]:
    return (m[0], m[1], m[2] - 1, m[3] + 3, m[4] - 1, m[5])


def datum_f1(m: Sequence[int]) -> tuple[int, ...]:
    return (m[0], m[1] + 1, m[2], m[3] - 1, m[4], m[5] + 1)


def datum_f2(m: Sequence[int]) -> tuple[int, ...]:
    return (m[0], m[1], m[2] + 1, m[3] - 3, m[4] + 1, m[5])


DATUM_RAISE = {1: datum_e1, 2: datum_e2}
DATUM_LOWER = {1: datum_f1, 2: datum_f2}


def is_resonant_datum(lam: Sequence[int], m: Sequence[int]) -> bool:
    if len(m) != 6 or min(m) < 0 or m[2] != m[4]:
        return False
    s = s_values(lam, m)
    if any(s[i] < -1 for i in (0, 1, 4, 5)):
        return False
    return s[2] == s[3] and s[2] <= 0 and s[2] % 2 == 0


def array_of(lam: Sequence[int], m: Sequence[int]) -> ResonanceArray:
    lam = _check_lambda(lam)
    m = tuple(int(x) for x in m)
    if not is_resonant_datum(lam, m):
        raise ResonanceError(f"{m} is not a resonant datum for lambda={lam}")
    s = s_values(lam, m)
    return ResonanceArray((m[1], m[4], m[3], m[4], m[5]), (s[1] + 1, s[5] + 1, s[4] + 1), -s[2] // 2)


def head_datum(lam: Sequence[int], m: Sequence[int]) -> tuple[int, ...]:
    A = array_of(lam, m)
    for i in (2, 1):
        while (B := RAISE[i](A)) is not None:
            A, m = B, DATUM_RAISE[i](m)
    return m


def is_head_form(m: Sequence[int]) -> bool:
    return m[2] == 0 and m[4] == 0 and min(m[1], m[5]) == 0


@dataclass
class ResonanceFamily:
    lam: tuple[int, int]
    head: tuple[int, ...]
    members: list[tuple[int, ...]]
    arrays: dict[tuple[int, ...], ResonanceArray]
    lowering: dict[tuple[int, ...], tuple[int, int]]
    lambda_relevant: bool
    totally_resonant: bool
    in_crystal: frozenset = field(default_factory=frozenset)

    @property
    def m1(self) -> int:
        return self.head[0]

    @property
    def head_array(self) -> ResonanceArray:
        return self.arrays[self.head]

    @property
    def weight(self) -> tuple[int, ...]:
        return weight_of(g2_word_data(), self.head)

    @property
    def interior(self) -> list[tuple[int, ...]]:
        """Members outside B(lambda+rho)."""
        return [n for n in self.members if n not in self.in_crystal]

    def highest_weight(self) -> tuple[int, int]:
        x, y, z = self.head_array.mid
        return (y, min(x, z))

    def weight_of_member(self, n) -> tuple[int, int]:
        t1, t2 = self.lowering[n]
        p1, p2 = self.highest_weight()
        return (p1 - 2 * t1, p2 - 2 * t2)

    def to_json(self) -> dict:
        return {
            "lambda": list(self.lam), "head": list(self.head), "m1": self.m1,
            "weight": list(self.weight), "lambda_relevant": self.lambda_relevant,
            "totally_resonant": self.totally_resonant,
            "members": [{"m": list(n), "decoration": self.arrays[n].decoration,
                         "in_crystal": n in self.in_crystal} for n in self.members],
        }


def family(lam: Sequence[int], head_m: Sequence[int]) -> ResonanceFamily:
    lam = _check_lambda(lam)
    head_m = tuple(int(x) for x in head_m)
    if not is_head_form(head_m):
        raise ResonanceError(f"{head_m} is not of head form")
    A0 = array_of(lam, head_m)
    if e1(A0) is not None or e2(A0) is not None:
        raise ResonanceError(f"{head_m} is not a head: a raising operator applies")
    arrays = {head_m: A0}
    lowering = {head_m: (0, 0)}
    frontier = [head_m]
    while frontier:
        nxt = []
        for n in frontier:
            for i in (1, 2):
                B = LOWER[i](arrays[n])
                if B is None:
                    continue
                m = DATUM_LOWER[i](n)
                if array_of(lam, m) != B:
                    raise ResonanceError(f"array operators disagree with datum operators at {n}")
                if m not in arrays:
                    arrays[m] = B
                    t1, t2 = lowering[n]
                    lowering[m] = (t1 + 1, t2) if i == 1 else (t1, t2 + 1)
                    nxt.append(m)
        frontier = nxt
    members = sorted(arrays, key=lambda n: (lowering[n], n))
    kappa = (lam[0] + 1, lam[1] + 1)
    wd = g2_word_data()
    inside = frozenset(n for n in members if in_crystal(wd, kappa, n))
    relevant = any(arrays[n].decoration == 0 for n in members)
    return ResonanceFamily(lam, head_m, members, arrays, lowering, relevant,
                           head_m[1] == 0 and head_m[5] == 0, inside)


@dataclass(frozen=True)
class CrystalReport:
    passed: bool
    truncated: bool
    highest_weight: tuple[int, int]
    violation: str | None = None
    witness: tuple[int, ...] | None = None

    def to_json(self) -> dict:
        return {"passed": self.passed, "truncated": self.truncated,
                "highest_weight": list(self.highest_weight), "violation": self.violation,
                "witness": None if self.witness is None else list(self.witness)}


def crystal_check(fam: ResonanceFamily) -> CrystalReport:
    """Check the highest weight A1 x A1 crystal axioms on a family."""
    hw = fam.highest_weight()

    def fail(msg, n, truncated=False):
        return CrystalReport(False, truncated, hw, msg, n)

    if fam.weight_of_member(fam.head) != hw:
        return fail("highest weight differs from the head weight", fam.head)
    index = {A: n for n, A in fam.arrays.items()}
    for n in fam.members:
        A = fam.arrays[n]
        wt = fam.weight_of_member(n)
        t = fam.lowering[n]
        for i in (1, 2):
            eps, ph = epsilon(i, A), phi(i, A)
            if eps != t[i - 1]:
                return fail(f"epsilon_{i} differs from the lowering depth", n)
            if ph != eps + wt[i - 1]:
                # a string cut short is what a truncated crystal looks like
                return fail(f"phi_{i} != epsilon_{i} + <h_{i}, wt>", n, truncated=ph < eps + wt[i - 1])
            B = LOWER[i](A)
            if B is not None:
                if RAISE[i](B) != A:
                    return fail(f"e_{i} f_{i} is not the identity", n)
                if B not in index:
                    return fail(f"f_{i} leaves the family", n)
            C = RAISE[i](A)
            if C is not None and LOWER[i](C) != A:
                return fail(f"f_{i} e_{i} is not the identity", n)
    p1, p2 = hw
    if len(fam.members) != (p1 + 1) * (p2 + 1):
        return fail("member count differs from the A1 x A1 module size", fam.head,
                    truncated=len(fam.members) < (p1 + 1) * (p2 + 1))
    return CrystalReport(True, False, hw)


def truncation_expected(fam: ResonanceFamily) -> bool:
    """The head decoration runs out before the end of some root string: k < min(x+y, z+y)."""
    x, y, z = fam.head_array.mid
    return fam.head_array.decoration < min(x + y, z + y)


def family_sum(lam: Sequence[int], fam: ResonanceFamily, members=None) -> QScalar:
    total = QScalar.zero()
    wt = fam.weight
    for n in fam.members if members is None else members:
        c = mv_integral(lam, n)
        if c.weight != wt:
            raise ResonanceError(f"weight changes inside the family at {n}")
        total = total + c.coefficient
    return total


def _disjoint_heads(lam: tuple[int, int], d: int):
    l1, l2 = lam
    for m6 in range(l1 + 2):
        m4 = l2 + m6 + 2 * d
        for m2 in range(l2 + m6 + 2):
            if m2 and m6:
                continue
            for m1 in range(l2 + m6 - m2 + 2):
                yield (m1, m2, 0, m4, 0, m6)


def relevant_families(lam: Sequence[int]) -> list[ResonanceFamily]:
    lam = _check_lambda(lam)
    kappa = (lam[0] + 1, lam[1] + 1)
    heads = set()
    for n in enumerate_crystal(g2_word_data(), kappa):
        if is_resonant_datum(lam, n) and array_of(lam, n).decoration == 0:
            heads.add(head_datum(lam, n))
    return [family(lam, h) for h in sorted(heads)]


def disjoint_families(lam: Sequence[int], decoration_cap: int = 6) -> list[ResonanceFamily]:
    lam = _check_lambda(lam)
    out = []
    for d in range(1, decoration_cap + 1):
        for h in _disjoint_heads(lam, d):
            if not is_resonant_datum(lam, h):
                continue
            fam = family(lam, h)
            if not fam.lambda_relevant:
                out.append(fam)
    return out


def enumerate_families(lam: Sequence[int], decoration_cap: int = 6):
    """Return (lambda_relevant, disjoint) families.

    The lambda-relevant list is always complete; the cap bounds only the head
    decoration of the disjoint families.
    """
    if decoration_cap < 0:
        raise G2InputError("decoration cap must be non-negative")
    return relevant_families(lam), disjoint_families(lam, decoration_cap)
