"""Exact p-adic model of SL(n): toric charts, the twist map, and the
Iwasawa decomposition of lower unipotent elements along a convex order.

Scalars are rationals; "p-adic" only enters through valuations.  Matrices
are lists of lists of Fractions.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .lusztig import g_polynomial, tw_variables, word_data
from .rootsys import build_cartan, long_word

Matrix = list[list[Fraction]]


class PadicError(ArithmeticError):
    pass


class OutsideBigCellError(PadicError):
    """The Gauss decomposition does not exist (a trailing principal minor vanishes)."""


class PeelingError(PadicError):
    pass


def valuation(x: Fraction | int, p: int) -> int | float:
    x = Fraction(x)
    if x == 0:
        return float("inf")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


@dataclass(frozen=True)
class PadicScalar:
    value: Fraction
    prime: int

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))

    @property
    def val(self) -> int | float:
        return valuation(self.value, self.prime)

    def is_integral(self) -> bool:
        return self.val >= 0

    def is_unit(self) -> bool:
        return self.val == 0

    def _other(self, other) -> Fraction:
        if isinstance(other, PadicScalar):
            if other.prime != self.prime:
                raise PadicError("mixing different primes")
            return other.value
        return Fraction(other)

    def __add__(self, other):
        return PadicScalar(self.value + self._other(other), self.prime)

    __radd__ = __add__

    def __sub__(self, other):
        return PadicScalar(self.value - self._other(other), self.prime)

    def __rsub__(self, other):
        return PadicScalar(self._other(other) - self.value, self.prime)

    def __mul__(self, other):
        return PadicScalar(self.value * self._other(other), self.prime)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return PadicScalar(self.value / self._other(other), self.prime)

    def __rtruediv__(self, other):
        return PadicScalar(self._other(other) / self.value, self.prime)

    def __neg__(self):
        return PadicScalar(-self.value, self.prime)

    def __eq__(self, other):
        if isinstance(other, PadicScalar):
            return self.prime == other.prime and self.value == other.value
        return self.value == other

    def __hash__(self):
        return hash((self.value, self.prime))


# -- matrices -------------------------------------------------------------------

def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    n, m = len(A), len(B[0])
    Bt = list(zip(*B))
    return [[sum((a * b for a, b in zip(A[i], Bt[j]) if a and b), Fraction(0)) for j in range(m)]
            for i in range(n)]


def product(*mats: Matrix) -> Matrix:
    out = mats[0]
    for M in mats[1:]:
        out = matmul(out, M)
    return out


def transpose(A: Matrix) -> Matrix:
    return [list(r) for r in zip(*A)]


def inverse(A: Matrix) -> Matrix:
    n = len(A)
    M = [list(map(Fraction, row)) + identity(n)[i] for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise PadicError("singular matrix")
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [row[n:] for row in M]


def determinant(A: Matrix) -> Fraction:
    n = len(A)
    M = [list(map(Fraction, row)) for row in A]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        det *= M[col][col]
        for r in range(col + 1, n):
            f = M[r][col] / M[col][col]
            if f:
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return det


def is_integral(A: Matrix, p: int) -> bool:
    return all(valuation(x, p) >= 0 for row in A for x in row)


# -- generators -------------------------------------------------------------------

def y_simple(n: int, i: int, b) -> Matrix:
    M = identity(n)
    M[i][i - 1] = Fraction(b)
    return M


def x_simple(n: int, i: int, b) -> Matrix:
    M = identity(n)
    M[i - 1][i] = Fraction(b)
    return M


def sbar(n: int, i: int) -> Matrix:
    M = identity(n)
    M[i - 1][i - 1] = M[i][i] = Fraction(0)
    M[i - 1][i] = Fraction(-1)
    M[i][i - 1] = Fraction(1)
    return M


def torus(n: int, a, coroot: tuple[int, int]) -> Matrix:
    """a^{gamma^vee} for gamma = e_r - e_c (0-based positions r, c)."""
    r, c = coroot
    M = identity(n)
    M[r][r] = Fraction(a)
    M[c][c] = 1 / Fraction(a)
    return M


def sl_generators(n: int):
    """The elementary SL(n) matrices used by the toric charts."""
    return {"y": lambda i, b: y_simple(n, i, b), "x": lambda i, b: x_simple(n, i, b),
            "sbar": lambda i: sbar(n, i), "torus": lambda a, coroot: torus(n, a, coroot)}


def word_lift(n: int, letters: Sequence[int]) -> Matrix:
    out = identity(n)
    for i in letters:
        out = matmul(out, sbar(n, i))
    return out


def longest_lift(n: int) -> Matrix:
    datum = build_cartan("A", n - 1)
    return word_lift(n, datum.longest_element.reduced_word())


def y_chart(n: int, letters: Sequence[int], b: Sequence) -> Matrix:
    return product(identity(n), *[y_simple(n, i, bk) for i, bk in zip(letters, b)])


def x_chart(n: int, letters: Sequence[int], b: Sequence) -> Matrix:
    return product(identity(n), *[x_simple(n, i, bk) for i, bk in zip(letters, b)])


# -- involutions and the Gauss decomposition ----------------------------------------

def _sign_matrix(n: int) -> Matrix:
    return [[Fraction((-1) ** i if i == j else 0) for j in range(n)] for i in range(n)]


def positive_twist(g: Matrix) -> Matrix:
    """The anti-automorphism fixing every x_i(a) and inverting the torus."""
    D = _sign_matrix(len(g))
    return product(D, inverse(g), D)


def gauss_decompose(M: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """M = u_plus * t * u_minus with u_plus upper unipotent, t diagonal, u_minus lower unipotent.

    Exists iff every trailing principal minor of M is nonzero; the
    factors are computed from the bottom-right corner upwards.
    """
    n = len(M)
    R = [list(map(Fraction, row)) for row in M]
    U = identity(n)
    L = identity(n)
    d = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        piv = R[k][k]
        if piv == 0:
            raise OutsideBigCellError(f"trailing principal minor of size {n - k} vanishes")
        d[k] = piv
        for r in range(k):
            U[r][k] = R[r][k] / piv
        for c in range(k):
            L[k][c] = R[k][c] / piv
        for r in range(k):
            for c in range(k):
                R[r][c] -= U[r][k] * piv * L[k][c]
    t = [[d[i] if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    if product(U, t, L) != [list(map(Fraction, row)) for row in M]:
        raise PadicError("Gauss decomposition failed to recompose")
    return U, t, L


def twist(v: Matrix) -> Matrix:
    """eta(v) = [w0bar v^T]_-."""
    return gauss_decompose(matmul(longest_lift(len(v)), transpose(v)))[2]


def z_word(letters: Sequence[int], b: Sequence, n: int | None = None) -> Matrix:
    """The twisted chart: eta(iota(y_i(b)))."""
    n = n or max(letters) + 1
    return twist(positive_twist(y_chart(n, letters, b)))


# -- root subgroups along a convex order ------------------------------------------

@dataclass(frozen=True)
class RootGroup:
    """y_gamma(b) = I + sign*b*E[c][a] and x_gamma(b) = I + sign*b*E[a][c], gamma = e_a - e_c."""
    n: int
    a: int
    c: int
    y_sign: int
    x_sign: int

    def y(self, b) -> Matrix:
        M = identity(self.n)
        M[self.c][self.a] = self.y_sign * Fraction(b)
        return M

    def x(self, b) -> Matrix:
        M = identity(self.n)
        M[self.a][self.c] = self.x_sign * Fraction(b)
        return M

    def torus(self, w) -> Matrix:
        return torus(self.n, w, (self.a, self.c))


def _single_offdiag(M: Matrix) -> tuple[int, int, Fraction]:
    hits = [(i, j, M[i][j]) for i in range(len(M)) for j in range(len(M)) if i != j and M[i][j] != 0]
    if len(hits) != 1:
        raise PadicError("conjugated root group is not elementary")
    return hits[0]


def root_groups(n: int, letters: Sequence[int]) -> list[RootGroup]:
    """Root groups for gamma_j = s_{i_N} ... s_{i_{j+1}} alpha_{i_j}, j = 1..N."""
    letters = tuple(letters)
    out = []
    for j in range(len(letters)):
        wbar = word_lift(n, tuple(reversed(letters[j + 1:])))
        winv = inverse(wbar)
        i = letters[j]
        c, a, ys = _single_offdiag(product(wbar, y_simple(n, i, 1), winv))
        a2, c2, xs = _single_offdiag(product(wbar, x_simple(n, i, 1), winv))
        if (a, c) != (a2, c2) or a > c:
            raise PadicError("inconsistent root group for a positive root")
        out.append(RootGroup(n, a, c, int(ys), int(xs)))
    return out


def _b_order(n: int, groups: list[RootGroup], k: int) -> list[int]:
    """A total order on positions making the Borel for {-gamma_j : j<k} and {gamma_j : j>=k} upper triangular."""
    positive = set()
    for j, g in enumerate(groups):
        positive.add((g.c, g.a) if j < k else (g.a, g.c))
    rank = {i: sum((i, j) in positive for j in range(n)) for i in range(n)}
    order = sorted(range(n), key=lambda i: -rank[i])
    for x in range(n):
        for y in range(x + 1, n):
            if (order[x], order[y]) not in positive:
                raise PadicError("positions do not form a Borel order")
    return order


def _split_borel(R: Matrix, groups: list[RootGroup], k: int) -> tuple[Matrix, Matrix]:
    """R = A * P with A unipotent on {-gamma_j : j<k} and P in T * U{gamma_j : j>k}."""
    n = len(R)
    order = _b_order(n, groups, k)
    kind = {}
    for j, g in enumerate(groups):
        if j < k:
            kind[(g.c, g.a)] = "A"
        elif j == k:
            kind[(g.a, g.c)] = "check"
        else:
            kind[(g.a, g.c)] = "P"
    A = identity(n)
    P = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        P[i][i] = R[i][i]
    for x in range(n):
        for y in range(x):
            if R[order[x]][order[y]] != 0:
                raise PeelingError("intermediate element is not in the expected Borel")
    for dist in range(1, n):
        for x in range(n - dist):
            i, j = order[x], order[x + dist]
            inner = sum((A[i][order[z]] * P[order[z]][j] for z in range(x + 1, x + dist)), Fraction(0))
            rest = R[i][j] - inner
            what = kind[(i, j)]
            if what == "A":
                A[i][j] = rest / P[j][j]
            elif what == "P":
                P[i][j] = rest
            elif rest != 0:
                raise PeelingError("unexpected component along gamma_k")
    if matmul(A, P) != R:
        raise PeelingError("Borel splitting failed to recompose")
    return A, P


@dataclass
class IwasawaTrace:
    word: tuple[int, ...]
    prime: int
    u: Matrix
    b: tuple[Fraction, ...] | None = None
    x: list[Fraction] = field(default_factory=list)
    t: list[Fraction] = field(default_factory=list)
    w: list[Fraction] = field(default_factory=list)
    m: list[int] = field(default_factory=list)
    p1: Matrix | None = None
    k_part: Matrix | None = None

    def to_json(self) -> dict:
        def s(v):
            return None if v is None else str(v)
        return {"word": list(self.word), "prime": self.prime,
                "b": None if self.b is None else [s(v) for v in self.b],
                "x": [s(v) for v in self.x], "t": [s(v) for v in self.t],
                "w": [s(v) for v in self.w], "m": list(self.m)}


def iwasawa_algorithm2(letters: Sequence[int], u: Matrix, p: int, n: int | None = None) -> IwasawaTrace:
    """Peel u = prod_j y_{gamma_j}(x_j) from the right, writing u = p_1 k with k integral."""
    letters = tuple(letters)
    n = n or len(u)
    groups = root_groups(n, letters)
    N = len(letters)
    xs: list[Fraction] = [Fraction(0)] * N
    ts: list[Fraction] = [Fraction(0)] * N
    ws: list[Fraction] = [Fraction(1)] * N
    A = [list(map(Fraction, row)) for row in u]
    P = identity(n)
    for k in range(N - 1, -1, -1):
        g = groups[k]
        xk = g.y_sign * A[g.c][g.a]
        A_rest = matmul(A, g.y(-xk))
        M = matmul(g.y(xk), P)
        if M[g.c][g.c] == 0:
            raise PeelingError("non-generic sample: pivot vanishes")
        tk = g.y_sign * M[g.c][g.a] / M[g.c][g.c]
        Q = matmul(M, g.y(-tk))
        A, P_prime = _split_borel(matmul(A_rest, Q), groups, k)
        wk = tk if valuation(tk, p) < 0 else Fraction(1)
        P = product(P_prime, g.torus(1 / wk), g.x(wk))
        xs[k], ts[k], ws[k] = xk, tk, wk
    if A != identity(n):
        raise PeelingError("unipotent part not exhausted")
    kpart = matmul(inverse(P), [list(map(Fraction, row)) for row in u])
    if not is_integral(kpart, p) or determinant(kpart) != 1:
        raise PadicError("k-part is not in SL_n(Z_p)")
    m = [-valuation(w, p) for w in ws]
    return IwasawaTrace(letters, p, u, None, xs, ts, ws, m, P, kpart)


# -- sampling -----------------------------------------------------------------------

def unit_list(p: int, count: int = 12) -> list[int]:
    units = [a for a in range(1, p)]
    k = 1
    while len(units) < count:
        units.extend(a + k * p for a in range(1, p))
        k += 1
    return units[:count]


def sample_b(rng: random.Random, p: int, valuations: Sequence[int]) -> tuple[Fraction, ...]:
    units = unit_list(p)
    out = []
    for v in valuations:
        u = Fraction(rng.choice(units))
        if rng.random() < 0.5:
            u = -u
        out.append(Fraction(p) ** v * u)
    return tuple(out)


def sample_rng(seed: int, index: int) -> random.Random:
    return random.Random(f"{seed}:{index}")


@dataclass
class GeomAlgoReport:
    word: tuple[int, ...]
    prime: int
    samples: int
    passed: int
    resampled: int
    failures: list[dict]

    @property
    def ok(self) -> bool:
        return self.passed == self.samples and not self.failures

    def to_json(self) -> dict:
        return {"word": list(self.word), "prime": self.prime, "samples": self.samples,
                "passed": self.passed, "resampled": self.resampled, "ok": self.ok,
                "failures": self.failures}


def _traced_sample(letters, n, p, rng, valuations, max_tries=20):
    resampled = 0
    for _ in range(max_tries):
        b = sample_b(rng, p, valuations)
        try:
            u = z_word(letters, b, n)
            tr = iwasawa_algorithm2(letters, u, p, n)
        except (OutsideBigCellError, PeelingError):
            resampled += 1
            continue
        tr.b = b
        return tr, resampled
    raise PadicError(f"no generic sample found for valuations {valuations}")


def verify_geomalgo(letters: Sequence[int], n: int, samples: int = 100, p: int = 5,
                    seed: int = 0, valuation_range=(1, 3)) -> GeomAlgoReport:
    """w_k * b_k = 1 whenever every val(b_k) is positive."""
    letters = tuple(letters)
    long_word(build_cartan("A", n - 1), letters)
    lo, hi = valuation_range
    passed = resampled = 0
    failures = []
    for s in range(samples):
        rng = sample_rng(seed, s)
        vals = [rng.randint(lo, hi) for _ in letters]
        tr, r = _traced_sample(letters, n, p, rng, vals)
        resampled += r
        if all(w * b == 1 for w, b in zip(tr.w, tr.b)) and tr.m == vals:
            passed += 1
        else:
            failures.append({"sample": s, "trace": tr.to_json()})
    return GeomAlgoReport(letters, p, samples, passed, resampled, failures)


# -- the A_3 word (3,2,1,2,3,2) -------------------------------------------------------

APPENDIX_WORD = (3, 2, 1, 2, 3, 2)


def appendix_g(t: Sequence[Fraction], w: Sequence[Fraction]) -> tuple[Fraction, Fraction, Fraction]:
    """g_1, g_2, g_3 from the generic boundary construction (1-based t_k, w_k)."""
    t1, t2, t3, t4, t5, t6 = t
    w1, w2, w3, w4, w5, w6 = w
    g1 = t3 + t2 * w3 / w4 + t1 * w2 * w3 / (w5 * w6) + t2 * t4 * w3 / (w4 * w6)
    g2 = t6
    g3 = t5 + t4 * w5 / w6
    return g1, g2, g3


def appendix_h(t: Sequence[Fraction], w: Sequence[Fraction]) -> tuple[Fraction, Fraction, Fraction]:
    g1, g2, g3 = appendix_g(t, w)
    return g1 + appendix_correction(t, w), g2, g3


def appendix_correction(t, w) -> Fraction:
    """(t_3 w_4 / w_6)(1 - t_4 / w_4)."""
    return t[2] * w[3] / w[5] * (1 - t[3] / w[3])


def character_coordinates(u: Matrix) -> tuple[Fraction, ...]:
    """The images of u in the simple root groups (its subdiagonal)."""
    return tuple(u[i + 1][i] for i in range(len(u) - 1))


@dataclass
class AppendixReport:
    """matches counts samples with subdiagonal == (h_1, h_2, h_3); per_index splits it by i.

    On samples with m_4 = 0, correction_matches counts h_1 - g_1 equal to the
    stated correction and negated_matches counts it equal to its negative.
    """
    samples: int
    matches: int
    per_index: list[int]
    m4_zero: int
    correction_matches: int
    negated_matches: int
    patterns: dict
    failures: list[dict]

    @property
    def ok(self) -> bool:
        return (self.matches == self.samples and self.correction_matches == self.m4_zero
                and not self.failures)

    def to_json(self) -> dict:
        return {"samples": self.samples, "matches": self.matches, "per_index": self.per_index,
                "m4_zero": self.m4_zero, "correction_matches": self.correction_matches,
                "negated_matches": self.negated_matches, "ok": self.ok,
                "patterns": {",".join(map(str, k)): v for k, v in sorted(self.patterns.items())},
                "failures": self.failures}


def verify_appendix(samples: int = 100, p: int = 5, seed: int = 0,
                    valuation_choices=(-1, 0, 0, 1, 2)) -> AppendixReport:
    """Compare the subdiagonal of u with h_i(t, w) from the algorithm's trace."""
    letters = APPENDIX_WORD
    n = 4
    matches = m4_zero = corr = neg = 0
    per_index = [0, 0, 0]
    patterns: dict[tuple[int, ...], int] = {}
    failures = []
    for s in range(samples):
        rng = sample_rng(seed, s)
        vals = [rng.choice(valuation_choices) for _ in letters]
        if s % 4 == 0:
            vals[3] = min(vals[3], 0)
        tr, _ = _traced_sample(letters, n, p, rng, vals)
        key = tuple(tr.m)
        patterns[key] = patterns.get(key, 0) + 1
        h = appendix_h(tr.t, tr.w)
        observed = character_coordinates(tr.u)
        for i in range(3):
            per_index[i] += observed[i] == h[i]
        if observed == h:
            matches += 1
        else:
            failures.append({"sample": s, "observed": [str(v) for v in observed],
                             "h": [str(v) for v in h], "trace": tr.to_json()})
        if tr.m[3] == 0:
            m4_zero += 1
            diff = observed[0] - appendix_g(tr.t, tr.w)[0]
            corr += diff == appendix_correction(tr.t, tr.w)
            neg += diff == -appendix_correction(tr.t, tr.w)
    return AppendixReport(samples, matches, per_index, m4_zero, corr, neg, patterns, failures)


@dataclass
class IndependenceReport:
    word: tuple[int, ...]
    samples: int
    per_index: list[int]
    patterns: int

    @property
    def ok(self) -> bool:
        return all(c == self.samples for c in self.per_index)

    def to_json(self) -> dict:
        return {"word": list(self.word), "samples": self.samples, "per_index": self.per_index,
                "patterns": self.patterns, "ok": self.ok}


def verify_independence(letters: Sequence[int], n: int, samples: int = 40, p: int = 5, seed: int = 0,
                        valuation_choices=(-1, 0, 0, 1, 2)) -> IndependenceReport:
    """Compare the subdiagonal of u with the boundary polynomials g_i(t, w) on every circling pattern.

    The g_i come from generalized minors, so agreement on mixed valuation
    patterns is a check that one Laurent polynomial serves every cell.
    """
    letters = tuple(letters)
    wd = word_data(build_cartan("A", n - 1), letters)
    gs = [g_polynomial(wd, i) for i in range(1, n)]
    names = tw_variables(len(letters))
    per_index = [0] * (n - 1)
    seen = set()
    for s in range(samples):
        rng = sample_rng(seed, s)
        vals = [rng.choice(valuation_choices) for _ in letters]
        tr, _ = _traced_sample(letters, n, p, rng, vals)
        seen.add(tuple(tr.m))
        env = dict(zip(names, list(tr.t) + list(tr.w)))
        obs = character_coordinates(tr.u)
        for i in range(n - 1):
            per_index[i] += obs[i] == gs[i].evaluate(env)
    return IndependenceReport(letters, samples, per_index, len(seen))
