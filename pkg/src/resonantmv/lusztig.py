"""Lusztig data, monomial selection, bounding data and highest-weight crystals.

Indexing of the character polynomials follows the Whittaker-function
convention: ``s_function(word, i)`` is the projection to the i-th simple root
group, and on the toric chart it is the ratio of the two minors of V(Lambda_{i*})
(``i*`` the node with w_0(alpha_i) = -alpha_{i*}).  For G_2 and B_2 the star is
trivial; for A_r it reverses the diagram.

Nodes ``a`` of the minors (the Lambda_a actually used) are what the bounding
data pair with: s_k = lambda_a + val(X_k).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .chevrep import (Trail, b_variables, fundamental_rep, generalized_minor,
                      trails_from_minor)
from .exactpoly import AffineForm, LaurentPoly, valuation_form
from .rootsys import (CartanDatum, ConvexOrder, ReducedWord, build_cartan,
                      convex_order, long_word)


class MonomialChoiceError(RuntimeError):
    pass


class CrystalError(RuntimeError):
    pass


@dataclass(frozen=True)
class NodeData:
    """The minors of V(Lambda_a) used for one node a."""
    node: int
    numerator: LaurentPoly      # Delta_{Lambda_a, w_0 s_a Lambda_a}
    denominator: LaurentPoly    # Delta_{Lambda_a, w_0 Lambda_a}, a monomial
    trails: tuple[Trail, ...]

    @property
    def denominator_exponents(self) -> tuple[int, ...]:
        return self.denominator.exponent_of_monomial()

    def trail_monomial(self, trail: Trail) -> tuple[int, ...]:
        """Exponents of b in d_pi^-1 * (trail term / denominator)."""
        return tuple(c - e for c, e in zip(trail.c, self.denominator_exponents))


@dataclass(frozen=True)
class WordData:
    datum: CartanDatum
    word: ReducedWord
    order: ConvexOrder
    nodes: tuple[NodeData, ...]

    @property
    def letters(self) -> tuple[int, ...]:
        return self.word.letters

    @property
    def N(self) -> int:
        return len(self.word)

    def node(self, a: int) -> NodeData:
        return self.nodes[a - 1]


@lru_cache(maxsize=None)
def _word_data(series: str, rank: int, letters: tuple[int, ...]) -> WordData:
    datum = build_cartan(series, rank)
    word = long_word(datum, letters)
    order = convex_order(word)
    w0 = datum.longest_element
    variables = b_variables(len(letters))
    nodes = []
    for a in range(1, datum.rank + 1):
        rep = fundamental_rep(datum, a)
        hw = rep.highest_weight
        target = w0 * datum.simple_reflection(a)
        num = generalized_minor(rep, datum.identity(), target, letters, variables)
        den = generalized_minor(rep, datum.identity(), w0, letters, variables)
        if not den.is_monomial() or den.coefficient_of_monomial() != 1:
            raise MonomialChoiceError(f"Delta_(Lambda_{a}, w0 Lambda_{a}) is not a monomial")
        expected = tuple(beta[a - 1] for beta in order.betas)
        if den.exponent_of_monomial() != expected:
            raise MonomialChoiceError("denominator exponents differ from <Lambda_a, beta_k>")
        trails = trails_from_minor(num, word, hw, target.act_on_weight(hw))
        nodes.append(NodeData(a, num, den, tuple(trails)))
    return WordData(datum, word, order, tuple(nodes))


def word_data(datum: CartanDatum, letters: Sequence[int]) -> WordData:
    return _word_data(datum.series, datum.rank, tuple(letters))


def s_function(wd: WordData, i: int) -> LaurentPoly:
    """The character polynomial for the i-th simple root group, in b_1..b_N."""
    nd = wd.node(wd.datum.star(i))
    return nd.numerator * (nd.denominator ** -1)


def trail_counts(wd: WordData) -> dict[int, int]:
    """Number of trails behind s_function(wd, i), keyed by i."""
    return {i: len(wd.node(wd.datum.star(i)).trails) for i in range(1, wd.datum.rank + 1)}


# -- monomial selection ------------------------------------------------------------

@dataclass(frozen=True)
class MonomialChoice:
    wd: WordData
    owner: tuple[int, ...]                 # i(k): simple index of the s-function holding X_k
    node: tuple[int, ...]                  # a(k) = i(k)*: the minor it comes from
    trails: tuple[Trail, ...]
    exponents: tuple[tuple[int, ...], ...]  # X_k as exponent vectors in b

    def monomial(self, k: int) -> LaurentPoly:
        variables = b_variables(self.wd.N)
        return LaurentPoly.monomial(variables, self.exponents[k - 1])


def nearest_simple_below(order: ConvexOrder, k: int) -> int:
    """The simple index i with alpha_i <= gamma_k and no simple root in between."""
    for j in range(k - 1, -1, -1):
        root = order.roots[j]
        if sum(root) == 1:
            return root.index(1) + 1
    raise MonomialChoiceError("no simple root precedes gamma_k")


@lru_cache(maxsize=None)
def _choose(series: str, rank: int, letters: tuple[int, ...]) -> MonomialChoice:
    wd = _word_data(series, rank, letters)
    datum = wd.datum
    owners, nodes, trails, exps = [], [], [], []
    for k in range(1, wd.N + 1):
        i = nearest_simple_below(wd.order, k)
        a = datum.star(i)
        nd = wd.node(a)
        den = nd.denominator_exponents
        good = [t for t in nd.trails
                if all(t.c[j] == den[j] for j in range(k - 1)) and t.c[k - 1] == den[k - 1] - 1]
        if not good:
            raise MonomialChoiceError(f"no trail satisfies the desiderata at k={k}")
        best = max(good, key=lambda t: t.c)
        owners.append(i)
        nodes.append(a)
        trails.append(best)
        exps.append(nd.trail_monomial(best))
    return MonomialChoice(wd, tuple(owners), tuple(nodes), tuple(trails), tuple(exps))


def choose_monomials(wd: WordData) -> MonomialChoice:
    return _choose(wd.datum.series, wd.datum.rank, wd.letters)


# -- bounding data and crystals -------------------------------------------------------

def s_forms(wd: WordData) -> list[tuple[int, AffineForm]]:
    """(a(k), val(X_k)) so that s_k = lambda_{a(k)} + val(X_k)(m)."""
    mc = choose_monomials(wd)
    out = []
    for k in range(wd.N):
        form = valuation_form(mc.monomial(k + 1))
        if form.coeffs[k] != -1 or any(form.coeffs[j] for j in range(k)):
            raise CrystalError("bounding data are not triangular")
        out.append((mc.node[k], form))
    return out


def bounding_data(wd: WordData, lam: Sequence[int], m: Sequence[int]) -> tuple[int, ...]:
    """The values s_1, ..., s_N."""
    return tuple(lam[a - 1] + f(m) for a, f in s_forms(wd))


@lru_cache(maxsize=None)
def _trail_inequalities(series: str, rank: int, letters: tuple[int, ...]):
    wd = _word_data(series, rank, letters)
    out = []
    for nd in wd.nodes:
        for t in nd.trails:
            out.append((nd.node, AffineForm(nd.trail_monomial(t))))
    # deduplicate: only the form matters
    seen = []
    for item in out:
        if item not in seen:
            seen.append(item)
    return tuple(seen)


def trail_inequalities(wd: WordData) -> tuple[tuple[int, AffineForm], ...]:
    """(a, form) meaning kappa_a + form(m) >= 0, one per trail Lambda_a -> w_0 s_a Lambda_a."""
    return _trail_inequalities(wd.datum.series, wd.datum.rank, wd.letters)


def in_crystal(wd: WordData, kappa: Sequence[int], m: Sequence[int]) -> bool:
    return all(kappa[a - 1] + f(m) >= 0 for a, f in trail_inequalities(wd))


def enumerate_crystal(wd: WordData, kappa: Sequence[int]) -> list[tuple[int, ...]]:
    """All m with in_crystal(wd, kappa, m), in lexicographic order."""
    forms = s_forms(wd)
    N = wd.N
    ineqs = trail_inequalities(wd)
    found: list[tuple[int, ...]] = []
    m = [0] * N

    def rec(k: int) -> None:
        if k < 0:
            if all(kappa[a - 1] + f(m) >= 0 for a, f in ineqs):
                found.append(tuple(m))
            return
        a, f = forms[k]
        m[k] = 0
        bound = kappa[a - 1] + f(m)   # f has -1 at k, so this is the cap for m_k
        for v in range(bound + 1):
            m[k] = v
            rec(k - 1)
        m[k] = 0

    rec(N - 1)
    return sorted(found)


def weight_of(wd: WordData, m: Sequence[int]) -> tuple[int, ...]:
    r = wd.datum.rank
    return tuple(sum(mk * cv[j] for mk, cv in zip(m, wd.order.coroots)) for j in range(r))


# -- g-polynomials -------------------------------------------------------------------

def tw_variables(N: int) -> tuple[str, ...]:
    return tuple(f"t{k}" for k in range(1, N + 1)) + tuple(f"w{k}" for k in range(1, N + 1))


def change_of_variables(mc: MonomialChoice, exps: Sequence[int]) -> tuple[int, ...]:
    """Integers c(k) with b^exps = prod_k X_k^{c(k)} (the X_k are unitriangular)."""
    N = len(exps)
    c = [0] * N
    for k in range(N):
        acc = sum(c[l] * mc.exponents[l][k] for l in range(k))
        c[k] = acc - exps[k]
    return tuple(c)


def _y_monomial(mc: MonomialChoice, k: int, power: int) -> tuple[int, ...]:
    """Exponent vector in (t, w) of Y_k^power, with t_k replaced by w_k when power < 0."""
    N = mc.wd.N
    e = [0] * (2 * N)
    x = mc.exponents[k]
    for j in range(k + 1, N):
        e[N + j] -= x[j] * power
    if power >= 0:
        e[k] += power
    else:
        e[N + k] += power
    return tuple(e)


def g_polynomial(wd: WordData, i: int) -> LaurentPoly:
    mc = choose_monomials(wd)
    nd = wd.node(wd.datum.star(i))
    N = wd.N
    variables = tw_variables(N)
    terms: dict[tuple[int, ...], int] = {}
    for t in nd.trails:
        c = change_of_variables(mc, nd.trail_monomial(t))
        e = [0] * (2 * N)
        for k, ck in enumerate(c):
            if ck:
                e = [x + y for x, y in zip(e, _y_monomial(mc, k, ck))]
        e = tuple(e)
        terms[e] = terms.get(e, 0) + t.d
    return LaurentPoly(variables, terms)


def diagonal_specialization(wd: WordData, g: LaurentPoly) -> LaurentPoly:
    """Set t_k = w_k and then w_k = 1/b_k."""
    N = wd.N
    bvars = b_variables(N)
    bs = LaurentPoly.gens(bvars)
    mapping = {}
    for k in range(N):
        inv = bs[k] ** -1
        mapping[f"t{k + 1}"] = inv
        mapping[f"w{k + 1}"] = inv
    return g.substitute(mapping, bvars)


# -- resonance ----------------------------------------------------------------------

@dataclass(frozen=True)
class ResonanceReport:
    pairs: tuple[tuple[int, int], ...]
    blocks: tuple[tuple[int, ...], ...]
    critical_blocks: tuple[tuple[int, ...], ...]
    s_values: tuple[int, ...]

    @property
    def resonant(self) -> bool:
        return bool(self.pairs)

    @property
    def critical(self) -> bool:
        return bool(self.critical_blocks)


@lru_cache(maxsize=None)
def _blocks(series: str, rank: int, letters: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    wd = _word_data(series, rank, letters)
    mc = _choose(series, rank, letters)
    parent = list(range(wd.N))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for nd in wd.nodes:
        for t in nd.trails:
            c = change_of_variables(mc, nd.trail_monomial(t))
            support = [k for k, ck in enumerate(c) if ck]
            for k in support[1:]:
                parent[find(k)] = find(support[0])
    groups: dict[int, list[int]] = {}
    for k in range(wd.N):
        groups.setdefault(find(k), []).append(k + 1)
    return tuple(sorted(tuple(g) for g in groups.values()))


def resonance_blocks(wd: WordData) -> tuple[tuple[int, ...], ...]:
    """The finest partition of [N] such that every trail monomial, written in the
    X_k, involves indices from a single block."""
    return _blocks(wd.datum.series, wd.datum.rank, wd.letters)


def detect_resonance(wd: WordData, m: Sequence[int], lam: Sequence[int]) -> ResonanceReport:
    s = bounding_data(wd, lam, m)
    pairs = []
    critical = []
    for block in resonance_blocks(wd):
        for x in range(len(block)):
            for y in range(x + 1, len(block)):
                k, l = block[x], block[y]
                if s[k - 1] == s[l - 1]:
                    pairs.append((k, l))
        if len(block) > 1 and len({s[k - 1] for k in block}) == 1:
            critical.append(block)
    return ResonanceReport(tuple(pairs), resonance_blocks(wd), tuple(critical), s)


def iter_box(bounds: Iterable[int]) -> Iterable[tuple[int, ...]]:
    """All integer vectors 0 <= v_k <= bounds_k."""
    bounds = list(bounds)
    if not bounds:
        yield ()
        return
    for v in range(bounds[0] + 1):
        for rest in iter_box(bounds[1:]):
            yield (v,) + rest
