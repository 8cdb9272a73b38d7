"""Fundamental representations, one-parameter subgroups and generalized minors.

A module V(Lambda) is built weight space by weight space, from the top down.
A vector of weight mu below the highest weight is determined by its images
under the raising operators e_j (an irreducible module has no other singular
vectors), so every weight space is coordinatised through those images.  The
spanning vectors f_i^(n) u (divided powers) generate the Kostant lattice, and
an integral echelon basis of that lattice is used.  Consequently all matrices
of e_i^(n), f_i^(n) are integral.

Generalized minors are matrix coefficients between extremal weight vectors:
Delta_{u Lambda, v Lambda}(x) is the coefficient of v_Lambda in
ubar^{-1} x vbar v_Lambda.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

import numpy as np

from .exactpoly import LaurentPoly
from .rootsys import CartanDatum, ReducedWord, WeylElement, build_cartan

Weight = tuple[int, ...]


class RepresentationError(RuntimeError):
    pass


class TrailError(RuntimeError):
    pass


# -- integer lattice helpers -------------------------------------------------

def lattice_basis(vectors: Sequence[Sequence[int]]) -> list[list[int]]:
    """An echelon Z-basis of the lattice spanned by integer vectors."""
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return []
    basis = []
    for col in range(len(rows[0])):
        active = [r for r in rows if r[col] != 0]
        if not active:
            continue
        rest = [r for r in rows if r[col] == 0]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                f = r[col] // piv[col]
                r = [a - f * b for a, b in zip(r, piv)]
                if r[col] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            active = nxt
        piv = active[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        basis.append(piv)
        rows = rest
    return basis


def lattice_coordinates(basis: list[list[int]], v: Sequence[int]) -> list[int]:
    v = list(v)
    coeffs = []
    for row in basis:
        p = next(k for k, a in enumerate(row) if a)
        if v[p] % row[p]:
            raise RepresentationError("vector is not in the lattice")
        c = v[p] // row[p]
        coeffs.append(c)
        if c:
            v = [a - c * b for a, b in zip(v, row)]
    if any(v):
        raise RepresentationError("vector is not in the span")
    return coeffs


# -- the module ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RepModule:
    datum: CartanDatum
    highest_weight: Weight
    weights: tuple[Weight, ...]        # weight of each basis vector
    E: tuple[np.ndarray, ...]
    F: tuple[np.ndarray, ...]

    @property
    def dim(self) -> int:
        return len(self.weights)

    @property
    def H(self) -> tuple[np.ndarray, ...]:
        return tuple(np.diag([w[i] for w in self.weights]).astype(object)
                     for i in range(self.datum.rank))

    def divided_power(self, mat: np.ndarray, n: int) -> np.ndarray:
        p = np.identity(self.dim, dtype=object)
        for _ in range(n):
            p = p.dot(mat)
        f = factorial(n)
        if any(x % f for x in p.flat):
            raise RepresentationError("divided power is not integral")
        return p // f

    def exp_matrix(self, mat: np.ndarray, c: int) -> np.ndarray:
        """exp(c * mat) for nilpotent integral ``mat`` with integer c."""
        out = np.identity(self.dim, dtype=object)
        n = 1
        while True:
            dp = self.divided_power(mat, n)
            if not dp.any():
                return out
            out = out + (c ** n) * dp
            n += 1

    def e_powers(self, i: int) -> list[np.ndarray]:
        """[E_i^(1), E_i^(2), ...] up to nilpotency (1-based i)."""
        return _powers(self, "E", i)

    def sbar(self, i: int) -> np.ndarray:
        E, F = self.E[i - 1], self.F[i - 1]
        return self.exp_matrix(E, -1).dot(self.exp_matrix(F, 1)).dot(self.exp_matrix(E, -1))

    def sbar_inverse(self, i: int) -> np.ndarray:
        E, F = self.E[i - 1], self.F[i - 1]
        return self.exp_matrix(E, 1).dot(self.exp_matrix(F, -1)).dot(self.exp_matrix(E, 1))

    def check_relations(self) -> None:
        n = self.datum.rank
        A = self.datum.cartan
        H = self.H
        for i in range(n):
            for j in range(n):
                br = self.E[i].dot(self.F[j]) - self.F[j].dot(self.E[i])
                want = H[i] if i == j else np.zeros_like(br)
                if not np.array_equal(br, want):
                    raise RepresentationError(f"[e_{i+1}, f_{j+1}] relation fails")
                if i != j:
                    m = 1 - A[i][j]
                    for X in (self.E, self.F):
                        tot = np.zeros((self.dim, self.dim), dtype=object)
                        for k in range(m + 1):
                            term = (_matpow(X[i], m - k).dot(X[j]).dot(_matpow(X[i], k)))
                            tot = tot + ((-1) ** k) * comb(m, k) * term
                        if tot.any():
                            raise RepresentationError(f"Serre relation ({i+1},{j+1}) fails")

    def index_of_weight(self, mu: Weight) -> list[int]:
        return [k for k, w in enumerate(self.weights) if w == tuple(mu)]


_POWER_CACHE: dict[tuple[int, str, int], list[np.ndarray]] = {}


def _powers(rep: RepModule, which: str, i: int) -> list[np.ndarray]:
    key = (id(rep), which, i)
    if key not in _POWER_CACHE:
        mat = (rep.E if which == "E" else rep.F)[i - 1]
        out = []
        n = 1
        while True:
            dp = rep.divided_power(mat, n)
            if not dp.any():
                break
            out.append(dp)
            n += 1
        _POWER_CACHE[key] = out
    return _POWER_CACHE[key]


def _matpow(m: np.ndarray, k: int) -> np.ndarray:
    out = np.identity(m.shape[0], dtype=object)
    for _ in range(k):
        out = out.dot(m)
    return out


def _sub(a: Weight, b: Weight, k: int = 1) -> Weight:
    return tuple(x - k * y for x, y in zip(a, b))


def highest_weight_module(datum: CartanDatum, hw: Sequence[int]) -> RepModule:
    """An integral form of the irreducible module with highest weight ``hw``."""
    hw = tuple(hw)
    if any(x < 0 for x in hw):
        raise RepresentationError("highest weight must be dominant")
    n = datum.rank
    alpha = [tuple(datum.cartan[r][j] for r in range(n)) for j in range(n)]
    dims: dict[Weight, int] = {hw: 1}
    levels: list[list[Weight]] = [[hw]]
    E: dict[tuple[int, Weight], list[list[int]]] = {}    # columns: basis vectors of mu
    Fd: dict[tuple[int, int, Weight], list[list[int]]] = {}  # columns indexed by source basis

    d = 0
    while True:
        d += 1
        cands_w = set()
        for k in range(1, d + 1):
            for nu in levels[d - k]:
                for i in range(n):
                    cands_w.add(_sub(nu, alpha[i], k))
        level = []
        for mu in sorted(cands_w, reverse=True):
            tags = []
            vecs = []
            for i in range(n):
                for k in range(1, d + 1):
                    nu = _sub(mu, alpha[i], -k)
                    if nu not in dims:
                        continue
                    for u in range(dims[nu]):
                        vec = []
                        for j in range(n):
                            target = _sub(mu, alpha[j], -1)
                            if target not in dims:
                                continue
                            seg = [0] * dims[target]
                            src = _sub(nu, alpha[j], -1)
                            if src in dims and (j, nu) in E:
                                eu = [E[(j, nu)][u][r] for r in range(dims[src])]
                                fmat = Fd[(i, k, src)]
                                for s in range(dims[src]):
                                    if eu[s]:
                                        col = fmat[s]
                                        for r in range(dims[target]):
                                            seg[r] += eu[s] * col[r]
                            if i == j:
                                coef = nu[i] - k + 1
                                if k == 1:
                                    seg[u] += coef
                                else:
                                    col = Fd[(i, k - 1, nu)][u]
                                    for r in range(dims[target]):
                                        seg[r] += coef * col[r]
                            vec.extend(seg)
                        tags.append((i, k, nu, u))
                        vecs.append(vec)
            basis = lattice_basis(vecs)
            if not basis:
                continue
            dims[mu] = len(basis)
            level.append(mu)
            # e_j on the new basis: split the coordinate vectors into segments
            offset = 0
            for j in range(n):
                target = _sub(mu, alpha[j], -1)
                if target not in dims:
                    continue
                size = dims[target]
                E[(j, mu)] = [row[offset:offset + size] for row in basis]
                offset += size
            coords = [lattice_coordinates(basis, v) for v in vecs]
            for (i, k, nu, u), c in zip(tags, coords):
                Fd.setdefault((i, k, nu), [None] * dims[nu])[u] = c
        if not level:
            break
        levels.append(level)

    order = [mu for lev in levels for mu in lev]
    offsets = {}
    tot = 0
    for mu in order:
        offsets[mu] = tot
        tot += dims[mu]
    weights = tuple(mu for mu in order for _ in range(dims[mu]))
    Emats, Fmats = [], []
    for i in range(n):
        Em = np.zeros((tot, tot), dtype=object)
        Fm = np.zeros((tot, tot), dtype=object)
        for mu in order:
            up = _sub(mu, alpha[i], -1)
            if (i, mu) in E:
                for s, col in enumerate(E[(i, mu)]):
                    for r, x in enumerate(col):
                        Em[offsets[up] + r, offsets[mu] + s] = x
            down = _sub(mu, alpha[i], 1)
            if down in dims and (i, 1, mu) in Fd:
                for s, col in enumerate(Fd[(i, 1, mu)]):
                    for r, x in enumerate(col):
                        Fm[offsets[down] + r, offsets[mu] + s] = x
        Emats.append(Em)
        Fmats.append(Fm)
    rep = RepModule(datum, hw, weights, tuple(Emats), tuple(Fmats))
    rep.check_relations()
    return rep


@lru_cache(maxsize=None)
def _fundamental_cached(series: str, rank: int, i: int) -> RepModule:
    datum = build_cartan(series, rank)
    hw = tuple(int(j == i - 1) for j in range(rank))
    return highest_weight_module(datum, hw)


def fundamental_rep(datum: CartanDatum, i: int) -> RepModule:
    if not 1 <= i <= datum.rank:
        raise RepresentationError(f"node {i} out of range")
    return _fundamental_cached(datum.series, datum.rank, i)


def weyl_dimension(datum: CartanDatum, hw: Sequence[int]) -> int:
    """prod_{alpha > 0} <hw + rho, alpha^vee> / <rho, alpha^vee>."""
    num = den = 1
    for a in datum.positive_roots:
        cv = datum.coroot_of(a)
        num *= sum((h + 1) * c for h, c in zip(hw, cv))
        den *= sum(cv)
    return num // den


# -- one-parameter subgroups ---------------------------------------------------

def x_subgroup(rep: RepModule, i: int, t: LaurentPoly | int):
    """exp(t E_i) as a matrix over Laurent polynomials (or integers)."""
    return _exp_symbolic(rep, rep.E[i - 1], t)


def y_subgroup(rep: RepModule, i: int, t: LaurentPoly | int):
    return _exp_symbolic(rep, rep.F[i - 1], t)


def sbar(rep: RepModule, i: int) -> np.ndarray:
    return rep.sbar(i)


def _exp_symbolic(rep: RepModule, mat: np.ndarray, t):
    out = np.identity(rep.dim, dtype=object)
    if isinstance(t, LaurentPoly):
        out = np.array([[LaurentPoly.constant(t.variables, int(x)) for x in row] for row in out],
                       dtype=object)
    n = 1
    tp = t
    while True:
        dp = rep.divided_power(mat, n)
        if not dp.any():
            return out
        out = out + dp * tp
        tp = tp * t
        n += 1


def _apply_int(mat: np.ndarray, vec: list) -> list:
    out = []
    for row in mat:
        acc = None
        for c, v in zip(row, vec):
            if c and v:
                term = v * int(c)
                acc = term if acc is None else acc + term
        out.append(acc)
    return out


def _zero_like(vec):
    return [None] * len(vec)


def extremal_vector(rep: RepModule, w: WeylElement | Sequence[int]) -> list[int]:
    """wbar v_Lambda as an integer vector, along the given (or a) reduced word."""
    word = w.reduced_word() if isinstance(w, WeylElement) else tuple(w)
    v = [0] * rep.dim
    v[0] = 1
    for i in reversed(word):
        v = [int(x) for x in rep.sbar(i).dot(np.array(v, dtype=object))]
    return v


def b_variables(N: int, name: str = "b") -> tuple[str, ...]:
    return tuple(f"{name}{k}" for k in range(1, N + 1))


def generalized_minor(rep: RepModule, u: WeylElement | Sequence[int], v: WeylElement | Sequence[int],
                      word_x: Sequence[int], variables: Sequence[str] | None = None) -> LaurentPoly:
    """Delta_{u Lambda, v Lambda}(x_{i_1}(b_1) ... x_{i_N}(b_N))."""
    word_x = tuple(word_x)
    variables = tuple(variables) if variables else b_variables(len(word_x))
    gens = LaurentPoly.gens(variables)
    vec: list = [LaurentPoly.constant(variables, x) if x else None
                 for x in extremal_vector(rep, v)]
    for k in reversed(range(len(word_x))):
        powers = _powers(rep, "E", word_x[k])
        new = list(vec)
        bp = gens[k]
        for dp in powers:
            img = _apply_int(dp, vec)
            for r, x in enumerate(img):
                if x is not None:
                    term = x * bp
                    new[r] = term if new[r] is None else new[r] + term
            bp = bp * gens[k]
        vec = new
    uword = u.reduced_word() if isinstance(u, WeylElement) else tuple(u)
    for i in uword:
        vec = _apply_int(rep.sbar_inverse(i), vec)
    out = vec[0]
    return out if out is not None else LaurentPoly(variables)


# -- trails ----------------------------------------------------------------------

@dataclass(frozen=True)
class Trail:
    word: tuple[int, ...]
    source: Weight
    target: Weight
    c: tuple[int, ...]
    d: int


def trails_from_minor(minor: LaurentPoly, word: ReducedWord | Sequence[int], source: Weight,
                      target: Weight, datum: CartanDatum | None = None) -> list[Trail]:
    if isinstance(word, ReducedWord):
        datum = word.datum
        letters = word.letters
    else:
        letters = tuple(word)
        if datum is None:
            raise TrailError("a Cartan datum is needed to check telescoping")
    n = datum.rank
    out = []
    for c, d in minor:
        if d <= 0 or any(x < 0 for x in c):
            raise TrailError(f"minor has a non-positive term {d} at {c}")
        w = tuple(source)
        for k, ck in enumerate(c):
            col = tuple(datum.cartan[r][letters[k] - 1] for r in range(n))
            w = _sub(w, col, ck)
        if w != tuple(target):
            raise TrailError(f"trail {c} does not telescope to {target}")
        out.append(Trail(letters, tuple(source), tuple(target), tuple(c), d))
    return out
