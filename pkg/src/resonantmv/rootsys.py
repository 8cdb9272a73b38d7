"""Root systems, Weyl groups and convex orders for the finite types A_r, B_2, G_2.

Roots are stored in simple-root coordinates and coroots in simple-coroot
coordinates.  Weights of the group are written in the basis of fundamental
weights, so that ``weight[i]`` is the pairing with the i-th simple coroot.
All indices in the public interface are 1-based, as in the usual labelling
of Dynkin diagrams; tuples are 0-based internally.

>>> G2 = build_cartan("G", 2)
>>> G2.cartan
((2, -1), (-3, 2))
>>> G2.coroot_of((2, 3))
(2, 1)
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

Vector = tuple[int, ...]


class RootSystemError(ValueError):
    pass


def _cartan_matrix(series: str, rank: int) -> tuple[tuple[int, ...], ...]:
    if series == "A" and rank >= 1:
        rows = []
        for i in range(rank):
            rows.append(tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0)
                              for j in range(rank)))
        return tuple(rows)
    if series == "B" and rank == 2:
        # alpha_1 long, alpha_2 short
        return ((2, -1), (-2, 2))
    if series == "G" and rank == 2:
        # alpha_1 long, alpha_2 short: <alpha_2, alpha_1^vee> = -1
        return ((2, -1), (-3, 2))
    raise RootSystemError(f"unsupported root system {series}{rank}")


def _is_finite_type(cartan) -> bool:
    # symmetrize with d_i and test positive definiteness through leading minors
    n = len(cartan)
    sym = [[Fraction(0)] * n for _ in range(n)]
    d = _symmetrizer(cartan)
    for i in range(n):
        for j in range(n):
            sym[i][j] = Fraction(d[i] * cartan[i][j])
    for k in range(1, n + 1):
        if _det([row[:k] for row in sym[:k]]) <= 0:
            return False
    return True


def _det(m) -> Fraction:
    m = [list(map(Fraction, row)) for row in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            for k in range(c, n):
                m[r][k] -= f * m[c][k]
    return det


def _symmetrizer(cartan) -> tuple[int, ...]:
    """Positive integers d_i with d_i A[i][j] symmetric (d_i = |alpha_i|^2 / 2)."""
    n = len(cartan)
    d: list[Fraction | None] = [None] * n
    d[0] = Fraction(1)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(n):
                if d[i] is not None and d[j] is None and cartan[i][j] != 0:
                    d[j] = d[i] * cartan[i][j] / cartan[j][i]
                    changed = True
    if any(x is None for x in d):
        raise RootSystemError("Cartan matrix is decomposable")
    scale = 1
    for x in d:
        scale = scale * x.denominator // _gcd(scale, x.denominator)
    ints = [int(x * scale) for x in d]
    g = 0
    for x in ints:
        g = _gcd(g, x)
    return tuple(x // g for x in ints)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


@dataclass(frozen=True)
class CartanDatum:
    series: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = self.rank
        A = self.cartan
        if len(A) != n or any(len(row) != n for row in A):
            raise RootSystemError("Cartan matrix has the wrong shape")
        for i in range(n):
            for j in range(n):
                if i == j and A[i][j] != 2:
                    raise RootSystemError("diagonal entries must equal 2")
                if i != j and (A[i][j] > 0 or (A[i][j] == 0) != (A[j][i] == 0)):
                    raise RootSystemError("invalid off-diagonal entries")
        if not _is_finite_type(A):
            raise RootSystemError("Cartan matrix is not of finite type")

    @property
    def label(self) -> str:
        return f"{self.series}{self.rank}"

    @cached_property
    def symmetrizer(self) -> tuple[int, ...]:
        return _symmetrizer(self.cartan)

    @property
    def simple_roots(self) -> tuple[Vector, ...]:
        return tuple(_unit(i, self.rank) for i in range(self.rank))

    simple_coroots = simple_roots

    def dual(self) -> "CartanDatum":
        """The Langlands dual datum (transposed Cartan matrix)."""
        At = tuple(tuple(self.cartan[j][i] for j in range(self.rank))
                   for i in range(self.rank))
        return CartanDatum(self.series, self.rank, At)

    # -- pairings ---------------------------------------------------------
    def pairing_root(self, root: Sequence[int], i: int) -> int:
        """<root, alpha_i^vee> for 1-based i."""
        row = self.cartan[i - 1]
        return sum(c * a for c, a in zip(root, row))

    def root_to_weight(self, root: Sequence[int]) -> Vector:
        return tuple(self.pairing_root(root, i) for i in range(1, self.rank + 1))

    def pairing(self, weight: Sequence[int], coroot: Sequence[int]) -> int:
        """<weight, coroot> for a weight in fundamental coordinates."""
        return sum(a * b for a, b in zip(weight, coroot))

    def reflect_root(self, i: int, root: Sequence[int]) -> Vector:
        k = self.pairing_root(root, i)
        out = list(root)
        out[i - 1] -= k
        return tuple(out)

    def reflect_weight(self, i: int, weight: Sequence[int]) -> Vector:
        k = weight[i - 1]
        col = [self.cartan[r][i - 1] for r in range(self.rank)]
        return tuple(w - k * c for w, c in zip(weight, col))

    # -- roots ------------------------------------------------------------
    @cached_property
    def positive_roots(self) -> tuple[Vector, ...]:
        seen = set(self.simple_roots)
        frontier = list(seen)
        while frontier:
            nxt = []
            for r in frontier:
                for i in range(1, self.rank + 1):
                    s = self.reflect_root(i, r)
                    if all(c >= 0 for c in s) and s not in seen:
                        seen.add(s)
                        nxt.append(s)
            frontier = nxt
        return tuple(sorted(seen, key=lambda r: (sum(r), r)))

    @cached_property
    def roots(self) -> tuple[Vector, ...]:
        pos = self.positive_roots
        return pos + tuple(tuple(-c for c in r) for r in pos)

    @cached_property
    def _root_index(self) -> dict[Vector, int]:
        return {r: k for k, r in enumerate(self.roots)}

    def is_root(self, v: Sequence[int]) -> bool:
        return tuple(v) in self._root_index

    def norm2(self, root: Sequence[int]) -> Fraction:
        """(root, root) normalised so that (alpha_i, alpha_i) = 2 d_i."""
        d = self.symmetrizer
        A = self.cartan
        tot = Fraction(0)
        for i, ci in enumerate(root):
            for j, cj in enumerate(root):
                tot += ci * cj * d[i] * A[i][j]
        return tot

    def coroot_of(self, root: Sequence[int]) -> Vector:
        """alpha^vee = 2 alpha / (alpha, alpha) in simple-coroot coordinates."""
        if not self.is_root(root):
            raise RootSystemError(f"{tuple(root)} is not a root")
        n2 = self.norm2(root)
        d = self.symmetrizer
        out = []
        for j, c in enumerate(root):
            v = Fraction(c * 2 * d[j], n2)
            if v.denominator != 1:
                raise RootSystemError("non-integral coroot")
            out.append(int(v))
        return tuple(out)

    @cached_property
    def positive_coroots(self) -> tuple[Vector, ...]:
        return tuple(self.coroot_of(r) for r in self.positive_roots)

    def fundamental_weight(self, i: int) -> tuple[Fraction, ...]:
        """Lambda_i in simple-root coordinates."""
        inv = _inverse(self.cartan)
        return tuple(inv[j][i - 1] for j in range(self.rank))

    def fundamental_coweight(self, i: int) -> tuple[Fraction, ...]:
        """Lambda_i^vee in simple-coroot coordinates."""
        return self.dual().fundamental_weight(i)

    def rho(self) -> Vector:
        return (1,) * self.rank

    def coweight_to_coroot_coords(self, coweight: Sequence[int]) -> tuple[Fraction, ...]:
        """Convert a coweight from fundamental-coweight to simple-coroot coordinates."""
        inv = _inverse(self.dual().cartan)
        return tuple(sum(inv[j][i] * coweight[i] for i in range(self.rank))
                     for j in range(self.rank))

    # -- Weyl group -------------------------------------------------------
    def simple_reflection(self, i: int) -> "WeylElement":
        idx = self._root_index
        perm = tuple(idx[self.reflect_root(i, r)] for r in self.roots)
        return WeylElement(self, perm)

    def identity(self) -> "WeylElement":
        return WeylElement(self, tuple(range(len(self.roots))))

    def from_word(self, word: Iterable[int]) -> "WeylElement":
        w = self.identity()
        for i in word:
            self._check_index(i)
            w = w * self.simple_reflection(i)
        return w

    @cached_property
    def longest_element(self) -> "WeylElement":
        w = self.identity()
        while True:
            for i in range(1, self.rank + 1):
                if not w.has_right_descent(i):
                    w = w * self.simple_reflection(i)
                    break
            else:
                return w

    @property
    def num_positive_roots(self) -> int:
        return len(self.positive_roots)

    def star(self, i: int) -> int:
        """The index i* with w_0(alpha_i) = -alpha_{i*}."""
        img = self.longest_element.act_on_root(_unit(i - 1, self.rank))
        neg = tuple(-c for c in img)
        return neg.index(1) + 1

    def weyl_group(self) -> list["WeylElement"]:
        seen = {self.identity().perm: self.identity()}
        frontier = [self.identity()]
        while frontier:
            nxt = []
            for w in frontier:
                for i in range(1, self.rank + 1):
                    v = w * self.simple_reflection(i)
                    if v.perm not in seen:
                        seen[v.perm] = v
                        nxt.append(v)
            frontier = nxt
        return list(seen.values())

    def _check_index(self, i: int) -> None:
        if not (1 <= i <= self.rank):
            raise RootSystemError(f"node {i} out of range for {self.label}")


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element stored as the permutation it induces on the roots."""
    datum: CartanDatum = field(repr=False, compare=False)
    perm: tuple[int, ...]

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        # (self * other)(r) = self(other(r))
        return WeylElement(self.datum, tuple(self.perm[j] for j in other.perm))

    def inverse(self) -> "WeylElement":
        inv = [0] * len(self.perm)
        for k, j in enumerate(self.perm):
            inv[j] = k
        return WeylElement(self.datum, tuple(inv))

    def act_on_root(self, root: Sequence[int]) -> Vector:
        d = self.datum
        return d.roots[self.perm[d._root_index[tuple(root)]]]

    def act_on_weight(self, weight: Sequence[int]) -> Vector:
        out = tuple(weight)
        for i in reversed(self.reduced_word()):
            out = self.datum.reflect_weight(i, out)
        return out

    def length(self) -> int:
        n = self.datum.num_positive_roots
        return sum(1 for k in range(n) if self.perm[k] >= n)

    def has_right_descent(self, i: int) -> bool:
        n = self.datum.num_positive_roots
        k = self.datum._root_index[_unit(i - 1, self.datum.rank)]
        return self.perm[k] >= n

    def reduced_word(self) -> tuple[int, ...]:
        word: list[int] = []
        w = self
        while w.length() > 0:
            for i in range(1, self.datum.rank + 1):
                if w.has_right_descent(i):
                    word.append(i)
                    w = w * self.datum.simple_reflection(i)
                    break
        return tuple(reversed(word))

    def sign(self) -> int:
        return -1 if self.length() % 2 else 1


def _unit(i: int, n: int) -> Vector:
    return tuple(1 if j == i else 0 for j in range(n))


def _inverse(m) -> list[list[Fraction]]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        piv = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def build_cartan(series: str, rank: int) -> CartanDatum:
    series = series.upper()
    return CartanDatum(series, rank, _cartan_matrix(series, rank))


def parse_series(label: str) -> CartanDatum:
    """Parse labels such as ``"G2"`` or ``"A3"``."""
    label = label.strip().upper()
    if len(label) < 2 or not label[1:].isdigit():
        raise RootSystemError(f"cannot parse root system label {label!r}")
    return build_cartan(label[0], int(label[1:]))


@dataclass(frozen=True)
class ReducedWord:
    datum: CartanDatum = field(compare=False, repr=False)
    letters: tuple[int, ...]

    def __post_init__(self):
        w = self.datum.from_word(self.letters)
        if w.length() != len(self.letters):
            raise RootSystemError(f"word {self.letters} is not reduced")

    @property
    def target(self) -> WeylElement:
        return self.datum.from_word(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def dual(self) -> "ReducedWord":
        return ReducedWord(self.datum, tuple(self.datum.star(i) for i in self.letters))


@dataclass(frozen=True)
class ConvexOrder:
    word: ReducedWord
    roots: tuple[Vector, ...]
    coroots: tuple[Vector, ...]
    betas: tuple[Vector, ...]

    def index_of(self, root: Sequence[int]) -> int:
        """1-based position of a positive root in the order."""
        return self.roots.index(tuple(root)) + 1


def long_word(datum: CartanDatum, letters: Sequence[int]) -> ReducedWord:
    """A reduced word for w_0; raises if the letters are not one."""
    word = ReducedWord(datum, tuple(letters))
    if len(word) != datum.num_positive_roots:
        raise RootSystemError(f"word {word.letters} does not express w_0")
    return word


def convex_order(word: ReducedWord) -> ConvexOrder:
    """gamma_j = s_{i_N} ... s_{i_{j+1}}(alpha_{i_j}) and beta_k = s_{i_1}...s_{i_{k-1}}(alpha_{i_k}^vee)."""
    d = word.datum
    letters = word.letters
    N = len(letters)
    if N != d.num_positive_roots:
        raise RootSystemError(f"word {letters} does not express w_0")
    gammas = []
    for j in range(N):
        r = _unit(letters[j] - 1, d.rank)
        for i in letters[j + 1:]:
            r = d.reflect_root(i, r)
        gammas.append(r)
    betas = []
    for k in range(N):
        r = _unit(letters[k] - 1, d.rank)
        for i in reversed(letters[:k]):
            r = d.reflect_root(i, r)
        betas.append(d.coroot_of(r))
    if sorted(gammas) != sorted(d.positive_roots):
        raise RootSystemError("convex order is not a permutation of the positive roots")
    return ConvexOrder(word, tuple(gammas), tuple(d.coroot_of(g) for g in gammas),
                       tuple(betas))


def gelfand_tsetlin_word(r: int) -> tuple[int, ...]:
    """(1,2,...,r, 1,2,...,r-1, ..., 1,2, 1)."""
    out: list[int] = []
    for top in range(r, 0, -1):
        out.extend(range(1, top + 1))
    return tuple(out)


def all_long_words(datum: CartanDatum) -> list[tuple[int, ...]]:
    """Every reduced word of w_0 (feasible for the small ranks in scope)."""
    N = datum.num_positive_roots
    out: list[tuple[int, ...]] = []

    def grow(prefix: tuple[int, ...], w: WeylElement):
        if len(prefix) == N:
            out.append(prefix)
            return
        for i in range(1, datum.rank + 1):
            if not w.has_right_descent(i):
                grow(prefix + (i,), w * datum.simple_reflection(i))

    grow((), datum.identity())
    return out
