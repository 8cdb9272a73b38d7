"""Exact Laurent polynomials, the coefficient ring Z[q, q^-1], and group algebras.

Everything here is bit-exact: coefficients are Python integers and the
formal symbol q never becomes a number.

>>> b = LaurentPoly.gens(("b1", "b2"))
>>> str((b[0] + b[1]) * (b[0] - b[1]))
'b1^2 - b2^2'
>>> str(QScalar.one() - QScalar.q_power(-1))
'1 - q^-1'
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

Exponent = tuple[int, ...]


class NotDivisibleError(ArithmeticError):
    pass


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def _sub_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


class LaurentPoly:
    """A Laurent polynomial with integer coefficients in named variables."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, int] | None = None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean: dict[Exponent, int] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != n:
                    raise ValueError("exponent length does not match the variables")
                if c:
                    clean[tuple(e)] = int(c)
        self.terms = clean

    # -- construction -----------------------------------------------------
    @classmethod
    def constant(cls, variables: Sequence[str], c: int) -> "LaurentPoly":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def monomial(cls, variables: Sequence[str], exps: Sequence[int], c: int = 1) -> "LaurentPoly":
        return cls(variables, {tuple(exps): c})

    @classmethod
    def gens(cls, variables: Sequence[str]) -> list["LaurentPoly"]:
        n = len(variables)
        return [cls(variables, {tuple(int(i == j) for j in range(n)): 1}) for i in range(n)]

    @classmethod
    def variable(cls, variables: Sequence[str], name: str) -> "LaurentPoly":
        return cls.gens(variables)[tuple(variables).index(name)]

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.variables != self.variables:
                raise ValueError(f"variable mismatch: {self.variables} vs {other.variables}")
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(self.variables, other)
        return NotImplemented

    # -- ring operations ----------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly(self.variables, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exponent, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exp(e1, e2)
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if not self.is_monomial() or abs(self.coefficient_of_monomial()) != 1:
                raise NotDivisibleError("only unit monomials can be inverted")
            (e, c), = self.terms.items()
            return LaurentPoly(self.variables, {tuple(-x * -n for x in e): c ** -n})
        out = LaurentPoly.constant(self.variables, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(self.variables, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.variables, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[tuple[Exponent, int]]:
        return iter(sorted(self.terms.items(), reverse=True))

    def __len__(self) -> int:
        return len(self.terms)

    # -- inspection ---------------------------------------------------------
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def coefficient_of_monomial(self) -> int:
        if not self.is_monomial():
            raise ValueError("not a monomial")
        return next(iter(self.terms.values()))

    def exponent_of_monomial(self) -> Exponent:
        if not self.is_monomial():
            raise ValueError("not a monomial")
        return next(iter(self.terms))

    def is_polynomial(self) -> bool:
        return all(x >= 0 for e in self.terms for x in e)

    def coefficient(self, exps: Sequence[int]) -> int:
        return self.terms.get(tuple(exps), 0)

    def degree_bounds(self) -> tuple[Exponent, Exponent]:
        es = list(self.terms)
        n = len(self.variables)
        return (tuple(min(e[i] for e in es) for i in range(n)),
                tuple(max(e[i] for e in es) for i in range(n)))

    # -- transformations ----------------------------------------------------
    def substitute(self, mapping: Mapping[str, "LaurentPoly"], variables: Sequence[str]) -> "LaurentPoly":
        """Replace variables by Laurent polynomials in the new variable set.

        Variables not in ``mapping`` must belong to ``variables`` and are kept.
        Negative powers are only allowed for images that are unit monomials.
        """
        variables = tuple(variables)
        images = []
        for v in self.variables:
            if v in mapping:
                img = mapping[v]
                if img.variables != variables:
                    raise ValueError("substitution image uses a different variable set")
            else:
                img = LaurentPoly.variable(variables, v)
            images.append(img)
        out = LaurentPoly(variables)
        cache: dict[tuple[int, int], LaurentPoly] = {}
        for e, c in self.terms.items():
            term = LaurentPoly.constant(variables, c)
            for k, x in enumerate(e):
                if x:
                    key = (k, x)
                    if key not in cache:
                        cache[key] = images[k] ** x
                    term = term * cache[key]
            out = out + term
        return out

    def evaluate(self, values: Mapping[str, Fraction | int] | Sequence[Fraction | int]) -> Fraction:
        if isinstance(values, Mapping):
            vals = [Fraction(values[v]) for v in self.variables]
        else:
            vals = [Fraction(v) for v in values]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = Fraction(c)
            for v, x in zip(vals, e):
                if x:
                    term *= v ** x
            total += term
        return total

    def exact_divide(self, d: "LaurentPoly") -> "LaurentPoly":
        """The quotient self / d, raising NotDivisibleError if d does not divide.

        Greedy lex-leading-term division.  The quotient's exponents are
        confined to the box [min(p)-min(d), max(p)-max(d)] coordinatewise, so
        a term outside that box proves non-divisibility.
        """
        d = self._coerce(d)
        if not d:
            raise ZeroDivisionError("division by zero polynomial")
        if not self:
            return LaurentPoly(self.variables)
        plo, phi = self.degree_bounds()
        dlo, dhi = d.degree_bounds()
        lo = _sub_exp(plo, dlo)
        hi = _sub_exp(phi, dhi)
        if any(a > b for a, b in zip(lo, hi)):
            raise NotDivisibleError("degree box is empty")
        dlead = max(d.terms)
        dlead_c = d.terms[dlead]
        rem = dict(self.terms)
        quot: dict[Exponent, int] = {}
        while rem:
            lead = max(rem)
            c = rem[lead]
            qe = _sub_exp(lead, dlead)
            if c % dlead_c or any(x < a or x > b for x, a, b in zip(qe, lo, hi)):
                raise NotDivisibleError("polynomial is not divisible")
            qc = c // dlead_c
            quot[qe] = qc
            for e, dc in d.terms.items():
                key = _add_exp(qe, e)
                v = rem.get(key, 0) - qc * dc
                if v:
                    rem[key] = v
                else:
                    rem.pop(key, None)
        return LaurentPoly(self.variables, quot)

    # -- output ---------------------------------------------------------------
    def to_str(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self:
            mono = "*".join(
                (v if x == 1 else f"{v}^{x}") for v, x in zip(self.variables, e) if x
            )
            if not mono:
                s = str(abs(c))
            elif abs(c) == 1:
                s = mono
            else:
                s = f"{abs(c)}*{mono}"
            parts.append(("-" if c < 0 else "+", s))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, s in parts[1:]:
            out += f" {sign} {s}"
        return out

    __str__ = to_str

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_str()!r})"

    def to_json(self) -> dict:
        return {"variables": list(self.variables),
                "terms": [[list(e), c] for e, c in self]}


def monomial_exponents(p: LaurentPoly) -> Exponent:
    return p.exponent_of_monomial()


class AffineForm:
    """An integer affine form c_0 + sum_k c_k m_k in the Lusztig coordinates."""

    __slots__ = ("coeffs", "const")

    def __init__(self, coeffs: Sequence[int], const: int = 0):
        self.coeffs = tuple(int(c) for c in coeffs)
        self.const = int(const)

    def __call__(self, m: Sequence[int]) -> int:
        return self.const + sum(c * x for c, x in zip(self.coeffs, m))

    def __add__(self, other):
        if isinstance(other, int):
            return AffineForm(self.coeffs, self.const + other)
        return AffineForm([a + b for a, b in zip(self.coeffs, other.coeffs)],
                          self.const + other.const)

    __radd__ = __add__

    def __neg__(self):
        return AffineForm([-c for c in self.coeffs], -self.const)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k: int):
        return AffineForm([c * k for c in self.coeffs], self.const * k)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, AffineForm) and self.coeffs == other.coeffs
                and self.const == other.const)

    def __hash__(self):
        return hash((self.coeffs, self.const))

    def to_str(self, var: str = "m", const_name: str | None = None) -> str:
        pieces = []
        if const_name is not None:
            pieces.append((1, const_name))
        elif self.const:
            pieces.append((self.const, ""))
        for k, c in enumerate(self.coeffs, start=1):
            if c:
                pieces.append((c, f"{var}_{k}"))
        if not pieces:
            return "0"
        out = ""
        for n, (c, name) in enumerate(pieces):
            mag = abs(c)
            body = name if (name and mag == 1) else (f"{mag}{name}" if name else str(mag))
            if n == 0:
                out = ("-" if c < 0 else "") + body
            else:
                out += ("-" if c < 0 else "+") + body
        return out

    def __repr__(self) -> str:
        return f"AffineForm({self.to_str()!r})"


def valuation_form(monomial: LaurentPoly) -> AffineForm:
    """val of a b-monomial when val(b_k) = m_k: the exponent-weighted sum."""
    if not monomial.is_monomial():
        raise ValueError("valuation_form expects a monomial")
    return AffineForm(monomial.exponent_of_monomial())


class QScalar:
    """An element of Z[q, q^-1]; stored as {power of q: coefficient}."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, int] | int | None = None):
        if isinstance(terms, int):
            terms = {0: terms}
        self.terms = {int(k): int(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def one(cls) -> "QScalar":
        return cls({0: 1})

    @classmethod
    def zero(cls) -> "QScalar":
        return cls()

    @classmethod
    def q_power(cls, n: int) -> "QScalar":
        return cls({n: 1})

    def _coerce(self, other):
        if isinstance(other, QScalar):
            return other
        if isinstance(other, int):
            return QScalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return QScalar(out)

    __radd__ = __add__

    def __neg__(self):
        return QScalar({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + v1 * v2
        return QScalar(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1 or abs(next(iter(self.terms.values()))) != 1:
                raise NotDivisibleError("only unit monomials in q are invertible")
            (k, v), = self.terms.items()
            return QScalar({-k * -n: v ** -n})
        out = QScalar.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def evaluate(self, q: Fraction | int) -> Fraction:
        q = Fraction(q)
        return sum((Fraction(v) * q ** k for k, v in self.terms.items()), Fraction(0))

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for n, k in enumerate(sorted(self.terms, reverse=True)):
            v = self.terms[k]
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            mag = abs(v)
            body = mono if (mono and mag == 1) else (f"{mag}*{mono}" if mono else str(mag))
            if n == 0:
                out = ("-" if v < 0 else "") + body
            else:
                out += (" - " if v < 0 else " + ") + body
        return out

    __str__ = to_str

    def __repr__(self):
        return f"QScalar({self.to_str()!r})"

    def to_json(self) -> list:
        return [[k, self.terms[k]] for k in sorted(self.terms, reverse=True)]


Q_INV = QScalar.q_power(-1)


class GroupAlgebraElement:
    """A finite formal sum of tau^mu, mu in a lattice, with QScalar coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, ...], QScalar | int] | None = None):
        clean = {}
        for mu, c in (terms or {}).items():
            if isinstance(c, int):
                c = QScalar(c)
            if c:
                clean[tuple(mu)] = c
        self.terms = clean

    @classmethod
    def monomial(cls, mu: Sequence[int], coeff: QScalar | int = 1) -> "GroupAlgebraElement":
        return cls({tuple(mu): coeff})

    @classmethod
    def one(cls, rank: int) -> "GroupAlgebraElement":
        return cls.monomial((0,) * rank)

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        out = dict(self.terms)
        for mu, c in other.terms.items():
            out[mu] = out[mu] + c if mu in out else c
        return GroupAlgebraElement(out)

    def __neg__(self):
        return GroupAlgebraElement({mu: -c for mu, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (QScalar, int)):
            return GroupAlgebraElement({mu: c * other for mu, c in self.terms.items()})
        out: dict[tuple[int, ...], QScalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mu = _add_exp(m1, m2)
                prod = c1 * c2
                out[mu] = out[mu] + prod if mu in out else prod
        return GroupAlgebraElement(out)

    __rmul__ = __mul__

    def add_term(self, mu: Sequence[int], c: QScalar) -> None:
        """In-place accumulation (used by the crystal sums)."""
        mu = tuple(mu)
        v = self.terms.get(mu)
        v = c if v is None else v + c
        if v:
            self.terms[mu] = v
        else:
            self.terms.pop(mu, None)

    def shift(self, mu: Sequence[int]) -> "GroupAlgebraElement":
        return GroupAlgebraElement({_add_exp(k, tuple(mu)): c for k, c in self.terms.items()})

    def coefficient(self, mu: Sequence[int]) -> QScalar:
        return self.terms.get(tuple(mu), QScalar.zero())

    def at_identity(self) -> QScalar:
        tot = QScalar.zero()
        for c in self.terms.values():
            tot = tot + c
        return tot

    def __eq__(self, other):
        return isinstance(other, GroupAlgebraElement) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self) -> list[tuple[tuple[int, ...], QScalar]]:
        return sorted(self.terms.items())

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*tau^{list(mu)}" for mu, c in self.items())

    __str__ = to_str

    def __repr__(self):
        return f"GroupAlgebraElement({len(self.terms)} terms)"

    def to_json(self) -> list:
        return [{"weight": list(mu), "coefficient": c.to_str()} for mu, c in self.items()]


def sum_polys(polys: Iterable[LaurentPoly], variables: Sequence[str]) -> LaurentPoly:
    out: dict[Exponent, int] = {}
    for p in polys:
        for e, c in p.terms.items():
            out[e] = out.get(e, 0) + c
    return LaurentPoly(variables, out)
