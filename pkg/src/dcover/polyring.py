"""Exact sparse homogeneous polynomials over Q or a prime field.

Every polynomial is homogeneous for a positive integer grading (unit weights
give ordinary P^n; one heavier variable gives P(1^{n+1}, d)). Terms are kept
in a dict keyed by dense exponent tuples; the canonical order is graded
lexicographic, descending, so ``x0`` beats ``x1`` beats ``x2``.
"""

from __future__ import annotations

import json
import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Sequence

from sympy import isprime

from .errors import DegreeMismatchError, RingMismatchError

Exponent = tuple


def h(n: int, m: int) -> int:
    """Dimension of degree-m forms on P^n; zero for negative m."""
    if m < 0:
        return 0
    return comb(n + m, n)


@dataclass(frozen=True)
class Field:
    """Coefficient field: the rationals (``p is None``) or F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not (isinstance(self.p, int) and self.p >= 2 and isprime(self.p)):
            raise ValueError(f"field characteristic must be prime, got {self.p!r}")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def __call__(self, x):
        """Coerce an int, Fraction or ``"num/den"`` string into the field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p is None:
            if isinstance(x, Fraction):
                return x
            if isinstance(x, int):
                return Fraction(x)
            raise TypeError(f"cannot coerce {x!r} into Q")
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, int):
            return x % self.p
        raise TypeError(f"cannot coerce {x!r} into F_{self.p}")

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a if self.p is None else pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_square(self, a) -> bool:
        if self.p is None:
            a = Fraction(a)
            if a < 0:
                return False
            return _is_int_square(a.numerator) and _is_int_square(a.denominator)
        if a == 0 or self.p == 2:
            return True
        return pow(a, (self.p - 1) // 2, self.p) == 1

    def to_json(self):
        return "Q" if self.p is None else {"p": self.p}

    @classmethod
    def from_json(cls, obj) -> Field:
        if obj == "Q":
            return QQ
        if isinstance(obj, dict) and "p" in obj:
            return cls(int(obj["p"]))
        raise ValueError(f"bad field descriptor {obj!r}")

    @classmethod
    def parse(cls, text: str) -> Field:
        """Parse ``Q`` or ``Fp:<prime>`` (as accepted on the command line)."""
        text = text.strip()
        if text in ("Q", "QQ"):
            return QQ
        if text.startswith("Fp:"):
            return cls(int(text[3:]))
        raise ValueError(f"field must be 'Q' or 'Fp:<prime>', got {text!r}")

    def __str__(self):
        return "Q" if self.p is None else f"Fp:{self.p}"


def _is_int_square(n: int) -> bool:
    from math import isqrt

    return n >= 0 and isqrt(n) ** 2 == n


QQ = Field()


def GF(p: int) -> Field:
    return Field(p)


@dataclass(frozen=True)
class Ring:
    """Graded polynomial ring context: variable count, weights and field."""

    nvars: int
    weights: tuple = None
    field: Field = QQ
    names: tuple = dataclasses.field(default=None, compare=False)

    def __post_init__(self):
        if self.nvars < 2:
            raise ValueError("need at least two variables")
        weights = (1,) * self.nvars if self.weights is None else tuple(int(w) for w in self.weights)
        if len(weights) != self.nvars or any(w < 1 for w in weights):
            raise ValueError(f"bad weights {weights!r} for {self.nvars} variables")
        object.__setattr__(self, "weights", weights)
        names = self.names or tuple(f"x{i}" for i in range(self.nvars))
        if len(names) != self.nvars:
            raise ValueError("one name per variable")
        object.__setattr__(self, "names", tuple(names))

    @classmethod
    def projective(cls, n: int, field: Field = QQ) -> Ring:
        """Coordinate ring of P^n."""
        return cls(n + 1, None, field)

    @classmethod
    def weighted_cover(cls, n: int, d: int, field: Field = QQ) -> Ring:
        """Coordinate ring of P(1^{n+1}, d) with the heavy variable ``y`` last."""
        names = tuple(f"x{i}" for i in range(n + 1)) + ("y",)
        return cls(n + 2, (1,) * (n + 1) + (d,), field, names)

    @property
    def n(self) -> int:
        """Projective dimension."""
        return self.nvars - 1

    @property
    def unit_weights(self) -> bool:
        return all(w == 1 for w in self.weights)

    def with_field(self, field: Field) -> Ring:
        return Ring(self.nvars, self.weights, field, self.names)

    def wdeg(self, e: Sequence[int]) -> int:
        return sum(w * x for w, x in zip(self.weights, e))

    def zero(self) -> Poly:
        return Poly(self, {})

    def const(self, c) -> Poly:
        return Poly(self, {(0,) * self.nvars: c})

    def one(self) -> Poly:
        return self.const(1)

    def var(self, i: int) -> Poly:
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): 1})

    def gens(self) -> list[Poly]:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, e: Sequence[int], c=1) -> Poly:
        return Poly(self, {tuple(e): c})

    def to_json(self):
        return {"vars": self.nvars, "weights": list(self.weights), "field": self.field.to_json()}

    @classmethod
    def from_json(cls, obj) -> Ring:
        return cls(int(obj["vars"]), tuple(obj.get("weights") or [1] * int(obj["vars"])), Field.from_json(obj["field"]))


class Poly:
    """Homogeneous polynomial with exact coefficients.

    Immutable by convention: operations return new objects and never touch
    ``_terms`` in place. ``degree`` is ``None`` for the zero polynomial.
    """

    __slots__ = ("ring", "_terms", "degree")

    def __init__(self, ring: Ring, terms: Mapping[Exponent, object] | None = None, *, _trusted: bool = False):
        self.ring = ring
        if _trusted:
            self._terms = terms
        else:
            F = ring.field
            clean = {}
            for e, c in (terms or {}).items():
                e = tuple(int(x) for x in e)
                if len(e) != ring.nvars or any(x < 0 for x in e):
                    raise ValueError(f"bad exponent vector {e!r}")
                c = F(c)
                if c:
                    clean[e] = F.add(clean[e], c) if e in clean else c
            self._terms = {e: c for e, c in clean.items() if c}
        degree = None
        for e in self._terms:
            w = ring.wdeg(e)
            if degree is None:
                degree = w
            elif w != degree:
                raise DegreeMismatchError("polynomial is not homogeneous")
        self.degree = degree

    # basic accessors

    @property
    def terms(self) -> Mapping[Exponent, object]:
        return self._terms

    @property
    def field(self) -> Field:
        return self.ring.field

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def coeff(self, e: Sequence[int]):
        return self._terms.get(tuple(e), self.ring.field.zero)

    def items(self) -> list[tuple[Exponent, object]]:
        """Terms in canonical (descending graded-lex) order."""
        return sorted(self._terms.items(), key=lambda t: (self.ring.wdeg(t[0]), t[0]), reverse=True)

    def leading(self) -> tuple[Exponent, object]:
        return self.items()[0]

    def is_constant(self) -> bool:
        return self.degree == 0

    # arithmetic

    def _check(self, other: Poly):
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if other.ring != self.ring:
            raise RingMismatchError("polynomials live in different rings")

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            self._check(other)
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        if self.degree is not None and other.degree is not None and self.degree != other.degree:
            raise DegreeMismatchError(f"cannot add degree {self.degree} and degree {other.degree}")
        F = self.ring.field
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = F.add(out[e], c) if e in out else c
            if s:
                out[e] = s
            else:
                del out[e]
        return Poly(self.ring, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Poly(self.ring, {e: F.neg(c) for e, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> Poly:
        F = self.ring.field
        c = F(c)
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {e: F.mul(v, c) for e, v in self._terms.items()}, _trusted=True)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        if not self._terms or not other._terms:
            return self.ring.zero()
        p = self.ring.field.p
        out: dict = {}
        get = out.get
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = get(e, 0) + c1 * c2
        if p is None:
            out = {e: c for e, c in out.items() if c}
        else:
            out = {e: c % p for e, c in out.items() if c % p}
        return Poly(self.ring, out, _trusted=True)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, e: Sequence[int]) -> Poly:
        """Multiply by the monomial with exponent ``e``."""
        e = tuple(e)
        return Poly(self.ring, {tuple(a + b for a, b in zip(k, e)): c for k, c in self._terms.items()}, _trusted=True)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, (int, Fraction)):
                return self == self.ring.const(other)
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        return hash((self.ring, frozenset(self._terms.items())))

    def is_proportional(self, other: Poly) -> bool:
        """True iff both are nonzero and ``other = c * self`` for a field scalar c."""
        self._check(other)
        if not self._terms or not other._terms or self._terms.keys() != other._terms.keys():
            return False
        F = self.ring.field
        e0 = next(iter(self._terms))
        ratio = F.div(other._terms[e0], self._terms[e0])
        return all(F.mul(c, ratio) == other._terms[e] for e, c in self._terms.items())

    def change_field(self, field: Field) -> Poly:
        """Map coefficients into ``field``.

        Q -> F_p reduces numerator/denominator; F_q -> F_p reduces the integer
        representative in ``[0, q)``; F_p -> Q lifts that representative.
        """
        ring = self.ring.with_field(field)
        if field.p is None:
            return Poly(ring, {e: Fraction(c) for e, c in self._terms.items()})
        return Poly(ring, {e: field(c) for e, c in self._terms.items()})

    # evaluation and derivatives

    def __call__(self, *point):
        return evaluate(self, point[0] if len(point) == 1 and isinstance(point[0], (list, tuple)) else point)

    def derivative(self, i: int) -> Poly:
        F = self.ring.field
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                v = F.mul(c, F(e[i]))
                if v:
                    f = list(e)
                    f[i] -= 1
                    out[tuple(f)] = v
        return Poly(self.ring, out, _trusted=True)

    # serialization

    def to_json(self) -> dict:
        F = self.ring.field
        terms = []
        for e, c in self.items():
            if F.p is None:
                c = c.numerator if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
            terms.append({"e": list(e), "c": c})
        return {"ring": self.ring.to_json(), "terms": terms}

    @classmethod
    def from_json(cls, obj, ring: Ring | None = None) -> Poly:
        ring = ring or Ring.from_json(obj["ring"])
        terms: dict = {}
        for t in obj["terms"]:
            c = t["c"]
            c = ring.field(Fraction(c) if isinstance(c, str) else int(c))
            e = tuple(t["e"])
            terms[e] = ring.field.add(terms[e], c) if e in terms else c
        return cls(ring, terms)

    def serialize(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    def __str__(self):
        if not self._terms:
            return "0"
        F = self.ring.field
        names = self.ring.names
        parts = []
        for e, c in self.items():
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            if F.p is not None and c > F.p // 2:
                c = c - F.p
            neg = c < 0
            a = -c if neg else c
            if mono:
                body = mono if a == 1 else f"{a}*{mono}"
            else:
                body = str(a)
            parts.append(("- " if neg else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self):
        return f"Poly({self})"


def poly_add(p: Poly, q: Poly) -> Poly:
    return p + q


def poly_mul(p: Poly, q: Poly) -> Poly:
    return p * q


@lru_cache(maxsize=None)
def _exponents(weights: tuple, m: int) -> tuple:
    if m < 0:
        return ()
    out = []

    def rec(i, left, acc):
        if i == len(weights) - 1:
            if left % weights[i] == 0:
                out.append(acc + (left // weights[i],))
            return
        for k in range(left // weights[i], -1, -1):
            rec(i + 1, left - k * weights[i], acc + (k,))

    rec(0, m, ())
    return tuple(out)


def monomial_exponents(ring: Ring, m: int) -> tuple:
    """Exponent vectors of weighted degree m, canonical order."""
    return _exponents(ring.weights, m)


def monomial_basis(ring: Ring, m: int) -> list[Poly]:
    return [Poly(ring, {e: ring.field.one}, _trusted=True) for e in monomial_exponents(ring, m)]


def evaluate(p: Poly, point: Sequence):
    F = p.ring.field
    if len(point) != p.ring.nvars:
        raise ValueError(f"point has {len(point)} coordinates, ring has {p.ring.nvars} variables")
    point = [F(x) for x in point]
    total = F.zero
    for e, c in p.terms.items():
        v = c
        for x, k in zip(point, e):
            if k:
                v = v * x ** k
        total = total + v
    return total if F.p is None else total % F.p


def jacobian(p: Poly) -> list[Poly]:
    return [p.derivative(i) for i in range(p.ring.nvars)]


def coefficient_vector(p: Poly, exponents: Sequence[Exponent], index: Mapping[Exponent, int] | None = None) -> list:
    """Coordinates of ``p`` in the monomial basis given by ``exponents``."""
    index = index or {e: i for i, e in enumerate(exponents)}
    vec = [p.ring.field.zero] * len(exponents)
    for e, c in p.terms.items():
        vec[index[e]] = c
    return vec


def from_coefficients(ring: Ring, exponents: Sequence[Exponent], coeffs: Iterable) -> Poly:
    return Poly(ring, {e: c for e, c in zip(exponents, coeffs) if c})
