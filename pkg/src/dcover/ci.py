"""Complete intersections Z = V(fa, fb) and graded pieces of I_Z^2.

For a complete intersection the symbolic square equals the ordinary square,
so everything here works with the three generators fa^2, fa*fb, fb^2 and
their two Koszul-type syzygies in degrees 2a+b and a+2b.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DegenerateDecompositionError, NotInIdealSquareError
from .linalg import Matrix
from .polyring import Poly, Ring, from_coefficients, h, monomial_exponents


@dataclass(frozen=True)
class CompleteIntersection:
    """Ordered generators (fa, fb) with deg fa = a <= deg fb = b.

    ``a == 0`` encodes Z = empty: fa is then a nonzero constant.
    """

    fa: Poly
    fb: Poly

    def __post_init__(self):
        ring = self.fa.ring
        if self.fb.ring != ring:
            raise ValueError("generators live in different rings")
        if not ring.unit_weights:
            raise ValueError("complete intersections live in a unit-weight ring")
        if self.fa.is_zero() or self.fb.is_zero():
            raise ValueError("generators must be nonzero")
        if self.fa.degree > self.fb.degree:
            raise ValueError(f"need deg fa <= deg fb, got {self.fa.degree} > {self.fb.degree}")
        if self.fb.degree == 0:
            raise ValueError("fb must have positive degree")
        if self.fa.degree >= 1 and _divides(self.fa, self.fb):
            raise ValueError("fa divides fb; not a complete intersection")

    @property
    def ring(self) -> Ring:
        return self.fa.ring

    @property
    def a(self) -> int:
        return self.fa.degree

    @property
    def b(self) -> int:
        return self.fb.degree

    @property
    def n(self) -> int:
        return self.ring.n

    def is_empty_locus(self) -> bool:
        return self.a == 0


@dataclass(frozen=True)
class I2Decomposition:
    """``scalar * g == A*fa^2 + 2*B*fa*fb + C*fb^2`` with C normalized to 1."""

    A: Poly
    B: Poly
    C: object
    degree: int
    scalar: object

    def reconstruct(self, ci: CompleteIntersection) -> Poly:
        """Recover the decomposed polynomial g itself."""
        F = ci.ring.field
        total = self.A * ci.fa ** 2 + (self.B * ci.fa * ci.fb).scale(2) + ci.fb ** 2 * self.C
        return total.scale(F.inv(self.scalar))


def i2_dim_formula(n: int, a: int, b: int, m: int) -> int:
    """dim of the degree-m piece of I_Z^2 read off the free resolution."""
    if n < 1 or a < 1 or b < a:
        raise ValueError(f"need n >= 1 and 1 <= a <= b, got n={n}, a={a}, b={b}")
    return (h(n, m - 2 * a) + h(n, m - a - b) + h(n, m - 2 * b)
            - h(n, m - 2 * a - b) - h(n, m - a - 2 * b))


def _piece_array(gens: list[Poly], m: int, ring: Ring) -> tuple[list, list]:
    # row labels: degree-m exponents; column labels: (generator index, mu)
    rows = monomial_exponents(ring, m)
    cols = []
    for gi, g in enumerate(gens):
        if g.is_zero():
            continue
        for mu in monomial_exponents(ring, m - g.degree):
            cols.append((gi, mu))
    return list(rows), cols


def graded_piece_matrix(gens: list[Poly], m: int, scales: list | None = None) -> tuple[Matrix, list]:
    """Matrix whose columns are ``scale_i * g_i * mu`` written in degree m.

    Also returns the column labels (generator index, multiplier exponent).
    """
    ring = gens[0].ring
    F = ring.field
    rows, cols = _piece_array(gens, m, ring)
    index = {e: i for i, e in enumerate(rows)}
    nr, nc = len(rows), len(cols)
    flat = [F.zero] * (nr * nc)
    scaled = [g if scales is None else g.scale(scales[i]) for i, g in enumerate(gens)]
    for j, (gi, mu) in enumerate(cols):
        for e, c in scaled[gi].terms.items():
            flat[index[tuple(x + y for x, y in zip(e, mu))] * nc + j] = c
    return Matrix(nr, nc, tuple(flat), F), cols


def _piece_rank(gens: list[Poly], m: int) -> tuple[int, int]:
    """(rank, number of columns) of the degree-m span of ``gens``."""
    ring = gens[0].ring
    p = ring.field.p
    if p is None or p >= linalg._INT64_SAFE:
        mat, cols = graded_piece_matrix(gens, m)
        return linalg.rank(mat), len(cols)
    rows, cols = _piece_array(gens, m, ring)
    index = {e: i for i, e in enumerate(rows)}
    arr = np.zeros((len(cols), len(rows)), dtype=np.int64)
    for j, (gi, mu) in enumerate(cols):
        for e, c in gens[gi].terms.items():
            arr[j, index[tuple(x + y for x, y in zip(e, mu))]] = c
    if arr.size == 0:
        return 0, len(cols)
    return linalg.rank_of_array(arr, p), len(cols)


def _square_gens(ci: CompleteIntersection) -> list[Poly]:
    return [ci.fa ** 2, ci.fa * ci.fb, ci.fb ** 2]


def i2_dim_oracle(ci: CompleteIntersection, m: int) -> int:
    """Brute-force rank of the degree-m span of fa^2, fa*fb, fb^2."""
    return _piece_rank(_square_gens(ci), m)[0]


def decomposition_kernel_dim(ci: CompleteIntersection, m: int) -> int:
    """Nullity of (A, B, C) -> A*fa^2 + 2B*fa*fb + C*fb^2 in degree m."""
    r, unknowns = _piece_rank(_square_gens(ci), m)
    return unknowns - r


def ideal_piece_dim(gens: list[Poly], m: int) -> int:
    """Dimension of the degree-m piece of the ideal generated by ``gens``."""
    return _piece_rank(gens, m)[0]


def _divides(f: Poly, g: Poly) -> bool:
    mat, _ = graded_piece_matrix([f], g.degree)
    rows = monomial_exponents(f.ring, g.degree)
    return linalg.solve(mat, [g.coeff(e) for e in rows]) is not None


def ideal_member(ci: CompleteIntersection, p: Poly) -> tuple[Poly, Poly] | None:
    """Return (alpha, beta) with p = alpha*fa + beta*fb, or None."""
    ring = ci.ring
    if p.is_zero():
        return ring.zero(), ring.zero()
    m = p.degree
    mat, cols = graded_piece_matrix([ci.fa, ci.fb], m)
    rows = monomial_exponents(ring, m)
    x = linalg.solve(mat, [p.coeff(e) for e in rows])
    if x is None:
        return None
    alpha = from_coefficients(ring, [mu for gi, mu in cols if gi == 0], [c for (gi, _), c in zip(cols, x) if gi == 0])
    beta = from_coefficients(ring, [mu for gi, mu in cols if gi == 1], [c for (gi, _), c in zip(cols, x) if gi == 1])
    return alpha, beta


def decompose_in_i2(g: Poly, ci: CompleteIntersection) -> I2Decomposition:
    """Write g = A*fa^2 + 2B*fa*fb + C*fb^2 (deg g = 2b), then scale so C = 1.

    The returned ``scalar`` is 1/C; it multiplies g instead of introducing a
    square root into fb. When a = 0 the decomposition is not unique and the
    convention B = 0, C = 1 is used.
    """
    ring = ci.ring
    F = ring.field
    if g.ring != ring:
        raise ValueError("g and the complete intersection live in different rings")
    m = 2 * ci.b
    if g.degree is not None and g.degree != m:
        raise ValueError(f"g must have degree 2b = {m}, got {g.degree}")

    if ci.is_empty_locus():
        c = next(iter(ci.fa.terms.values()))
        A = (g - ci.fb ** 2).scale(F.inv(F.mul(c, c)))
        return I2Decomposition(A, ring.zero(), F.one, m, F.one)

    mat, cols = graded_piece_matrix(_square_gens(ci), m, scales=[1, 2, 1])
    rows = monomial_exponents(ring, m)
    x = linalg.solve(mat, [g.coeff(e) for e in rows])
    if x is None:
        raise NotInIdealSquareError(f"g does not lie in the degree-{m} piece of I_Z^2")
    parts = ([], [], [])
    for (gi, mu), c in zip(cols, x):
        parts[gi].append((mu, c))
    A = Poly(ring, dict(parts[0]))
    B = Poly(ring, dict(parts[1]))
    C = parts[2][0][1] if parts[2] else F.zero
    if not C:
        raise DegenerateDecompositionError("coefficient of fb^2 vanishes")
    inv = F.inv(C)
    return I2Decomposition(A.scale(inv), B.scale(inv), F.one, m, inv)
