"""Double covers y^2 = g2d(x) of P^n and divisors in |kL| on them.

The cover is never built as a scheme. A divisor W in |kL| is the pair
(fk, fkd) standing for V(y*fkd - fk) inside P(1^{n+1}, d); its image in P^n
is V(fk^2 - g2d*fkd^2), double along Z = V(fkd, fk).
"""

from __future__ import annotations

from dataclasses import dataclass

from .ci import CompleteIntersection
from .errors import ComponentDivisorError
from .polyring import Poly, Ring, monomial_basis


@dataclass(frozen=True)
class DoubleCover:
    n: int
    d: int
    g2d: Poly

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("half-degree d must be positive")
        if self.g2d.ring.nvars != self.n + 1 or not self.g2d.ring.unit_weights:
            raise ValueError(f"branch equation must live in the coordinate ring of P^{self.n}")
        if self.g2d.is_zero() or self.g2d.degree != 2 * self.d:
            raise ValueError(f"branch equation must be a nonzero form of degree {2 * self.d}")

    @property
    def ring(self) -> Ring:
        return self.g2d.ring

    def weighted_ring(self) -> Ring:
        return Ring.weighted_cover(self.n, self.d, self.ring.field)


@dataclass(frozen=True)
class CoverDivisor:
    """W = V(y*fkd - fk) on the cover; fk has degree k, fkd degree k - d."""

    cover: DoubleCover
    fk: Poly
    fkd: Poly
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("k must be non-negative")
        if self.fk.is_zero() and self.fkd.is_zero():
            raise ValueError("fk and fkd are both zero")
        if not self.fk.is_zero() and self.fk.degree != self.k:
            raise ValueError(f"fk must have degree {self.k}")
        if not self.fkd.is_zero() and self.fkd.degree != self.k - self.cover.d:
            raise ValueError(f"fkd must have degree {self.k - self.cover.d}")


def isotypic_basis(cover: DoubleCover, k: int) -> tuple[list[Poly], list[Poly]]:
    """Bases of the invariant and anti-invariant parts of H^0(V, kL).

    The anti-invariant sections are y*mu; only the x-monomials mu are returned.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    return monomial_basis(cover.ring, k), monomial_basis(cover.ring, k - cover.d)


def divisor_image(w: CoverDivisor) -> tuple[Poly, CompleteIntersection]:
    """Equation of the image W^b and its double locus Z = (fkd, fk)."""
    if w.k < w.cover.d:
        raise ValueError("need k >= d")
    if w.fk.is_zero() or w.fkd.is_zero():
        raise ComponentDivisorError("W is a pull-back or contains the ramification divisor")
    g = w.fk ** 2 - w.cover.g2d * w.fkd ** 2
    return g, CompleteIntersection(w.fkd, w.fk)


def involution_conjugate(w: CoverDivisor) -> CoverDivisor:
    """Image of W under (x, y) -> (x, -y)."""
    return CoverDivisor(w.cover, w.fk, -w.fkd, w.k)


def embed_weighted(p: Poly, wring: Ring) -> Poly:
    """View a form in x as an element of P(1^{n+1}, d) (y-exponent zero)."""
    return Poly(wring, {e + (0,): c for e, c in p.terms.items()})


def reduce_y_square(p: Poly, g2d: Poly) -> Poly:
    """Normal form of p modulo y^2 - g2d: every y^2 is replaced by g2d.

    ``p`` lives in the weighted ring with y last; the result has y-degree <= 1.
    """
    wring = p.ring
    gw = embed_weighted(g2d, wring)
    out = wring.zero()
    powers = {0: wring.one()}
    by_degree: dict = {}
    for e, c in p.terms.items():
        by_degree.setdefault(e[-1], {})[e] = c
    for ydeg, terms in by_degree.items():
        q, r = divmod(ydeg, 2)
        if q not in powers:
            powers[q] = gw ** q
        lowered = Poly(wring, {e[:-1] + (r,): c for e, c in terms.items()})
        out = out + lowered * powers[q]
    return out


def pullback_splits(w: CoverDivisor) -> bool:
    """Check (fk - y*fkd)(fk + y*fkd) == g modulo y^2 - g2d in the weighted ring."""
    g, _ = divisor_image(w)
    wring = w.cover.weighted_ring()
    y = wring.var(wring.nvars - 1)
    fk = embed_weighted(w.fk, wring)
    fkd = embed_weighted(w.fkd, wring)
    lhs = reduce_y_square((fk - y * fkd) * (fk + y * fkd), w.cover.g2d)
    return lhs == embed_weighted(g, wring)


def h0_kL(cover: DoubleCover, k: int) -> int:
    plus, minus = isotypic_basis(cover, k)
    return len(plus) + len(minus)
