"""Finite-field points of projective varieties and sampled smoothness checks."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import BadPrimeError, CapExceededError
from .polyring import GF, Poly

DEFAULT_ENUM_CAP = 10 ** 6
DEFAULT_EXHAUSTIVE_CAP = 20_000

NO_SINGULAR = "no-singular-point-found"
SINGULAR = "singular-point-found"
NO_POINT = "no-rational-point-found"


@dataclass(frozen=True)
class Verdict:
    status: str
    point: tuple | None = None
    prime: int = 0
    method: str = "exhaustive"
    points_found: int = 0

    @property
    def ok(self) -> bool:
        return self.status == NO_SINGULAR

    def to_json(self) -> dict:
        out = {"status": self.status, "prime": self.prime, "method": self.method, "points_found": self.points_found}
        if self.point is not None:
            out["point"] = list(self.point)
        return out


def projective_size(n: int, q: int) -> int:
    return (q ** (n + 1) - 1) // (q - 1)


def reduce_mod(p: Poly, prime: int) -> Poly:
    """Reduce to F_prime, rejecting primes that divide a denominator."""
    F = GF(prime)
    if p.field.p == prime:
        return p
    if p.field.p is None:
        for c in p.terms.values():
            if Fraction(c).denominator % prime == 0:
                raise BadPrimeError(f"{prime} divides a denominator of {p}")
    return p.change_field(F)


def _check_prime(prime: int):
    try:
        GF(prime)
    except ValueError as exc:
        raise BadPrimeError(str(exc)) from None


def all_points(n: int, q: int, cap: int = DEFAULT_ENUM_CAP) -> np.ndarray:
    """Canonical representatives of P^n(F_q): first nonzero coordinate is 1."""
    total = projective_size(n, q)
    if total > cap:
        raise CapExceededError(f"|P^{n}(F_{q})| = {total} exceeds cap {cap}")
    blocks = []
    for i in range(n + 1):
        tail = n - i
        free = np.array(list(itertools.product(range(q), repeat=tail)), dtype=np.int64).reshape(q ** tail, tail)
        block = np.zeros((free.shape[0], n + 1), dtype=np.int64)
        block[:, i] = 1
        block[:, i + 1:] = free
        blocks.append(block)
    return np.concatenate(blocks)


def eval_many(p: Poly, pts: np.ndarray, q: int) -> np.ndarray:
    """Values of p (already over F_q) at each row of ``pts``."""
    out = np.zeros(pts.shape[0], dtype=np.int64)
    if p.is_zero():
        return out
    maxdeg = max(max(e) for e in p.terms)
    powers = [np.ones_like(pts)]
    for _ in range(maxdeg):
        powers.append(powers[-1] * pts % q)
    for e, c in p.terms.items():
        term = np.full(pts.shape[0], int(c) % q, dtype=np.int64)
        for i, k in enumerate(e):
            if k:
                term = term * powers[k][:, i] % q
        out = (out + term) % q
    return out


def _vanishing(polys: Sequence[Poly], pts: np.ndarray, q: int) -> np.ndarray:
    mask = np.ones(pts.shape[0], dtype=bool)
    for p in polys:
        mask &= eval_many(p, pts, q) == 0
    return pts[mask]


def enumerate_points(polys: Sequence[Poly], prime: int, cap: int = DEFAULT_ENUM_CAP, n: int | None = None) -> list[tuple]:
    """All points of V(polys) in P^n(F_prime)."""
    _check_prime(prime)
    if n is None:
        if not polys:
            raise ValueError("give n when the system is empty")
        n = polys[0].ring.nvars - 1
    reduced = [reduce_mod(p, prime) for p in polys]
    pts = _vanishing(reduced, all_points(n, prime, cap), prime)
    return [tuple(int(x) for x in row) for row in pts]


def _rank_mod(rows: list[list[int]], q: int) -> int:
    rows = [r[:] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] % q), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, q)
        for i in range(rank + 1, len(rows)):
            f = rows[i][c] * inv % q
            if f:
                rows[i] = [(x - f * y) % q for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _line_points(rng: random.Random, n: int, q: int) -> np.ndarray:
    while True:
        P = [rng.randrange(q) for _ in range(n + 1)]
        Q = [rng.randrange(q) for _ in range(n + 1)]
        if _rank_mod([P, Q], q) == 2:
            break
    st = [(1, t) for t in range(q)] + [(0, 1)]
    return np.array([[(s * a + t * b) % q for a, b in zip(P, Q)] for s, t in st], dtype=np.int64)


def jacobian_sample(polys: Sequence[Poly], prime: int, trials: int = 50, seed: int = 0,
                    exhaustive_cap: int = DEFAULT_EXHAUSTIVE_CAP) -> Verdict:
    """Look for points of V(polys) over F_prime where the Jacobian drops rank.

    Exhaustive when P^n(F_prime) has at most ``exhaustive_cap`` points,
    otherwise the points on ``trials`` random lines are examined.
    """
    _check_prime(prime)
    n = polys[0].ring.nvars - 1
    reduced = [reduce_mod(p, prime) for p in polys]
    if any(p.is_zero() for p in reduced):
        raise BadPrimeError(f"a polynomial vanishes identically mod {prime}")
    grads = [[p.derivative(i) for i in range(n + 1)] for p in reduced]
    if projective_size(n, prime) <= exhaustive_cap:
        pts = _vanishing(reduced, all_points(n, prime), prime)
        method = "exhaustive"
    else:
        rng = random.Random(seed)
        found = [_vanishing(reduced, _line_points(rng, n, prime), prime) for _ in range(trials)]
        pts = np.concatenate(found) if found else np.zeros((0, n + 1), dtype=np.int64)
        method = f"random-lines:{trials}"
    if pts.shape[0] == 0:
        return Verdict(NO_POINT, None, prime, method, 0)
    values = [[eval_many(g, pts, prime) for g in row] for row in grads]
    for j in range(pts.shape[0]):
        jac = [[int(v[j]) for v in row] for row in values]
        if _rank_mod(jac, prime) < len(polys):
            return Verdict(SINGULAR, tuple(int(x) for x in pts[j]), prime, method, pts.shape[0])
    return Verdict(NO_SINGULAR, None, prime, method, pts.shape[0])
