"""Seeded random instances and the fixed named examples.

Randomness comes from :class:`random.Random` (MT19937, Python's documented
seeding of int and str seeds); sub-streams are derived by seeding with
``"<seed>/<tag>"`` strings so a config always yields the same instance.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace

from .census import TOTARO_WEIGHTS, totaro_equation
from .ci import CompleteIntersection, ideal_piece_dim
from .cover import CoverDivisor, DoubleCover
from .errors import BadPrimeError, RetryCapError
from .points import DEFAULT_EXHAUSTIVE_CAP, SINGULAR, Verdict, jacobian_sample, projective_size
from .points import enumerate_points  # noqa: F401  (re-exported: point enumeration for generated instances)
from .polyring import GF, QQ, Field, Poly, Ring, from_coefficients, h, monomial_exponents

PRNG_NAME = "python-random-mt19937"


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    field: Field = GF(101)
    bound: int = 10
    smooth_prime: int = 7
    trials: int = 50
    retry_cap: int = 100

    def __post_init__(self):
        if self.bound < 1:
            raise ValueError("coefficient bound must be >= 1")
        if self.smooth_prime < 3:
            raise ValueError("smoothness prime must be >= 3")

    def child(self, tag) -> GenConfig:
        return replace(self, seed=random.Random(f"{self.seed}/{tag}").getrandbits(64))

    def rng(self) -> random.Random:
        return random.Random(self.seed)

    def check_prime(self, n: int) -> int:
        """Prime used for smoothness sampling of instances in P^n.

        The working field itself when it is a small prime field, otherwise
        ``smooth_prime`` applied to integer representatives.
        """
        p = self.field.p
        if p is not None and projective_size(n, p) <= DEFAULT_EXHAUSTIVE_CAP:
            return p
        return self.smooth_prime


def random_poly(ring: Ring, degree: int, cfg: GenConfig) -> Poly:
    """Dense random form; coefficients in [-bound, bound] over Q, uniform over F_p."""
    if degree < 0:
        raise ValueError("degree must be non-negative")
    rng = cfg.rng()
    exps = monomial_exponents(ring, degree)
    p = ring.field.p
    while True:
        if p is None:
            coeffs = [rng.randint(-cfg.bound, cfg.bound) for _ in exps]
        else:
            coeffs = [rng.randrange(p) for _ in exps]
        poly = from_coefficients(ring, exps, coeffs)
        if not poly.is_zero():
            return poly


def ci_smoothness(ci: CompleteIntersection, cfg: GenConfig, seed: int | None = None) -> Verdict:
    """Sampled smoothness of Z = V(fa, fb): Jacobian of rank 2 at every found point."""
    prime = cfg.check_prime(ci.n)
    return jacobian_sample([ci.fa, ci.fb], prime, cfg.trials, cfg.seed if seed is None else seed)


def _coprime(fa: Poly, fb: Poly) -> bool:
    # in degree a+b the only syzygy of a coprime pair is the Koszul one
    n = fa.ring.n
    a, b = fa.degree, fb.degree
    return ideal_piece_dim([fa, fb], a + b) == h(n, a) + h(n, b) - 1


def random_smooth_ci(n: int, a: int, b: int, cfg: GenConfig) -> CompleteIntersection:
    """Random complete intersection of type (a, b) whose sampled points are smooth."""
    if not 0 <= a <= b or b < 1:
        raise ValueError(f"need 0 <= a <= b and b >= 1, got a={a}, b={b}")
    ring = Ring.projective(n, cfg.field)
    for attempt in range(cfg.retry_cap):
        sub = cfg.child(("ci", attempt))
        fb = random_poly(ring, b, sub.child("fb"))
        if a == 0:
            return CompleteIntersection(ring.one(), fb)
        fa = random_poly(ring, a, sub.child("fa"))
        try:
            ci = CompleteIntersection(fa, fb)
        except ValueError:
            continue
        if not _coprime(fa, fb):
            continue
        try:
            verdict = ci_smoothness(ci, sub)
        except BadPrimeError:
            continue
        if verdict.ok:
            return ci
    raise RetryCapError(f"no smooth complete intersection of type ({a}, {b}) in P^{n} after {cfg.retry_cap} tries")


def random_cover(n: int, d: int, cfg: GenConfig) -> DoubleCover:
    """Random branch 2d-ic with no singular point found by sampling."""
    ring = Ring.projective(n, cfg.field)
    for attempt in range(cfg.retry_cap):
        sub = cfg.child(("cover", attempt))
        g2d = random_poly(ring, 2 * d, sub)
        try:
            verdict = jacobian_sample([g2d], cfg.check_prime(n), cfg.trials, sub.seed)
        except BadPrimeError:
            continue
        if verdict.status != SINGULAR:
            return DoubleCover(n, d, g2d)
    raise RetryCapError(f"no smooth-sampled branch {2 * d}-ic after {cfg.retry_cap} tries")


def random_divisor(n: int, d: int, k: int, cfg: GenConfig) -> CoverDivisor:
    """Random cover and a divisor in |kL| whose double locus Z is smooth-sampled."""
    if k < d:
        raise ValueError("need k >= d")
    cover = random_cover(n, d, cfg.child("cover"))
    ci = random_smooth_ci(n, k - d, k, cfg.child("divisor"))
    return CoverDivisor(cover, ci.fb, ci.fa, k)


def random_quadric_quartic(cfg: GenConfig) -> tuple[Poly, Poly]:
    """(quadric, quartic) pair in P^3."""
    ring = Ring.projective(3, cfg.field)
    return random_poly(ring, 2, cfg.child("quadric")), random_poly(ring, 4, cfg.child("quartic"))


# canned bundles

ROLES = {
    "g2d": "branch equation g_2d of the double cover",
    "fk": "degree-k form f_k (invariant part of W)",
    "fkd": "degree-(k-d) form f_(k-d) (anti-invariant part of W)",
    "g": "equation of the image hypersurface W^b",
    "equation": "weighted-homogeneous sextic",
}


@dataclass
class Bundle:
    name: str
    n: int | None
    d: int | None
    k: int | None
    polys: dict = field(default_factory=dict)
    weights: tuple | None = None

    def manifest(self) -> dict:
        out = {"name": self.name, "n": self.n, "d": self.d, "k": self.k,
               "roles": {r: ROLES.get(r, r) for r in self.polys}}
        if self.weights is not None:
            out["weights"] = list(self.weights)
        return out

    def to_json(self) -> dict:
        return {"manifest": self.manifest(), "polys": {r: p.to_json() for r, p in self.polys.items()}}

    @classmethod
    def from_json(cls, obj) -> Bundle:
        man = obj.get("manifest", {})
        polys = {r: Poly.from_json(p) for r, p in obj["polys"].items()}
        w = man.get("weights")
        return cls(man.get("name", "input"), man.get("n"), man.get("d"), man.get("k"), polys,
                   tuple(w) if w else None)

    def divisor(self) -> CoverDivisor:
        cover = DoubleCover(self.n, self.d, self.polys["g2d"])
        return CoverDivisor(cover, self.polys["fk"], self.polys["fkd"], self.k)


def _cover_bundle(name, n, d, k, g2d, fk, fkd) -> Bundle:
    return Bundle(name, n, d, k, {"g2d": g2d, "fk": fk, "fkd": fkd})


def canned(name: str, field: Field = QQ) -> Bundle:
    """Fixed example data; all defined over Z so any field of odd characteristic works."""
    if name in TOTARO_WEIGHTS:
        eq = totaro_equation(name, field)
        return Bundle(name, None, None, 4 if name.endswith("k4") else 5, {"equation": eq}, TOTARO_WEIGHTS[name])
    if name == "quadric-surface":
        R = Ring.projective(2, field)
        x0, x1, x2 = R.gens()
        return _cover_bundle(name, 2, 1, 2, x0 ** 2 + x1 ** 2 + x2 ** 2, x0 * x1, x2)
    if name == "del-pezzo-2":
        R = Ring.projective(2, field)
        x0, x1, x2 = R.gens()
        return _cover_bundle(name, 2, 2, 3, x0 ** 4 + x1 ** 4 + x2 ** 4,
                             x0 * x1 * (x0 - x1) + x2 ** 3, x2)
    if name == "sextic-double-plane":
        R = Ring.projective(2, field)
        x0, x1, x2 = R.gens()
        return _cover_bundle(name, 2, 3, 4, x0 ** 6 + x1 ** 6 + x2 ** 6,
                             x1 ** 4 - x2 ** 4 + x0 ** 3 * x1, x0)
    if name == "quartic-double-solid":
        R = Ring.projective(3, field)
        x0, x1, x2, x3 = R.gens()
        return _cover_bundle(name, 3, 2, 2, x0 ** 4 + x1 ** 4 + x2 ** 4 + x3 ** 4,
                             x0 * x1 + x2 * x3, R.one())
    raise KeyError(f"unknown canned instance {name!r}; choose from {', '.join(CANNED_NAMES)}")


CANNED_NAMES = ("quadric-surface", "del-pezzo-2", "sextic-double-plane", "quartic-double-solid",
                "totaro-k4", "totaro-k5")
