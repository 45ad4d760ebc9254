"""Lifting a hypersurface double along Z to a double cover of P^n.

Given g of degree 2k in I_Z^2 with I_Z = (f_{k-d}, f_k), write
g = f_{k-d}^2 g_{2d} + 2 f_{k-d} f_k g_d + f_k^2, complete the square
    g = (f_k + f_{k-d} g_d)^2 + f_{k-d}^2 (g_{2d} - g_d^2),
and move along the syzygy direction a in H^0(O(2d - k)):
    f_hat = f_tilde - a f_{k-d}^2,
    g_hat = g_tilde + a (2 f_tilde - a f_{k-d}^2).
Every g_hat cuts a branch locus everywhere tangent to V(g).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import linalg
from .ci import CompleteIntersection, decompose_in_i2, decomposition_kernel_dim, ideal_member, graded_piece_matrix
from .errors import DegreeMismatchError, ZeroBranchError
from .points import Verdict, jacobian_sample
from .polyring import Poly, from_coefficients, monomial_basis, monomial_exponents


@dataclass(frozen=True)
class FamilyMember:
    f_hat: Poly
    g_hat: Poly
    a: Poly


@dataclass(frozen=True)
class LiftFamily:
    """All branch loci over a fixed W^b: ``scalar*g == f_tilde^2 + fkd^2*g_tilde``."""

    ci: CompleteIntersection
    f_tilde: Poly
    g_tilde: Poly
    g_d: Poly
    param_basis: tuple
    g: Poly
    scalar: object

    @property
    def fkd(self) -> Poly:
        return self.ci.fa

    @property
    def fk(self) -> Poly:
        return self.ci.fb

    @property
    def k(self) -> int:
        return self.ci.b

    @property
    def d(self) -> int:
        return self.ci.b - self.ci.a

    @property
    def param_degree(self) -> int:
        return 2 * self.d - self.k

    @property
    def dimension(self) -> int:
        return len(self.param_basis)

    def base_member(self) -> FamilyMember:
        return FamilyMember(self.f_tilde, self.g_tilde, self.ci.ring.zero())


def lift_branch(g: Poly, ci: CompleteIntersection) -> LiftFamily:
    """Completed-square form of g and the parameter space of its branch loci."""
    k = ci.b
    d = ci.b - ci.a
    if d < 1:
        raise ValueError("need k > k - d, i.e. d >= 1")
    dec = decompose_in_i2(g, ci)
    g2d, gd = dec.A, dec.B
    f_tilde = ci.fb + ci.fa * gd
    g_tilde = g2d - gd * gd
    if g_tilde.is_zero():
        raise ZeroBranchError("completed square leaves g_tilde = 0; no branch hypersurface")
    basis = tuple(monomial_basis(ci.ring, 2 * d - k))
    return LiftFamily(ci, f_tilde, g_tilde, gd, basis, g, dec.scalar)


def family_member(fam: LiftFamily, a: Poly) -> FamilyMember:
    if not a.is_zero() and a.degree != fam.param_degree:
        raise DegreeMismatchError(f"parameter must have degree {fam.param_degree}, got {a.degree}")
    if a.is_zero():
        return FamilyMember(fam.f_tilde, fam.g_tilde, a)
    sq = fam.fkd * fam.fkd
    a_sq = a * sq
    f_hat = fam.f_tilde - a_sq
    g_hat = fam.g_tilde + a * (fam.f_tilde.scale(2) - a_sq)
    return FamilyMember(f_hat, g_hat, a)


def member_from_coords(fam: LiftFamily, coords) -> FamilyMember:
    exps = monomial_exponents(fam.ci.ring, fam.param_degree)
    return family_member(fam, from_coefficients(fam.ci.ring, exps, coords))


def verify_lift(g: Poly, ci: CompleteIntersection, member: FamilyMember, scalar) -> bool:
    """Exact check of ``scalar*g == f_hat^2 + fkd^2 * g_hat``."""
    lhs = g.scale(scalar)
    rhs = member.f_hat * member.f_hat + ci.fa * ci.fa * member.g_hat
    return (lhs - rhs).is_zero()


def contact_in_ideal(member: FamilyMember, ci: CompleteIntersection) -> bool:
    """True iff the contact hypersurface f_hat lies in I_Z (vacuous for Z empty)."""
    return ideal_member(ci, member.f_hat) is not None


def random_param(fam: LiftFamily, rng: random.Random, bound: int = 10) -> Poly:
    """Uniform parameter in H^0(O(2d-k)); over Q coefficients lie in [-bound, bound]."""
    F = fam.ci.ring.field
    exps = monomial_exponents(fam.ci.ring, fam.param_degree)
    if F.p is None:
        coords = [rng.randint(-bound, bound) for _ in exps]
    else:
        coords = [rng.randrange(F.p) for _ in exps]
    return from_coefficients(fam.ci.ring, exps, coords)


def family_injectivity_check(fam: LiftFamily, samples: int, seed: int) -> bool:
    """Distinct parameters a != a' must give non-proportional branch equations."""
    if fam.dimension == 0:
        return True
    rng = random.Random(seed)
    for _ in range(samples):
        a1 = random_param(fam, rng)
        a2 = random_param(fam, rng)
        while a2 == a1:
            a2 = random_param(fam, rng)
        if family_member(fam, a1).g_hat.is_proportional(family_member(fam, a2).g_hat):
            return False
    return True


def recover_branch(fam: LiftFamily, g2d: Poly) -> Poly | None:
    """Find a with g_hat(a) proportional to g2d, or None.

    Candidates come from the linear condition f_hat(a) = +-fk, i.e.
    a*fkd^2 = f_tilde -+ fk, solved in the coefficients of a; each candidate
    is then checked for proportionality.
    """
    ring = fam.ci.ring
    sq = fam.fkd * fam.fkd
    for sign in (1, -1):
        rhs = fam.f_tilde - fam.fk.scale(sign)
        if fam.dimension == 0:
            candidates = [ring.zero()] if rhs.is_zero() else []
        else:
            mat, cols = graded_piece_matrix([sq], fam.k)
            rows = monomial_exponents(ring, fam.k)
            x = linalg.solve(mat, [rhs.coeff(e) for e in rows])
            candidates = [] if x is None else [from_coefficients(ring, [mu for _, mu in cols], x)]
        for a in candidates:
            if family_member(fam, a).g_hat.is_proportional(g2d):
                return a
    return None


def measured_family_dim(ci: CompleteIntersection) -> int:
    """Dimension of the space of branch loci over V(g), read off the decomposition kernel.

    For k > d the kernel in degree 2k is exactly the parameter space of a.
    For k = d (Z empty) the kernel has one extra direction, the rescaling
    y -> c*y, which gives the same cover; it is subtracted.
    """
    kernel = decomposition_kernel_dim(ci, 2 * ci.b)
    return kernel - 1 if ci.is_empty_locus() else kernel


def smoothness_sample(p: Poly, prime: int, trials: int = 50, seed: int = 0, exhaustive_cap: int = 20_000) -> Verdict:
    """Sampled smoothness verdict for the hypersurface V(p) over F_prime."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    return jacobian_sample([p], prime, trials, seed, exhaustive_cap)
