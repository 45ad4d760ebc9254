"""Closed-form integer invariants: dimension counts, genera, coranks, ledgers.

Every formula is plain integer arithmetic on h(n, m) = binom(n+m, n). Where a
brute-force counterpart exists (ranks of graded pieces) it is provided next to
the formula so the two can be compared.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, fields

from .ci import CompleteIntersection, ideal_piece_dim
from .polyring import Field, Poly, Ring, h

EMPTY = -1

# hyperelliptic cases k = 1, 2: generic fibre dimensions are quoted constants
HYPERELLIPTIC_FIBER = {1: 18, 2: 15}


@dataclass(frozen=True)
class DimReport:
    n: int
    k: int
    d: int
    dim_Vd: int
    dim_VW: int
    dim_Z: int
    dim_W: int
    fiber_dim: int


@dataclass(frozen=True)
class SeveriReport:
    k: int
    d: int
    genus: int
    contact_points: int
    family_dim: int
    expected_dim: int
    excess: int


@dataclass(frozen=True)
class CorankReport:
    k: int
    genus: int
    cork_phi: int
    nu2: int
    fiber_dim_reported: int
    source: str


def dim_report(n: int, k: int, d: int) -> DimReport:
    """Dimensions of V_d, VW_{k,d}, Z_{k,d}, W_{k,d} and the generic fibre of q."""
    if d < 1 or k < d:
        raise ValueError(f"need k >= d >= 1, got k={k}, d={d}")
    dim_Vd = h(n, 2 * d) - 1
    dim_VW = h(n, 2 * d) + h(n, k) + h(n, k - d) - 2
    if k > d:
        dim_Z = h(n, k - d) + h(n, k) - h(n, d) - 2
        dim_W = h(n, k - d) + h(n, k) + h(n, 2 * d) - h(n, 2 * d - k) - 2
        fiber = h(n, 2 * d - k)
    else:
        dim_Z = EMPTY
        dim_W = h(n, 2 * d) - 1
        # automorphisms y -> c*y remove one dimension
        fiber = h(n, d)
    return DimReport(n, k, d, dim_Vd, dim_VW, dim_Z, dim_W, fiber)


def severi_report(k: int, d: int) -> SeveriReport:
    """Plane log-Severi count for |kL| on the double plane branched along a 2d-ic."""
    if d < 1 or k < d:
        raise ValueError(f"need k >= d >= 1, got k={k}, d={d}")
    genus = (2 * k - 1) * (2 * k - 2) // 2 - k * (k - d)
    family = h(2, k) + h(2, k - d) - 1
    expected = k * (k + 3 - d)
    return SeveriReport(k, d, genus, 2 * k * d, family, expected, family - expected)


def cork_report(k: int) -> CorankReport:
    """Corank of the Gauss-Wahl map of a general curve in |kL| on a sextic double plane."""
    if k < 1:
        raise ValueError("k must be positive")
    genus = k * k + 1
    if k <= 2:
        return CorankReport(k, genus, 3 * genus - 2, 0, HYPERELLIPTIC_FIBER[k], "constant:hyperelliptic")
    nu2 = 1 if k == 3 else 0
    fiber = h(2, 6 - k)
    return CorankReport(k, genus, fiber + 1 - nu2, nu2, fiber, "formula")


def cubics_through_nodes(ci: CompleteIntersection) -> int:
    """Dimension of the cubics in the ideal of the node set Z of type (k-3, k)."""
    if ci.n != 2 or ci.b - ci.a != 3:
        raise ValueError("need a plane complete intersection of type (k-3, k)")
    if ci.b < 4:
        raise ValueError("need k >= 4")
    return ideal_piece_dim([ci.fa, ci.fb], 3)


def quartic_extension_counts() -> tuple[int, int]:
    """Quartics through kC minus one, for C = Q cap S of type (2, 4) and k = 1, 2."""
    return h(3, 0) + h(3, 4 - 2) - 1, h(3, 0) + h(3, 4 - 4) - 1


def quartic_extension_oracle(quadric: Poly, quartic: Poly) -> tuple[int, int]:
    """Rank count of the same numbers: kC = V(q^k, s) in degree 4."""
    k1 = ideal_piece_dim([quadric, quartic], 4) - 1
    k2 = ideal_piece_dim([quadric * quadric, quartic], 4) - 1
    return k1, k2


def _rowY(k: int) -> int:
    return 10 * h(3, 2 - 2 * k) - 4 * h(3, 1 - 2 * k)


def _rowYS(k: int) -> int:
    return _rowY(k) - _rowY(k + 2)


def _hS(m: int) -> int:
    # sections of O_S(m) with O_S(1) = O_{P^3}(2) on a quartic S
    return h(3, 2 * m) - h(3, 2 * m - 4)


def _rowS(k: int) -> int:
    return _rowYS(k) + _hS(2 - k)


def _rowC(k: int) -> int:
    return _rowS(k) - _rowS(k + 1)


LEDGER_EXPECTED = {"Y": (10, 0, 0), "S": (20, 1, 0), "C": (19, 1, 0)}


def prop64_ledger() -> dict[str, tuple[int, int, int]]:
    """h^0 of N(-k), k = 1, 2, 3, for Y = v2(P^3), a quadric section S, and a curve section C."""
    return {
        "Y": tuple(_rowY(k) for k in (1, 2, 3)),
        "S": tuple(_rowS(k) for k in (1, 2, 3)),
        "C": tuple(_rowC(k) for k in (1, 2, 3)),
    }


# Totaro's sextic hypersurfaces; variables ordered x0 x1 x2 y z0 ...
TOTARO_WEIGHTS = {
    "totaro-k4": (1, 1, 1, 3, 4, 4, 4, 4, 4, 4),
    "totaro-k5": (1, 1, 1, 3, 5, 5, 5),
}


def totaro_equation(name: str, field: Field | None = None) -> Poly:
    weights = TOTARO_WEIGHTS[name]
    nz = len(weights) - 4
    names = ("x0", "x1", "x2", "y") + tuple(f"z{i}" for i in range(nz))
    ring = Ring(len(weights), weights, field or Field(), names)
    x = [ring.var(i) for i in range(3)]
    y = ring.var(3)
    z = [ring.var(4 + i) for i in range(nz)]
    if name == "totaro-k4":
        quads = [x[0] * x[0], x[0] * x[1], x[0] * x[2], x[1] * x[1], x[1] * x[2], x[2] * x[2]]
    else:
        quads = x
    eq = y * y
    for q, zi in zip(quads, z):
        eq = eq + q * zi
    return eq


def unprojection_row() -> DimReport:
    """Sextic surfaces double along a (3, 2) curve: unique lift (fibre 0)."""
    return dim_report(3, 3, 1)


# serialization

def rows_to_csv(rows) -> str:
    rows = list(rows)
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=[f.name for f in fields(rows[0])], lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow(asdict(r))
    return buf.getvalue()


def rows_to_json(rows) -> str:
    return json.dumps([asdict(r) for r in rows], indent=2)


def totaro_degree(name: str) -> int:
    """Weighted degree of a Totaro equation (construction rejects inhomogeneous input)."""
    return totaro_equation(name).degree
