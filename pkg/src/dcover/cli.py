"""Command-line driver: ``dcover {lift,census,roundtrip,hilbert,gen}``.

Every command prints a RunReport (JSON) or its tables (CSV). The exit code is
0 iff every check passed; typed failures get their own codes (EXIT_CODES).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .census import (LEDGER_EXPECTED, cork_report, cubics_through_nodes, dim_report, prop64_ledger, quartic_extension_counts,
                     quartic_extension_oracle, rows_to_csv, severi_report, totaro_degree, unprojection_row)
from .ci import CompleteIntersection, decomposition_kernel_dim, i2_dim_formula, i2_dim_oracle
from .cover import divisor_image, pullback_splits
from .errors import (BadPrimeError, CapExceededError, ComponentDivisorError, DegenerateDecompositionError,
                     NotInIdealSquareError, RetryCapError, ZeroBranchError)
from .gen import (CANNED_NAMES, PRNG_NAME, Bundle, GenConfig, canned, random_divisor, random_quadric_quartic,
                  random_smooth_ci)
from .lift import (contact_in_ideal, family_injectivity_check, family_member, lift_branch, measured_family_dim,
                   random_param, recover_branch, smoothness_sample, verify_lift)
from .polyring import GF, Field, h

EXIT_CODES = {
    "ok": 0,
    "check-failed": 1,
    "parse-error": 2,
    "not-in-ideal-square": 3,
    "degenerate-decomposition": 4,
    "zero-branch": 5,
    "component-divisor": 6,
    "cap-exceeded": 7,
}

_ERROR_KIND = [
    (NotInIdealSquareError, "not-in-ideal-square"),
    (DegenerateDecompositionError, "degenerate-decomposition"),
    (ZeroBranchError, "zero-branch"),
    (ComponentDivisorError, "component-divisor"),
    (CapExceededError, "cap-exceeded"),
    (RetryCapError, "cap-exceeded"),
]

MAX_N = 4
MAX_DEGREE = 14
DEFAULT_FIELD = GF(101)


class UsageError(Exception):
    pass


@dataclass
class RunReport:
    command: str
    input_digest: str
    seed: int
    field: str
    results: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    version: str = __version__
    prng: str = PRNG_NAME

    def check(self, name: str, passed: bool, reason: str = ""):
        entry = {"pass": bool(passed)}
        if not passed:
            entry["reason"] = reason or "failed"
        self.checks[name] = entry

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.checks.values())

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)


def _digest(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


def parse_range(text: str) -> list[int]:
    """``3``, ``3..8`` (inclusive) or ``1,4,6``."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(t) for t in text.split(",") if t]


def _field_arg(text: str) -> Field:
    try:
        return Field.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _check_caps(n: int, *degrees: int):
    # degrees of input forms; graded pieces up to twice this are computed
    if n > MAX_N:
        raise CapExceededError(f"n = {n} exceeds cap {MAX_N}")
    for deg in degrees:
        if deg > MAX_DEGREE:
            raise CapExceededError(f"degree {deg} exceeds cap {MAX_DEGREE}")


# lift

def _load_bundle(path: str, field: Field | None) -> Bundle:
    try:
        obj = json.loads(Path(path).read_text())
        if "polys" not in obj and "bundle" in obj.get("results", {}):
            obj = obj["results"]["bundle"]
        bundle = Bundle.from_json(obj)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read bundle {path}: {exc}") from exc
    if field is not None:
        bundle.polys = {r: p.change_field(field) for r, p in bundle.polys.items()}
    return bundle


def cmd_lift(args) -> RunReport:
    bundle = _load_bundle(args.input, args.field)
    polys = bundle.polys
    some = next(iter(polys.values()))
    report = RunReport("lift", _digest(bundle.to_json()), args.seed, str(some.field))
    t0 = time.perf_counter()
    if "g" in polys:
        g = polys["g"]
        ci = CompleteIntersection(polys["fkd"], polys["fk"])
    elif "g2d" in polys:
        w = bundle.divisor()
        g, ci = divisor_image(w)
        report.check("pullback-splits", pullback_splits(w), "(fk - y fkd)(fk + y fkd) != g mod y^2 - g2d")
    else:
        raise UsageError("bundle needs either g, fkd, fk or g2d, fk, fkd")
    _check_caps(ci.n, ci.b, 2 * (ci.b - ci.a))
    fam = lift_branch(g, ci)
    report.results.update({
        "n": ci.n, "k": fam.k, "d": fam.d,
        "g": str(g), "f_tilde": str(fam.f_tilde), "g_tilde": str(fam.g_tilde), "g_d": str(fam.g_d),
        "scalar": str(fam.scalar), "family_dim": fam.dimension,
        "family_dim_formula": h(ci.n, 2 * fam.d - fam.k),
    })
    report.check("verify-a0", verify_lift(g, ci, fam.base_member(), fam.scalar), "identity fails at a = 0")
    rng = random.Random(args.seed)
    members = [fam.base_member()]
    bad = 0
    for _ in range(args.samples if fam.dimension else 0):
        m = family_member(fam, random_param(fam, rng))
        members.append(m)
        if not verify_lift(g, ci, m, fam.scalar):
            bad += 1
    report.results["members_verified"] = len(members)
    report.check("verify-members", bad == 0, f"{bad} members fail the identity")
    report.check("contact-in-ideal", all(contact_in_ideal(m, ci) for m in members), "f_hat not in I_Z")
    report.check("family-dim", fam.dimension == h(ci.n, 2 * fam.d - fam.k), "parameter space has wrong size")
    if args.verify:
        report.results["kernel_family_dim"] = measured_family_dim(ci)
        report.check("kernel-matches-family", measured_family_dim(ci) == fam.dimension,
                     "decomposition kernel disagrees with the family size")
    verdicts = []
    for i, m in enumerate(members[: 1 + min(args.samples, 3)]):
        try:
            v = smoothness_sample(m.g_hat, args.smooth_prime, trials=20, seed=args.seed + i)
            verdicts.append({"a": str(m.a), **v.to_json()})
        except BadPrimeError as exc:
            verdicts.append({"a": str(m.a), "status": "bad-prime", "reason": str(exc)})
    report.results["branch_smoothness"] = verdicts
    report.timings["total_s"] = round(time.perf_counter() - t0, 4)
    return report


# census

def cmd_census(args) -> RunReport:
    ns, ds, ks = parse_range(args.n), parse_range(args.d), parse_range(args.k)
    for n in ns:
        _check_caps(n, *ks, *(2 * d for d in ds))
    report = RunReport("census", _digest(vars_for_digest(args)), args.seed, str(args.field or DEFAULT_FIELD))
    t0 = time.perf_counter()
    dims = [dim_report(n, k, d) for n in ns for d in ds for k in ks if k >= d >= 1]
    severi = [severi_report(k, d) for d in ds for k in ks if k >= d >= 1]
    corks = [cork_report(k) for k in ks if k >= 1]
    ledger = prop64_ledger()
    quartic = quartic_extension_counts()
    report.results.update({
        "dims": [asdict(r) for r in dims],
        "severi": [asdict(r) for r in severi],
        "corank": [asdict(r) for r in corks],
        "quartic_extension_counts": list(quartic),
        "prop64_ledger": {k: list(v) for k, v in ledger.items()},
        "unprojection": asdict(unprojection_row()),
        "totaro_degrees": {name: totaro_degree(name) for name in ("totaro-k4", "totaro-k5")},
    })
    report.check("ledger", ledger == LEDGER_EXPECTED, str(ledger))
    report.check("quartic-counts", quartic == (10, 1), str(quartic))
    report.check("severi-excess", all(r.excess == (r.d - 1) * (r.d - 2) // 2 for r in severi),
                 "excess differs from (d-1)(d-2)/2")
    report.check("fiber-consistency", all(r.fiber_dim == r.dim_VW - r.dim_W for r in dims),
                 "fiber_dim != dim_VW - dim_W")
    if args.verify:
        _census_verify(args, dims, report)
    report.timings["total_s"] = round(time.perf_counter() - t0, 4)
    report.results["_tables"] = {"dims": rows_to_csv(dims), "severi": rows_to_csv(severi), "corank": rows_to_csv(corks)}
    return report


def vars_for_digest(args) -> dict:
    return {k: (str(v) if isinstance(v, Field) else v) for k, v in vars(args).items()
            if k not in ("func", "out", "output")}


def _census_verify(args, dims, report: RunReport):
    field = args.field or DEFAULT_FIELD
    agreements = []
    for r in dims:
        cfg = GenConfig(seed=args.seed, field=field).child(("census", r.n, r.k, r.d))
        ci = random_smooth_ci(r.n, r.k - r.d, r.k, cfg)
        row = {"n": r.n, "k": r.k, "d": r.d, "fiber_formula": r.fiber_dim, "fiber_measured": measured_family_dim(ci)}
        if r.k > r.d:
            row["i2_formula"] = i2_dim_formula(r.n, r.k - r.d, r.k, 2 * r.k)
            row["i2_oracle"] = i2_dim_oracle(ci, 2 * r.k)
            row["kernel"] = decomposition_kernel_dim(ci, 2 * r.k)
        row["agree"] = row["fiber_formula"] == row["fiber_measured"] and row.get("i2_formula") == row.get("i2_oracle")
        if r.n == 2 and r.d == 3 and r.k >= 4:
            row["cubics_formula"] = h(2, 6 - r.k)
            row["cubics_oracle"] = cubics_through_nodes(ci)
            row["agree"] = row["agree"] and row["cubics_formula"] == row["cubics_oracle"]
        agreements.append(row)
    report.results["verify"] = agreements
    report.check("oracle-agreement", all(r["agree"] for r in agreements),
                 "rows disagree: " + ", ".join(f"(n={r['n']},k={r['k']},d={r['d']})" for r in agreements if not r["agree"]))
    q, s = random_quadric_quartic(GenConfig(seed=args.seed, field=field))
    oracle = quartic_extension_oracle(q, s)
    report.results["quartic_extension_oracle"] = list(oracle)
    report.check("quartic-oracle", oracle == quartic_extension_counts(), str(oracle))


# roundtrip

def cmd_roundtrip(args) -> RunReport:
    n, d, k = args.n, args.d, args.k
    if k < d:
        raise UsageError("need k >= d")
    _check_caps(n, k, 2 * d)
    field = args.field or DEFAULT_FIELD
    report = RunReport("roundtrip", _digest(vars_for_digest(args)), args.seed, str(field))
    t0 = time.perf_counter()
    w = random_divisor(n, d, k, GenConfig(seed=args.seed, field=field))
    g, ci = divisor_image(w)
    fam = lift_branch(g, ci)
    measured = measured_family_dim(ci)
    expected = dim_report(n, k, d).fiber_dim
    a = recover_branch(fam, w.cover.g2d)
    report.results.update({
        "n": n, "d": d, "k": k,
        "g2d": str(w.cover.g2d), "fk": str(w.fk), "fkd": str(w.fkd),
        "family_dim": fam.dimension, "measured_dim": measured, "census_fiber_dim": expected,
        "recovering_parameter": None if a is None else str(a),
    })
    report.check("pullback-splits", pullback_splits(w))
    report.check("verify-a0", verify_lift(g, ci, fam.base_member(), fam.scalar))
    rng = random.Random(args.seed)
    bad = sum(not verify_lift(g, ci, family_member(fam, random_param(fam, rng)), fam.scalar)
              for _ in range(args.samples if fam.dimension else 0))
    report.check("verify-members", bad == 0, f"{bad} members fail")
    report.check("branch-recovered", a is not None, "no family member is proportional to the original branch")
    report.check("injective", family_injectivity_check(fam, args.samples, args.seed), "two parameters give the same branch")
    report.check("dimension", measured == expected, f"measured {measured}, census {expected}")
    report.timings["total_s"] = round(time.perf_counter() - t0, 4)
    return report


# hilbert

def cmd_hilbert(args) -> RunReport:
    field = args.field or DEFAULT_FIELD
    report = RunReport("hilbert", _digest(vars_for_digest(args)), args.seed, str(field))
    t0 = time.perf_counter()
    rows = []
    for n in parse_range(args.n):
        for a in parse_range(args.a):
            for b in parse_range(args.b):
                if b < a:
                    continue
                ms = [m for m in parse_range(args.m) if m >= 2 * a]
                _check_caps(n, a, b, *ms)
                for i in range(args.instances):
                    ci = random_smooth_ci(n, a, b, GenConfig(seed=args.seed, field=field).child(("hilbert", n, a, b, i)))
                    for m in ms:
                        f, o = i2_dim_formula(n, a, b, m), i2_dim_oracle(ci, m)
                        rows.append({"n": n, "a": a, "b": b, "m": m, "instance": i, "formula": f, "oracle": o})
    report.results["table"] = rows
    bad = [r for r in rows if r["formula"] != r["oracle"]]
    report.check("formula-equals-oracle", not bad, f"{len(bad)} cells disagree")
    report.timings["total_s"] = round(time.perf_counter() - t0, 4)
    return report


# gen

def cmd_gen(args) -> RunReport:
    field = args.field
    if args.canned:
        bundle = canned(args.canned, field or Field())
    else:
        if args.n is None or args.d is None or args.k is None:
            raise UsageError("random bundles need --n, --d and --k")
        _check_caps(args.n, args.k, 2 * args.d)
        w = random_divisor(args.n, args.d, args.k, GenConfig(seed=args.seed, field=field or DEFAULT_FIELD))
        bundle = Bundle(f"random-n{args.n}-d{args.d}-k{args.k}-s{args.seed}", args.n, args.d, args.k,
                        {"g2d": w.cover.g2d, "fk": w.fk, "fkd": w.fkd})
    if args.pushforward:
        if "g2d" not in bundle.polys:
            raise UsageError("only cover bundles can be pushed forward")
        g, ci = divisor_image(bundle.divisor())
        bundle.polys = {"g": g, "fkd": ci.fa, "fk": ci.fb}
    data = bundle.to_json()
    field_name = str(next(iter(bundle.polys.values())).field)
    report = RunReport("gen", _digest(data), args.seed, field_name, results={"bundle": data})
    if bundle.weights is not None:
        deg = next(iter(bundle.polys.values())).degree
        report.check("weighted-degree-6", deg == 6, f"weighted degree {deg}")
    return report


# driver

def _common(p: argparse.ArgumentParser):
    p.add_argument("--field", type=_field_arg, default=None, help="Q or Fp:<prime> (default Fp:101)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", choices=("json", "csv"), default="json")
    p.add_argument("--verify", action="store_true", help="also run brute-force oracles")
    p.add_argument("--output", help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dcover", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lift", help="lift a hypersurface double along Z to its family of branch loci")
    p.add_argument("input", help="bundle JSON with (g, fkd, fk) or (g2d, fk, fkd)")
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--smooth-prime", type=int, default=7)
    _common(p)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("census", help="dimension, genus, corank tables and ledgers")
    p.add_argument("--n", default="2")
    p.add_argument("--d", default="3")
    p.add_argument("--k", default="3..8")
    _common(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("roundtrip", help="random cover -> image -> lift -> recovery")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--samples", type=int, default=20)
    _common(p)
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("hilbert", help="dimension of graded pieces of I_Z^2: formula vs rank")
    p.add_argument("--n", default="2")
    p.add_argument("--a", default="1..2")
    p.add_argument("--b", default="1..3")
    p.add_argument("--m", default="0..8")
    p.add_argument("--instances", type=int, default=1)
    _common(p)
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("gen", help="emit a canned or random instance bundle")
    p.add_argument("--canned", choices=CANNED_NAMES)
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--pushforward", action="store_true", help="replace the divisor by (g, fkd, fk)")
    _common(p)
    p.set_defaults(func=cmd_gen)
    return parser


def _render(report: RunReport, fmt: str) -> str:
    tables = report.results.pop("_tables", None)
    if fmt == "json":
        return report.to_json()
    if report.command == "gen":
        return json.dumps(report.results["bundle"], indent=2)
    chunks = []
    if tables:
        for name, text in tables.items():
            chunks.append(f"# {name}\n{text}")
    if report.command == "hilbert":
        import csv
        import io

        buf = io.StringIO()
        rows = report.results["table"]
        if rows:
            w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
        chunks.append("# table\n" + buf.getvalue())
    scalars = {k: v for k, v in sorted(report.results.items()) if isinstance(v, (int, str)) or v is None}
    if scalars:
        chunks.append("# results\nkey,value\n" + "".join(f"{k},{'' if v is None else v}\n" for k, v in scalars.items()))
    chunks.append("# checks\ncheck,pass,reason\n" + "".join(
        f"{k},{str(v['pass']).lower()},{v.get('reason', '')}\n" for k, v in sorted(report.checks.items())))
    return "\n".join(chunks)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CODES["parse-error"] if exc.code else 0
    try:
        report = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CODES["parse-error"]
    except tuple(cls for cls, _ in _ERROR_KIND) as exc:
        kind = next(name for cls, name in _ERROR_KIND if isinstance(exc, cls))
        print(json.dumps({"command": args.command, "error": kind, "message": str(exc)}))
        return EXIT_CODES[kind]
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CODES["parse-error"]
    text = _render(report, args.out)
    if args.output:
        Path(args.output).write_text(text + "\n")
    else:
        print(text)
    return EXIT_CODES["ok"] if report.passed else EXIT_CODES["check-failed"]


if __name__ == "__main__":
    sys.exit(main())
