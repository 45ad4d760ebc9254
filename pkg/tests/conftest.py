from __future__ import annotations

import re

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from dcover.polyring import GF, QQ, Ring, from_coefficients, monomial_exponents

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

F101 = GF(101)


@st.composite
def forms(draw, ring: Ring, degree: int, allow_zero: bool = True):
    exps = monomial_exponents(ring, degree)
    if ring.field.p is None:
        coeff = st.integers(-5, 5)
    else:
        coeff = st.integers(0, ring.field.p - 1)
    # sparse on average so products stay cheap
    cs = draw(st.lists(st.one_of(st.just(0), coeff), min_size=len(exps), max_size=len(exps)))
    p = from_coefficients(ring, exps, cs)
    if not allow_zero and p.is_zero():
        p = ring.monomial(exps[0])
    return p


rings = st.sampled_from([Ring.projective(2, QQ), Ring.projective(2, F101), Ring.projective(3, GF(7))])


def pytest_terminal_summary(terminalreporter):
    lines = []
    for rep in terminalreporter.getreports("passed") + terminalreporter.getreports("failed"):
        m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", rep.nodeid)
        if m and rep.when == "call":
            lines.append((int(m.group(1)), m.group(2), "PASS" if rep.passed else "FAIL"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for num, name, verdict in sorted(lines):
            terminalreporter.write_line(f"criterion {num} ({name}): {verdict}")
