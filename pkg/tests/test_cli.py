from __future__ import annotations

import json
import subprocess
import sys

import pytest

from dcover.cli import EXIT_CODES, main, parse_range
from dcover.gen import Bundle, canned


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def report(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


@pytest.fixture
def quadric_file(tmp_path):
    path = tmp_path / "quadric.json"
    path.write_text(json.dumps(canned("quadric-surface").to_json()))
    return str(path)


def test_parse_range():
    assert parse_range("3..8") == [3, 4, 5, 6, 7, 8]
    assert parse_range("4") == [4]
    assert parse_range("1,3") == [1, 3]


def test_lift_quadric(capsys, quadric_file):
    code, r = report(capsys, "lift", quadric_file)
    assert code == 0
    assert r["results"]["family_dim"] == 1
    assert all(c["pass"] for c in r["checks"].values())
    assert r["version"] and r["prng"] == "python-random-mt19937"


def test_lift_samples_zero(capsys, quadric_file):
    code, r = report(capsys, "lift", quadric_file, "--samples", "0")
    assert code == 0 and r["results"]["members_verified"] == 1


def test_lift_tampered(capsys, tmp_path):
    b = canned("quadric-surface")
    g_bundle = Bundle("tampered", 2, 1, 2)
    from dcover.cover import divisor_image
    g, ci = divisor_image(b.divisor())
    x0 = g.ring.var(0)
    g_bundle.polys = {"g": g + x0 ** 4, "fkd": ci.fa, "fk": ci.fb}
    path = tmp_path / "t.json"
    path.write_text(json.dumps(g_bundle.to_json()))
    code, out = run(capsys, "lift", str(path))
    assert code == EXIT_CODES["not-in-ideal-square"]
    assert json.loads(out)["error"] == "not-in-ideal-square"


def test_lift_zero_branch(capsys, tmp_path):
    from dcover.polyring import QQ, Ring
    R = Ring.projective(2, QQ)
    x0, x1, x2 = R.gens()
    b = Bundle("square", 2, 1, 2, {"g": (x0 * x1) ** 2, "fkd": x2, "fk": x0 * x1})
    path = tmp_path / "sq.json"
    path.write_text(json.dumps(b.to_json()))
    code, _ = run(capsys, "lift", str(path))
    assert code == EXIT_CODES["zero-branch"]


def test_lift_component_divisor(capsys, tmp_path):
    b = canned("quadric-surface")
    b.polys["fkd"] = b.polys["fkd"] - b.polys["fkd"]
    path = tmp_path / "c.json"
    path.write_text(json.dumps(b.to_json()))
    code, _ = run(capsys, "lift", str(path))
    assert code == EXIT_CODES["component-divisor"]


def test_lift_missing_file(capsys, tmp_path):
    code, _ = run(capsys, "lift", str(tmp_path / "nope.json"))
    assert code == EXIT_CODES["parse-error"]


def test_usage_errors(capsys):
    assert main(["bogus"]) == EXIT_CODES["parse-error"]
    assert main(["census", "--field", "Fp:100"]) == EXIT_CODES["parse-error"]
    assert main(["roundtrip", "--n", "2", "--d", "3", "--k", "2"]) == EXIT_CODES["parse-error"]
    capsys.readouterr()


def test_caps(capsys):
    code, _ = run(capsys, "roundtrip", "--n", "5", "--d", "1", "--k", "2")
    assert code == EXIT_CODES["cap-exceeded"]
    code, _ = run(capsys, "census", "--k", "3..15")
    assert code == EXIT_CODES["cap-exceeded"]


def test_census_verify(capsys):
    code, r = report(capsys, "census", "--n", "2", "--d", "3", "--k", "3..8", "--verify")
    assert code == 0
    assert [row["fiber_dim"] for row in r["results"]["dims"]] == [10, 6, 3, 1, 0, 0]
    assert r["results"]["prop64_ledger"] == {"Y": [10, 0, 0], "S": [20, 1, 0], "C": [19, 1, 0]}
    assert {row["excess"] for row in r["results"]["severi"]} == {1}
    assert all(row["agree"] for row in r["results"]["verify"])


def test_census_csv(capsys):
    code, out = run(capsys, "census", "--out", "csv")
    assert code == 0
    assert "# dims\nn,k,d,dim_Vd,dim_VW,dim_Z,dim_W,fiber_dim\n" in out


@pytest.mark.parametrize("ndk,dim", [((2, 3, 6), 1), ((3, 1, 3), 0), ((2, 1, 2), 1)])
def test_roundtrip(capsys, ndk, dim):
    n, d, k = ndk
    code, r = report(capsys, "roundtrip", "--n", str(n), "--d", str(d), "--k", str(k))
    assert code == 0 and r["field"] == "Fp:101"
    assert r["results"]["family_dim"] == r["results"]["measured_dim"] == dim


def test_roundtrip_reproducible(capsys):
    args = ("roundtrip", "--n", "2", "--d", "2", "--k", "3", "--seed", "9", "--field", "Q")
    _, r1 = report(capsys, *args)
    _, r2 = report(capsys, *args)
    r1.pop("timings"), r2.pop("timings")
    assert r1 == r2


def test_hilbert(capsys):
    code, r = report(capsys, "hilbert", "--n", "2", "--a", "1", "--b", "4", "--m", "8")
    assert code == 0 and r["results"]["table"][0]["oracle"] == 33


def test_gen_then_lift(capsys, tmp_path):
    path = tmp_path / "r.json"
    code = main(["gen", "--n", "2", "--d", "3", "--k", "5", "--seed", "3", "--output", str(path)])
    assert code == 0
    code, r = report(capsys, "lift", str(path), "--verify")
    assert code == 0 and r["results"]["family_dim"] == 3


def test_gen_totaro(capsys):
    code, r = report(capsys, "gen", "--canned", "totaro-k4")
    assert code == 0 and r["checks"]["weighted-degree-6"]["pass"]


def test_console_entry_point(quadric_file):
    proc = subprocess.run([sys.executable, "-m", "dcover.cli", "lift", quadric_file, "--out", "csv"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "verify-a0,true," in proc.stdout
