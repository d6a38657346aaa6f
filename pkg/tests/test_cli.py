"""Command-line tests driven through click's test runner."""

import json
import os

import pytest
from click.testing import CliRunner

from invar.cli import cli
from invar.fsing import replay_document
from invar.polyio import parse_certificate_text, parse_polys_text

IDEAL = """\
field: 2^1
order: grevlex
vars: x y
poly: x^2
poly: x*y+y^2
"""

MEMBER_ELT = """\
field: 2^1
order: grevlex
vars: x y
poly: x^3+x^2*y
"""

NON_MEMBER_ELT = """\
field: 2^1
order: grevlex
vars: x y
poly: x+y
"""


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, args, **kwargs):
    # keep user-level envvars from leaking into the assertions
    env = {k: None for k in os.environ if k.startswith("INVAR_")}
    env.update(kwargs.pop("env", {}))
    return runner.invoke(cli, args, env=env, **kwargs)


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

def test_dickson_output(runner, tmp_path):
    res = invoke(runner, ["dickson", "--p", "2", "--n", "2",
                          "--cache-dir", str(tmp_path)])
    assert res.exit_code == 0
    assert "poly: x1^2*x2+x1*x2^2" in res.output
    assert "poly: x1^2+x1*x2+x2^2" in res.output


def test_dickson_cache_hit_is_byte_identical(runner, tmp_path):
    args = ["dickson", "--p", "3", "--e", "2", "--n", "2",
            "--cache-dir", str(tmp_path)]
    first = invoke(runner, args)
    assert first.exit_code == 0
    files = list(tmp_path.iterdir())
    assert [f.name for f in files] == ["dickson-3-2-2.poly"]
    stamp = files[0].stat().st_mtime_ns
    second = invoke(runner, args)
    assert second.exit_code == 0
    assert second.output == first.output
    assert files[0].stat().st_mtime_ns == stamp  # untouched on a hit


def test_dickson_corrupt_cache_recomputed(runner, tmp_path):
    args = ["dickson", "--p", "2", "--n", "3", "--cache-dir", str(tmp_path)]
    first = invoke(runner, args)
    path = tmp_path / "dickson-2-1-3.poly"
    path.write_text(path.read_text().replace("x1^4", "x1^5"))
    second = invoke(runner, args)
    assert second.exit_code == 0
    assert second.output == first.output
    # and the cache file was healed
    assert "x1^5" not in path.read_text()


def test_dickson_degree_guard(runner, tmp_path):
    res = invoke(runner, ["dickson", "--p", "3", "--n", "13",
                          "--cache-dir", str(tmp_path)])
    assert res.exit_code == 2
    assert "error:" in res.output


def test_symplectic_lists_xis(runner):
    res = invoke(runner, ["symplectic", "--p", "2", "--n", "2"])
    assert res.exit_code == 0
    _ring, polys = parse_polys_text(res.output)
    assert len(polys) == 3
    assert [f.total_degree() for f in polys] == [3, 5, 9]


def test_altn_lists_elementary_and_vandermonde(runner):
    res = invoke(runner, ["altn", "--p", "5", "--n", "3"])
    assert res.exit_code == 0
    _ring, polys = parse_polys_text(res.output)
    assert len(polys) == 4
    assert [f.total_degree() for f in polys] == [1, 2, 3, 3]


# ---------------------------------------------------------------------------
# gb / member
# ---------------------------------------------------------------------------

def test_gb_reduced_basis(runner, tmp_path):
    src = tmp_path / "ideal.poly"
    src.write_text(IDEAL)
    res = invoke(runner, ["gb", str(src)])
    assert res.exit_code == 0
    _ring, basis = parse_polys_text(res.output)
    assert [f.text() for f in basis] == ["x*y+y^2", "x^2", "y^3"]


def test_gb_bad_order_flag(runner, tmp_path):
    src = tmp_path / "ideal.poly"
    src.write_text(IDEAL)
    res = invoke(runner, ["gb", str(src), "--order", "sillylex"])
    assert res.exit_code == 2
    assert "bad order" in res.output


def test_member_yes_with_certificate(runner, tmp_path):
    ideal = tmp_path / "ideal.poly"
    elt = tmp_path / "elt.poly"
    cert_path = tmp_path / "cert.txt"
    ideal.write_text(IDEAL)
    elt.write_text(MEMBER_ELT)
    res = invoke(runner, ["member", str(ideal), str(elt),
                          "--out", str(cert_path)])
    assert res.exit_code == 0
    assert res.output.strip().endswith("member")
    cert = parse_certificate_text(cert_path.read_text())
    assert cert["remainder"].is_zero()
    acc = cert["remainder"]
    for h, b in zip(cert["cofactors"], cert["basis"]):
        acc = acc + h * b
    assert acc == cert["target"]


def test_member_no_exits_one(runner, tmp_path):
    ideal = tmp_path / "ideal.poly"
    elt = tmp_path / "elt.poly"
    ideal.write_text(IDEAL)
    elt.write_text(NON_MEMBER_ELT)
    res = invoke(runner, ["member", str(ideal), str(elt)])
    assert res.exit_code == 1
    assert "non-member" in res.output
    assert "x+y" in res.output


def test_member_ring_mismatch(runner, tmp_path):
    ideal = tmp_path / "ideal.poly"
    elt = tmp_path / "elt.poly"
    ideal.write_text(IDEAL)
    elt.write_text(MEMBER_ELT.replace("vars: x y", "vars: x y z"))
    res = invoke(runner, ["member", str(ideal), str(elt)])
    assert res.exit_code == 2


@pytest.mark.parametrize("p,code", [(3, 0), (7, 1)])
def test_member_vandermonde_dichotomy(runner, tmp_path, p, code):
    """Delta(n = 4) lies in (e_1..e_4) over GF(3) but not over GF(7)."""
    from invar.gf import field
    from invar.invariants import elementary_symmetric, vandermonde, xring
    from invar.polyio import format_polys

    ring = xring(field(p), 4)
    gens = [elementary_symmetric(ring, k) for k in range(1, 5)]
    ideal = tmp_path / "sym.poly"
    elt = tmp_path / "delta.poly"
    ideal.write_text(format_polys(ring, gens))
    elt.write_text(format_polys(ring, [vandermonde(ring)]))
    res = invoke(runner, ["member", str(ideal), str(elt)])
    assert res.exit_code == code


def test_parse_error_exits_two(runner, tmp_path):
    src = tmp_path / "ideal.poly"
    src.write_text("field: nonsense\npoly: x\n")
    res = invoke(runner, ["gb", str(src)])
    assert res.exit_code == 2
    assert "error:" in res.output


# ---------------------------------------------------------------------------
# verify / suite
# ---------------------------------------------------------------------------

def test_verify_writes_replayable_witness(runner, tmp_path):
    wit = tmp_path / "wit.json"
    res = invoke(runner, ["verify", "sp4-fpurity", "--q", "2",
                          "--out", str(wit)])
    assert res.exit_code == 0
    assert "verdict: VERIFIED" in res.output
    assert replay_document(wit.read_text())


def test_verify_machine_format(runner):
    res = invoke(runner, ["verify", "alt-dichotomy", "--n", "3", "--p", "5",
                          "--output", "machine"])
    assert res.exit_code == 0
    line = res.output.strip()
    assert line.startswith("claim=alt-dichotomy n=3 p=5 verdict=VERIFIED")
    assert "bound=0" in line


def test_verify_unknown_claim(runner):
    res = invoke(runner, ["verify", "nonsense"])
    assert res.exit_code == 2
    assert "unknown claim" in res.output


def test_verify_missing_param(runner):
    res = invoke(runner, ["verify", "alt-T", "--n", "3"])
    assert res.exit_code == 2
    assert "missing parameter" in res.output


def test_verify_env_output_override(runner):
    res = invoke(runner, ["verify", "alt-T", "--n", "3", "--p", "3"],
                 env={"INVAR_OUTPUT": "machine"})
    assert res.exit_code == 0
    assert res.output.startswith("claim=alt-T ")
    # an explicit flag wins over the environment
    res = invoke(runner, ["verify", "alt-T", "--n", "3", "--p", "3",
                          "--output", "text"],
                 env={"INVAR_OUTPUT": "machine"})
    assert res.output.startswith("claim: alt-T")


def test_suite_quick_machine_one_line_per_claim(runner):
    res = invoke(runner, ["suite", "quick", "--output", "machine",
                          "--trials", "5", "--ext-degree", "16"])
    assert res.exit_code == 0
    lines = res.output.strip().splitlines()
    assert len(lines) == 20
    assert all(line.startswith("claim=") for line in lines)
    assert all("verdict=" in line and "elapsed-ms=" in line for line in lines)


def test_suite_machine_stable_across_runs(runner):
    def strip_timing(text):
        return [line.split(" elapsed-ms=")[0]
                for line in text.strip().splitlines()]
    args = ["suite", "quick", "--output", "machine",
            "--trials", "5", "--ext-degree", "16"]
    a = invoke(runner, args)
    b = invoke(runner, args)
    assert strip_timing(a.output) == strip_timing(b.output)


def test_suite_text_summary(runner):
    res = invoke(runner, ["suite", "quick", "--trials", "5",
                          "--ext-degree", "16"])
    assert res.exit_code == 0
    last = res.output.strip().splitlines()[-1]
    assert last.startswith("summary: 20 claims")
    assert "refuted=0" in last


def test_help_lists_commands(runner):
    res = invoke(runner, ["--help"])
    assert res.exit_code == 0
    for name in ("altn", "dickson", "gb", "member", "suite",
                 "symplectic", "verify"):
        assert name in res.output
