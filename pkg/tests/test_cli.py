import json

import pytest
from click.testing import CliRunner

from qdual.cli import main


@pytest.fixture
def run():
    runner = CliRunner()
    return lambda *args: runner.invoke(main, list(args))


class TestExpand:
    def test_theta(self, run):
        r = run("expand", "j(q;q^3)", "--order", "10")
        assert r.exit_code == 0
        assert r.output.strip() == "1 - q - q^2 + q^5 + q^7 + O(q^10)"

    def test_exact_polynomial_has_no_tail(self, run):
        r = run("expand", "gauss(4,2)")
        assert r.output.strip() == "1 + q + 2*q^2 + q^3 + q^4"

    def test_fractional_lattice(self, run):
        r = run("expand", "q^(1/3)*pochinf(q)", "--order", "2", "--lattice", "3")
        assert r.exit_code == 0
        assert r.output.strip() == "q^(1/3) - q^(4/3) + O(q^2)"

    def test_pole_is_evaluation_error(self, run):
        r = run("expand", "m(q;q;q)")
        assert r.exit_code == 1
        assert "pole" in r.output

    def test_syntax_error_names_offset(self, run):
        r = run("expand", "q^^")
        assert r.exit_code == 2
        assert "byte 2" in r.output


class TestVerify:
    def test_single_record(self, run):
        r = run("verify", "--id", "theta-def")
        assert r.exit_code == 0
        assert r.output.splitlines()[-1] == "1/1 passed"

    def test_unknown_record(self, run):
        assert run("verify", "--id", "no-such-record").exit_code == 2
        assert run("verify", "--group", "G99").exit_code == 2

    def test_selector_is_required(self, run):
        assert run("verify").exit_code == 2
        assert run("verify", "--id", "theta-def", "--all").exit_code == 2

    def test_group(self, run):
        r = run("verify", "--group", "G5")
        assert r.exit_code == 0
        assert r.output.splitlines()[-1] == "6/6 passed"

    def test_json_schema(self, run):
        r = run("verify", "--id", "RLNid4", "--format", "json")
        doc = json.loads(r.output)
        assert set(doc) == {"records", "passed", "total"}
        assert doc["passed"] == doc["total"] == 1
        rec = doc["records"][0]
        assert set(rec) == {"id", "group", "status", "order", "lattice", "samples", "first_mismatch", "millis"}
        assert rec["status"] == "pass" and rec["first_mismatch"] is None

    def test_order_override(self, run):
        doc = json.loads(run("verify", "--id", "theta-def", "--order", "12", "--format", "json").output)
        assert doc["records"][0]["order"] == "12"


class TestOther:
    def test_list_filter(self, run):
        r = run("list", "G5")
        assert r.exit_code == 0
        assert len(r.output.splitlines()) == 6

    def test_dual(self, run):
        r = run("dual", "sum(n>=0) q^(n^2)/poch(q;q;n)^2")
        assert r.exit_code == 0
        assert r.output.splitlines()[0] == "dual: sum(n>=0) q^n / (poch(q; q; n) * poch(q; q; n))"

    def test_dual_bad_descriptor(self, run):
        assert run("dual", "sum(n>=0) q^(n^3)").exit_code == 2

    def test_bailey_pair(self, run):
        r = run("bailey", "--pair", "SlaterA6")
        assert r.exit_code == 0
        assert r.output.startswith("PASS  SlaterA6")

    def test_bailey_unknown_pair(self, run):
        r = run("bailey", "--pair", "X")
        assert r.exit_code == 2
        assert "SlaterA6" in r.output

    def test_bailey_list(self, run):
        r = run("bailey", "--list")
        assert r.exit_code == 0 and "relative (a=q, base=q)" in r.output
