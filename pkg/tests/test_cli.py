import io
import json

import pytest

from carlitzq.cli import main, parse_expr
from carlitzq.errors import DomainError


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_parse_expr():
    assert parse_expr("1+2p", 5) == 11
    assert parse_expr("1+p^2", 7) == 50
    assert parse_expr("7/2") == pytest.approx(3.5)
    with pytest.raises(DomainError):
        parse_expr("__import__('os')", 5)
    with pytest.raises(DomainError):
        parse_expr("1+p")


def test_compute_euler_table():
    code, out, _ = run("compute", "euler", "--n-max", "6")
    assert code == 0
    assert out.splitlines() == ["n,value", "0,1", "1,-1/2", "2,0", "3,1/4", "4,0", "5,-1/2", "6,0"]


def test_compute_euler_q_routes_agree():
    code, out, _ = run("compute", "euler-q", "--p", "5", "--q", "1+p", "--n-max", "4",
                       "--prec", "10", "--route", "all")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,recurrence,closed_form,integral"
    for line in lines[1:]:
        _, a, b, c = line.split(",")
        assert a == b == c


def test_compute_lfunc_json():
    code, out, _ = run("compute", "lfunc", "--p", "5", "--chi", "trivial", "--s", "-0",
                       "--q", "1+p", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "carlitz-q/1"
    values = {json.dumps(r["value"]) for r in doc["rows"]}
    assert len(values) == 1
    assert {r["route"] for r in doc["rows"]} == {"integral", "neg_int", "series"}


def test_compute_gen_euler_and_poly():
    code, out, _ = run("compute", "gen-euler", "--p", "5", "--chi", "quadratic:3", "--n-max", "3",
                       "--prec", "8")
    assert code == 0
    for line in out.splitlines()[1:]:
        _, a, b = line.split(",")
        assert a == b
    code, out, _ = run("compute", "euler-q-poly", "--p", "7", "--x", "1/2", "--n-max", "3",
                       "--prec", "6")
    assert code == 0
    for line in out.splitlines()[1:]:
        _, a, b, c = line.split(",")
        assert a == b == c


def test_exit_codes():
    assert run("compute", "euler-q", "--p", "4")[0] == 2
    assert run("compute", "euler-q", "--p", "5", "--q", "2")[0] == 2
    assert run("compute", "lfunc", "--p", "5", "--s", "1/5")[0] == 2
    assert run("compute", "gen-euler", "--p", "5", "--chi", "quadratic:4")[0] == 2
    code, _, err = run("compute", "euler-q", "--p", "5", "--prec", "30", "--route", "integral",
                       "--max-level", "2")
    assert code == 3
    assert json.loads(err)["error"] == "PrecisionNotReached"


def test_env_level_cap(monkeypatch):
    monkeypatch.setenv("CARLITZ_MAX_LEVEL", "2")
    code, _, _ = run("compute", "euler-q", "--p", "5", "--prec", "30", "--route", "integral")
    assert code == 3


def test_verify_examples():
    code, out, _ = run("verify", "witt", "--p", "5", "--prec", "12")
    assert code == 0
    assert "FAIL" not in out
    code, out, _ = run("verify", "distribution", "--p", "5", "--d", "3", "--F", "15")
    assert code == 0
    assert "quadratic:3" in out


def test_verify_failure_exit_code():
    code, _, err = run("verify", "witt", "--p", "5", "--prec", "12", "--max-level", "2",
                       "--quick")
    assert code == 1
    assert err.startswith("FAIL")


def test_output_is_deterministic():
    a = run("verify", "series", "--quick", "--format", "json")
    b = run("verify", "series", "--quick", "--format", "json")
    assert a == b
    assert json.loads(a[1])["passed"] is True


def test_csv_rendering_of_padic_values():
    from fractions import Fraction

    from carlitzq.cli import _csv_value
    from carlitzq.padic_core import PadicNumber

    assert _csv_value(PadicNumber.from_rational(Fraction(7, 25), 5, 4)) == "7/5^2"
    assert _csv_value(PadicNumber.from_int(30, 5, 3)) == "30"
    assert _csv_value(PadicNumber.zero(5, 3)) == "0"
    assert _csv_value(Fraction(-1, 2)) == "-1/2"
