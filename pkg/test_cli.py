import pytest
from click.testing import CliRunner
from app.cli import cli


@pytest.fixture
def runner():
    return CliRunner()


def test_validate(runner, s3_path):
    result = runner.invoke(cli, ["validate", s3_path])
    assert result.exit_code == 0
    assert result.output.strip() == "OK S3 order=3 zero=0 one=1"


def test_validate_rejects_axiom_violation(runner, tmp_path):
    path = tmp_path / "bad.sr"
    path.write_text("semiring X\nelements 0 1\nzero 0\none 1\nadd\n0 1\n1 1\nmul\n0 0\n0 0\n")
    result = runner.invoke(cli, ["validate", str(path)])
    assert result.exit_code == 2
    assert "mul-identity" in result.output


def test_validate_reports_parse_line(runner, tmp_path):
    path = tmp_path / "short.sr"
    path.write_text("semiring X\nelements 0 1\n")
    result = runner.invoke(cli, ["validate", str(path)])
    assert result.exit_code == 2
    assert "line 3" in result.output


def test_ideals(runner, s3_path):
    result = runner.invoke(cli, ["ideals", s3_path])
    assert result.exit_code == 0
    assert result.output.splitlines() == [
        "P0 {0} subtractive",
        "P1 {0,T} C=P2",
        "P2 {0,1,T} subtractive",
        "P0 < P1",
        "P1 < P2",
    ]


def test_ideals_subtractive_only(runner, s3_path):
    result = runner.invoke(cli, ["ideals", s3_path, "--subtractive-only"])
    assert result.output.splitlines() == ["P0 {0} subtractive", "P2 {0,1,T} subtractive"]


def test_closure(runner, s3_path):
    result = runner.invoke(cli, ["closure", s3_path, "--ideal", "0,T"])
    assert result.exit_code == 0
    assert result.output.splitlines() == ["C({0,T}) = {0,1,T}", "subtractive: no (x=T, y=1)"]


def test_closure_of_non_ideal(runner, s3_path):
    result = runner.invoke(cli, ["closure", s3_path, "--ideal", "0,1"])
    assert result.exit_code == 2
    assert "not-an-ideal" in result.output


def test_topology(runner, s3_path):
    result = runner.invoke(cli, ["topology", s3_path, "--semantics", "fixedpoint"])
    assert result.exit_code == 0
    out = result.output
    assert "subbasis: {P0} {P2}" in out
    assert "closed sets: 5" in out
    assert "T0: yes" in out
    assert "irreducible {P0,P1,P2} generic=P1" in out


def test_topology_cap(runner, s4_path):
    result = runner.invoke(cli, ["topology", s4_path, "--semantics", "fixedpoint", "--max-closed", "3"])
    assert result.exit_code == 3
    assert "cap-exceeded" in result.output


def test_check_file(runner, s3_path):
    result = runner.invoke(cli, ["check", s3_path, "--claims", "C9", "--semantics", "downset", "--no-nat"])
    assert result.exit_code == 0
    assert result.output.splitlines() == [
        "CLAIM C9 STRUCT S3 SEM downset RESULT fails WITNESS P1={0,T} P2={0,1,T} closure={P0,P1,P2}",
        "SUMMARY total=1 holds=0 fails=1 cap=0 must-hold-failures=0",
    ]


def test_check_rejects_unknown_claim(runner, s3_path):
    result = runner.invoke(cli, ["check", s3_path, "--claims", "C42"])
    assert result.exit_code == 2


def test_search(runner):
    result = runner.invoke(cli, ["search", "--order", "2"])
    assert result.exit_code == 0
    assert result.output.count("semiring G2-") == 2
    assert result.output.strip().endswith("# 2 semirings of order 2")


def test_nat(runner):
    result = runner.invoke(cli, ["nat", "--nat-ideal", "2,3"])
    assert result.exit_code == 0
    assert result.output.splitlines() == [
        "<2,3> = {0,2,3,4,...} (cofinite, missing {1})",
        "C_sub = <1> = {0,1,2,...} (all of N)",
        "subtractive: no (x=2, y=1)",
        "radical = <2,3> = {0,2,3,4,...} (cofinite, missing {1})",
    ]


def test_log_level_override(runner, s3_path):
    import logging
    from app.core.logger import LoggerConfig, get_logger

    result = runner.invoke(cli, ["--log-level", "info", "validate", s3_path])
    level = get_logger("app.cli").level
    LoggerConfig.set_level("WARNING")
    assert result.exit_code == 0
    assert level == logging.INFO
    assert "OK S3 order=3 zero=0 one=1" in result.output


def test_validate_rejects_non_utf8_file(runner, tmp_path):
    path = tmp_path / "latin.sr"
    path.write_bytes(b"semiring X\nelements 0 \xff\n")
    result = runner.invoke(cli, ["validate", str(path)])
    assert result.exit_code == 2
    assert "parse-error: line 2" in result.output


def test_nat_rejects_oversized_generators(runner):
    result = runner.invoke(cli, ["nat", "--nat-ideal", "100000,99999"])
    assert result.exit_code == 2
    assert "NAT_MAX_GENERATOR" in result.output
