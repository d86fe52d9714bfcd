import json
from fractions import Fraction

import pytest

import scanstat.cli as cli
from scanstat.exactnum import DomainError
from scanstat.report import Report


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestEval:
    def test_range_cdf_value(self, capsys):
        code, out, _ = run(capsys, "eval", "--stat", "p-3", "--N", "3", "--w", "1/2")
        assert code == 0
        assert "P = 1/2" in out

    def test_saturated_json(self, capsys):
        code, out, _ = run(capsys, "eval", "--stat", "pc-3", "--N", "10", "--w", "1/5", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["schema"] == 1
        assert payload["p"] == "1"
        assert payload["regime"] == "saturated"

    def test_spacing_value(self, capsys):
        code, out, _ = run(capsys, "eval", "--stat", "pc-nm1", "--N", "3", "--w", "1/6")
        assert code == 0
        assert "P = 3/4" in out

    def test_decimal_width_is_exact(self, capsys):
        code, out, _ = run(capsys, "eval", "--stat", "pc-3", "--N", "4", "--w", "0.25", "--format", "json")
        assert code == 0
        assert json.loads(out)["p"] == "1/2"

    def test_float_mode(self, capsys):
        code, out, _ = run(capsys, "eval", "--stat", "p-3", "--N", "3", "--w", "3/5", "--format", "json")
        assert code == 0
        assert json.loads(out)["p_float"] == pytest.approx(0.648)


class TestErrors:
    def test_bad_n(self, capsys):
        code, _, err = run(capsys, "eval", "--stat", "p-3", "--N", "2", "--w", "1/2")
        assert code == 2
        assert "N must be" in err

    def test_bad_width(self, capsys):
        code, _, err = run(capsys, "eval", "--stat", "p-3", "--N", "3", "--w", "3/2")
        assert code == 2

    def test_unparseable_width(self, capsys):
        code, _, err = run(capsys, "eval", "--stat", "p-3", "--N", "3", "--w", "abc")
        assert code == 2
        assert "rational" in err

    def test_usage_error_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["eval", "--stat", "bogus", "--N", "3", "--w", "1/2"])
        assert exc.value.code == 2

    def test_verification_failure_exits_3(self, capsys):
        failing = Report("demo")
        failing.add("broken", False, detail="nope")
        assert cli._report_exit(failing, "text") == 3


class TestTable:
    def test_csv(self, capsys):
        code, out, _ = run(capsys, "table", "--stat", "p-3", "--N", "3", "--w", "1/4,1/2")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("kind,N,w")
        assert "5/32" in lines[1]
        assert "1/2" in lines[2]

    def test_json_round_trip(self, capsys):
        code, out, _ = run(capsys, "table", "--stat", "pc-3", "--N", "4,5", "--w", "1/5,1/2", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert json.dumps(payload, indent=2, sort_keys=True) == out.strip()
        assert len(payload["rows"]) == 4


class TestSimulate:
    def test_rows(self, capsys):
        code, out, _ = run(
            capsys,
            "simulate", "--kind", "circular", "--N", "4", "--k", "3",
            "--w", "1/4", "--samples", "20000", "--seed", "5",
        )
        assert code == 0
        header, row = out.strip().splitlines()
        assert header.startswith("w,p_hat,ci_low,ci_high")
        p_hat = float(row.split(",")[1])
        assert 0.45 < p_hat < 0.55

    def test_reproducible(self, capsys):
        args = ["simulate", "--kind", "linear", "--N", "5", "--k", "2", "--w", "1/10",
                "--samples", "5000", "--seed", "11", "--streams", "3"]
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args)
        assert out1 == out2


class TestVerifyCommands:
    def test_verify_series(self, capsys):
        code, out, _ = run(capsys, "verify-series", "--order", "5", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["report"]["passed"] is True

    def test_verify_measures_fast(self, capsys):
        code, out, _ = run(
            capsys, "verify-measures", "--n-max", "2", "--samples", "100000",
            "--seed", "6", "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["report"]["passed"] is True
        assert payload["rows"]

    def test_cross_check(self, capsys):
        code, out, _ = run(capsys, "cross-check", "--n-max", "6", "--grid", "8", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        names = {c["name"]: c["passed"] for c in payload["report"]["checks"]}
        assert names["overlap_pc_nm1_equals_pc_3_at_N4"]
        assert names["pathway_equivalence_p-3"]


def test_parse_rational():
    assert cli.parse_rational("1/6") == Fraction(1, 6)
    assert cli.parse_rational("0.25") == Fraction(1, 4)
    with pytest.raises(DomainError):
        cli.parse_rational("1/0")
