import csv
from fractions import Fraction
import io
import json

from hypothesis import given, settings, strategies as st
import pytest

from icverify import cli
from icverify.grids import GridSpec, parse_grid, sample
from icverify.report import CheckReport, Margin, Tally, Witness, emit_report, parse_report

fractions = st.builds(Fraction, st.integers(-10**40, 10**40), st.integers(1, 10**40))
scalars = st.one_of(st.none(), st.integers(-10**6, 10**6), fractions,
                    st.floats(allow_nan=False), st.sampled_from([float("inf"), float("-inf")]))
witnesses = st.builds(Witness, scalars, scalars, scalars, scalars, st.text(max_size=5))
margins = st.builds(Margin, scalars, scalars, scalars, scalars)


@st.composite
def reports(draw, depth=1):
    ws = draw(st.lists(witnesses, max_size=4))
    links = draw(st.lists(reports(depth=depth - 1), max_size=2)) if depth > 0 else []
    return CheckReport(
        name=draw(st.text(min_size=1, max_size=10)),
        passed=not ws,
        points_checked=draw(st.integers(0, 10**6)),
        witnesses=ws,
        extremal_margin=draw(st.one_of(st.none(), margins)),
        sampler=draw(st.text(max_size=20)),
        violations=len(ws),
        links=links,
        note=draw(st.text(max_size=8)),
    )


@settings(max_examples=100, deadline=None)
@given(st.lists(reports(), max_size=3), st.integers(0, 2**32))
def test_json_round_trip(results, seed):
    data = emit_report(results, "json", seed=seed, precision=64)
    doc, back = parse_report(data)
    assert back == results
    assert doc["seed"] == seed and doc["rng"] == "MT19937"
    assert emit_report(back, "json", seed=seed, precision=64) == data


def test_empty_csv_is_header_only():
    assert emit_report([], "csv") == b"check,n,x,value,margin,passed\n"


def test_failing_row():
    t = Tally("demo")
    t.record(False, 3, Fraction(2, 7), Fraction(1, 5), 0)
    rows = list(csv.reader(io.StringIO(emit_report([t.report()], "csv").decode())))
    assert rows[0] == ["check", "n", "x", "value", "margin", "passed"]
    assert rows[-1] == ["demo", "3", "2/7", "1/5", "-1/5", "false"]


def test_rationals_never_decimal():
    t = Tally("demo")
    t.record(True, 1, Fraction(1, 3), Fraction(1, 3), Fraction(1, 2))
    doc = json.loads(emit_report([t.report()], "json"))
    em = doc["checks"][0]["extremal_margin"]
    assert em["x"] == "1/3" and em["margin"] == "1/6"


def test_tally_order_independent():
    pts = [(n, Fraction(k, 11)) for n in (1, 2) for k in range(11)]
    a, b = Tally("t"), Tally("t")
    for n, x in pts:
        a.record(x > Fraction(1, 2), n, x, x, Fraction(1, 2))
    for n, x in reversed(pts):
        b.record(x > Fraction(1, 2), n, x, x, Fraction(1, 2))
    assert a.report() == b.report()
    r = a.report()
    assert r.passed is False and r.violations == len(r.witnesses) == 12


class TestGrids:
    def test_uniform_includes_endpoints(self):
        pts = GridSpec("uniform", 0, 5, 51).points()
        assert len(pts) == 51 and pts[0] == 0 and pts[-1] == 5 and pts[1] == Fraction(1, 10)

    def test_random_reproducible_and_bounded(self):
        g = GridSpec("random", 0, 1, 100, seed=7)
        assert g.points() == g.points()
        assert all(0 <= x <= 1 and x.denominator <= 10**6 for x in g.points())
        assert GridSpec("random", 0, 1, 100, seed=8).points() != g.points()

    def test_logt(self):
        pts = GridSpec("logt", 1, 1000, 100).points()
        assert all(1 < t <= 1000 for t in pts) and pts[-1] == 1000

    def test_parse(self):
        g = parse_grid("uniform:0:1/2:3+explicit:1/7,2")
        assert sample(g) == [0, Fraction(1, 7), Fraction(1, 4), Fraction(1, 2), 2]
        assert parse_grid("random:0:1:5:9")[0].seed == 9
        with pytest.raises(ValueError):
            parse_grid("uniform:0:1")


def run(capsysbinary, *argv):
    code = cli.main(list(argv))
    return code, capsysbinary.readouterr().out


class TestCli:
    def test_eval(self, capsysbinary):
        code, out = run(capsysbinary, "eval", "--c", "-1", "--n", "2", "--x", "1/2")
        assert code == 0 and out == b"3/8 0.375\n"

    def test_eval_json(self, capsysbinary):
        code, out = run(capsysbinary, "eval", "--c", "0", "--n", "1", "--x", "1", "--format", "json")
        row = json.loads(out)["rows"][0]
        assert code == 0 and row["x"] == "1/1" and abs(row["S"] - 0.30850832255367) < 1e-13

    def test_table(self, capsysbinary):
        code, out = run(capsysbinary, "table", "--c", "0", "--n", "2", "--grid", "uniform:0:5:51",
                        "--format", "csv")
        rows = list(csv.reader(io.StringIO(out.decode())))
        assert code == 0 and rows[0] == ["x", "S", "tail_bound"] and len(rows) == 52
        assert rows[1] == ["0/1", "1.0", "0.0"]

    def test_entropy(self, capsysbinary):
        code, out = run(capsysbinary, "entropy", "--n", "2", "--x", "1/2")
        assert code == 0 and out.startswith(b"tsallis2=5/8 ")

    def test_scan(self, capsysbinary):
        code, out = run(capsysbinary, "scan", "--c", "1", "--n", "1/2", "--format", "text")
        assert code == 0 and out.startswith(b"PASS scan_c1_n1/2")

    def test_check_small(self, capsysbinary):
        code, out = run(capsysbinary, "check", "--n-max", "3", "--uniform", "17", "--randoms", "5")
        doc = json.loads(out)
        assert code == 0 and doc["passed"] and doc["seed"] == 20140101
        assert [c["name"] for c in doc["checks"]] == [
            "symmetry", "central_value", "heun_residual", "ratio_bound", "induction_step",
            "log_derivative_identity", "legendre_cross_identity", "sandwich", "eq3_sign",
            "logconvexity_verdict", "renyi_concavity", "tsallis_logconcavity"]

    def test_check_failure_exit_1(self, capsysbinary, monkeypatch):
        from icverify import exact_core
        real = exact_core.heun_residual
        monkeypatch.setattr(exact_core, "heun_residual", lambda n, x, n_max=200: real(n, x) + 1)
        code, out = run(capsysbinary, "check", "--n-max", "2", "--uniform", "5", "--randoms", "0",
                        "--format", "csv")
        assert code == 1 and b",false\n" in out

    def test_usage_errors_exit_2(self, capsysbinary):
        with pytest.raises(SystemExit) as e:
            cli.main(["eval", "--c", "5", "--n", "1", "--x", "0"])
        assert e.value.code == 2
        assert cli.main(["eval", "--n", "0", "--x", "1/2"]) == 2
        assert cli.main(["eval", "--n", "3", "--x", "3/2"]) == 2
        assert cli.main(["table", "--c", "0", "--n", "1", "--grid", "bogus"]) == 2
        assert cli.main(["check", "--n-max", "0"]) == 2

    def test_output_file_and_io_error(self, tmp_path, capsysbinary):
        out = tmp_path / "r.csv"
        assert cli.main(["table", "--n", "2", "--grid", "uniform:0:1:3", "-o", str(out)]) == 0
        assert out.read_bytes().startswith(b"x,S,tail_bound,exact\n")
        assert cli.main(["table", "--n", "2", "--grid", "uniform:0:1:3", "-o", str(tmp_path)]) == 2
