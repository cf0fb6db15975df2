import csv
import json

import numpy as np
import pytest

from theta13.cli import main, parse_complex, parse_z
from theta13.report import SuiteConfig, dumps, emit_trace, oracle_comparison, random_suite, run_suite
from theta13.torus import make_siegel


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


class TestParsing:
    @pytest.mark.parametrize(
        "text, want",
        [("i", 1j), ("-i", -1j), ("2", 2), ("0.3+1.1i", 0.3 + 1.1j), ("-0.2-0.5i", -0.2 - 0.5j), ("1.5j", 1.5j)],
    )
    def test_complex(self, text, want):
        assert parse_complex(text) == want

    def test_z(self):
        assert np.allclose(parse_z("i,0,i").matrix, np.diag([1j, 1j]))

    def test_bad_input(self):
        with pytest.raises(ValueError):
            parse_z("i,0")
        with pytest.raises(ValueError):
            parse_complex("nope")


class TestJson:
    def test_round_trip_floats(self):
        x = 0.1 + 0.2
        assert json.loads(dumps({"x": x}))["x"] == x

    def test_non_finite(self):
        assert json.loads(dumps({"r": float("inf")}))["r"] == "inf"

    def test_numpy_and_complex(self):
        out = json.loads(dumps({"a": np.arange(2), "c": 1 + 2j, "b": np.bool_(True)}))
        assert out == {"a": [0, 1], "c": [1.0, 2.0], "b": True}


class TestCommands:
    def test_gen(self, capsys):
        code, out = run(capsys, "gen", "--seed", "3")
        assert code == 0
        assert parse_z(out.out.strip()).lam_min >= 0.3 - 1e-12

    def test_theta(self, capsys):
        code, out = run(capsys, "theta", "--z", "i,0,i", "--char", "0,0,0,0", "--v", "0,0")
        assert code == 0
        assert json.loads(out.out)["value"][0] == pytest.approx(1.180340599, abs=1e-9)

    def test_census(self, capsys):
        code, out = run(capsys, "census", "--z", "0.1+1.1i,0.2+0.3i,-0.1+1.4i")
        assert code == 0 and json.loads(out.out)["on_count"] == 10

    def test_census_product_fails(self, capsys):
        code, out = run(capsys, "census", "--z", "i,0,i")
        assert code == 1 and json.loads(out.out)["on_count"] == 13

    def test_translates(self, capsys):
        code, out = run(capsys, "translates")
        assert code == 0 and json.loads(out.out)["all_distinct"]

    def test_product(self, capsys):
        code, out = run(capsys, "product", "--tau1", "0.1+i", "--tau2=-0.2+1.2i")
        assert code == 0 and json.loads(out.out)["status"] == "pass"

    def test_smoothness(self, capsys):
        code, out = run(capsys, "smoothness", "-n", "20")
        assert code == 0 and json.loads(out.out)["n"] == 20

    def test_invalid_z(self, capsys):
        code, out = run(capsys, "census", "--z", "i,2i,i")
        assert code == 2 and "invalid input" in out.err

    def test_invalid_eps(self, capsys):
        assert run(capsys, "theta", "--eps", "0")[0] == 2

    def test_env_eps(self, capsys, monkeypatch):
        monkeypatch.setenv("THETA13_EPS", "1e-6")
        _, out = run(capsys, "theta", "--z", "i,0,i")
        monkeypatch.setenv("THETA13_EPS", "1e-14")
        _, out2 = run(capsys, "theta", "--z", "i,0,i")
        assert json.loads(out.out)["radius_used"] < json.loads(out2.out)["radius_used"]
        monkeypatch.setenv("THETA13_EPS", "junk")
        assert run(capsys, "theta")[0] == 2

    def test_unknown_command(self, capsys):
        assert run(capsys, "frobnicate")[0] == 2

    def test_help(self, capsys):
        assert run(capsys, "--help")[0] == 0


class TestTrace:
    def test_file(self, tmp_path, capsys):
        out = tmp_path / "t.csv"
        assert run(capsys, "trace", "-n", "100", "-o", str(out))[0] == 0
        rows = list(csv.reader(out.open()))
        assert len(rows) == 101
        assert rows[0] == ["x1", "x2", "y1", "y2", "re_theta", "im_theta", "grad_norm"]
        data = np.array(rows[1:], dtype=float)
        assert np.all((data[:, :4] >= 0) & (data[:, :4] < 1))

    def test_values_small_and_repeatable(self, tmp_path, Z_generic):
        from theta13.divisor import divisor_scale

        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        emit_trace(Z_generic, 30, 5, a)
        emit_trace(Z_generic, 30, 5, b)
        assert a.read_bytes() == b.read_bytes()
        data = np.loadtxt(a, delimiter=",", skiprows=1)
        assert np.max(np.abs(data[:, 4:6])) < 1e-8 * divisor_scale(Z_generic)

    def test_io_error_surfaces(self, Z_generic, tmp_path):
        with pytest.raises(OSError):
            emit_trace(Z_generic, 5, 0, tmp_path / "missing" / "x.csv")


@pytest.fixture(scope="module")
def report42():
    return random_suite(42)


class TestSuite:
    def test_random_42(self, report42):
        d = report42.to_dict()
        assert report42.exit_code == 0
        assert d["sections"]["census"]["on_count"] == 10
        assert set(d["sections"]) == {
            "census", "oddness", "inverse_formula", "quasiperiodicity", "eigenspaces",
            "translates", "product", "smoothness", "oracle_comparison",
        }
        assert d["sections"]["product"]["status"] == "skipped"
        assert d["sections"]["oracle_comparison"]["status"] == "skipped"

    def test_self_contained(self, report42):
        d = report42.to_dict()
        for key in ("tool_version", "Z", "seed", "eps", "thresholds"):
            assert key in d
        assert len(d["Z"]) == 6
        # the verdict is recomputable from the embedded numbers
        inv = d["sections"]["inverse_formula"]
        assert (inv["max_residual"] < d["thresholds"]["inverse_formula"]) == (inv["status"] == "pass")

    def test_cli_byte_identical(self, tmp_path, capsys):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert run(capsys, "suite", "--random", "42", "-o", str(a))[0] == 0
        assert run(capsys, "suite", "--random", "42", "-o", str(b))[0] == 0
        assert a.read_bytes() == b.read_bytes()
        assert json.loads(a.read_text())["sections"]["census"]["on_count"] == 10

    def test_product(self):
        rep = run_suite(make_siegel(1j, 0, 1j), SuiteConfig(n_smooth=30))
        s = rep.to_dict()["sections"]
        assert s["product"]["status"] == "pass"
        assert s["census"]["status"] == "warn"
        assert rep.exit_code == 0

    def test_paranoid(self, Z_generic):
        rep = run_suite(Z_generic, SuiteConfig(paranoid=True, n_smooth=20, n_oracle=50, n_oracle_grad=5))
        sec = rep.sections["oracle_comparison"]
        assert sec["status"] == "pass"
        assert sec["value_residual"] < 1e-11

    def test_section_errors_are_recorded(self, Z_generic, monkeypatch):
        import theta13.report as rp
        from theta13.errors import SamplingExhausted

        def boom(*a, **k):
            raise SamplingExhausted("no points")

        monkeypatch.setitem(rp.SECTIONS, "smoothness", boom)
        rep = run_suite(Z_generic, SuiteConfig(n_smooth=20))
        assert rep.sections["smoothness"]["status"] == "error"
        assert rep.sections["census"]["status"] == "pass"
        assert rep.exit_code == 1

    def test_oracle_helper(self, Z_generic):
        out = oracle_comparison(Z_generic, 10, 3, seed=1)
        assert out["value_residual"] < 1e-11 and out["gradient_residual"] < 1e-6
