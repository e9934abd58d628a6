"""Command-line surface: outputs, determinism and exit codes."""

import json

import numpy as np
import pytest

from adhocsinr.cli import main
from adhocsinr.csvio import read_csv_columns


def _run(*argv):
    return main(list(argv))


def _sim(tmp_path, name="sim.csv", model="nfd", n="400", seed="1", extra=()):
    out = tmp_path / name
    code = _run(
        "simulate", "--model", model, "--mu", "3.7", "--delta-db", "-20",
        "--n", n, "--seed", seed, "--out", str(out), *extra,
    )
    assert code == 0
    return out


class TestSimulate:
    def test_writes_csv_and_sidecar(self, tmp_path):
        out = _sim(tmp_path)
        cols = read_csv_columns(out)
        assert set(cols) == {"q", "empirical"}
        assert cols["q"].size == 400
        assert np.all(np.diff(cols["q"]) >= 0.0)
        assert cols["empirical"][-1] == 1.0
        sidecar = json.loads(out.with_suffix(".json").read_text())
        assert sidecar["config"]["model"] == "nfd"
        assert "mean_inverse" in sidecar["summary"]
        assert sidecar["config_hash"]

    def test_byte_identical_reruns(self, tmp_path):
        a = _sim(tmp_path, name="a.csv")
        b = _sim(tmp_path, name="b.csv")
        assert a.read_bytes() == b.read_bytes()

    def test_thread_count_does_not_change_output(self, tmp_path):
        a = _sim(tmp_path, name="t1.csv")
        b = _sim(tmp_path, name="t2.csv", extra=("--threads", "2"))
        assert a.read_bytes() == b.read_bytes()

    def test_zero_n_exits_2(self, tmp_path):
        with pytest.raises(SystemExit) as info:
            _run("simulate", "--model", "nfd", "--n", "0", "--out", str(tmp_path / "x.csv"))
        assert info.value.code == 2

    def test_bad_mu_exits_2(self, tmp_path):
        with pytest.raises(SystemExit) as info:
            _run("simulate", "--model", "nfd", "--mu", "1.5", "--out", str(tmp_path / "x.csv"))
        assert info.value.code == 2


class TestBounds:
    def test_nfd_columns(self, tmp_path):
        out = tmp_path / "b.csv"
        assert _run("bounds", "--model", "nfd", "--mu", "3.7",
                    "--grid-db=-10:20:16", "--out", str(out)) == 0
        cols = read_csv_columns(out)
        assert set(cols) == {"q", "lb", "ub"}
        assert np.all(cols["lb"] <= cols["ub"] + 1e-12)

    def test_fd_has_exact_column_and_db_axis(self, tmp_path):
        out = tmp_path / "b.csv"
        assert _run("bounds", "--model", "fd", "--mu", "4", "--db",
                    "--grid-db=-10:10:5", "--out", str(out)) == 0
        cols = read_csv_columns(out)
        assert set(cols) == {"q_db", "lb", "ub", "exact"}
        np.testing.assert_allclose(cols["q_db"], np.linspace(-10, 10, 5), atol=1e-9)

    def test_pfd_lower_bound_only(self, tmp_path):
        out = tmp_path / "b.csv"
        assert _run("bounds", "--model", "pfd", "--grid-db", "0:10:3", "--out", str(out)) == 0
        assert set(read_csv_columns(out)) == {"q", "lb"}


class TestRates:
    def test_shannon_table(self, tmp_path):
        out = tmp_path / "r.csv"
        assert _run("rates", "--model", "nfd", "--mu", "3.7", "--alpha-db=-5:15:5",
                    "--n", "500", "--seed", "3", "--out", str(out)) == 0
        cols = read_csv_columns(out)
        assert list(cols) == ["alpha_db", "rate", "se", "rate_lb", "rate_ub"]
        assert np.all(cols["rate_lb"] <= cols["rate_ub"] + 1e-9)

    def test_outage_table(self, tmp_path):
        out = tmp_path / "o.csv"
        assert _run("rates", "--outage", "--mu", "3.7", "--alpha-db", "10:10:1",
                    "--eta-grid-db=-5:20:6", "--n", "500", "--seed", "3",
                    "--out", str(out)) == 0
        cols = read_csv_columns(out)
        assert list(cols) == ["eta_db", "outage_rate", "se", "or_lb", "or_ub"]

    def test_outage_requires_eta_grid(self, tmp_path):
        with pytest.raises(SystemExit) as info:
            _run("rates", "--outage", "--alpha-db", "10:10:1", "--out", str(tmp_path / "x.csv"))
        assert info.value.code == 2


class TestLaplaceCdf:
    def test_table(self, tmp_path):
        out = tmp_path / "l.csv"
        assert _run("laplace-cdf", "--model", "nfd", "--mu", "3.7", "--delta-db", "-20",
                    "--grid-db=-10:20:7", "--out", str(out)) == 0
        cols = read_csv_columns(out)
        assert list(cols) == ["q", "cdf_laplace"]
        assert np.all(np.diff(cols["cdf_laplace"]) >= 0.0)


class TestMmimoCommand:
    def test_per_antenna_files(self, tmp_path):
        stem = tmp_path / "mm"
        assert _run("mmimo", "--m-list", "2,4", "--kind", "both", "--n", "200",
                    "--k-min", "50", "--seed", "5", "--out", str(stem)) == 0
        for m in (2, 4):
            for kind in ("finite", "asymptotic"):
                cols = read_csv_columns(f"{stem}_{kind}_m{m}.csv")
                assert list(cols) == ["sinr_db", "empirical_cdf"]
                assert cols["sinr_db"].size == 200


class TestRealization:
    def test_points_csv(self, tmp_path):
        out = tmp_path / "pts.csv"
        assert _run("realization", "--lambda", "0.05", "--window", "20",
                    "--seed", "9", "--out", str(out)) == 0
        cols = read_csv_columns(out)
        assert set(cols) == {"x", "y"}
        assert np.all(np.abs(cols["x"]) <= 10.0)


class TestCompare:
    def test_ks_pass_and_fail(self, tmp_path):
        a = _sim(tmp_path, name="a.csv", seed="1")
        b = _sim(tmp_path, name="b.csv", seed="2")
        assert _run("compare", "--a", str(a), "--b", str(b), "--ks-max", "0.5") == 0
        assert _run("compare", "--a", str(a), "--b", str(b), "--ks-max", "1e-6") == 1

    def test_bound_check(self, tmp_path):
        sim = _sim(tmp_path, name="s.csv", n="2000")
        bounds = tmp_path / "bounds.csv"
        _run("bounds", "--model", "nfd", "--mu", "3.7", "--grid-db=-20:30:40",
             "--out", str(bounds))
        assert _run("compare", "--a", str(sim), "--bounds", str(bounds),
                    "--bound-tol", "0.05") == 0

    def test_laplace_check(self, tmp_path, capsys):
        sim = _sim(tmp_path, name="s.csv", n="2000")
        lap = tmp_path / "lap.csv"
        _run("laplace-cdf", "--model", "nfd", "--mu", "3.7", "--delta-db", "-20",
             "--grid-db=-15:25:9", "--out", str(lap))
        assert _run("compare", "--a", str(sim), "--laplace", str(lap),
                    "--sup-max", "0.08") == 0
        report = json.loads(capsys.readouterr().out)
        assert report["passed"] is True
        assert report["laplace_sup_distance"] < 0.08


class TestNumericalFailureExit:
    def test_exit_code_3(self, tmp_path, monkeypatch):
        import adhocsinr.cli as cli
        from adhocsinr.numerics import QuadratureError

        def boom(*a, **kw):
            raise QuadratureError("synthetic failure", 0.0, 1.0)

        monkeypatch.setattr(cli, "run_mc", boom)
        code = _run("simulate", "--model", "nfd", "--n", "10", "--out", str(tmp_path / "x.csv"))
        assert code == 3
