import csv
import io
import json
import math

import numpy as np
import pytest

from qbrach.cli import main, parse_vary


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def tables(text):
    """Split CSV output into {name: rows}, ignoring meta lines."""
    out, name, chunk = {}, "main", []
    for line in text.splitlines() + [""]:
        if line.startswith("# table="):
            name = line.split("=", 1)[1]
        elif line.startswith("#"):
            continue
        elif line:
            chunk.append(line)
        elif chunk:
            out[name] = list(csv.DictReader(io.StringIO("\n".join(chunk))))
            chunk = []
    return out


def test_table1(capsys):
    code, out, _ = run(capsys, "table1", "--r", "1", "--s", "2", "--theta", str(math.pi / 4), "--no-meta")
    assert code == 0
    t = tables(out)
    w, a = float(t["model"][0]["omega"]), float(t["model"][0]["alpha"])
    taus = [float(r["tau_numeric"]) for r in t["rows"]]
    assert taus[0] == pytest.approx(math.pi / w, abs=1e-9)
    assert taus[1] == pytest.approx((math.pi + 2 * a) / w, abs=1e-9)
    assert taus[2] == pytest.approx(a / w, abs=1e-9)
    assert taus[3] == pytest.approx(a / w, abs=1e-9)


def test_table1_hermitian_collapse(capsys):
    code, out, _ = run(capsys, "table1", "--r", "0", "--s", "1", "--theta", "0", "--no-meta")
    rows = tables(out)["rows"]
    taus = [float(r["tau_analytic"]) for r in rows]
    assert taus == pytest.approx([math.pi / 2, math.pi / 2, math.pi, math.pi], abs=1e-14)


def test_table2_rows_equal(capsys):
    code, out, _ = run(capsys, "table2", "--no-meta")
    assert code == 0
    t = tables(out)
    w = float(t["model"][0]["omega"])
    for row in t["rows"]:
        assert float(row["tau_analytic"]) == pytest.approx(math.pi / w, rel=1e-14)
        assert float(row["tau_numeric"]) == pytest.approx(math.pi / w, abs=1e-9)
        assert float(row["tau_first_crossing"]) < float(row["tau_numeric"])


def test_table2_without_dissipation(capsys):
    code, out, _ = run(capsys, "table2", "--lambda-re", "0", "--eps", "2", "--no-meta")
    t = tables(out)
    assert float(t["model"][0]["omega"]) == 4.0
    for row in t["rows"]:
        assert float(row["tau_first_crossing"]) == pytest.approx(math.pi / 4, abs=1e-9)


@pytest.mark.parametrize("fig_id, target", [(1, 4.87 - 3.31j), (2, 6.99 - 0.46j)])
def test_figure_target_frequency(capsys, fig_id, target):
    code, out, _ = run(capsys, "figure", "--id", str(fig_id), "--samples", "21", "--no-meta")
    assert code == 0
    first = tables(out)["sets"][0]
    assert abs(float(first["omega_re"]) - target.real) <= 0.01
    assert abs(float(first["omega_im"]) - target.imag) <= 0.01


def test_figure_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert main(["figure", "--id", "2", "--samples", "51", "--no-meta", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_figure_roots_stable_under_refinement(capsys):
    _, coarse, _ = run(capsys, "figure", "--id", "2", "--samples", "3", "--no-meta", "--grid-n", "4096")
    _, fine, _ = run(capsys, "figure", "--id", "2", "--samples", "3", "--no-meta", "--grid-n", "8192")
    for c, f in zip(tables(coarse)["sets"], tables(fine)["sets"]):
        assert c["status"] == f["status"]
        if c["status"] == "root":
            assert float(c["tau"]) == pytest.approx(float(f["tau"]), abs=1e-10)


def test_solve_short_bc2(capsys):
    code, out, _ = run(capsys, "solve", "--alpha", "-1.4", "--omega", "2", "--formulation", "BC2", "--no-meta")
    assert code == 0
    res = tables(out)["result"][0]
    assert float(res["tau"]) == pytest.approx((math.pi - 2.8) / 2, abs=1e-12)
    assert res["method"] == "analytic"


def test_solve_numeric_method(capsys):
    code, out, _ = run(capsys, "solve", "--alpha", "-1.4", "--omega", "2", "--method", "numeric", "--no-meta")
    assert float(tables(out)["result"][0]["tau"]) == pytest.approx((math.pi - 2.8) / 2, abs=1e-9)


def test_exit_codes(capsys):
    code, _, err = run(capsys, "solve", "--r", "2", "--s", "1", "--theta", str(math.pi / 2))
    assert code == 1 and "error" in err
    code, _, err = run(capsys, "solve", "--model", "dissipative-complex", "--no-meta")
    assert code == 2 and "no root" in err
    code, _, _ = run(capsys, "solve", "--formulation", "BC", "--method", "analytic")
    assert code == 1
    code, _, _ = run(capsys, "solve", "--grid-n", "10", "--method", "numeric")
    assert code == 1


def test_config_file_and_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# PT example\nalpha = -1.4\nomega=2\nno-meta = true\nformat=json\n")
    code, out, _ = run(capsys, "solve", "--config", str(cfg))
    assert code == 0
    doc = json.loads(out)
    assert "meta" not in doc
    assert doc["result"][0]["tau"] == pytest.approx((math.pi - 2.8) / 2, abs=1e-12)
    code, out, _ = run(capsys, "solve", "--config", str(cfg), "--omega", "4")
    assert json.loads(out)["result"][0]["tau"] == pytest.approx((math.pi - 2.8) / 4, abs=1e-12)
    cfg.write_text("bogus=1\n")
    assert run(capsys, "solve", "--config", str(cfg))[0] == 1


def test_meta_block(capsys):
    _, out, _ = run(capsys, "solve", "--alpha", "0.1", "--omega", "2")
    assert out.startswith("# command=\"solve\"")
    _, out, _ = run(capsys, "solve", "--alpha", "0.1", "--omega", "2", "--format", "json")
    meta = json.loads(out)["meta"]
    assert meta["parameters"]["alpha"] == 0.1 and "timestamp" in meta


def test_sweep_monotone(capsys):
    code, out, _ = run(capsys, "sweep", "--vary", "alpha:-1.5707963267948966:1.5707963267948966:25:open",
                       "--no-meta")
    assert code == 0
    rows = tables(out)["main"]
    taus = np.array([float(r["tau"]) for r in rows])
    assert np.all(np.diff(taus) > 0)
    alphas = np.array([float(r["alpha"]) for r in rows])
    np.testing.assert_allclose(taus, (math.pi + 2 * alphas) / 2, atol=1e-12)


def test_sweep_jobs_do_not_change_output(capsys):
    argv = ["sweep", "--model", "dissipative-real", "--vary", "lambda:0:0.6:4", "--vary", "theta:-0.5:0.5:3",
            "--omega-re", "3", "--no-meta"]
    _, one, _ = run(capsys, *argv)
    _, two, _ = run(capsys, *argv, "--jobs", "2")
    assert one == two
    rows = tables(one)["main"]
    assert len(rows) == 12
    for r in rows:
        assert float(r["omega_re"]) == pytest.approx(3, abs=1e-12)


def test_sweep_records_failures_inline(capsys):
    code, out, _ = run(capsys, "sweep", "--model", "dissipative-complex", "--vary", "phi:0.2:0.4:3",
                       "--omega-re", "4.87", "--omega-im", "-3.31", "--no-meta")
    assert code == 0
    rows = tables(out)["main"]
    assert {r["error"] for r in rows} <= {"", "no_root"}


def test_parse_vary():
    name, vals = parse_vary("alpha:0:1:3")
    assert name == "alpha" and list(vals) == [0, 0.5, 1]
    _, vals = parse_vary("alpha:0:1:1:open")
    assert list(vals) == [0.5]
    with pytest.raises(ValueError):
        parse_vary("alpha:0:1")


def test_validate_command(capsys):
    code, out, err = run(capsys, "validate", "--format", "json", "--no-meta")
    assert code == 0
    assert all(c["passed"] for c in json.loads(out)["checks"])
    assert "PASS" in err
