import json
import subprocess
import sys

import numpy as np
import pytest

from horizonqi.cli import main
from horizonqi.entanglement import concurrence
from horizonqi.horizon import BlackHoleModel, Scenario, build_reduced
from horizonqi.qstate import DensityOp, dumps_state, loads_state, partial_trace, make_w, to_density
from horizonqi.teleport import teleportation_fidelity


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_state_ghz(capsys):
    code, out, _ = run(capsys, "state", "--family", "ghz")
    assert code == 0
    amps = json.loads(out)["amplitudes"]
    h = 1 / np.sqrt(2)
    assert amps[0] == pytest.approx([h, 0]) and amps[7] == pytest.approx([h, 0])
    assert all(a == [0.0, 0.0] for a in amps[1:7])


def test_state_rejects_csv(capsys):
    code, _, err = run(capsys, "state", "--family", "ghz", "--format", "csv")
    assert code == 2
    assert err.startswith("horizonqi: error:")


def test_measure_flat_w_pair(capsys, tmp_path):
    rho = partial_trace(to_density(make_w()), ["A", "C"])
    path = tmp_path / "w_ac.json"
    path.write_text(dumps_state(rho))
    code, out, _ = run(capsys, "measure", "--in", str(path), "--fidelity", "--concurrence")
    assert code == 0
    data = json.loads(out)
    assert data["fidelity"] == pytest.approx(7 / 9, abs=1e-12)
    assert data["concurrence"] == pytest.approx(2 / 3, abs=1e-12)
    assert data["useful"] is True
    assert data["labels"] == ["A", "C"]


def test_measure_csv_and_fef_seed(capsys, tmp_path):
    path = tmp_path / "rho.json"
    path.write_text(dumps_state(partial_trace(to_density(make_w()), ["A", "C"])))
    code, first, _ = run(capsys, "measure", "--in", str(path), "--fef", "--format", "csv", "--seed", "5")
    assert code == 0
    _, second, _ = run(capsys, "measure", "--in", str(path), "--fef", "--format", "csv", "--seed", "5")
    assert first == second
    assert first.splitlines()[0] == "measure,value"
    assert any(line.startswith("fully_entangled_fraction,") for line in first.splitlines())


def test_measure_tangle_default_for_three_qubits(capsys, tmp_path):
    path = tmp_path / "ghz.json"
    run(capsys, "state", "--family", "ghz", "--out", str(path))
    code, out, _ = run(capsys, "measure", "--in", str(path))
    assert code == 0
    assert json.loads(out)["residual_tangle"] == pytest.approx(1.0, abs=1e-12)


def test_dress_measure_round_trip(capsys, tmp_path):
    path = tmp_path / "rho.json"
    code, _, _ = run(capsys, "dress", "--family", "w", "--model", "schwarzschild", "--temp", "2",
                     "--omega", "0.7", "--trace-qubit", "B", "--out", str(path))
    assert code == 0
    code, out, _ = run(capsys, "measure", "--in", str(path))
    data = json.loads(out)
    rho = build_reduced(Scenario("w", BlackHoleModel.schwarzschild(temperature=2.0), 0.7, traced_party="B"))
    assert data["concurrence"] == pytest.approx(concurrence(rho), abs=1e-12)
    assert data["fidelity"] == pytest.approx(teleportation_fidelity(rho).fidelity, abs=1e-12)
    stored = loads_state(path.read_text())
    assert isinstance(stored, DensityOp)
    assert np.array_equal(stored.matrix, rho.matrix)


def test_sweep_csv(capsys):
    code, out, _ = run(capsys, "sweep", "--family", "w", "--model", "schwarzschild", "--temp", "1",
                       "--axis1", "omega:0:1:0.5", "--axis2", "temperature:1:2:1", "--measures", "fidelity")
    assert code == 0
    rows = out.splitlines()[1:]
    assert len(rows) == 6
    assert all(float(r.split(",")[5]) > 2 / 3 for r in rows)


def test_sweep_json(capsys):
    code, out, _ = run(capsys, "sweep", "--family", "ghz", "--model", "dilaton", "--dilaton", "0",
                       "--axis1", "dilaton:0:2:1", "--axis2", "omega:0:1:1", "--measures", "residual_tangle",
                       "--format", "json")
    assert code == 0
    recs = json.loads(out)["records"]
    assert [r["unphysical"] for r in recs] == [False, False, True, True, True, True]


@pytest.mark.parametrize(
    "argv",
    [
        ["sweep", "--family", "w", "--model", "schwarzschild", "--temp", "1",
         "--axis1", "omega:1:0:0.1", "--axis2", "temperature:1:2:1", "--measures", "fidelity"],
        ["dress", "--family", "w", "--model", "schwarzschild", "--temp", "1", "--mass", "1", "--omega", "1"],
        ["dress", "--family", "w", "--model", "schwarzschild", "--temp", "1", "--omega", "1", "--trace-qubit", "A"],
        ["dress", "--family", "w", "--model", "schwarzschild", "--temp", "1", "--omega", "-1"],
        ["dress", "--family", "w", "--model", "dilaton", "--omega", "1"],
        ["state", "--family", "ghz", "--tol", "bogus=1"],
        ["state", "--family", "ghz", "--tol", "hermitian=abc"],
        ["state", "--family", "w2"],
        ["reproduce", "--figure", "12", "--outdir", "x"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_non_psd_input_exits_3(capsys, tmp_path):
    # unit trace and Hermitian, but one eigenvalue is -0.1
    m = np.diag([0.6, 0.3, 0.2, -0.1])
    bad = {"labels": ["A", "B"], "kind": "density",
           "matrix": [[float(x), 0.0] for x in m.ravel()]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, _, err = run(capsys, "measure", "--in", str(path))
    assert code == 3
    assert "eigenvalue" in err


def test_missing_input_exits_4(capsys, tmp_path):
    code, _, err = run(capsys, "measure", "--in", str(tmp_path / "nope.json"))
    assert code == 4
    assert "nope.json" in err


def test_unwritable_output_exits_4(capsys, tmp_path):
    code, _, err = run(capsys, "state", "--family", "w", "--out", str(tmp_path / "missing" / "dir" / "s.json"))
    assert code == 4
    assert "s.json" in err


def test_malformed_json_exits_2(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, _ = run(capsys, "measure", "--in", str(path))
    assert code == 2


def test_tolerance_override_reaches_kernel(capsys, tmp_path):
    path = tmp_path / "rho.json"
    path.write_text(dumps_state(partial_trace(to_density(make_w()), ["A", "C"])))
    code, _, err = run(capsys, "measure", "--in", str(path), "--tol", "jacobi_max_sweeps=0")
    assert code == 3
    assert "converge" in err


def test_reproduce_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(capsys, "reproduce", "--figure", "5", "--outdir", str(a), "--points", "40")[0] == 0
    assert run(capsys, "reproduce", "--figure", "5", "--outdir", str(b), "--points", "40")[0] == 0
    assert (a / "fig5_fidelity.csv").read_bytes() == (b / "fig5_fidelity.csv").read_bytes()


def test_crosscheck(capsys):
    code, out, _ = run(capsys, "crosscheck", "--family", "w", "--model", "schwarzschild", "--temp", "1",
                       "--omega", "1", "--claims")
    assert code == 0
    data = json.loads(out)
    assert {m["target"] for m in data["matrices"]} == {"w_abc", "w_ac", "w_ab"}
    fid = next(f for f in data["closed_forms"] if f["quantity"] == "fidelity")
    assert fid["pipeline"] == pytest.approx(0.7455599192, abs=1e-9)
    assert fid["difference"] == pytest.approx(data["mu"] ** 2 * data["nu"] ** 2 / 18, abs=1e-12)
    assert any(not c["agrees"] for c in data["claims"])


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "horizonqi", "state", "--family", "w1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["kind"] == "pure"
