import json

import pytest

from modcrown.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_laplace_default(capsys):
    code, out, err = run(capsys, "laplace")
    assert code == 0
    summary = json.loads(err)
    assert summary["passed"] and summary["command"] == "laplace"
    assert "# tol=1e-06" in out
    assert "power:1,Log" in out


def test_laplace_stretched_is_reported(capsys):
    code, out, _ = run(capsys, "laplace", "--measure", "stretched:1", "--measure", "power:0")
    assert code == 0
    assert "stretched:1,none" in out


def test_spherical_power_case_passes(capsys):
    code, out, err = run(capsys, "spherical-asymptotics", "--algebra", "so:3", "--lambda", "1j,2j,0.5")
    assert code == 0
    assert json.loads(err)["passed"]
    assert out.count("\n") == 3 + 1 + 3 * 6


def test_spherical_log_case_misses_tolerance(capsys):
    # the log rate converges like 1/log, far slower than 1e-3 on this grid
    code, _, err = run(capsys, "spherical-asymptotics", "--algebra", "su:1", "--lambda", "0.3")
    assert code == 1
    assert not json.loads(err)["passed"]


def test_kms_lab_bundled_model(capsys):
    code, out, err = run(capsys, "kms-lab", "--samples", "200")
    assert code == 0
    rows = {r["test_id"]: r for r in json.loads(err)["rows"]}
    assert rows["kms_vector"]["pass"] and rows["midpoint_J_fixed"]["pass"]
    assert out.startswith("# samples=200")


def test_kms_lab_failing_vector(capsys, tmp_path):
    model = {"points": [-1, 1], "weights": [1, 1], "eta": {"re": [1, 1], "im": [0, 0]}}
    path = tmp_path / "m.json"
    path.write_text(json.dumps(model))
    code, _, _ = run(capsys, "kms-lab", "--model", str(path), "--samples", "10")
    assert code == 1


@pytest.mark.parametrize("model", [{"points": [-1, 2], "weights": [1, 1]}, "not json"])
def test_kms_lab_bad_model(capsys, tmp_path, model):
    path = tmp_path / "m.json"
    path.write_text(model if isinstance(model, str) else json.dumps(model))
    code, _, err = run(capsys, "kms-lab", "--model", str(path))
    assert code == 2 and err.startswith("modcrown:")


def test_sl2(capsys):
    assert run(capsys, "sl2", "--s", "2")[0] == 0
    assert run(capsys, "sl2", "--s", "4", "--flip-sign")[0] == 0
    assert run(capsys, "sl2", "--s", "2", "--flip-sign")[0] == 1
    assert run(capsys, "sl2", "--s", "3")[0] == 2


def test_desitter(capsys):
    code, out, _ = run(capsys, "desitter", "--n", "3", "--samples", "200")
    assert code == 0 and out.count("\nslope,") == 3
    assert run(capsys, "desitter", "--n", "1")[0] == 2
    assert run(capsys, "desitter", "--point", "1,0,0")[0] == 2
    assert run(capsys, "desitter", "--point", "0,1,0", "--samples", "10")[0] == 0


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "laplace", "--measure", "cauchy:1")[0] == 2
    assert run(capsys, "spherical-asymptotics", "--algebra", "sl:3")[0] == 2
    assert run(capsys, "spherical-asymptotics", "--lambda", "abc")[0] == 2


def test_out_and_summary_files(capsys, tmp_path):
    out, summary = tmp_path / "t.csv", tmp_path / "s.json"
    code, stdout, stderr = run(capsys, "laplace", "--measure", "power:2", "--out", str(out), "--summary", str(summary))
    assert code == 0 and stdout == "" and stderr == ""
    assert json.loads(summary.read_text())["passed"]
    assert "power:2,Finite" in out.read_text()


def test_deterministic_output(capsys, tmp_path):
    first = run(capsys, "kms-lab", "--samples", "300", "--seed", "7")
    second = run(capsys, "kms-lab", "--samples", "300", "--seed", "7")
    assert first == second
    a = run(capsys, "desitter", "--samples", "100")
    b = run(capsys, "desitter", "--samples", "100")
    assert a == b


def test_threads_do_not_change_output(capsys, monkeypatch):
    argv = ("laplace", "--measure", "power:0.5", "--measure", "power:2", "--measure", "power:1")
    single = run(capsys, *argv)
    monkeypatch.setenv("MODCROWN_THREADS", "3")
    assert run(capsys, *argv) == single
    argv = ("spherical-asymptotics", "--lambda", "1j,2j,0.5,0.25j")
    monkeypatch.setenv("MODCROWN_THREADS", "1")
    single = run(capsys, *argv)
    monkeypatch.setenv("MODCROWN_THREADS", "4")
    assert run(capsys, *argv) == single


@pytest.mark.parametrize("suffix, text", [
    (".toml", 'algebra = "so:3"\nlambda = "2j"\nkmax = 4\n'),
    (".json", '{"algebra": "so:3", "lambda": "2j", "kmax": 4}'),
])
def test_config_file(capsys, tmp_path, suffix, text):
    cfg = tmp_path / ("cfg" + suffix)
    cfg.write_text(text)
    code, out, _ = run(capsys, "--config", str(cfg), "spherical-asymptotics")
    assert code == 0
    assert out.count("\n") == 3 + 1 + 4
    # explicit flags still win over the file
    code, out, _ = run(capsys, "--config", str(cfg), "spherical-asymptotics", "--kmax", "2")
    assert out.count("\n") == 3 + 1 + 2


def test_missing_config(capsys, tmp_path):
    assert run(capsys, "--config", str(tmp_path / "nope.toml"), "laplace")[0] == 2
