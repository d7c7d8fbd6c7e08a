import json
import os
from importlib import resources

import pytest

from netlog import cli, runner


def example(name):
    return str(resources.files("netlog.examples").joinpath(name))


def run_json(capsys, argv):
    code = cli.main(argv + ["--json"])
    return code, json.loads(capsys.readouterr().out)


@pytest.fixture(autouse=True)
def _restore_cap():
    # --gb-degree-cap writes the environment variable for the whole process
    old = os.environ.pop("NETLOG_GB_DEGREE_CAP", None)
    yield
    os.environ.pop("NETLOG_GB_DEGREE_CAP", None)
    if old is not None:
        os.environ["NETLOG_GB_DEGREE_CAP"] = old


@pytest.fixture(scope="module")
def quadric_report():
    report, code = runner.run(runner.load_problem(example("quadric_tangent.json")))
    return report, code


def test_quadric_example(quadric_report):
    report, code = quadric_report
    assert code == 0 and not report["warnings"]
    compute = report["results"][0]["result"]
    assert compute["net"]["hilbert"]["polynomial"] == "2t^2 + 6t + 3"
    assert compute["net"]["c1_bidegree"] == [1, 1]
    assert compute["net"]["sheaf"]["c2"] == 2
    stab = [r for r in report["results"] if r["task"] == "stability"][0]["result"]
    assert stab["verdict"] == "stable-certified-on-window"


def test_fermat_example():
    report, code = runner.run(runner.load_problem(example("fermat_smooth_section.json")))
    assert code == 0
    compute, classify = report["results"][0]["result"], report["results"][1]["result"]
    sheaf = compute["net"]["sheaf"]
    assert (sheaf["c1_dot_H"], sheaf["c2"]) == (0, 9)
    assert sheaf["h_table"]["h0(1)"] == 3
    assert classify["R0_length"] == 8 and classify["label"] == "smooth"


def test_determinism_and_echo(quadric_report):
    report, _ = quadric_report
    again, _ = runner.run(runner.load_problem(example("quadric_tangent.json")))
    assert runner.dumps(runner.strip_timing(report)) == runner.dumps(runner.strip_timing(again))
    echoed, _ = runner.run(runner.Problem.from_json(report["input"]))
    assert runner.strip_timing(echoed) == runner.strip_timing(report)


def test_empty_task_list(tmp_path, capsys):
    f = tmp_path / "empty.json"
    f.write_text(json.dumps({"X": ["x0*x3 - x1*x2"], "Y": ["x3"], "tasks": []}))
    code, rep = run_json(capsys, ["run", str(f)])
    assert code == 0 and rep["results"] == []


def test_malformed_json(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text('{"X": ["x0"],\n  "tasks": [}')
    assert cli.main(["run", str(f)]) == 2
    err = capsys.readouterr().err
    assert "bad.json:2:" in err


def test_unknown_task_and_missing_file(tmp_path, capsys):
    f = tmp_path / "t.json"
    f.write_text(json.dumps({"X": ["x0^2 + x1^2 + x2^2 + x3^2"], "tasks": [{"task": "fly"}]}))
    assert cli.main(["run", str(f)]) == 2
    assert cli.main(["run", str(tmp_path / "nope.json")]) == 2


def test_singular_input_rejected(tmp_path, capsys):
    f = tmp_path / "sing.json"
    f.write_text(json.dumps({"X": ["x0*x1 - x2^2"], "Y": ["x3"], "tasks": [{"task": "compute"}]}))
    code, rep = run_json(capsys, ["run", str(f)])
    assert code == 2
    assert rep["results"][0]["status"] == "rejected" and "X-smooth" in rep["results"][0]["error"]


def test_degree_cap_reported(capsys):
    code, rep = run_json(capsys, ["run", example("fermat_smooth_section.json"), "--gb-degree-cap", "2"])
    assert code == 3
    assert any(r["status"] == "cap" for r in rep["results"])
    assert rep["warnings"]


def test_classify_command(capsys):
    code, rep = run_json(capsys, ["classify", "x0^3 + x1^3 + x2^3 + x3^3", "x0 + x1"])
    assert code == 0
    res = rep["results"][0]["result"]
    assert res["label"] == "d2" and res["multiplicities"] == [4]
    assert res["tangent_planes"] == ["x0 + x1"]


def test_restrict_and_cohomology_commands(capsys):
    code, rep = run_json(capsys, ["restrict", example("fermat_smooth_section.json"), "--curve", "L01_23"])
    assert code == 0 and rep["results"][0]["result"][0]["splitting"] == [1, -1]
    code, rep = run_json(capsys, ["cohomology", example("fermat_smooth_section.json"), "--range", "1..1"])
    assert code == 0 and rep["results"][0]["result"]["table"]["h0(1)"] == 3


def test_unknown_curve_rejected(capsys):
    code, rep = run_json(capsys, ["restrict", example("fermat_smooth_section.json"), "--curve", "nope"])
    assert code == 2


def test_stability_command_window(capsys):
    code, rep = run_json(capsys, ["stability", example("quadric_tangent.json"), "--window", "0..0"])
    assert rep["results"][0]["result"]["verdict"] == "inconclusive"
    assert rep["warnings"]


def test_verify_exactness_flag(capsys):
    code, rep = run_json(capsys, ["classify", "x0*x3 - x1*x2", "x3", "--verify-exactness"])
    assert code == 0
    assert rep["exactness"] and all(c["ok"] for c in rep["exactness"])


def test_human_output(capsys):
    assert cli.main(["classify", "x0^3 + x1^3 + x2^3 + x3^3", "x3"]) == 0
    out = capsys.readouterr().out
    assert "label smooth" in out and "l(R0) = 8" in out


def test_parallel_jobs_match_serial():
    problem = runner.load_problem(example("fermat_smooth_section.json"))
    a, _ = runner.run(problem, runner.Flags(jobs=1))
    b, _ = runner.run(problem, runner.Flags(jobs=2))
    assert runner.dumps(runner.strip_timing(a)) == runner.dumps(runner.strip_timing(b))
