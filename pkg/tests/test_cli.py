import json
import subprocess
import sys

from bdforge.chevalley import algebra
from bdforge.cli import JobSpec, main, run


def _capture(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_enumerate_a2(capsys):
    code, out = _capture(capsys, ["enumerate", "--type", "A", "--rank", "2"])
    assert code == 0
    report = json.loads(out)
    assert report["count"] == 3
    assert report["triples"][0] == {"gamma1": [], "gamma2": [], "tau": {}}


def test_enumerate_is_byte_deterministic(capsys):
    _, out1 = _capture(capsys, ["enumerate", "--type", "A", "--rank", "3"])
    _, out2 = _capture(capsys, ["enumerate", "--type", "A", "--rank", "3"])
    assert out1 == out2


def test_bd_build_reports_verified_rmatrix(capsys):
    triple = json.dumps({"gamma1": [1], "gamma2": [2], "tau": {"1": "2"}})
    code, out = _capture(capsys, ["bd", "build", "--type", "A", "--rank", "2",
                                  "--triple", triple])
    assert code == 0
    report = json.loads(out)
    assert report["lambda"] == "1/1"
    assert report["cyb_zero"] is True
    assert all(len(entry) == 3 for entry in report["r"])


def test_verify_accepts_dj(capsys):
    from bdforge.bd import build_dj_rmatrix
    g = algebra("A", 2)
    rj = json.dumps(build_dj_rmatrix(g).r.to_json())
    code, out = _capture(capsys, ["verify", "--type", "A", "--rank", "2", "--r", rj])
    assert code == 0
    assert json.loads(out)["lambda"] == "1/1"


def test_verify_rejects_casimir_with_exit_1(capsys):
    g = algebra("A", 2)
    omega = json.dumps(g.casimir()[0].to_json())
    code, out = _capture(capsys, ["verify", "--type", "A", "--rank", "2", "--r", omega])
    assert code == 1
    assert json.loads(out) == {"rejection": "CYBNonzero"}


def test_bialg_verify_axioms(capsys):
    from bdforge.bd import build_dj_rmatrix
    g = algebra("A", 2)
    rj = json.dumps(build_dj_rmatrix(g).r.to_json())
    code, out = _capture(capsys, ["bialg", "verify", "--type", "A", "--rank", "2",
                                  "--r", rj])
    assert code == 0
    assert json.loads(out) == {"antisymmetric": True, "cojacobi": True,
                               "cocycle": True}


def test_find_pi_round_trip(capsys):
    triple = json.dumps({"gamma1": [1], "gamma2": [2], "tau": {"1": "2"}})
    code, out = _capture(capsys, ["twist", "find-pi", "--type", "A", "--rank", "2",
                                  "--triple", triple])
    assert code == 0
    assert json.loads(out)["pi"] == {"1": "2", "2": "1"}


def test_cocycle_emits_map(capsys):
    triple = json.dumps({"gamma1": [1], "gamma2": [2], "tau": {"1": "2"}})
    code, out = _capture(capsys, ["twist", "cocycle", "--type", "A", "--rank", "2",
                                  "--triple", triple, "--d", "5"])
    assert code == 0
    report = json.loads(out)
    assert report["d"] == 5
    g = algebra("A", 2)
    assert len(report["u"]) == g.dim


def test_descend_sun(capsys):
    code, out = _capture(capsys, ["descend", "sun", "--n", "2", "--d", "5"])
    assert code == 0
    report = json.loads(out)
    assert report["k_dimension"] == 3
    assert report["descent_cases"] == {"rational": "NoDescent", "sqrt_d_multiple": "Case2"}
    assert report["axioms"] == {"antisymmetric": True, "cojacobi": True,
                                "cocycle": True}
    assert report["round_trip"] is True


def test_full_suite_a1(capsys):
    code, out = _capture(capsys, ["full-suite", "--type", "A", "--rank", "1"])
    assert code == 0
    report = json.loads(out)
    assert report["all_passed"] is True
    assert report["triple_count"] == 1


def test_full_suite_deterministic_under_threads(capsys, monkeypatch):
    _, seq = _capture(capsys, ["full-suite", "--type", "A", "--rank", "2"])
    monkeypatch.setenv("BDFORGE_THREADS", "4")
    _, par = _capture(capsys, ["full-suite", "--type", "A", "--rank", "2"])
    assert seq == par


def test_invalid_type_exits_2(capsys):
    code, out = _capture(capsys, ["enumerate", "--type", "A", "--rank", "0"])
    assert code == 2
    assert "error" in json.loads(out)


def test_inadmissible_triple_exits_2(capsys):
    triple = json.dumps({"gamma1": [1], "gamma2": [1], "tau": {"1": "1"}})
    code, out = _capture(capsys, ["bd", "build", "--type", "A", "--rank", "2",
                                  "--triple", triple])
    assert code == 2
    assert "not admissible" in json.loads(out)["error"]


def test_bad_json_exits_2(capsys):
    code, out = _capture(capsys, ["bd", "build", "--type", "A", "--rank", "2",
                                  "--triple", "{not json"])
    assert code == 2


def test_unknown_command_in_jobspec():
    code, report = run(JobSpec(command="nonsense"))
    assert code == 2 and "error" in report


def test_output_file(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, out = _capture(capsys, ["--output", str(path),
                                  "enumerate", "--type", "A", "--rank", "1"])
    assert code == 0
    assert json.loads(path.read_text()) == json.loads(out)


def test_console_script_end_to_end():
    proc = subprocess.run([sys.executable, "-m", "bdforge.cli", "enumerate",
                           "--type", "G", "--rank", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["count"] == 1
