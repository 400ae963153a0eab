import json
import subprocess
import sys

import pytest

from qpfaff import cli
from qpfaff.suites import SUITES, SuiteConfig, UnknownSuite, run_suites, select


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute_examples(capsys):
    assert run(["compute", "psi", "--n", "2"], capsys)[1] == "1 + a*z + a*b*z + a*b*c*z^2\n"
    assert run(["compute", "psi", "--n", "0"], capsys)[1] == "1\n"
    assert run(["compute", "phinm", "--coeff", "z", "--n", "4"], capsys)[1] == "1 + a + a*b + a*c + a*b*c + a*b*c*d\n"
    code, out, _ = run(["compute", "schur-p", "--mu", "3,1", "--nvars", "4", "--point", "x1=2,x2=3,x3=5,x4=7"], capsys)
    assert code == 0 and out.strip().lstrip("-").isdigit()


def test_compute_point_evaluation(capsys):
    # four strict partitions with parts at most 2
    assert run(["compute", "psi", "--n", "2", "--point", "a=1,b=1,c=1,d=1,z=1"], capsys)[1] == "4\n"


def test_compute_json(capsys):
    code, out, _ = run(["compute", "psi", "--n", "1", "--json"], capsys)
    obj = json.loads(out)
    assert obj["value"] == [{"num": 1, "den": 1, "vars": {}}, {"num": 1, "den": 1, "vars": {"a": 1, "z": 1}}]


def test_compute_errors(capsys):
    assert run(["compute", "schur-p", "--mu", "3,x", "--nvars", "2", "--point", "x1=1,x2=2"], capsys)[0] == 2
    assert run(["compute", "zeta", "--n", "4", "--nvars", "3", "--point", "x1=2,x2=3,x3=5"], capsys)[0] == 2
    assert run(["compute", "psi"], capsys)[0] == 2
    assert run(["compute", "nothing"], capsys)[0] == 2


def test_verify_exit_codes(capsys):
    code, out, _ = run(["verify", "psi.triple", "--max-n", "8"], capsys)
    assert code == 0 and "0 failed" in out
    code, _, err = run(["verify", "nosuch"], capsys)
    assert code == 2 and "nosuch" in err
    code, out, _ = run(["verify", "phi.andrews.printed.odd.N1", "--stable"], capsys)
    assert code == 1 and out.startswith("FAIL phi.andrews.printed.odd.N1")


def test_verify_json_is_deterministic(capsys):
    argv = ["verify", "psi.z1", "schur.cauchy", "--json", "--stable", "--max-n", "5", "--trials", "3"]
    _, first, _ = run(argv, capsys)
    _, second, _ = run(argv + ["--jobs", "2"], capsys)
    assert first == second
    lines = [json.loads(s) for s in first.splitlines()]
    assert lines[-1]["summary"] and lines[-1]["failed"] == 0
    ids = [o["id"] for o in lines[:-1]]
    assert all(set(o) <= {"id", "status", "witness", "note"} for o in lines[:-1])
    assert len(ids) == len(set(ids))


def test_seed_env_override(monkeypatch, capsys):
    monkeypatch.setenv("QPFAFF_SEED", "7")
    assert cli.build_parser(cli._default_seed()).parse_args(["verify", "all"]).seed == 7
    monkeypatch.setenv("QPFAFF_SEED", "x")
    assert run(["verify", "all"], capsys)[0] == 2


def test_select():
    assert select(["schur"]) == [s for s in SUITES if s.startswith("schur.")]
    assert select(["all"]) == list(SUITES)
    assert select(["psi.triple.N3"]) == ["psi.triple"]
    with pytest.raises(UnknownSuite):
        select(["psi.nope"])


def test_single_check_selection():
    summary = run_suites(SuiteConfig(suites=["psi.triple.N3"], max_n=5))
    assert [r.id for r in summary.reports] == ["psi.triple.N3"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qpfaff", "compute", "psi", "--n", "1"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout == "1 + a*z\n"
