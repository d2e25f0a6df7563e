import json
import subprocess
import sys

import pytest

from clifpauli.algebra import CliffordAlgebra
from clifpauli.cli import main, sidecar_path
from clifpauli.formats import instance_to_text, read_json
from clifpauli.generators import GeneratorSet


def write(path, obj):
    path.write_text(json.dumps(obj), encoding="utf-8")
    return str(path)


def canonical_instance(p, q, field=None):
    G = GeneratorSet.canonical(CliffordAlgebra(p, q, field))
    return instance_to_text(G, G)


def run(capsys, *argv):
    try:
        code = main([str(a) for a in argv])
    except SystemExit as exc:
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_canonical(tmp_path, capsys):
    path = write(tmp_path / "inst.json", canonical_instance(3, 0))
    code, out, _ = run(capsys, "validate", "--input", path)
    assert code == 0
    assert out.strip() == "gamma: valid, VolumeBasis(+1); beta: valid, VolumeBasis(+1)"


def test_validate_relation_violation(tmp_path, capsys):
    doc = canonical_instance(3, 0)
    doc["beta"][0] = {"": "1", "1": "1"}
    code, out, _ = run(capsys, "validate", "--input", write(tmp_path / "bad.json", doc))
    assert code == 2
    assert "beta: invalid" in out and "(1,1)" in out.replace(" ", "")


def test_validate_bad_key(tmp_path, capsys):
    doc = canonical_instance(3, 0)
    doc["gamma"][0] = {"3,1": "1"}
    code, _, err = run(capsys, "validate", "--input", write(tmp_path / "bad.json", doc))
    assert code == 3
    assert "3,1" in err and "gamma[1]" in err


def test_bad_json_and_missing_file(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{"p": 3,\n "q": }', encoding="utf-8")
    code, _, err = run(capsys, "validate", "--input", path)
    assert code == 3 and "broken.json:2:" in err
    code, _, _ = run(capsys, "validate", "--input", tmp_path / "nope.json")
    assert code == 3


def test_field_flag_must_match(tmp_path, capsys):
    path = write(tmp_path / "inst.json", canonical_instance(2, 0))
    code, _, err = run(capsys, "validate", "--input", path, "--field", "complex-exact")
    assert code == 3 and "field" in err


def test_classify(tmp_path, capsys):
    path = write(tmp_path / "inst.json", canonical_instance(3, 0))
    code, out, _ = run(capsys, "classify", "--input", path)
    assert code == 0
    assert out.splitlines()[-1].startswith("case: 1")
    path = write(tmp_path / "even.json", canonical_instance(2, 0))
    code, out, _ = run(capsys, "classify", "--input", path)
    assert out.splitlines()[-1] == "case: even"


def test_solve_verify_round_trip(tmp_path, capsys):
    inst, sol = tmp_path / "inst.json", tmp_path / "sol.json"
    assert run(capsys, "gen", "--p", 2, "--q", 1, "--seed", 3, "--case", 1, "--output", inst)[0] == 0
    code, out, _ = run(capsys, "solve", "--input", inst, "--output", sol)
    assert code == 0
    assert "case: 1" in out and "residual: 0.0" in out and "candidate: " in out
    assert run(capsys, "verify", "--input", inst, "--solution", sol)[0] == 0

    doc = json.loads(sol.read_text())
    tampered = dict(doc, T=dict(doc["T"]))
    key = next(iter(tampered["T"]))
    tampered["T"][key] = "12345"
    code, out, _ = run(capsys, "verify", "--input", inst, "--solution", write(tmp_path / "t.json", tampered))
    assert code == 4 and "FAILED" in out

    swapped = dict(doc, case=2)
    code, out, _ = run(capsys, "verify", "--input", inst, "--solution", write(tmp_path / "s.json", swapped))
    assert code == 4 and "does not match" in out

    wrong_c = dict(doc, central_factor={"": "-1"})
    assert run(capsys, "verify", "--input", inst,
               "--solution", write(tmp_path / "c.json", wrong_c))[0] == 4


def test_verify_singular_T(tmp_path, capsys):
    inst = write(tmp_path / "inst.json", canonical_instance(2, 1))
    sol = {"case": 1, "central_factor": {"": "1"}, "T": {"": "1", "1,2,3": "1"}}
    code, _, err = run(capsys, "verify", "--input", inst, "--solution", write(tmp_path / "s.json", sol))
    assert code == 4 and "NotInvertible" in err


def test_solve_equal_sets(tmp_path, capsys):
    path = write(tmp_path / "inst.json", canonical_instance(2, 0))
    code, out, _ = run(capsys, "solve", "--input", path)
    assert code == 0
    doc = json.loads(out[out.index("{"):])
    assert doc["case"] == "even" and doc["T"] == {"": "1"} and doc["residual"] == 0.0


def test_solve_case_4(tmp_path, capsys):
    inst = tmp_path / "c4.json"
    run(capsys, "gen", "--p", 2, "--q", 1, "--seed", 8, "--case", 4, "--output", inst)
    code, out, _ = run(capsys, "solve", "--input", inst)
    assert code == 0
    assert out.startswith("case: 4\n") and "residual: 0.0" in out


def test_solve_float_instance(tmp_path, capsys):
    inst = tmp_path / "f.json"
    run(capsys, "gen", "--p", 2, "--q", 2, "--seed", 1, "--field", "complex-float", "--output", inst)
    code, out, _ = run(capsys, "solve", "--input", inst)
    assert code == 0
    residual = float(out.split("residual: ")[1].split()[0])
    assert residual <= 1e-9


@pytest.mark.parametrize("argv", [
    ("--p", 2, "--q", 0, "--seed", 1, "--trials", 10),
    ("--p", 3, "--q", 0, "--field", "complex-exact", "--seed", 7, "--trials", 10),
    ("--p", 1, "--q", 1, "--seed", 3, "--trials", 5),
])
def test_selftest_examples(capsys, argv):
    code, out, _ = run(capsys, "selftest", *argv)
    assert code == 0, out
    assert "all identities pass" in out
    assert "PASS sum_identities" in out


def test_selftest_roundtrips_six_cases(capsys):
    code, out, _ = run(capsys, "selftest", "--p", 3, "--q", 0, "--field", "complex-exact",
                       "--seed", 7, "--trials", 2)
    assert code == 0 and "PASS solve_roundtrip" in out


def test_gen_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        assert run(capsys, "gen", "--p", 3, "--q", 0, "--seed", 42, "--case", 2, "--output", out)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert sidecar_path(a).read_bytes() == sidecar_path(b).read_bytes()
    truth = read_json(sidecar_path(a))
    assert truth["case"] == 2 and truth["seed"] == 42 and "S" in truth
    code, out, _ = run(capsys, "classify", "--input", a)
    assert out.splitlines()[-1].startswith("case: 2")


def test_gen_rejects_inadmissible(capsys):
    assert run(capsys, "gen", "--p", 3, "--q", 0, "--case", 5)[0] == 3
    assert run(capsys, "gen", "--p", 3, "--q", 0, "--case", 3)[0] == 3
    assert run(capsys, "gen", "--p", 2, "--q", 0, "--case", 1)[0] == 3
    assert run(capsys, "gen", "--p", 3, "--q", 0, "--case", 9)[0] == 3


def test_usage_errors_exit_3(capsys):
    assert run(capsys, "solve")[0] == 3
    assert run(capsys, "selftest", "--p", 1, "--q", 0, "--seed", -1)[0] == 3
    assert run(capsys, "selftest", "--p", 1, "--q", 0, "--seed", 1 << 64)[0] == 3
    assert run(capsys, "selftest", "--p", 1, "--q", 0, "--tolerance", "nan")[0] == 3
    assert run(capsys, "bogus")[0] == 3


def test_console_entry_point(tmp_path):
    argv = [sys.executable, "-m", "clifpauli", "gen", "--p", "1", "--q", "1", "--seed", "5"]
    proc = subprocess.run(argv, capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["p"] == 1
