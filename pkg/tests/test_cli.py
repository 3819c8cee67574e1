import json
import subprocess
import sys

import pytest

from wtrace.cli import expand_resolve, main, parse_expression


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip() else None), out.err


def test_eval_examples(capsys):
    code, out, _ = run(capsys, "eval", "w:-2,0", "vacuum")
    assert code == 0 and out == {"terms": [{"partition": [2], "coeff": "1"}]}
    code, out, _ = run(capsys, "eval", "w:0,2", '{"terms":[{"partition":[1],"coeff":"1"}]}')
    assert out["terms"] == [{"partition": [1], "coeff": "1"}]
    code, out, _ = run(capsys, "eval", "L:0", '{"terms":[{"partition":[2,1],"coeff":"1"}]}')
    assert out["terms"][0]["coeff"] == "3"


def test_eval_composes_left_to_right(capsys):
    # p_1 applied after the annihilation of p_2
    code, out, _ = run(capsys, "eval", "w:-1,0 w:2,0", '{"terms":[{"partition":[2],"coeff":"1"}]}')
    assert out["terms"] == [{"partition": [1], "coeff": "2"}]


@pytest.mark.parametrize("argv", [
    ["eval", "w:0,0", "vacuum"],
    ["eval", "w:1", "vacuum"],
    ["eval", "z:1", "vacuum"],
    ["eval", "w:1,0", "{bad json"],
    ["verify", "nope"],
    ["verify", "walg", "--max-degree", "-1"],
    ["verify", "walg", "--max-degree", "40"],
    ["poincare", ">", "100", "3", "both"],
    ["commutator", "h:1,0", "h:-1,0", "--resolve", "w:1,0"],
])
def test_usage_errors(capsys, argv):
    assert main(argv) == 2


def test_commutator_examples(capsys):
    code, out, _ = run(capsys, "commutator", "h:1,0", "h:-1,0", "--max-degree", "3")
    assert code == 0
    for blk in out["blocks"]:
        n = len(blk["basis_in"])
        # [h_m, h_n] = n delta_{m,-n}: scalar -1 at (1, -1)
        assert blk["matrix"] == [["-1" if i == j else "0" for j in range(n)] for i in range(n)]
    code, out, _ = run(capsys, "commutator", "h:-1,0", "h:1,2", "--resolve", "c:0")
    assert out["resolve"]["coeffs"] == ["2"]
    code, out, _ = run(capsys, "commutator", "w:1,1", "w:-1,1", "--resolve", "w:0,1")
    assert out["resolve"]["coeffs"] == ["-2"]


def test_resolve_ranges():
    assert expand_resolve(["w:-1,0..w:-1,2"]) == ["w:-1,0", "w:-1,1", "w:-1,2"]
    assert expand_resolve(["c:0..c:1 p:2"]) == ["c:0", "c:1", "p:2"]
    assert parse_expression("h:1,0 h:-1,0").rank == 0


def test_poincare(capsys):
    code, out, _ = run(capsys, "poincare", ">", "5", "3", "both")
    assert code == 0 and out["equal"] is True
    code, out, _ = run(capsys, "poincare", ">", "2", "1", "product")
    assert {"t": 2, "q": 1, "value": "2"} in out["product"]["coeffs"]
    code, out, _ = run(capsys, "poincare", "<", "3", "0", "product")
    assert [c["value"] for c in out["product"]["coeffs"]] == ["1", "1", "2", "3"]


def test_verify_daha(capsys):
    code, out, err = run(capsys, "verify", "daha", "--n", "2", "--max-degree", "4", "--buffer", "2")
    assert code == 0 and out["pass"]
    cases = [c for c in out["suites"][0]["cases"] if c["params"].get("relation") == "cocenter"]
    assert cases[0]["data"]["dims"] == [2, 2, 3, 3, 4]
    assert "daha: PASS" in err


def test_verify_pq_and_daha_dims(capsys, tmp_path):
    target = tmp_path / "pq.json"
    assert main(["verify", "pq", "--out", str(target), "-q"]) == 0
    assert json.loads(target.read_text())["suites"][0]["suite"] == "pq"
    code, out, _ = run(capsys, "daha-dims", "--n", "3", "--max-degree", "2")
    assert out["dims"] == out["hhsd"] == [3, 4, 6] and out["stabilized"]


def test_psi_leading(capsys):
    code, out, _ = run(capsys, "psi-leading", "3")
    assert code == 0 and out["terms"][0]["coeffs"] == ["0", "0", "0", "-1"]


def test_config_env(capsys, tmp_path, monkeypatch):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"max-degree": 2}))
    monkeypatch.setenv("WTRACE_CONFIG", str(cfg))
    code, out, _ = run(capsys, "commutator", "w:1,0", "w:-1,0")
    assert len(out["blocks"]) == 3


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "wtrace.cli", "eval", "p:1", "vacuum"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["terms"][0]["partition"] == [1]
