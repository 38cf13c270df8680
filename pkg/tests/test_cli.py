import json
import math
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cs_forge.cli import main, parse_vector, parse_vector_lines, render_vector, render_vector_lines


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_cs_original(capsys):
    code, out, _ = run(capsys, "check", "cs-original", "--v", "1,1", "--w", "1,2")
    assert code == 0
    name, lhs, rhs, margin, holds = out.split()
    assert float(margin) == pytest.approx(1 - (math.sqrt(34) - 5), rel=1e-14)
    assert float(margin) == pytest.approx(0.169, abs=1e-3)
    assert holds == "true"


def test_check_orthogonal_margin_zero(capsys):
    code, out, _ = run(capsys, "check", "cs-original", "--v", "1,0", "--w", "0,1")
    assert code == 0 and out.split()[3] == "0"


def test_conjecture_violation_is_recorded_not_failed(capsys):
    code, out, _ = run(capsys, "check", "conjecture", "--p", "1.5", "--v", "1,1", "--w", "1,1.01")
    assert code == 0
    assert float(out.split()[3]) < 0 and out.split()[4] == "false"


def test_proven_violation_exits_2(capsys):
    # an absurd negative tolerance turns an exact equality into a reported violation
    code, _, _ = run(capsys, "check", "cs-original", "--v", "1,0", "--w", "0,1", "--atol", "-1", "--rtol", "0")
    assert code == 2


def test_usage_errors(capsys):
    assert run(capsys, "check", "nope")[0] == 1
    assert run(capsys, "check", "cs-original", "--v", "1,2")[0] == 1
    assert run(capsys, "check", "cs-original", "--v", "1,x", "--w", "1,2")[0] == 1
    assert run(capsys, "check", "cs-original", "--v", "1,2", "--w", "1,2,3")[0] == 1
    assert run(capsys, "bogus")[0] == 1
    code, _, err = run(capsys, "check", "conjecture", "--p", "2", "--v", "1,0", "--w", "1,1")
    assert code == 1 and "positive" in err
    assert run(capsys, "check", "conjecture", "--p", "2", "--v", "1,0", "--w", "1,1", "--relaxed")[0] == 0


def test_structured_output(capsys):
    code, out, _ = run(capsys, "check", "cs-original", "--v", "1,1", "--w", "1,2", "--format", "structured")
    doc = json.loads(out)
    assert list(doc) == ["name", "lhs", "rhs", "margin", "holds", "inputs"]
    assert doc["holds"] is True and doc["inputs"] == "v=(1,1) w=(1,2)"


def test_csv_output(capsys):
    code, out, _ = run(capsys, "check", "chain", "--v", "1,2", "--w", "3,-1", "--k", "2", "--format", "csv")
    lines = out.splitlines()
    assert lines[0] == "name,lhs,rhs,margin,holds,inputs"
    assert [ln.split(",")[0] for ln in lines[1:]] == ["chain-left", "chain-right"]


def test_matrix_and_list_flags(capsys):
    assert run(capsys, "check", "matrix-gen", "--X", "2,1;1,3", "--Y", "1,0;0,4")[0] == 0
    assert run(capsys, "check", "eig-gen", "--X", "2,1;1,3", "--Y", "1,0;0,4")[0] == 0
    assert run(capsys, "check", "svd-gen", "--X", "2,1;7,3", "--Y", "1,0;5,4")[0] == 0
    assert run(capsys, "check", "fx-projection", "--exponent", "2.5", "--v", "1,2", "--w", "3,-1", "--P", "1,0;0,0")[0] == 0
    assert run(capsys, "check", "fp-diag", "--exponent", "2", "--xs", "1,2;3,1", "--ys", "2,2;1,5")[0] == 0
    assert run(capsys, "check", "equal-tensors", "--p", "3", "--x", "1,2", "--y", "2,1")[0] == 0
    assert run(capsys, "check", "generalized", "--v1", "1,1", "--v2", "1,2", "--sigma", "1,3,4,2")[0] == 0
    assert run(capsys, "check", "tripartite", "--v", "1,2", "--w", "3,1", "--x", "1,1")[0] == 0


def test_file_input(tmp_path, capsys):
    f = tmp_path / "vecs.txt"
    f.write_text("# two vectors\n1 1\n\n1 2  # second\n")
    code, out, _ = run(capsys, "check", "cs-original", "--input", str(f))
    assert code == 0 and out.startswith("cs-original 0.83095189484530")
    code, _, err = run(capsys, "check", "cs-original", "--input", str(f), "--v", "1,1")
    assert code == 1 and "cannot be combined" in err
    m = tmp_path / "mats.txt"
    m.write_text("2 1\n1 3\n1 0\n0 4\n")
    assert run(capsys, "check", "eig-gen", "--input", str(m))[0] == 0
    assert run(capsys, "check", "cs-original", "--input", str(tmp_path / "missing.txt"))[0] == 1


def test_sos_verify(capsys):
    code, out, _ = run(capsys, "sos-verify", "--n", "2", "--k", "2", "--v", "1,2", "--w", "3,4", "--exact")
    assert code == 0 and "difference 0" in out
    assert run(capsys, "sos-verify", "--k", "1", "--v", "0.3,1.7", "--w", "2,-1")[0] == 0
    code, out, _ = run(capsys, "sos-verify", "--n", "3", "--k", "3", "--random", "--exact", "--format", "structured")
    assert code == 0 and json.loads(out)["difference"] == "0"
    assert run(capsys, "sos-verify", "--n", "3", "--k", "2", "--v", "1,2", "--w", "3,4")[0] == 1
    assert run(capsys, "sos-verify", "--k", "2", "--random")[0] == 1


def test_figure_line_count_and_envelope(capsys):
    code, out, _ = run(capsys, "figure", "--n", "2", "--trials", "10000", "--p-min", "0", "--p-max", "5", "--seed", "7")
    assert code == 0 and len(out.splitlines()) == 10001
    code, out, _ = run(capsys, "figure", "--trials", "5", "--envelope")
    assert out.splitlines()[0] == "p,diff,envelope"
    assert all(len(row.split(",")) == 3 for row in out.splitlines())


def test_figure_to_file(tmp_path, capsys):
    path = tmp_path / "fig.csv"
    assert run(capsys, "figure", "--trials", "4", "--output", str(path))[0] == 0
    data = path.read_bytes()
    assert data.startswith(b"p,diff\n") and b"\r" not in data and data.count(b"\n") == 5


def test_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("CS_FORGE_SEED", "17")
    _, from_env, _ = run(capsys, "figure", "--trials", "5")
    _, explicit, _ = run(capsys, "figure", "--trials", "5", "--seed", "17")
    assert from_env == explicit
    monkeypatch.setenv("CS_FORGE_SEED", "abc")
    assert run(capsys, "figure", "--trials", "5")[0] == 1


def test_scan_summary(capsys):
    code, out, _ = run(capsys, "scan", "--n", "3", "--p", "2..10", "--trials", "3000", "--seed", "1", "--format", "structured")
    doc = json.loads(out)
    assert code == 0 and doc["trials"] == 3000
    assert doc["conjecture_min_diff"] >= -1e-9 and doc["flagged"] is False
    assert run(capsys, "scan", "--p", "10..2")[0] == 1
    assert run(capsys, "scan", "--p", "2-10")[0] == 1
    code, out, _ = run(capsys, "scan", "--trials", "3", "--format", "csv")
    assert out.splitlines()[0] == "p,diff" and len(out.splitlines()) == 4


def test_tensor_demos(capsys):
    code, out, _ = run(capsys, "tensor", "generalized", "--p", "2", "--sigma", "1,3,4,2", "--v1", "1,1", "--v2", "1,2")
    name, lhs, rhs, *_ = out.split()
    assert code == 0 and float(lhs) == pytest.approx(9.831, abs=1e-3) and float(rhs) == 10
    code, out, _ = run(capsys, "tensor", "generalized", "--sigma", "identity", "--v1", "1,1", "--v2", "1,2")
    _, lhs, rhs, *_ = out.split()
    assert float(lhs) == pytest.approx(float(rhs), rel=1e-14)
    code, out, _ = run(capsys, "tensor", "tripartite", "--v", "1,1", "--w", "1,1", "--x", "1,1")
    lines = out.splitlines()
    assert code == 0 and lines[0].endswith("true")
    assert [ln.split()[0] for ln in lines[1:]] == ["rank_one", "paired", "diagonal"]
    code, out, _ = run(capsys, "tensor", "twirl", "--v1", "1,2", "--v2", "3,1", "--format", "structured")
    doc = json.loads(out)
    assert doc["trace_before"] == doc["trace_after"] and doc["nonzero_after"] == 6
    code, out, _ = run(capsys, "tensor", "realign", "--random", "--n", "2", "--p", "3", "--sigma", "6,5,3,4,2,1", "--format", "structured")
    doc = json.loads(out)
    assert code == 0 and doc["trace_norm_realigned_twirl"] <= doc["norm_product"] * (1 + 1e-12)
    assert run(capsys, "tensor", "generalized", "--p", "3", "--v1", "1,1", "--v2", "1,2")[0] == 1
    assert run(capsys, "tensor", "generalized", "--p", "2", "--v1", "1,1", "--v2", "1,2", "--sigma", "1,2,3")[0] == 1


def test_size_guard_is_usage_error(capsys):
    assert run(capsys, "tensor", "twirl", "--random", "--n", "6", "--p", "4")[0] == 1


@settings(max_examples=200)
@given(st.lists(st.floats(allow_nan=False, allow_infinity=False), min_size=1, max_size=8))
def test_vector_round_trip(values):
    v = np.array(values)
    np.testing.assert_array_equal(parse_vector(render_vector(v)), v)
    np.testing.assert_array_equal(parse_vector_lines(render_vector_lines([v]).splitlines())[0], v)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cs_forge", "check", "cs-original", "--v", "1,1", "--w", "1,2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("cs-original")
