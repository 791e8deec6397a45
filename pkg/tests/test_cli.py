import io
import json

import numpy as np
import pytest

import sbbd
from sbbd.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_design_verify(capsys, fixture_dir):
    code, out, _ = run(capsys, "design", "verify", str(fixture_dir / "design_rl_3pts.json"))
    assert code == 0
    assert out.strip() == "v=3 b=4 r=3 lambda=2 k=variable"


def test_design_verify_rejects_bad_design(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"v": 3, "blocks": [[1, 2], [1, 3]]}')
    code, _, err = run(capsys, "design", "verify", str(bad))
    assert code == 1
    assert "NotRegular" in err


def test_od_construct_and_verify(capsys, tmp_path):
    out_file = tmp_path / "od4.csv"
    code, _, _ = run(capsys, "od", "construct", "--q", "4", "--out", str(out_file))
    assert code == 0
    rows = out_file.read_text().strip().splitlines()
    assert len(rows) == 12

    code, out, _ = run(capsys, "od", "verify", str(out_file))
    assert code == 0
    assert "eta=1 s=4 n=4 rows=12" in out


def test_od_verify_bad_file_exits_one(capsys, tmp_path):
    od = sbbd.construct_od1(3)
    rows = od.rows.copy()
    rows[0, 0], rows[0, 1] = rows[0, 1], rows[0, 0]
    bad = tmp_path / "bad_od.csv"
    bad.write_text("\n".join(",".join(map(str, r)) for r in rows) + "\n")
    code, _, err = run(capsys, "od", "verify", str(bad))
    assert code == 1
    assert "PairCountMismatch" in err


def test_od_construct_rejects_non_prime_power(capsys):
    code, _, err = run(capsys, "od", "construct", "--q", "6")
    assert code == 1
    assert "NotPrimePower" in err


def test_compose_to_stdout(capsys):
    code, out, _ = run(capsys, "compose", "--design", "catalog:fano", "--od", "7")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 42
    assert len(lines[0].split(",")) == 49


def test_compose_perms_and_json_output(capsys, tmp_path):
    design = tmp_path / "d.json"
    design.write_text('{"v": 3, "blocks": [[1, 2], [2, 3], [1, 3], [1, 2, 3]]}')
    out_file = tmp_path / "composed.json"
    code, out, _ = run(
        capsys,
        "compose",
        "--design",
        str(design),
        "--od",
        "4",
        "--perms",
        "cyclic:2",
        "--out",
        str(out_file),
    )
    assert code == 0
    assert "24 x 12" in out
    blocks = sbbd.blocks_from_json(out_file.read_text())
    x = sbbd.blocks_to_matrix(blocks)
    assert sbbd.check_sbbd(x).lam == (18, 12, 12, 14)


def test_compose_bad_perms_is_usage_error(capsys):
    code, _, err = run(
        capsys, "compose", "--design", "catalog:fano", "--od", "7", "--perms", "spiral:2"
    )
    assert code == 2
    assert "usage error" in err


def test_analyze_human_readable(capsys, fixture_dir):
    code, out, _ = run(capsys, "analyze", str(fixture_dir / "design_3_3_9.csv"))
    assert code == 0
    assert "SBBD(3, 3, 9); Lambda = (6, 3, 4, 4)" in out
    assert "36 x 1" in out and "3 x 6" in out and "0 x 2" in out
    assert "A-criterion: 4/3" in out


def test_analyze_json_payload(capsys, fixture_dir):
    code, out, _ = run(capsys, "analyze", str(fixture_dir / "design_3_3_9.csv"), "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["lambda"] == [6, 3, 4, 4]
    assert payload["spanning"] is True
    assert payload["spectrum"] == [
        {"value": "36", "mult": 1},
        {"value": "3", "mult": 6},
        {"value": "0", "mult": 2},
    ]
    assert payload["a_criterion"] == "4/3"
    assert payload["a_lower_bound"] is None
    assert payload["semi_regular"] is False
    assert payload["a_optimal_in_omega"] is False


def test_analyze_json_design_file(capsys, tmp_path, x22):
    f = tmp_path / "design.json"
    f.write_text(sbbd.blocks_to_json(sbbd.matrix_to_blocks(x22)))
    code, out, _ = run(capsys, "analyze", str(f), "--json")
    assert code == 0
    assert json.loads(out)["lambda"] == [6, 3, 4, 4]


def test_analyze_stdin_matches_file(capsys, fixture_dir, monkeypatch):
    text = (fixture_dir / "design_3_3_9.csv").read_text()
    code, from_file, _ = run(capsys, "analyze", str(fixture_dir / "design_3_3_9.csv"), "--json")
    assert code == 0
    monkeypatch.setattr("sys.stdin", io.StringIO(text))
    code, from_stdin, _ = run(capsys, "analyze", "-", "--json")
    assert code == 0
    assert from_stdin == from_file


def test_full_pipeline_fano(capsys, monkeypatch):
    code, csv_text, _ = run(capsys, "compose", "--design", "catalog:fano", "--od", "7")
    assert code == 0
    monkeypatch.setattr("sys.stdin", io.StringIO(csv_text))
    code, out, _ = run(capsys, "analyze", "-", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["lambda"] == [18, 6, 6, 8]
    assert payload["a_optimal_in_omega"] is True
    assert payload["regular"] is True


def test_analyze_flags_violation(capsys, tmp_path, x22):
    m = x22.matrix.copy()
    m[0, 0] ^= 1
    bad = tmp_path / "bad.csv"
    bad.write_text(sbbd.matrix_to_csv(sbbd.DesignMatrix(3, 3, m)))
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == 1
    assert "ConditionViolation" in err


def test_analyze_non_square_needs_dims(capsys, tmp_path, composed_b4):
    f = tmp_path / "b4.csv"
    f.write_text(sbbd.matrix_to_csv(composed_b4.x))
    code, _, err = run(capsys, "analyze", str(f))
    assert code == 2
    assert "--v1" in err

    code, out, _ = run(capsys, "analyze", str(f), "--v1", "4", "--json")
    assert code == 0
    assert json.loads(out)["lambda"] == [9, 6, 6, 7]


def test_simulate_human_and_json(capsys, fixture_dir):
    code, out, _ = run(
        capsys,
        "simulate",
        str(fixture_dir / "design_3_3_9.csv"),
        "--sigma",
        "1.0",
        "--runs",
        "400",
        "--seed",
        "5",
    )
    assert code == 0
    assert "alpha=3" in out
    assert "(2,2)" in out

    code, out, _ = run(
        capsys,
        "simulate",
        str(fixture_dir / "design_3_3_9.csv"),
        "--sigma",
        "1.0",
        "--runs",
        "400",
        "--seed",
        "5",
        "--json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["alpha"] == 3
    assert len(payload["contrasts"]) == 4


def test_simulate_with_tau_file(capsys, fixture_dir, tmp_path):
    tau = sbbd.random_effects(3, 3, seed=11)
    tau_file = tmp_path / "tau.json"
    tau_file.write_text(json.dumps({"v1": 3, "v2": 3, "tau": tau.tau.tolist()}))
    code, out, _ = run(
        capsys,
        "simulate",
        str(fixture_dir / "design_3_3_9.csv"),
        "--sigma",
        "0",
        "--runs",
        "2",
        "--tau",
        str(tau_file),
        "--json",
    )
    assert code == 0
    payload = json.loads(out)
    for entry in payload["contrasts"]:
        assert entry["mean"] == pytest.approx(entry["true"], abs=1e-9)


def test_mask_json(capsys, fixture_dir):
    code, out, _ = run(capsys, "mask", str(fixture_dir / "design_3_3_9.csv"))
    assert code == 0
    payload = json.loads(out)
    assert len(payload["masks"]) == 9
    total = np.array(payload["masks"]).sum(axis=0)
    assert (total == 6).all()


def test_mask_refuses_non_spanning(capsys, tmp_path, single_edge_blocks):
    f = tmp_path / "star.csv"
    f.write_text(sbbd.matrix_to_csv(single_edge_blocks))
    code, _, err = run(capsys, "mask", str(f), "--v1", "2")
    assert code == 1
    assert "SpanningViolation" in err


def test_mask_binary_output(capsys, tmp_path, fixture_dir):
    out_file = tmp_path / "masks.bin"
    code, _, _ = run(
        capsys,
        "mask",
        str(fixture_dir / "design_3_3_9.csv"),
        "--format",
        "bin",
        "--out",
        str(out_file),
    )
    assert code == 0
    blob = out_file.read_bytes()
    schedule = sbbd.schedule_from_bytes(blob)
    assert schedule.n_masks == 9


def test_missing_file_is_usage_error(capsys):
    code, _, err = run(capsys, "analyze", "/no/such/file.csv")
    assert code == 2
