import csv
import io
import json
import subprocess
import sys

import pytest

from robineig.cli import CSV_COLUMNS, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_ball(capsys):
    code, out, _ = run(capsys, "ball", "--dim", "2", "--radius", "1", "--alpha", "-1")
    assert code == 0
    d = json.loads(out)
    assert d["lambda"] == pytest.approx(-2.587, abs=1e-3)
    assert d["proposition_bound"] == -2.0


def test_ball_three_dim_below_bound(capsys):
    code, out, _ = run(capsys, "ball", "--dim", "3", "--radius", "1", "--alpha", "-1")
    assert code == 0 and json.loads(out)["lambda"] < -3


def test_positive_alpha_is_usage_error(capsys):
    code, _, err = run(capsys, "ball", "--dim", "2", "--radius", "1", "--alpha", "1")
    assert code == 2 and "negative" in err


def test_annulus(capsys):
    code, out, _ = run(capsys, "annulus", "--radius", "1", "--inner-radius", "0.9", "--alpha", "-10")
    assert code == 0
    d = json.loads(out)
    assert d["lambda"] < d["lambda_equal_area_ball"]
    assert d["lambda"] <= d["lambda_equal_perimeter_ball"]
    code, out, _ = run(capsys, "annulus", "--radius", "1", "--inner-radius", "0.001", "--alpha", "-1")
    assert abs(json.loads(out)["lambda"] + 2.58656) < 1e-2
    assert run(capsys, "annulus", "--radius", "1", "--inner-radius", "1", "--alpha", "-1")[0] == 2


def test_verify_regular(capsys):
    code, out, _ = run(capsys, "verify", "--shape", "regular:8", "--perimeter", "6.2832", "--alpha", "-1", "--format", "csv")
    assert code == 0
    (row,) = rows(out)
    assert list(row) == CSV_COLUMNS
    assert float(row["margin_star"]) > 0 and float(row["margin_fw"]) > 0
    assert row["chain_ok"] == "true"


def test_verify_file(capsys, tmp_path):
    path = tmp_path / "square.json"
    path.write_text(json.dumps([[0, 0], [1, 0], [1, 1], [0, 1]]))
    code, out, _ = run(capsys, "verify", "--shape", f"file:{path}", "--alpha", "-0.5")
    assert code == 0
    assert json.loads(out)["m_or_file"] == str(path)


def test_verify_nonconvex_file(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps([[0, 0], [2, 0], [1, 0.2], [2, 2], [0, 2]]))
    code, _, err = run(capsys, "verify", "--shape", f"file:{path}", "--alpha", "-1")
    assert code == 2 and "error" in err
    code, _, _ = run(capsys, "verify", "--shape", f"file:{path}", "--alpha", "-1", "--hull-repair")
    assert code == 0


def test_missing_file(capsys):
    assert run(capsys, "verify", "--shape", "file:/nonexistent.json", "--alpha", "-1")[0] == 2


def test_sweep_regular_family(capsys):
    code, out, _ = run(capsys, "sweep", "--shape", "regular:8,16,32,64", "--perimeter", "6.283185307179586", "--alpha", "-1", "--workers", "1")
    assert code == 0
    table = rows(out)
    assert len(table) == 5 and table[-1]["shape_id"] == "summary"
    margins = [float(r["margin_star"]) for r in table[:-1]]
    assert all(m > 0 for m in margins)
    assert all(a > b for a, b in zip(margins, margins[1:]))
    assert float(table[-1]["margin_star"]) == min(margins)


def test_sweep_deterministic(tmp_path, capsys):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv", tmp_path / "c.csv"]
    base = ["sweep", "--shape", "random:12", "--count", "3", "--seed", "11", "--alpha", "-0.5", "-5"]
    assert main(base + ["--workers", "1", "--out", str(paths[0])]) == 0
    assert main(base + ["--workers", "1", "--out", str(paths[1])]) == 0
    assert main(base + ["--workers", "2", "--out", str(paths[2])]) == 0
    data = [p.read_bytes() for p in paths]
    assert data[0] == data[1] == data[2]
    table = rows(data[0].decode())
    assert len(table) == 3 * 2 + 1
    assert [r["shape_id"] for r in table[:-1]] == ["random-11"] * 2 + ["random-12"] * 2 + ["random-13"] * 2


def test_sweep_empty_corpus(capsys):
    assert run(capsys, "sweep", "--shape", "random:12", "--count", "0", "--alpha", "-1")[0] == 2


def test_profile_square(capsys):
    code, out, _ = run(capsys, "profile", "--shape", "rectangle:1x1")
    assert code == 0
    table = rows(out)
    assert all(float(r["slope"]) == pytest.approx(-8.0, abs=1e-14) for r in table)
    assert table[0]["breakpoint"] == "true" and table[-1]["breakpoint"] == "true"


def test_profile_hexagon_and_triangle(capsys):
    code, out, _ = run(capsys, "profile", "--shape", "regular:6", "--perimeter", "6")
    assert float(rows(out)[0]["slope"]) == pytest.approx(-6.928203230275509, abs=1e-12)
    code, out, _ = run(capsys, "profile", "--shape", "regular:3", "--samples", "4")
    table = rows(out)
    assert float(table[-1]["area"]) == pytest.approx(0.0, abs=1e-12)


def test_bad_flags_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["ball", "--radius", "1"])
    assert exc.value.code == 2
    assert run(capsys, "verify", "--shape", "blob:3", "--alpha", "-1")[0] == 2
    assert run(capsys, "verify", "--shape", "regular:8", "--alpha", "-1", "--levels", "1")[0] == 2


def test_help_documents_columns():
    out = subprocess.run([sys.executable, "-m", "robineig", "sweep", "--help"], capture_output=True, text=True)
    assert out.returncode == 0
    assert "margin_star" in out.stdout and "chain_ok" in out.stdout


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "robineig", "ball", "--radius", "1", "--alpha", "-1", "--format", "csv"], capture_output=True, text=True
    )
    assert out.returncode == 0
    assert out.stdout.splitlines()[0].startswith("dim,radius,alpha,k,lambda")
