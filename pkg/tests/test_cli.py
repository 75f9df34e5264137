"""Command line interface: subcommands, formats, exit codes."""

import json
import subprocess
import sys

import pytest

from orthoprot import RasterImage
from orthoprot.cli import main

from conftest import protein_xml


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["build", "x.xml"])  # --out is required
    assert exc.value.code == 2


def test_palette_text_and_json(capsys):
    code, out, _ = run(capsys, "palette")
    assert code == 0
    assert "ALA #000080" in out
    assert "fingerprint" in out
    code, out, _ = run(capsys, "palette", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert len(report["colors"]) == 20


def test_ingest_reports_summary(capsys, tmp_path):
    path = protein_xml(tmp_path, "1CLI", n=12)
    code, out, _ = run(capsys, "ingest", str(path), "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["id"] == "1CLI"
    assert report["residues"] == 12


def test_ingest_missing_file_exits_1(capsys):
    code, _, err = run(capsys, "ingest", "/nonexistent/file.xml")
    assert code == 1
    assert "error" in err


def test_malformed_input_exits_1(capsys, tmp_path):
    bad = tmp_path / "bad.xml"
    bad.write_text("<broken")
    code, _, err = run(capsys, "ingest", str(bad))
    assert code == 1
    assert "MalformedXml" in err


def test_render_writes_png(capsys, tmp_path):
    path = protein_xml(tmp_path, "2CLI", n=20)
    out_png = tmp_path / "img.png"
    code, out, _ = run(capsys, "render", str(path), "--out", str(out_png))
    assert code == 0
    img = RasterImage.load_png(out_png)
    assert img.pixels.shape == (299, 299, 3)


def test_render_custom_size(capsys, tmp_path):
    path = protein_xml(tmp_path, "3CLI", n=20)
    out_png = tmp_path / "img.png"
    code, _, _ = run(capsys, "render", str(path), "--out", str(out_png), "--size", "128")
    assert code == 0
    assert RasterImage.load_png(out_png).pixels.shape == (128, 128, 3)


def test_mutate_writes_log(capsys, tmp_path):
    path = protein_xml(tmp_path, "4CLI", n=40)
    out_log = tmp_path / "log.json"
    code, out, _ = run(
        capsys, "mutate", str(path), "--out", str(out_log),
        "--seed", "3", "--prob", "0.5", "--format", "json",
    )
    assert code == 0
    report = json.loads(out)
    assert report["residues"] == 40
    log = json.loads(out_log.read_text())
    assert log["total_residues"] == 40
    assert len(log["entries"]) == report["mutations"] > 0


def test_build_split_stats_pipeline(capsys, tmp_path):
    inputs = [str(protein_xml(tmp_path, f"P{i:03d}", n=15)) for i in range(4)]
    out_dir = tmp_path / "ds"
    code, out, _ = run(
        capsys, "build", *inputs, "--out", str(out_dir), "--seed", "2",
        "--format", "json",
    )
    assert code == 0
    report = json.loads(out)
    assert report["proteins"] == 4
    manifest_path = out_dir / "manifest.json"
    assert manifest_path.exists()

    code, out, _ = run(
        capsys, "split", str(manifest_path), "--fraction", "0.25", "--format", "json"
    )
    assert code == 0
    assert json.loads(out)["test_pairs"] == 1
    # split is persisted
    raw = json.loads(manifest_path.read_text())
    assert {e["split"] for e in raw["entries"]} == {"train", "test"}

    code, out, _ = run(capsys, "stats", str(manifest_path), "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["entries"] == 8
    assert report["by_split"] == {"test": 2, "train": 6}


def test_build_partial_failure_exits_1(capsys, tmp_path):
    good = protein_xml(tmp_path, "GOOD", n=10)
    bad = tmp_path / "bad.xml"
    bad.write_text("<nope")
    out_dir = tmp_path / "ds"
    code, out, err = run(capsys, "build", str(good), str(bad), "--out", str(out_dir))
    assert code == 1
    assert "failed" in err
    assert (out_dir / "manifest.json").exists()  # partial results are kept


def test_split_bad_fraction_exits_1(capsys, tmp_path):
    inputs = [str(protein_xml(tmp_path, f"Q{i}", n=10)) for i in range(2)]
    out_dir = tmp_path / "ds"
    assert run(capsys, "build", *inputs, "--out", str(out_dir))[0] == 0
    code, _, err = run(
        capsys, "split", str(out_dir / "manifest.json"), "--fraction", "1.5"
    )
    assert code == 1
    assert "ValueError" in err


def test_console_script_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "orthoprot", "palette"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "ALA" in proc.stdout
