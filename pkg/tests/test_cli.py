"""Command-line behavior: exit codes, artifacts on disk, subcommand parity."""

import json

import pytest

from newsaudit.cli import EXIT_EMPTY, EXIT_FATAL, EXIT_OK, main
from newsaudit.report import fixture_dir

CORPUS = str(fixture_dir() / "corpus.jsonl")
SOURCES = str(fixture_dir() / "sources.json")


def test_audit_writes_all_artifacts(tmp_path, capsys):
    out = tmp_path / "run"
    code = main(["audit", "--corpus", CORPUS, "--sources", SOURCES, "--out", str(out)])
    assert code == EXIT_OK
    line = capsys.readouterr().out.strip()
    assert "mentions=32" in line and "unique_experts=30" in line
    assert (out / "report.json").exists()
    assert (out / "mentions.jsonl").exists()
    assert len(list(out.glob("*.csv"))) == 12
    assert len(list(out.glob("*.svg"))) == 5


def test_audit_json_only(tmp_path):
    out = tmp_path / "run"
    code = main(["audit", "--corpus", CORPUS, "--sources", SOURCES,
                 "--out", str(out), "--formats", "json"])
    assert code == EXIT_OK
    assert list(out.glob("*.csv")) == []
    assert (out / "report.json").exists()


def test_audit_rejects_unknown_format(tmp_path):
    code = main(["audit", "--corpus", CORPUS, "--sources", SOURCES,
                 "--out", str(tmp_path / "x"), "--formats", "json,docx"])
    assert code == EXIT_FATAL


def test_audit_missing_corpus_is_fatal(tmp_path):
    code = main(["audit", "--corpus", str(tmp_path / "absent.jsonl"),
                 "--sources", SOURCES, "--out", str(tmp_path / "x")])
    assert code == EXIT_FATAL


def test_audit_empty_corpus_exit_code(tmp_path):
    corpus = tmp_path / "empty.jsonl"
    corpus.write_text("", encoding="utf-8")
    code = main(["audit", "--corpus", str(corpus), "--sources", SOURCES,
                 "--out", str(tmp_path / "out")])
    assert code == EXIT_EMPTY
    # the empty report is still written for inspection
    assert (tmp_path / "out" / "report.json").exists()


def test_extract_writes_mentions_only(tmp_path, capsys):
    out = tmp_path / "ext"
    code = main(["extract", "--corpus", CORPUS, "--sources", SOURCES, "--out", str(out)])
    assert code == EXIT_OK
    assert "mentions=32" in capsys.readouterr().out
    assert (out / "mentions.jsonl").exists()
    assert not (out / "report.json").exists()
    with (out / "mentions.jsonl").open(encoding="utf-8") as fh:
        assert sum(1 for _ in fh) == 32


def test_stats_rebuilds_the_same_tables(tmp_path):
    full = tmp_path / "full"
    assert main(["audit", "--corpus", CORPUS, "--sources", SOURCES,
                 "--out", str(full), "--formats", "json"]) == EXIT_OK
    rebuilt = tmp_path / "rebuilt"
    assert main(["stats", "--mentions", str(full / "mentions.jsonl"),
                 "--sources", SOURCES, "--out", str(rebuilt),
                 "--formats", "json"]) == EXIT_OK
    a = json.loads((full / "report.json").read_text(encoding="utf-8"))
    b = json.loads((rebuilt / "report.json").read_text(encoding="utf-8"))
    # corpus provenance (ingest counts) is unavailable from a mentions file
    a.pop("corpus"), b.pop("corpus")
    assert a == b


def test_paper_faithful_equals_no_suppression(tmp_path):
    flags = (["--no-outlet-suppression"], ["--paper-faithful"])
    outs = []
    for i, extra in enumerate(flags):
        out = tmp_path / f"run{i}"
        assert main(["audit", "--corpus", CORPUS, "--sources", SOURCES,
                     "--out", str(out), "--formats", "json"] + extra) == EXIT_OK
        outs.append((out / "report.json").read_bytes())
    assert outs[0] == outs[1]
    data = json.loads(outs[0])
    assert data["totals"]["mentions"] == 33
    assert data["config"]["outlet_suppression"] is False


def test_audit_reruns_are_byte_identical(tmp_path):
    blobs = []
    for i in range(2):
        out = tmp_path / f"run{i}"
        assert main(["audit", "--corpus", CORPUS, "--sources", SOURCES,
                     "--out", str(out)]) == EXIT_OK
        blobs.append((out / "report.json").read_bytes()
                     + (out / "mentions.jsonl").read_bytes())
    assert blobs[0] == blobs[1]


def test_sample_subcommand(tmp_path, capsys):
    ext = tmp_path / "ext"
    assert main(["extract", "--corpus", CORPUS, "--sources", SOURCES,
                 "--out", str(ext)]) == EXIT_OK
    sheet = tmp_path / "sheet.csv"
    code = main(["sample", "--mentions", str(ext / "mentions.jsonl"),
                 "--n", "5", "--seed", "3", "--out", str(sheet)])
    assert code == EXIT_OK
    assert "sheet=" in capsys.readouterr().out
    assert sheet.exists()


def test_sample_oversample_is_fatal(tmp_path):
    ext = tmp_path / "ext"
    assert main(["extract", "--corpus", CORPUS, "--sources", SOURCES,
                 "--out", str(ext)]) == EXIT_OK
    code = main(["sample", "--mentions", str(ext / "mentions.jsonl"),
                 "--n", "400", "--seed", "3", "--out", str(tmp_path / "s.csv")])
    assert code == EXIT_FATAL


def test_seed_changes_bootstrap_but_not_counts(tmp_path):
    reports = []
    for seed in ("0", "1"):
        out = tmp_path / f"seed{seed}"
        assert main(["audit", "--corpus", CORPUS, "--sources", SOURCES,
                     "--out", str(out), "--formats", "json",
                     "--seed", seed]) == EXIT_OK
        reports.append(json.loads((out / "report.json").read_text(encoding="utf-8")))
    a, b = reports
    assert a["totals"]["mentions"] == b["totals"]["mentions"]
    assert (a["totals"]["women_men"]["bootstrap"]["mean"]
            != b["totals"]["women_men"]["bootstrap"]["mean"])
