import json
import os

import pytest

from explmine.cli import main
from explmine.records import ReviewLabel, import_candidates, save_labels
from explmine.spans import STAGE_LABELED


def test_count_command(tmp_path, capsys):
    text = tmp_path / "wiki.txt"
    text.write_text("a b a\nc\n", encoding="utf-8")
    out = tmp_path / "counts.tsv"
    assert main(["count", str(text), "--lang", "en", "--out", str(out)]) == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "#lang=en\ttotal=4"
    assert "counted 4 tokens" in capsys.readouterr().out


def test_count_merges_shards(tmp_path):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    a.write_text("x y\n", encoding="utf-8")
    b.write_text("y z\n", encoding="utf-8")
    out = tmp_path / "counts.tsv"
    main(["count", str(a), str(b), "--lang", "en", "--out", str(out)])
    rows = dict(
        line.split("\t") for line in out.read_text(encoding="utf-8").splitlines()[1:]
    )
    assert rows == {"x": "1", "y": "2", "z": "1"}


def test_index_wiki_jsonl(tmp_path):
    articles = tmp_path / "articles.jsonl"
    articles.write_text(
        json.dumps({"title": "Super Bowl", "text": "x" * 100}) + "\n", encoding="utf-8"
    )
    out = tmp_path / "idx.tsv"
    assert main(["index-wiki", str(articles), "--lang", "en", "--out", str(out)]) == 0
    assert out.read_text(encoding="utf-8") == "super bowl\tSuper Bowl\t100\n"


def test_index_wiki_doc_blocks(tmp_path):
    articles = tmp_path / "articles.xml"
    articles.write_text(
        '<doc id="1" url="u" title="Super Bowl">\nSuper Bowl\nbody text\n</doc>\n',
        encoding="utf-8",
    )
    out = tmp_path / "idx.tsv"
    assert main(["index-wiki", str(articles), "--lang", "en", "--out", str(out)]) == 0
    row = out.read_text(encoding="utf-8").strip().split("\t")
    assert row[0] == "super bowl"
    assert int(row[2]) == len("Super Bowl\nbody text".encode())


@pytest.fixture(scope="module")
def synth_run(tmp_path_factory):
    base = tmp_path_factory.mktemp("cli_synth")
    assert (
        main(
            [
                "gen-synthetic", "--out", str(base), "--pairs", "300",
                "--planted", "6", "--per-distractor", "3", "--seed", "5",
            ]
        )
        == 0
    )
    assert main(["run", "--config", str(base / "config.txt")]) == 0
    return base


def test_run_produces_outputs(synth_run):
    out = synth_run / "out"
    assert (out / "candidates_wiki.jsonl").exists()
    assert (out / "report.json").exists()


def test_run_threshold_override_changes_nothing_on_synthetic(synth_run, tmp_path):
    # synthetic rare tokens have count 0, so threshold 1 keeps them rare
    assert (
        main(
            [
                "run", "--config", str(synth_run / "config.txt"),
                "--src-threshold", "1", "--tgt-threshold", "1",
                "--output-dir", str(tmp_path / "low"),
            ]
        )
        == 0
    )
    a = import_candidates(str(synth_run / "out" / "candidates_wiki.jsonl"))
    b = import_candidates(str(tmp_path / "low" / "candidates_wiki.jsonl"))
    assert {r.candidate.identity for r in a} == {r.candidate.identity for r in b}


def test_report_command(synth_run, capsys):
    assert main(["report", "--run-dir", str(synth_run / "out")]) == 0
    printed = capsys.readouterr().out
    assert "rarity" in printed and "wiki" in printed


def test_report_with_labels_and_ne_stats(synth_run, capsys):
    records = import_candidates(str(synth_run / "out" / "candidates_wiki.jsonl"))
    labels = [
        ReviewLabel(r.candidate_id, "EXPLANATION" if i % 2 == 0 else "NOT_EXPLANATION",
                    "cli", f"2026-08-10T12:00:{i:02d}+00:00")
        for i, r in enumerate(records)
    ]
    labels_path = synth_run / "labels.jsonl"
    save_labels(labels, str(labels_path))
    assert (
        main(
            [
                "report", "--run-dir", str(synth_run / "out"),
                "--labels", str(labels_path), "--ne-stats",
            ]
        )
        == 0
    )
    printed = capsys.readouterr().out
    assert "retention:" in printed
    assert "unique explained entities" in printed
    assert (synth_run / "out" / "ne_stats.jsonl").exists()


def test_export_accepted_only(synth_run, tmp_path):
    records = import_candidates(str(synth_run / "out" / "candidates_wiki.jsonl"))
    accepted = records[0]
    labels_path = tmp_path / "labels.jsonl"
    save_labels(
        [ReviewLabel(accepted.candidate_id, "EXPLANATION", "cli", "2026-08-10T12:00:00+00:00")],
        str(labels_path),
    )
    out = tmp_path / "dataset.jsonl"
    assert (
        main(
            [
                "export", "--run-dir", str(synth_run / "out"), "--stage", "wiki",
                "--labels", str(labels_path), "--accepted-only", "--out", str(out),
            ]
        )
        == 0
    )
    exported = import_candidates(str(out))
    assert [r.candidate_id for r in exported] == [accepted.candidate_id]


def test_export_labeled_stage(synth_run, tmp_path):
    records = import_candidates(str(synth_run / "out" / "candidates_wiki.jsonl"))
    labels_path = tmp_path / "labels.jsonl"
    save_labels(
        [ReviewLabel(records[0].candidate_id, "EXPLANATION", "cli", "2026-08-10T12:00:00+00:00")],
        str(labels_path),
    )
    out = tmp_path / "labeled.jsonl"
    assert (
        main(
            [
                "export", "--run-dir", str(synth_run / "out"), "--stage", "labeled",
                "--labels", str(labels_path), "--out", str(out),
            ]
        )
        == 0
    )
    exported = import_candidates(str(out))
    assert all(r.candidate.stage == STAGE_LABELED for r in exported)
    assert len(exported) == 1


def test_run_missing_config_reports_error(tmp_path, capsys):
    assert main(["run", "--config", str(tmp_path / "nope.conf")]) == 2
    assert "error:" in capsys.readouterr().err
