import csv
import json

import pytest

from conftest import DATA
from infodemic.classifiers import Algorithm
from infodemic.cli import main
from infodemic.config import SEED_ENV, build_config, parse_seed, read_config_file
from infodemic.corpus import Corpus, Label, NewsArticle, load_corpus, save_corpus
from infodemic.errors import ConfigError
from infodemic.features import LAYOUT_VERSION, MISC_FEATURE_NAMES, Setup

MINI = str(DATA / "mini_corpus.csv")


def write_config(tmp_path, **values):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"version": 1, **values}), encoding="utf-8")
    return str(path)


# -- config


def test_flags_beat_file_and_env():
    cfg = build_config({"seed": 5, "k_folds": 4}, {"seed": "9"}, env={SEED_ENV: "7"})
    assert cfg.seed == 9 and cfg.k_folds == 4
    assert build_config({"seed": 5}, {}, env={SEED_ENV: "7"}).seed == 5
    assert build_config({}, {}, env={SEED_ENV: "7"}).seed == 7
    assert build_config({}, {}, env={}).seed == 0


def test_seed_parsing():
    assert parse_seed("42") == 42
    assert parse_seed(-1) == 2**64 - 1
    with pytest.raises(ConfigError):
        parse_seed("abc")


def test_config_file_validation(tmp_path):
    with pytest.raises(ConfigError, match="not found"):
        read_config_file(tmp_path / "nope.json")
    bad = tmp_path / "bad.json"
    bad.write_text('{"version": 2}')
    with pytest.raises(ConfigError, match="version"):
        read_config_file(bad)
    bad.write_text('{"version": 1, "colour": "red"}')
    with pytest.raises(ConfigError, match="unknown"):
        read_config_file(bad)
    bad.write_text("{not json")
    with pytest.raises(ConfigError):
        read_config_file(bad)


def test_config_value_validation():
    with pytest.raises(ConfigError):
        build_config({"setups": ["Trigram"]}, env={})
    with pytest.raises(ConfigError):
        build_config({"k_folds": 1}, env={})
    with pytest.raises(ConfigError):
        build_config({"hyperparameters": {"knn": {"k": 0}}}, env={})
    cfg = build_config({"setups": "POS,Misc", "algorithms": ["knn"], "vectorizer": {"min_df": 1}}, env={})
    assert cfg.setups == (Setup.POS, Setup.MISC)
    assert cfg.algorithms == (Algorithm.KNN,)
    assert cfg.min_df == 1


# -- CLI


def test_missing_corpus_exit_code(tmp_path, capsys):
    assert main(["stats", str(tmp_path / "missing.csv")]) == 2
    assert "file not found" in capsys.readouterr().err
    assert main(["stats"]) == 2


def test_bad_config_exit_code(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text('{"version": 3}')
    assert main(["stats", MINI, "--config", str(cfg)]) == 2


def test_processing_error_exit_code(tmp_path):
    # every cell fails when k exceeds the training fold size
    cfg = write_config(tmp_path, hyperparameters={"knn": {"k": 500}})
    rc = main(["experiment", MINI, "--config", cfg, "--setups", "Misc", "--algorithms", "KNN", "--k-folds", "2", "--out", str(tmp_path)])
    assert rc == 3


def test_stats_shares(tmp_path, capsys):
    arts = [NewsArticle(f"f{i}", "fake text", Label.FAKE) for i in range(699)]
    arts += [NewsArticle(f"r{i}", "real text", Label.REAL) for i in range(813)]
    path = tmp_path / "c.jsonl"
    save_corpus(Corpus(tuple(arts)), path)
    assert main(["stats", str(path)]) == 0
    out = capsys.readouterr().out
    assert "46.2%" in out and "53.8%" in out and "1512" in out


def test_featurize_misc_csv(tmp_path):
    assert main(["featurize", MINI, "--setups", "Misc", "--out", str(tmp_path)]) == 0
    with open(tmp_path / "features_Misc.csv", newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    header = rows[0]
    assert header[:2] == ["id", "label"]
    assert header[-7:] == [f"misc:{n}" for n in MISC_FEATURE_NAMES]
    assert len(rows) == 13 and {len(r) for r in rows} == {len(header)}
    assert (tmp_path / "vocabulary_unigrams.tsv").exists()
    layout = json.loads((tmp_path / "layout_Misc.json").read_text())
    assert layout["columns"] == header[2:]


def test_featurize_all_jsonl(tmp_path):
    assert main(["featurize", MINI, "--setups", "All", "--format", "jsonl", "--out", str(tmp_path)]) == 0
    lines = (tmp_path / "features_All.jsonl").read_text().splitlines()
    assert len(lines) == 12
    rec = json.loads(lines[0])
    assert rec["layout_version"] == LAYOUT_VERSION and rec["id"] == "m01"
    assert rec["indices"] == sorted(rec["indices"]) and len(rec["indices"]) == len(rec["values"])


@pytest.fixture(scope="module")
def synth_path(tmp_path_factory):
    out = tmp_path_factory.mktemp("synth")
    assert main(["gen-synthetic", "--n-per-class", "30", "--seed", "4", "--out", str(out)]) == 0
    return out / "synthetic.csv"


def test_gen_synthetic_deterministic(tmp_path, synth_path):
    assert main(["gen-synthetic", "--n-per-class", "30", "--seed", "4", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "synthetic.csv").read_bytes() == synth_path.read_bytes()
    assert len(load_corpus(synth_path)) == 60
    assert main(["gen-synthetic", "--n-per-class", "5", "--out", str(tmp_path)]) == 2
    assert main(["gen-synthetic", "--signal-strength", "loud", "--out", str(tmp_path)]) == 2


def test_experiment_single_cell(tmp_path, synth_path):
    args = ["experiment", str(synth_path), "--setups", "POS", "--algorithms", "RandomForest", "--k-folds", "3"]
    assert main(args + ["--out", str(tmp_path / "a")]) == 0
    report = json.loads((tmp_path / "a" / "report.json").read_text())
    assert len(report["rows"]) == 1
    assert report["rows"][0]["setup"] == "POS" and report["rows"][0]["algorithm"] == "RandomForest"
    assert report["config"]["seed"] == 0
    assert main(args + ["--out", str(tmp_path / "b")]) == 0
    for name in ("report.json", "report.md", "report.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_seed_env_fallback(tmp_path, synth_path, monkeypatch):
    args = ["experiment", str(synth_path), "--setups", "Misc", "--algorithms", "DecisionTree", "--k-folds", "3"]
    monkeypatch.setenv(SEED_ENV, "77")
    assert main(args + ["--out", str(tmp_path / "env")]) == 0
    assert json.loads((tmp_path / "env" / "report.json").read_text())["config"]["seed"] == 77
    cfg = write_config(tmp_path, seed=5, k_folds=4)
    assert main(args + ["--config", cfg, "--seed", "8", "--out", str(tmp_path / "flag")]) == 0
    echoed = json.loads((tmp_path / "flag" / "report.json").read_text())["config"]
    assert echoed["seed"] == 8 and echoed["k_folds"] == 3


def test_report_command(tmp_path, synth_path):
    assert main(["report", str(synth_path), "--which", "bigrams", "--out", str(tmp_path)]) == 0
    rows = list(csv.DictReader(open(tmp_path / "top_bigrams.csv", encoding="utf-8")))
    assert sum(r["class"] == "Fake" for r in rows) == 20
    assert sum(r["class"] == "Real" for r in rows) == 20
    assert not (tmp_path / "pos_distribution.csv").exists()
    assert main(["report", str(synth_path), "--which", "features", "--out", str(tmp_path)]) == 0
    rows = list(csv.DictReader(open(tmp_path / "feature_comparison.csv", encoding="utf-8")))
    assert len(rows) == 14 and {r["feature"] for r in rows} == set(MISC_FEATURE_NAMES)
