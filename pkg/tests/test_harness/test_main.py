"""Tests for the command-line entry point and its exit codes."""

import orjson
import pandas as pd

from src.main import EXIT_CONFIG, EXIT_DATA, EXIT_OK, EXIT_PARTIAL, main

SYNTHETIC = ["--synthetic", "--n", "300", "--ir", "9", "--data-seed", "1"]


def _experiment_args(out, *extra):
    return [
        "experiment",
        "--models", "decision_tree,bagging_tree",
        "--balances", "none,bbb",
        "--iterations", "2",
        "--pool-size", "3",
        "--jobs", "1",
        "--out", str(out),
        *SYNTHETIC,
        *extra,
    ]


class TestSummarize:
    def test_counts(self, capsys):
        assert main(["summarize", "--counts", "129013", "5560"]) == EXIT_OK
        assert "Imbalance ratio: 22.20" in capsys.readouterr().out

    def test_synthetic(self, capsys):
        assert main(["summarize", *SYNTHETIC]) == EXIT_OK
        assert "Instances:       300" in capsys.readouterr().out

    def test_no_source_is_configuration_error(self):
        assert main(["summarize"]) == EXIT_CONFIG

    def test_missing_csv_is_data_error(self, tmp_path):
        assert main(["summarize", "--csv", str(tmp_path / "none.csv")]) == EXIT_DATA

    def test_bad_counts(self):
        assert main(["summarize", "--counts", "10", "11"]) == EXIT_CONFIG


class TestIngest:
    def test_writes_npz(self, tmp_path, capsys):
        features = tmp_path / "features"
        features.mkdir()
        (features / "a").write_text("X\nY\n")
        (features / "b").write_text("Y\n")
        manifest = tmp_path / "m.csv"
        manifest.write_text("sha256\nb\n")
        out = tmp_path / "d.npz"
        code = main([
            "ingest", "--feature-dir", str(features), "--manifest", str(manifest),
            "--min-feature-count", "1", "--out", str(out),
        ])
        assert code == EXIT_OK
        assert out.is_file()
        assert main(["summarize", "--npz", str(out)]) == EXIT_OK
        assert "Positives:       1" in capsys.readouterr().out

    def test_inconsistent_manifest(self, tmp_path):
        features = tmp_path / "features"
        features.mkdir()
        (features / "a").write_text("X\n")
        manifest = tmp_path / "m.csv"
        manifest.write_text("sha256\nzzz\n")
        code = main([
            "ingest", "--feature-dir", str(features), "--manifest", str(manifest),
            "--out", str(tmp_path / "d.npz"),
        ])
        assert code == EXIT_DATA


class TestExperiment:
    def test_writes_reports(self, tmp_path):
        assert main(_experiment_args(tmp_path)) == EXIT_OK
        results = pd.read_csv(tmp_path / "results.csv")
        assert len(results) == 4
        manifest = orjson.loads((tmp_path / "manifest.json").read_bytes())
        assert manifest["seeds"] == [0, 1]
        assert manifest["failures"] == []

    def test_partial_failure_exit_code(self, tmp_path):
        config = tmp_path / "exp.json"
        config.write_bytes(
            orjson.dumps({"models": ["decision_tree", "ola"], "params": {"region_k": 5000}})
        )
        args = [
            "experiment", "--config", str(config), "--iterations", "1", "--pool-size", "2",
            "--jobs", "1", "--out", str(tmp_path / "out"), *SYNTHETIC,
        ]
        assert main(args) == EXIT_PARTIAL
        runs = pd.read_csv(tmp_path / "out" / "runs.csv", keep_default_na=False)
        assert (runs["error"] != "").sum() == 2

    def test_invalid_config_value(self, tmp_path):
        config = tmp_path / "exp.json"
        config.write_bytes(orjson.dumps({"models": ["svm"]}))
        assert main(["experiment", "--config", str(config)]) == EXIT_CONFIG

    def test_hardness_enabled_in_config(self, tmp_path):
        config = tmp_path / "exp.json"
        config.write_bytes(orjson.dumps({"hardness": {"enabled": True}}))
        args = _experiment_args(tmp_path / "out", "--config", str(config))
        assert main(args) == EXIT_OK
        assert (tmp_path / "out" / "hardness_summary.csv").is_file()


class TestOtherCommands:
    def test_compare_balancing(self, tmp_path):
        args = [
            "compare-balancing", "--models", "bagging_tree", "--iterations", "1",
            "--pool-size", "3", "--jobs", "1", "--out", str(tmp_path), *SYNTHETIC,
        ]
        assert main(args) == EXIT_OK
        comparison = pd.read_csv(tmp_path / "comparison.csv")
        assert set(comparison["left_balance"]) == {"bbb"}
        assert (comparison["pairs"] == 1).all()

    def test_hardness(self, tmp_path, capsys):
        args = ["hardness", "--source", "full", "--k", "3", "--out", str(tmp_path), *SYNTHETIC]
        assert main(args) == EXIT_OK
        assert "KDN (k=3) on full data" in capsys.readouterr().out
        summary = pd.read_csv(tmp_path / "hardness_summary.csv")
        assert summary["class"].tolist() == [0, 1]

    def test_report_reaggregates(self, tmp_path):
        assert main(_experiment_args(tmp_path / "run")) == EXIT_OK
        original = (tmp_path / "run" / "results.csv").read_bytes()
        args = ["report", "--runs", str(tmp_path / "run" / "runs.csv"), "--out", str(tmp_path)]
        assert main(args) == EXIT_OK
        assert (tmp_path / "results.csv").read_bytes() == original

    def test_report_missing_runs(self, tmp_path):
        assert main(["report", "--runs", str(tmp_path / "runs.csv")]) == EXIT_DATA

    def test_train_and_evaluate(self, tmp_path, capsys):
        artifact = tmp_path / "rf.joblib"
        args = [
            "train", "--model", "random_forest", "--balance", "bbb", "--pool-size", "3",
            "--jobs", "1", "--out", str(artifact), *SYNTHETIC,
        ]
        assert main(args) == EXIT_OK
        assert main(["evaluate", "--artifact", str(artifact), *SYNTHETIC]) == EXIT_OK
        assert "g_mean" in capsys.readouterr().out

    def test_train_rejects_dynamic_selector(self, tmp_path):
        args = ["train", "--model", "knop", "--out", str(tmp_path / "x.joblib"), *SYNTHETIC]
        assert main(args) == EXIT_CONFIG

    def test_evaluate_bad_artifact(self, tmp_path):
        path = tmp_path / "bad.joblib"
        path.write_bytes(b"nope")
        assert main(["evaluate", "--artifact", str(path), *SYNTHETIC]) == EXIT_DATA


class TestLoggingFlags:
    def test_bad_log_level(self):
        assert main(["--log-level", "LOUD", "summarize", "--counts", "4", "1"]) == EXIT_CONFIG

    def test_json_log_format(self, capsys):
        assert main(["--log-format", "json", "summarize", "--counts", "4", "1"]) == EXIT_OK
        assert "Imbalance ratio: 3.00" in capsys.readouterr().out
