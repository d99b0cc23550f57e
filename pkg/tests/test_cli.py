import io
import math
import sys

import pytest

import synthetic
from morphchains.cli import run_command


@pytest.fixture(scope="module")
def cli_env(tmp_path_factory):
    """Synthetic corpus on disk plus one trained model file."""
    directory = tmp_path_factory.mktemp("clidata")
    language = synthetic.generate()
    wordlist, gold, vectors = synthetic.write_files(language, directory)
    model = directory / "lang.model"
    status = run_command(
        [
            "train",
            "--wordlist", str(wordlist),
            "--embeddings", str(vectors),
            "--gold", str(gold),
            "--model-out", str(model),
        ]
    )
    assert status == 0
    return {
        "dir": directory,
        "language": language,
        "wordlist": str(wordlist),
        "gold": str(gold),
        "vectors": str(vectors),
        "model": str(model),
    }


def model_args(env):
    return [
        "--model", env["model"],
        "--wordlist", env["wordlist"],
        "--embeddings", env["vectors"],
    ]


class TestUsageErrors:
    def test_unknown_subcommand(self, capsys):
        assert run_command(["frobnicate"]) == 2

    def test_missing_required_flag(self, capsys):
        assert run_command(["train", "--wordlist", "w"]) == 2

    def test_negative_lambda(self, cli_env, capsys):
        status = run_command(
            [
                "train",
                "--wordlist", cli_env["wordlist"],
                "--embeddings", cli_env["vectors"],
                "--model-out", str(cli_env["dir"] / "x.model"),
                "--lambda", "-1",
            ]
        )
        assert status == 2

    def test_help_exits_zero(self, capsys):
        assert run_command(["--help"]) == 0


class TestDataErrors:
    def test_malformed_wordlist(self, cli_env, tmp_path, capsys):
        bad = tmp_path / "bad.tsv"
        bad.write_text("play 100\n", encoding="utf-8")
        status = run_command(
            [
                "train",
                "--wordlist", str(bad),
                "--embeddings", cli_env["vectors"],
                "--model-out", str(tmp_path / "x.model"),
            ]
        )
        assert status == 1
        assert "error:" in capsys.readouterr().err

    def test_missing_file(self, cli_env, tmp_path, capsys):
        status = run_command(
            ["segment", "--model", str(tmp_path / "nope.model"),
             "--wordlist", cli_env["wordlist"], "--embeddings", cli_env["vectors"]]
        )
        assert status == 1


class TestTrain:
    def test_writes_model_and_echoes_config(self, cli_env, capsys):
        err = capsys.readouterr().err  # fixture output was already consumed
        out = cli_env["dir"] / "again.model"
        status = run_command(
            [
                "train",
                "--wordlist", cli_env["wordlist"],
                "--embeddings", cli_env["vectors"],
                "--gold", cli_env["gold"],
                "--model-out", str(out),
            ]
        )
        assert status == 0
        assert out.exists()
        err = capsys.readouterr().err
        assert "config: lambda = 1.0" in err
        assert "trained:" in err

    def test_determinism_bitwise(self, cli_env):
        paths = [str(cli_env["dir"] / f"det{i}.model") for i in (1, 2)]
        for path in paths:
            status = run_command(
                [
                    "train",
                    "--wordlist", cli_env["wordlist"],
                    "--embeddings", cli_env["vectors"],
                    "--gold", cli_env["gold"],
                    "--model-out", path,
                ]
            )
            assert status == 0
        first, second = (open(p, "rb").read() for p in paths)
        assert first == second


class TestSegmentAndChains:
    def test_segment_from_stdin(self, cli_env, capsys, monkeypatch):
        base = cli_env["language"].bases[0]
        monkeypatch.setattr("sys.stdin", io.StringIO(f"{base}s\n{base}ly\n"))
        status = run_command(["segment", *model_args(cli_env)])
        assert status == 0
        out = capsys.readouterr().out
        assert out == f"{base}s\t{base} s\n{base}ly\t{base} ly\n"

    def test_segment_words_file_and_out(self, cli_env, tmp_path):
        base = cli_env["language"].bases[1]
        words = tmp_path / "in.txt"
        words.write_text(f"{base}ness\n", encoding="utf-8")
        out = tmp_path / "out.tsv"
        status = run_command(
            ["segment", *model_args(cli_env), "--words", str(words), "--out", str(out)]
        )
        assert status == 0
        assert out.read_text(encoding="utf-8") == f"{base}ness\t{base} ness\n"

    def test_jobs_parallel_equals_serial(self, cli_env, tmp_path):
        words = tmp_path / "in.txt"
        words.write_text("".join(w + "\n" for w in cli_env["language"].wordlist))
        outs = []
        for jobs in ("1", "4"):
            out = tmp_path / f"out{jobs}.tsv"
            status = run_command(
                ["segment", *model_args(cli_env), "--words", str(words),
                 "--out", str(out), "--jobs", jobs]
            )
            assert status == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

    def test_chains_format(self, cli_env, capsys, monkeypatch):
        base = cli_env["language"].bases[2]
        monkeypatch.setattr("sys.stdin", io.StringIO(f"{base}s\n"))
        status = run_command(["chains", *model_args(cli_env)])
        assert status == 0
        out = capsys.readouterr().out
        assert out.startswith(f"{base}s\t{base}:Stop")
        assert out.rstrip().endswith(f"{base}s:Suffix")


class TestEvaluate:
    def test_scores_and_counts(self, cli_env, capsys):
        status = run_command(
            ["evaluate", *model_args(cli_env), "--gold", cli_env["gold"]]
        )
        assert status == 0
        lines = capsys.readouterr().out.splitlines()
        precision, recall, f1 = (float(x) for x in lines[0].split("\t"))
        tp, pred, gold = (int(x) for x in lines[1].split("\t"))
        assert 0.85 <= f1 <= 1.0
        if precision + recall:
            assert f1 == pytest.approx(
                2 * precision * recall / (precision + recall), abs=1e-4
            )
        assert tp <= min(pred, gold)

    def test_affix_profile_output(self, cli_env, tmp_path, capsys):
        profile = tmp_path / "profile.tsv"
        status = run_command(
            ["evaluate", *model_args(cli_env), "--gold", cli_env["gold"],
             "--affix-profile", str(profile)]
        )
        assert status == 0
        rows = [line.split("\t") for line in profile.read_text().splitlines()]
        counts = [int(c) for _, c in rows]
        assert counts == sorted(counts, reverse=True)
        assert "s" in {a for a, _ in rows}

    def test_diff_listing(self, cli_env, tmp_path, capsys):
        diffs = tmp_path / "diffs.tsv"
        status = run_command(
            ["evaluate", *model_args(cli_env), "--gold", cli_env["gold"],
             "--diffs", str(diffs)]
        )
        assert status == 0
        gold_words = set(cli_env["language"].gold.entries)
        for line in diffs.read_text().splitlines():
            word, predicted, gold_alts = line.split("\t")
            assert word in gold_words
            assert predicted.replace(" ", "") == word  # segments re-join to the word
            assert gold_alts  # the gold side is shown for comparison


class TestInduceAffixes:
    def test_inventory_listing(self, cli_env, capsys):
        status = run_command(
            ["induce-affixes", "--wordlist", cli_env["wordlist"], "--side", "suffix"]
        )
        assert status == 0
        out = capsys.readouterr().out
        rows = [line.split("\t") for line in out.splitlines()]
        affixes = [a for a, _ in rows]
        counts = [int(c) for _, c in rows]
        assert set(synthetic.SUFFIXES) <= set(affixes)
        assert counts == sorted(counts, reverse=True)


class TestDumpFeatures:
    def test_suffix_triple(self, cli_env, capsys):
        base = cli_env["language"].bases[0]
        status = run_command(
            ["dump-features", f"{base}s", base, "Suffix",
             "--wordlist", cli_env["wordlist"], "--embeddings", cli_env["vectors"],
             "--model", cli_env["model"]]
        )
        assert status == 0
        named = dict(
            line.split("\t") for line in capsys.readouterr().out.splitlines()
        )
        assert named["suffix=s"] == "1"
        assert named["cos"] == "1"
        count = cli_env["language"].wordlist.count(base)
        if count > 1:
            assert float(named["wordfreq"]) == pytest.approx(math.log(count), abs=1e-5)

    def test_stop_triple_without_model(self, cli_env, capsys):
        base = cli_env["language"].bases[0]
        status = run_command(
            ["dump-features", base, "-", "Stop",
             "--wordlist", cli_env["wordlist"], "--embeddings", cli_env["vectors"]]
        )
        assert status == 0
        out = capsys.readouterr().out
        assert f"begin={base[0]}\t1" in out
        assert f"len={len(base)}\t1" in out

    def test_underivable_triple(self, cli_env, capsys):
        status = run_command(
            ["dump-features", "cars", "play", "Suffix",
             "--wordlist", cli_env["wordlist"], "--embeddings", cli_env["vectors"]]
        )
        assert status == 1


class TestDiagnose:
    def test_output_fields(self, cli_env, capsys):
        status = run_command(["diagnose", *model_args(cli_env)])
        assert status == 0
        lines = capsys.readouterr().out.splitlines()
        values = dict(line.split("\t") for line in lines)
        assert set(values) == {"avg_max_prob", "avg_entropy", "avg_candidates"}
        assert 0 < float(values["avg_max_prob"]) <= 1
        assert float(values["avg_entropy"]) >= 0


class TestSweep:
    def test_rows(self, cli_env, capsys):
        status = run_command(
            ["sweep", "--wordlist", cli_env["wordlist"],
             "--embeddings", cli_env["vectors"], "--gold", cli_env["gold"],
             "--thresholds", "1,3"]
        )
        assert status == 0
        rows = [line.split("\t") for line in capsys.readouterr().out.splitlines()]
        assert [r[0] for r in rows] == ["1", "3"]
        assert int(rows[0][1]) >= int(rows[1][1])

    def test_bad_thresholds(self, cli_env, capsys):
        status = run_command(
            ["sweep", "--wordlist", cli_env["wordlist"],
             "--embeddings", cli_env["vectors"], "--gold", cli_env["gold"],
             "--thresholds", "1,x"]
        )
        assert status == 1


class TestConfigFile:
    def test_file_value_applies_and_flag_wins(self, cli_env, tmp_path, capsys):
        config = tmp_path / "run.cfg"
        config.write_text("lambda = 0.5\nmax-iter = 7 # keep it quick\n")
        out = tmp_path / "cfg.model"
        status = run_command(
            ["train", "--wordlist", cli_env["wordlist"],
             "--embeddings", cli_env["vectors"], "--model-out", str(out),
             "--config", str(config)]
        )
        assert status == 0
        err = capsys.readouterr().err
        assert "config: lambda = 0.5" in err
        assert "config: max_iter = 7" in err

        status = run_command(
            ["train", "--wordlist", cli_env["wordlist"],
             "--embeddings", cli_env["vectors"], "--model-out", str(out),
             "--config", str(config), "--lambda", "2.0"]
        )
        assert status == 0
        err = capsys.readouterr().err
        assert "config: lambda = 2.0" in err

    def test_unknown_key_rejected(self, cli_env, tmp_path, capsys):
        config = tmp_path / "run.cfg"
        config.write_text("warp_speed = 9\n")
        status = run_command(
            ["train", "--wordlist", cli_env["wordlist"],
             "--embeddings", cli_env["vectors"],
             "--model-out", str(tmp_path / "x.model"), "--config", str(config)]
        )
        assert status == 1
