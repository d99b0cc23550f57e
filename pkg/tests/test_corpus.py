import pytest

from morphchains import (
    ConfigError,
    DataError,
    GoldSegmentations,
    ParseError,
    WordList,
    load_gold,
    load_wordlist,
    prepare_training_vocabulary,
)


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


class TestLoadWordlist:
    def test_basic_parse(self, tmp_path):
        path = write(tmp_path, "w.tsv", "play\t100\nplays\t40\n")
        wl = load_wordlist(path)
        assert wl.entries == {"play": 100, "plays": 40}
        assert wl.total == 140

    def test_blank_lines_ignored(self, tmp_path):
        path = write(tmp_path, "w.tsv", "play\t100\n\n  \nplays\t40\n")
        assert len(load_wordlist(path)) == 2

    def test_non_integer_count(self, tmp_path):
        path = write(tmp_path, "w.tsv", "play\t100\nplays\tabc\n")
        with pytest.raises(ParseError) as err:
            load_wordlist(path)
        assert err.value.lineno == 2

    def test_count_below_one(self, tmp_path):
        path = write(tmp_path, "w.tsv", "play\t0\n")
        with pytest.raises(ParseError):
            load_wordlist(path)

    def test_missing_tab(self, tmp_path):
        path = write(tmp_path, "w.tsv", "play 100\n")
        with pytest.raises(ParseError):
            load_wordlist(path)

    def test_duplicate_word(self, tmp_path):
        path = write(tmp_path, "w.tsv", "a\t1\na\t2\n")
        with pytest.raises(DataError):
            load_wordlist(path)

    def test_lowercase_merges_counts(self, tmp_path):
        path = write(tmp_path, "w.tsv", "Play\t10\nplay\t5\n")
        wl = load_wordlist(path, lowercase=True)
        assert wl.entries == {"play": 15}

    def test_unicode_words(self, tmp_path):
        path = write(tmp_path, "w.tsv", "çizgi\t3\nдом\t7\n")
        wl = load_wordlist(path)
        assert wl.count("çizgi") == 3
        assert "д" in wl.alphabet()


class TestLoadGold:
    def test_single_analysis(self, tmp_path):
        path = write(tmp_path, "g.tsv", "salvoes\tsalvo es\n")
        gold = load_gold(path)
        assert gold.alternatives("salvoes") == [["salvo", "es"]]

    def test_alternatives(self, tmp_path):
        path = write(tmp_path, "g.tsv", "plays\tplay s, plays\n")
        gold = load_gold(path)
        assert gold.alternatives("plays") == [["play", "s"], ["plays"]]

    def test_concatenation_mismatch(self, tmp_path):
        path = write(tmp_path, "g.tsv", "plays\tplai s\n")
        with pytest.raises(DataError) as err:
            load_gold(path)
        assert "plays" in str(err.value)

    def test_empty_analysis(self, tmp_path):
        path = write(tmp_path, "g.tsv", "plays\tplay s,\n")
        with pytest.raises(ParseError):
            load_gold(path)

    def test_repeated_word_accumulates(self, tmp_path):
        path = write(tmp_path, "g.tsv", "plays\tplay s\nplays\tplays\n")
        gold = load_gold(path)
        assert gold.alternatives("plays") == [["play", "s"], ["plays"]]


class TestPrepareTrainingVocabulary:
    def test_threshold_and_union(self):
        train = WordList({"play": 100, "zq": 1})
        gold = GoldSegmentations({"plays": [["play", "s"]]})
        vocab = prepare_training_vocabulary(train, gold, min_freq=2)
        assert vocab.entries == {"play": 100, "plays": 1}

    def test_overlap_keeps_train_count(self):
        train = WordList({"play": 5})
        gold = GoldSegmentations({"play": [["play"]]})
        vocab = prepare_training_vocabulary(train, gold, min_freq=1)
        assert vocab.entries == {"play": 5}

    def test_gold_word_below_threshold_survives_with_train_count(self):
        train = WordList({"play": 1, "walk": 9})
        gold = GoldSegmentations({"play": [["play"]]})
        vocab = prepare_training_vocabulary(train, gold, min_freq=5)
        assert vocab.entries == {"walk": 9, "play": 1}

    def test_empty_result_is_config_error(self):
        with pytest.raises(ConfigError):
            prepare_training_vocabulary(WordList({"a": 1}), GoldSegmentations(), 5)

    def test_superset_of_gold_subset_of_union(self):
        train = WordList({"a": 3, "b": 1, "c": 9})
        gold = GoldSegmentations({"b": [["b"]], "d": [["d"]]})
        vocab = prepare_training_vocabulary(train, gold, min_freq=2)
        assert set(gold) <= set(vocab.entries)
        assert set(vocab.entries) <= set(train.entries) | set(gold)

    def test_monotone_shrinkage(self):
        train = WordList({w: c for c, w in enumerate("abcdefghij", start=1)})
        gold = GoldSegmentations({"a": [["a"]]})
        sizes = [
            len(prepare_training_vocabulary(train, gold, t)) for t in range(1, 12)
        ]
        assert all(x >= y for x, y in zip(sizes, sizes[1:]))
