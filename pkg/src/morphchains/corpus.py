"""Wordlist and gold-segmentation ingestion.

Input formats (UTF-8, LF line endings, blank lines ignored):

* wordlist:  ``word<TAB>count``
* gold:      ``word<TAB>morph( morph)*(, morph( morph)*)*`` -- comma-separated
  alternative analyses, each a space-separated list of surface morphs whose
  concatenation must reproduce the word.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ConfigError, DataError, ParseError


@dataclass
class WordList:
    """Vocabulary with positive integer frequencies."""

    entries: dict[str, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    def __contains__(self, word: str) -> bool:
        return word in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def count(self, word: str) -> int:
        return self.entries.get(word, 0)

    def alphabet(self) -> frozenset[str]:
        """Set of characters observed across all words."""
        return frozenset(ch for word in self.entries for ch in word)


@dataclass
class GoldSegmentations:
    """Reference analyses: word -> list of alternatives, each a morph list."""

    entries: dict[str, list[list[str]]] = field(default_factory=dict)

    def __contains__(self, word: str) -> bool:
        return word in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def alternatives(self, word: str) -> list[list[str]]:
        return self.entries[word]


def _lines(path: str):
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line.strip():
                continue
            yield lineno, line


def load_wordlist(path: str, lowercase: bool = False) -> WordList:
    """Read a ``word<TAB>count`` file.

    With ``lowercase`` set, words are case-folded and the counts of words
    that collapse together are summed.  Without it, a repeated word is a
    data error.
    """
    entries: dict[str, int] = {}
    for lineno, line in _lines(path):
        fields = line.split("\t")
        if len(fields) != 2:
            raise ParseError(path, lineno, f"expected 'word<TAB>count', got {line!r}")
        word, count_text = fields
        if not word:
            raise ParseError(path, lineno, "empty word")
        try:
            count = int(count_text)
        except ValueError:
            raise ParseError(path, lineno, f"count is not an integer: {count_text!r}") from None
        if count < 1:
            raise ParseError(path, lineno, f"count must be >= 1, got {count}")
        if lowercase:
            word = word.lower()
            entries[word] = entries.get(word, 0) + count
        else:
            if word in entries:
                raise DataError(f"{path}: duplicate word {word!r} (line {lineno})")
            entries[word] = count
    return WordList(entries)


def load_gold(path: str, lowercase: bool = False) -> GoldSegmentations:
    """Read gold analyses; alternatives are kept in file order.

    A word appearing on several lines accumulates alternatives.  Each
    analysis is checked against the word it segments.
    """
    entries: dict[str, list[list[str]]] = {}
    for lineno, line in _lines(path):
        fields = line.split("\t")
        if len(fields) != 2:
            raise ParseError(path, lineno, f"expected 'word<TAB>analyses', got {line!r}")
        word, analyses_text = fields
        if not word:
            raise ParseError(path, lineno, "empty word")
        if lowercase:
            word = word.lower()
            analyses_text = analyses_text.lower()
        alternatives = []
        for alt_text in analyses_text.split(","):
            morphs = alt_text.split()
            if not morphs:
                raise ParseError(path, lineno, "empty analysis")
            if "".join(morphs) != word:
                raise DataError(
                    f"{path}: analysis {' '.join(morphs)!r} does not concatenate "
                    f"to {word!r} (line {lineno})"
                )
            alternatives.append(morphs)
        entries.setdefault(word, []).extend(alternatives)
    return GoldSegmentations(entries)


def prepare_training_vocabulary(
    train: WordList, gold: GoldSegmentations, min_freq: int = 1
) -> WordList:
    """Frequency-threshold the training words and merge in the test words.

    Keeps training entries with count >= ``min_freq``, then adds every gold
    word: shared words keep their training count (even below the threshold),
    unseen gold words enter with count 1.
    """
    if min_freq < 1:
        raise ConfigError(f"min_freq must be >= 1, got {min_freq}")
    entries = {w: c for w, c in train.entries.items() if c >= min_freq}
    for word in gold:
        if word not in entries:
            entries[word] = train.entries.get(word, 1)
    if not entries:
        raise ConfigError(
            f"training vocabulary is empty after thresholding at min_freq={min_freq}"
        )
    return WordList(entries)
