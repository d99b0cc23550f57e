"""Candidate parents for a word, and contrastive neighborhoods.

A candidate is a (parent, type) pair.  Concatenative candidates come from
splitting the word at every position; transformation candidates undo a
change at the suffix boundary (last-character repetition, deletion, or
replacement in the parent).  Every word also gets exactly one Stop
candidate, which declares it a base word.

All parents are strictly shorter than the word and at least
``min_parent_ratio`` of its length, so greedy chain prediction always
terminates.  Note the strict upper bound excludes Delete candidates whose
affix is a single character (the parent would be as long as the word and
chains could cycle through it).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .corpus import WordList
from .errors import ConfigError


class CandidateType(str, Enum):
    SUFFIX = "Suffix"
    PREFIX = "Prefix"
    REPEAT = "Repeat"
    DELETE = "Delete"
    MODIFY = "Modify"
    STOP = "Stop"


TRANSFORM_TYPES = (CandidateType.REPEAT, CandidateType.DELETE, CandidateType.MODIFY)


@dataclass(frozen=True)
class Candidate:
    """A proposed parent for some word.

    ``affix`` is the surface string difference between word and parent.
    ``changed`` records the characters a transformation touches as
    (parent's last character, its surface replacement); the replacement is
    empty for Repeat and Delete.
    """

    parent: str
    ctype: CandidateType
    affix: str = ""
    changed: tuple[str, str] | None = None

    @property
    def is_stop(self) -> bool:
        return self.ctype is CandidateType.STOP


STOP_CANDIDATE = Candidate(parent="", ctype=CandidateType.STOP)


@dataclass(frozen=True)
class CandidateConfig:
    """Knobs for candidate generation.

    ``alphabet`` supplies the characters tried when undoing Delete/Modify
    transformations; induce it from the wordlist.  Repeat candidates are
    vocabulary-filtered when ``transformations_require_vocab`` is set;
    Delete and Modify parents always are (the alphabet product explodes
    otherwise).
    """

    min_parent_ratio: float = 0.5
    transformations_require_vocab: bool = True
    alphabet: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        if not 0.0 < self.min_parent_ratio <= 1.0:
            raise ConfigError(
                f"min_parent_ratio must be in (0, 1], got {self.min_parent_ratio}"
            )

    @classmethod
    def for_wordlist(cls, wordlist: WordList, **kwargs) -> "CandidateConfig":
        return cls(alphabet=wordlist.alphabet(), **kwargs)


def min_parent_length(word_length: int, ratio: float) -> int:
    return math.ceil(ratio * word_length)


def generate_candidates(
    word: str, wordlist: WordList, config: CandidateConfig
) -> list[Candidate]:
    """All candidate parents of ``word``, deduplicated, Stop last.

    Deterministic and order-stable for a fixed wordlist and config: splits
    are enumerated left to right, transformation parents in sorted-alphabet
    order.
    """
    n = len(word)
    lo = min_parent_length(n, config.min_parent_ratio)
    alphabet = sorted(config.alphabet)
    out: list[Candidate] = []
    seen: set[Candidate] = set()

    def emit(cand: Candidate) -> None:
        if cand not in seen:
            seen.add(cand)
            out.append(cand)

    for i in range(1, n):
        stem, affix = word[:i], word[i:]
        if lo <= i:
            emit(Candidate(stem, CandidateType.SUFFIX, affix))
        # Repeat: the split point sits after a doubled character, so the
        # parent drops one copy (plan|ning <- plann|ing).
        if i >= 2 and word[i - 1] == word[i - 2]:
            parent = word[: i - 1]
            if lo <= len(parent) and (
                not config.transformations_require_vocab or parent in wordlist
            ):
                emit(Candidate(parent, CandidateType.REPEAT, affix, (word[i - 2], "")))
        # Delete: the parent carried one extra final character that the
        # derivation removed (decide -> decid|ing).
        if lo <= i + 1 < n:
            for ch in alphabet:
                parent = stem + ch
                if parent in wordlist:
                    emit(Candidate(parent, CandidateType.DELETE, affix, (ch, "")))
        # Modify: the parent's final character was replaced on the surface
        # (carry -> carri|ed).
        if i >= 2 and lo <= i:
            for ch in alphabet:
                if ch == stem[-1]:
                    continue
                parent = stem[:-1] + ch
                if parent in wordlist:
                    emit(Candidate(parent, CandidateType.MODIFY, affix, (ch, stem[-1])))

    for i in range(1, n):
        parent = word[i:]
        if lo <= len(parent):
            emit(Candidate(parent, CandidateType.PREFIX, word[:i]))

    emit(STOP_CANDIDATE)
    return out


def generate_neighbors(word: str, k: int = 5) -> list[str]:
    """Contrastive neighborhood: edge transpositions of ``word``.

    Single swaps of adjacent characters lying entirely within the first k
    or last k characters, plus simultaneous non-overlapping double swaps
    (one from each window).  Duplicates and strings equal to the word are
    removed; the word itself is appended last (it belongs to its own
    neighborhood, which keeps the contrastive objective bounded by zero).
    """
    if k < 1:
        raise ConfigError(f"neighborhood k must be >= 1, got {k}")
    n = len(word)
    first = [i for i in range(n - 1) if i + 1 <= k - 1]
    last = [i for i in range(n - 1) if i >= n - k]

    def swap(chars: list[str], i: int) -> None:
        chars[i], chars[i + 1] = chars[i + 1], chars[i]

    out: list[str] = []
    seen = {word}

    def emit(chars: list[str]) -> None:
        s = "".join(chars)
        if s not in seen:
            seen.add(s)
            out.append(s)

    for i in sorted(set(first) | set(last)):
        chars = list(word)
        swap(chars, i)
        emit(chars)
    for i in first:
        for j in last:
            if abs(i - j) < 2:
                continue
            chars = list(word)
            swap(chars, i)
            swap(chars, j)
            emit(chars)
    out.append(word)
    return out
