"""Affix inventory induction and correlated-affix pairs.

Candidate affixes are the string differences between a word and its
in-vocabulary split parents; the most frequent ones (counting each word at
most once per affix) form the inventory.  Two same-side inventory affixes
are correlated when enough stems take both of them.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .candidates import CandidateConfig, min_parent_length
from .corpus import WordList
from .errors import ConfigError


@dataclass
class AffixInventory:
    """Top suffixes and prefixes as (affix, support) lists.

    Each list is sorted by support descending, ties by affix ascending.
    """

    suffixes: list[tuple[str, int]] = field(default_factory=list)
    prefixes: list[tuple[str, int]] = field(default_factory=list)

    @property
    def suffix_set(self) -> frozenset[str]:
        return frozenset(a for a, _ in self.suffixes)

    @property
    def prefix_set(self) -> frozenset[str]:
        return frozenset(a for a, _ in self.prefixes)

    def __len__(self) -> int:
        return len(self.suffixes) + len(self.prefixes)


@dataclass
class AffixCorrelations:
    """Symmetric same-side correlation sets, keyed by affix."""

    suffixes: dict[str, frozenset[str]] = field(default_factory=dict)
    prefixes: dict[str, frozenset[str]] = field(default_factory=dict)

    def partners(self, affix: str, side: str) -> frozenset[str]:
        table = self.suffixes if side == "suffix" else self.prefixes
        return table.get(affix, frozenset())

    def __len__(self) -> int:
        return sum(len(v) for v in self.suffixes.values()) // 2 + sum(
            len(v) for v in self.prefixes.values()
        ) // 2


def _split_tallies(wordlist: WordList, config: CandidateConfig) -> tuple[Counter, Counter]:
    suffix_counts: Counter = Counter()
    prefix_counts: Counter = Counter()
    for word in wordlist:
        n = len(word)
        lo = min_parent_length(n, config.min_parent_ratio)
        word_suffixes = set()
        word_prefixes = set()
        for i in range(max(lo, 1), n):
            if word[:i] in wordlist:
                word_suffixes.add(word[i:])
            if word[n - i :] in wordlist:
                word_prefixes.add(word[: n - i])
        suffix_counts.update(word_suffixes)
        prefix_counts.update(word_prefixes)
    return suffix_counts, prefix_counts


def _top(counts: Counter, k: int) -> list[tuple[str, int]]:
    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    return ranked[:k]


def induce_affix_inventory(
    wordlist: WordList, config: CandidateConfig, k_suffixes: int = 100, k_prefixes: int = 100
) -> AffixInventory:
    """Tally string differences against in-vocabulary parents, keep the top k.

    A word contributes at most once to any given affix, however many of its
    split parents produce it.
    """
    if k_suffixes < 1 or k_prefixes < 1:
        raise ConfigError("inventory sizes must be >= 1")
    suffix_counts, prefix_counts = _split_tallies(wordlist, config)
    return AffixInventory(
        suffixes=_top(suffix_counts, k_suffixes),
        prefixes=_top(prefix_counts, k_prefixes),
    )


def _shared_stem_pairs(
    affixes: list[str],
    wordlist: WordList,
    config: CandidateConfig,
    min_shared_stems: int,
    side: str,
) -> dict[str, frozenset[str]]:
    affix_set = set(affixes)
    stem_affixes: dict[str, set[str]] = {}
    for word in wordlist:
        n = len(word)
        lo = min_parent_length(n, config.min_parent_ratio)
        for i in range(max(lo, 1), n):
            if side == "suffix":
                stem, affix = word[:i], word[i:]
            else:
                stem, affix = word[n - i :], word[: n - i]
            if affix in affix_set:
                stem_affixes.setdefault(stem, set()).add(affix)
    pair_counts: Counter = Counter()
    for found in stem_affixes.values():
        ordered = sorted(found)
        for a_idx, a in enumerate(ordered):
            for b in ordered[a_idx + 1 :]:
                pair_counts[(a, b)] += 1
    partners: dict[str, set[str]] = {}
    for (a, b), count in pair_counts.items():
        if count >= min_shared_stems:
            partners.setdefault(a, set()).add(b)
            partners.setdefault(b, set()).add(a)
    return {a: frozenset(bs) for a, bs in partners.items()}


def build_affix_correlations(
    inventory: AffixInventory,
    wordlist: WordList,
    config: CandidateConfig,
    min_shared_stems: int = 2,
) -> AffixCorrelations:
    """Pair same-side inventory affixes that share enough stems.

    A stem counts when attaching both affixes yields wordlist words and the
    stem meets the parent length ratio for both of them; the stem itself
    need not be a word.
    """
    if min_shared_stems < 1:
        raise ConfigError(f"min_shared_stems must be >= 1, got {min_shared_stems}")
    return AffixCorrelations(
        suffixes=_shared_stem_pairs(
            [a for a, _ in inventory.suffixes], wordlist, config, min_shared_stems, "suffix"
        ),
        prefixes=_shared_stem_pairs(
            [a for a, _ in inventory.prefixes], wordlist, config, min_shared_stems, "prefix"
        ),
    )
