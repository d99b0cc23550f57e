"""Sparse feature extraction for (word, candidate) pairs.

Feature families:

* ``cos`` -- cosine similarity between word and parent vectors.
* ``suffix=<a>`` / ``prefix=<a>`` (or ``...=UNK``) -- affix indicators
  against the induced inventory.  Suffix-side transformations use the
  suffix family.
* ``affixcorr:<a>:<b>`` -- the parent also takes an affix correlated with
  this candidate's affix, forming another wordlist word.
* ``wordfreq`` (ln of the parent's count) or ``oov`` -- parent's wordlist
  status.
* ``type=<T>×chars=(<x>,<y>)`` -- transformation type crossed with the
  characters it touches ('-' marks an empty replacement).
* Stop candidates instead describe the word itself: ``begin=``/``end=``
  character unigrams and bigrams, ``len=<n>``, and a 0.1-wide bin over the
  highest parent cosine, ``maxcos∈[lo,hi)``.

Vectors are sparse name->value maps with no explicit zeros: a zero-valued
feature (orthogonal cosine, ln of a count-1 word) is simply absent, which
is score-equivalent for a linear model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .affixes import AffixCorrelations, AffixInventory
from .candidates import (
    Candidate,
    CandidateConfig,
    CandidateType,
    generate_candidates,
    generate_neighbors,
)
from .corpus import WordList
from .embeddings import EmbeddingTable, cosine_similarity
from .errors import ContractViolation

NamedVector = dict[str, float]


@dataclass(frozen=True)
class FeatureContext:
    """Everything feature extraction reads: data plus induced structures."""

    embeddings: EmbeddingTable
    wordlist: WordList
    inventory: AffixInventory
    correlations: AffixCorrelations
    config: CandidateConfig


class FeatureIndex:
    """Bijective feature-name <-> dense-id map with a freeze switch.

    While unfrozen, ``intern`` assigns the next id to unseen names.  Once
    frozen the dimension is fixed: unknown names map to None and callers
    drop them.
    """

    def __init__(self):
        self._ids: dict[str, int] = {}
        self._names: list[str] = []
        self.frozen = False

    def __len__(self) -> int:
        return len(self._names)

    def __contains__(self, name: str) -> bool:
        return name in self._ids

    @property
    def names(self) -> list[str]:
        return list(self._names)

    def intern(self, name: str) -> int | None:
        existing = self._ids.get(name)
        if existing is not None:
            return existing
        if self.frozen:
            return None
        new_id = len(self._names)
        self._ids[name] = new_id
        self._names.append(name)
        return new_id

    def id_of(self, name: str) -> int | None:
        return self._ids.get(name)

    def name_of(self, feature_id: int) -> str:
        return self._names[feature_id]

    def freeze(self) -> "FeatureIndex":
        self.frozen = True
        return self

    @classmethod
    def from_names(cls, names: list[str]) -> "FeatureIndex":
        index = cls()
        for name in names:
            index.intern(name)
        return index.freeze()


def maxcos_bin_name(value: float) -> str:
    """0.1-wide bin label covering [-1, 1]; 1.0 lands in the top bin."""
    idx = min(max(int(math.floor(value * 10)), -10), 9)
    return f"maxcos∈[{idx / 10:.1f},{(idx + 1) / 10:.1f})"


def transform_feature_name(cand: Candidate) -> str:
    original, replacement = cand.changed
    return f"type={cand.ctype.value}×chars=({original},{replacement or '-'})"


def _check_derivable(word: str, cand: Candidate) -> None:
    ct = cand.ctype
    ok = False
    if ct is CandidateType.STOP:
        ok = cand.parent == "" and cand.affix == ""
    elif not cand.parent or not cand.affix or len(cand.parent) >= len(word):
        ok = False
    elif ct is CandidateType.SUFFIX:
        ok = cand.parent + cand.affix == word
    elif ct is CandidateType.PREFIX:
        ok = cand.affix + cand.parent == word
    elif ct is CandidateType.REPEAT:
        ok = (
            cand.parent + cand.parent[-1] + cand.affix == word
            and cand.changed == (cand.parent[-1], "")
        )
    elif ct is CandidateType.DELETE:
        ok = (
            len(cand.parent) >= 2
            and cand.parent[:-1] + cand.affix == word
            and cand.changed == (cand.parent[-1], "")
        )
    elif ct is CandidateType.MODIFY:
        ok = (
            len(cand.parent) >= 2
            and cand.changed is not None
            and cand.changed[1] != cand.parent[-1]
            and cand.changed[0] == cand.parent[-1]
            and cand.parent[:-1] + cand.changed[1] + cand.affix == word
        )
    if not ok:
        raise ContractViolation(
            f"candidate {cand} is not derivable from word {word!r}"
        )


def _affix_side(ctype: CandidateType) -> str:
    return "prefix" if ctype is CandidateType.PREFIX else "suffix"


def _stop_features(word: str, max_cosine: float | None) -> NamedVector:
    named: NamedVector = {
        f"begin={word[0]}": 1.0,
        f"end={word[-1]}": 1.0,
        f"len={len(word)}": 1.0,
    }
    if len(word) >= 2:
        named[f"begin={word[:2]}"] = 1.0
        named[f"end={word[-2:]}"] = 1.0
    if max_cosine is not None:
        named[maxcos_bin_name(max_cosine)] = 1.0
    return named


def _candidate_features(word: str, cand: Candidate, ctx: FeatureContext) -> NamedVector:
    named: NamedVector = {}
    cos = cosine_similarity(ctx.embeddings, word, cand.parent)
    if cos != 0.0:
        named["cos"] = cos

    side = _affix_side(cand.ctype)
    in_inventory = (
        cand.affix in ctx.inventory.prefix_set
        if side == "prefix"
        else cand.affix in ctx.inventory.suffix_set
    )
    named[f"{side}={cand.affix if in_inventory else 'UNK'}"] = 1.0

    if in_inventory:
        for partner in sorted(ctx.correlations.partners(cand.affix, side)):
            sibling = (
                partner + cand.parent if side == "prefix" else cand.parent + partner
            )
            if sibling in ctx.wordlist:
                named[f"affixcorr:{cand.affix}:{partner}"] = 1.0

    count = ctx.wordlist.count(cand.parent)
    if count > 0:
        logcount = math.log(count)
        if logcount != 0.0:
            named["wordfreq"] = logcount
    else:
        named["oov"] = 1.0

    if cand.changed is not None:
        named[transform_feature_name(cand)] = 1.0
    return named


def word_candidate_features(
    word: str, cands: list[Candidate], ctx: FeatureContext
) -> list[NamedVector]:
    """Feature vectors for a word's whole candidate list in one pass.

    The Stop candidate's max-cosine bin is computed from the non-Stop
    parents in ``cands``, so extracting the list together avoids repeating
    that scan per candidate.
    """
    parent_cosines = [
        cosine_similarity(ctx.embeddings, word, c.parent) for c in cands if not c.is_stop
    ]
    max_cosine = max(parent_cosines) if parent_cosines else None
    vectors = []
    for cand in cands:
        _check_derivable(word, cand)
        if cand.is_stop:
            vectors.append(_stop_features(word, max_cosine))
        else:
            vectors.append(_candidate_features(word, cand, ctx))
    return vectors


def extract_features(word: str, cand: Candidate, ctx: FeatureContext) -> NamedVector:
    """Named sparse feature vector for a single (word, candidate) pair."""
    _check_derivable(word, cand)
    if cand.is_stop:
        cands = generate_candidates(word, ctx.wordlist, ctx.config)
        parent_cosines = [
            cosine_similarity(ctx.embeddings, word, c.parent)
            for c in cands
            if not c.is_stop
        ]
        return _stop_features(word, max(parent_cosines) if parent_cosines else None)
    return _candidate_features(word, cand, ctx)


def encode(named: NamedVector, index: FeatureIndex) -> dict[int, float]:
    """Map a named vector to feature ids, dropping names a frozen index lacks."""
    encoded = {}
    for name, value in named.items():
        feature_id = index.intern(name)
        if feature_id is not None:
            encoded[feature_id] = value
    return encoded


def build_feature_index(
    wordlist: WordList, ctx: FeatureContext, neighborhood_k: int = 5
) -> FeatureIndex:
    """Enumerate every feature reachable during training, then freeze.

    Training scores candidates of the vocabulary words and of all their
    neighborhood strings, so both are swept here.  The name->id mapping
    follows first-discovery order and is deterministic for fixed inputs.
    """
    index = FeatureIndex()
    seen: set[str] = set()
    for word in wordlist:
        for string in generate_neighbors(word, neighborhood_k):
            if string in seen:
                continue
            seen.add(string)
            cands = generate_candidates(string, ctx.wordlist, ctx.config)
            for named in word_candidate_features(string, cands, ctx):
                for name in named:
                    index.intern(name)
    return index.freeze()
