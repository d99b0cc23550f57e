"""Boundary-level scoring and trained-model diagnostics.

Evaluation operates on segmentation points: each analysis maps to the set
of offsets where it splits the word.  Counts are micro-averaged across all
words; when the gold data offers alternative analyses for a word, the one
that maximizes that word's F1 against the prediction is scored (first one
wins ties).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .candidates import generate_candidates
from .corpus import GoldSegmentations, WordList
from .errors import ContractViolation
from .features import FeatureContext
from .inference import Chain, Segmentation, edge_affix
from .model import Model, candidate_distribution


@dataclass
class BoundaryScore:
    true_positives: int
    predicted_positives: int
    gold_positives: int

    @property
    def precision(self) -> float:
        if self.predicted_positives == 0:
            return 1.0
        return self.true_positives / self.predicted_positives

    @property
    def recall(self) -> float:
        if self.gold_positives == 0:
            return 1.0
        return self.true_positives / self.gold_positives

    @property
    def f1(self) -> float:
        p, r = self.precision, self.recall
        if p + r == 0.0:
            return 0.0
        return 2.0 * p * r / (p + r)


@dataclass
class Diagnostics:
    avg_max_prob: float
    avg_entropy: float
    avg_candidates: float


def analysis_boundaries(morphs: list[str]) -> set[int]:
    """Offsets where an analysis splits its word (word-internal only)."""
    boundaries = set()
    offset = 0
    for morph in morphs[:-1]:
        offset += len(morph)
        boundaries.add(offset)
    return boundaries


def _pairwise_f1(tp: int, n_pred: int, n_gold: int) -> float:
    p = 1.0 if n_pred == 0 else tp / n_pred
    r = 1.0 if n_gold == 0 else tp / n_gold
    return 0.0 if p + r == 0.0 else 2.0 * p * r / (p + r)


def evaluate_boundaries(
    predictions: dict[str, Segmentation], gold: GoldSegmentations
) -> BoundaryScore:
    """Micro-averaged precision/recall/F1 over segmentation points.

    Every gold word must have a prediction; predictions for words outside
    the gold set are ignored.
    """
    tp_total = pred_total = gold_total = 0
    for word in gold:
        seg = predictions.get(word)
        if seg is None:
            raise ContractViolation(f"no prediction for gold word {word!r}")
        pred_set = set(seg.boundaries)
        best = None
        for morphs in gold.alternatives(word):
            gold_set = analysis_boundaries(morphs)
            tp = len(pred_set & gold_set)
            f1 = _pairwise_f1(tp, len(pred_set), len(gold_set))
            if best is None or f1 > best[0]:
                best = (f1, tp, len(gold_set))
        _, tp, n_gold = best
        tp_total += tp
        pred_total += len(pred_set)
        gold_total += n_gold
    return BoundaryScore(tp_total, pred_total, gold_total)


def distribution_diagnostics(
    model: Model, vocab: WordList, ctx: FeatureContext
) -> Diagnostics:
    """How peaked the candidate distributions are, averaged over the vocabulary."""
    max_probs = []
    entropies = []
    sizes = []
    for word in vocab:
        cands = generate_candidates(word, ctx.wordlist, ctx.config)
        probs = candidate_distribution(model, word, cands, ctx)
        max_probs.append(float(probs.max()))
        entropies.append(float(-sum(p * math.log(p) for p in probs if p > 0.0)))
        sizes.append(len(cands))
    n = len(sizes)
    return Diagnostics(
        avg_max_prob=sum(max_probs) / n,
        avg_entropy=sum(entropies) / n,
        avg_candidates=sum(sizes) / n,
    )


def affix_frequency_profile(
    predictions: dict[str, tuple[Segmentation, Chain]]
) -> list[tuple[str, int]]:
    """Tally the affix of every chain edge; count descending, ties by affix."""
    counts: Counter = Counter()
    for _, chain in predictions.values():
        for parent, child, ctype in chain.edges():
            counts[edge_affix(parent, child, ctype)] += 1
    return sorted(counts.items(), key=lambda item: (-item[1], item[0]))


def sweep_frequency_threshold(
    train_words: WordList,
    gold: GoldSegmentations,
    embeddings,
    thresholds: list[int],
    params=None,
) -> list[tuple[int, int, float, float, float]]:
    """Retrain at each frequency threshold and score the gold words.

    Returns (threshold, vocab_size, precision, recall, f1) rows in the
    given threshold order.
    """
    from . import pipeline

    if not thresholds:
        raise ContractViolation("thresholds must be nonempty")
    params = params or pipeline.PipelineParams()
    rows = []
    for threshold in thresholds:
        run_params = pipeline.replace_params(params, min_freq=threshold)
        model, ctx, _ = pipeline.run_training(train_words, gold, embeddings, run_params)
        predictions = {
            word: seg
            for word, _, seg in pipeline.segment_many(model, list(gold), ctx)
        }
        score = evaluate_boundaries(predictions, gold)
        rows.append(
            (threshold, len(ctx.wordlist), score.precision, score.recall, score.f1)
        )
    return rows
