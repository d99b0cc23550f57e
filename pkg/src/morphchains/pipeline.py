"""End-to-end wiring: data -> induced structures -> trained model -> output.

Shared by the command-line entry points and the threshold sweep so that a
"training run" means exactly one thing everywhere.
"""

from __future__ import annotations

import dataclasses
import multiprocessing
from dataclasses import dataclass

from .affixes import build_affix_correlations, induce_affix_inventory
from .candidates import CandidateConfig
from .corpus import GoldSegmentations, WordList, prepare_training_vocabulary
from .embeddings import EmbeddingTable
from .features import FeatureContext
from .inference import Chain, Segmentation, chain_to_segmentation, predict_chain
from .model import Model, TrainConfig, TrainReport, train


@dataclass(frozen=True)
class PipelineParams:
    """Every knob of a training run, with the package defaults."""

    min_freq: int = 1
    min_parent_ratio: float = 0.5
    transformations_require_vocab: bool = True
    k_suffixes: int = 100
    k_prefixes: int = 100
    min_shared_stems: int = 2
    l2_penalty: float = 1.0
    neighborhood_k: int = 5
    max_iter: int = 1000
    tol: float = 1e-5
    seed: int = 0


def replace_params(params: PipelineParams, **changes) -> PipelineParams:
    return dataclasses.replace(params, **changes)


def run_training(
    train_words: WordList,
    gold: GoldSegmentations,
    embeddings: EmbeddingTable,
    params: PipelineParams = PipelineParams(),
) -> tuple[Model, FeatureContext, TrainReport]:
    """Prepare the vocabulary, induce affixes, and fit the model.

    Test words join the training vocabulary (without their analyses), as
    is usual for unsupervised segmentation.  The returned context binds
    the model to the prepared vocabulary and embeddings.
    """
    vocab = prepare_training_vocabulary(train_words, gold, params.min_freq)
    config = CandidateConfig(
        min_parent_ratio=params.min_parent_ratio,
        transformations_require_vocab=params.transformations_require_vocab,
        alphabet=vocab.alphabet(),
    )
    inventory = induce_affix_inventory(vocab, config, params.k_suffixes, params.k_prefixes)
    correlations = build_affix_correlations(
        inventory, vocab, config, params.min_shared_stems
    )
    ctx = FeatureContext(
        embeddings=embeddings,
        wordlist=vocab,
        inventory=inventory,
        correlations=correlations,
        config=config,
    )
    hyper = TrainConfig(
        l2_penalty=params.l2_penalty,
        neighborhood_k=params.neighborhood_k,
        max_iter=params.max_iter,
        tol=params.tol,
        seed=params.seed,
    )
    model, report = train(vocab, ctx, hyper)
    return model, ctx, report


def segment_word(
    model: Model, word: str, ctx: FeatureContext
) -> tuple[Chain, Segmentation]:
    chain = predict_chain(model, word, ctx)
    return chain, chain_to_segmentation(chain)


_WORKER_STATE: dict = {}


def _worker_init(model: Model, ctx: FeatureContext) -> None:
    _WORKER_STATE["model"] = model
    _WORKER_STATE["ctx"] = ctx


def _worker_segment(word: str) -> tuple[str, Chain, Segmentation]:
    chain, seg = segment_word(_WORKER_STATE["model"], word, _WORKER_STATE["ctx"])
    return word, chain, seg


def segment_many(
    model: Model, words: list[str], ctx: FeatureContext, jobs: int = 1
) -> list[tuple[str, Chain, Segmentation]]:
    """Segment words in input order; jobs > 1 fans out across processes.

    Results are identical for any job count: the pool map preserves order
    and each word's prediction is independent of the rest.
    """
    if jobs <= 1 or len(words) < 2:
        return [(w, *segment_word(model, w, ctx)) for w in words]
    with multiprocessing.Pool(
        processes=jobs, initializer=_worker_init, initargs=(model, ctx)
    ) as pool:
        return pool.map(_worker_segment, words, chunksize=max(1, len(words) // (jobs * 4)))
