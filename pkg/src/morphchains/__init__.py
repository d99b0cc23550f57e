"""Unsupervised morphological segmentation with parent-child chains.

The library induces affixes from an unannotated frequency wordlist, scores
candidate parents of each word with a log-linear model over orthographic
and word-vector features, trains the weights by contrastive estimation
against transposition neighborhoods, and greedily derives chains and
surface segmentations.
"""

from .affixes import (
    AffixCorrelations,
    AffixInventory,
    build_affix_correlations,
    induce_affix_inventory,
)
from .candidates import (
    Candidate,
    CandidateConfig,
    CandidateType,
    STOP_CANDIDATE,
    generate_candidates,
    generate_neighbors,
)
from .corpus import (
    GoldSegmentations,
    WordList,
    load_gold,
    load_wordlist,
    prepare_training_vocabulary,
)
from .embeddings import EmbeddingTable, cosine_similarity, load_vectors
from .errors import (
    ConfigError,
    ContractViolation,
    DataError,
    MorphChainError,
    NumericError,
    ParseError,
)
from .evaluation import (
    BoundaryScore,
    Diagnostics,
    affix_frequency_profile,
    analysis_boundaries,
    distribution_diagnostics,
    evaluate_boundaries,
    sweep_frequency_threshold,
)
from .features import (
    FeatureContext,
    FeatureIndex,
    build_feature_index,
    encode,
    extract_features,
    word_candidate_features,
)
from .inference import (
    Chain,
    Segmentation,
    chain_to_segmentation,
    edge_affix,
    predict_chain,
    predict_parent,
)
from .model import (
    Model,
    TrainConfig,
    TrainReport,
    build_ce_problem,
    candidate_distribution,
    ce_objective_and_gradient,
    load_model,
    save_model,
    score_candidate,
    train,
)
from .pipeline import PipelineParams, run_training, segment_many, segment_word

__version__ = "0.1.0"
