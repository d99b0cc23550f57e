"""Log-linear scoring and contrastive-estimation training.

A candidate's unnormalized score is theta . phi(word, candidate); the
distribution over a word's candidate set is the softmax of those scores.
Normalizing the likelihood of the observed words over all strings in the
alphabet's closure is intractable, so training instead renormalizes each
word against its transposition neighborhood: maximize

    sum_w* [ log sum_{z in C(w*)} e^{theta.phi(w*,z)}
             - log sum_{w in N(w*)} sum_{z in C(w)} e^{theta.phi(w,z)} ]
    - lambda * ||theta||^2

whose gradient is, per coordinate, the numerator-softmax expectation of
phi minus the neighborhood-softmax expectation, minus 2*lambda*theta.
Because every word belongs to its own neighborhood, the unregularized sum
is bounded above by zero.  Candidate sets are small, so both sums are
computed by direct enumeration; all exponentials go through max-shifted
log-sum-exp.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.optimize
import scipy.sparse

from .affixes import AffixCorrelations, AffixInventory
from .candidates import Candidate, CandidateConfig, generate_candidates, generate_neighbors
from .corpus import WordList
from .errors import ConfigError, ContractViolation, DataError, NumericError
from .features import (
    FeatureContext,
    FeatureIndex,
    build_feature_index,
    encode,
    word_candidate_features,
)


@dataclass(frozen=True)
class TrainConfig:
    """Training hyperparameters.

    ``seed`` is accepted for interface stability but unused: optimization
    starts from zero weights and is fully deterministic.
    """

    l2_penalty: float = 1.0
    neighborhood_k: int = 5
    max_iter: int = 1000
    tol: float = 1e-5
    seed: int = 0

    def __post_init__(self):
        if self.l2_penalty < 0:
            raise ConfigError(f"l2 penalty must be >= 0, got {self.l2_penalty}")
        if self.max_iter < 0:
            raise ConfigError(f"max_iter must be >= 0, got {self.max_iter}")
        if self.tol <= 0:
            raise ConfigError(f"tol must be > 0, got {self.tol}")


@dataclass
class Model:
    """Trained weights plus everything baked in at train time."""

    theta: np.ndarray
    index: FeatureIndex
    inventory: AffixInventory
    correlations: AffixCorrelations
    config: CandidateConfig
    l2_penalty: float = 1.0
    neighborhood_k: int = 5

    @property
    def dim(self) -> int:
        return len(self.index)

    def context(self, embeddings, wordlist: WordList) -> FeatureContext:
        """Bind the model's induced structures to a data source."""
        return FeatureContext(
            embeddings=embeddings,
            wordlist=wordlist,
            inventory=self.inventory,
            correlations=self.correlations,
            config=self.config,
        )


@dataclass
class TrainReport:
    iterations: int
    final_objective: float
    gradient_norm: float
    converged: bool


def score_candidate(model: Model, fv: dict[int, float]) -> float:
    """Linear score theta . phi; no exponentiation."""
    theta = model.theta
    d = theta.shape[0]
    total = 0.0
    for feature_id, value in fv.items():
        if not 0 <= feature_id < d:
            raise ContractViolation(
                f"feature id {feature_id} outside model dimension {d}"
            )
        total += theta[feature_id] * value
    return total


def candidate_scores(
    model: Model, word: str, cands: list[Candidate], ctx: FeatureContext
) -> np.ndarray:
    vectors = word_candidate_features(word, cands, ctx)
    return np.array(
        [score_candidate(model, encode(named, model.index)) for named in vectors]
    )


def candidate_distribution(
    model: Model, word: str, cands: list[Candidate], ctx: FeatureContext
) -> np.ndarray:
    """Softmax over the candidate scores, max-shifted for overflow safety."""
    if not cands:
        raise ContractViolation(f"empty candidate list for {word!r}")
    scores = candidate_scores(model, word, cands, ctx)
    shifted = np.exp(scores - scores.max())
    return shifted / shifted.sum()


class CEProblem:
    """Precomputed design matrices for the contrastive objective.

    Features do not depend on theta, so the per-candidate sparse rows are
    built once; each objective evaluation is then two sparse mat-vecs and
    segmented log-sum-exps.  Rows are grouped contiguously per vocabulary
    word (numerator: the word's own candidates; denominator: candidates of
    every neighborhood string including the word itself).
    """

    def __init__(self, num_matrix, num_starts, den_matrix, den_starts, dim):
        self.num_matrix = num_matrix
        self.num_starts = num_starts
        self.den_matrix = den_matrix
        self.den_starts = den_starts
        self.dim = dim

    def objective_and_gradient(self, theta: np.ndarray, l2_penalty: float):
        num_lse, num_soft = _segment_logsumexp(self.num_matrix @ theta, self.num_starts)
        den_lse, den_soft = _segment_logsumexp(self.den_matrix @ theta, self.den_starts)
        objective = float(num_lse.sum() - den_lse.sum()) - l2_penalty * float(theta @ theta)
        gradient = (
            self.num_matrix.T @ num_soft
            - self.den_matrix.T @ den_soft
            - 2.0 * l2_penalty * theta
        )
        return objective, gradient


def _segment_logsumexp(scores: np.ndarray, starts: np.ndarray):
    """Per-segment log-sum-exp and the concatenated per-segment softmax."""
    maxes = np.maximum.reduceat(scores, starts)
    counts = np.diff(np.append(starts, len(scores)))
    shifted = np.exp(scores - np.repeat(maxes, counts))
    sums = np.add.reduceat(shifted, starts)
    return np.log(sums) + maxes, shifted / np.repeat(sums, counts)


class _RowCollector:
    def __init__(self, dim: int):
        self.dim = dim
        self.rows: list[int] = []
        self.cols: list[int] = []
        self.vals: list[float] = []
        self.starts: list[int] = []
        self.n_rows = 0

    def start_segment(self):
        self.starts.append(self.n_rows)

    def add(self, encoded_list: list[dict[int, float]]):
        for encoded in encoded_list:
            for feature_id, value in encoded.items():
                self.rows.append(self.n_rows)
                self.cols.append(feature_id)
                self.vals.append(value)
            self.n_rows += 1

    def matrix(self):
        coo = scipy.sparse.coo_matrix(
            (self.vals, (self.rows, self.cols)), shape=(self.n_rows, self.dim)
        )
        return coo.tocsr(), np.array(self.starts, dtype=np.intp)


def build_ce_problem(
    vocab: WordList, ctx: FeatureContext, index: FeatureIndex, neighborhood_k: int = 5
) -> CEProblem:
    cache: dict[str, list[dict[int, float]]] = {}

    def rows_for(string: str) -> list[dict[int, float]]:
        cached = cache.get(string)
        if cached is None:
            cands = generate_candidates(string, ctx.wordlist, ctx.config)
            cached = [
                encode(named, index)
                for named in word_candidate_features(string, cands, ctx)
            ]
            cache[string] = cached
        return cached

    num = _RowCollector(len(index))
    den = _RowCollector(len(index))
    for word in vocab:
        num.start_segment()
        num.add(rows_for(word))
        den.start_segment()
        for neighbor in generate_neighbors(word, neighborhood_k):
            den.add(rows_for(neighbor))
    num_matrix, num_starts = num.matrix()
    den_matrix, den_starts = den.matrix()
    return CEProblem(num_matrix, num_starts, den_matrix, den_starts, len(index))


def ce_objective_and_gradient(model: Model, vocab: WordList, ctx: FeatureContext):
    """Objective and gradient at the model's current weights.

    Convenience wrapper; callers evaluating many points (optimizers, the
    finite-difference checks) should build the ``CEProblem`` once.
    """
    problem = build_ce_problem(vocab, ctx, model.index, model.neighborhood_k)
    return problem.objective_and_gradient(model.theta, model.l2_penalty)


MODEL_FORMAT = "morphchains-model"
MODEL_VERSION = 1


def save_model(model: Model, path: str) -> None:
    """Write the versioned text format; weights keep full float64 precision."""
    with open(path, "w", encoding="utf-8") as out:
        out.write(f"{MODEL_FORMAT} {MODEL_VERSION}\n")
        out.write(f"dim\t{model.dim}\n")
        out.write(f"l2_penalty\t{model.l2_penalty:.17g}\n")
        out.write(f"neighborhood_k\t{model.neighborhood_k}\n")
        out.write(f"min_parent_ratio\t{model.config.min_parent_ratio:.17g}\n")
        out.write(
            f"transformations_require_vocab\t"
            f"{int(model.config.transformations_require_vocab)}\n"
        )
        out.write(f"alphabet\t{''.join(sorted(model.config.alphabet))}\n")
        out.write(f"weights\t{model.dim}\n")
        for feature_id, name in enumerate(model.index.names):
            out.write(f"{name}\t{model.theta[feature_id]:.17g}\n")
        for label, pairs in (
            ("suffixes", model.inventory.suffixes),
            ("prefixes", model.inventory.prefixes),
        ):
            out.write(f"{label}\t{len(pairs)}\n")
            for affix, support in pairs:
                out.write(f"{affix}\t{support}\n")
        for label, table in (
            ("suffix_correlations", model.correlations.suffixes),
            ("prefix_correlations", model.correlations.prefixes),
        ):
            unordered = sorted(
                {tuple(sorted((a, b))) for a, bs in table.items() for b in bs}
            )
            out.write(f"{label}\t{len(unordered)}\n")
            for a, b in unordered:
                out.write(f"{a}\t{b}\n")
        out.write("end\n")


def load_model(path: str) -> Model:
    try:
        return _parse_model(path)
    except ValueError as exc:
        raise DataError(f"{path}: corrupt model file ({exc})") from None


def _parse_model(path: str) -> Model:
    with open(path, encoding="utf-8") as handle:
        lines = handle.read().split("\n")
    pos = 0

    def next_line() -> str:
        nonlocal pos
        if pos >= len(lines):
            raise DataError(f"{path}: truncated model file")
        line = lines[pos]
        pos += 1
        return line

    def expect_field(key: str) -> str:
        line = next_line()
        parts = line.split("\t", 1)
        if len(parts) != 2 or parts[0] != key:
            raise DataError(f"{path}: expected '{key}' line, got {line!r}")
        return parts[1]

    header = next_line().split()
    if len(header) != 2 or header[0] != MODEL_FORMAT:
        raise DataError(f"{path}: not a model file")
    if int(header[1]) != MODEL_VERSION:
        raise DataError(f"{path}: unsupported model version {header[1]}")

    dim = int(expect_field("dim"))
    l2_penalty = float(expect_field("l2_penalty"))
    neighborhood_k = int(expect_field("neighborhood_k"))
    min_parent_ratio = float(expect_field("min_parent_ratio"))
    require_vocab = bool(int(expect_field("transformations_require_vocab")))
    alphabet = frozenset(expect_field("alphabet"))

    n_weights = int(expect_field("weights"))
    if n_weights != dim:
        raise DataError(f"{path}: dim {dim} != weight count {n_weights}")
    names = []
    theta = np.zeros(dim)
    for i in range(dim):
        name, _, weight = next_line().rpartition("\t")
        if not name:
            raise DataError(f"{path}: malformed weight line {i}")
        names.append(name)
        theta[i] = float(weight)

    inventory_lists = {}
    for label in ("suffixes", "prefixes"):
        n = int(expect_field(label))
        inventory_lists[label] = []
        for _ in range(n):
            affix, _, support = next_line().rpartition("\t")
            inventory_lists[label].append((affix, int(support)))

    correlation_maps = {}
    for label in ("suffix_correlations", "prefix_correlations"):
        n = int(expect_field(label))
        partners: dict[str, set[str]] = {}
        for _ in range(n):
            a, _, b = next_line().rpartition("\t")
            partners.setdefault(a, set()).add(b)
            partners.setdefault(b, set()).add(a)
        correlation_maps[label] = {a: frozenset(bs) for a, bs in partners.items()}

    if next_line() != "end":
        raise DataError(f"{path}: missing end marker")

    return Model(
        theta=theta,
        index=FeatureIndex.from_names(names),
        inventory=AffixInventory(
            suffixes=inventory_lists["suffixes"], prefixes=inventory_lists["prefixes"]
        ),
        correlations=AffixCorrelations(
            suffixes=correlation_maps["suffix_correlations"],
            prefixes=correlation_maps["prefix_correlations"],
        ),
        config=CandidateConfig(
            min_parent_ratio=min_parent_ratio,
            transformations_require_vocab=require_vocab,
            alphabet=alphabet,
        ),
        l2_penalty=l2_penalty,
        neighborhood_k=neighborhood_k,
    )


def train(
    vocab: WordList, ctx: FeatureContext, hyper: TrainConfig = TrainConfig()
) -> tuple[Model, TrainReport]:
    """Fit weights by limited-memory quasi-Newton ascent from theta = 0.

    Stops when the gradient infinity norm drops below ``hyper.tol`` or
    after ``hyper.max_iter`` iterations.  Deterministic for fixed inputs
    and hyperparameters.
    """
    if len(vocab) == 0:
        raise ConfigError("training vocabulary is empty")
    index = build_feature_index(vocab, ctx, hyper.neighborhood_k)
    problem = build_ce_problem(vocab, ctx, index, hyper.neighborhood_k)
    theta0 = np.zeros(len(index))

    def negated(theta: np.ndarray):
        objective, gradient = problem.objective_and_gradient(theta, hyper.l2_penalty)
        if not np.isfinite(objective) or not np.all(np.isfinite(gradient)):
            raise NumericError(
                f"non-finite objective/gradient at ||theta||={np.linalg.norm(theta):g}"
            )
        return -objective, -gradient

    if hyper.max_iter == 0:
        theta, iterations = theta0, 0
    else:
        result = scipy.optimize.minimize(
            negated,
            theta0,
            jac=True,
            method="L-BFGS-B",
            options={
                "maxiter": hyper.max_iter,
                "gtol": hyper.tol,
                # keep the function-decrease test from firing before the
                # gradient criterion does
                "ftol": 1e-15,
            },
        )
        theta, iterations = result.x, int(result.nit)

    objective, gradient = problem.objective_and_gradient(theta, hyper.l2_penalty)
    gradient_norm = float(np.abs(gradient).max()) if len(gradient) else 0.0
    model = Model(
        theta=theta,
        index=index,
        inventory=ctx.inventory,
        correlations=ctx.correlations,
        config=ctx.config,
        l2_penalty=hyper.l2_penalty,
        neighborhood_k=hyper.neighborhood_k,
    )
    report = TrainReport(
        iterations=iterations,
        final_objective=objective,
        gradient_norm=gradient_norm,
        converged=gradient_norm < hyper.tol,
    )
    return model, report
