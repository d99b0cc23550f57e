"""Greedy chain prediction and surface segmentation.

A chain is grown by repeatedly picking the highest-scoring candidate for
the current word until Stop wins; Stop competes on its actual linear score
like any other candidate, so the argmax is taken over the full candidate
set.  Each chain edge then contributes one segmentation point, mapped into
the final word's offsets.  Segmentations are purely surface-level: deleted
or modified characters are not restored.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .candidates import Candidate, CandidateType, generate_candidates
from .errors import ContractViolation
from .features import FeatureContext
from .model import Model, candidate_scores


@dataclass
class Chain:
    """Derivation steps, base word first; the base step carries Stop."""

    steps: list[tuple[str, CandidateType]] = field(default_factory=list)

    @property
    def word(self) -> str:
        return self.steps[-1][0]

    @property
    def base(self) -> str:
        return self.steps[0][0]

    def edges(self):
        """(parent, child, type) triples, base end first."""
        for i in range(1, len(self.steps)):
            child, ctype = self.steps[i]
            yield self.steps[i - 1][0], child, ctype


@dataclass
class Segmentation:
    word: str
    boundaries: list[int] = field(default_factory=list)

    @property
    def segments(self) -> list[str]:
        cuts = [0, *self.boundaries, len(self.word)]
        return [self.word[a:b] for a, b in zip(cuts, cuts[1:])]


def _tie_key(cand: Candidate) -> tuple:
    return (0 if cand.is_stop else 1, len(cand.affix), cand.parent)


def predict_parent(model: Model, word: str, ctx: FeatureContext) -> Candidate:
    """Highest-scoring candidate for ``word``.

    Exact score ties go to Stop first, then to the shorter affix, then to
    the lexicographically smaller parent, so prediction is deterministic
    (zero weights predict every word as a base word).
    """
    cands = generate_candidates(word, ctx.wordlist, ctx.config)
    scores = candidate_scores(model, word, cands, ctx)
    best = None
    best_score = None
    for cand, score in zip(cands, scores):
        if (
            best is None
            or score > best_score
            or (score == best_score and _tie_key(cand) < _tie_key(best))
        ):
            best, best_score = cand, score
    return best


def predict_chain(model: Model, word: str, ctx: FeatureContext) -> Chain:
    """Follow predicted parents down to a base word.

    Terminates because every non-Stop parent is strictly shorter than its
    child.
    """
    trail = []
    current = word
    while True:
        cand = predict_parent(model, current, ctx)
        if cand.is_stop:
            break
        trail.append((current, cand.ctype))
        current = cand.parent
    steps = [(current, CandidateType.STOP)]
    steps.extend(reversed(trail))
    return Chain(steps)


def _edge_boundary(parent: str, child: str, ctype: CandidateType) -> int:
    """Boundary offset within ``child`` for one derivation edge.

    The single place the placement policy lives: the repeated character of
    a Repeat edge stays with the stem segment, a Delete edge's stem segment
    is one character short of the parent, and a Modify edge keeps the
    surface-altered stem intact.
    """
    p = len(parent)
    if ctype is CandidateType.SUFFIX:
        ok, boundary = child[:p] == parent, p
    elif ctype is CandidateType.PREFIX:
        ok, boundary = child[len(child) - p :] == parent, len(child) - p
    elif ctype is CandidateType.REPEAT:
        ok, boundary = child[: p + 1] == parent + parent[-1], p + 1
    elif ctype is CandidateType.DELETE:
        ok, boundary = p >= 2 and child[: p - 1] == parent[:-1], p - 1
    elif ctype is CandidateType.MODIFY:
        ok = (
            p >= 2
            and len(child) > p
            and child[: p - 1] == parent[:-1]
            and child[p - 1] != parent[-1]
        )
        boundary = p
    else:
        raise ContractViolation(f"unexpected edge type {ctype}")
    if not ok or not 0 < boundary < len(child) or len(parent) >= len(child):
        raise ContractViolation(
            f"edge {parent!r} -[{ctype.value}]-> {child!r} is not derivable"
        )
    return boundary


def edge_affix(parent: str, child: str, ctype: CandidateType) -> str:
    """Surface affix added along one edge."""
    boundary = _edge_boundary(parent, child, ctype)
    if ctype is CandidateType.PREFIX:
        return child[:boundary]
    return child[boundary:]


def chain_to_segmentation(chain: Chain) -> Segmentation:
    """Insert one segmentation point per edge, in final-word offsets.

    Suffix-side edges leave earlier boundaries in place; a Prefix edge
    shifts everything already placed right by the prefix length.
    """
    if not chain.steps or chain.steps[0][1] is not CandidateType.STOP:
        raise ContractViolation("chain must start with a Stop step")
    boundaries: set[int] = set()
    for parent, child, ctype in chain.edges():
        boundary = _edge_boundary(parent, child, ctype)
        if ctype is CandidateType.PREFIX:
            shift = len(child) - len(parent)
            boundaries = {b + shift for b in boundaries}
        boundaries.add(boundary)
    return Segmentation(word=chain.word, boundaries=sorted(boundaries))
