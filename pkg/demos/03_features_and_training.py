"""Feature extraction and contrastive training.

Shows the named sparse features behind a few (word, candidate) pairs,
then fits weights and compares candidate distributions before and after
training: the probability mass concentrates on the true parent.
"""

import numpy as np

from demo_corpus import build
from morphchains import (
    Candidate,
    CandidateType,
    Model,
    TrainConfig,
    build_affix_correlations,
    candidate_distribution,
    CandidateConfig,
    FeatureContext,
    extract_features,
    generate_candidates,
    induce_affix_inventory,
    train,
)

wordlist, gold, embeddings = build()
config = CandidateConfig.for_wordlist(wordlist)
inventory = induce_affix_inventory(wordlist, config)
correlations = build_affix_correlations(inventory, wordlist, config, 2)
ctx = FeatureContext(embeddings, wordlist, inventory, correlations, config)

pairs = [
    ("painter", Candidate("paint", CandidateType.SUFFIX, "er")),
    ("carried", Candidate("carry", CandidateType.MODIFY, "ed", ("y", "i"))),
    ("painter", Candidate("", CandidateType.STOP)),
]
for word, cand in pairs:
    print(f"features of ({word}, ({cand.parent or '-'}, {cand.ctype.value})):")
    for name, value in sorted(extract_features(word, cand, ctx).items()):
        print(f"  {name}\t{value:.4f}")
    print()

model, report = train(wordlist, ctx, TrainConfig())
print(
    f"training: {report.iterations} iterations, objective {report.final_objective:.3f}, "
    f"gradient norm {report.gradient_norm:.2e}, converged={report.converged}"
)
print(f"model dimension: {model.dim} features\n")

zero = Model(
    theta=np.zeros(model.dim),
    index=model.index,
    inventory=model.inventory,
    correlations=model.correlations,
    config=model.config,
)
for word in ["plays", "planning"]:
    cands = generate_candidates(word, wordlist, config)
    before = candidate_distribution(zero, word, cands, ctx)
    after = candidate_distribution(model, word, cands, ctx)
    print(f"candidate distribution for {word!r} (before -> after training):")
    order = np.argsort(-after)
    for i in order[:4]:
        cand = cands[i]
        print(
            f"  ({cand.parent or '-'}, {cand.ctype.value}): "
            f"{before[i]:.3f} -> {after[i]:.3f}"
        )
    print()
