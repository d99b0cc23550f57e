"""Chains, segmentations, boundary scoring, and the threshold sweep.

Greedy prediction walks each word down to its base; every edge contributes
one segmentation point.  Boundary precision/recall/F1 is scored against
gold analyses, and retraining across frequency thresholds shows how much
data the model actually needs.
"""

from demo_corpus import build
from morphchains import (
    affix_frequency_profile,
    distribution_diagnostics,
    evaluate_boundaries,
    run_training,
    segment_many,
    sweep_frequency_threshold,
)

wordlist, gold, embeddings = build()
model, ctx, _ = run_training(wordlist, gold, embeddings)

print("chains and segmentations:")
results = segment_many(model, list(wordlist), ctx)
for word, chain, seg in results:
    if word in gold.entries or len(chain.steps) > 2:
        arrow = " -> ".join(f"{w}[{t.value}]" for w, t in chain.steps)
        print(f"  {word:10s} {'|'.join(seg.segments):14s} via {arrow}")
print()

score = evaluate_boundaries({w: seg for w, _, seg in results}, gold)
print(
    f"boundary scores: precision {score.precision:.3f}, recall {score.recall:.3f}, "
    f"F1 {score.f1:.3f} ({score.true_positives}/{score.predicted_positives} predicted, "
    f"{score.gold_positives} gold)"
)
print()

profile = affix_frequency_profile({w: (seg, chain) for w, chain, seg in results})
print("predicted affix profile:")
for affix, count in profile:
    print(f"  -{affix}\t{count}")
print()

diag = distribution_diagnostics(model, wordlist, ctx)
print(
    f"diagnostics: avg max probability {diag.avg_max_prob:.2f}, "
    f"avg entropy {diag.avg_entropy:.2f} nats, "
    f"avg candidates {diag.avg_candidates:.1f}"
)
print()

print("threshold sweep (threshold, vocab size, P, R, F1):")
for row in sweep_frequency_threshold(wordlist, gold, embeddings, [1, 100, 500]):
    print(f"  {row[0]:>4d}  {row[1]:>3d}  {row[2]:.3f}  {row[3]:.3f}  {row[4]:.3f}")
