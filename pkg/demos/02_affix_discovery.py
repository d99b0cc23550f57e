"""Affix inventory induction and correlated affix pairs.

String differences against in-vocabulary parents are tallied and ranked;
two affixes correlate when enough stems take both of them (walk takes -s,
-ing and -ed, and so does play).
"""

from demo_corpus import build
from morphchains import (
    CandidateConfig,
    build_affix_correlations,
    induce_affix_inventory,
)

wordlist, _, _ = build()
config = CandidateConfig.for_wordlist(wordlist)

inventory = induce_affix_inventory(wordlist, config, k_suffixes=15, k_prefixes=15)
print("induced suffixes (affix, words supporting it):")
for affix, support in inventory.suffixes:
    print(f"  -{affix}\t{support}")
print()
print("induced prefixes:", inventory.prefixes or "(none in this corpus)")
print()

correlations = build_affix_correlations(inventory, wordlist, config, min_shared_stems=2)
print("correlated suffix pairs (>= 2 shared stems):")
seen = set()
for affix in sorted(correlations.suffixes):
    for partner in sorted(correlations.suffixes[affix]):
        if (partner, affix) not in seen:
            seen.add((affix, partner))
            print(f"  (-{affix}, -{partner})")
