"""Candidate parents and contrastive neighborhoods.

Every word proposes a bounded set of (parent, type) candidates: splits on
either side, transformation undos at the suffix boundary, and one Stop.
Neighborhoods are the transposed strings that training pushes probability
mass away from.
"""

from demo_corpus import build
from morphchains import CandidateConfig, generate_candidates, generate_neighbors

wordlist, _, _ = build()
config = CandidateConfig.for_wordlist(wordlist)

for word in ["plays", "planning", "deciding", "carried", "a"]:
    print(f"candidates for {word!r}:")
    for cand in generate_candidates(word, wordlist, config):
        changed = f"  chars={cand.changed}" if cand.changed else ""
        print(f"  ({cand.parent or '-'}, {cand.ctype.value})  affix={cand.affix!r}{changed}")
    print()

print("the same word with a stricter length ratio (0.75):")
strict = CandidateConfig.for_wordlist(wordlist, min_parent_ratio=0.75)
for cand in generate_candidates("planning", wordlist, strict):
    print(f"  ({cand.parent or '-'}, {cand.ctype.value})")
print()

for word in ["plays", "walked"]:
    neighbors = generate_neighbors(word, k=5)
    print(f"neighborhood of {word!r} (k=5, the word itself included last):")
    print(f"  {neighbors}")
