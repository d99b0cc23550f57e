"""A small generated language with known morphology, for end-to-end tests.

Thirty base words combine with six suffixes.  Four suffixes concatenate
plainly; "ing" drops a final 'e' from e-final bases (a Delete derivation);
"ed" doubles the final consonant of the doubling group (a Repeat
derivation) and skips e-final bases.  Frequencies follow a Zipf curve and
embeddings give every word its family's basis vector, so relatives have
cosine 1.0 and unrelated words 0.0.
"""

import random
from dataclasses import dataclass

import numpy as np

from morphchains import EmbeddingTable, GoldSegmentations, WordList

SUFFIXES = ["s", "ly", "ness", "ment", "ing", "ed"]
PLAIN_SUFFIXES = ["s", "ly", "ness", "ment"]

_CONSONANTS = "bdfgklmnprstvz"
_VOWELS = "aeiou"


@dataclass
class SyntheticLanguage:
    wordlist: WordList
    gold: GoldSegmentations
    embeddings: EmbeddingTable
    bases: list[str]
    suffixes: list[str]
    analyses: dict[str, list[str]]  # every word's true surface morphs


def _make_base(rng, kind):
    c = lambda: rng.choice(_CONSONANTS)
    v = lambda: rng.choice(_VOWELS)
    if kind == "e_final":
        body = c() + v() + c() if rng.random() < 0.5 else c() + v() + c() + v() + c()
        return body + "e"
    if kind == "doubling":
        if rng.random() < 0.5:
            word = c() + v() + c() + c()
            while word[-1] == word[-2]:  # keep the base itself repeat-free
                word = word[:-1] + c()
            return word
        return c() + v() + c() + v() + c()
    return c() + v() + c() + v() if rng.random() < 0.5 else c() + v() + c() + v() + c() + v()


def _attach(base, suffix, kind):
    """Surface form and true morphs for one derivation, or None if skipped."""
    if suffix in PLAIN_SUFFIXES:
        return base + suffix, [base, suffix]
    if suffix == "ing":
        if kind == "e_final":
            return base[:-1] + "ing", [base[:-1], "ing"]
        return base + "ing", [base, "ing"]
    if suffix == "ed":
        if kind == "e_final":
            return None
        if kind == "doubling":
            return base + base[-1] + "ed", [base + base[-1], "ed"]
        return base + "ed", [base, "ed"]
    raise AssertionError(suffix)


def _try_generate(seed):
    rng = random.Random(seed)
    kinds = ["e_final"] * 10 + ["doubling"] * 10 + ["neutral"] * 10
    bases = []
    base_kinds = {}
    attempts = 0
    for kind in kinds:
        while True:
            attempts += 1
            if attempts > 3000:
                return None
            base = _make_base(rng, kind)
            clash = base in base_kinds or any(
                base.startswith(b) or b.startswith(base) for b in bases
            )
            if not clash:
                bases.append(base)
                base_kinds[base] = kind
                break

    analyses = {}
    families = {}
    for base in bases:
        family = [base]
        analyses[base] = [base]
        for suffix in SUFFIXES:
            derived = _attach(base, suffix, base_kinds[base])
            if derived is None:
                continue
            word, morphs = derived
            if word in analyses:
                return None  # cross-family collision; retry with another seed
            analyses[word] = morphs
            family.append(word)
        families[base] = family

    words = list(analyses)
    ranked = words[:]
    rng.shuffle(ranked)
    counts = {w: max(1, int(500 / (r + 1) ** 1.2)) for r, w in enumerate(ranked)}

    dim = len(bases)
    vectors = {}
    for i, base in enumerate(bases):
        direction = np.zeros(dim)
        direction[i] = 1.0
        for word in families[base]:
            vectors[word] = direction.copy()

    gold_words = sorted(rng.sample(words, 60))
    gold = GoldSegmentations({w: [list(analyses[w])] for w in gold_words})

    return SyntheticLanguage(
        wordlist=WordList(dict(counts)),
        gold=gold,
        embeddings=EmbeddingTable(dimension=dim, vectors=vectors),
        bases=bases,
        suffixes=list(SUFFIXES),
        analyses=analyses,
    )


def generate(seed=2024):
    """Deterministic for a given seed; bumps the seed past rare collisions."""
    for attempt in range(50):
        language = _try_generate(seed + attempt)
        if language is not None:
            return language
    raise RuntimeError("could not generate a collision-free language")


def write_files(language, directory):
    """Materialize wordlist/gold/embedding files for CLI-level tests."""
    wordlist_path = directory / "words.tsv"
    gold_path = directory / "gold.tsv"
    vectors_path = directory / "vectors.txt"
    with open(wordlist_path, "w", encoding="utf-8") as out:
        for word, count in language.wordlist.entries.items():
            out.write(f"{word}\t{count}\n")
    with open(gold_path, "w", encoding="utf-8") as out:
        for word in language.gold:
            alts = ", ".join(" ".join(m) for m in language.gold.alternatives(word))
            out.write(f"{word}\t{alts}\n")
    with open(vectors_path, "w", encoding="utf-8") as out:
        table = language.embeddings
        out.write(f"{len(table.vectors)} {table.dimension}\n")
        for word, vec in table.vectors.items():
            components = " ".join(f"{x:g}" for x in vec)
            out.write(f"{word} {components}\n")
    return wordlist_path, gold_path, vectors_path
