"""Tiny English-flavored corpus shared by the demo scripts."""

import numpy as np

from morphchains import EmbeddingTable, GoldSegmentations, WordList

FAMILIES = {
    "play": ["play", "plays", "playing", "played", "playful"],
    "walk": ["walk", "walks", "walking", "walked"],
    "plan": ["plan", "plans", "planning", "planned"],
    "decide": ["decide", "decides", "deciding", "decided"],
    "carry": ["carry", "carries", "carried"],
    "paint": ["paint", "paints", "painting", "painted", "painter"],
}

COUNTS = {
    "play": 3000, "plays": 810, "playing": 650, "played": 770, "playful": 60,
    "walk": 2200, "walks": 540, "walking": 580, "walked": 600,
    "plan": 1900, "plans": 700, "planning": 420, "planned": 380,
    "decide": 900, "decides": 150, "deciding": 120, "decided": 640,
    "carry": 800, "carries": 140, "carried": 470,
    "paint": 1100, "paints": 90, "painting": 510, "painted": 330, "painter": 170,
}

GOLD = {
    "plays": [["play", "s"]],
    "walked": [["walk", "ed"]],
    "planning": [["plann", "ing"]],
    "deciding": [["decid", "ing"]],
    "carried": [["carri", "ed"]],
    "painter": [["paint", "er"]],
    "playful": [["play", "ful"]],
    "play": [["play"]],
    "decide": [["decide"]],
}


def build():
    """WordList, gold analyses, and family-aligned embeddings."""
    wordlist = WordList(dict(COUNTS))
    gold = GoldSegmentations({w: [list(a) for a in alts] for w, alts in GOLD.items()})

    rng = np.random.default_rng(12)
    dim = 16
    directions = {base: rng.normal(size=dim) for base in FAMILIES}
    vectors = {}
    for base, members in FAMILIES.items():
        axis = directions[base] / np.linalg.norm(directions[base])
        for word in members:
            jitter = rng.normal(scale=0.05, size=dim)
            vectors[word] = axis + jitter
    embeddings = EmbeddingTable(dimension=dim, vectors=vectors)
    return wordlist, gold, embeddings
