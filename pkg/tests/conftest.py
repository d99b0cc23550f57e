import pytest

import synthetic
from morphchains import (
    CandidateConfig,
    EmbeddingTable,
    WordList,
    run_training,
)

# Small but structurally rich: shared stems, a doubling pair, e-final and
# y-final words for Delete/Modify, words of length 1 through 8.
TOY_WORDS = {
    "a": 5,
    "at": 9,
    "cat": 12,
    "cart": 7,
    "car": 30,
    "cars": 11,
    "carry": 6,
    "carried": 3,
    "plan": 18,
    "planning": 4,
    "plans": 9,
    "decide": 10,
    "deciding": 5,
    "play": 40,
    "plays": 16,
    "playing": 8,
    "walk": 25,
    "walks": 10,
    "walking": 7,
    "walked": 6,
}


@pytest.fixture
def toy_wordlist():
    return WordList(dict(TOY_WORDS))


@pytest.fixture
def toy_config(toy_wordlist):
    return CandidateConfig.for_wordlist(toy_wordlist)


@pytest.fixture
def empty_embeddings():
    return EmbeddingTable(dimension=4)


@pytest.fixture(scope="session")
def language():
    return synthetic.generate()


@pytest.fixture(scope="session")
def trained(language):
    """One full training run on the synthetic language, shared by tests."""
    model, ctx, report = run_training(
        language.wordlist, language.gold, language.embeddings
    )
    return model, ctx, report
