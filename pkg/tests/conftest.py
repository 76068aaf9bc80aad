import pytest

from arexplain.harness import builtin_corpus_dir
from arexplain.templates import builtin_registry
from arexplain.xasformat import load_corpus_dir


@pytest.fixture(scope="session")
def corpus_pairs():
    pairs, errors = load_corpus_dir(builtin_corpus_dir())
    assert not errors, errors
    return pairs


@pytest.fixture(scope="session")
def corpus_by_id(corpus_pairs):
    return {s.id: (s, golden) for s, golden in corpus_pairs}


@pytest.fixture(scope="session")
def registry():
    return builtin_registry()
