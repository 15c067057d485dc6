import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from corpus import finite_field_corpus, rational_corpus  # noqa: E402


@pytest.fixture(scope="session")
def ff_corpus():
    return finite_field_corpus()


@pytest.fixture(scope="session")
def q_corpus():
    return rational_corpus()


@pytest.fixture(scope="session")
def ff_oracle(ff_corpus):
    """Oracle ground truth for the finite-field corpus, computed once."""
    from nilmat.testkit import closure, oracle_invariants

    out = {}
    for entry in ff_corpus:
        c = closure(list(entry.group.gens), 10**4)
        assert not c.overflowed, f"{entry.name} closure exceeded the corpus bound"
        out[entry.name] = oracle_invariants(c)
    return out
