import pytest

from specgraph.census import exhaustive_graph6
from specgraph.claims import CLAIMS, MAX_STORED_FAILURES, ClaimResult, random_graph_corpus, run_claim


@pytest.fixture(scope="module")
def small_words():
    return list(exhaustive_graph6(6))


@pytest.mark.parametrize("cid", sorted(c for c, v in CLAIMS.items() if v.exhaustive))
def test_exhaustive_claims_hold_up_to_six(cid, small_words):
    res = run_claim(cid, small_words)
    assert res.passed, res.failures[:3]
    assert res.checked > 0


@pytest.mark.parametrize("cid", sorted(c for c, v in CLAIMS.items() if not v.exhaustive))
def test_example_claims_hold(cid):
    assert run_claim(cid).passed


def test_random_corpus_is_seeded():
    assert random_graph_corpus(20, 12, 7) == random_graph_corpus(20, 12, 7)
    assert random_graph_corpus(20, 12, 7) != random_graph_corpus(20, 12, 8)


def test_failures_are_capped():
    res = ClaimResult("x", "y")
    for i in range(MAX_STORED_FAILURES + 5):
        res.fail(i=i)
    assert res.failure_count == MAX_STORED_FAILURES + 5
    assert len(res.failures) == MAX_STORED_FAILURES
    assert not res.to_dict()["passed"]


def test_unknown_claim():
    with pytest.raises(KeyError):
        run_claim("nope")
