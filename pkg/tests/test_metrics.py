"""Retrieval metrics against independent brute-force definitions."""

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from claimforge.searchenv import RewardSpec, ap_at_k, recall_at_k, reciprocal_rank


# --- independent oracles (straight from the definitions) ---


def oracle_ap(ranking, relevant, k):
    if not relevant:
        return 0.0
    total = 0.0
    for i in range(min(k, len(ranking))):
        if ranking[i] in relevant:
            hits_so_far = sum(1 for d in ranking[: i + 1] if d in relevant)
            total += hits_so_far / (i + 1)
    return total / min(len(relevant), k)


def oracle_recall(ranking, relevant, k):
    if not relevant:
        return 0.0
    return len(set(ranking[:k]) & relevant) / len(relevant)


def oracle_rr(ranking, relevant, k):
    for i, doc in enumerate(ranking[:k]):
        if doc in relevant:
            return 1.0 / (i + 1)
    return 0.0


def test_spec_ap_example():
    # (1/1 + 2/3) / 2 = 0.8333...
    got = ap_at_k(["d1", "d2", "d3"], {"d1", "d3"}, 3)
    assert got == pytest.approx(0.833333333, abs=1e-9)
    assert got == pytest.approx(oracle_ap(["d1", "d2", "d3"], {"d1", "d3"}, 3))


def test_ap_nothing_retrieved_is_zero():
    assert ap_at_k(["d1", "d2"], {"d9"}, 2) == 0.0
    assert ap_at_k([], {"d9"}, 5) == 0.0
    assert ap_at_k(["d1"], set(), 5) == 0.0


def test_ap_perfect_prefix_is_one():
    assert ap_at_k(["a", "b", "c"], {"a", "b"}, 3) == 1.0
    assert ap_at_k(["a"], {"a"}, 50) == 1.0


def test_recall_and_rr_spec_examples():
    assert recall_at_k(["d2", "d1"], {"d1"}, 2) == 1.0
    assert reciprocal_rank(["d2", "d1"], {"d1"}, 2) == 0.5
    assert recall_at_k(["d2", "d3"], {"d1"}, 2) == 0.0
    assert reciprocal_rank(["d2", "d3"], {"d1"}, 2) == 0.0
    assert reciprocal_rank(["d1", "d2"], {"d1"}, 2) == 1.0


def _random_case(rng):
    n_docs = rng.randint(1, 40)
    docs = [f"d{i}" for i in range(n_docs)]
    ranking = rng.sample(docs, rng.randint(0, n_docs))
    relevant = set(rng.sample(docs, rng.randint(0, n_docs)))
    k = rng.randint(1, 60)
    return ranking, relevant, k


def test_metrics_match_oracles_randomized():
    rng = random.Random(42)
    for _ in range(1000):
        ranking, relevant, k = _random_case(rng)
        assert ap_at_k(ranking, relevant, k) == pytest.approx(
            oracle_ap(ranking, relevant, k), abs=1e-9
        )
        assert recall_at_k(ranking, relevant, k) == pytest.approx(
            oracle_recall(ranking, relevant, k), abs=1e-9
        )
        assert reciprocal_rank(ranking, relevant, k) == pytest.approx(
            oracle_rr(ranking, relevant, k), abs=1e-9
        )


@given(
    st.lists(st.integers(0, 30).map("d{}".format), max_size=30, unique=True),
    st.sets(st.integers(0, 30).map("d{}".format), max_size=30),
    st.integers(1, 40),
)
def test_metric_bounds(ranking, relevant, k):
    for fn in (ap_at_k, recall_at_k, reciprocal_rank):
        value = fn(ranking, relevant, k)
        assert 0.0 <= value <= 1.0


@given(
    st.lists(st.integers(0, 30).map("d{}".format), max_size=20, unique=True),
    st.lists(st.integers(31, 60).map("d{}".format), max_size=10, unique=True),
    st.sets(st.integers(0, 60).map("d{}".format), max_size=30),
    st.integers(30, 60),
)
def test_recall_monotone_under_appends(ranking, extra, relevant, k):
    # appending results never decreases recall when k covers the longer list
    assert recall_at_k(ranking + extra, relevant, k) >= recall_at_k(
        ranking, relevant, k
    )


def test_reward_spec_validation():
    with pytest.raises(ValueError):
        RewardSpec("bogus", 50)
    with pytest.raises(ValueError):
        RewardSpec("ap", 0)
    assert RewardSpec("ap", 50).compute(["a"], {"a"}) == 1.0
