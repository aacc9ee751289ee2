"""Trajectory generation: returns-to-go, BFS behavior, oracle equality, stats."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from claimforge.lexedit import apply_action, legal_actions, tokenize, unflatten_action
from claimforge.searchenv import RewardSpec, build_index
from claimforge.searchenv.endpoints import reward_text
from claimforge.trajgen import (
    DENSE,
    SPARSE,
    GenConfig,
    GenReport,
    compute_rtg,
    dataset_stats,
    generate_trajectories,
)


class TestComputeRtg:
    def test_dense_suffix_sums(self):
        assert compute_rtg([0.2, 0.5, 0.9], DENSE) == pytest.approx([1.6, 1.4, 0.9])

    def test_sparse_last_step_max(self):
        assert compute_rtg([0.2, 0.5, 0.9], SPARSE, max_seen=0.9) == [0.0, 0.0, 0.9]

    def test_single_step(self):
        assert compute_rtg([0.7], DENSE) == [0.7]
        assert compute_rtg([0.7], SPARSE, max_seen=0.95) == [0.95]

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            compute_rtg([], DENSE)

    @given(st.lists(st.floats(0, 1, allow_nan=False), min_size=1, max_size=12))
    def test_dense_matches_bruteforce(self, rewards):
        got = compute_rtg(rewards, DENSE)
        for t in range(len(rewards)):
            assert got[t] == pytest.approx(sum(rewards[t:]), abs=1e-9)

    @given(
        st.lists(st.floats(0, 1, allow_nan=False), min_size=1, max_size=12),
        st.floats(0, 1, allow_nan=False),
    )
    def test_sparse_shape(self, rewards, max_seen):
        got = compute_rtg(rewards, SPARSE, max_seen=max_seen)
        assert got[:-1] == [0.0] * (len(rewards) - 1)
        assert got[-1] == max_seen


def monotone_path_outcomes(claim, endpoint, relevant, spec, lexicon, max_depth):
    """Oracle: recursive enumeration of improvement-only maximal paths.

    Returns the set of (final_text, final_reward) over all maximal paths.
    """
    out = set()

    def walk(state, score, depth):
        children = []
        if depth < max_depth:
            for action in sorted(legal_actions(state, lexicon), key=lambda a: a.flat):
                child = apply_action(state, action, lexicon)
                r = reward_text(endpoint, child.text, relevant, spec)
                if r > score:
                    children.append((child, r))
        if not children:
            if depth > 0:
                out.add((state.text, round(score, 9)))
            return
        for child, r in children:
            walk(child, r, depth + 1)

    r0 = reward_text(endpoint, claim.text, relevant, spec)
    walk(claim, r0, 0)
    return out, r0


class TestGenerateTrajectories:
    def test_the_the_cat_double_removal(self, the_the_cat_corpus, lexicon):
        endpoint = build_index(the_the_cat_corpus, "bm25")
        spec = RewardSpec("ap", 50)
        claim = tokenize("the the cat", lexicon, claim_id="ttc")
        cfg = GenConfig(max_depth=2, min_improvement=0.0, random_prune_prob=0.0)
        trajs = generate_trajectories(
            claim, endpoint, spec, cfg, the_the_cat_corpus, lexicon
        )
        # oracle cross-check: the double removal is the best reachable path
        oracle, r0 = monotone_path_outcomes(
            claim, endpoint, {"rel"}, spec, lexicon, max_depth=2
        )
        assert ("cat", 1.0) in oracle
        best = max(t.final_reward for t in trajs)
        assert best == 1.0
        winner = next(t for t in trajs if t.final_reward == 1.0)
        assert [s.action for s in winner.steps] == [96, 96]  # remove@0 twice
        rewards = [s.reward for s in winner.steps]
        assert r0 < rewards[0] < rewards[1] == 1.0

    def test_perfect_claim_skipped(self, tiny_corpus, lexicon):
        endpoint = build_index(tiny_corpus, "bm25")
        spec = RewardSpec("rr", 10)
        claim = tokenize("cat", lexicon, claim_id="c1")  # rr already 1.0
        report = GenReport()
        got = generate_trajectories(
            claim, endpoint, spec, GenConfig(), tiny_corpus, lexicon, report
        )
        assert got == []
        assert report.claims_skipped_perfect == 1

    def test_depth_one_equals_all_improving_single_edits(
        self, the_the_cat_corpus, lexicon
    ):
        endpoint = build_index(the_the_cat_corpus, "bm25")
        spec = RewardSpec("ap", 50)
        claim = tokenize("the the cat", lexicon, claim_id="ttc")
        cfg = GenConfig(
            max_depth=1, min_improvement=0.0, random_prune_prob=0.0, top_n_sequences=999
        )
        trajs = generate_trajectories(
            claim, endpoint, spec, cfg, the_the_cat_corpus, lexicon
        )
        r0 = reward_text(endpoint, claim.text, {"rel"}, spec)
        expected = set()
        for action in legal_actions(claim, lexicon):
            child = apply_action(claim, action, lexicon)
            r = reward_text(endpoint, child.text, {"rel"}, spec)
            if r > r0:
                expected.add((child.text, round(r, 9)))
        got = {
            (apply_action(claim, unflatten_action(t.steps[0].action), lexicon).text,
             round(t.final_reward, 9))
            for t in trajs
        }
        assert got == expected

    def test_oracle_equality_small_claims(self, the_the_cat_corpus, lexicon):
        endpoint = build_index(the_the_cat_corpus, "bm25")
        spec = RewardSpec("ap", 50)
        cfg = GenConfig(
            max_depth=3, min_improvement=0.0, random_prune_prob=0.0,
            top_n_sequences=10_000,
        )
        for text in ("the the cat", "the cat the", "the the the cat"):
            claim = tokenize(text, lexicon, claim_id="ttc")
            trajs = generate_trajectories(
                claim, endpoint, spec, cfg, the_the_cat_corpus, lexicon
            )
            oracle, _ = monotone_path_outcomes(
                claim, endpoint, {"rel"}, spec, lexicon, max_depth=3
            )
            finals = set()
            for t in trajs:
                state = claim
                for s in t.steps:
                    state = apply_action(state, unflatten_action(s.action), lexicon)
                finals.add((state.text, round(t.final_reward, 9)))
            assert finals == oracle

    def test_strictly_increasing_rewards(self, the_the_cat_corpus, lexicon):
        endpoint = build_index(the_the_cat_corpus, "bm25")
        spec = RewardSpec("ap", 50)
        claim = tokenize("the the the cat", lexicon, claim_id="ttc")
        trajs = generate_trajectories(
            claim, endpoint, spec,
            GenConfig(min_improvement=0.0, random_prune_prob=0.0),
            the_the_cat_corpus, lexicon,
        )
        assert trajs
        for t in trajs:
            rewards = [t.original_reward] + [s.reward for s in t.steps]
            assert all(a < b for a, b in zip(rewards, rewards[1:]))

    def test_sparse_and_dense_share_columns(self, the_the_cat_corpus, lexicon):
        endpoint = build_index(the_the_cat_corpus, "bm25")
        spec = RewardSpec("ap", 50)
        claim = tokenize("the the cat", lexicon, claim_id="ttc")
        cfg = GenConfig(
            min_improvement=0.0, random_prune_prob=0.0, modes=(DENSE, SPARSE)
        )
        trajs = generate_trajectories(
            claim, endpoint, spec, cfg, the_the_cat_corpus, lexicon
        )
        dense = [t for t in trajs if t.reward_mode == DENSE]
        sparse = [t for t in trajs if t.reward_mode == SPARSE]
        assert len(dense) == len(sparse)
        for d, s in zip(dense, sparse):
            assert [x.state for x in d.steps] == [x.state for x in s.steps]
            assert [x.action for x in d.steps] == [x.action for x in s.steps]
            assert [x.reward for x in d.steps] == [x.reward for x in s.steps]
            assert [x.rtg for x in d.steps] != [x.rtg for x in s.steps] or len(d.steps) == 1
            assert s.steps[-1].rtg == s.max_seen_reward
            assert all(x.rtg == 0.0 for x in s.steps[:-1])

    def test_random_pruning_reproducible(self, the_the_cat_corpus, lexicon):
        endpoint = build_index(the_the_cat_corpus, "bm25")
        spec = RewardSpec("ap", 50)
        claim = tokenize("the the the cat", lexicon, claim_id="ttc")
        cfg = GenConfig(random_prune_prob=0.5, min_improvement=0.0, seed=11)
        a = generate_trajectories(claim, endpoint, spec, cfg, the_the_cat_corpus, lexicon)
        b = generate_trajectories(claim, endpoint, spec, cfg, the_the_cat_corpus, lexicon)
        assert [t.steps for t in a] == [t.steps for t in b]

    def test_max_depth_respected(self, the_the_cat_corpus, lexicon):
        endpoint = build_index(the_the_cat_corpus, "bm25")
        claim = tokenize("the the the cat", lexicon, claim_id="ttc")
        cfg = GenConfig(max_depth=2, min_improvement=0.0, random_prune_prob=0.0)
        for t in generate_trajectories(
            claim, endpoint, RewardSpec("ap", 50), cfg, the_the_cat_corpus, lexicon
        ):
            assert 1 <= len(t.steps) <= 2
            assert all(0 <= s.action < 128 for s in t.steps)


class TestDatasetStats:
    def test_all_remove_dataset(self, the_the_cat_corpus, lexicon):
        endpoint = build_index(the_the_cat_corpus, "bm25")
        spec = RewardSpec("ap", 50)
        claim = tokenize("the the cat", lexicon, claim_id="ttc")
        cfg = GenConfig(min_improvement=0.0, random_prune_prob=0.0)
        trajs = generate_trajectories(
            claim, endpoint, spec, cfg, the_the_cat_corpus, lexicon
        )
        stats = dataset_stats(trajs)
        assert stats.action_fraction("remove") == 1.0
        assert stats.action_fraction("swap_synonym") == 0.0
        assert stats.claims_improved == 1

    def test_deltas_match_manual_tally(self):
        from claimforge.trajgen import TrajStep, Trajectory

        trajs = [
            Trajectory(
                claim_id="a",
                steps=(
                    TrajStep(rtg=0.9, state="x", action=96, reward=0.4),
                    TrajStep(rtg=0.5, state="y", action=0, reward=0.5),
                ),
                reward_mode=DENSE,
                max_seen_reward=0.5,
                original_reward=0.1,
            ),
            Trajectory(
                claim_id="b",
                steps=(TrajStep(rtg=0.8, state="z", action=97, reward=0.8),),
                reward_mode=DENSE,
                max_seen_reward=0.8,
                original_reward=0.2,
            ),
        ]
        stats = dataset_stats(trajs)
        # removes: (0.4 - 0.1) and (0.8 - 0.2) -> mean 0.45
        assert stats.per_action["remove"].count == 2
        assert stats.per_action["remove"].mean_delta == pytest.approx(0.45)
        assert stats.per_action["swap_synonym"].mean_delta == pytest.approx(0.1)
        assert stats.claims_improved == 2
        assert stats.mean_best_gain == pytest.approx((0.4 + 0.6) / 2)
