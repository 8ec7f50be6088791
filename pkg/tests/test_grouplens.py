import random

import pytest

from diva.casebase import CaseBase
from diva.grouplens import baseline_recommend, pearson, predict


class TestPearson:
    def test_identical_vectors(self):
        v = {"m1": 0.8, "m2": 0.2, "m3": 0.6}
        assert pearson(v, v) == 1.0

    def test_two_covarying_points(self):
        a = {"m1": 0.8, "m2": 0.4}
        u = {"m1": 1.0, "m2": 0.6, "m3": 0.8}
        assert pearson(a, u) == 1.0

    def test_zero_variance_undefined(self):
        a = {"m1": 0.4, "m2": 0.4}
        assert pearson(a, {"m1": 1.0, "m2": 0.0}) is None

    def test_small_intersection_undefined(self):
        assert pearson({"m1": 0.8}, {"m1": 0.6}) is None
        assert pearson({"m1": 0.8}, {"m9": 0.6}) is None

    def test_symmetry(self):
        rnd = random.Random(8)
        levels = [0.0, 0.2, 0.4, 0.6, 0.8, 1.0]
        for _ in range(50):
            a = {f"m{i}": rnd.choice(levels) for i in range(rnd.randint(2, 10))}
            u = {f"m{i}": rnd.choice(levels) for i in range(rnd.randint(2, 10))}
            assert pearson(a, u) == pearson(u, a)

    def test_insensitive_to_items_outside_intersection(self):
        a = {"m1": 0.8, "m2": 0.4, "m3": 0.0}
        u = {"m1": 1.0, "m2": 0.2, "m3": 0.4}
        base = pearson(a, u)
        u_padded = dict(u, m99=1.0, m98=0.0)
        assert pearson(a, u_padded) == base

    def test_anticorrelated(self):
        a = {"m1": 0.0, "m2": 1.0}
        u = {"m1": 1.0, "m2": 0.0}
        assert pearson(a, u) == -1.0


class TestPredict:
    A = {"m1": 0.8, "m2": 0.4}

    def test_neighbor_at_own_mean_gives_active_mean(self):
        cb = CaseBase({"u1": {"m1": 1.0, "m2": 0.6, "m3": 0.8}})
        assert predict(self.A, "m3", cb) == pytest.approx(0.6, abs=1e-12)

    def test_negative_correlation_flips(self):
        # neighbor anti-correlated with active; vote 0.2 above their mean
        cb = CaseBase({"u1": {"m1": 0.0, "m2": 0.4, "m3": 0.4}})
        # neighbor mean = 0.266..., vote on m3 is mean + 0.1333...
        r = pearson(self.A, cb.raw_ratings["u1"])
        assert r == -1.0
        mean_u = (0.0 + 0.4 + 0.4) / 3
        want = 0.6 + (-1.0) * (0.4 - mean_u) / 1.0
        assert predict(self.A, "m3", cb) == pytest.approx(want, abs=1e-12)

    def test_no_neighbor_falls_back_to_active_mean(self):
        cb = CaseBase({"u1": {"m1": 1.0, "m2": 0.6}})  # never rated m9
        assert predict(self.A, "m9", cb) == pytest.approx(0.6, abs=1e-12)

    def test_translation_consistency_single_neighbor(self):
        rnd = random.Random(21)
        levels = [0.0, 0.2, 0.4, 0.6, 0.8, 1.0]
        for _ in range(40):
            a = {f"m{i}": rnd.choice(levels) for i in range(4)}
            u = {f"m{i}": rnd.choice(levels) for i in range(5)}
            cb = CaseBase({"u1": u})
            r = pearson(a, u)
            if r is None or r == 0.0:
                continue
            mean_a = sum(a.values()) / len(a)
            mean_u = sum(u.values()) / len(u)
            want = mean_a + r * (u["m4"] - mean_u) / abs(r)
            assert predict(a, "m4", cb) == pytest.approx(
                min(1.0, max(0.0, want)), abs=1e-12)

    def test_clamped_to_unit_interval(self):
        a = {"m1": 1.0, "m2": 0.8}
        cb = CaseBase({"u1": {"m1": 1.0, "m2": 0.8, "m3": 1.0}})
        assert 0.0 <= predict(a, "m3", cb) <= 1.0

    def test_min_overlap_flag_excludes_thin_neighbors(self):
        a = {"m1": 0.8, "m2": 0.4, "m3": 0.0}
        thin = {"m1": 1.0, "m2": 0.6, "m9": 1.0}        # overlap 2
        cb = CaseBase({"thin": thin})
        assert predict(a, "m9", cb) != pytest.approx(sum(a.values()) / 3)
        assert predict(a, "m9", cb, min_overlap=3) == pytest.approx(sum(a.values()) / 3)


class TestBaselineRecommend:
    def test_single_positive_neighbor_preserves_their_order(self):
        neighbor = {"m1": 1.0, "m2": 0.8, "m3": 0.6, "m4": 0.4, "m5": 0.2,
                    "a1": 0.8, "a2": 0.4}
        active = {"a1": 0.8, "a2": 0.4}
        cb = CaseBase({"u1": neighbor})
        out = baseline_recommend(active, cb, {"m1", "m2", "m3", "m4", "m5"}, 5)
        assert out == ["m1", "m2", "m3", "m4", "m5"]

    def test_n_truncates_and_overshoots(self):
        active = {"a1": 0.8, "a2": 0.4}
        cb = CaseBase({"u1": {"a1": 1.0, "a2": 0.6, "m1": 0.8}})
        assert len(baseline_recommend(active, cb, {"m1"}, 5)) == 1
        assert baseline_recommend(active, cb, set(), 3) == []

    def test_tie_breaks_by_item_id(self):
        active = {"a1": 0.8, "a2": 0.4}
        cb = CaseBase({"u1": {"a1": 1.0, "a2": 0.6}})  # no votes on candidates
        assert baseline_recommend(active, cb, {"z", "b", "k"}, 3) == ["b", "k", "z"]
