import math

import numpy as np
import pytest

from binopt import (
    AggregateSet, TargetKind, ZeroCountError,
    build_binary, build_continuous, build_multiclass, build_prebin_table,
    divergence_contrib, pvalue_pairs, woe,
)
from binopt.preprocess import PrebinTable


def binary_table(nonevent, event, **kw):
    ne = np.asarray(nonevent, dtype=np.int64)
    ev = np.asarray(event, dtype=np.int64)
    return PrebinTable(target=TargetKind.binary(), count=ne + ev,
                       nonevent=ne, event=ev,
                       splits=tuple(float(i) + 0.5 for i in range(ne.size - 1)),
                       **kw)


class TestWoe:
    """Spot checks against a hand-tabulated credit-scoring column.

    Grand totals 5000 non-events / 5459 events; shares of individual bins
    verified to reproduce the reference log-odds figures.
    """

    def test_first_bin(self):
        assert woe(99, 445, 5000, 5459) == pytest.approx(-1.41513, abs=1e-4)

    def test_interior_bin(self):
        assert woe(1141, 868, 5000, 5459) == pytest.approx(0.361296, abs=1e-4)

    def test_balanced_bin_is_near_zero(self):
        assert woe(252, 306, 5000, 5459) == pytest.approx(-0.106328, abs=1e-4)

    def test_zero_count_raises(self):
        for args in ((0, 1, 10, 10), (1, 0, 10, 10), (1, 1, 0, 10), (1, 1, 10, 0)):
            with pytest.raises(ZeroCountError):
                woe(*args)

    def test_sign_convention(self):
        # more events than its share -> negative WoE
        assert woe(10, 90, 100, 100) < 0
        assert woe(90, 10, 100, 100) > 0


class TestDivergenceContrib:
    def test_iv_hand_value(self):
        assert divergence_contrib(0.5, 0.25, "iv") == pytest.approx(
            0.25 * math.log(2.0))

    def test_iv_reference_cells(self):
        assert divergence_contrib(99 / 5000, 445 / 5459, "iv") == pytest.approx(
            0.087337, abs=1e-5)
        assert divergence_contrib(1141 / 5000, 868 / 5459, "iv") == pytest.approx(
            0.025000, abs=1e-5)

    def test_js_reference_cells(self):
        assert divergence_contrib(99 / 5000, 445 / 5459, "jsd") == pytest.approx(
            0.010089, abs=1e-5)
        assert divergence_contrib(248 / 5000, 242 / 5459, "jsd") == pytest.approx(
            0.000074, abs=1e-5)

    def test_iv_rejects_zero_share(self):
        with pytest.raises(ZeroCountError):
            divergence_contrib(0.0, 0.5, "iv")
        with pytest.raises(ZeroCountError):
            divergence_contrib(0.5, 0.0, "iv")

    def test_js_tolerates_zero_share(self):
        assert divergence_contrib(0.0, 0.5, "jsd") == pytest.approx(
            0.25 * math.log(2.0))
        assert divergence_contrib(0.0, 0.0, "jsd") == 0.0

    def test_js_symmetric_iv_symmetric(self):
        rng = np.random.default_rng(42)
        for _ in range(200):
            p, q = rng.uniform(0.01, 1.0, size=2)
            for kind in ("iv", "jsd"):
                assert divergence_contrib(p, q, kind) == pytest.approx(
                    divergence_contrib(q, p, kind))
                assert divergence_contrib(p, q, kind) >= 0.0

    def test_js_bounded_by_log2(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            k = int(rng.integers(1, 8))
            p = rng.dirichlet(np.ones(k))
            q = rng.dirichlet(np.ones(k))
            total = sum(divergence_contrib(pi, qi, "jsd")
                        for pi, qi in zip(p, q))
            assert -1e-12 <= total <= math.log(2.0) + 1e-12

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            divergence_contrib(0.5, 0.5, "hellinger")


class TestBinaryAggregates:
    def test_counts_add_up(self):
        agg = build_binary(binary_table([3, 1, 2], [1, 3, 2]))
        assert np.array_equal(agg.R, agg.R_ne + agg.R_e)
        # mid/level merges
        assert agg.R_ne[1, 0] == 4 and agg.R_e[1, 0] == 4
        assert agg.R[2, 0] == 12
        assert agg.n_records == 12

    def test_divergence_and_rate_cells(self):
        agg = build_binary(binary_table([1, 1], [1, 3]))
        # pre-bin 0 alone: shares 1/2 vs 1/4
        assert agg.V[0, 0] == pytest.approx(0.25 * math.log(2.0))
        # full merge: shares 1 vs 1 -> no divergence left
        assert agg.V[1, 0] == 0.0
        assert agg.D[1, 0] == pytest.approx(4.0 / 6.0)
        assert agg.D[0, 0] == pytest.approx(0.5)

    def test_merge_entry_matches_direct_sum(self):
        rng = np.random.default_rng(5)
        ne = rng.integers(1, 30, size=7)
        ev = rng.integers(1, 30, size=7)
        agg = build_binary(binary_table(ne, ev))
        for i in range(7):
            for j in range(i + 1):
                assert agg.R_ne[i, j] == ne[j:i + 1].sum()
                assert agg.R_e[i, j] == ev[j:i + 1].sum()
                assert agg.D[i, j] == pytest.approx(
                    ev[j:i + 1].sum() / (ne[j:i + 1].sum() + ev[j:i + 1].sum()))

    def test_full_merge_divergence_is_zero(self):
        rng = np.random.default_rng(9)
        for kind in ("iv", "jsd"):
            ne = rng.integers(1, 50, size=6)
            ev = rng.integers(1, 50, size=6)
            agg = build_binary(binary_table(ne, ev), divergence=kind)
            assert agg.V[5, 0] == pytest.approx(0.0, abs=1e-15)

    def test_objective_matrix_selection(self):
        agg = build_binary(binary_table([1, 1], [1, 1]))
        assert agg.objective_matrix() is agg.V
        assert agg.rate_matrices() == (agg.D,)


class TestContinuousAggregates:
    def test_hand_example(self):
        t = PrebinTable(target=TargetKind.continuous(),
                        count=np.array([2, 1], dtype=np.int64),
                        total=np.array([2.0, 4.0]), splits=(0.5,))
        agg = build_continuous(t, norm_p=2)
        assert agg.U[0, 0] == pytest.approx(1.0)
        assert agg.U[1, 1] == pytest.approx(4.0)
        assert agg.U[1, 0] == pytest.approx(2.0)
        # pre-bin means 1 and 4 around merged mean 2: sqrt(1 + 4)
        assert agg.L[1, 0] == pytest.approx(math.sqrt(5.0))
        assert agg.L[0, 0] == 0.0

    def test_norm_p1(self):
        t = PrebinTable(target=TargetKind.continuous(),
                        count=np.array([2, 1], dtype=np.int64),
                        total=np.array([2.0, 4.0]), splits=(0.5,))
        agg = build_continuous(t, norm_p=1)
        assert agg.L[1, 0] == pytest.approx(3.0)

    def test_p2_matches_brute_force(self):
        rng = np.random.default_rng(21)
        count = rng.integers(1, 20, size=8)
        total = rng.normal(size=8) * count
        t = PrebinTable(target=TargetKind.continuous(),
                        count=count.astype(np.int64), total=total,
                        splits=tuple(range(7)))
        agg = build_continuous(t, norm_p=2)
        mu = total / count
        for i in range(8):
            for j in range(i + 1):
                u = total[j:i + 1].sum() / count[j:i + 1].sum()
                ref = math.sqrt(((mu[j:i + 1] - u) ** 2).sum())
                assert agg.L[i, j] == pytest.approx(ref, abs=1e-12)
                assert agg.U[i, j] == pytest.approx(u)

    def test_objective_matrix_selection(self):
        t = PrebinTable(target=TargetKind.continuous(),
                        count=np.array([1, 1], dtype=np.int64),
                        total=np.array([1.0, 2.0]), splits=(0.5,))
        agg = build_continuous(t)
        assert agg.objective_matrix() is agg.L
        assert agg.rate_matrices() == (agg.U,)


class TestMulticlassAggregates:
    def _table(self):
        ce = np.array([[3, 2, 4, 1],
                       [1, 3, 2, 2],
                       [2, 1, 1, 3]], dtype=np.int64)
        return PrebinTable(target=TargetKind.multiclass(3),
                           count=ce.sum(axis=0), class_events=ce,
                           splits=(0.5, 1.5, 2.5))

    def test_objective_is_sum_of_class_contributions(self):
        agg = build_multiclass(self._table())
        assert len(agg.class_V) == 3 and len(agg.class_D) == 3
        assert np.array_equal(agg.V, sum(agg.class_V))

    def test_class_matrices_match_one_vs_rest(self):
        t = self._table()
        agg = build_multiclass(t)
        for c in range(3):
            ev = t.class_events[c].astype(float)
            ne = t.count.astype(float) - ev
            ovr = build_binary(binary_table(ne.astype(int), ev.astype(int)))
            assert np.allclose(agg.class_V[c], ovr.V)
            assert np.allclose(agg.class_D[c], ovr.D)

    def test_builds_refine_internally(self):
        ce = np.array([[5, 0, 3],
                       [1, 4, 2],
                       [2, 3, 1]], dtype=np.int64)
        t = PrebinTable(target=TargetKind.multiclass(3),
                        count=ce.sum(axis=0), class_events=ce,
                        splits=(0.5, 1.5))
        agg = build_multiclass(t)   # middle pre-bin lacks class 0
        assert agg.n == 2

    def test_rate_matrices_are_per_class(self):
        agg = build_multiclass(self._table())
        assert agg.rate_matrices() == agg.class_D


class TestPValuePairs:
    def test_identical_rates_are_not_separated(self):
        agg = build_binary(binary_table([5, 5], [5, 5]))
        pp = pvalue_pairs(agg.R_ne, agg.R_e, alpha=0.05)
        assert (0, 0, 1, 1) in pp.pairs
        assert pp.blocks(0, 0, 1, 1)

    def test_extreme_rates_are_separated(self):
        agg = build_binary(binary_table([50, 5], [5, 50]))
        pp = pvalue_pairs(agg.R_ne, agg.R_e, alpha=0.05)
        assert (0, 0, 1, 1) not in pp.pairs
        assert not pp.blocks(0, 0, 1, 1)

    def test_threshold_is_normal_quantile(self):
        agg = build_binary(binary_table([5, 5], [5, 5]))
        pp = pvalue_pairs(agg.R_ne, agg.R_e, alpha=0.05)
        assert pp.threshold == pytest.approx(1.959963985, abs=1e-8)

    def test_pairs_are_adjacent_quadruples(self):
        rng = np.random.default_rng(13)
        ne = rng.integers(1, 40, size=6)
        ev = rng.integers(1, 40, size=6)
        agg = build_binary(binary_table(ne, ev))
        pp = pvalue_pairs(agg.R_ne, agg.R_e, alpha=0.2)
        for i, j, k, l in pp.pairs:
            assert j <= i and l == i + 1 and l <= k <= 5

    def test_tighter_alpha_blocks_more(self):
        rng = np.random.default_rng(17)
        ne = rng.integers(1, 40, size=6)
        ev = rng.integers(1, 40, size=6)
        agg = build_binary(binary_table(ne, ev))
        loose = pvalue_pairs(agg.R_ne, agg.R_e, alpha=0.5)
        tight = pvalue_pairs(agg.R_ne, agg.R_e, alpha=0.01)
        assert loose.pairs <= tight.pairs


def test_aggregate_arrays_are_frozen():
    agg = build_binary(binary_table([1, 2], [2, 1]))
    with pytest.raises(ValueError):
        agg.V[0, 0] = 3.0


def test_build_from_raw_column_end_to_end():
    rng = np.random.default_rng(3)
    x = rng.uniform(0, 1, 500)
    y = (rng.uniform(size=500) < 0.2 + 0.6 * x).astype(int)
    table = build_prebin_table(x, y, TargetKind.binary(),
                               splits=tuple(np.linspace(0.1, 0.9, 9)))
    from binopt import refine_prebins
    agg = build_binary(refine_prebins(table))
    assert isinstance(agg, AggregateSet)
    n = agg.n
    # total divergence of the finest partition >= that of the single bin (0)
    finest = sum(agg.V[i, i] for i in range(n))
    assert finest >= agg.V[n - 1, 0]
