"""Exact constrained bin-merging solver.

Searches over all partitions of the pre-bins into contiguous intervals for the
one maximizing total divergence (binary / multi-class targets) or minimizing
total mean deviation (continuous targets), subject to:

- bin-count bounds,
- per-bin record / non-event / event count bounds,
- a trend shape on the sequence of bin event rates or means (monotonic,
  concave/convex, peak/valley with free or pinned change point, or automatic
  trend selection),
- minimum rate separation between bins (``min_diff``),
- a two-proportion z-test separation constraint between adjacent bins,
- an optional concentration penalty (std / HHI / max-min of bin sizes) scaled
  by ``gamma`` and folded into the objective.

The search is a depth-first branch and bound over "next interval" choices with
incremental trend automata and an optimistic objective bound.  A brute-force
enumerator with independent whole-partition checks (``brute_force_oracle``)
provides reference semantics for testing; ties are broken identically in both:
better objective, then fewer bins, then lexicographically earliest interval
start vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    BinningConfig, Solution, TargetKind, TrendSpec, validate_config,
    InvalidConfigError,
    TREND_NONE, ASCENDING, DESCENDING, CONCAVE, CONVEX, PEAK, VALLEY, AUTO,
    CONC_OFF, CONC_STD, CONC_HHI, CONC_MAXMIN,
    OPTIMAL, INFEASIBLE,
    with_trend,
)
from .aggregate import AggregateSet, PValuePairs

# Tolerance for rate comparisons: exact ties (equal rates from symmetric
# counts) must count as non-strict satisfaction of <=/>= trend constraints.
EPS = 1e-12

_NEG_INF = float("-inf")
_POS_INF = float("inf")


# --------------------------------------------------------------------------- #
# whole-sequence trend predicates (the oracle's route)
# --------------------------------------------------------------------------- #

def _chain_ok(rates, lo: int, hi: int, ascending: bool, min_diff: float) -> bool:
    """Pairwise monotone chain over rates[lo:hi] with min_diff separation."""
    for a in range(lo, hi):
        ra = rates[a]
        for b in range(a + 1, hi):
            if ascending:
                if rates[b] < ra + min_diff - EPS:
                    return False
            else:
                if rates[b] > ra - min_diff + EPS:
                    return False
    return True


def check_trend(rates, trend: TrendSpec, min_diff: float = 0.0) -> bool:
    """Does a complete sequence of bin rates satisfy the trend shape?

    Monotone trends are checked pairwise over *all* bin pairs with the
    ``min_diff`` separation; concave/convex over all index triples (a, b, c):
    2*rates[b] >= rates[a] + rates[c] for concave (mirrored for convex), with
    no ``min_diff``.  Peak (valley) holds when some bin p splits the sequence
    into an ascending chain rates[:p+1] and a descending chain rates[p:]
    (mirrored), ``min_diff`` applying within each phase; a pinned change point
    is a solver-side restriction, so here it checks the same shape.
    """
    rates = list(rates)
    m = len(rates)
    kind = trend.kind
    if kind == TREND_NONE:
        return True
    if kind == ASCENDING:
        return _chain_ok(rates, 0, m, True, min_diff)
    if kind == DESCENDING:
        return _chain_ok(rates, 0, m, False, min_diff)
    if kind in (CONCAVE, CONVEX):
        sign = 1.0 if kind == CONCAVE else -1.0
        for b in range(1, m - 1):
            mid = 2.0 * sign * rates[b]
            for a in range(b):
                for c in range(b + 1, m):
                    if mid + EPS < sign * (rates[a] + rates[c]):
                        return False
        return True
    if kind in (PEAK, VALLEY):
        up_first = kind == PEAK
        for p in range(m):
            if (_chain_ok(rates, 0, p + 1, up_first, min_diff)
                    and _chain_ok(rates, p, m, not up_first, min_diff)):
                return True
        return False
    raise InvalidConfigError(
        ["check_trend needs a concrete trend; got {!r}".format(kind)])


def _locate_bin(intervals, prebin: int) -> int:
    for idx, (s, e) in enumerate(intervals):
        if s <= prebin <= e:
            return idx
    raise ValueError("pre-bin {} not covered by intervals".format(prebin))


def _trend_feasible(intervals, rates, trend: TrendSpec, min_diff: float) -> bool:
    """check_trend, plus exact change-point pinning when one is given."""
    if trend.kind in (PEAK, VALLEY) and trend.change_point is not None:
        t = trend.change_point
        if not intervals or t > intervals[-1][1]:
            return False
        p = _locate_bin(intervals, t)
        m = len(rates)
        up_first = trend.kind == PEAK
        return (_chain_ok(rates, 0, p + 1, up_first, min_diff)
                and _chain_ok(rates, p, m, not up_first, min_diff))
    return check_trend(rates, trend, min_diff)


# --------------------------------------------------------------------------- #
# constraint pieces shared by solver, oracle and postcheck
# --------------------------------------------------------------------------- #

def concentration_penalty(intervals, R, kind: str) -> float:
    """Concentration of records across bins: sample std, HHI, or max-min.

    Computed on total record counts per bin.  A single bin has zero std by
    convention.  Always nonnegative.
    """
    if kind == CONC_OFF:
        return 0.0
    counts = [float(R[e, s]) for s, e in intervals]
    if kind == CONC_STD:
        m = len(counts)
        if m <= 1:
            return 0.0
        mean = sum(counts) / m
        return math.sqrt(sum((c - mean) ** 2 for c in counts) / (m - 1))
    if kind == CONC_HHI:
        total = sum(counts)
        return sum(c * c for c in counts) / (total * total)
    if kind == CONC_MAXMIN:
        return max(counts) - min(counts)
    raise ValueError("unknown concentration kind {!r}".format(kind))


def apply_pvalue_constraint(intervals, pairs: PValuePairs | None) -> bool:
    """True iff no two adjacent bins form an insufficiently-separated pair."""
    if pairs is None or not pairs.pairs:
        return True
    for (s1, e1), (s2, e2) in zip(intervals, intervals[1:]):
        if pairs.blocks(e1, s1, e2, s2):
            return False
    return True


def _resolved_trends(agg: AggregateSet, cfg: BinningConfig):
    """One concrete-or-auto TrendSpec per rate matrix (1 or n_classes)."""
    if agg.target.is_multiclass:
        k = agg.target.n_classes
        if isinstance(cfg.trend, TrendSpec):
            return (cfg.trend,) * k
        if len(cfg.trend) != k:
            raise InvalidConfigError(
                ["need one trend per class ({}); got {}".format(k, len(cfg.trend))])
        return tuple(cfg.trend)
    if not isinstance(cfg.trend, TrendSpec):
        raise InvalidConfigError(
            ["a tuple of trends is only valid for multi-class targets"])
    return (cfg.trend,)


def evaluate_partition(intervals, agg: AggregateSet, cfg: BinningConfig,
                       pairs: PValuePairs | None = None):
    """Direct whole-partition feasibility check and objective.

    Returns (feasible, objective).  This is the reference scorer: it looks at
    the complete partition with no incremental state, and is what the oracle,
    the local search, and the returned-solution postcheck all use.  Trends
    must be concrete (auto is resolved before scoring).
    """
    intervals = tuple(intervals)
    m = len(intervals)
    n = agg.n
    if m == 0 or intervals[0][0] != 0 or intervals[-1][1] != n - 1:
        return False, math.nan
    for (s1, e1), (s2, e2) in zip(intervals, intervals[1:]):
        if e1 + 1 != s2:
            return False, math.nan

    b_max = cfg.max_bins if cfg.max_bins is not None else n
    if not cfg.min_bins <= m <= b_max:
        return False, math.nan

    r_min = cfg.min_bin_size or 0
    r_max = cfg.max_bin_size if cfg.max_bin_size is not None else _POS_INF
    for s, e in intervals:
        if not r_min <= agg.R[e, s] <= r_max:
            return False, math.nan
    if agg.R_ne is not None:
        ne_min = cfg.min_nonevent or 0
        ne_max = cfg.max_nonevent if cfg.max_nonevent is not None else _POS_INF
        e_min = cfg.min_event or 0
        e_max = cfg.max_event if cfg.max_event is not None else _POS_INF
        for s, e in intervals:
            if not ne_min <= agg.R_ne[e, s] <= ne_max:
                return False, math.nan
            if not e_min <= agg.R_e[e, s] <= e_max:
                return False, math.nan

    trends = _resolved_trends(agg, cfg)
    for mat, trend in zip(agg.rate_matrices(), trends):
        rates = [mat[e, s] for s, e in intervals]
        if not _trend_feasible(intervals, rates, trend, cfg.min_diff):
            return False, math.nan

    if not apply_pvalue_constraint(intervals, pairs):
        return False, math.nan

    obj_mat = agg.objective_matrix()
    total = 0.0
    for s, e in intervals:
        total += obj_mat[e, s]
    gamma = cfg.gamma if cfg.concentration != CONC_OFF else 0.0
    if gamma:
        pen = gamma * concentration_penalty(intervals, agg.R, cfg.concentration)
        total = total + pen if agg.target.is_continuous else total - pen
    return True, total


# --------------------------------------------------------------------------- #
# presolve
# --------------------------------------------------------------------------- #

@dataclass(frozen=True)
class PresolveMask:
    """Intervals excluded from branching: (start, end) pairs fixed to zero."""

    n: int
    trend_kind: str
    forbidden: frozenset


def presolve_monotonic(D, trend: TrendSpec, min_diff: float = 0.0) -> PresolveMask:
    """Mask intervals that no monotone-feasible partition can contain.

    For ascending trends, the interval s..e (with e not last) needs its
    adjacent successor bin's rate at or above its own rate plus ``min_diff``;
    the best any successor starting at e+1 can offer is max_f D[f, e+1].
    Symmetrically, a non-first interval needs some predecessor ending at s-1
    with rate at or below its own minus ``min_diff``; the best available is
    min_g D[s-1, g].  An interval failing either comparison appears in no
    feasible solution, so masking it is sound under any constraint mix.
    Descending is the mirror image.  Empty for other trends.
    """
    if trend.kind not in (ASCENDING, DESCENDING):
        return PresolveMask(n=int(D.shape[0]), trend_kind=trend.kind,
                            forbidden=frozenset())
    n = D.shape[0]
    asc = trend.kind == ASCENDING
    # best successor rate after position e; best predecessor rate before s
    succ_best = np.empty(n)
    pred_best = np.empty(n)
    for e in range(n - 1):
        col = D[e + 1:, e + 1]
        succ_best[e] = col.max() if asc else col.min()
    succ_best[n - 1] = _POS_INF if asc else _NEG_INF
    for s in range(1, n):
        row = D[s - 1, :s]
        pred_best[s] = row.min() if asc else row.max()
    pred_best[0] = _NEG_INF if asc else _POS_INF

    forbidden = set()
    for s in range(n):
        for e in range(s, n - 1):
            d = D[e, s]
            if asc:
                dead = (succ_best[e] < d + min_diff - EPS
                        or pred_best[s] > d - min_diff + EPS)
            else:
                dead = (succ_best[e] > d - min_diff + EPS
                        or pred_best[s] < d + min_diff - EPS)
            if dead:
                forbidden.add((s, e))
        # the last interval has no successor; only the predecessor side applies
        if s > 0:
            d = D[n - 1, s]
            if asc:
                dead = pred_best[s] > d - min_diff + EPS
            else:
                dead = pred_best[s] < d + min_diff - EPS
            if dead:
                forbidden.add((s, n - 1))
    return PresolveMask(n=n, trend_kind=trend.kind, forbidden=frozenset(forbidden))


# --------------------------------------------------------------------------- #
# incremental trend gates for the branch and bound
# --------------------------------------------------------------------------- #

# A gate is (kind_code, min_diff, t); its state is a small tuple.  step()
# returns the new state or None when the extension kills the trend.

_G_NONE, _G_ASC, _G_DESC, _G_CONCAVE, _G_CONVEX = 0, 1, 2, 3, 4
_G_PEAK_AUTO, _G_VALLEY_AUTO, _G_PEAK_AT, _G_VALLEY_AT = 5, 6, 7, 8

_GATE_CODE = {
    TREND_NONE: _G_NONE, ASCENDING: _G_ASC, DESCENDING: _G_DESC,
    CONCAVE: _G_CONCAVE, CONVEX: _G_CONVEX,
}


def _make_gate(trend: TrendSpec, min_diff: float):
    """Build (code, beta, t, initial_state) for one rate matrix.

    Peak/valley trends with a pinned change point get the positional gate;
    free ones run as a two-phase automaton.
    """
    kind = trend.kind
    if kind in (PEAK, VALLEY):
        first_ref = _NEG_INF if kind == PEAK else _POS_INF
        if trend.change_point is not None:
            code = _G_PEAK_AT if kind == PEAK else _G_VALLEY_AT
            return (code, min_diff, trend.change_point, ("up", first_ref))
        code = _G_PEAK_AUTO if kind == PEAK else _G_VALLEY_AUTO
        return (code, min_diff, -1, ("up", first_ref))
    code = _GATE_CODE[kind]
    if code == _G_ASC:
        state = _NEG_INF
    elif code == _G_DESC:
        state = _POS_INF
    elif code == _G_CONCAVE:
        state = (_NEG_INF, _POS_INF)      # (max rate, min over pairs of 2rb-ra)
    elif code == _G_CONVEX:
        state = (_POS_INF, _NEG_INF)      # (min rate, max over pairs of 2rb-ra)
    else:
        state = ()                        # unconstrained; must not be None
    return (code, min_diff, -1, state)


def _gate_step(code: int, beta: float, t: int, state, d: float, s: int, e: int):
    """Advance one gate by a new bin with rate ``d`` spanning s..e."""
    if code == _G_NONE:
        return state
    if code == _G_ASC:
        if d < state + beta - EPS:
            return None
        return d if d > state else state
    if code == _G_DESC:
        if d > state - beta + EPS:
            return None
        return d if d < state else state
    if code == _G_CONCAVE:
        hi, min_pair = state
        if d > min_pair + EPS:
            return None
        if hi == _NEG_INF:                # first bin: no pair formed yet
            return (d, min_pair)
        pair = 2.0 * d - hi
        return (d if d > hi else hi, pair if pair < min_pair else min_pair)
    if code == _G_CONVEX:
        lo, max_pair = state
        if d < max_pair - EPS:
            return None
        if lo == _POS_INF:
            return (d, max_pair)
        pair = 2.0 * d - lo
        return (d if d < lo else lo, pair if pair > max_pair else max_pair)

    phase, ref = state
    up_first = code in (_G_PEAK_AUTO, _G_PEAK_AT)
    if code in (_G_PEAK_AT, _G_VALLEY_AT):
        # pinned change point: the bin containing pre-bin t closes the first
        # phase and opens the second (it belongs to both chains)
        if phase == "up":
            ok_first = d >= ref + beta - EPS if up_first else d <= ref - beta + EPS
            if not ok_first:
                return None
            if e >= t:                    # this is the change bin
                return ("down", d)
            if up_first:
                return ("up", d if d > ref else ref)
            return ("up", d if d < ref else ref)
        ok_second = d <= ref - beta + EPS if up_first else d >= ref + beta - EPS
        if not ok_second:
            return None
        if up_first:
            return ("down", d if d < ref else ref)
        return ("down", d if d > ref else ref)

    # free peak/valley automaton: stay in the first phase as long as the
    # chain extends; otherwise switch using the previous bin as change bin
    if phase == "up":
        if up_first:
            if d >= ref + beta - EPS:
                return ("up", d if d > ref else ref)
            if d <= ref - beta + EPS:
                return ("down", d)
            return None
        if d <= ref - beta + EPS:
            return ("up", d if d < ref else ref)
        if d >= ref + beta - EPS:
            return ("down", d)
        return None
    ok = d <= ref - beta + EPS if up_first else d >= ref + beta - EPS
    if not ok:
        return None
    if up_first:
        return ("down", d if d < ref else ref)
    return ("down", d if d > ref else ref)


# --------------------------------------------------------------------------- #
# the branch and bound
# --------------------------------------------------------------------------- #

def _branch_and_bound(agg: AggregateSet, cfg: BinningConfig,
                      pairs: PValuePairs | None, trends,
                      mask: PresolveMask | None = None):
    """Core DFS.  Returns (intervals, objective) of the best feasible
    partition or None.  ``trends`` holds one concrete TrendSpec per rate
    matrix.  Exploration order (interval end ascending at every level) makes
    the first solution found among objective/bin-count ties the
    lexicographically earliest start vector, so ties never replace the
    incumbent.
    """
    n = agg.n
    R = agg.R
    obj_mat = agg.objective_matrix()
    rate_mats = agg.rate_matrices()
    minimize = agg.target.is_continuous

    b_min = cfg.min_bins
    b_max = cfg.max_bins if cfg.max_bins is not None else n
    r_min = cfg.min_bin_size or 0
    r_max = cfg.max_bin_size if cfg.max_bin_size is not None else _POS_INF
    use_ne = agg.R_ne is not None
    if use_ne:
        ne_min = cfg.min_nonevent or 0
        ne_max = cfg.max_nonevent if cfg.max_nonevent is not None else _POS_INF
        e_min = cfg.min_event or 0
        e_max = cfg.max_event if cfg.max_event is not None else _POS_INF
    gamma = cfg.gamma if cfg.concentration != CONC_OFF else 0.0
    forbidden = mask.forbidden if mask is not None else None

    gates = [_make_gate(tr, cfg.min_diff) for tr in trends]
    init_states = tuple(g[3] for g in gates)

    # optimistic completion bound: divergence is superadditive under splits,
    # so all-singletons bounds any completion from s onward (penalty >= 0
    # only hurts); for minimization the diagonal is all zeros, bound is 0
    if not minimize:
        diag = np.array([obj_mat[z, z] for z in range(n)])
        suffix = np.concatenate((np.cumsum(diag[::-1])[::-1], [0.0]))

    best = {"obj": None, "nbins": 0, "intervals": None}
    path = []

    def leaf(v_sum):
        m = len(path)
        if m < b_min:
            return
        obj = v_sum
        if gamma:
            pen = gamma * concentration_penalty(path, R, cfg.concentration)
            obj = obj + pen if minimize else obj - pen
        cur = best["obj"]
        if cur is None:
            take = True
        elif minimize:
            take = obj < cur or (obj == cur and m < best["nbins"])
        else:
            take = obj > cur or (obj == cur and m < best["nbins"])
        if take:
            best["obj"] = obj
            best["nbins"] = m
            best["intervals"] = tuple(path)

    def rec(s, states, v_sum):
        used = len(path)
        if used + 1 > b_max:
            return
        if used + (n - s) < b_min:
            return
        cur = best["obj"]
        if cur is not None:
            if minimize:
                if v_sum > cur:
                    return
            elif v_sum + suffix[s] < cur:
                return
        prev = path[-1] if path else None
        for e in range(s, n):
            r = R[e, s]
            if r > r_max:
                break
            if r < r_min:
                continue
            if use_ne:
                ne = agg.R_ne[e, s]
                ev = agg.R_e[e, s]
                if ne > ne_max or ev > e_max:
                    break
                if ne < ne_min or ev < e_min:
                    continue
            if forbidden is not None and (s, e) in forbidden:
                continue
            if (pairs is not None and prev is not None
                    and pairs.blocks(prev[1], prev[0], e, s)):
                continue
            new_states = []
            dead = False
            for g, st, mat in zip(gates, states, rate_mats):
                nst = _gate_step(g[0], g[1], g[2], st, mat[e, s], s, e)
                if nst is None:
                    dead = True
                    break
                new_states.append(nst)
            if dead:
                continue
            path.append((s, e))
            if e == n - 1:
                leaf(v_sum + obj_mat[e, s])
            else:
                rec(e + 1, tuple(new_states), v_sum + obj_mat[e, s])
            path.pop()

    rec(0, init_states, 0.0)
    if best["intervals"] is None:
        return None
    return best["intervals"], best["obj"]


def _postcheck(sol: Solution, agg, cfg, pairs):
    if not sol.is_feasible:
        return sol
    feas, obj = evaluate_partition(sol.intervals, agg, cfg, pairs)
    if not feas or abs(obj - sol.objective) > 1e-9 * max(1.0, abs(obj)):
        raise AssertionError(
            "solver returned a partition failing its own postcheck: {} obj={} "
            "recheck=({}, {})".format(sol.intervals, sol.objective, feas, obj))
    return sol


def _single_trend_solve(agg, cfg, pairs, trend: TrendSpec, use_presolve: bool):
    """Solve for one concrete non-auto trend on a single rate matrix."""
    if trend.kind in (PEAK, VALLEY):
        return _peak_valley(agg, cfg, pairs, trend)
    mask = None
    if use_presolve and trend.is_monotonic and agg.D is not None:
        mask = presolve_monotonic(agg.D, trend, cfg.min_diff)
    hit = _branch_and_bound(agg, cfg, pairs, (trend,), mask)
    if hit is None:
        return Solution(status=INFEASIBLE, trend_used=trend, n_prebins=agg.n)
    intervals, obj = hit
    return _postcheck(
        Solution(status=OPTIMAL, intervals=intervals, objective=obj,
                 trend_used=trend, n_prebins=agg.n),
        agg, cfg, pairs)


def _peak_valley(agg, cfg, pairs, trend: TrendSpec):
    """Fixed-change-point decomposition of peak/valley trends.

    A pinned trend is one positional sub-solve.  A free trend solves each of
    the n candidate change points and keeps the best objective; among equal
    objectives the smallest t wins (its sub-solve ran first).
    """
    n = agg.n
    if trend.change_point is not None:
        if trend.change_point >= n:
            raise InvalidConfigError(
                ["change_point {} out of range for {} pre-bins".format(
                    trend.change_point, n)])
        candidates = [trend.change_point]
    else:
        candidates = list(range(n))

    best = None
    best_t = None
    minimize = agg.target.is_continuous
    for t in candidates:
        pinned = TrendSpec(trend.kind, t)
        hit = _branch_and_bound(agg, cfg, pairs, (pinned,))
        if hit is None:
            continue
        _, obj = hit
        if best is None or (obj < best[1] if minimize else obj > best[1]):
            best = hit
            best_t = t
    if best is None:
        return Solution(status=INFEASIBLE, trend_used=trend, n_prebins=n)
    intervals, obj = best
    sol = Solution(status=OPTIMAL, intervals=intervals, objective=obj,
                   trend_used=trend, change_point=best_t, n_prebins=n)
    return _postcheck(sol, agg, cfg, pairs)


# --------------------------------------------------------------------------- #
# automatic trend selection
# --------------------------------------------------------------------------- #

# relative-improvement threshold for preferring peak/valley over monotone
AUTO_MARGIN = 0.10


def _pick(solutions, minimize: bool):
    """Best of a candidate list: objective, then fewer bins, then list order."""
    best = None
    for sol in solutions:
        if sol is None or not sol.is_feasible:
            continue
        if best is None:
            best = sol
            continue
        if minimize:
            better = (sol.objective < best.objective
                      or (sol.objective == best.objective
                          and sol.n_bins < best.n_bins))
        else:
            better = (sol.objective > best.objective
                      or (sol.objective == best.objective
                          and sol.n_bins < best.n_bins))
        if better:
            best = sol
    return best


def _auto_pick(solve_one, minimize: bool, n_prebins: int) -> Solution:
    """The automatic-trend rule over a base solver.

    Solves descending/ascending and peak/valley; the peak/valley winner is
    kept only when it improves on the monotone winner by at least
    ``AUTO_MARGIN`` relative objective, mirroring "prefer the simpler shape
    unless the reversal buys a clearly better fit".  Ties inside each pair:
    fewer bins, then the listed order (descending before ascending, peak
    before valley).
    """
    mono = _pick([solve_one(TrendSpec(DESCENDING)), solve_one(TrendSpec(ASCENDING))],
                 minimize)
    bent = _pick([solve_one(TrendSpec(PEAK)), solve_one(TrendSpec(VALLEY))],
                 minimize)
    if mono is None and bent is None:
        return Solution(status=INFEASIBLE, trend_used=TrendSpec(AUTO),
                        n_prebins=n_prebins)
    if bent is None:
        return mono
    if mono is None:
        return bent
    if minimize:
        gain = ((mono.objective - bent.objective) / abs(mono.objective)
                if mono.objective != 0.0 else 0.0)
    else:
        gain = ((bent.objective - mono.objective) / abs(mono.objective)
                if mono.objective != 0.0
                else (_POS_INF if bent.objective > 0.0 else 0.0))
    return bent if gain >= AUTO_MARGIN else mono


def auto_trend(agg: AggregateSet, cfg: BinningConfig,
               pairs: PValuePairs | None = None, *,
               use_presolve: bool = False) -> Solution:
    """Solve with automatic trend selection (single rate matrix targets)."""
    validate_config(cfg)

    def solve_one(tr):
        return _single_trend_solve(agg, with_trend(cfg, tr), pairs, tr,
                                   use_presolve)

    return _auto_pick(solve_one, agg.target.is_continuous, agg.n)


# --------------------------------------------------------------------------- #
# public solve entry points
# --------------------------------------------------------------------------- #

def solve_peak_valley(agg: AggregateSet, cfg: BinningConfig,
                      pairs: PValuePairs | None = None) -> Solution:
    """Peak/valley solve via the change-point decomposition."""
    validate_config(cfg)
    if not isinstance(cfg.trend, TrendSpec) or cfg.trend.kind not in (PEAK, VALLEY):
        raise InvalidConfigError(
            ["solve_peak_valley needs a peak or valley trend; got {!r}"
             .format(cfg.trend)])
    return _peak_valley(agg, cfg, pairs, cfg.trend)


def _class_view(agg: AggregateSet, c: int) -> AggregateSet:
    """One class's one-vs-rest problem as a standalone aggregate set."""
    return AggregateSet(n=agg.n, target=TargetKind.binary(),
                        divergence=agg.divergence, R=agg.R,
                        V=agg.class_V[c], D=agg.class_D[c])


def _resolve_class_trends(agg, cfg, pairs, base_solver):
    """Replace per-class Auto trends with concrete winners.

    Each Auto class is resolved on its own one-vs-rest matrices (same size and
    record constraints, no other classes), using ``base_solver`` so the exact
    path and the oracle path resolve identically.  Returns the concrete trend
    tuple, or None when some class admits no feasible trend at all (the joint
    problem is then infeasible too, since it only adds constraints).
    """
    trends = list(_resolved_trends(agg, cfg))
    for c, tr in enumerate(trends):
        if tr.kind != AUTO:
            continue
        view = _class_view(agg, c)

        def solve_one(t, _view=view):
            return base_solver(_view, with_trend(cfg, t), pairs)

        won = _auto_pick(solve_one, False, agg.n)
        if not won.is_feasible:
            return None
        trends[c] = won.trend_used
    return tuple(trends)


def solve_multiclass(agg: AggregateSet, cfg: BinningConfig,
                     pairs: PValuePairs | None = None, *,
                     use_presolve: bool = False) -> Solution:
    """Joint solve over a shared partition with per-class trends.

    The objective is the summed per-class divergence; each class's trend binds
    its own one-vs-rest rate sequence.  Only record-count and bin-count size
    bounds apply (non-event/event bounds are binary-target notions).  Free
    peak/valley trends run as incremental two-phase automata here (a per-class
    change-point product would explode); pinned ones are honored exactly.
    """
    validate_config(cfg)
    if not agg.target.is_multiclass:
        raise InvalidConfigError(["solve_multiclass needs a multi-class aggregate"])

    def base(view, c_cfg, c_pairs):
        tr = c_cfg.trend
        return _single_trend_solve(view, c_cfg, c_pairs, tr, use_presolve)

    trends = _resolve_class_trends(agg, cfg, pairs, base)
    if trends is None:
        return Solution(status=INFEASIBLE, trend_used=cfg.trend, n_prebins=agg.n)
    cfg = with_trend(cfg, trends)

    mask = None
    if use_presolve:
        forbidden = set()
        for c, tr in enumerate(trends):
            if tr.is_monotonic:
                m = presolve_monotonic(agg.class_D[c], tr, cfg.min_diff)
                forbidden |= m.forbidden
        if forbidden:
            mask = PresolveMask(n=agg.n, trend_kind="multiclass",
                                forbidden=frozenset(forbidden))

    hit = _branch_and_bound(agg, cfg, pairs, trends, mask)
    if hit is None:
        return Solution(status=INFEASIBLE, trend_used=trends, n_prebins=agg.n)
    intervals, obj = hit
    return _postcheck(
        Solution(status=OPTIMAL, intervals=intervals, objective=obj,
                 trend_used=trends, n_prebins=agg.n),
        agg, cfg, pairs)


def solve(agg: AggregateSet, cfg: BinningConfig,
          pairs: PValuePairs | None = None, *,
          use_presolve: bool = False) -> Solution:
    """Solve the constrained bin-merging problem exactly.

    Dispatches on target kind and trend; returns an OPTIMAL solution, or an
    INFEASIBLE one when no partition satisfies the constraints.  Deterministic:
    identical inputs give identical solutions (ties resolved by fewer bins,
    then earliest interval start vector).
    """
    validate_config(cfg)
    if agg.target.is_multiclass:
        return solve_multiclass(agg, cfg, pairs, use_presolve=use_presolve)
    if not isinstance(cfg.trend, TrendSpec):
        raise InvalidConfigError(
            ["a tuple of trends is only valid for multi-class targets"])
    if cfg.trend.kind == AUTO:
        return auto_trend(agg, cfg, pairs, use_presolve=use_presolve)
    return _single_trend_solve(agg, cfg, pairs, cfg.trend, use_presolve)


# --------------------------------------------------------------------------- #
# brute-force reference
# --------------------------------------------------------------------------- #

def _all_partitions(n: int):
    """Every partition of 0..n-1 into contiguous intervals, as a generator."""
    for bits in range(1 << (n - 1)):
        intervals = []
        start = 0
        for pos in range(n - 1):
            if bits >> pos & 1:
                intervals.append((start, pos))
                start = pos + 1
        intervals.append((start, n - 1))
        yield tuple(intervals)


def brute_force_oracle(agg: AggregateSet, cfg: BinningConfig,
                       pairs: PValuePairs | None = None) -> Solution:
    """Reference solver: enumerate all 2^(n-1) partitions and score directly.

    Independent of the branch-and-bound path: each partition is checked as a
    whole via evaluate_partition.  Same tie-breaking as solve().  Only for
    small n (<= 20).
    """
    validate_config(cfg)
    n = agg.n
    if n > 20:
        raise ValueError("oracle is exponential; n={} is too large".format(n))

    minimize = agg.target.is_continuous

    if agg.target.is_multiclass:
        def base(view, c_cfg, c_pairs):
            return brute_force_oracle(view, c_cfg, c_pairs)

        trends = _resolve_class_trends(agg, cfg, pairs, base)
        if trends is None:
            return Solution(status=INFEASIBLE, trend_used=cfg.trend, n_prebins=n)
        cfg = with_trend(cfg, trends)
        used = trends
    elif isinstance(cfg.trend, TrendSpec) and cfg.trend.kind == AUTO:
        def solve_one(tr):
            return brute_force_oracle(agg, with_trend(cfg, tr), pairs)

        return _auto_pick(solve_one, minimize, n)
    else:
        used = cfg.trend

    best = None
    for intervals in _all_partitions(n):
        feasible, obj = evaluate_partition(intervals, agg, cfg, pairs)
        if not feasible:
            continue
        if best is None:
            best = (obj, len(intervals), intervals)
            continue
        b_obj, b_m, b_iv = best
        starts = tuple(s for s, _ in intervals)
        b_starts = tuple(s for s, _ in b_iv)
        if minimize:
            better = (obj < b_obj
                      or (obj == b_obj and len(intervals) < b_m)
                      or (obj == b_obj and len(intervals) == b_m
                          and starts < b_starts))
        else:
            better = (obj > b_obj
                      or (obj == b_obj and len(intervals) < b_m)
                      or (obj == b_obj and len(intervals) == b_m
                          and starts < b_starts))
        if better:
            best = (obj, len(intervals), intervals)
    if best is None:
        return Solution(status=INFEASIBLE, trend_used=used, n_prebins=n)
    obj, _, intervals = best
    return Solution(status=OPTIMAL, intervals=intervals, objective=obj,
                    trend_used=used, n_prebins=n)
