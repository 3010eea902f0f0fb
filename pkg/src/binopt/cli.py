"""Command line: fit a binning from a CSV, transform values, print reports.

Three subcommands:

- ``fit``: read one variable and the target from a CSV file, fit an optimal
  binning under the requested constraints, print the binning table and write
  the model as deterministic JSON (sorted keys, no timestamps — refitting the
  same data byte-identically reproduces the file).
- ``transform``: map raw values through a fitted model to WoE values, bin
  means, or bin indices.
- ``report``: re-print the binning table of a stored model.

Exit codes: 0 success, 2 no feasible binning for the data and constraints,
3 bad input (unreadable files, unknown columns, malformed values or flags).
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from dataclasses import replace

import numpy as np

from .core import (
    BinningConfig, BinStats, BinningModel, TargetKind, TrendSpec,
    InputError, InvalidConfigError, InfeasibleError, DegenerateColumnError,
    ZeroCountError, BinoptError, MalformedEncodingError,
    validate_config, DIV_IV,
)
from . import preprocess
from . import aggregate
from .solver import solve
from .localsearch import ls_solve
from . import quality as quality_mod

EXIT_OK = 0
EXIT_INFEASIBLE = 2
EXIT_INPUT_ERROR = 3

NUMERIC = "numeric"
CATEGORICAL = "categorical"


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad flags; remap to the input-error code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT_ERROR,
                  "{}: error: {}\n".format(self.prog, message))


# --------------------------------------------------------------------------- #
# input handling
# --------------------------------------------------------------------------- #

def _read_column(path: str, name: str) -> list:
    """One named column from an RFC-4180 CSV file, as raw strings."""
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise InputError("cannot read {}: {}".format(path, exc)) from exc
    if not rows:
        raise InputError("{} is empty".format(path))
    header = rows[0]
    if name not in header:
        raise InputError("no column {!r} in {} (found: {})"
                         .format(name, path, ", ".join(header)))
    col = header.index(name)
    out = []
    for i, row in enumerate(rows[1:], start=2):
        if not row:
            continue            # blank line
        if col >= len(row):
            raise InputError("{} line {}: missing field {!r}"
                             .format(path, i, name))
        out.append(row[col])
    return out


def _infer_dtype(tokens, missing_token: str) -> str:
    """Numeric when every non-missing token parses as a float."""
    seen = False
    for tok in tokens:
        if tok == missing_token:
            continue
        seen = True
        try:
            float(tok)
        except ValueError:
            return CATEGORICAL
    if not seen:
        raise InputError("variable column holds no non-missing values")
    return NUMERIC


def _parse_variable(tokens, dtype: str, missing_token: str) -> list:
    out = []
    for i, tok in enumerate(tokens, start=1):
        if tok == missing_token:
            out.append(None)
        elif dtype == NUMERIC:
            try:
                out.append(float(tok))
            except ValueError:
                raise InputError(
                    "row {}: cannot parse {!r} as a number".format(i, tok)
                ) from None
        else:
            out.append(tok)
    return out


def _parse_target(tokens, kind: TargetKind, missing_token: str):
    """Parse the target column; returns (values, possibly-updated kind).

    Multi-class targets are recoded to 0..K-1 in sorted label order, and the
    class count is inferred from the data.
    """
    if any(tok == missing_token for tok in tokens):
        bad = next(i for i, tok in enumerate(tokens, 1) if tok == missing_token)
        raise InputError("row {}: target value is missing".format(bad))
    if kind.is_binary:
        out = []
        for i, tok in enumerate(tokens, start=1):
            try:
                v = float(tok)
            except ValueError:
                v = None
            if v not in (0.0, 1.0):
                raise InputError(
                    "row {}: binary target must be 0 or 1; got {!r}".format(i, tok))
            out.append(int(v))
        return out, kind
    if kind.is_continuous:
        out = []
        for i, tok in enumerate(tokens, start=1):
            try:
                out.append(float(tok))
            except ValueError:
                raise InputError(
                    "row {}: cannot parse target {!r} as a number".format(i, tok)
                ) from None
        return out, kind
    labels = []
    for i, tok in enumerate(tokens, start=1):
        try:
            v = float(tok)
        except ValueError:
            raise InputError(
                "row {}: cannot parse class label {!r}".format(i, tok)) from None
        if v != int(v):
            raise InputError(
                "row {}: class labels must be integers; got {!r}".format(i, tok))
        labels.append(int(v))
    classes = sorted(set(labels))
    if len(classes) < 3:
        raise InputError(
            "multiclass target has {} distinct labels; use a binary target"
            .format(len(classes)))
    code = {c: k for k, c in enumerate(classes)}
    return [code[v] for v in labels], TargetKind.multiclass(len(classes))


def _parse_specials(text: str | None, dtype: str) -> tuple:
    if not text:
        return ()
    parts = [p.strip() for p in text.split(",") if p.strip() != ""]
    if dtype == NUMERIC:
        out = []
        for p in parts:
            try:
                out.append(float(p))
            except ValueError:
                raise InputError(
                    "special value {!r} is not a number".format(p)) from None
        return tuple(out)
    return tuple(parts)


def _parse_trend(text: str):
    if "," in text:
        return tuple(TrendSpec.parse(p) for p in text.split(","))
    return TrendSpec.parse(text)


# --------------------------------------------------------------------------- #
# fitting
# --------------------------------------------------------------------------- #

def _pool_stats(ys, target_kind: TargetKind, ne_total: float,
                e_total: float) -> BinStats:
    """Stats of an out-of-optimization pool (special / missing / others).

    WoE and divergence columns fall back to 0 whenever a count that the
    formula needs is zero, so empty pools always render as neutral rows.
    """
    count = len(ys)
    if target_kind.is_binary:
        event = int(sum(ys))
        nonevent = count - event
        rate = event / count if count else 0.0
        w = iv = js = 0.0
        if nonevent > 0 and event > 0 and ne_total > 0 and e_total > 0:
            w = aggregate.woe(nonevent, event, ne_total, e_total)
            iv = aggregate.divergence_contrib(
                nonevent / ne_total, event / e_total, "iv")
        if ne_total > 0 and e_total > 0:
            js = aggregate.divergence_contrib(
                nonevent / ne_total, event / e_total, "jsd")
        return BinStats(count=count, nonevent=nonevent, event=event,
                        event_rate=rate, woe=w, iv_contrib=iv, js_contrib=js)
    if target_kind.is_continuous:
        total = float(sum(ys))
        return BinStats(count=count, sum=total,
                        mean=total / count if count else 0.0)
    counts = [0] * target_kind.n_classes
    for y in ys:
        counts[int(y)] += 1
    return BinStats(count=count, class_counts=tuple(counts))


def _fit(values, target, target_kind: TargetKind, cfg: BinningConfig,
         variable: str, dtype: str, *, solver_name: str = "exact",
         seed: int = 0, time_budget: float | None = None) -> BinningModel:
    """End-to-end fit: route records, pre-bin, aggregate, solve, tabulate.

    Raises InfeasibleError when no partition satisfies the constraints.
    """
    validate_config(cfg)
    (xc, yc), (xs, ys_special), (xm, ys_missing) = \
        preprocess.split_missing_special(values, target, cfg.special_values)
    if not xc:
        raise DegenerateColumnError(
            "no records left after routing special and missing values")

    others: tuple = ()
    ys_others: list = []
    if dtype == NUMERIC:
        splits = preprocess.prebin_numeric(xc, cfg.prebin_count,
                                           cfg.prebin_min_frac)
        table = preprocess.build_prebin_table(xc, yc, target_kind,
                                              splits=splits)
    else:
        cats, others = preprocess.prebin_categorical(
            xc, yc, cfg.cat_others_cutoff, target_kind)
        pooled = set(others)
        kept = [(x, y) for x, y in zip(xc, yc) if str(x) not in pooled]
        ys_others = [y for x, y in zip(xc, yc) if str(x) in pooled]
        if not kept:
            raise DegenerateColumnError("every category fell into the others pool")
        table = preprocess.build_prebin_table(
            [x for x, _ in kept], [y for _, y in kept], target_kind,
            groups=tuple((c,) for c in cats))

    if target_kind.is_binary:
        table = preprocess.refine_prebins(table)
        agg = aggregate.build_binary(table, cfg.divergence)
    elif target_kind.is_continuous:
        agg = aggregate.build_continuous(table, cfg.norm_p)
    else:
        table = preprocess.refine_prebins_multiclass(table)
        agg = aggregate.build_multiclass(table, cfg.divergence)

    if cfg.min_bin_size is None:
        cfg = replace(cfg, min_bin_size=int(math.ceil(0.05 * agg.n_records)))
        validate_config(cfg)

    pairs = None
    if cfg.max_pvalue is not None and target_kind.is_binary:
        pairs = aggregate.pvalue_pairs(agg.R_ne, agg.R_e, cfg.max_pvalue)

    if solver_name == "ls":
        sol = ls_solve(agg, cfg, pairs, seed=seed, time_limit=time_budget)
    else:
        sol = solve(agg, cfg, pairs, use_presolve=True)
    if not sol.is_feasible:
        raise InfeasibleError(
            "no binning of {!r} satisfies the constraints".format(variable))

    # -- per-bin statistics over the solved partition ------------------------ #
    # Report WoE/IV/JS against the grand totals (special, missing and others
    # rows included), so the printed columns stay mutually consistent however
    # many records sit outside the optimization.
    ne_total = e_total = 0.0
    if target_kind.is_binary:
        out_events = sum(ys_special) + sum(ys_missing) + sum(ys_others)
        out_count = len(ys_special) + len(ys_missing) + len(ys_others)
        e_total = float(np.sum(table.event)) + out_events
        ne_total = float(np.sum(table.nonevent)) + (out_count - out_events)
    bins = []
    transform_values = []
    for s, e in sol.intervals:
        count = int(np.sum(table.count[s:e + 1]))
        if target_kind.is_binary:
            ne = int(np.sum(table.nonevent[s:e + 1]))
            ev = int(np.sum(table.event[s:e + 1]))
            w = aggregate.woe(ne, ev, ne_total, e_total)
            bins.append(BinStats(
                count=count, nonevent=ne, event=ev, event_rate=ev / count,
                woe=w,
                iv_contrib=aggregate.divergence_contrib(
                    ne / ne_total, ev / e_total, "iv"),
                js_contrib=aggregate.divergence_contrib(
                    ne / ne_total, ev / e_total, "jsd")))
            transform_values.append(w)
        elif target_kind.is_continuous:
            total = float(np.sum(table.total[s:e + 1]))
            mean = total / count
            bins.append(BinStats(count=count, sum=total, mean=mean))
            transform_values.append(mean)
        else:
            counts = tuple(int(np.sum(table.class_events[c][s:e + 1]))
                           for c in range(target_kind.n_classes))
            bins.append(BinStats(count=count, class_counts=counts))

    special = _pool_stats(ys_special, target_kind, ne_total, e_total)
    missing = _pool_stats(ys_missing, target_kind, ne_total, e_total)
    others_stats = None
    if others:
        others_stats = _pool_stats(ys_others, target_kind, ne_total, e_total)

    q = None
    if target_kind.is_binary:
        total_div = sum(b.iv_contrib if cfg.divergence == DIV_IV
                        else b.js_contrib for b in bins)
        report = quality_mod.assess(
            [b.nonevent for b in bins], [b.event for b in bins], total_div,
            divergence_kind=cfg.divergence)
        q = report.score

    if isinstance(sol.trend_used, TrendSpec):
        trend_text = sol.trend_used.as_text()
    else:
        trend_text = ",".join(t.as_text() for t in sol.trend_used)

    model_splits = ()
    model_groups = ()
    if dtype == NUMERIC:
        model_splits = tuple(float(table.splits[e]) for _, e in sol.intervals[:-1])
    else:
        model_groups = tuple(
            tuple(lab for g in table.groups[s:e + 1] for lab in g)
            for s, e in sol.intervals)

    return BinningModel(
        variable=variable, dtype=dtype, target_kind=target_kind,
        splits=model_splits, groups=model_groups, others=tuple(others),
        bins=tuple(bins), special=special, missing=missing,
        others_stats=others_stats,
        transform_values=tuple(transform_values),
        special_value=special.woe if target_kind.is_binary else special.mean,
        missing_value=missing.woe if target_kind.is_binary else missing.mean,
        others_value=(others_stats.woe if target_kind.is_binary
                      else others_stats.mean) if others_stats else 0.0,
        quality=q, objective=float(sol.objective), trend_used=trend_text,
        config=cfg)


# --------------------------------------------------------------------------- #
# transform
# --------------------------------------------------------------------------- #

def _row_labels(model: BinningModel) -> list:
    """Table row labels: optimized bins, then Others / Special / Missing."""
    labels = []
    if model.dtype == NUMERIC:
        edges = [float("-inf"), *model.splits, float("inf")]
        for i in range(len(edges) - 1):
            lo = "(-inf" if math.isinf(edges[i]) else "[{:g}".format(edges[i])
            hi = "inf)" if math.isinf(edges[i + 1]) else "{:g})".format(edges[i + 1])
            labels.append("{}, {}".format(lo, hi))
    else:
        labels.extend("[{}]".format(", ".join(g)) for g in model.groups)
    if model.others:
        labels.append("Others")
    labels.append("Special")
    labels.append("Missing")
    return labels


def transform_value(model: BinningModel, v, mode: str):
    """Map one raw value through the fitted binning.

    Index mode numbers the table rows: optimized bins first, then Others
    (categorical models with a pool), then Special, then Missing.
    """
    m = len(model.transform_values) or len(model.bins)
    has_others = bool(model.others)
    idx_others = m
    idx_special = m + (1 if has_others else 0)
    idx_missing = idx_special + 1

    if v is None or (isinstance(v, float) and math.isnan(v)):
        return idx_missing if mode == "index" else model.missing_value
    if model.dtype == NUMERIC:
        if v in model.config.special_values:
            return idx_special if mode == "index" else model.special_value
        k = int(np.searchsorted(np.asarray(model.splits), v, side="right"))
        return k if mode == "index" else model.transform_values[k]
    label = str(v)
    if label in model.config.special_values:
        return idx_special if mode == "index" else model.special_value
    for k, group in enumerate(model.groups):
        if label in group:
            return k if mode == "index" else model.transform_values[k]
    if model.others:
        # unseen categories are rare by definition: route to the pool
        return idx_others if mode == "index" else model.others_value
    raise InputError("unknown category {!r} and the model has no others pool"
                     .format(label))


def transform_values(model: BinningModel, values, mode: str = "auto") -> list:
    if mode == "auto":
        mode = {"binary": "woe", "continuous": "mean",
                "multiclass": "index"}[model.target_kind.kind]
    allowed = {"binary": ("woe", "index"), "continuous": ("mean", "index"),
               "multiclass": ("index",)}[model.target_kind.kind]
    if mode not in allowed:
        raise InputError("mode {!r} not available for a {} target (use {})"
                         .format(mode, model.target_kind.kind,
                                 " or ".join(allowed)))
    return [transform_value(model, v, mode) for v in values]


# --------------------------------------------------------------------------- #
# report rendering
# --------------------------------------------------------------------------- #

def _format_table(rows, header) -> str:
    widths = [max(len(str(r[c])) for r in [header, *rows])
              for c in range(len(header))]
    def line(vals):
        return "  ".join(str(v).rjust(w) if i else str(v).ljust(w)
                         for i, (v, w) in enumerate(zip(vals, widths)))
    sep = "  ".join("-" * w for w in widths)
    return "\n".join([line(header), sep, *map(line, rows)])


def render_table(model: BinningModel) -> str:
    """The binning table: per-bin rows plus Others/Special/Missing."""
    labels = _row_labels(model)
    stats = list(model.bins)
    if model.others:
        stats.append(model.others_stats)
    stats.extend([model.special, model.missing])
    total = sum(b.count for b in stats)

    def pct(c):
        return "{:.2%}".format(c / total) if total else "0.00%"

    if model.target_kind.is_binary:
        header = ["Bin", "Count", "Count (%)", "Non-event", "Event",
                  "Event rate", "WoE", "IV", "JS"]
        rows = [[lab, b.count, pct(b.count), b.nonevent, b.event,
                 "{:.5f}".format(b.event_rate), "{:.5f}".format(b.woe),
                 "{:.5f}".format(b.iv_contrib), "{:.5f}".format(b.js_contrib)]
                for lab, b in zip(labels, stats)]
    elif model.target_kind.is_continuous:
        header = ["Bin", "Count", "Count (%)", "Sum", "Mean"]
        rows = [[lab, b.count, pct(b.count), "{:.5f}".format(b.sum),
                 "{:.5f}".format(b.mean)]
                for lab, b in zip(labels, stats)]
    else:
        k = model.target_kind.n_classes
        header = ["Bin", "Count", "Count (%)"] + \
                 ["Class {}".format(c) for c in range(k)]
        rows = []
        for lab, b in zip(labels, stats):
            cc = list(b.class_counts) if b.class_counts else [0] * k
            rows.append([lab, b.count, pct(b.count), *cc])
    return _format_table(rows, header)


def render_summary(model: BinningModel) -> str:
    lines = ["variable: {} ({})".format(model.variable, model.dtype),
             "target: {}".format(model.target_kind.kind),
             "trend: {}".format(model.trend_used),
             "objective: {:.6f}".format(model.objective)]
    if model.quality is not None:
        lines.append("quality: {:.6f}".format(model.quality))
    return "\n".join(lines)


def render_quality(model: BinningModel) -> str:
    """Quality block for a binary model: score, divergence + label, p-values."""
    rep = quality_mod.assess(
        [b.nonevent for b in model.bins], [b.event for b in model.bins],
        sum(b.iv_contrib if model.config.divergence == DIV_IV else b.js_contrib
            for b in model.bins),
        divergence_kind=model.config.divergence)
    lines = ["quality score: {:.6f}".format(rep.score),
             "divergence: {:.6f} ({})".format(rep.divergence, rep.label),
             "adjacent p-values: {}".format(
                 " ".join("{:.4f}".format(p) for p in rep.pvalues) or "-")]
    return "\n".join(lines)


# --------------------------------------------------------------------------- #
# subcommands
# --------------------------------------------------------------------------- #

def cmd_fit(args) -> int:
    raw = _read_column(args.data, args.variable)
    raw_target = _read_column(args.data, args.target)
    dtype = args.dtype
    if dtype == "auto":
        dtype = _infer_dtype(raw, args.missing_token)
    values = _parse_variable(raw, dtype, args.missing_token)
    kind = {"binary": TargetKind.binary(),
            "continuous": TargetKind.continuous(),
            "multiclass": TargetKind(kind="multiclass", n_classes=0)}[
        args.target_kind]
    target, kind = _parse_target(raw_target, kind, args.missing_token)

    cfg = BinningConfig(
        min_bins=args.min_bins, max_bins=args.max_bins,
        min_bin_size=args.min_bin_size, min_diff=args.min_diff,
        concentration=args.concentration, gamma=args.gamma,
        max_pvalue=args.max_pvalue, trend=_parse_trend(args.trend),
        divergence=args.divergence, prebin_count=args.prebins,
        special_values=_parse_specials(args.special_values, dtype),
        cat_others_cutoff=args.others_cutoff)

    model = _fit(values, target, kind, cfg, args.variable, dtype,
                 solver_name=args.solver, seed=args.seed,
                 time_budget=args.time_budget)
    if args.model:
        with open(args.model, "w", encoding="utf-8") as fh:
            fh.write(model.to_json())
            fh.write("\n")
    if args.format == "json":
        print(model.to_json())
    else:
        print(render_summary(model))
        print()
        print(render_table(model))
    return EXIT_OK


def _load_model(path: str) -> BinningModel:
    try:
        with open(path, encoding="utf-8") as fh:
            return BinningModel.from_json(fh.read())
    except OSError as exc:
        raise InputError("cannot read model {}: {}".format(path, exc)) from exc


def cmd_transform(args) -> int:
    model = _load_model(args.model)
    variable = args.variable or model.variable
    raw = _read_column(args.data, variable)
    values = _parse_variable(raw, model.dtype, args.missing_token)
    out = transform_values(model, values, args.mode)
    text = "\n".join(str(v) if isinstance(v, int) else "{:.6f}".format(v)
                     for v in out)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
            fh.write("\n")
    else:
        print(text)
    return EXIT_OK


def cmd_report(args) -> int:
    model = _load_model(args.model)
    if not model.target_kind.is_binary:
        raise InputError("quality reports need a binary-target model; this one "
                         "is {}".format(model.target_kind.kind))
    if args.format == "json":
        print(model.to_json())
    else:
        print(render_summary(model))
        print()
        print(render_quality(model))
        print()
        print(render_table(model))
    return EXIT_OK


# --------------------------------------------------------------------------- #
# entry point
# --------------------------------------------------------------------------- #

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="binopt",
                     description="Optimal binning of one variable against a "
                                 "binary, continuous, or multi-class target.")
    sub = parser.add_subparsers(dest="command", required=True)

    fit = sub.add_parser("fit", help="fit a binning from a CSV file")
    fit.add_argument("--data", required=True, help="input CSV path")
    fit.add_argument("--variable", required=True, help="column to bin")
    fit.add_argument("--target", required=True, help="target column")
    fit.add_argument("--target-kind", default="binary",
                     choices=["binary", "continuous", "multiclass"])
    fit.add_argument("--dtype", default="auto",
                     choices=["auto", "numeric", "categorical"],
                     help="variable type (default: infer)")
    fit.add_argument("--trend", default="none",
                     help="none|ascending|descending|concave|convex|peak[:T]"
                          "|valley[:T]|auto; comma-separated per class for "
                          "multiclass targets")
    fit.add_argument("--min-bins", type=int, default=2)
    fit.add_argument("--max-bins", type=int, default=None)
    fit.add_argument("--min-bin-size", type=int, default=None,
                     help="records per bin (default: 5%% of optimized records)")
    fit.add_argument("--max-pvalue", type=float, default=None,
                     help="enforce two-proportion separation at this level")
    fit.add_argument("--min-diff", type=float, default=0.0,
                     help="minimum event-rate gap for monotonic trends")
    fit.add_argument("--concentration", default="off",
                     choices=["off", "std", "hhi", "maxmin"])
    fit.add_argument("--gamma", type=float, default=0.0,
                     help="concentration penalty weight")
    fit.add_argument("--divergence", default="iv", choices=["iv", "jsd"])
    fit.add_argument("--special-values", default=None,
                     help="comma-separated values routed to the Special bin")
    fit.add_argument("--others-cutoff", type=float, default=0.0,
                     help="pool categories rarer than this share")
    fit.add_argument("--prebins", type=int, default=20,
                     help="maximum number of pre-bins")
    fit.add_argument("--solver", default="exact", choices=["exact", "ls"])
    fit.add_argument("--time-budget", type=float, default=None,
                     help="wall-clock cap in seconds (ls solver only)")
    fit.add_argument("--seed", type=int, default=0,
                     help="random seed (ls solver only)")
    fit.add_argument("--model", default=None, help="write the model JSON here")
    fit.add_argument("--missing-token", default="",
                     help="CSV token meaning 'missing' (default: empty cell)")
    fit.add_argument("--format", default="table", choices=["table", "json"])
    fit.set_defaults(func=cmd_fit)

    tr = sub.add_parser("transform", help="map values through a fitted model")
    tr.add_argument("--model", required=True, help="model JSON path")
    tr.add_argument("--data", required=True, help="input CSV path")
    tr.add_argument("--variable", default=None,
                    help="column to transform (default: the fitted one)")
    tr.add_argument("--mode", default="auto",
                    choices=["auto", "woe", "mean", "index"])
    tr.add_argument("--output", default=None,
                    help="write one value per line here instead of stdout")
    tr.add_argument("--missing-token", default="")
    tr.set_defaults(func=cmd_transform)

    rep = sub.add_parser("report", help="print the table of a stored model")
    rep.add_argument("--model", required=True, help="model JSON path")
    rep.add_argument("--format", default="table", choices=["table", "json"])
    rep.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, InvalidConfigError, MalformedEncodingError) as exc:
        print("error: {}".format(exc), file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (InfeasibleError, DegenerateColumnError, ZeroCountError) as exc:
        print("infeasible: {}".format(exc), file=sys.stderr)
        return EXIT_INFEASIBLE
    except BinoptError as exc:
        print("error: {}".format(exc), file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
