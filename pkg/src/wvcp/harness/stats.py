"""Pairwise significance of mean best scores (Welch t-test)."""

from __future__ import annotations

import warnings
from collections import defaultdict
from dataclasses import dataclass

import numpy as np
from scipy import stats

ALPHA = 1e-3


@dataclass
class ComparisonCell:
    method_a: str
    method_b: str
    instance: str
    mean_a: float
    mean_b: float
    p_value: float
    significant: bool

    @property
    def a_better(self) -> bool:
        return self.significant and self.mean_a < self.mean_b

    @property
    def b_better(self) -> bool:
        return self.significant and self.mean_b < self.mean_a


def welch_p_value(a, b) -> float:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    va, vb = a.var(ddof=1), b.var(ddof=1)
    if va == 0 and vb == 0:
        return 1.0 if a.mean() == b.mean() else 0.0
    with warnings.catch_warnings():
        # one constant sample trips scipy's precision-loss check; the result is still exact
        warnings.simplefilter("ignore", RuntimeWarning)
        return float(stats.ttest_ind(a, b, equal_var=False).pvalue)


def _scores_by_instance(records, method):
    out = defaultdict(list)
    for r in records:
        if r.method == method:
            out[r.instance].append(r.best_score)
    return out


def compare(records, method_a: str, method_b: str, alpha: float = ALPHA) -> list[ComparisonCell]:
    sa = _scores_by_instance(records, method_a)
    sb = _scores_by_instance(records, method_b)
    cells = []
    for inst in sorted(set(sa) & set(sb)):
        a, b = sa[inst], sb[inst]
        if len(a) < 2 or len(b) < 2:
            raise ValueError(f"{inst}: need at least 2 runs per method for a t-test")
        p = welch_p_value(a, b)
        ma, mb = float(np.mean(a)), float(np.mean(b))
        cells.append(ComparisonCell(method_a, method_b, inst, ma, mb, p, p < alpha and ma != mb))
    return cells


def significance_matrix(records, methods, alpha: float = ALPHA) -> dict[tuple[str, str], int]:
    """``m[(a, b)]`` = instances where ``a`` is significantly better than ``b``."""
    m = {}
    for a in methods:
        for b in methods:
            if a != b:
                m[(a, b)] = sum(c.a_better for c in compare(records, a, b, alpha))
    return m


def format_cells(cells) -> str:
    lines = ["instance,method_a,method_b,mean_a,mean_b,p_value,significant,better"]
    for c in cells:
        better = c.method_a if c.a_better else c.method_b if c.b_better else "-"
        lines.append(f"{c.instance},{c.method_a},{c.method_b},{c.mean_a:.3f},{c.mean_b:.3f},"
                     f"{c.p_value:.3g},{int(c.significant)},{better}")
    return "\n".join(lines) + "\n"


def format_matrix(matrix, methods) -> str:
    width = max(len(m) for m in methods) + 2
    head = " " * width + "".join(f"{m:>{width}}" for m in methods)
    rows = [head]
    for a in methods:
        cells = "".join(f"{'-' if a == b else matrix[(a, b)]:>{width}}" for b in methods)
        rows.append(f"{a:<{width}}{cells}")
    return "\n".join(rows) + "\n"
