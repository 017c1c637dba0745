"""Reduced mutual information.

The reduced mutual information of two partitions is

    M = (1/n) log[ n! prod_rs n_rs! / (prod_r a_r! prod_s b_s!) ] - (1/n) log Omega(a, b)

where ``Omega(a, b)`` is the number of non-negative integer tables with row
sums ``a`` and column sums ``b``.  ``Omega`` is either counted exactly or
estimated by one of two asymptotic formulas; the caller always chooses.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .info import MeasureValue, _log
from .partition import ContingencyTable, Partition, contingency

DEFAULT_EXACT_LIMIT = 40
MODES = ("exact", "sparse", "dense")


class ExactLimitError(ValueError):
    """The exact count was requested for a table larger than the limit."""


@dataclass(frozen=True)
class OmegaResult:
    count: int
    log_value: float


@dataclass(frozen=True)
class RmiMode:
    mode: str = "exact"
    normalized: bool = True

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown RMI mode {self.mode!r}; expected one of {MODES}")

    @property
    def variant(self) -> str:
        return f"{self.mode},{'normalized' if self.normalized else 'unnormalized'}"


def _margins(a, b) -> tuple[tuple[int, ...], tuple[int, ...]]:
    a = tuple(int(x) for x in a)
    b = tuple(int(x) for x in b)
    if any(x < 0 for x in a + b):
        raise ValueError("margins must be non-negative")
    if sum(a) != sum(b):
        raise ValueError(f"margin sums differ: {sum(a)} vs {sum(b)}")
    return a, b


def count_omega(a, b, limit: int | None = DEFAULT_EXACT_LIMIT) -> OmegaResult:
    """Exact number of non-negative integer tables with margins ``a`` and ``b``.

    Rows are filled one at a time, sweeping a dict that maps each multiset of
    remaining column sums (a sorted tuple) to the number of ways of reaching
    it.  Columns sharing a remaining sum are filled together with a
    multinomial weight, and the second-to-last row is counted in closed form
    since the last row is then forced.
    """
    a, b = _margins(a, b)
    n = sum(a)
    if limit is not None and n > limit:
        raise ExactLimitError(f"exact count needs n <= {limit}, got n={n}")
    rows = sorted(x for x in a if x > 0)
    cols = tuple(sorted(x for x in b if x > 0))
    if len(rows) <= 1 or len(cols) <= 1:
        return OmegaResult(1, 0.0)
    # the sweep keeps one state per column multiset, so put the longer side on rows
    if len(cols) > len(rows):
        rows, cols = sorted(cols), tuple(sorted(rows))

    level: dict[tuple[int, ...], int] = {cols: 1}
    for row_sum in rows[:-2]:
        nxt: dict[tuple[int, ...], int] = defaultdict(int)
        for state, ways in level.items():
            for new_state, w in _row_fillings(state, row_sum):
                nxt[new_state] += ways * w
        level = nxt
    count = sum(ways * _bounded_compositions(state, rows[-2]) for state, ways in level.items())
    return OmegaResult(count, math.log(count))


def _group(state: tuple[int, ...]) -> list[tuple[int, int]]:
    out: list[list[int]] = []
    for v in state:
        if out and out[-1][0] == v:
            out[-1][1] += 1
        else:
            out.append([v, 1])
    return [(v, m) for v, m in out]


def _row_fillings(state: tuple[int, ...], row_sum: int) -> list[tuple[tuple[int, ...], int]]:
    """Every way to take ``row_sum`` units out of the columns in ``state``,
    as (new sorted state, multiplicity) pairs."""
    groups = _group(state)
    capacity = [0] * (len(groups) + 1)
    for gi in range(len(groups) - 1, -1, -1):
        v, m = groups[gi]
        capacity[gi] = capacity[gi + 1] + v * m

    partial: dict[tuple[int, tuple[int, ...]], int] = {(row_sum, ()): 1}
    for gi, (value, mult) in enumerate(groups):
        nxt: dict[tuple[int, tuple[int, ...]], int] = defaultdict(int)
        for (remaining, vals), weight in partial.items():
            floor = max(0, remaining - capacity[gi + 1])
            if mult == 1:
                for d in range(floor, min(value, remaining) + 1):
                    key = (remaining - d, vals + (value - d,) if d < value else vals)
                    nxt[key] += weight
                continue
            for counts, taken, w in _spread(value, mult, remaining, floor):
                added = tuple(value - d for d, k in enumerate(counts) for _ in range(k) if value > d)
                nxt[remaining - taken, vals + added] += weight * w
        partial = nxt
    out: dict[tuple[int, ...], int] = defaultdict(int)
    for (remaining, vals), weight in partial.items():
        if remaining == 0:
            out[tuple(sorted(vals))] += weight
    return list(out.items())


def _spread(value, mult, cap, floor):
    """Ways to take ``d in 0..value`` from each of ``mult`` identical columns.

    Yields (k_0..k_value, total taken, multinomial weight) where ``k_d``
    columns give up ``d`` units, with ``floor <= total <= cap``.
    """
    def rec(d, left, taken, counts, weight):
        if d == 0:
            if floor <= taken:
                yield [left] + counts, taken, weight
            return
        for k in range(left + 1):
            t = taken + k * d
            if t > cap:
                break
            yield from rec(d - 1, left - k, t, [k] + counts, weight * math.comb(left, k))

    yield from rec(value, mult, 0, [], 1)


def _bounded_compositions(caps, total: int) -> int:
    """Number of vectors with ``0 <= x_j <= caps[j]`` summing to ``total``."""
    poly = [1] + [0] * total
    for cap in caps:
        prefix = list(itertools.accumulate(poly))
        poly = [prefix[t] - (prefix[t - cap - 1] if t - cap - 1 >= 0 else 0) for t in range(total + 1)]
    return poly[total]


def _forced(a, b) -> bool:
    return sum(1 for x in a if x > 0) <= 1 or sum(1 for x in b if x > 0) <= 1


def log_omega_sparse(a, b) -> float:
    """Sparse-limit estimate of log Omega (many small clusters).

    log Omega ~ log n! - sum log a_r! - sum log b_s!
                + (2/n^2) sum_r C(a_r, 2) sum_s C(b_s, 2)
    """
    a, b = _margins(a, b)
    if _forced(a, b):
        return 0.0
    A = np.asarray(a, dtype=np.float64)
    B = np.asarray(b, dtype=np.float64)
    n = A.sum()
    pairs_a = (A * (A - 1) / 2).sum()
    pairs_b = (B * (B - 1) / 2).sum()
    return float(
        gammaln(n + 1) - gammaln(A + 1).sum() - gammaln(B + 1).sum()
        + 2.0 * pairs_a * pairs_b / n**2
    )


def log_omega_dense(a, b) -> float:
    """Dense-limit estimate of log Omega (cluster counts well below n).

    Symmetrized Diaconis-Efron formula: the average of the estimate with
    rows and columns in either role.
    """
    a, b = _margins(a, b)
    if _forced(a, b):
        return 0.0
    x_m = np.asarray([v for v in a if v > 0], dtype=np.float64)
    y_m = np.asarray([v for v in b if v > 0], dtype=np.float64)
    n = x_m.sum()
    R, S = x_m.size, y_m.size
    w = n / (n + 0.5 * R * S)
    x = (1 - w) / R + w * x_m / n
    y = (1 - w) / S + w * y_m / n
    mu = (R + 1) / (R * np.sum(x * x)) - 1 / R
    nu = (S + 1) / (S * np.sum(y * y)) - 1 / S
    return float(
        (R - 1) * (S - 1) * math.log(n + 0.5 * R * S)
        + 0.5 * (R + nu - 2) * np.log(y).sum()
        + 0.5 * (S + mu - 2) * np.log(x).sum()
        + 0.5 * (
            gammaln(mu * R) + gammaln(nu * S)
            - R * (gammaln(S) + gammaln(mu))
            - S * (gammaln(R) + gammaln(nu))
        )
    )


def log_omega(a, b, mode: str = "exact", limit: int | None = DEFAULT_EXACT_LIMIT) -> float:
    if mode == "exact":
        return count_omega(a, b, limit=limit).log_value
    if mode == "sparse":
        return log_omega_sparse(a, b)
    if mode == "dense":
        return log_omega_dense(a, b)
    raise ValueError(f"unknown RMI mode {mode!r}")


def microcanonical_information(t: ContingencyTable) -> float:
    """(1/n) log[n! prod n_rs! / (prod a_r! prod b_s!)] in nats."""
    n = t.n
    lf = lambda v: gammaln(np.asarray(v, dtype=np.float64) + 1).sum()
    return float(lf(n) + lf(t.cells) - lf(t.row_margins) - lf(t.col_margins)) / n


def reduced_mi(t: ContingencyTable, mode: str = "exact",
               limit: int | None = DEFAULT_EXACT_LIMIT) -> float:
    """Unnormalized reduced mutual information in nats per object."""
    lo = log_omega(t.row_margins, t.col_margins, mode=mode, limit=limit)
    return microcanonical_information(t) - lo / t.n


def _unit(base) -> str:
    return "bits" if base == 2 else "nats" if base in ("e", None) else f"base {base}"


def _self_table(sizes) -> ContingencyTable:
    sizes = np.asarray(sizes)
    return ContingencyTable(np.diag(sizes[sizes > 0]))


def rmi_table(t: ContingencyTable, mode: RmiMode | str = "exact", *,
              base="e", limit: int | None = DEFAULT_EXACT_LIMIT) -> MeasureValue:
    """Reduced mutual information from a contingency table.

    Normalized: ``2 M(p,q) / (M(p,p) + M(q,q))`` with ``0/0 -> 0``; the self
    terms depend only on the margins.  Unnormalized values are per object in
    the requested log base.
    """
    if isinstance(mode, str):
        mode = RmiMode(mode)
    m_pq = reduced_mi(t, mode.mode, limit)
    if not mode.normalized:
        return MeasureValue("rmi", m_pq / _log(base), f"{mode.variant},{_unit(base)}")
    den = (reduced_mi(_self_table(t.row_margins), mode.mode, limit)
           + reduced_mi(_self_table(t.col_margins), mode.mode, limit))
    # exact zeros are the rule here (log n! - log n!), so compare with a tolerance
    if abs(den) < 1e-12:
        return MeasureValue("rmi", 0.0, mode.variant)
    return MeasureValue("rmi", 2 * m_pq / den, mode.variant)


def rmi(p: Partition, q: Partition, mode: RmiMode | str = "exact", *,
        base="e", limit: int | None = DEFAULT_EXACT_LIMIT) -> MeasureValue:
    return rmi_table(contingency(p, q), mode, base=base, limit=limit)
