"""Cohen's kappa after matching clusters of one partition to the other."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import linear_sum_assignment

from .info import MeasureValue
from .partition import ContingencyTable


@dataclass(frozen=True)
class AlignmentResult:
    """One-to-one cluster correspondence on the zero-padded square table.

    ``mapping[r]`` is the column matched to row ``r``, or ``None`` when the
    row is matched to a padding column.
    """

    mapping: tuple[int | None, ...]
    agreement: int
    chance: int  # sum_r a_r * b_mapping(r)
    n: int

    @property
    def po(self) -> float:
        return self.agreement / self.n

    @property
    def pe(self) -> float:
        return self.chance / self.n**2

    def kappa_exact(self) -> Fraction:
        n2 = self.n**2
        if self.chance == n2:
            return Fraction(1) if self.agreement == self.n else Fraction(0)
        return Fraction(self.n * self.agreement - self.chance, n2 - self.chance)


def _best(w: np.ndarray) -> tuple[int, np.ndarray]:
    if w.size == 0:
        return 0, np.empty(0, dtype=np.int64)
    rows, cols = linear_sum_assignment(w, maximize=True)
    return int(w[rows, cols].sum()), cols


def align(t: ContingencyTable) -> AlignmentResult:
    """Maximize the matched diagonal sum.

    Ties in agreement are broken by the smallest chance term
    ``sum_r a_r b_mapping(r)``, which keeps kappa symmetric and independent
    of label order.  Among the remaining optima the lexicographically
    smallest mapping (by row) is returned: each row in turn takes the lowest
    column that still admits an optimal completion.
    """
    R, S = t.shape
    k = max(R, S)
    a, b = t.row_margins, t.col_margins
    # chance term never exceeds n^2, so one unit of agreement outweighs it
    w = np.zeros((k, k), dtype=np.int64)
    w[:R, :S] = t.cells * (t.n**2 + 1) - np.outer(a, b)
    best, cols = _best(w)

    free = list(range(k))
    current = [int(c) for c in cols]  # an optimal completion for rows r.. over `free`
    mapping = []
    gained = 0
    for r in range(k):
        target = best - gained
        choice = current[0]
        for c in free:
            if c >= choice:
                break
            rest = [x for x in free if x != c]
            sub_val, sub_cols = _best(w[np.ix_(range(r + 1, k), rest)])
            if w[r, c] + sub_val == target:
                choice = c
                current = [c] + [rest[i] for i in sub_cols]
                break
        mapping.append(choice)
        gained += int(w[r, choice])
        free.remove(choice)
        current = current[1:]

    real = tuple(c if c < S else None for c in mapping[:R])
    pairs = [(r, c) for r, c in enumerate(real) if c is not None]
    agreement = sum(int(t.cells[r, c]) for r, c in pairs)
    chance = sum(int(a[r]) * int(b[c]) for r, c in pairs)
    return AlignmentResult(real, agreement, chance, t.n)


def kappa(t: ContingencyTable) -> MeasureValue:
    return MeasureValue("kappa", float(align(t).kappa_exact()), "aligned")
