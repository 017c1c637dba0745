"""Partitions, contingency tables and partition transforms."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

import numpy as np


class PartitionError(ValueError):
    """Raised for malformed partitions or label files."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _frozen(arr) -> np.ndarray:
    out = np.array(arr, dtype=np.int64)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class Partition:
    """A division of ``n`` objects into ``c`` non-empty clusters.

    Labels are dense ids ``0..c-1`` numbered by first appearance, so two
    label vectors that differ only by a renaming produce equal partitions.
    """

    labels: np.ndarray

    def __post_init__(self):
        labels = canonical_labels(self.labels)
        object.__setattr__(self, "labels", _frozen(labels))

    @classmethod
    def from_labels(cls, labels: Iterable[Hashable]) -> "Partition":
        return cls(canonical_labels(labels))

    @property
    def n(self) -> int:
        return int(self.labels.size)

    @property
    def c(self) -> int:
        return int(self.labels.max()) + 1

    @property
    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.c)

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return np.array_equal(self.labels, other.labels)

    def __hash__(self) -> int:
        return hash(self.labels.tobytes())

    def __repr__(self) -> str:
        return f"Partition(n={self.n}, c={self.c})"

    def is_coarsening_of(self, finer: "Partition") -> bool:
        """True when every cluster of ``self`` is a union of clusters of ``finer``."""
        if finer.n != self.n:
            return False
        # each fine cluster must land in exactly one coarse cluster
        t = contingency(finer, self).cells
        return bool(np.all((t > 0).sum(axis=1) == 1))


def canonical_labels(labels: Iterable[Hashable]) -> list[int]:
    """Map arbitrary hashable labels to dense ids by order of first appearance."""
    if isinstance(labels, np.ndarray):
        labels = labels.tolist()
    ids: dict = {}
    out = [ids.setdefault(lab, len(ids)) for lab in labels]
    if not out:
        raise PartitionError("partition must contain at least one object")
    return out


def parse_partition(text: str) -> Partition:
    """Parse a label file: one label token per line, LF or CRLF.

    A single trailing newline is allowed; any other empty line is an error.
    """
    if not text.strip():
        raise PartitionError("empty input")
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    tokens = []
    for lineno, line in enumerate(lines, start=1):
        token = line.strip()
        if not token:
            raise PartitionError("blank line", line=lineno)
        tokens.append(int(token) if _is_int(token) else token)
    return Partition.from_labels(tokens)


def _is_int(token: str) -> bool:
    try:
        int(token)
    except ValueError:
        return False
    return True


def serialize_partition(p: Partition) -> str:
    return "".join(f"{lab}\n" for lab in p.labels.tolist())


def read_partition(path) -> Partition:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return parse_partition(text)
    except PartitionError as exc:
        raise PartitionError(f"{path}: {exc}") from None


@dataclass(frozen=True, eq=False)
class ContingencyTable:
    """Cell counts ``n_rs`` with row margins ``a``, column margins ``b``."""

    cells: np.ndarray
    row_margins: np.ndarray = field(init=False)
    col_margins: np.ndarray = field(init=False)

    def __post_init__(self):
        cells = np.asarray(self.cells)
        if cells.ndim != 2 or cells.size == 0:
            raise ValueError("contingency table must be a non-empty 2-d array")
        if np.any(cells < 0):
            raise ValueError("contingency table entries must be non-negative")
        object.__setattr__(self, "cells", _frozen(cells))
        object.__setattr__(self, "row_margins", _frozen(cells.sum(axis=1)))
        object.__setattr__(self, "col_margins", _frozen(cells.sum(axis=0)))

    @property
    def n(self) -> int:
        return int(self.cells.sum())

    @property
    def shape(self) -> tuple[int, int]:
        return self.cells.shape

    @property
    def T(self) -> "ContingencyTable":
        return ContingencyTable(self.cells.T)

    def __repr__(self) -> str:
        return f"ContingencyTable({self.cells.tolist()})"


def contingency(p: Partition, q: Partition) -> ContingencyTable:
    if p.n != q.n:
        raise PartitionError(f"length mismatch: {p.n} vs {q.n} objects")
    cells = np.zeros((p.c, q.c), dtype=np.int64)
    np.add.at(cells, (p.labels, q.labels), 1)
    return ContingencyTable(cells)


@dataclass(frozen=True)
class MergePath:
    steps: tuple[Partition, ...]

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def __getitem__(self, i) -> Partition:
        return self.steps[i]

    def with_clusters(self, k: int) -> Partition:
        """The step that has exactly ``k`` clusters."""
        n = self.steps[0].n
        if not 1 <= k <= n:
            raise ValueError(f"k must be in 1..{n}")
        return self.steps[n - k]


MERGE_STRATEGIES = ("cumulative-left", "balanced")


def merge_path(p: Partition, strategy: str = "cumulative-left") -> MergePath:
    """Merge the clusters of an all-singletons partition one pair at a time.

    ``cumulative-left`` always folds cluster 1 into cluster 0, so the step
    with ``k`` clusters has sizes ``(n-k+1, 1, ..., 1)``.  ``balanced`` merges
    the two smallest clusters (ties broken by lowest id).
    """
    if p.c != p.n:
        raise PartitionError("merge_path needs the all-singletons partition")
    if strategy not in MERGE_STRATEGIES:
        raise ValueError(f"unknown merge strategy {strategy!r}")

    groups = [[i] for i in range(p.n)]
    steps = [p]
    while len(groups) > 1:
        if strategy == "cumulative-left":
            i, j = 0, 1
        else:
            order = sorted(range(len(groups)), key=lambda g: (len(groups[g]), min(groups[g])))
            i, j = sorted(order[:2])
        groups[i] = groups[i] + groups[j]
        del groups[j]
        labels = np.empty(p.n, dtype=np.int64)
        for gid, members in enumerate(groups):
            labels[members] = gid
        steps.append(Partition(labels))
    return MergePath(tuple(steps))


def subset(p: Partition, indices: Sequence[int]) -> Partition:
    """Restrict ``p`` to the listed objects (0-based), relabelled densely."""
    idx = [int(i) for i in indices]
    if not idx:
        raise PartitionError("subset needs at least one index")
    if len(set(idx)) != len(idx):
        raise PartitionError("duplicate index in subset")
    bad = [i for i in idx if not 0 <= i < p.n]
    if bad:
        raise PartitionError(f"index {bad[0]} out of range for n={p.n}")
    return Partition(p.labels[idx])
