"""The named partitions used throughout the experiments.

Each fixture ships as a label file under ``fixtures/`` and can also be
rebuilt from its recipe with :func:`build`.
"""

from __future__ import annotations

from importlib import resources

import numpy as np

from .partition import Partition, parse_partition

PI4_SEED = 0

NAMES = ("pi1", "pi2", "pi3", "pi4", "pi5", "pi6", "set300")


def build(name: str) -> Partition:
    if name == "pi1":
        return Partition.from_labels([1, 1, 1, 1, 1, 1, 2, 2, 3, 3])
    if name == "pi2":
        return Partition.from_labels([1] * 10)
    if name == "pi3":
        return Partition.from_labels(range(1, 11))
    if name == "pi5":
        return Partition.from_labels([1, 1, 1, 1, 1, 2, 2, 2, 3, 3])
    if name == "pi6":
        return Partition.from_labels([1, 1, 1, 1, 1, 1, 2, 2, 2, 3])
    if name == "set300":
        # object i (0-based) belongs to cluster i // 10: 30 runs of 10
        return Partition(np.arange(300) // 10)
    if name == "pi4":
        return random_partition(2000, 200, seed=PI4_SEED)
    if name == "pi4-equal":
        return Partition(np.arange(2000) // 10)
    raise KeyError(name)


def random_partition(n: int, c: int, seed: int) -> Partition:
    """Uniform i.i.d. labels in ``0..c-1``; insists that every label occurs."""
    labels = np.random.default_rng(seed).integers(0, c, n)
    if np.unique(labels).size != c:
        raise ValueError(f"seed {seed} leaves a cluster empty")
    return Partition(labels)


def load(name: str) -> Partition:
    """Read a shipped fixture file."""
    text = resources.files(__package__).joinpath("fixtures", f"{name}.txt").read_text("utf-8")
    return parse_partition(text)
