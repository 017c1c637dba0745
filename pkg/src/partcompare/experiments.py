"""Reproduce the reported grid of indices, the merge-path curves and the
small demonstrations built on the fixtures."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from . import fixtures
from .measures import Options, compute
from .partition import Partition, contingency, merge_path, subset
from .rmi import DEFAULT_EXACT_LIMIT

CSV_HEADER = ("experiment", "pair", "measure", "variant", "value")

TABLE1_PAIRS = (("pi1", "pi5"), ("pi1", "pi6"), ("pi1", "pi1"), ("pi2", "pi2"), ("pi3", "pi3"))
TABLE1_MEASURES = ("nmi", "ami", "ari", "v_measure", "vi", "rmi", "kappa")
_LABELS = {"nmi": "NMI", "ami": "AMI", "ari": "ARI", "v_measure": "V-measure",
           "vi": "VI", "rmi": "RMI", "kappa": "Kappa"}

RMI_EXACT = Options(rmi_mode="exact", normalized=True)
RMI_EXACT_RAW = Options(rmi_mode="exact", normalized=False, base=2)
RMI_DENSE = Options(rmi_mode="dense", normalized=True)
RMI_DENSE_RAW = Options(rmi_mode="dense", normalized=False, base=2)
BITS = Options(base=2)


@dataclass(frozen=True)
class Row:
    experiment: str
    pair: str
    measure: str
    variant: str
    value: float


def fmt2(value: float) -> str:
    # "+ 0.0" folds -0.0 into 0.0
    return f"{round(value, 2) + 0.0:.2f}"


@dataclass
class ExperimentReport:
    name: str
    rows: list[Row] = field(default_factory=list)

    def add(self, pair: str, measure: str, variant: str, value: float) -> None:
        self.rows.append(Row(self.name, pair, measure, variant, float(value)))

    def value(self, pair: str, measure: str, variant: str | None = None) -> float:
        for r in self.rows:
            if r.pair == pair and r.measure == measure and (variant is None or r.variant == variant):
                return r.value
        raise KeyError((pair, measure, variant))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in self.rows:
            w.writerow((r.experiment, r.pair, r.measure, r.variant, repr(r.value)))
        return buf.getvalue()

    def to_plain(self) -> str:
        width = max(len(f"{r.pair}  {r.measure} [{r.variant}]") for r in self.rows)
        lines = [f"{r.pair}  {r.measure} [{r.variant}]".ljust(width) + f"  {fmt2(r.value)}"
                 for r in self.rows]
        return "\n".join(lines) + "\n"

    def to_markdown(self) -> str:
        if self.name == "table1":
            return _table1_markdown(self)
        lines = ["| pair | measure | variant | value |", "|---|---|---|---|"]
        lines += [f"| {r.pair} | {r.measure} | {r.variant} | {fmt2(r.value)} |" for r in self.rows]
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            return self.to_csv()
        if fmt == "markdown":
            return self.to_markdown()
        if fmt == "plain":
            return self.to_plain()
        raise ValueError(f"unknown format {fmt!r}")


def _pair_label(a: str, b: str) -> str:
    return f"<{a},{b}>"


def _fixtures() -> dict[str, Partition]:
    return {name: fixtures.load(name) for name in ("pi1", "pi2", "pi3", "pi5", "pi6")}


def table1() -> ExperimentReport:
    parts = _fixtures()
    report = ExperimentReport("table1")
    for measure in TABLE1_MEASURES:
        for a, b in TABLE1_PAIRS:
            t = contingency(parts[a], parts[b])
            label = _pair_label(a, b)
            if measure == "rmi":
                for opts in (RMI_EXACT, RMI_DENSE_RAW):
                    mv = compute("rmi", t, opts)
                    report.add(label, "rmi", mv.variant, mv.value)
            else:
                mv = compute(measure, t, BITS)
                report.add(label, measure, mv.variant, mv.value)
    return report


def _table1_markdown(report: ExperimentReport) -> str:
    pairs = [_pair_label(a, b) for a, b in TABLE1_PAIRS]
    lines = ["| | " + " | ".join(pairs) + " |", "|---" * (len(pairs) + 1) + "|"]
    for measure in TABLE1_MEASURES:
        cells = []
        for p in pairs:
            if measure == "rmi":
                exact = report.value(p, "rmi", RMI_EXACT_VARIANT)
                dense = report.value(p, "rmi", RMI_DENSE_RAW_VARIANT)
                cells.append(f"{fmt2(exact)} ({fmt2(dense)})")
            else:
                cells.append(fmt2(report.value(p, measure)))
        lines.append(f"| {_LABELS[measure]} | " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


RMI_EXACT_VARIANT = "exact,normalized"
RMI_DENSE_RAW_VARIANT = "dense,unnormalized,bits"


def fig1(n: int = 10, measures=("kappa", "nmi", "rmi"),
         exact_limit: int | None = DEFAULT_EXACT_LIMIT) -> ExperimentReport:
    """Indices of the all-singletons partition against every merge-path step.

    RMI is emitted in dense mode both normalized and unnormalized (bits), and
    additionally in exact mode while ``n`` is within the exact limit.
    """
    if n < 2:
        raise ValueError("fig1 needs n >= 2")
    singles = Partition(list(range(n)))
    path = merge_path(singles)
    report = ExperimentReport("fig1")
    rmi_variants = [RMI_DENSE, RMI_DENSE_RAW]
    if exact_limit is None or n <= exact_limit:
        rmi_variants += [Options("exact", True, "e", exact_limit), Options("exact", False, 2, exact_limit)]
    for measure in measures:
        for step, q in enumerate(path):
            t = contingency(singles, q)
            label = f"k={q.c};merged={step}"
            if measure == "rmi":
                for opts in rmi_variants:
                    mv = compute("rmi", t, opts)
                    report.add(label, "rmi", mv.variant, mv.value)
            else:
                mv = compute(measure, t, BITS)
                report.add(label, measure, mv.variant, mv.value)
    return report


SUBSET_SPREAD = tuple(range(9, 300, 10))  # objects 10, 20, ..., 300 in 1-based terms
SUBSET_BLOCK = tuple(range(10))  # objects 1..10


def subset_demo() -> ExperimentReport:
    full = fixtures.load("set300")
    cases = {
        "full300": full,
        "spread30": subset(full, SUBSET_SPREAD),
        "block10": subset(full, SUBSET_BLOCK),
    }
    report = ExperimentReport("subset")
    for name, p in cases.items():
        t = contingency(p, p)
        label = _pair_label(name, name)
        if p.n <= DEFAULT_EXACT_LIMIT:
            rmi_opts = [RMI_EXACT, RMI_EXACT_RAW]
        else:
            # too large to count exactly
            rmi_opts = [RMI_DENSE, RMI_DENSE_RAW]
        for opts in rmi_opts:
            mv = compute("rmi", t, opts)
            report.add(label, "rmi", mv.variant, mv.value)
        for measure in ("nmi", "kappa", "ari", "ami", "v_measure"):
            mv = compute(measure, t)
            report.add(label, measure, mv.variant, mv.value)
    return report


def pi4_demo() -> ExperimentReport:
    report = ExperimentReport("pi4")
    p = fixtures.load("pi4")
    t = contingency(p, p)
    label = _pair_label("pi4", "pi4")
    for opts in (RMI_DENSE_RAW, RMI_DENSE):
        mv = compute("rmi", t, opts)
        report.add(label, "rmi", mv.variant, mv.value)
    for measure in ("kappa", "nmi"):
        mv = compute(measure, t)
        report.add(label, measure, mv.variant, mv.value)
    # equal-size alternative, kept for comparison
    eq = fixtures.build("pi4-equal")
    mv = compute("rmi", contingency(eq, eq), RMI_DENSE_RAW)
    report.add(_pair_label("pi4-equal", "pi4-equal"), "rmi", mv.variant, mv.value)
    return report


EXPERIMENTS = {"table1": table1, "fig1": fig1, "subset": subset_demo, "pi4": pi4_demo}
