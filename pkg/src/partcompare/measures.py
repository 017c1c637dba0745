"""Name registry shared by the CLI and the experiment harness."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import info, kappa, rmi
from .info import MeasureValue
from .partition import ContingencyTable


@dataclass(frozen=True)
class Options:
    rmi_mode: str = "exact"
    normalized: bool = True
    base: object = "e"  # "e" or 2; applies to vi and unnormalized rmi
    exact_limit: int | None = rmi.DEFAULT_EXACT_LIMIT


def _rmi(t: ContingencyTable, opts: Options) -> MeasureValue:
    return rmi.rmi_table(t, rmi.RmiMode(opts.rmi_mode, opts.normalized),
                         base=opts.base, limit=opts.exact_limit)


REGISTRY: dict[str, Callable[[ContingencyTable, Options], MeasureValue]] = {
    "nmi": lambda t, o: info.nmi(t),
    "ami": lambda t, o: info.ami(t),
    "ari": lambda t, o: info.ari(t),
    "v_measure": lambda t, o: info.v_measure(t),
    "vi": lambda t, o: info.vi(t, base=o.base),
    "rmi": _rmi,
    "kappa": lambda t, o: kappa.kappa(t),
}

ALIASES = {"v-measure": "v_measure", "vmeasure": "v_measure"}


def resolve(names: str | list[str]) -> list[str]:
    """Turn ``"nmi,kappa"`` or ``"all"`` into registry keys; rejects unknown names."""
    if isinstance(names, str):
        names = [x.strip() for x in names.split(",") if x.strip()]
    out = []
    for name in names:
        key = ALIASES.get(name.lower(), name.lower())
        if key == "all":
            out.extend(k for k in REGISTRY if k not in out)
            continue
        if key not in REGISTRY:
            raise KeyError(f"unknown measure {name!r}; choose from {', '.join(REGISTRY)} or all")
        if key not in out:
            out.append(key)
    if not out:
        raise KeyError("no measures selected")
    return out


def compute(name: str, t: ContingencyTable, opts: Options | None = None) -> MeasureValue:
    return REGISTRY[name](t, opts or Options())
