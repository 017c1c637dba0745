"""Exit criteria.  Each test records one PASS/FAIL line, printed after the run."""

import subprocess
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from conftest import ACCEPTANCE, random_partition, relabel
from oracles import count_tables
from partcompare import experiments as E
from partcompare import info
from partcompare.kappa import align, kappa
from partcompare.measures import REGISTRY, compute
from partcompare.partition import Partition, contingency, merge_path, subset
from partcompare.rmi import RmiMode, count_omega, rmi

PAIRS = ["<pi1,pi5>", "<pi1,pi6>", "<pi1,pi1>", "<pi2,pi2>", "<pi3,pi3>"]


def record(name, ok, detail=""):
    ACCEPTANCE.append((name, bool(ok), detail))
    assert ok, f"{name}: {detail}"


@pytest.fixture(scope="module")
def t1():
    return E.table1()


def test_c1_table1_non_rmi_rows(t1):
    expected = {
        "nmi": ("0.77", "0.82", "1.00", "1.00", "1.00"),
        "ami": ("0.64", "0.73", "1.00", "1.00", "1.00"),
        "ari": ("0.66", "0.86", "1.00", "1.00", "1.00"),
        "v_measure": ("0.77", "0.82", "1.00", "1.00", "1.00"),
        "vi": ("0.67", "0.48", "0.00", "0.00", "0.00"),
        "kappa": ("0.83", "0.82", "1.00", "1.00", "1.00"),
    }
    got = {m: tuple(E.fmt2(t1.value(p, m)) for p in PAIRS) for m in expected}
    bad = {m: got[m] for m in expected if got[m] != expected[m]}
    record("C1 Table 1 non-RMI rows at 2 decimals", not bad, f"mismatches={bad}" if bad else "all 30 cells match")


def test_c2_exact_rmi_anchors(parts):
    vals = {k: rmi(parts[k], parts[k]).value for k in ("pi2", "pi3", "pi1")}
    ok = abs(vals["pi2"]) <= 1e-12 and abs(vals["pi3"]) <= 1e-12 and abs(vals["pi1"] - 1) <= 1e-12
    record("C2 exact normalized RMI self anchors (0, 0, 1) to 1e-12", ok, repr(vals))


def test_c3_omega_oracle_suite():
    start = time.perf_counter()
    rng = np.random.default_rng(2024)
    mismatches = 0
    cases = 0
    while cases < 600:
        n = int(rng.integers(1, 13))
        a = np.bincount(rng.integers(0, rng.integers(1, 7), n))
        b = np.bincount(rng.integers(0, rng.integers(1, 7), n))
        a, b = a[a > 0].tolist(), b[b > 0].tolist()
        mismatches += count_omega(a, b).count != count_tables(a, b)
        cases += 1
    constants = {((6, 2, 2), (5, 3, 2)): 30, ((6, 2, 2), (6, 2, 2)): 26, ((5, 3, 2), (5, 3, 2)): 40,
                 ((6, 2, 2), (6, 3, 1)): 20, ((6, 3, 1), (6, 3, 1)): 17}
    const_ok = all(count_tables(*m) == c == count_omega(*m).count for m, c in constants.items())
    elapsed = time.perf_counter() - start
    record("C3 Omega DP vs brute force (600 cases, n<=12) + constants, < 30 s",
           mismatches == 0 and const_ok and elapsed < 30,
           f"mismatches={mismatches}, constants_ok={const_ok}, {elapsed:.1f}s")


def test_c4_dense_anchors(t1):
    got = tuple(E.fmt2(t1.value(p, "rmi", E.RMI_DENSE_RAW_VARIANT)) for p in PAIRS)
    expected = ("0.38", "0.44", "0.57", "0.00", "-0.80")
    pi4 = E.pi4_demo().value("<pi4,pi4>", "rmi", E.RMI_DENSE_RAW_VARIANT)
    record("C4 dense-approx RMI bracketed column + pi4 within 0.01",
           got == expected and abs(pi4 + 3.45) <= 0.01, f"column={got}, pi4={pi4:.4f}")


def test_c5_kappa_line():
    singles = Partition(list(range(10)))
    series = {q.c: align(contingency(singles, q)).kappa_exact() for q in merge_path(singles)}
    ok = all(series[k] == Fraction(k - 1, 9) for k in range(1, 11))
    floats_ok = all(abs(kappa(contingency(singles, q)).value - (q.c - 1) / 9) <= 1e-12
                    for q in merge_path(singles))
    record("C5 merge-path kappa == (k-1)/9 exactly", ok and floats_ok, str([str(series[k]) for k in range(10, 0, -1)]))


def test_c6_fig1_shape():
    rep = E.fig1(10)
    ks = list(range(10, 0, -1))
    pairs = [f"k={k};merged={10 - k}" for k in ks]
    nmi = [rep.value(p, "nmi") for p in pairs]
    monotone = all(x >= y for x, y in zip(nmi, nmi[1:]))
    chord = [nmi[0] + (nmi[-1] - nmi[0]) * i / 9 for i in range(10)]
    deviation = max(abs(x - c) for x, c in zip(nmi, chord))
    dense = [rep.value(p, "rmi", E.RMI_DENSE_RAW_VARIANT) for p in pairs]
    exact_k10 = rep.value(pairs[0], "rmi", "exact,normalized")
    ok = monotone and deviation > 0.01 and all(v <= 1e-9 for v in dense) and exact_k10 == 0.0
    record("C6 NMI monotone & non-affine; dense RMI <= 0; exact RMI at k=10 is 0", ok,
           f"nmi_dev={deviation:.3f}, dense_max={max(dense):.3f}, exact_k10={exact_k10}")


def test_c7_subset_paradox(parts):
    full = parts["set300"]
    spread = subset(full, range(9, 300, 10))
    block = subset(full, range(10))
    rmis = [rmi(s, s).value for s in (spread, block)]
    others = {m: [compute(m, contingency(s, s)).value for s in (spread, block)]
              for m in ("nmi", "kappa", "ari", "ami", "v_measure")}
    ok = rmis == [0.0, 0.0] and all(abs(v - 1) <= 1e-12 for vs in others.values() for v in vs)
    record("C7 subset paradox: exact RMI 0, 0; other measures 1", ok, f"rmi={rmis}")


def test_c8_property_suites():
    rng = np.random.default_rng(8)
    failures = []
    for _ in range(1000):
        p = random_partition(rng, n_max=30, c_max=6)
        q = random_partition(rng, n=p.n, c_max=6)
        p2, q2 = Partition(relabel(rng, p)), Partition(relabel(rng, q))
        t, t_perm, t_swap = contingency(p, q), contingency(p2, q2), contingency(q, p)
        for name in REGISTRY:
            v = compute(name, t).value
            if abs(compute(name, t_perm).value - v) > 1e-9:
                failures.append(("perm", name))
            if abs(compute(name, t_swap).value - v) > 1e-9:
                failures.append(("swap", name))
    tri_bad = 0
    for _ in range(1000):
        n = int(rng.integers(1, 13))
        x, y, z = (random_partition(rng, n=n) for _ in range(3))
        d = lambda u, v: info.vi(contingency(u, v)).value
        tri_bad += d(x, z) > d(x, y) + d(y, z) + 1e-12
    amis = []
    for _ in range(1500):
        n = int(rng.integers(10, 31))
        x = Partition(rng.integers(0, int(rng.integers(2, 6)), n))
        y = Partition(rng.integers(0, int(rng.integers(2, 6)), n))
        amis.append(info.ami(contingency(x, y)).value)
    mean, se = np.mean(amis), np.std(amis, ddof=1) / np.sqrt(len(amis))
    ok = not failures and tri_bad == 0 and abs(mean) < 3 * se
    record("C8 invariance/symmetry (1000 pairs), VI triangle (1000), AMI null mean", ok,
           f"failures={failures[:5]}, triangle_violations={tri_bad}, ami_mean={mean:.4f}, 3se={3 * se:.4f}")


def test_c9_cli_determinism():
    cmd = [sys.executable, "-m", "partcompare", "experiment", "table1", "--format", "csv"]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True)
    ok = a.returncode == b.returncode == 0 and a.stdout == b.stdout and len(a.stdout) > 0
    record("C9 `experiment table1 --format csv` byte-identical across runs", ok, f"{len(a.stdout)} bytes")
