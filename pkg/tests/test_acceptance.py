"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s``. Tolerances are fixed
here, not tuned: oracle checks demand exact agreement, Monte Carlo cells
use the stated absolute windows, and the two timed criteria assert their
wall-clock budgets.
"""

import math
import os
import time

import numpy as np
from conftest import tournament_from_bits

from tourneylab import (Partition, SamplePlan, VertexSubset, bad_events,
                        brute_force_hamiltonian, check_certificate,
                        clean_to_good_partition, estimate_hamiltonian_probability,
                        exact_hamiltonian_probability, extremal_main,
                        extremal_main_blocks, extremal_theorem1_odd,
                        hamilton_cycle, hamiltonian_on_subset, is_hamiltonian,
                        max_BA_matching, random_tournament, removal_sets,
                        sample_subset, wilson_interval)
from tourneylab.cli import ExperimentConfig, run_sweep
from tourneylab.errors import EmptyPart
from tourneylab.sampling import Z997


def report(capsys, num: int, name: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    with capsys.disabled():
        print(f"[criterion {num}] {name}: {status}{suffix}")


def test_criterion_1_exhaustive_oracle_equivalence(capsys):
    start = time.perf_counter()
    mismatches = 0
    for code in range(1 << 15):
        T = tournament_from_bits(6, code)
        if is_hamiltonian(T) != brute_force_hamiltonian(T):
            mismatches += 1
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and elapsed < 60.0
    report(capsys, 1, "exhaustive oracle equivalence on n=6", ok,
           f"32768 tournaments, {mismatches} mismatches, {elapsed:.1f}s")
    assert mismatches == 0
    assert elapsed < 60.0


def test_criterion_2_randomized_oracle_equivalence(capsys):
    rng = np.random.default_rng(0xACCE2)
    mismatches = 0
    bad_certificates = 0
    positives = 0
    for _ in range(10_000):
        n = int(rng.integers(7, 17))
        T = random_tournament(n, int(rng.integers(0, 2**63)))
        fast = is_hamiltonian(T)
        slow = brute_force_hamiltonian(T)
        if fast != slow:
            mismatches += 1
            continue
        if fast:
            positives += 1
            cert = hamilton_cycle(T)
            try:
                check_certificate(T, cert)
            except Exception:
                bad_certificates += 1
    ok = mismatches == 0 and bad_certificates == 0
    report(capsys, 2, "randomized oracle equivalence, n in [7,16]", ok,
           f"10000 instances, {positives} positives certified")
    assert mismatches == 0
    assert bad_certificates == 0


def test_criterion_3_monte_carlo_within_wilson_envelope(capsys):
    rng = np.random.default_rng(0xACCE3)
    hits = 0
    cells = 0
    for i in range(20):
        T = random_tournament(16, int(rng.integers(0, 2**63)))
        exact_by_p = {p: exact_hamiltonian_probability(T, p) for p in (0.3, 0.5, 0.7)}
        for p, exact in exact_by_p.items():
            cells += 1
            rep = estimate_hamiltonian_probability(
                T, SamplePlan(p=p, trials=100_000, master_seed=1000 + i))
            lo, hi = wilson_interval(rep.successes, rep.trials, z=Z997)
            if lo <= exact <= hi:
                hits += 1
    ok = cells == 60 and hits >= 58
    report(capsys, 3, "Monte Carlo inside 99.7% Wilson envelope of exact", ok,
           f"{hits}/60 cells")
    assert hits >= 58


def test_criterion_4_hub_construction_probability_and_equivalence(capsys):
    T = extremal_theorem1_odd(49)  # n = 199, hub = 198
    n, hub = T.n, T.n - 1
    rep = estimate_hamiltonian_probability(
        T, SamplePlan(p=0.5, trials=100_000, master_seed=4))
    in_window = 0.47 <= rep.point_estimate <= 0.53

    half_a = set(range(99))
    half_b = set(range(99, 198))
    rng = np.random.default_rng(0xACCE4)
    checked = 0
    agreed = 0
    while checked < 1000:
        S = sample_subset(n, 0.5, rng)
        members = set(S.members)
        if not (members & half_a) or not (members & half_b):
            continue
        checked += 1
        if hamiltonian_on_subset(T, S) == (hub in members):
            agreed += 1
    ok = in_window and agreed == 1000
    report(capsys, 4, "hub family: estimate near 1/2, Hamiltonian iff hub sampled", ok,
           f"estimate={rep.point_estimate:.4f}, {agreed}/1000 samples agree")
    assert in_window
    assert agreed == 1000


def test_criterion_5_probability_matches_closed_form(capsys):
    start = time.perf_counter()
    worst = 0.0
    failures = []
    for t in (1, 2, 3):
        T = extremal_main(203, t)
        for p in (0.3, 0.5, 0.7):
            rep = estimate_hamiltonian_probability(
                T, SamplePlan(p=p, trials=100_000, master_seed=50 + t))
            target = 1.0 - (1.0 - p) ** t
            gap = abs(rep.point_estimate - target)
            worst = max(worst, gap)
            if gap > 0.02:
                failures.append((t, p, gap))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 600.0
    report(capsys, 5, "block family tracks 1-(1-p)^t over 9 cells", ok,
           f"worst |gap|={worst:.4f}, {elapsed:.1f}s")
    assert not failures, failures
    assert elapsed < 600.0


def test_criterion_6_cleaning_produces_good_partition(capsys):
    n, t, eps = 203, 2, 1e-3
    T = extremal_main(n, t)
    ra, rb, rx = extremal_main_blocks(n, t)
    xs = list(rx)
    # natural balanced completion of the block cut: X split across sides
    A0 = VertexSubset(n, list(ra) + xs[1:])
    B0 = VertexSubset(n, list(rb) + xs[:1])
    assert abs(len(A0) - len(B0)) <= 1

    delta = math.sqrt(eps)
    a_minus, a_plus, b_plus, b_minus = removal_sets(T, A0, B0, eps)
    bounds_ok = (len(a_minus) <= delta * n / 4 and len(a_plus) <= 15 * delta * n
                 and len(b_plus) <= delta * n / 4 and len(b_minus) <= 15 * delta * n)
    part, goodness = clean_to_good_partition(T, A0, B0, eps)
    tol_ok = abs(goodness.eps - eps ** (1 / 3)) < 1e-12
    ok = goodness.is_good and bounds_ok and tol_ok
    report(capsys, 6, "cleaner yields eps^(1/3)-good partition with bounded removals", ok,
           f"removals={len(a_minus)},{len(a_plus)},{len(b_plus)},{len(b_minus)} "
           f"tol={goodness.eps:.3f}")
    assert goodness.is_good
    assert bounds_ok
    assert tol_ok


def test_criterion_7_koenig_duality(capsys):
    rng = np.random.default_rng(0xACCE7)
    violations = 0
    for _ in range(1000):
        n = int(rng.integers(9, 36))
        T = random_tournament(n, int(rng.integers(0, 2**63)))
        labels = rng.permutation(n)
        a_size = int(rng.integers(2, n - 3))
        b_size = int(rng.integers(2, n - a_size - 1))
        P = Partition.from_members(
            n, sorted(int(v) for v in labels[:a_size]),
            sorted(int(v) for v in labels[a_size:a_size + b_size]),
            sorted(int(v) for v in labels[a_size + b_size:]))
        mc = max_BA_matching(T, P)
        cover = set(mc.cover)
        if len(mc.matching) != len(mc.cover):
            violations += 1
            continue
        for b in P.B.members:
            for a in P.A.members:
                if T.adj[b, a] and b not in cover and a not in cover:
                    violations += 1
    ok = violations == 0
    report(capsys, 7, "König equality and cover validity on 1000 instances", ok)
    assert violations == 0


def test_criterion_8_no_bad_events_forces_hamiltonicity(capsys):
    n, t = 203, 2
    T = extremal_main(n, t)
    P = Partition.from_members(n, *extremal_main_blocks(n, t))
    rng = np.random.default_rng(0xACCE8)
    violations = 0
    evaluated = 0
    all_clear = 0
    for _ in range(1000):
        S = sample_subset(n, 0.5, rng)
        try:
            flags = bad_events(T, P, S)
        except EmptyPart:
            continue
        evaluated += 1
        if not flags.any:
            all_clear += 1
            if not hamiltonian_on_subset(T, S):
                violations += 1
    ok = violations == 0
    report(capsys, 8, "all-clear samples are always Hamiltonian", ok,
           f"{evaluated} evaluated, {all_clear} with no bad events")
    assert violations == 0
    assert evaluated >= 990


def test_criterion_9_thread_count_determinism(capsys):
    config = ExperimentConfig(family="main", params={"n": 203, "t": 2},
                              p_values=[0.5], t=2, trials=100_000,
                              master_seed=909)
    counts = []
    saved = os.environ.get("TOURNEYLAB_THREADS")
    try:
        for workers in ("1", "4", "16"):
            os.environ["TOURNEYLAB_THREADS"] = workers
            rows = run_sweep(config)["rows"]
            counts.append(tuple(r["successes"] for r in rows))
    finally:
        if saved is None:
            os.environ.pop("TOURNEYLAB_THREADS", None)
        else:
            os.environ["TOURNEYLAB_THREADS"] = saved
    ok = counts[0] == counts[1] == counts[2]
    report(capsys, 9, "success counts identical under 1, 4, 16 threads", ok,
           f"counts={counts[0]}")
    assert ok
