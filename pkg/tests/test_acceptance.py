"""Acceptance criteria, one test each.  Every test prints a single PASS/FAIL line.

All comparisons are exact rational equality; stated runtime budgets are
measured with cold caches.
"""
from __future__ import annotations

import math
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from exkraw import xkrawtchouk
from exkraw.krawtchouk import KrawtchoukParams, krawtchouk, norm_h
from exkraw.structure.family22 import c0_from_values, closed_coefficients, q3
from exkraw.structure.orthogonality import WeightPole, orthogonality_data, sign_changes, verify_orthogonality
from exkraw.structure.recurrence import recurrence_coefficients
from exkraw.structure.resultants import DEFAULT_A_RANGE, resultant_lemma_check
from exkraw.suites import (
    Sweep,
    classical_suite,
    diophantine_suite,
    eigen_suite,
    factorization_suite,
    polynomiality_suite,
)
from exkraw.xkrawtchouk import index_set, xk

P_VALUES = (Fraction(1, 3), Fraction(1, 2), Fraction(3, 5))


def cold():
    krawtchouk.cache_clear()
    xkrawtchouk._cache.clear()


def timed(fn):
    cold()
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


@pytest.fixture
def line(capsys):
    def emit(number: int, title: str, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\n[criterion {number:2d}] {'PASS' if ok else 'FAIL'}  {title}: {detail}")
    return emit


def test_c01_classical_orthogonality(line):
    rep, dt = timed(lambda: classical_suite(Sweep(N_values=(2, 3, 4, 5, 6))))
    ok = rep.ok and dt < 1
    line(1, "classical orthogonality", ok, f"{rep.total} Gram entries, {len(rep.failed)} failed, {dt:.2f}s (< 1s)")
    assert ok


def test_c02_factorization(line):
    rep, dt = timed(lambda: factorization_suite(Sweep()))
    ok = rep.ok and dt < 5
    line(2, "L = B F + lambda on x^k, k <= 2N", ok, f"{rep.total} cases, {len(rep.failed)} failed, {dt:.2f}s (< 5s)")
    assert ok


def test_c03_eigen_equations(line):
    def run():
        rep = eigen_suite(Sweep())
        cases = [c for c in rep.cases if c.id == "eigen-equation"]
        specials = [c for c in cases if c.params["n"] == -c.params["d"] - 1 and c.params["j"] == 4]
        specials += [c for c in cases if c.params["j"] == 2 and c.params["n"] == c.params["N"] + c.params["d"] + 1]
        return rep, cases, specials
    (rep, cases, specials), dt = timed(run)
    ok = rep.ok and dt < 10 and bool(specials) and all(c.passed for c in specials)
    line(3, "F B Khat_n = (-n - lambda_d) Khat_n", ok,
         f"{len(cases)} eigen cases incl. {len(specials)} special members, {len(rep.failed)} failed, {dt:.2f}s (< 10s)")
    assert ok


def test_c04_exceptional_orthogonality_norms(line):
    cold()
    failures, checked, poles = [], 0, 0
    for p in P_VALUES:
        for N in range(1, 6):
            P = KrawtchoukParams(p, N)
            q = 1 - p
            for j in (1, 2):
                for d in range(4 if j == 2 else N + 1):
                    try:
                        data = orthogonality_data(j, d, P)
                    except WeightPole:
                        poles += 1
                        continue
                    ws = data.weights()
                    for n in index_set(j, d, P):
                        K = xk(j, d, n, P).poly
                        summed = sum(ws[x] * K(x) ** 2 for x in data.grid)
                        if j == 1:
                            expected = norm_h(n, P) / ((n - d) * N * p * q)
                        elif n == N + d + 1:
                            expected = ((-1) ** d * math.factorial(d) * math.factorial(N + 1)
                                        * math.factorial(N + d + 1) * (q * p) ** (N + d + 1))
                        else:
                            expected = (N + 1) * norm_h(n, P) / (-n + N + d + 1)
                        checked += 1
                        if summed != expected:
                            failures.append((j, d, n, p, N))
                    if not verify_orthogonality(data).ok:
                        failures.append((j, d, "offdiag", p, N))
    half2 = KrawtchoukParams(Fraction(1, 2), 2)
    data = orthogonality_data(2, 2, half2)
    K = xk(2, 2, 5, half2).poly
    concrete = sum(data.weight(x) * K(x) ** 2 for x in data.grid)
    ok = not failures and concrete == Fraction(45, 32)
    line(4, "exceptional norms by exact summation", ok,
         f"{checked} norms, {len(failures)} failed, {poles} degenerate seeds skipped; "
         f"special member (j,d,N,p)=(2,2,2,1/2) norm = {concrete}")
    assert ok


def test_c05_diophantine(line):
    rep, dt = timed(lambda: diophantine_suite(Sweep()))
    skipped_nd = [c for c in rep.cases if c.id.startswith("n>N:type1") and c.params["n"] == c.params["d"]]
    ok = rep.ok and not skipped_nd
    line(5, "Diophantine factorizations", ok, f"{rep.total} polynomial identities, {len(rep.failed)} failed, {dt:.2f}s")
    assert ok


def test_c06_resultants(line):
    def run():
        rep = resultant_lemma_check(P_VALUES[0], DEFAULT_A_RANGE, 5)
        return rep.extend(resultant_lemma_check(P_VALUES[1], DEFAULT_A_RANGE, 5))
    rep, dt = timed(run)
    closed = [c for c in rep.cases if c.id == "closed-form"]
    zeros = [c for c in rep.cases if c.id.startswith("common-zero")]
    ok = rep.ok and dt < 5
    line(6, "resultant closed form and common-zero criterion", ok,
         f"{len(closed)} closed-form, {len(zeros)} common-zero cases, {len(rep.failed)} failed, {dt:.2f}s (< 5s)")
    assert ok


def test_c07_family22_recurrence(line):
    cold()
    mismatches, checked, half_zero = [], 0, True
    for p in P_VALUES:
        for N in (3, 4, 5):
            P = KrawtchoukParams(p, N)
            q = q3(P)
            for n in index_set(2, 2, P):
                got = {l - n: v for l, v in recurrence_coefficients(2, 2, n, P, q).coefficients.items()}
                closed = closed_coefficients(n, P)
                if 0 not in closed:  # n = N+3: the weights have a pole, evaluate at x = -1 directly
                    closed[0] = c0_from_values(n, closed, P)
                for off in range(-3, 4):
                    checked += 1
                    if got.get(off, Fraction(0)) != closed[off]:
                        mismatches.append((p, N, n, off))
                if p == Fraction(1, 2):
                    half_zero &= got.get(2, 0) == 0 and got.get(-2, 0) == 0
    ok = not mismatches and half_zero
    line(7, "(2,2) seven-term recurrence vs closed forms", ok,
         f"{checked} coefficients over n in X_(2,2), {len(mismatches)} mismatched; p=1/2 zero bands: {half_zero}; "
         "c_(n,0) uses weights Khat_(n+l)(-1)/Khat_n(-1)")
    assert ok


def test_c08_span_and_polynomiality(line):
    rep, dt = timed(lambda: polynomiality_suite(Sweep()))
    contaminated = [c for c in rep.cases if "K_d" in c.id]
    agree = [c for c in rep.cases if c.id.startswith("L-poly")]
    ok = rep.ok and contaminated and agree
    line(8, "span membership and L/B polynomiality", ok,
         f"{len(agree)} flag comparisons, {len(contaminated)} contaminated inputs rejected, "
         f"{len(rep.failed)} disagreements, {dt:.2f}s")
    assert ok


def test_c09_positivity(line):
    cold()
    violations, checked, poles = [], 0, 0
    for p in P_VALUES:
        for N in range(1, 6):
            P = KrawtchoukParams(p, N)
            for j, ds in ((1, range(N + 1)), (2, range(0, 5, 2))):
                for d in ds:
                    try:
                        ws = orthogonality_data(j, d, P).weights()
                    except WeightPole:
                        poles += 1
                        continue
                    checked += 1
                    if j == 1 and (not sign_changes(ws.values())) != (d in (0, N)):
                        violations.append((j, d, p, N))
                    if j == 2:
                        bad = [x for x, v in ws.items() if v <= 0]
                        if bad:
                            violations.append((j, d, p, N, f"x={bad[0]}"))
    ok = not violations
    line(9, "weight sign bookkeeping", ok,
         f"{checked} weights scanned, {poles} degenerate seeds skipped, violations: {violations or 'none'}")
    assert ok


def test_c10_end_to_end_verify(line):
    t = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "exkraw", "verify", "--format", "text", "--jobs", "1"],
                          capture_output=True, text=True, check=False)
    dt = time.perf_counter() - t
    ok = proc.returncode == 0 and dt < 60
    line(10, "verify default sweep", ok, f"exit {proc.returncode}, {dt:.1f}s (< 60s); {proc.stdout.strip().splitlines()[-1]}")
    assert ok
