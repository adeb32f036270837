"""Acceptance criteria 1-8, one pytest test and one PASS/FAIL line each.

Under pytest the PASS/FAIL lines are collected in ``SUMMARY`` and printed in the
terminal summary (see conftest.py); ``python3 tests/test_acceptance.py`` prints
them directly.
"""

import os
import sys
import time
from fractions import Fraction
from itertools import permutations

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from frobcount import census as C  # noqa: E402
from frobcount import dirichlet as D  # noqa: E402
from frobcount.invariants import run_suite  # noqa: E402
from frobcount.tame import enumerate_cyclic_cd  # noqa: E402

from conftest import CONFIGS, all_ctxs, oracle  # noqa: E402

ORACLE_BOUND = 6
SUMMARY: dict = {}


def criterion_1():
    start = time.perf_counter()
    got = {cfg: len(enumerate_cyclic_cd(*cfg)) for cfg in [(3, 1, 2), (2, 1, 3), (2, 2, 3)]}
    elapsed = time.perf_counter() - start
    ok = got == {(3, 1, 2): 3, (2, 1, 3): 1, (2, 2, 3): 4} and elapsed < 1
    return ok, f"counts {list(got.values())} in {elapsed:.3f}s"


def _closed_vs_oracle(convention):
    start = time.perf_counter()
    bad, checked = [], 0
    for p, r, d in CONFIGS:
        res = oracle(p, r, d, ORACLE_BOUND)
        ctxs = list(all_ctxs(p, r, d))
        closed = C.z_pd_exact if convention == "pd" else C.z_split_exact
        for I in C.all_subsets(ctxs[0].factors):
            for L in ["all"] + res.labels:
                sel = ctxs if L == "all" else [c for c in ctxs if c.L.label == L]
                o = res.table(I, convention, L)
                diff = C.compare_tables(o, closed(sel, I, o.x_max))
                checked += 1
                if diff:
                    bad.append((p, d, I, L, diff[:3]))
    elapsed = time.perf_counter() - start
    return not bad and elapsed < 300, f"{checked} tables, {len(bad)} mismatches, {elapsed:.1f}s"


def criterion_2():
    return _closed_vs_oracle("pd")


def criterion_3():
    return _closed_vs_oracle("split")


def criterion_4():
    ctxs = list(all_ctxs(2, 1, 3))
    pd = C.z_pd_exact(ctxs, (2,), 6)
    split = C.z_split_exact(ctxs, (2,), 18)
    res = oracle(2, 1, 3, ORACLE_BOUND)
    o_pd, o_split = res.table((2,), "pd", x_max=6), res.table((2,), "split", x_max=18)
    ok = (pd.count(6) == 1 and pd.cumulative(5) == 0 and split.count(18) == 1 and split.cumulative(17) == 0
          and o_pd.count(6) == 1 and o_split.count(18) == 1)
    return ok, f"pd Z(6)={pd.count(6)}, split count at 18 = {split.count(18)}"


def criterion_5():
    start = time.perf_counter()
    details, ok = [], True
    for (p, r, d), I, n in [((2, 1, 3), (2,), 40), ((3, 1, 2), (1, 2), 30)]:
        ctxs = list(all_ctxs(p, r, d))
        V = max(C.val_bound_for_split(c, I, n) for c in ctxs)
        tab = C.oracle_census(p, r, d, V, labels=[I]).table(I, "split", x_max=n)
        coeffs = D.series_coeffs(D.assemble_phi(ctxs, I), n)
        same = tab.x_max == n and [c.denominator == 1 for c in coeffs] == [True] * (n + 1) \
            and [int(c) for c in coeffs] == tab.series()
        ok &= same
        details.append(f"p={p} I={set(I)} D={n} {'equal' if same else 'DIFFER'}")
    elapsed = time.perf_counter() - start
    return ok and elapsed < 120, "; ".join(details) + f" ({elapsed:.2f}s)"


def criterion_6():
    checked, ok = 0, True
    for p, r, d in CONFIGS:
        ctxs = list(all_ctxs(p, r, d))
        fa = ctxs[0].factors
        q = p**r
        for I in C.all_subsets(fa):
            ell = fa.ell_of(I)
            expect = Fraction((p - 1) * ell, p * d * (p**ell - 1))
            for tau in permutations(I):
                rep = D.pole_report(p, d, [fa.ell(i) for i in tau])
                ok &= rep.sigma_max == expect
                ok &= all(a < b for a, b in zip(rep.sigmas, rep.sigmas[1:]))
                checked += 1
            if I != (1,):
                ok &= D.rightmost_pole(D.assemble_phi(ctxs, I), q) == expect
    ok &= D.pole_report(2, 3, (2,)).sigma_max == Fraction(1, 9)
    ok &= D.pole_report(3, 2, (1, 1)).sigma_max == Fraction(1, 12)
    return ok, f"{checked} orderings, exact"


def criterion_7():
    worst, ok, n = 0.0, True, 0
    for p, r, d in CONFIGS:
        ctxs = list(all_ctxs(p, r, d))
        for I in C.all_subsets(ctxs[0].factors):
            for conv in ("pd", "split"):
                _, _, est = C.growth_check(ctxs, I, conv, tol=1e-6, periods=3)
                fa = ctxs[0].factors
                ok &= est.target == C.target_exponent(p, d, fa.ell_of(I), conv)
                ok &= est.passed and est.rel_error < 1e-6
                ok &= all(x == 0 for x in est.principal_residuals)
                worst = max(worst, est.rel_error)
                n += 1
    return ok, f"{n} estimates, worst relative error {worst:.2e}"


def criterion_8():
    draws = 1000
    counts, failures = {}, {}
    for p, r, d in CONFIGS:
        res = run_suite(list(all_ctxs(p, r, d)), draws=draws, seed=p * 100 + d)
        counts[p, d] = res.draws
        for k, v in res.failures.items():
            if v:
                failures[(p, d, k)] = v
    ok = not failures and min(counts.values()) >= draws
    return ok, f"module draws per configuration {list(counts.values())}, failures {failures or 'none'}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4,
            criterion_5, criterion_6, criterion_7, criterion_8]


def _report(num, ok, detail):
    line = f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}"
    SUMMARY[num] = line
    return line


@pytest.mark.parametrize("num", range(1, 9))
def test_criterion(num):
    ok, detail = CRITERIA[num - 1]()
    _report(num, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    results = []
    for i, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        print(_report(i, ok, detail))
        results.append(ok)
    sys.exit(0 if all(results) else 1)
