from fractions import Fraction
from itertools import product

import pytest

from frobcount import census as C
from frobcount.cyclofactor import factor_xd_minus_1
from frobcount.modstruct import psi

from conftest import CONFIGS, all_ctxs, ctx_for, oracle


def test_closed_N_a4_by_enumeration(a4_ctx):
    # elements of V_-1 + V_-3 (F_8 coefficients) killed by X^2+X+1: trace-zero pairs
    F = a4_ctx.F
    tz = [x for x in F.elements() if F.absolute_trace(x) == 0]
    direct = sum(1 for a, b in product(tz, tz) if a or b)
    assert direct == 15
    assert C.closed_N(a4_ctx, (2,), 4)[1][2] == 15


def test_closed_N_s3_factor1(s3_ctx):
    # span of omega_0, pi^-2, pi^-4 over F_3, minus zero
    assert C.closed_N_i(s3_ctx, 1, 6) == 3**3 - 1 == 26


def test_closed_N_at_zero():
    for p, r, d in CONFIGS:
        for ctx in all_ctxs(p, r, d):
            for i in ctx.factors.indices():
                assert C.closed_N_i(ctx, i, 0) == (p - 1 if i == 1 else 0)


@pytest.mark.parametrize("p,r,d", CONFIGS)
def test_level_counts_and_inclusion_exclusion(p, r, d):
    for ctx in all_ctxs(p, r, d):
        for i in ctx.factors.indices():
            for n in range(1, 4 * ctx.e * p):
                assert C.closed_N_tilde(ctx, i, n) == C.N_tilde_formula(ctx, i, n)
                assert (C.closed_N_tilde(ctx, i, n) > 0) == (n % ctx.e == ctx.rho[i] and n % p != 0)
        for I in C.all_subsets(ctx.factors):
            for x in range(3 * ctx.e * p):
                assert C.closed_N(ctx, I, x)[0] == C.N_I_inclusion_exclusion(ctx, I, x)


def test_z_pd_examples():
    assert C.z_pd_exact(list(all_ctxs(2, 1, 3)), (2,), 6).cumulative(6) == 1
    s3 = [ctx_for(3, 1, (2, 1, 0))]
    t = C.z_pd_exact(s3, (2,), 7)
    assert t.count(7) == 1 and t.cumulative(6) == 0
    for p, r, d in CONFIGS:
        ctxs = list(all_ctxs(p, r, d))
        for I in C.all_subsets(ctxs[0].factors):
            if 1 in I and len(I) == 1:
                continue
            low = min(p * d - c.f for c in ctxs) - 1
            assert C.z_pd_exact(ctxs, I, low).cumulative(low) == 0


def test_z_split_examples():
    ctxs = list(all_ctxs(2, 1, 3))
    t = C.z_split_exact(ctxs, (2,), 18)
    assert t.count(18) == 1 and t.cumulative(17) == 0
    s3 = C.z_split_exact(list(all_ctxs(3, 1, 2)), (2,), 7)
    assert s3.cumulative(7) == 2  # one S_3 sextic over each ramified L


# Oracle-derived values (signature oracle, cross-checked against the literal
# element enumeration in test_oracle_modes_agree), valuation bound 3 / 5 / 2.
FROZEN = {
    (3, 1, 2, 3): {
        ((1,), "pd"): [(0, 1), (3, 2), (8, 3), (9, 6), (12, 9)],
        ((2,), "pd"): [(7, 2), (8, 1), (12, 3)],
        ((1, 2), "pd"): [(7, 2), (8, 4), (9, 6), (12, 48)],
        ((1, 2), "split"): [(21, 2), (24, 1), (31, 6), (32, 3), (36, 3)],
    },
    (2, 1, 3, 5): {
        ((2,), "pd"): [(6, 1), (12, 4), (18, 16)],
        ((2,), "split"): [(18, 1), (36, 4), (54, 16)],
        ((1, 2), "pd"): [(6, 3), (12, 32), (18, 280)],
    },
    (5, 1, 2, 2): {
        ((1,), "pd"): [(0, 1), (5, 2), (16, 5), (17, 10)],
        ((2,), "pd"): [(13, 2), (16, 1)],
        ((1, 2), "split"): [(65, 2), (80, 1), (93, 10), (96, 5)],
    },
}


@pytest.mark.parametrize("key", list(FROZEN))
def test_frozen_oracle_tables(key):
    p, r, d, V = key
    res = oracle(p, r, d, V)
    ctxs = list(all_ctxs(p, r, d))
    for (I, conv), rows in FROZEN[key].items():
        t = res.table(I, conv)
        assert sorted(t.counts.items())[: len(rows)] == rows
        closed = (C.z_pd_exact if conv == "pd" else C.z_split_exact)(ctxs, I, t.x_max)
        assert sorted(closed.counts.items())[: len(rows)] == rows


@pytest.mark.parametrize("p,r,d,V", [(3, 1, 2, 2), (2, 1, 3, 3), (5, 1, 2, 1), (2, 2, 3, 1)])
def test_oracle_modes_agree(p, r, d, V):
    a = C.oracle_census(p, r, d, V, mode="elements", budget=10**5)
    b = C.oracle_census(p, r, d, V)
    assert a.pd == b.pd and a.split == b.split and a.elements == b.elements


def test_oracle_val_bound_zero():
    for p, r, d in CONFIGS:
        res = C.oracle_census(p, r, d, 0)
        assert {k: v for k, v in res.pd.items() if v} == {(lab, (1,)): {pd: 1} for lab, pd in
                                                          zip(res.labels, _unram_discs(p, r, d))}


def _unram_discs(p, r, d):
    return [p * c.f * (c.e - 1) for c in all_ctxs(p, r, d)]


def test_oracle_budget_refusal():
    with pytest.raises(C.BudgetExceeded) as exc:
        C.oracle_census(5, 1, 2, 6, mode="elements", budget=1000)
    assert exc.value.needed > 1000
    with pytest.raises(C.BudgetExceeded):
        C.oracle_census(5, 1, 2, 30, budget=50)


@pytest.mark.parametrize("p,r,d,V", [(3, 1, 2, 4), (2, 1, 3, 5), (5, 1, 2, 3)])
def test_orbit_partition_is_exact(p, r, d, V):
    res = oracle(p, r, d, V)
    fa = factor_xd_minus_1(p, d)
    weighted = sum(c * psi(p, fa, I) for (_, I), tab in res.pd.items() for c in tab.values())
    assert weighted == res.elements
    nonzero = sum(C.element_count(c, V) for c in res.ctxs) - len(res.ctxs)
    assert res.elements == nonzero


@pytest.mark.parametrize("p,r,d", CONFIGS)
def test_oracle_equals_closed_forms(p, r, d):
    res = oracle(p, r, d, 4)
    ctxs = list(all_ctxs(p, r, d))
    for I in C.all_subsets(ctxs[0].factors):
        for L in ["all"] + res.labels:
            sel = ctxs if L == "all" else [c for c in ctxs if c.L.label == L]
            o = res.table(I, "pd", L)
            assert not C.compare_tables(o, C.z_pd_exact(sel, I, o.x_max))
            o = res.table(I, "split", L)
            assert not C.compare_tables(o, C.z_split_exact(sel, I, o.x_max))


def test_label_filter_matches_full_run():
    full = oracle(3, 1, 2, 4)
    part = C.oracle_census(3, 1, 2, 4, labels=[(2,)])
    assert part.split == {k: v for k, v in full.split.items() if k[1] == (2,)}


def test_pd_periodicity_exact():
    ctxs = list(all_ctxs(3, 1, 2))
    I = (1, 2)
    P = C.period(3, 2, 2, "pd")
    factor = Fraction(3) ** (2 * 2)
    prin = [C.pd_principal(ctxs, I, x) for x in range(6 * P)]
    assert all(prin[x + P] == factor * prin[x] for x in range(P, 5 * P))


def test_growth_estimates():
    for conv, target in (("pd", Fraction(1, 3)), ("split", Fraction(1, 9))):
        _, _, est = C.growth_check(list(all_ctxs(2, 1, 3)), (2,), conv)
        assert est.target == target and est.passed
        assert all(r == 0 for r in est.principal_residuals)
    assert C.target_exponent(3, 2, 2, "split") == Fraction(1, 12)


def test_estimate_needs_window():
    t = C.z_pd_exact(list(all_ctxs(2, 1, 3)), (2,), 10)
    with pytest.raises(ValueError):
        C.estimate_exponent(t, 2, 2)


def test_count_table_output():
    t = C.z_pd_exact(list(all_ctxs(2, 1, 3)), (2,), 7)
    rows = t.rows()
    assert rows[6] == (6, 1, 1, "closed") and rows[7] == (7, 0, 1, "closed")
    js = t.to_json()
    assert js["L"] in ("all", [1, 3, 0]) and js["I"] == [2] and js["convention"] == "pd"
    single = C.z_pd_exact([ctx_for(3, 1, (2, 1, 0))], (2,), 7).to_json()
    assert single["L"] == [2, 1, 0]


def test_exact_div():
    assert C.exact_div(12, 4) == 3
    with pytest.raises(C.CountError):
        C.exact_div(13, 4, "x")
