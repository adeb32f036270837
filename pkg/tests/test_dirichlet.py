from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frobcount import census as C
from frobcount import dirichlet as D

from conftest import CONFIGS, all_ctxs


def test_series_of_simple_functions():
    assert D.series_coeffs(D.geometric(1, 1), 5) == [1] * 6
    assert D.series_coeffs(D.geometric(2, 2), 6) == [1, 0, 2, 0, 4, 0, 8]
    f = D.RationalFn(((Fraction(8), 5, ((Fraction(2), 3),)),))
    assert D.series_coeffs(f, 8) == [0, 0, 0, 0, 0, 8, 0, 0, 16]


def test_series_rejects_bad_denominator():
    with pytest.raises(ValueError):
        D.series_coeffs(D.geometric(2, 0), 3)


def _brute_nested(alphas, n):
    """sum over k_1 > ... > k_J >= 0 of prod c_j^k_j u^(B_j k_j), truncated at u^n."""
    out = [Fraction(0)] * (n + 1)

    def rec(j, upper, coef, deg):
        if deg > n:
            return
        if j == len(alphas):
            out[deg] += coef
            return
        c, B = alphas[j]
        k = 0
        while k < upper and deg + B * k <= n:
            rec(j + 1, k, coef * Fraction(c) ** k, deg + B * k)
            k += 1

    rec(0, n + 1, Fraction(1), 0)
    return out


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.sampled_from([Fraction(1, 4), Fraction(1, 2), Fraction(1), Fraction(3)]),
                          st.integers(1, 3)), min_size=1, max_size=3))
def test_potthast_product_matches_nested_sum(alphas):
    n = 20
    assert D.series_coeffs(D.potthast_product(alphas), n) == _brute_nested(alphas, n)


def test_potthast_two_level_example():
    # k_1 > k_2 >= 0, X^alpha_1 = u, X^alpha_2 = 1 * u^1
    got = D.series_coeffs(D.potthast_product([(1, 1), (1, 1)]), 6)
    assert got == _brute_nested([(1, 1), (1, 1)], 6)
    assert got[:4] == [0, 1, 1, 2]


def test_potthast_rejects_nonpositive_degree():
    with pytest.raises(ValueError):
        D.potthast_product([(2, 1), (1, 0)])


def test_compositions_and_lambda():
    assert list(D.compositions(3)) == [(1, 1, 1), (1, 2), (2, 1), (3,)]
    assert len(list(D.compositions(6))) == 2**5
    assert D.lambda_weight([(1, 1, 2), (3,)]) == 2
    assert D.lambda_weight([(2, 2, 2)]) == 6
    assert D.lambda_weight([(1, 2), (2,)]) == 1


def test_pole_examples():
    assert D.pole_report(2, 3, (2,)).sigma_max == Fraction(1, 9)
    rep = D.pole_report(3, 2, (1, 1))
    assert rep.sigmas == (Fraction(1, 18), Fraction(1, 12))
    a, b = D.pole_report(2, 3, (1, 2)), D.pole_report(2, 3, (2, 1))
    assert a.sigma_max == b.sigma_max == D.sigma_max_formula(2, 3, 3)
    assert a.sigmas[0] != b.sigmas[0]
    js = rep.to_json()
    assert js["sigmas"] == ["1/18", "1/12"] and js["sigma_max"] == "1/12"
    with pytest.raises(ValueError):
        D.pole_report(2, 3, ())


@pytest.mark.parametrize("p,r,d", CONFIGS)
def test_rightmost_pole_matches_formula(p, r, d):
    ctxs = list(all_ctxs(p, r, d))
    q = p**r
    for I in C.all_subsets(ctxs[0].factors):
        ell = sum(ctxs[0].factors.ell(i) for i in I)
        if I == (1,):
            continue
        phi = D.assemble_phi(ctxs, I)
        assert D.rightmost_pole(phi, q) == D.sigma_max_formula(p, d, ell)


@pytest.mark.parametrize("p,r,d", CONFIGS)
def test_series_equals_tuple_counts(p, r, d):
    ctxs = list(all_ctxs(p, r, d))
    D_max = 60
    for I in C.all_subsets(ctxs[0].factors):
        for ctx in ctxs:
            coeffs = D.series_coeffs(D.assemble_phi([ctx], I), D_max)
            assert all(c.denominator == 1 and c >= 0 for c in coeffs)
            tab = C.z_split_exact([ctx], I, D_max)
            assert [int(c) for c in coeffs] == tab.series()


def test_gold_standard_single_factor():
    # F_2, d = 3, I = {2}: one S_4-type sextic at disc 18, then 4, 16, ...
    coeffs = D.series_coeffs(D.assemble_phi(list(all_ctxs(2, 1, 3)), (2,)), 54)
    assert {k: int(c) for k, c in enumerate(coeffs) if c} == {18: 1, 36: 4, 54: 16}


def test_principal_part_reproduces_tail():
    ctxs = list(all_ctxs(2, 1, 3))
    I = (2,)
    phi = D.assemble_phi(ctxs, I)
    P = C.period(2, 3, 2, "split")
    B = Fraction(2) ** 2
    numer = D.principal_part(phi, B, P)
    n = 6 * P
    assert D.principal_coeffs(numer, B, P, n)[P:] == D.series_coeffs(phi, n)[P:]


def test_rational_function_json():
    js = D.geometric(Fraction(1, 2), 3).to_json()
    assert js["terms"][0]["denominator"] == [{"b": "1/2", "m": 3}]
    assert js["terms"][0]["coef"] == "1/1"
