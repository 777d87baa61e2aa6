from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from ffdet.complexity import (
    CostParams,
    combined_table_report,
    counts_combined,
    counts_combined_unchecked,
    counts_dodgson,
    counts_one_pass,
    integer_cost_by_substitution,
    leading_M,
    modular_costs,
    modular_mu,
    optimal_r_by_counts,
    poly_op_time,
    r_best_integer_coeff,
    r_best_real,
    step_costs,
    total_step_cost,
)


def test_count_examples():
    assert counts_dodgson(3) == (10, 1, 5)
    assert counts_dodgson(2) == (2, 0, 1)
    assert counts_dodgson(5) == (60, 14, 30)
    assert counts_one_pass(3) == (9, 0, 5)
    assert counts_one_pass(2) == (2, 0, 1)
    assert counts_one_pass(5) == (50, 7, 30)
    assert counts_combined(5, 3) == (49, 5, 30)
    assert counts_combined(4, 2) == (24, 1, 14)


def test_count_domain_errors():
    with pytest.raises(ValueError):
        counts_dodgson(1)
    with pytest.raises(ValueError):
        counts_combined(6, 5)
    with pytest.raises(ValueError):
        optimal_r_by_counts(3)


def test_optimal_switch_point_examples():
    assert optimal_r_by_counts(4) == 2
    assert optimal_r_by_counts(5) == 3
    assert counts_combined(5, 2).mul_div == 56 and counts_combined(5, 3).mul_div == 54
    assert optimal_r_by_counts(20) in (10, 11)


def test_boundary_collapse_symbolic():
    n = sympy.Symbol("n")
    m_r, d_r, _ = _symbolic_combined(n, n - 1)
    m_o, d_o, _ = _symbolic(counts_one_pass_poly, n)
    assert sympy.expand(m_r - m_o) == 0 and sympy.expand(d_r - d_o) == 0
    m_1, _, _ = _symbolic_combined(n, 1)
    assert sympy.expand(m_1 - _symbolic(counts_dodgson_poly, n)[0]) == 0


def test_boundary_collapse_by_evaluation():
    for n in range(4, 54):
        assert counts_combined_unchecked(n, n - 1) == counts_one_pass(n)
        assert counts_combined_unchecked(n, 1).n_mul == counts_dodgson(n).n_mul
        # the division form is off by n - 2 at r = 1, which is why its domain starts at 2
        assert counts_dodgson(n).n_div - counts_combined_unchecked(n, 1).n_div == n - 2


def counts_dodgson_poly(n):
    return ((4 * n**3 - 6 * n**2 + 2 * n) / 6, (2 * n**3 - 9 * n**2 + 13 * n - 6) / 6, 0)


def counts_one_pass_poly(n):
    return ((3 * n**3 - 3 * n**2) / 6, (n**3 - 3 * n**2 - 4 * n + 12) / 6, 0)


def _symbolic(fn, n):
    return tuple(sympy.nsimplify(x) for x in fn(n))


def _symbolic_combined(n, r):
    return (
        sympy.Rational(1, 6) * (4 * n**3 - 4 * n - 4 * r**3 + 9 * r**2 * n - 6 * r * n**2 - 3 * r * n + 4 * r),
        sympy.Rational(1, 6) * (2 * n**3 - 3 * n**2 - 5 * n + 12 - 4 * r**3 + 9 * r**2 * n - 3 * r**2
                                - 6 * r * n**2 + 3 * r * n + r),
        0,
    )


def test_closed_forms_are_integers_up_to_200():
    for n in range(2, 201):
        counts_dodgson(n)
        counts_one_pass(n)
        for r in range(2, n - 1):
            counts_combined(n, r)


def _unit_price(kind):
    return lambda k, i, j: 1 if k == kind else 0


@pytest.mark.parametrize("n", range(2, 16))
def test_step_model_with_unit_prices_reproduces_counts(n):
    for r in range(0, n + 1):
        got = tuple(sum(step_costs(n, r, _unit_price(k))) for k in "MDA")
        if r <= 1:
            expect = counts_dodgson(n)
        elif r >= n - 1:
            expect = counts_one_pass(n)
        else:
            expect = counts_combined(n, r)
        assert got == tuple(expect)


def test_step_model_summed_symbolically():
    """Sum the per-step loop counts with sympy and compare with the closed forms."""
    n, k, r = sympy.symbols("n k r", integer=True, positive=True)
    dod_m = sympy.summation(2 * (n - k) ** 2, (k, 1, n - 1))
    dod_d = sympy.summation((n - k) ** 2, (k, 2, n - 1))
    adds = sympy.summation((n - k) ** 2, (k, 1, n - 1))
    assert sympy.expand(dod_m - sympy.Rational(1, 6) * (4 * n**3 - 6 * n**2 + 2 * n)) == 0
    assert sympy.expand(dod_d - sympy.Rational(1, 6) * (2 * n**3 - 9 * n**2 + 13 * n - 6)) == 0
    assert sympy.expand(adds - sympy.Rational(1, 6) * (2 * n**3 - 3 * n**2 + n)) == 0
    op_m = 2 * (2 * n - 3) + sympy.summation((n - k) * (k + 1) + 2 * k * (n - k - 1), (k, 2, n - 1))
    op_d = sympy.summation(k * (n - k - 1), (k, 2, n - 1))
    assert sympy.expand(op_m - sympy.Rational(1, 6) * (3 * n**3 - 3 * n**2)) == 0
    assert sympy.expand(op_d - sympy.Rational(1, 6) * (n**3 - 3 * n**2 - 4 * n + 12)) == 0
    comb_m = (
        2 * (2 * n - 3)
        + sympy.summation((n - k) * (k + 1) + 2 * k * (n - k - 1), (k, 2, r - 1))
        + (n - r) ** 2 * (r + 1)
        + sympy.summation(2 * (n - k) ** 2, (k, r + 1, n - 1))
    )
    comb_d = sympy.summation(k * (n - k - 1), (k, 2, r - 1)) + sympy.summation((n - k) ** 2, (k, r + 1, n - 1))
    expect_m, expect_d, _ = _symbolic_combined(n, r)
    assert sympy.expand(comb_m - expect_m) == 0
    assert sympy.expand(comb_d - expect_d) == 0


def test_table_row_matches_for_integer_switch_points():
    for n in range(5, 40):
        report = combined_table_report(n)
        usable = [e for e in report if e["r"] is not None]
        assert usable and all(e["match"] for e in usable)
        assert all((n + e["v"]) % 2 == 0 for e in usable)


# -- polynomial-ring time model --------------------------------------------------


def test_poly_op_time_examples():
    assert poly_op_time("A", 1, 3, CostParams(s=1, p=2, a=1)) == 7
    assert poly_op_time("M", 2, 3, CostParams(s=1, p=1, simplified=True)) == 6
    for s in (1, 2, 3):
        assert poly_op_time("D", 4, 4, CostParams(s=s, p=2, simplified=True)) == 0
    with pytest.raises(ValueError):
        poly_op_time("D", 2, 3, CostParams(s=1, p=1))
    with pytest.raises(ValueError):
        poly_op_time("X", 2, 3, CostParams(s=1, p=1))


def test_general_model_leading_terms_agree_with_simplified():
    params = CostParams(s=1, p=50)
    simple = CostParams(s=1, p=50, simplified=True)
    for kind in ("M", "D"):
        a, b = poly_op_time(kind, 40, 20, params), poly_op_time(kind, 40, 20, simple)
        assert abs(a / b - 1) < 0.1


@given(st.integers(1, 30), st.integers(1, 30), st.integers(0, 4), st.integers(1, 6), st.integers(1, 5))
def test_integer_substitution_rule(i, j, s, p, l):
    i, j = max(i, j), min(i, j)
    preset = CostParams(s=s, p=p, l=l, coeff="integer", simplified=True)
    assert poly_op_time("M", i, j, preset) == integer_cost_by_substitution("M", i, j, s, p, l)
    assert poly_op_time("D", i, j, preset) == integer_cost_by_substitution("D", i, j, s, p, l)


def test_integer_scalar_times():
    c = CostParams(s=1, p=1, l=2, m=1, d=1, a=1, coeff="integer")
    assert c.scalar_add(3, 4) == 16
    assert c.scalar_mul(3, 4) == 3 * 4 * 4 * 3
    assert c.scalar_div(5, 2) == (10 - 4 + 1) * (1 + 4 * 3)


def test_leading_model_examples():
    assert leading_M(10, 0, 1, 1) == 10000
    assert leading_M(10, 4, 2, 0) == 0
    for s in (1, 2, 3):
        n = 10**4
        ratio = leading_M(n, n, s, 1) / leading_M(n, 0, s, 1)
        assert abs(ratio / Fraction(2 * s + 1, 2) - 1) < 0.01


def test_leading_model_tracks_step_sum():
    """The summed step model's argmin sits at the closed-form r_best."""
    n = 200
    params = CostParams(s=1, p=1, simplified=True)
    best = min(range(2, n - 1), key=lambda r: total_step_cost(n, r, params))
    assert abs(best - r_best_real(n, 1)) <= 1


def test_r_best_examples():
    assert r_best_real(100, 1) == 50.5
    assert r_best_integer_coeff(100, 1) == 49.0


def test_modular_estimates():
    assert modular_mu(2, 1, 1, 1, 31) == 5
    est = modular_costs(3, 6, 1, 1)
    assert est.nu == 54
    assert (est.dodgson, est.one_pass, est.combined) == (1296, 864, 756)
    est = modular_costs(7, 3, 1, 0)
    assert est.dodgson / est.combined == Fraction(16, 11) and est.one_pass / est.combined == Fraction(12, 11)
    with pytest.raises(ValueError):
        modular_mu(3, 0, 1, 1, 31)


@given(st.integers(1, 50), st.integers(1, 20), st.integers(0, 10), st.integers(0, 10))
def test_modular_cost_ordering(n, mu, m, d):
    est = modular_costs(n, mu, m, d)
    assert est.combined <= est.one_pass <= est.dodgson
