import pytest

from excedance_lab.families import (
    BadParams,
    OutOfTable,
    REGISTRY,
    alpha_polys,
    colored_eulerian,
    derangement_poly,
    classical_eulerian,
    family,
    fix_cyc_eulerian,
    gamma_poly,
    one_over_k_decomposition,
    one_over_k_eulerian,
    one_over_k_pm_polys,
    phi_kernel,
    q_bracket,
    q_eulerian,
    springer,
    substituted_eulerian,
    type_b_q_eulerian,
)
from excedance_lab.multipoly import Context

from oracles import plain_exc_fix_cyc


@pytest.fixture
def ctx():
    return Context()


def test_q_eulerian_values(ctx):
    assert q_eulerian(ctx, 0) == ctx.const(1)
    assert q_eulerian(ctx, 1) == ctx.var("q")
    assert family(ctx, "A_q", 2) == ctx.poly("q*(x+q)")


def test_fix_cyc_values(ctx):
    assert fix_cyc_eulerian(ctx, 1) == ctx.poly("p*q")
    assert fix_cyc_eulerian(ctx, 2) == ctx.poly("p^2*q^2 + q*x")
    assert fix_cyc_eulerian(ctx, 3) == ctx.poly("p^3*q^3 + (q + 3*p*q^2)*x + q*x^2")
    assert fix_cyc_eulerian(ctx, 4) == ctx.poly(
        "p^4*q^4 + (q + 4*p*q^2 + 6*p^2*q^3)*x + (4*q + 3*q^2 + 4*p*q^2)*x^2 + q*x^3"
    )


def test_fix_cyc_matches_enumeration_oracle(ctx):
    for n in range(6):
        expected = ctx.zero()
        for (e, f, c), cnt in plain_exc_fix_cyc(n).items():
            expected = expected + cnt * ctx.monomial({"x": e, "p": f, "q": c})
        assert fix_cyc_eulerian(ctx, n) == expected


def test_gamma_poly_values(ctx):
    assert gamma_poly(ctx, 1) == ctx.poly("p*q")
    assert gamma_poly(ctx, 2) == ctx.poly("p^2*q^2 + q*x")
    assert family(ctx, "gamma_pq", 3) == ctx.poly("p^3*q^3 + q*(1 + 3*p*q)*x")


def test_one_over_k_values(ctx):
    assert one_over_k_eulerian(ctx, 1, None) == ctx.const(1)
    assert one_over_k_eulerian(ctx, 2, None) == ctx.poly("1 + k*x")
    assert family(ctx, "one_over_k", 3) == ctx.poly("1 + 3*k*x + k^2*x*(1+x)")
    assert family(ctx, "one_over_k", 3, k=2) == ctx.poly("1 + 10*x + 4*x^2")


def test_pm_tables_values(ctx):
    for n, plus_expected, minus_expected in (
        (2, "1", "k - 1"),
        (3, "1 + (3*k - 1)*x", "k^2 - 1"),
        (4, "1 + (6*k + 4*k^2 - 2)*x", "k^3 - 1 + (1 - 6*k + 3*k^2 + 2*k^3)*x"),
    ):
        fp, fm = one_over_k_pm_polys(ctx, n, None)
        assert fp == ctx.poly(plus_expected)
        assert fm == ctx.poly(minus_expected)


def test_one_over_k_decomposition_values(ctx):
    a3, b3 = one_over_k_decomposition(ctx, 3, 2)
    assert a3 == ctx.poly("1 + 7*x + x^2")
    assert b3 == ctx.poly("3 + 3*x")
    a4, b4 = one_over_k_decomposition(ctx, 4, 2)
    assert a4 == ctx.poly("1 + 29*x + 29*x^2 + x^3")
    assert b4 == ctx.poly("7 + 31*x + 7*x^2")
    assert a4 + ctx.var("x") * b4 == one_over_k_eulerian(ctx, 4, 2)


def test_xi_values(ctx):
    assert family(ctx, "xi_plus", 2) == ctx.const(1)
    assert family(ctx, "xi_minus", 2) == ctx.const(1)
    assert family(ctx, "xi_plus", 3) == ctx.poly("1 + 5*x")
    assert family(ctx, "xi_minus", 3) == ctx.const(3)


def test_colored_eulerian_values(ctx):
    assert colored_eulerian(ctx, 1, None) == ctx.poly("1 + (r-1)*x")
    assert colored_eulerian(ctx, 2, None) == ctx.poly(
        "1 + (r^2 + 2*r - 2)*x + (r-1)^2*x^2"
    )
    assert family(ctx, "A_r", 2, r=2) == ctx.poly("1 + 6*x + x^2")


def test_alpha_values(ctx):
    assert family(ctx, "alpha_minus", 1) == ctx.poly("r - 2")
    assert family(ctx, "alpha_plus", 1) == ctx.const(1)
    fp, fm = alpha_polys(ctx, 2, None)
    assert fp == ctx.poly("1 + (4*r - 4)*x")
    assert fm == ctx.poly("r^2 - 2*r")


def test_type_b_q_values(ctx):
    assert type_b_q_eulerian(ctx, 0) == ctx.const(1)
    assert type_b_q_eulerian(ctx, 1) == ctx.poly("1 + q*x")
    assert family(ctx, "B_typeB_q", 2) == ctx.poly("1 + (1 + 4*q + q^2)*x + q^2*x^2")


def test_phi_values(ctx):
    assert phi_kernel(ctx, 0).is_zero()
    assert phi_kernel(ctx, 1).is_zero()
    assert family(ctx, "phi", 2) == ctx.poly("x*y")
    assert family(ctx, "phi", 3) == ctx.poly("x*y*(x+y)")


def test_springer_values():
    assert [springer(n) for n in range(8)] == [1, 1, 3, 11, 57, 361, 2763, 24611]
    with pytest.raises(OutOfTable):
        springer(8)
    with pytest.raises(OutOfTable):
        springer(-1)


def test_q_bracket_values(ctx):
    assert q_bracket(ctx, 0, "p").is_zero()
    assert q_bracket(ctx, 1, "p") == ctx.const(1)
    assert q_bracket(ctx, 3, "x") == ctx.poly("1 + x + x^2")


def test_substituted_eulerian_examples(ctx):
    got = substituted_eulerian(
        ctx, 1, ctx.poly("x"), ctx.poly("y"), ctx.poly("t + s*p"), "q"
    )
    assert got == ctx.poly("q*(t + s*p)")
    r = 3
    got_r = substituted_eulerian(
        ctx, 1, ctx.poly("3*x"), ctx.poly("3*y"), ctx.poly("(3-1)*x + p"), "q"
    )
    assert got_r == ctx.poly("q*((3-1)*x + p)")
    # identity weights reproduce the four-variable distribution
    got_id = substituted_eulerian(ctx, 3, ctx.var("x"), ctx.var("y"), ctx.var("p"), "q")
    expected = ctx.zero()
    for (e, f, c), cnt in plain_exc_fix_cyc(3).items():
        expected = expected + cnt * ctx.monomial(
            {"x": e, "y": 3 - e - f, "p": f, "q": c}
        )
    assert got_id == expected


def test_classical_and_derangement(ctx):
    assert classical_eulerian(ctx, 4) == ctx.poly("1 + 11*x + 11*x^2 + x^3")
    assert derangement_poly(ctx, 0) == ctx.const(1)
    assert derangement_poly(ctx, 1).is_zero()
    assert derangement_poly(ctx, 4) == ctx.poly("x + 7*x^2 + x^3")


def test_registry_and_bad_params(ctx):
    assert "one_over_k" in REGISTRY
    with pytest.raises(BadParams):
        family(ctx, "no_such_family", 3)
    with pytest.raises(BadParams):
        family(ctx, "A_q", -1)
    with pytest.raises(BadParams):
        family(ctx, "one_over_k", 3, k=0)
    # n = 0 is the empty-product convention, not an error
    assert family(ctx, "gamma_pq", 0) == ctx.const(1)
