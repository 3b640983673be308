import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from excedance_lab.multipoly import (
    Context,
    ParseError,
    as_fraction,
    binomial,
    horner_eval,
    poly_from_json,
)

from oracles import descent_counts, signed_words, signed_exc, signed_fix


@pytest.fixture
def ctx():
    return Context()


def test_binomial_square(ctx):
    x = ctx.var("x")
    assert (1 + x) * (1 + x) == ctx.poly("1 + 2*x + x^2")


def test_difference_of_squares(ctx):
    x, y = ctx.var("x"), ctx.var("y")
    assert (x - y) * (x + y) == x**2 - y**2


def test_eulerian_four_from_gamma_basis(ctx):
    # (1+x)^3 + 8x(1+x) must equal the descent polynomial of S_4
    x = ctx.var("x")
    lhs = (1 + x) ** 3 + 8 * x * (1 + x)
    expected = ctx.zero()
    for des, cnt in descent_counts(4).items():
        expected = expected + cnt * x**des
    assert lhs == expected
    assert lhs == ctx.poly("1 + 11*x + 11*x^2 + x^3")


def test_pow_rejects_negative(ctx):
    with pytest.raises(ValueError):
        ctx.var("x") ** -1


def test_differentiate_basics(ctx):
    assert ctx.poly("x^2*y").differentiate("x") == ctx.poly("2*x*y")
    assert ctx.const(17).differentiate("x") == ctx.zero()
    assert ctx.poly("5*y").differentiate("x").is_zero()


def test_differentiate_recurrence_step(ctx):
    # one derivative-recurrence step lifts q(x+q) to the next cycle polynomial
    x, q = ctx.var("x"), ctx.var("q")
    a2 = q * (x + q)
    a3 = (2 * x + q) * a2 + x * (1 - x) * a2.differentiate("x")
    assert a3 == ctx.poly("q^3 + (q + 3*q^2)*x + q*x^2")


def test_substitute_examples(ctx):
    f = ctx.poly("u + v")
    assert f.substitute({"u": ctx.poly("x+y"), "v": ctx.poly("x*y")}) == ctx.poly("x + y + x*y")
    g = ctx.poly("x*y*(x+y)")
    assert g.substitute({"y": 1}) == ctx.poly("x*(x+1)")


def test_substitute_known_decomposition_pair(ctx):
    a = ctx.poly("1 + 7*x + x^2")
    b = ctx.poly("3 + 3*x")
    assert a + ctx.var("x") * b == ctx.poly("1 + 10*x + 4*x^2")


def test_eval_rational_signed_derangement_cross_check(ctx):
    # 8*A_3(x, p, 1) at p = 1/2 equals the excedance polynomial of the
    # fixed-point-free signed permutations of order 3
    a3 = ctx.poly("p^3*q^3 + (q + 3*p*q^2)*x + q*x^2")
    lhs = (8 * a3).eval_rational({"p": Fraction(1, 2)}).substitute({"q": 1})
    counts = {}
    for word in signed_words(3):
        if signed_fix(word) == 0:
            e = signed_exc(word)
            counts[e] = counts.get(e, 0) + 1
    expected = ctx.zero()
    for e, c in counts.items():
        expected = expected + c * ctx.var("x") ** e
    assert lhs == expected == ctx.poly("1 + 20*x + 8*x^2")


def test_eval_rational_simple(ctx):
    a2 = ctx.poly("p^2*q^2 + q*x")
    assert a2.eval_rational({"p": 1, "q": 1}) == ctx.poly("1 + x")
    assert a2.eval_rational({}) == a2


def test_coeffs_in(ctx):
    a2 = ctx.poly("p^2*q^2 + q*x")
    coeffs = a2.coeffs_in("x")
    assert coeffs == [ctx.poly("p^2*q^2"), ctx.var("q")]
    assert ctx.const(5).coeffs_in("x") == [ctx.const(5)]
    a4 = ctx.poly(
        "p^4*q^4 + (q + 4*p*q^2 + 6*p^2*q^3)*x + (4*q + 3*q^2 + 4*p*q^2)*x^2 + q*x^3"
    )
    assert a4.coeffs_in("x")[2] == ctx.poly("4*q + 3*q^2 + 4*p*q^2")


def test_coeffs_in_reassembles(ctx):
    f = ctx.poly("3*x^2*y - 2*x + 7*y^3 + 5")
    x = ctx.var("x")
    total = ctx.zero()
    for i, c in enumerate(f.coeffs_in("x")):
        total = total + c * x**i
    assert total == f


def test_reverse_in(ctx):
    f = ctx.poly("1 + 3*x + 2*x^2")
    assert f.reverse_in("x", 2) == ctx.poly("2 + 3*x + x^2")
    assert f.reverse_in("x", 3) == ctx.poly("2*x + 3*x^2 + x^3")
    with pytest.raises(ValueError):
        f.reverse_in("x", 1)


def test_canonical_text_and_parse_round_trip(ctx):
    f = ctx.poly("q*x + p^2*q^2")
    assert f.to_text() == "p^2*q^2 + q*x"
    assert ctx.poly(f.to_text()) == f
    g = ctx.poly("x^2 - y^2")
    assert g.to_text() == "x^2 - y^2"
    assert ctx.poly(g.to_text()) == g
    assert ctx.zero().to_text() == "0"
    assert ctx.poly("0").is_zero()


def test_fraction_coefficients_render_and_parse(ctx):
    f = ctx.poly("x").eval_rational({"x": Fraction(1, 1)}) + ctx.poly("3/4*x")
    assert ctx.poly(f.to_text()) == f


def test_json_round_trip(ctx):
    f = ctx.poly("p^2*q^2 + q*x - 5")
    data = json.loads(f.to_json())
    assert data[0]["coeff"] == "-5"
    assert poly_from_json(ctx, data) == f
    other = Context()
    assert poly_from_json(other, f.to_json()) == other.poly("p^2*q^2 + q*x - 5")


def test_cross_context_equality(ctx):
    other = Context(["q", "x", "p"])  # different interning order
    assert ctx.poly("p^2*q^2 + q*x") == other.poly("q*x + p^2*q^2")


def test_parse_errors(ctx):
    for bad in ("", "x +", "x ^ y", "(x", "x $ y", "1/(x+1)"):
        with pytest.raises(ParseError):
            ctx.poly(bad)


def test_as_fraction():
    assert as_fraction("3/4") == Fraction(3, 4)
    assert as_fraction(2) == Fraction(2)
    with pytest.raises(ParseError):
        as_fraction("x")


def test_horner_matches_eval(ctx):
    f = ctx.poly("2*x^3 - x + 4")
    point = Fraction(5, 3)
    direct = f.eval_rational({"x": point})
    via_horner = horner_eval(f.coeffs_in("x"), point)
    assert direct == via_horner


def test_binomial():
    assert [binomial(5, k) for k in range(6)] == [1, 5, 10, 10, 5, 1]
    assert binomial(3, 5) == 0
    assert binomial(-1, 0) == 0
    assert binomial(-1, 2) == 0


# -- property tests ---------------------------------------------------------

_coeffs = st.integers(min_value=-(2**66), max_value=2**66)
_exps = st.integers(min_value=0, max_value=4)


@st.composite
def polys(draw, ctx):
    terms = draw(st.lists(st.tuples(_coeffs, _exps, _exps), min_size=0, max_size=5))
    total = ctx.zero()
    for c, ex, ey in terms:
        total = total + ctx.monomial({"x": ex, "y": ey}, c)
    return total


_CTX = Context()


@given(polys(_CTX), polys(_CTX), polys(_CTX))
def test_ring_axioms(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f - f == _CTX.zero()


@given(polys(_CTX), polys(_CTX))
def test_product_rule(f, g):
    d = lambda p: p.differentiate("x")
    assert d(f * g) == d(f) * g + f * d(g)


@given(polys(_CTX), polys(_CTX))
def test_substitution_composes(f, g):
    h = _CTX.poly("1 - y")
    lhs = f.substitute({"x": g}).substitute({"y": h})
    rhs = f.substitute({"x": g.substitute({"y": h}), "y": h})
    assert lhs == rhs
