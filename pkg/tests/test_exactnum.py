from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wgcalc.exactnum import (DenominatorVanishes, MPoly, NonzeroConstantTerm, PoleAtInfinity,
                             PrecisionError, RatFrac, TruncSeries, UniPoly, frac_equal, from_json,
                             graded_series_exp, graded_series_log, pack, parse, series_at_infinity,
                             substitute, to_json, unpack)

b = MPoly.var("b")
t = MPoly.var("t")
N = MPoly.var("N")
M = MPoly.var("M")
z = MPoly.var("z")
p1 = MPoly.var("p1")

small_coeff = st.integers(min_value=-4, max_value=4)


@st.composite
def polys(draw, names=("b", "t", "N")):
    terms = draw(st.lists(st.tuples(st.tuples(*[st.integers(0, 3)] * len(names)), small_coeff),
                          max_size=5))
    return MPoly.from_exponents((dict(zip(names, exps)), c) for exps, c in terms)


@st.composite
def nonzero_polys(draw):
    p = draw(polys())
    return p if p.terms else MPoly.constant(draw(st.integers(1, 5)))


def test_pack_roundtrip():
    exps = {"b": 3, "N": 2, "p12": 1}
    assert unpack(pack(exps)) == exps


def test_pack_rejects_negative_exponent():
    with pytest.raises(OverflowError):
        pack({"b": -1})


def test_unknown_variable():
    with pytest.raises(ValueError):
        MPoly.var("q")


@given(polys(), polys(), polys())
@settings(max_examples=60, deadline=None)
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == MPoly()


@given(polys(), nonzero_polys())
@settings(max_examples=40, deadline=None)
def test_exact_division(f, g):
    assert (f * g).divexact(g) == f


@given(polys(), nonzero_polys(), polys(), nonzero_polys())
@settings(max_examples=40, deadline=None)
def test_fraction_field(a, c, d, e):
    x = RatFrac(a, c)
    y = RatFrac(d, e)
    assert frac_equal(x + y, y + x)
    assert frac_equal((x + y) - y, x)
    assert frac_equal(x * y, y * x)
    if not x.is_zero():
        assert frac_equal((y / x) * x, y)


def test_frac_equal_examples():
    assert frac_equal(RatFrac(M, N), RatFrac(M, N))
    assert frac_equal(RatFrac(M, N), RatFrac(M * (N - 1), N * (N - 1)))
    assert not frac_equal(RatFrac(M, N), RatFrac(N, M))


def test_substitute_cancels():
    value = substitute(RatFrac(M, N), {"M": RatFrac(N, 1 - t)})
    assert frac_equal(value, RatFrac(1, 1 - t))


def test_substitute_polynomial():
    assert frac_equal(substitute(b * t, {"b": 1}), RatFrac(t))


def test_substitute_vanishing_denominator():
    with pytest.raises(DenominatorVanishes):
        substitute(RatFrac(1, N + b + 1), {"b": -N - 1})


def test_series_geometric():
    s = series_at_infinity(RatFrac(1, N - 1), 3)
    assert [Fraction(c.num.constant_value()) if c.num.terms else 0 for c in s.coeffs] == [0, 1, 1, 1]


def test_series_exact_cancellation():
    value = substitute(RatFrac(M, N), {"M": RatFrac(N, 1 - t)})
    s = series_at_infinity(value, 2)
    assert frac_equal(s[0], RatFrac(1, 1 - t))
    assert s[1].is_zero() and s[2].is_zero()


def test_series_first_order_weingarten_term():
    f = RatFrac(M * (N - M), N * (N + b + 1) * (N - 1))
    value = substitute(f, {"M": RatFrac(N, 1 - t)})
    s = series_at_infinity(value, 1)
    assert frac_equal(s[1], RatFrac(-t, (1 - t) ** 2))


def test_series_pole():
    with pytest.raises(PoleAtInfinity):
        series_at_infinity(RatFrac(N * N, N + 1), 2)


def test_truncseries_precision():
    s = TruncSeries("u", [1, 2, 3])
    assert s[2] == 3
    with pytest.raises(PrecisionError):
        s[3]
    with pytest.raises(PrecisionError):
        s.truncate(5)


def test_truncseries_product():
    geometric = TruncSeries("u", [1, 1, 1, 1])
    one_minus = TruncSeries("u", [1, -1, 0, 0])
    assert (geometric * one_minus).coeffs == [1, 0, 0, 0]


def test_graded_exp_of_zero():
    assert graded_series_exp(MPoly(), {"z": 1}, 3) == MPoly.constant(1)


def test_graded_exp_example():
    expected = 1 + z * p1 + z * z * p1 * p1 * Fraction(1, 2)
    assert graded_series_exp(z * p1, {"z": 1}, 2) == expected


def test_graded_exp_log_inverse():
    S = z * p1 * (b + 1) + z * z * t * Fraction(3, 2) + z ** 3 * b
    assert graded_series_log(graded_series_exp(S, {"z": 1}, 4), {"z": 1}, 4) == S


def test_graded_exp_rejects_constant_term():
    with pytest.raises(NonzeroConstantTerm):
        graded_series_exp(z + 1, {"z": 1}, 2)
    with pytest.raises(NonzeroConstantTerm):
        graded_series_log(z + 2, {"z": 1}, 2)


def test_unipoly_gcd_and_squarefree():
    P = UniPoly.from_roots([1, 1, 2])
    Q = UniPoly.from_roots([1, 3])
    assert P.gcd(Q) == UniPoly.from_roots([1])
    assert P.squarefree_part() == UniPoly.from_roots([1, 2])
    assert sorted(m for _, m in P.squarefree_decomposition()) == [1, 2]


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=5), st.lists(st.integers(-5, 5), min_size=1, max_size=4))
@settings(max_examples=50, deadline=None)
def test_unipoly_division(a, d):
    A = UniPoly(a)
    D = UniPoly(d)
    if D.is_zero():
        return
    q, r = A.divmod(D)
    assert q * D + r == A
    assert r.is_zero() or r.degree() < D.degree()


def test_parse_and_json_roundtrip():
    f = parse("(b+1)*t^2 - 3/2*t")
    assert f == (b + 1) * t * t - t * Fraction(3, 2)
    assert from_json(to_json(f)) == f
    g = parse("M/(N*(N-1))")
    assert frac_equal(from_json(to_json(g)), RatFrac(M, N * (N - 1)))


def test_json_is_deterministic():
    f = parse("t + b")
    g = parse("b + t")
    assert to_json(f) == to_json(g)
