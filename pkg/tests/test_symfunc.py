from fractions import Fraction
from itertools import permutations, product
from math import prod

import pytest
from hypothesis import given, settings, strategies as st

from wgcalc.exactnum import MPoly, RatFrac, frac_equal
from wgcalc.partitions import all_partitions, content_sum, contents_multiset, partition
from wgcalc.symfunc import (ArityMismatch, DegreeBoundExceeded, JACK_DEGREE_BOUND, SymFunc,
                            complete, elementary, eval_at_multiset, inner_product_b, jack,
                            jack_at_b0_expected, jack_norm, laplace_beltrami,
                            monomial_in_powersum, powersum_in_monomial, to_monomial_basis)

b = MPoly.var("b")
p = SymFunc.power_sum


def test_monomial_examples():
    assert monomial_in_powersum((1,)) == p((1,))
    assert monomial_in_powersum((2,)) == p((2,))
    assert monomial_in_powersum((1, 1)) == p((1, 1), Fraction(1, 2)) - p((2,), Fraction(1, 2))


def _monomial_by_brute_force(mu, values):
    """m_μ at numbers: sum over the distinct arrangements of the exponents."""
    exps = list(mu) + [0] * (len(values) - len(mu))
    return sum(prod(v ** e for v, e in zip(values, arrangement))
               for arrangement in set(permutations(exps)))


@pytest.mark.parametrize("mu", [m for k in range(1, 5) for m in all_partitions(k) if len(m) <= 3])
def test_monomial_expansion_against_three_variables(mu):
    values = [2, -3, 5]
    got = eval_at_multiset(monomial_in_powersum(mu), values, 3)
    assert got == MPoly.constant(_monomial_by_brute_force(mu, values))


@pytest.mark.parametrize("k", range(1, 6))
def test_monomial_powersum_inverse(k):
    for lam in all_partitions(k):
        back = SymFunc()
        for mu, c in powersum_in_monomial(lam).items():
            back = back + monomial_in_powersum(mu) * c
        assert back == p(lam)


def test_inner_product_examples():
    assert frac_equal(inner_product_b(p((2,)), p((2,))), RatFrac(2 * (b + 1)))
    assert inner_product_b(p((2,)), p((1, 1))).is_zero()
    assert frac_equal(inner_product_b(jack((2,)), jack((2,))), RatFrac(jack_norm((2,))))


def test_laplace_beltrami_examples():
    assert laplace_beltrami(p((1,))).is_zero()
    assert laplace_beltrami(jack((2,))) == jack((2,)) * (b + 1)
    assert laplace_beltrami(jack((1, 1))) == jack((1, 1)) * (-1)


def test_jack_examples():
    assert jack(()) == SymFunc.one()
    assert jack((1,)) == p((1,))
    assert jack((1, 1)) == p((1, 1)) - p((2,))
    assert jack((2, 1)) == p((3,)) * (-(b + 1)) + p((2, 1)) * b + p((1, 1, 1))


@pytest.mark.parametrize("k", range(1, 6))
def test_jack_orthogonality(k):
    lams = all_partitions(k)
    for lam, mu in product(lams, lams):
        value = inner_product_b(jack(lam), jack(mu))
        if lam == mu:
            assert frac_equal(value, RatFrac(jack_norm(lam)))
        else:
            assert value.is_zero()


@pytest.mark.parametrize("k", range(1, 6))
def test_jack_eigenvectors(k):
    for lam in all_partitions(k):
        assert laplace_beltrami(jack(lam)) == jack(lam) * content_sum(lam)


def test_degenerate_eigenvalue_pair():
    # equal content sums: the eigen-equation alone cannot separate these two
    assert content_sum((4, 1, 1)) == content_sum((3, 3))
    for lam in [(4, 1, 1), (3, 3)]:
        assert laplace_beltrami(jack(lam)) == jack(lam) * content_sum(lam)
    assert inner_product_b(jack((4, 1, 1)), jack((3, 3))).is_zero()


@pytest.mark.parametrize("k", range(1, 5))
def test_jack_at_zero_is_scaled_schur(k):
    for lam in all_partitions(k):
        assert jack(lam).substitute({"b": 0}) == jack_at_b0_expected(lam)


def test_jack_leading_monomial_coefficient():
    from wgcalc.partitions import hook_products
    for lam in all_partitions(4):
        coeffs = to_monomial_basis(jack(lam))
        assert frac_equal(coeffs[lam], RatFrac(hook_products(lam)[0]))


def test_jack_degree_bound():
    with pytest.raises(DegreeBoundExceeded):
        jack((JACK_DEGREE_BOUND + 1,))


def test_eval_at_multiset_examples():
    assert eval_at_multiset(elementary(1), contents_multiset((2,)), 2) == b + 1
    assert eval_at_multiset(complete(1), contents_multiset((1, 1)), 2) == MPoly.constant(-1)
    assert eval_at_multiset(monomial_in_powersum((1, 1)), contents_multiset((3,)), 3) == 2 * (b + 1) ** 2


def test_eval_arity():
    with pytest.raises(ArityMismatch):
        eval_at_multiset(elementary(1), [1, 2], 3)


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=4), st.integers(1, 4))
@settings(max_examples=40, deadline=None)
def test_elementary_and_complete_by_generating_functions(values, r):
    # e_r and h_r at integers, compared with direct sums over subsets and multisets
    from itertools import combinations, combinations_with_replacement
    e = sum(prod(c) for c in combinations(values, r))
    h = sum(prod(c) for c in combinations_with_replacement(values, r))
    k = len(values)
    assert eval_at_multiset(elementary(r), values, k) == MPoly.constant(e)
    assert eval_at_multiset(complete(r), values, k) == MPoly.constant(h)
