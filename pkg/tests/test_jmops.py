import pytest

from wgcalc.exactnum import MPoly, RatFrac
from wgcalc.jmops import (CHEAP_LEVEL_BOUND, JM_LEVEL_BOUND, ExpensiveComputation, IndexOutOfRange,
                          NotCosetTypeInvariant, PkVector, ch_b, e_vector, j_apply, jack_pairing,
                          odd_jm_apply, orbit_space, p_vector, verify_suite, w_tableau, w_vector)
from wgcalc.pairings import PairPartition, identity_pairing
from wgcalc.partitions import all_partitions, all_tableaux, standard_tableaux
from wgcalc.symfunc import SymFunc, jack

b = MPoly.var("b")
E2 = identity_pairing(2)
NESTED = PairPartition.parse("(1 4|2 3)")
CROSSING = PairPartition.parse("(1 3|2 4)")


def test_first_operator_is_zero():
    assert j_apply(1, e_vector(3)).is_zero()


def test_second_operator_on_identity():
    assert j_apply(2, e_vector(2)) == p_vector((2,))


def test_second_operator_weights():
    v = j_apply(2, PkVector.basis(NESTED))
    assert v.coefficient(E2) == RatFrac(1) and v.coefficient(NESTED) == RatFrac(b)
    w = j_apply(2, PkVector.basis(CROSSING))
    assert w.coefficient(E2) == RatFrac(b) and w.coefficient(CROSSING) == RatFrac(b)


def test_unweighted_operator_drops_b():
    v = odd_jm_apply(2, PkVector.basis(CROSSING))
    assert v.coefficient(E2) == RatFrac(1) and v.coefficient(CROSSING) == RatFrac(1)


def test_operator_index_range():
    with pytest.raises(IndexOutOfRange):
        j_apply(3, e_vector(2))


def test_vector_arithmetic():
    u = PkVector.basis(E2)
    w = PkVector(2, {NESTED: RatFrac(1, b + 1)})
    total = u + w
    assert total.coefficient(NESTED) == RatFrac(1, b + 1)
    assert (total - w) == u
    assert (u.scale(RatFrac(b)) - u.scale(RatFrac(b))).is_zero()
    assert total.support() == sorted([E2, NESTED])


def test_lift():
    assert e_vector(2).lift() == e_vector(3)
    assert e_vector(1).lift(2) == e_vector(3)


def test_vectors_reject_wrong_level():
    with pytest.raises(ValueError):
        PkVector(3, {E2: 1})


@pytest.mark.parametrize("k, dim", [(1, 1), (2, 2), (3, 4), (4, 10)])
def test_orbit_dimension_equals_tableaux_count(k, dim):
    assert orbit_space(k).dimension == dim == len(all_tableaux(k))


def test_level_five_is_guarded():
    assert CHEAP_LEVEL_BOUND < JM_LEVEL_BOUND
    with pytest.raises(ExpensiveComputation):
        orbit_space(CHEAP_LEVEL_BOUND + 1)
    with pytest.raises(ExpensiveComputation):
        verify_suite(JM_LEVEL_BOUND + 1, expensive=True)


def test_p_vectors():
    assert p_vector((1, 1)) == e_vector(2)
    v = p_vector((2,))
    assert v.coefficient(NESTED) == RatFrac(1) and v.coefficient(CROSSING) == RatFrac(1)
    with pytest.raises(ValueError):
        p_vector((2,), 3)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_p_vectors_sum_to_all_ones(k):
    total = PkVector(k)
    for lam in all_partitions(k):
        total = total + p_vector(lam)
    assert len(total.support()) == len(total.num) and all(
        total.coefficient(m) == RatFrac(1) for m in total.support())


def test_characteristic_map_of_p_vectors():
    assert ch_b(p_vector((2,))) == SymFunc.power_sum((2,), RatFrac(1, 2 * (b + 1)))


@pytest.mark.parametrize("k", [2, 3])
def test_characteristic_map_of_w_vectors_is_normalized_jack(k):
    from wgcalc.symfunc import jack_norm
    for lam in all_partitions(k):
        assert ch_b(w_vector(lam)) == jack(lam) * (RatFrac(1) / jack_norm(lam))


def test_characteristic_map_needs_invariance():
    with pytest.raises(NotCosetTypeInvariant):
        ch_b(PkVector.basis(NESTED))


def test_jack_pairing_of_single_box():
    assert jack_pairing((1,), (1,)) == RatFrac(b + 1)


@pytest.mark.parametrize("k", [2, 3])
def test_w_tableau_eigenvalues(k):
    for T in all_tableaux(k):
        w = w_tableau(T)
        for i in range(1, k + 1):
            assert j_apply(i, w) == w.scale(T.content(i))


def test_w_of_shape_sums_tableaux():
    lam = (2, 1)
    total = PkVector(3)
    for T in standard_tableaux(lam):
        total = total + w_tableau(T)
    assert total == w_vector(lam)


@pytest.mark.parametrize("k", range(1, CHEAP_LEVEL_BOUND + 1))
def test_verify_suite(k):
    results = verify_suite(k)
    failed = [r.record() for r in results if r.status != "pass"]
    assert not failed
    kinds = {r.kind for r in results}
    assert kinds == {"THEOREM", "CONJECTURE"}


def test_suite_records():
    record = verify_suite(2, max_degree=1)[0].record()
    assert set(record) == {"check", "k", "status", "kind"}


@pytest.mark.expensive
def test_verify_suite_level_five():
    assert orbit_space(5, expensive=True).dimension == 26
    assert all(r.status == "pass" for r in verify_suite(5, expensive=True))
