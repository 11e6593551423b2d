"""Acceptance criteria 1 to 8. Each test records one PASS/FAIL line (shown in the terminal summary).

Tolerances: every comparison is exact equality of rationals or of polynomials and rational
functions over the rationals (cross-multiplied where denominators differ). Nothing is approximate.
"""
from fractions import Fraction

import pytest

from conftest import expensive_enabled
from wgcalc.analysis import sweep
from wgcalc.exactnum import MPoly, RatFrac, frac_equal, substitute
from wgcalc.hurwitz import (H_bt, _H, classical_monotone_hurwitz, commutator_check, exp_log_check,
                            genus_label, h_bt, h_from_jack, virasoro_residual, z_truncated_jack)
from wgcalc.jmops import verify_suite
from wgcalc.pairings import PairPartition, all_pair_partitions, identity_pairing, pairing_of_type
from wgcalc.partitions import all_partitions, content_sum
from wgcalc.reference_tables import TABLES, all_entries
from wgcalc.symfunc import SymFunc, inner_product_b, jack, jack_norm, laplace_beltrami
from wgcalc.weingarten import A, BT, neighbors, series_from_solution, wg_solve

b = MPoly.var("b")
t = MPoly.var("t")
N = MPoly.var("N")
M = MPoly.var("M")
p = SymFunc.power_sum

COMMUTATOR_PAIRS = [(m, n) for m in range(1, 5) for n in range(m + 1, 5)]


def test_criterion_1_tables(criterion):
    entries = all_entries()
    wrong = [(genus_label(g2), mu) for g2, mu, expected in entries if _H(g2, mu) != expected]
    sizes = {parts: len(table) for parts, table in TABLES.items()}
    ok = not wrong and len(entries) == sum(sizes.values())
    assert criterion(1, ok, f"{len(entries) - len(wrong)}/{len(entries)} tabulated values reproduced "
                            f"exactly (one, two, three parts: {sizes[1]}, {sizes[2]}, {sizes[3]})"
                     + (f"; mismatches {wrong}" if wrong else ""))


def _closed_forms():
    e2 = identity_pairing(2)
    den = N * (N + b + 1) * (N - 1)
    return [
        (identity_pairing(1), RatFrac(M, N)),
        (e2, RatFrac(M * (M * N + b * M - b - 1), den)),
        (PairPartition.parse("(1 4|2 3)"), RatFrac(M * (N - M), den)),
        (PairPartition.parse("(1 3|2 4)"), RatFrac(M * (N - M), den)),
    ]


def _real_grassmannian_relations_hold(k):
    """Every relation of the b = 1 graph, checked on the BT values specialized at b = 1."""
    values = {PairPartition(()): RatFrac(1)}
    for level in range(1, k + 1):
        table = wg_solve(level, BT)
        for m in all_pair_partitions(level):
            values[m] = substitute(table.value(m), {"b": 1})
    for m in all_pair_partitions(k):
        rhs = RatFrac(0)
        for e in neighbors(m, A):
            rhs = rhs + e.weight * values[e.target]
        if not frac_equal(values[m], rhs):
            return False
    return True


def test_criterion_2_closed_forms(criterion):
    forms = _closed_forms()
    matched = sum(frac_equal(wg_solve(m.k, BT).value(m), expected) for m, expected in forms)
    relations = all(_real_grassmannian_relations_hold(k) for k in (1, 2))
    ok = matched == len(forms) and relations
    assert criterion(2, ok, f"{matched}/{len(forms)} closed forms at k <= 2 match by cross-multiplication; "
                            f"b = 1 values satisfy the real-Grassmannian relations: {relations}")


def test_criterion_3_four_oracles(criterion):
    jack_series = z_truncated_jack(4, 4)
    compared = 0
    disagreements = []
    for k in range(1, 5):
        for lam in all_partitions(k):
            large_n = series_from_solution(pairing_of_type(lam), BT, 4)
            for r in range(5):
                enumerated = h_bt(lam, r)
                from_jack = h_from_jack(lam, r, jack_series)
                from_wg = RatFrac.coerce(large_n[r]) * RatFrac((1 - t) ** k) * (-1) ** r
                compared += 1
                if from_jack != enumerated or not frac_equal(from_wg, RatFrac(enumerated)):
                    disagreements.append((lam, r))
    exp_log = exp_log_check(4, 4)
    ok = not disagreements and exp_log
    assert criterion(3, ok, f"enumeration, Jack extraction and large-N expansion agree on "
                            f"{compared - len(disagreements)}/{compared} (lambda, r) with |lambda| <= 4, "
                            f"r <= 4; exp of recursion series equals the disconnected series: {exp_log}")


def test_criterion_3_recursion_leg_on_spot_values():
    assert H_bt(0, 2, (1, 1)) == (b + 1) * t


@pytest.mark.xfail(strict=True, reason="[L_m, L_n] = (m - n) L_(m+n) does not hold; "
                                       "the operators satisfy (n - m) L_(m+n) instead")
def test_criterion_4_virasoro(criterion):
    residual_ok = all(virasoro_residual(m, 4, 4).is_zero() for m in (1, 2, 3))
    requested = [commutator_check(m, n, sign=1) for m, n in COMMUTATOR_PAIRS]
    opposite = [commutator_check(m, n, sign=-1) for m, n in COMMUTATOR_PAIRS]
    ok = residual_ok and all(requested)
    criterion(4, ok, f"residual zero for m <= 3 at k_max = 4: {residual_ok}; "
                     f"[L_m, L_n] = (m - n) L_(m+n) holds on {sum(requested)}/{len(requested)} pairs; "
                     f"(n - m) L_(m+n) holds on {sum(opposite)}/{len(opposite)} pairs")
    assert ok


def test_criterion_4_observed_commutator_sign():
    for m, n in COMMUTATOR_PAIRS:
        assert commutator_check(m, n, sign=-1)


def _known_jacks():
    one = MPoly.constant(1)
    return {
        (): SymFunc.one(),
        (1,): p((1,)),
        (2,): p((2,)) * (b + 1) + p((1, 1)),
        (1, 1): p((2,)) * (-one) + p((1, 1)),
        (3,): p((3,)) * (2 * (b + 1) ** 2) + p((2, 1)) * (3 * (b + 1)) + p((1, 1, 1)),
        (2, 1): p((3,)) * (-(b + 1)) + p((2, 1)) * b + p((1, 1, 1)),
        (1, 1, 1): p((3,)) * (2 * one) + p((2, 1)) * (-3 * one) + p((1, 1, 1)),
    }


def test_criterion_5_jack_layer(criterion):
    examples = _known_jacks()
    verbatim = sum(jack(lam) == f for lam, f in examples.items())
    failures = []
    for k in range(1, 6):
        lams = all_partitions(k)
        for lam in lams:
            if laplace_beltrami(jack(lam)) != jack(lam) * content_sum(lam):
                failures.append(("eigen", lam))
            for mu in lams:
                value = inner_product_b(jack(lam), jack(mu))
                ok = frac_equal(value, RatFrac(jack_norm(lam))) if lam == mu else value.is_zero()
                if not ok:
                    failures.append(("orthogonality", lam, mu))
    guard = (content_sum((4, 1, 1)) == content_sum((3, 3))
             and inner_product_b(jack((4, 1, 1)), jack((3, 3))).is_zero()
             and all(laplace_beltrami(jack(lam)) == jack(lam) * content_sum(lam)
                     for lam in [(4, 1, 1), (3, 3)]))
    ok = verbatim == len(examples) and not failures and guard
    assert criterion(5, ok, f"{verbatim}/{len(examples)} known expansions for |lambda| <= 3; "
                            f"orthogonality and eigen-equation for |lambda| <= 5 with "
                            f"{len(failures)} failures; (4,1,1) vs (3,3) guard: {guard}")


def test_criterion_6_jucys_murphy_suite(criterion):
    levels = [1, 2, 3, 4] + ([5] if expensive_enabled() else [])
    results = [r for k in levels for r in verify_suite(k, expensive=k > 4)]
    theorem = [r for r in results if r.kind == "THEOREM"]
    conjecture = [r for r in results if r.kind == "CONJECTURE"]
    failed = [r.record() for r in results if r.status != "pass"]
    note = "" if expensive_enabled() else "; k = 5 skipped (set WGCALC_EXPENSIVE=1)"
    ok = not failed
    assert criterion(6, ok, f"k in {levels}: {len(theorem)} theorem checks and {len(conjecture)} "
                            f"conjecture checks, {len(failed)} failures{note}"
                     + (f"; first failure {failed[0]}" if failed else ""))


def test_criterion_7_root_sweep(criterion):
    b_values = [-5, -4, -3, -2, 1, 2, 3, 4, 5]
    report = sweep([0, "1/2", 1, "3/2"], [1, 2, 3], range(1, 11), b_values)
    ok = report.passed and report.checks > 0
    first = report.failures[0] if report.failures else None
    assert criterion(7, ok, f"{report.checks} real-rootedness and interlacing checks, "
                            f"{len(report.failures)} failures, {report.vacuous} vanishing keys skipped"
                     + (f"; first failure g={first.g} mu={first.mu} b={first.b}" if first else ""))


def test_criterion_8_classical_specialization(criterion):
    compared = 0
    wrong = []
    for g in (0, "1/2", 1, "3/2"):
        for k in range(1, 5):
            for mu in all_partitions(k):
                value = H_bt(g, len(mu), mu).evaluate({"b": 0, "t": 1})
                got = Fraction(value.constant_value()) if value.terms else Fraction(0)
                compared += 1
                if got != classical_monotone_hurwitz(g, mu):
                    wrong.append((g, mu))
    assert criterion(8, not wrong, f"b = 0, t = 1 matches brute-force monotone factorisation counts on "
                                   f"{compared - len(wrong)}/{compared} keys (g <= 3/2, |mu| <= 4)")
