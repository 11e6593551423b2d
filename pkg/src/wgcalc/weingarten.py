"""Weingarten graphs and Weingarten functions.

One graph engine serves four profiles:

    O       A-edges weight -1/N,            B-edge 1/N
    A       A-edges weight -1/N,            B-edge M/N, C-edges 1/N
    B-only  A-edges weight -ω^(b)/N,        B-edge 1/N
    BT      A-edges weight -ω^(b)/N,        B-edge M/N, C-edges 1/N

and the Weingarten value of 𝔪 is the unique solution of
Wg(𝔪) = Σ_{edges 𝔪 -> 𝔫} weight · Wg(𝔫) with Wg(()) = 1.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exactnum import MPoly, RatFrac, TruncSeries, substitute
from .linalg import bareiss_solve
from .pairings import (PairPartition, act_mate, all_pair_partitions, coset_type_mate,
                       identity_pairing, pairing_of_type, step_is_flip, admissible)
from .partitions import all_partitions

b_, t_, N_, M_ = (MPoly.var(v) for v in "btNM")
WG_LEVEL_BOUND = 4
JM_LEVEL_BOUND = 3


class EmptyPairPartition(ValueError):
    pass


class ParameterOutOfRange(ValueError):
    pass


class BoundExceeded(ValueError):
    pass


@dataclass(frozen=True)
class GraphProfile:
    name: str
    has_c_edges: bool
    b_edge_has_m: bool
    a_weight_is_omega: bool

    @property
    def b_coefficient(self):
        return RatFrac(M_ if self.b_edge_has_m else 1, N_)

    def __str__(self):
        return self.name


O = GraphProfile("O", False, False, False)
A = GraphProfile("A", True, True, False)
B_ONLY = GraphProfile("B-only", False, False, True)
BT = GraphProfile("BT", True, True, True)
PROFILES = {"o": O, "a": A, "b": B_ONLY, "b-only": B_ONLY, "bt": BT}


def profile_by_name(name):
    try:
        return PROFILES[name.lower()]
    except KeyError:
        raise ValueError(f"unknown profile {name!r}; choose from O, A, B-only, BT") from None


@dataclass(frozen=True)
class Edge:
    target: PairPartition
    kind: str
    weight: RatFrac


def _raw_edges(mate, profile):
    """(target mate, kind, a-weight is b) for every edge out of 𝔪."""
    k = len(mate) // 2
    top = 2 * k - 1
    out = []
    for i in range(1, top):
        tgt = act_mate(mate, i, top)
        flip = profile.a_weight_is_omega and step_is_flip(mate, i, top)
        out.append((tgt, "A", flip))
    if mate[top - 1] == top + 1:
        out.append((mate[:-2], "B", False))
    if profile.has_c_edges:
        for i in range(1, top):
            if mate[i - 1] == top + 1:
                tgt = act_mate(mate, i, top)
                out.append((tgt[:-2], "C", False))
    return out


def neighbors(m, profile):
    if m.k == 0:
        raise EmptyPairPartition("the empty pair partition has no outgoing edges")
    edges = []
    for tgt, kind, flip in _raw_edges(m.mate, profile):
        if kind == "A":
            w = RatFrac(-(b_ if flip else MPoly.constant(1)), N_)
        elif kind == "B":
            w = profile.b_coefficient
        else:
            w = RatFrac(1, N_)
        edges.append(Edge(PairPartition.from_mate(tgt), kind, w))
    return edges


# ---------------------------------------------------------------------------
# exact solution of the orthogonality relations
# ---------------------------------------------------------------------------

@dataclass
class WeingartenTable:
    """Values at one level k, stored as numerators over a common denominator."""

    k: int
    profile: GraphProfile
    numerators: dict          # PairPartition (full) or coset-type tuple (classes) -> MPoly
    denominator: MPoly
    by_class: bool = False
    history: list = field(default_factory=list, repr=False)

    def value(self, m):
        if isinstance(m, tuple):
            if self.by_class:
                return RatFrac(self.numerators[m], self.denominator)
            m = pairing_of_type(m)
        if isinstance(m, str):
            m = PairPartition.parse(m)
        key = coset_type_mate(m.mate) if self.by_class else m
        return RatFrac(self.numerators[key], self.denominator)

    def class_values(self):
        """coset-type -> value; raises if the table is not constant on coset-types."""
        out = {}
        for lam in all_partitions(self.k) if self.k else [()]:
            out[lam] = self.value(lam) if self.by_class else None
        if not self.by_class:
            groups = {}
            for m, num in self.numerators.items():
                groups.setdefault(coset_type_mate(m.mate), []).append(num)
            for lam, nums in groups.items():
                if any(n != nums[0] for n in nums):
                    raise ValueError(f"values differ within coset-type {lam}")
                out[lam] = RatFrac(nums[0], self.denominator)
        return out

    def is_coset_invariant(self):
        if self.by_class:
            return True
        groups = {}
        for m, num in self.numerators.items():
            groups.setdefault(coset_type_mate(m.mate), set()).add(num)
        return all(len(v) == 1 for v in groups.values())

    def records(self):
        rows = []
        for lam, val in sorted(self.class_values().items(), reverse=True):
            rows.append({"coset_type": list(lam), "num": val.num.to_record(), "den": val.den.to_record()})
        return rows


def _level_system(level, profile, prev_value, unknowns, key_of):
    """Rows of N·x_m + Σ_A w·x_target = RHS for every unknown representative."""
    index = {key: i for i, key in enumerate(unknowns)}
    rows = []
    rhs = []
    for key in unknowns:
        mate = key.mate if isinstance(key, PairPartition) else pairing_of_type(key).mate
        row = {index[key]: N_}
        r = MPoly()
        for tgt, kind, flip in _raw_edges(mate, profile):
            if kind == "A":
                col = index[key_of(tgt)]
                w = b_ if flip else MPoly.constant(1)
                row[col] = row[col] + w if col in row else w
            elif kind == "B":
                r = r + (M_ if profile.b_edge_has_m else 1) * prev_value(tgt)
            else:
                r = r + prev_value(tgt)
        rows.append({c: v for c, v in row.items() if v.terms})
        rhs.append(r)
    return rows, rhs


@lru_cache(maxsize=None)
def _solve_levels(k, profile, by_class):
    if k == 0:
        key = () if by_class else PairPartition(())
        return (WeingartenTable(0, profile, {key: MPoly.constant(1)}, MPoly.constant(1), by_class),)
    lower_tables = _solve_levels(k - 1, profile, by_class)
    prev = lower_tables[-1]
    if by_class:
        unknowns = list(all_partitions(k))
        key_of = coset_type_mate
        prev_value = lambda mate: prev.numerators[coset_type_mate(mate)]
    else:
        unknowns = list(all_pair_partitions(k))
        key_of = PairPartition.from_mate
        prev_value = lambda mate: prev.numerators[PairPartition.from_mate(mate)]
    rows, rhs = _level_system(k, profile, prev_value, unknowns, key_of)
    y, det = bareiss_solve(rows, rhs)
    den = det * prev.denominator
    # pull out the integer content shared by the numerators and the denominator
    table = WeingartenTable(k, profile, dict(zip(unknowns, y)), den, by_class)
    return lower_tables + (_tidy(table),)


def _tidy(table):
    from math import gcd
    g = 0
    for p in [table.denominator, *table.numerators.values()]:
        for c in p.terms.values():
            g = gcd(g, int(Fraction(c).numerator)) if Fraction(c).denominator == 1 else g
    if g > 1:
        table.numerators = {k: v * Fraction(1, g) for k, v in table.numerators.items()}
        table.denominator = table.denominator * Fraction(1, g)
    _, lead = table.denominator.leading()
    if lead < 0:
        table.numerators = {k: -v for k, v in table.numerators.items()}
        table.denominator = -table.denominator
    return table


def wg_solve(k, profile=BT, method="auto"):
    """Exact Weingarten values at level k.

    method: 'full' solves the relation for every pair partition, 'classes' solves
    one relation per coset-type (assumes values are constant on coset-types),
    'auto' is 'full' up to level 3 and 'classes' above.
    """
    if k > WG_LEVEL_BOUND:
        raise BoundExceeded(f"level {k} exceeds the configured bound {WG_LEVEL_BOUND}")
    if isinstance(profile, str):
        profile = profile_by_name(profile)
    if method == "auto":
        method = "full" if k <= 3 else "classes"
    return _solve_levels(k, profile, method == "classes")[-1]


def check_relations(table, sample=None, seed=0):
    """Verify Wg(𝔪) = Σ weight·Wg(target) for pair partitions at the table's level.

    Checks every 𝔪 when sample is None, otherwise a seeded random sample."""
    k = table.k
    lower_table = _solve_levels(k - 1, table.profile, table.by_class)[-1] if table.by_class else \
        _solve_levels(k - 1, table.profile, False)[-1]
    ms = list(all_pair_partitions(k))
    if sample is not None:
        ms = random.Random(seed).sample(ms, min(sample, len(ms)))
    for m in ms:
        lhs = table.value(m)
        rhs = RatFrac(0)
        for e in neighbors(m, table.profile):
            src = table if e.target.k == k else lower_table
            rhs = rhs + e.weight * src.value(e.target)
        if lhs != rhs:
            return False, m
    return True, None


def specialize(value, **bindings):
    return substitute(value, {k: v for k, v in bindings.items()})


# ---------------------------------------------------------------------------
# path series in 1/N
# ---------------------------------------------------------------------------

_ONE_MINUS_T_INV = RatFrac(1, 1 - t_)


def path_series(m, profile, R):
    """Σ over directed paths 𝔪 -> () of the product of edge weights, as a series in 1/N.

    For profiles with M (A, BT) the B-edge weight M/N is read as 1/(1-t), i.e.
    M = N/(1-t); the coefficient of N^(-s) collects all paths with s edges of
    weight proportional to 1/N, loops included."""
    if isinstance(m, str):
        m = PairPartition.parse(m)
    memo = {}

    def f(mate, s):
        if s < 0:
            return RatFrac(0)
        if not mate:
            return RatFrac(1 if s == 0 else 0)
        key = (mate, s)
        if key in memo:
            return memo[key]
        total = RatFrac(0)
        for tgt, kind, flip in _raw_edges(mate, profile):
            if kind == "A":
                sub = f(tgt, s - 1)
                if not sub.is_zero():
                    total = total - (sub * b_ if flip else sub)
            elif kind == "B":
                if profile.b_edge_has_m:
                    total = total + _ONE_MINUS_T_INV * f(tgt, s)
                else:
                    total = total + f(tgt, s - 1)
            else:
                total = total + f(tgt, s - 1)
        memo[key] = total
        return total

    return TruncSeries("1/N", [f(m.mate, s) for s in range(R + 1)], R)


def enumerate_paths(m, profile, max_length):
    """Explicit paths 𝔪 -> () with at most max_length edges: lists of (target, kind, weight)."""
    out = []

    def walk(cur, path):
        if cur.k == 0:
            out.append(list(path))
            return
        if len(path) >= max_length:
            return
        for e in neighbors(cur, profile):
            path.append(e)
            walk(e.target, path)
            path.pop()

    walk(m, [])
    return out


def series_from_solution(m, profile, R, method="auto"):
    """series_at_infinity of the exact value with M = N/(1-t) where relevant."""
    from .exactnum import series_at_infinity
    if isinstance(m, str):
        m = PairPartition.parse(m)
    val = wg_solve(m.k, profile, method).value(m)
    if profile.b_edge_has_m:
        val = substitute(val, {"M": RatFrac(N_, 1 - t_)})
    return series_at_infinity(val, R)


# ---------------------------------------------------------------------------
# convolution formula and the Jucys–Murphy product formula
# ---------------------------------------------------------------------------

def integrate_monomial(index, M_val, N_val):
    """∫ A_{i(1)i(2)} ... A_{i(2k-1)i(2k)} dμ over A(M,N) = Σ_{admissible 𝔪} Wg^A(𝔪)."""
    index = list(index)
    if len(index) % 2:
        raise ParameterOutOfRange("index function must have even length 2k")
    k = len(index) // 2
    if not (0 < M_val < N_val) or k > N_val or any(not (1 <= v <= N_val) for v in index):
        raise ParameterOutOfRange(f"need 0 < M < N, k ≤ N and indices in 1..N (got M={M_val}, N={N_val})")
    table = wg_solve(k, A)
    total = RatFrac(0)
    for m in all_pair_partitions(k):
        if admissible(m, index):
            total = total + table.value(m)
    val = substitute(total, {"M": M_val, "N": N_val})
    return Fraction(val.num.constant_value()) / Fraction(val.den.constant_value())


def jm_product_check(k, profile=BT):
    """Σ_𝔪 Wg(𝔪)·𝔪 == Π_{i=k..1} (M + J_i)(N + J_i)^(-1) · 𝔢_k, factor k outermost.

    J_i is the odd classical Jucys–Murphy element J_{2i-1} for profile A and the
    b-deformed operator 𝒥_i for profile BT."""
    from . import jmops
    if isinstance(profile, str):
        profile = profile_by_name(profile)
    if profile not in (A, BT):
        raise ValueError("the product formula applies to profiles A and BT")
    if k > JM_LEVEL_BOUND:
        raise BoundExceeded(f"level {k} exceeds the product-check bound {JM_LEVEL_BOUND}")
    weighted = profile is BT
    table = wg_solve(k, profile, "full")
    # right side, kept as numerators over one common denominator
    vec = {identity_pairing(k).mate: MPoly.constant(1)}
    den = MPoly.constant(1)
    for i in range(1, k + 1):
        applied = jmops.apply_matrix_to_numerators(i, k, vec, weighted)
        vec = {m: M_ * vec.get(m, MPoly()) + applied.get(m, MPoly()) for m in set(vec) | set(applied)}
        vec = {m: v for m, v in vec.items() if v.terms}
        sol, det = jmops.solve_shifted(i, k, vec, N_, weighted)
        vec = sol
        den = den * det
    for m in all_pair_partitions(k):
        lhs_num = table.numerators[m]
        rhs_num = vec.get(m.mate, MPoly())
        if lhs_num * den != rhs_num * table.denominator:
            return False
    return True
