"""bt-monotone Hurwitz numbers: monotone factorisations of pair partitions, the
cut-join-flip recursion, the Jack-expansion partition function and its Virasoro
constraints.

Genus is a half-integer; internally it is carried as the integer 2g.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial, prod
from typing import NamedTuple

from .exactnum import (MPoly, PrecisionError, RatFrac, graded_series_exp, graded_series_log,
                       substitute, unpack)
from .pairings import (PairPartition, act_mate, coset_type_mate, identity_pairing,
                       is_connected_factorisation, pairing_of_type, step_is_flip)
from .partitions import all_partitions, b_content, boxes, multiplicities, partition, z_lambda
from .symfunc import SymFunc, jack, jack_norm

B = MPoly.var("b")
T = MPoly.var("t")
ONE = MPoly.constant(1)
ZERO = MPoly()

HURWITZ_SIZE_BOUND = 12


class BoundExceeded(ValueError):
    pass


# ---------------------------------------------------------------------------
# genus handling
# ---------------------------------------------------------------------------

def doubled_genus(g):
    """2g as an int for g in ½ℕ given as int, Fraction, float or string like '3/2'."""
    if isinstance(g, str):
        g = Fraction(g)
    twice = Fraction(g) * 2
    if twice.denominator != 1 or twice < 0:
        raise ValueError(f"genus {g} is not in ½ℕ")
    return int(twice)


def genus_label(twice_g):
    return str(twice_g // 2) if twice_g % 2 == 0 else f"{twice_g}/2"


# ---------------------------------------------------------------------------
# monotone factorisations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MonotoneFactorisation:
    transpositions: tuple     # ((a_1, b_1), ..., (a_r, b_r)), b_1 ≤ ... ≤ b_r all odd
    target: PairPartition

    def __len__(self):
        return len(self.transpositions)

    @property
    def hive(self):
        return len({top for _, top in self.transpositions})

    def is_valid(self):
        tops = [top for _, top in self.transpositions]
        if any(top % 2 == 0 or a >= top for a, top in self.transpositions):
            return False
        if tops != sorted(tops):
            return False
        mate = self.target.mate
        for a, top in reversed(self.transpositions):
            mate = act_mate(mate, a, top)
        return mate == identity_pairing(self.target.k).mate

    def __str__(self):
        return " ".join(f"({a} {c})" for a, c in self.transpositions) or "()"


class EnumeratedFactorisation(NamedTuple):
    factorisation: MonotoneFactorisation
    flip: int
    hive: int
    connected: bool


def _min_remaining(mate, level):
    """Steps needed at least to reach 𝔢 from a pair partition of P_level."""
    return level - len(coset_type_mate(mate[: 2 * level]))


def monotone_factorisations(m, r):
    """All monotone factorisations of m with exactly r transpositions, with flip, hive
    and connectivity.  The flip number accumulates ω^(b) step by step along the path
    that applies τ_r first (largest b) and τ_1 last."""
    if r < 0:
        raise ValueError("length must be nonnegative")
    k = m.k
    applied = []

    def dfs(mate, level, remaining, flips, hive, used):
        if level == 0:
            if remaining == 0:
                taus = tuple(reversed(applied))
                yield EnumeratedFactorisation(MonotoneFactorisation(taus, m), flips, hive,
                                              is_connected_factorisation(taus, k))
            return
        if remaining < _min_remaining(mate, level):
            return
        top = 2 * level - 1
        if remaining > 0:
            for a in range(1, top):
                nxt = act_mate(mate, a, top)
                applied.append((a, top))
                yield from dfs(nxt, level, remaining - 1, flips + step_is_flip(mate, a, top), hive, True)
                applied.pop()
        if mate[top - 1] == top + 1:
            yield from dfs(mate, level - 1, remaining, flips, hive + used, False)

    yield from dfs(m.mate, k, r, 0, 0, False)


@lru_cache(maxsize=None)
def _weighted_count(mate, level, remaining, used):
    """Σ b^flip t^hive over completions from the given state (mate truncated to the level)."""
    if level == 0:
        return ONE if remaining == 0 else ZERO
    if remaining < _min_remaining(mate, level):
        return ZERO
    top = 2 * level - 1
    total = ZERO
    if remaining > 0:
        for a in range(1, top):
            rest = _weighted_count(act_mate(mate, a, top), level, remaining - 1, True)
            if rest.terms:
                total = total + (rest * B if step_is_flip(mate, a, top) else rest)
    if mate[top - 1] == top + 1:
        rest = _weighted_count(mate[: top - 1], level - 1, remaining, False)
        if rest.terms:
            total = total + (rest * T if used else rest)
    return total


def h_bt_of(m, r):
    """Σ b^flip t^hive over all monotone factorisations of the given pair partition of length r."""
    return _weighted_count(m.mate, m.k, r, False)


def h_bt(lam, r):
    """Disconnected bt-monotone Hurwitz number: weighted count over Mono(𝔪), 𝔪 of coset-type λ."""
    lam = partition(lam)
    if sum(lam) > HURWITZ_SIZE_BOUND:
        raise BoundExceeded(f"|λ| = {sum(lam)} exceeds {HURWITZ_SIZE_BOUND}")
    if r < 0:
        return ZERO
    return h_bt_of(pairing_of_type(lam), r)


# ---------------------------------------------------------------------------
# connected numbers: the cut-join-flip recursion
# ---------------------------------------------------------------------------

def _canonical(mu):
    return tuple(sorted(mu, reverse=True))


@lru_cache(maxsize=None)
def _H(twice_g, mu):
    if twice_g < 0 or not mu or min(mu) < 1:
        return ZERO
    if twice_g == 0 and mu == (1,):
        return ONE
    first, rest = mu[0], mu[1:]
    total = ZERO
    # join: merge μ_1 with another part
    join = ZERO
    for i in range(len(rest)):
        merged = first + rest[i]
        others = rest[:i] + rest[i + 1:]
        join = join + _H(twice_g, _canonical((merged,) + others)) * merged
    total = total + join * (B + 1)
    # cut: split μ_1 = α + β, either staying connected or splitting the surface
    for alpha in range(1, first):
        beta = first - alpha
        acc = _H(twice_g - 2, _canonical((alpha, beta) + rest))
        idx = range(len(rest))
        for size in range(len(rest) + 1):
            for chosen in combinations(idx, size):
                left = tuple(rest[i] for i in chosen)
                right = tuple(rest[i] for i in idx if i not in chosen)
                for g1 in range(twice_g + 1):
                    lhs = _H(g1, _canonical((alpha,) + left))
                    if not lhs.terms:
                        continue
                    rhs = _H(twice_g - g1, _canonical((beta,) + right))
                    if rhs.terms:
                        acc = acc + lhs * rhs
        total = total + acc * (alpha * beta)
    # flip: a cross-cap, lowering 2g by one
    if first > 1:
        total = total + _H(twice_g - 1, mu) * B * (first * (first - 1))
        # t-shift
        total = total + _H(twice_g, _canonical((first - 1,) + rest)) * (T - 1) * (first - 1)
    return total * Fraction(1, first)


def H_bt(g, n, mu):
    """Connected bt-monotone Hurwitz number H^(bt)_{g,n}(μ) as a polynomial in (b, t)."""
    mu = tuple(int(x) for x in mu)
    if len(mu) != n:
        raise ValueError(f"n = {n} but μ = {mu} has {len(mu)} parts")
    if any(x < 1 for x in mu):
        raise ValueError("parts must be positive")
    if sum(mu) > HURWITZ_SIZE_BOUND:
        raise BoundExceeded(f"|μ| = {sum(mu)} exceeds {HURWITZ_SIZE_BOUND}")
    return _H(doubled_genus(g), _canonical(mu))


def H_bt_enum(g, n, mu):
    """(1/Πμ_i) Σ b^flip t^hive over connected monotone factorisations of length |μ|+2g-2+n."""
    twice_g = doubled_genus(g)
    lam = partition(mu)
    if len(lam) != n:
        raise ValueError(f"n = {n} but μ = {mu} has {len(lam)} parts")
    r = sum(lam) + twice_g - 2 + n
    if r < 0:
        return ZERO
    total = {}
    for item in monotone_factorisations(pairing_of_type(lam), r):
        if item.connected:
            key = (item.flip, item.hive)
            total[key] = total.get(key, 0) + 1
    poly = MPoly.from_exponents(({"b": f, "t": h}, c) for (f, h), c in total.items())
    return poly * Fraction(1, prod(lam))


# ---------------------------------------------------------------------------
# b = 0, t = 1: classical monotone Hurwitz numbers by brute force in S_k
# ---------------------------------------------------------------------------

def _cycle_type(perm):
    n = len(perm)
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s]:
            continue
        length = 0
        v = s
        while not seen[v]:
            seen[v] = True
            v = perm[v]
            length += 1
        out.append(length)
    return tuple(sorted(out, reverse=True))


def classical_monotone_hurwitz(g, mu):
    """(1/|μ|!) · #{monotone transitive tuples in S_|μ| with product of type μ, cycles labelled}."""
    lam = partition(mu)
    k = sum(lam)
    r = k + doubled_genus(g) - 2 + len(lam)
    if doubled_genus(g) % 2:
        return Fraction(0)
    transpositions = [(a, c) for c in range(1, k) for a in range(c)]   # sorted by larger entry
    count = 0

    def connected(taus):
        parent = list(range(k))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x
        for a, c in taus:
            parent[find(a)] = find(c)
        return len({find(v) for v in range(k)}) == 1

    def go(start, perm, taus):
        nonlocal count
        if len(taus) == r:
            if _cycle_type(perm) == lam and connected(taus):
                count += 1
            return
        for idx in range(start, len(transpositions)):
            a, c = transpositions[idx]
            nxt = list(perm)
            nxt[a], nxt[c] = nxt[c], nxt[a]
            taus.append((a, c))
            # monotone: later transpositions have larger-or-equal top entry
            go(_first_with_top(transpositions, c), nxt, taus)
            taus.pop()

    if k == 1:
        return Fraction(1 if r == 0 else 0)
    go(0, list(range(k)), [])
    labellings = prod(factorial(m) for m in multiplicities(lam).values())
    return Fraction(count * labellings, factorial(k))


def _first_with_top(transpositions, top):
    for idx, (_, c) in enumerate(transpositions):
        if c == top:
            return idx
    return len(transpositions)


# ---------------------------------------------------------------------------
# series in x = z/ħ and ħ with symmetric-function coefficients
# ---------------------------------------------------------------------------

class XHbarSeries:
    """Σ_{K ≤ k_max, R ≤ hbar_order} x^K ħ^R F_{K,R}(p) with x = z/ħ; coefficients beyond the window are unknown."""

    def __init__(self, k_max, hbar_order, coefficients=None):
        self.k_max = k_max
        self.hbar_order = hbar_order
        self.coefficients = {key: f for key, f in (coefficients or {}).items() if not f.is_zero()}

    def __getitem__(self, key):
        K, R = key
        if K > self.k_max or R > self.hbar_order:
            raise PrecisionError(f"x^{K} ħ^{R} lies outside the truncation window")
        if K < 0 or R < 0:
            return SymFunc()
        return self.coefficients.get((K, R), SymFunc())

    def keys(self):
        return [(K, R) for K in range(self.k_max + 1) for R in range(self.hbar_order + 1)]

    def is_zero(self):
        return not self.coefficients

    def __add__(self, other):
        out = dict(self.coefficients)
        for key, f in other.coefficients.items():
            out[key] = out[key] + f if key in out else f
        return XHbarSeries(min(self.k_max, other.k_max), min(self.hbar_order, other.hbar_order),
                           {k: v for k, v in out.items() if k[0] <= min(self.k_max, other.k_max)
                            and k[1] <= min(self.hbar_order, other.hbar_order)})

    def __neg__(self):
        return XHbarSeries(self.k_max, self.hbar_order, {k: -v for k, v in self.coefficients.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return XHbarSeries(self.k_max, self.hbar_order, {k: v * c for k, v in self.coefficients.items()})

    def shift_hbar(self, power=1):
        return XHbarSeries(self.k_max, self.hbar_order,
                           {(K, R + power): v for (K, R), v in self.coefficients.items()
                            if R + power <= self.hbar_order})


def _box_factor_series(content, order):
    """(1 - (1-t)ħc)/(1 - ħc) = 1 + t Σ_{j≥1} (ħc)^j, as coefficients in ħ up to the given order."""
    out = [ONE]
    power = ONE
    for _ in range(order):
        power = power * content
        out.append(T * power)
    return out


def _series_product(a, b, order):
    out = [ZERO] * (order + 1)
    for i, x in enumerate(a):
        if not x.terms:
            continue
        for j, y in enumerate(b[: order + 1 - i]):
            if y.terms:
                out[i + j] = out[i + j] + x * y
    return out


@lru_cache(maxsize=None)
def z_truncated_jack(k_max, hbar_order=None):
    """Z^(bt) = Σ_k x^k Σ_{λ⊢k} Π_{boxes}(1-(1-t)ħc_b)/(1-ħc_b) · J_λ/(hook_b hook'_b), truncated."""
    hbar_order = 2 * k_max if hbar_order is None else hbar_order
    coeffs = {(0, 0): SymFunc.one()}
    for k in range(1, k_max + 1):
        for lam in all_partitions(k):
            factor = [ONE]
            for i, j in boxes(lam):
                factor = _series_product(factor, _box_factor_series(b_content(i, j), hbar_order), hbar_order)
            normalized = jack(lam) / jack_norm(lam)
            for r, c in enumerate(factor):
                if c.terms:
                    piece = normalized * c
                    coeffs[(k, r)] = coeffs[(k, r)] + piece if (k, r) in coeffs else piece
    return XHbarSeries(k_max, hbar_order, coeffs)


def h_from_jack(lam, r, series=None):
    """𝕙_r(λ) = (b+1)^ℓ z_λ [x^|λ| ħ^r p_λ] Z^(bt)."""
    lam = partition(lam)
    series = series or z_truncated_jack(sum(lam), max(r, 2 * sum(lam)))
    c = series[(sum(lam), r)].coefficient(lam) * ((B + 1) ** len(lam)) * z_lambda(lam)
    return c.to_mpoly()


# ---------------------------------------------------------------------------
# Virasoro operators  L̃_m = ħ L_m  acting on x, ħ series
# ---------------------------------------------------------------------------

def _d(i):
    def op(mu):
        c = mu.count(i)
        if not c:
            return ()
        rest = list(mu)
        rest.remove(i)
        return ((tuple(rest), c),)
    return op


def _dd(i, j):
    def op(mu):
        out = []
        for nu, c in _d(j)(mu):
            for rho, d in _d(i)(nu):
                out.append((rho, c * d))
        return out
    return op


def _lowering(m):
    """Σ_i (i+m) p_i ∂_{i+m}"""
    def op(mu):
        out = []
        for part in set(mu):
            if part > m:
                c = mu.count(part) * part
                rest = list(mu)
                rest.remove(part)
                out.append((partition(rest + [part - m]), c))
        return out
    return op


@dataclass(frozen=True)
class VirasoroOperator:
    """ħ L_m = m∂_m - ħ[second·Σ_{i+j=m} ij∂_i∂_j + Σ_i (i+m)p_i∂_{i+m} + first·∂_m + x·shift·∂_{m-1}] - x·unit"""
    m: int
    second: RatFrac        # coefficient of Σ ij ∂_i ∂_j
    first: RatFrac         # coefficient of ∂_m
    shift: RatFrac         # coefficient of x ħ ∂_{m-1}
    unit: RatFrac          # coefficient of x (m = 1 only)

    def specialize(self, bindings):
        return VirasoroOperator(self.m, *(substitute(c, bindings)
                                          for c in (self.second, self.first, self.shift, self.unit)))

    def __eq__(self, other):
        return (isinstance(other, VirasoroOperator) and self.m == other.m
                and all(x == y for x, y in zip((self.second, self.first, self.shift, self.unit),
                                               (other.second, other.first, other.shift, other.unit))))

    __hash__ = None

    def apply(self, F):
        m = self.m
        out = {}
        for K, R in F.keys():
            acc = F[(K, R)].apply(_d(m)) * m
            if R >= 1:
                below = F[(K, R - 1)]
                pair = SymFunc()
                for i in range(1, m):
                    pair = pair + below.apply(_dd(i, m - i)) * (i * (m - i))
                acc = acc - pair * self.second - below.apply(_lowering(m)) - below.apply(_d(m)) * self.first
                if K >= 1 and m >= 2:
                    acc = acc - F[(K - 1, R - 1)].apply(_d(m - 1)) * self.shift
            if K >= 1 and not self.unit.is_zero():
                acc = acc - F[(K - 1, R)] * self.unit
            if not acc.is_zero():
                out[(K, R)] = acc
        return XHbarSeries(F.k_max, F.hbar_order, out)


def virasoro_bt(m):
    if m < 1:
        raise ValueError("m ≥ 1")
    return VirasoroOperator(m, RatFrac(B + 1), RatFrac(B * (m * (m - 1))),
                            RatFrac((T - 1) * (m - 1)),
                            RatFrac(1, B + 1) if m == 1 else RatFrac(0))


def virasoro_A(m):
    """The operator for Z^A: coefficients 2, m(m-1), (t-1)(m-1) and 1/2."""
    if m < 1:
        raise ValueError("m ≥ 1")
    return VirasoroOperator(m, RatFrac(2), RatFrac(m * (m - 1)), RatFrac((T - 1) * (m - 1)),
                            RatFrac(Fraction(1, 2)) if m == 1 else RatFrac(0))


def virasoro_residual(m, k_max, hbar_order=None):
    """ħ L_m Z^(bt) on the truncation window; every stored coefficient should vanish."""
    return virasoro_bt(m).apply(z_truncated_jack(k_max, hbar_order))


def random_series(k_max, hbar_order, max_degree=5, seed=0, density=3):
    rng = random.Random(seed)
    coeffs = {}
    for K in range(k_max + 1):
        for R in range(hbar_order + 1):
            terms = {}
            for _ in range(density):
                d = rng.randint(0, max_degree)
                parts = all_partitions(d) if d else ((),)
                terms[rng.choice(parts)] = rng.randint(-5, 5)
            coeffs[(K, R)] = SymFunc(terms)
    return XHbarSeries(k_max, hbar_order, coeffs)


def commutator_check(m, n, k_max=2, hbar_order=3, seed=0, operator=virasoro_bt, sign=1):
    """[ħL_m, ħL_n] = sign·(m-n)·ħ·(ħL_{m+n}) on a random series (exact on the window).

    sign=1 is the relation [L_m, L_n] = (m-n) L_{m+n}; sign=-1 tests (n-m) L_{m+n}.
    The series reaches power-sum degree m+n+1 so that ∂_{m+n} acts nontrivially."""
    F = random_series(k_max, hbar_order, max_degree=m + n + 1, seed=seed, density=6)
    Lm, Ln, Lmn = operator(m), operator(n), operator(m + n)
    lhs = Lm.apply(Ln.apply(F)) - Ln.apply(Lm.apply(F))
    rhs = Lmn.apply(F).shift_hbar(1).scale(sign * (m - n))
    if m != n and rhs.is_zero():
        raise PrecisionError(f"the window is too small to test [L_{m}, L_{n}]")
    return (lhs - rhs).is_zero()


# ---------------------------------------------------------------------------
# connected ↔ disconnected via exp/log
# ---------------------------------------------------------------------------
#
# Writing q_i = p_i/(b+1) removes every denominator: the connected series is
# Σ x^|λ| ħ^r H_{g,ℓ}(λ) q_λ/Π m_i! and the disconnected one Σ x^|λ| ħ^r 𝕙_r(λ) q_λ/z_λ.

def _q_monomial(lam):
    exps = {}
    for part in lam:
        exps[f"p{part}"] = exps.get(f"p{part}", 0) + 1
    return MPoly.from_exponents([(exps, 1)])


def _x_hbar(K, R):
    return MPoly.from_exponents([({"z": K, "hbar": R}, 1)])


def connected_series(k_max, hbar_order):
    total = ZERO
    for k in range(1, k_max + 1):
        for lam in all_partitions(k):
            n = len(lam)
            for r in range(hbar_order + 1):
                twice_g = r - k + 2 - n
                if twice_g < 0:
                    continue
                H = _H(twice_g, lam)
                if H.terms:
                    weight = Fraction(1, prod(factorial(c) for c in multiplicities(lam).values()))
                    total = total + H * _q_monomial(lam) * _x_hbar(k, r) * weight
    return total


def disconnected_series(k_max, hbar_order):
    total = ZERO
    for k in range(1, k_max + 1):
        for lam in all_partitions(k):
            for r in range(hbar_order + 1):
                h = h_bt(lam, r)
                if h.terms:
                    total = total + h * _q_monomial(lam) * _x_hbar(k, r) * Fraction(1, z_lambda(lam))
    return total


def disconnected_series_from_jack(k_max, hbar_order):
    """The disconnected series with every coefficient read off the Jack expansion."""
    series = z_truncated_jack(k_max, hbar_order)
    total = ZERO
    for k in range(1, k_max + 1):
        for lam in all_partitions(k):
            for r in range(hbar_order + 1):
                h = h_from_jack(lam, r, series)
                if h.terms:
                    total = total + h * _q_monomial(lam) * _x_hbar(k, r) * Fraction(1, z_lambda(lam))
    return total


def H_bt_jack(g, n, mu):
    """Connected number extracted from the logarithm of the Jack-expansion partition function."""
    twice_g = doubled_genus(g)
    lam = partition(mu)
    if len(lam) != n:
        raise ValueError(f"n = {n} but μ = {mu} has {len(lam)} parts")
    k = sum(lam)
    r = k + twice_g - 2 + n
    if r < 0:
        return ZERO
    disconnected = disconnected_series_from_jack(k, r)
    connected = graded_series_log(disconnected + 1, {"z": 1}, k, {"hbar": r})
    weight = prod(factorial(c) for c in multiplicities(lam).values())
    target = unpack(next(iter((_q_monomial(lam) * _x_hbar(k, r)).terms)))
    pairs = []
    for key, c in connected.terms.items():
        exps = unpack(key)
        scalar = {v: e for v, e in exps.items() if v in ("b", "t")}
        rest = {v: e for v, e in exps.items() if v not in ("b", "t")}
        if rest == target:
            pairs.append((scalar, c * weight))
    return MPoly.from_exponents(pairs)


def exp_log_check(k_max=4, hbar_order=4):
    """exp(connected) = 1 + disconnected and log(1 + disconnected) = connected, on the window."""
    grading = {"z": 1}
    caps = {"hbar": hbar_order}
    connected = connected_series(k_max, hbar_order)
    disconnected = disconnected_series(k_max, hbar_order)
    forward = graded_series_exp(connected, grading, k_max, caps) == disconnected + 1
    backward = graded_series_log(disconnected + 1, grading, k_max, caps) == connected
    return forward and backward


# ---------------------------------------------------------------------------
# Λ-polynomials
# ---------------------------------------------------------------------------

def lambda_poly_check(P, b_val):
    """Nonnegative, palindromic and unimodal t-coefficients after b = b_val (b_val > 0)."""
    b_val = Fraction(b_val)
    if b_val <= 0:
        raise ValueError("the Λ-polynomial check needs positive b")
    P = RatFrac.coerce(P)
    Q = substitute(P, {"b": b_val})
    if not Q.is_polynomial():
        return False
    poly = Q.to_mpoly()
    extra = set(poly.variables()) - {"t"}
    if extra:
        raise ValueError(f"unexpected variables {sorted(extra)}")
    coeffs = poly.to_unipoly("t").coeffs
    nonzero = [i for i, c in enumerate(coeffs) if c != 0]
    if not nonzero:
        return False
    seq = coeffs[nonzero[0]: nonzero[-1] + 1]
    if any(c < 0 for c in seq):
        return False
    if seq != seq[::-1]:
        return False
    peak = seq.index(max(seq))
    return all(seq[i] <= seq[i + 1] for i in range(peak)) and \
        all(seq[i] >= seq[i + 1] for i in range(peak, len(seq) - 1))


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------

def table_rows(twice_g_values, n, sizes):
    """(g label, n, μ, polynomial) for every partition μ with n parts and |μ| in sizes."""
    rows = []
    for twice_g in twice_g_values:
        for k in sizes:
            for lam in all_partitions(k):
                if len(lam) == n:
                    rows.append((genus_label(twice_g), n, lam, _H(twice_g, lam)))
    return rows
