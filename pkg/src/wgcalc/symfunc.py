"""Symmetric functions in the power-sum basis, Jack functions J^(b), and the
Laplace–Beltrami operator D(b).

A SymFunc is a finite sum  Σ c_μ p_μ  with RatFrac coefficients c_μ.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .exactnum import MPoly, RatFrac
from .partitions import all_partitions, hook_products, partition, z_lambda

B = MPoly.var("b")
JACK_DEGREE_BOUND = 10


class DegreeBoundExceeded(ValueError):
    pass


class ArityMismatch(ValueError):
    pass


def _coef(c):
    return c if isinstance(c, RatFrac) else RatFrac(c)


class SymFunc:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        out = {}
        for mu, c in (terms or {}).items():
            c = _coef(c)
            if not c.is_zero():
                out[partition(mu)] = c
        self.terms = out

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def power_sum(cls, mu, coef=1):
        return cls({partition(mu): coef})

    @classmethod
    def one(cls):
        return cls({(): 1})

    def is_zero(self):
        return not self.terms

    def coefficient(self, mu):
        return self.terms.get(partition(mu), RatFrac(0))

    def degree(self):
        return max((sum(mu) for mu in self.terms), default=-1)

    def homogeneous_part(self, d):
        return SymFunc._raw({mu: c for mu, c in self.terms.items() if sum(mu) == d})

    def __add__(self, other):
        if not isinstance(other, SymFunc):
            other = SymFunc({(): other})
        terms = dict(self.terms)
        for mu, c in other.terms.items():
            v = terms[mu] + c if mu in terms else c
            if v.is_zero():
                terms.pop(mu, None)
            else:
                terms[mu] = v
        return SymFunc._raw(terms)

    __radd__ = __add__

    def __neg__(self):
        return SymFunc._raw({mu: -c for mu, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, SymFunc):
            terms = {}
            for mu, c in self.terms.items():
                for nu, d in other.terms.items():
                    key = partition(mu + nu)
                    v = terms[key] + c * d if key in terms else c * d
                    terms[key] = v
            return SymFunc._raw({k: v for k, v in terms.items() if not v.is_zero()})
        if isinstance(other, (int, Fraction, MPoly, RatFrac)):
            if isinstance(other, (int, Fraction)) and not other:
                return SymFunc()
            return SymFunc._raw({mu: v for mu, c in self.terms.items() if not (v := c * other).is_zero()})
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        inv = 1 / _coef(scalar)
        return self * inv

    def __eq__(self, other):
        if not isinstance(other, SymFunc):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def map_coefficients(self, fn):
        return SymFunc({mu: fn(c) for mu, c in self.terms.items()})

    def substitute(self, bindings):
        from .exactnum import substitute
        return self.map_coefficients(lambda c: substitute(c, bindings))

    def apply(self, op):
        """Linear extension of op: partition -> iterable of (partition, scalar)."""
        terms = {}
        for mu, c in self.terms.items():
            for nu, s in op(mu):
                if not s:
                    continue
                v = c * s
                terms[nu] = terms[nu] + v if nu in terms else v
        return SymFunc._raw({k: v for k, v in terms.items() if not v.is_zero()})

    def to_records(self):
        return [{"partition": list(mu), "coefficient": c.to_record()}
                for mu, c in sorted(self.terms.items())]

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mu, c in sorted(self.terms.items(), key=lambda kv: (-sum(kv[0]), kv[0]), reverse=False):
            mono = "*".join(f"p{i}" if m == 1 else f"p{i}^{m}"
                            for i, m in sorted(Counter(mu).items(), reverse=True)) or "1"
            parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"SymFunc({self})"


# ---------------------------------------------------------------------------
# power sums <-> monomial symmetric functions
# ---------------------------------------------------------------------------

def _merge_count(lam, mu):
    """Coefficient of m_μ in p_λ: ways to distribute the parts of λ into the parts of μ."""
    target = tuple(mu)

    @lru_cache(maxsize=None)
    def go(i, remaining):
        if i == len(lam):
            return 1 if not any(remaining) else 0
        total = 0
        for j, r in enumerate(remaining):
            if r >= lam[i]:
                rem = list(remaining)
                rem[j] -= lam[i]
                total += go(i + 1, tuple(rem))
        return total

    return go(0, target)


@lru_cache(maxsize=None)
def _power_to_monomial(n):
    """dict λ -> dict μ -> integer: p_λ = Σ_μ c m_μ."""
    parts = all_partitions(n)
    out = {}
    for lam in parts:
        row = {}
        for mu in parts:
            c = _merge_count(lam, mu)
            if c:
                row[mu] = c
        out[lam] = row
    return out


@lru_cache(maxsize=None)
def _monomial_to_power(n):
    """dict μ -> dict λ -> Fraction: m_μ = Σ_λ c p_λ (triangular inversion)."""
    table = _power_to_monomial(n)
    out = {}
    for mu in all_partitions(n):  # dominance-larger partitions come first
        expr = {mu: Fraction(1)}
        for nu, c in table[mu].items():
            if nu != mu:
                for lam, d in out[nu].items():
                    expr[lam] = expr.get(lam, 0) - c * d
        diag = table[mu][mu]
        out[mu] = {lam: v / diag for lam, v in expr.items() if v}
    return out


def monomial_in_powersum(mu):
    mu = partition(mu)
    return SymFunc({lam: c for lam, c in _monomial_to_power(sum(mu)).get(mu, {(): 1}).items()})


def powersum_in_monomial(lam):
    """p_λ in the monomial basis, as a dict μ -> integer."""
    lam = partition(lam)
    return dict(_power_to_monomial(sum(lam))[lam])


def to_monomial_basis(f):
    """dict μ -> RatFrac with f = Σ c_μ m_μ."""
    out = {}
    for lam, c in f.terms.items():
        for mu, d in _power_to_monomial(sum(lam))[lam].items():
            out[mu] = out[mu] + c * d if mu in out else c * d
    return {mu: c for mu, c in out.items() if not c.is_zero()}


def from_monomial_basis(coeffs):
    total = SymFunc()
    for mu, c in coeffs.items():
        total = total + monomial_in_powersum(mu) * _coef(c)
    return total


def elementary(r):
    return SymFunc({mu: Fraction((-1) ** (r - len(mu)), z_lambda(mu)) for mu in all_partitions(r)})


def complete(r):
    return SymFunc({mu: Fraction(1, z_lambda(mu)) for mu in all_partitions(r)})


# ---------------------------------------------------------------------------
# inner product and Laplace–Beltrami
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def power_norm(mu):
    """⟨p_μ, p_μ⟩_b = (b+1)^ℓ(μ) z_μ"""
    return RatFrac((B + 1) ** len(mu) * z_lambda(mu))


def inner_product_b(f, g):
    total = RatFrac(0)
    small, big = (f, g) if len(f.terms) <= len(g.terms) else (g, f)
    for mu, c in small.terms.items():
        d = big.terms.get(mu)
        if d is not None:
            total = total + c * d * power_norm(mu)
    return total


def _lb_image(mu):
    """D(b) p_μ as a list of (partition, scalar)."""
    out = []
    n = len(mu)
    # join: (b+1) μ_a μ_c p_{μ_a+μ_c} over unordered pairs of positions
    for a in range(n):
        for c in range(a + 1, n):
            rest = mu[:a] + mu[a + 1:c] + mu[c + 1:]
            out.append((partition(rest + (mu[a] + mu[c],)), (B + 1) * (mu[a] * mu[c])))
    # cut: ½ μ_a Σ_{i+j=μ_a} p_i p_j
    for a in range(n):
        rest = mu[:a] + mu[a + 1:]
        for i in range(1, mu[a]):
            out.append((partition(rest + (i, mu[a] - i)), Fraction(mu[a], 2)))
    # flip: (b/2) Σ μ_a(μ_a - 1)
    s = sum(p * (p - 1) for p in mu)
    if s:
        out.append((mu, B * Fraction(s, 2)))
    return out


def laplace_beltrami(f):
    return f.apply(_lb_image)


# ---------------------------------------------------------------------------
# Jack functions
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _jack_family(n):
    """Gram–Schmidt of the monomial basis, processed from the dominance-smallest
    partition upwards in a linear extension of dominance; returns λ -> J_λ."""
    if n > JACK_DEGREE_BOUND:
        raise DegreeBoundExceeded(f"Jack functions are limited to degree {JACK_DEGREE_BOUND}")
    monic = {}
    norms = {}
    for lam in reversed(all_partitions(n)):
        m = monomial_in_powersum(lam)
        vec = m
        for mu, P in monic.items():
            coeff = inner_product_b(m, P) / norms[mu]
            if not coeff.is_zero():
                vec = vec - P * coeff
        monic[lam] = vec
        norms[lam] = inner_product_b(vec, vec)
    return {lam: monic[lam] * hook_products(lam)[0] for lam in monic}


def jack(lam):
    lam = partition(lam)
    if not lam:
        return SymFunc.one()
    return _jack_family(sum(lam))[lam]


def jack_norm(lam):
    """hook_b(λ)·hook'_b(λ) = ⟨J_λ, J_λ⟩_b"""
    h, hd = hook_products(partition(lam))
    return h * hd


# ---------------------------------------------------------------------------
# evaluation and Schur functions
# ---------------------------------------------------------------------------

def eval_at_multiset(f, values, k):
    values = list(values)
    if len(values) != k:
        raise ArityMismatch(f"{len(values)} values for {k} variables")
    values = [v if isinstance(v, (MPoly, RatFrac)) else MPoly.constant(v) for v in values]
    psum = {}

    def p(i):
        if i not in psum:
            acc = MPoly()
            for v in values:
                acc = acc + v ** i
            psum[i] = acc
        return psum[i]

    total = RatFrac(0)
    for mu, c in f.terms.items():
        term = MPoly.constant(1)
        for part in mu:
            term = term * p(part)
        total = total + c * term
    return total.to_mpoly() if total.is_polynomial() else total


def _beta_set(lam, length):
    lam = list(lam) + [0] * (length - len(lam))
    return [lam[i] + (length - 1 - i) for i in range(length)]


@lru_cache(maxsize=None)
def character(lam, mu):
    """χ^λ(μ) by the Murnaghan–Nakayama rule (rim hooks removed via beta-numbers)."""
    lam, mu = partition(lam), partition(mu)
    if sum(lam) != sum(mu):
        raise ValueError("size mismatch")
    if not mu:
        return 1
    r = mu[0]
    L = len(lam)
    beta = _beta_set(lam, L)
    bset = set(beta)
    total = 0
    for x in beta:
        y = x - r
        if y < 0 or y in bset:
            continue
        height = sum(1 for z in beta if y < z < x)
        nb = sorted((bset - {x}) | {y}, reverse=True)
        new = partition(nb[i] - (L - 1 - i) for i in range(L))
        total += (-1) ** height * character(new, mu[1:])
    return total


def schur_in_powersum(lam):
    lam = partition(lam)
    n = sum(lam)
    return SymFunc({mu: Fraction(character(lam, mu), z_lambda(mu)) for mu in all_partitions(n)})


def dim_irrep(lam):
    return character(partition(lam), (1,) * sum(lam))


def jack_at_b0_expected(lam):
    """(|λ|!/dim λ)·s_λ"""
    lam = partition(lam)
    return schur_in_powersum(lam) * Fraction(factorial(sum(lam)), dim_irrep(lam))
