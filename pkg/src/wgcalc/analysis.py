"""Exact real-root analysis of univariate rational polynomials: Sturm counts,
real-rootedness with multiplicities, interlacing, and sweeps over Hurwitz keys."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .exactnum import RatFrac, UniPoly, substitute
from .hurwitz import _H, doubled_genus, genus_label
from .partitions import all_partitions, partition


class EndpointIsRoot(ValueError):
    pass


class InvalidParameter(ValueError):
    pass


EXCLUDED_B = (Fraction(0), Fraction(-1))


def _positive_integer_multiple(P):
    """Integer coefficient list of c·P for a positive rational c (signs are preserved)."""
    fr = [Fraction(c) for c in P.coeffs]
    den = 1
    for c in fr:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in fr]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return [c // g for c in ints] if g else ints


def _sign_at(ints, x):
    """Sign of the integer polynomial at the rational x = p/q, evaluated homogeneously."""
    p, q = x.numerator, x.denominator
    acc = 0
    qpow = 1
    for c in reversed(ints):
        acc = acc * p + c * qpow
        qpow *= q
    return (acc > 0) - (acc < 0)


def sturm_chain(P):
    """Sturm sequence of P, each member stored as a positive integer multiple."""
    chain = [P, P.derivative()]
    while chain[-1].degree() > 0:
        rem = chain[-2] % chain[-1]
        if rem.is_zero():
            break
        chain.append(-rem)
    return [_positive_integer_multiple(c) for c in chain]


def _variations(chain, x):
    x = Fraction(x)
    signs = [s for s in (_sign_at(c, x) for c in chain) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def sturm_count(P, a, b, chain=None):
    """Number of distinct real roots of the squarefree P in (a, b]."""
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError("need a < b")
    if P(a) == 0 or P(b) == 0:
        raise EndpointIsRoot(f"endpoint of ({a}, {b}] is a root")
    chain = chain or sturm_chain(P)
    return _variations(chain, a) - _variations(chain, b)


def cauchy_bound(P):
    lead = abs(Fraction(P.lc()))
    return 1 + max((abs(Fraction(c)) / lead for c in P.coeffs[:-1]), default=Fraction(0))


def _nonroot_near(ints, lo, hi):
    """A point strictly inside (lo, hi) where the integer polynomial does not vanish."""
    j = 1
    while True:
        x = lo + (hi - lo) * (Fraction(1, 2) + Fraction(1, 2 ** (j + 1)) * (-1) ** j)
        if _sign_at(ints, x) != 0:
            return x
        j += 1


def isolate_real_roots(P):
    """Disjoint intervals (lo, hi], one per distinct real root of P, sorted by position."""
    S = P.squarefree_part()
    if S.degree() < 1:
        return []
    chain = sturm_chain(S)
    C = cauchy_bound(S)
    out = []
    stack = [(-C, C)]
    while stack:
        lo, hi = stack.pop()
        n = _variations(chain, lo) - _variations(chain, hi)
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        # split at a non-root near the midpoint so every endpoint stays root-free
        mid = _nonroot_near(chain[0], lo, hi)
        stack.append((lo, mid))
        stack.append((mid, hi))
    return sorted(out)


def _root_in(interval, factor):
    lo, hi = interval
    return sturm_count(factor, lo, hi) == 1


@dataclass
class RootReport:
    degree: int
    real_root_count: int
    intervals: list = field(default_factory=list)        # (lo, hi) rationals, one per distinct real root
    multiplicities: list = field(default_factory=list)

    @property
    def real_rooted(self):
        return self.real_root_count == self.degree


def root_report(P):
    if P.is_zero():
        raise ValueError("the zero polynomial has no root report")
    intervals = isolate_real_roots(P)
    factors = P.squarefree_decomposition()
    mults = []
    for iv in intervals:
        mults.append(sum(m for Q, m in factors if _root_in(iv, Q)))
    return RootReport(P.degree(), sum(mults), intervals, mults)


def is_real_rooted(P):
    report = root_report(P)
    return report.real_rooted, report


def _root_sequence(P, intervals):
    """Sorted multiset of real roots of P as indices into the merged distinct-root list."""
    factors = P.squarefree_decomposition()
    seq = []
    for idx, iv in enumerate(intervals):
        seq.extend([idx] * sum(m for Q, m in factors if _root_in(iv, Q)))
    return seq


def interlaces(P, Q):
    """P interlaces Q: deg Q = deg P + 1, both real-rooted, b_1 ≤ a_1 ≤ b_2 ≤ … ≤ a_n ≤ b_{n+1}."""
    if P.is_zero() or Q.is_zero():
        raise ValueError("interlacing is defined for nonzero polynomials")
    if P.degree() == 0 and Q.degree() == 1:
        return True
    if Q.degree() != P.degree() + 1 or P.degree() < 1:
        return False
    merged = isolate_real_roots(P * Q)
    a = _root_sequence(P, merged)
    b = _root_sequence(Q, merged)
    if len(a) != P.degree() or len(b) != Q.degree():
        return False
    return all(b[i] <= a[i] <= b[i + 1] for i in range(len(a)))


# ---------------------------------------------------------------------------
# sweeps over Hurwitz keys
# ---------------------------------------------------------------------------

def specialize_in_t(poly, b_val):
    value = substitute(RatFrac.coerce(poly), {"b": Fraction(b_val)}).to_mpoly()
    return value.to_unipoly("t")


@dataclass
class SweepRow:
    g: str
    n: int
    mu: tuple
    b: Fraction
    real_rooted: object          # True / False / None when H vanishes identically
    interlacing_pass: object
    witness: str = ""


@dataclass
class SweepReport:
    rows: list

    @property
    def failures(self):
        return [r for r in self.rows if r.real_rooted is False or r.interlacing_pass is False]

    @property
    def checks(self):
        return sum((r.real_rooted is not None) + (r.interlacing_pass is not None) for r in self.rows)

    @property
    def vacuous(self):
        return sum(1 for r in self.rows if r.real_rooted is None)

    @property
    def passed(self):
        return not self.failures

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["g", "n", "mu", "b", "real_rooted", "interlacing_pass", "witness"])
        for r in self.rows:
            writer.writerow([r.g, r.n, ",".join(map(str, r.mu)), str(r.b),
                             _cell(r.real_rooted), _cell(r.interlacing_pass), r.witness])
        return buf.getvalue()


def _cell(v):
    return "vacuous" if v is None else ("pass" if v else "fail")


def _increments(mu):
    out = []
    for i, part in enumerate(mu):
        if i and mu[i - 1] == part:
            continue            # same polynomial as the previous increment
        bumped = list(mu)
        bumped[i] += 1
        out.append(partition(bumped))
    return out


def sweep(genera, ns, sizes, b_values):
    """Real-rootedness of H_{g,n}(μ) and interlacing against every μ_i ↦ μ_i + 1, at each b."""
    b_values = [Fraction(b) for b in b_values]
    bad = [b for b in b_values if b in EXCLUDED_B]
    if bad:
        raise InvalidParameter(f"b = {bad[0]} is excluded: H can vanish identically there")
    rows = []
    for g in genera:
        twice_g = doubled_genus(g)
        for n in ns:
            for k in sizes:
                for mu in all_partitions(k):
                    if len(mu) != n:
                        continue
                    H = _H(twice_g, mu)
                    bumped = [(nu, _H(twice_g, nu)) for nu in _increments(mu)]
                    for b in b_values:
                        rows.append(_sweep_row(twice_g, n, mu, b, H, bumped))
    return SweepReport(rows)


def _sweep_row(twice_g, n, mu, b, H, bumped):
    P = specialize_in_t(H, b)
    label = genus_label(twice_g)
    if P.is_zero():
        return SweepRow(label, n, mu, b, None, None)
    real, report = is_real_rooted(P)
    witness = "" if real else f"{report.real_root_count} real roots of degree {report.degree}"
    ok = True
    for nu, Hnu in bumped:
        Q = specialize_in_t(Hnu, b)
        if Q.is_zero():
            continue
        if not interlaces(P, Q):
            ok = False
            witness = witness or f"does not interlace H{nu}"
            break
    return SweepRow(label, n, mu, b, real, ok, witness)
