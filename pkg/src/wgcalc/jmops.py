"""b-deformed Jucys–Murphy operators on the span 𝒱_k of pair partitions.

    𝒥_i(𝔪) = Σ_{a=1}^{2i-2} ω^(b)((a 2i-1)·𝔪, 𝔪) · (a 2i-1)·𝔪,      𝒥_1 = 0

Vectors carry polynomial numerators in b over one common denominator in b.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .exactnum import MPoly, RatFrac
from .linalg import RowEchelon, bareiss_solve
from .pairings import (PairPartition, act_mate, all_pair_partitions, coset_type_mate,
                       identity_pairing, step_is_flip)
from .partitions import (Tableau, all_partitions, all_tableaux, b_content, partition,
                         standard_tableaux)
from .symfunc import (SymFunc, complete, elementary, eval_at_multiset, jack, jack_norm,
                      laplace_beltrami, monomial_in_powersum, power_norm, to_monomial_basis)

B = MPoly.var("b")
ONE = MPoly.constant(1)


class IndexOutOfRange(ValueError):
    pass


class NotCosetTypeInvariant(ValueError):
    pass


class ExpensiveComputation(ValueError):
    """Raised when a level needs the explicit expensive flag (or exceeds the supported range)."""


JM_LEVEL_BOUND = 5
CHEAP_LEVEL_BOUND = 4


def _check_level(k, expensive):
    if k > JM_LEVEL_BOUND:
        raise ExpensiveComputation(f"level {k} exceeds the supported bound {JM_LEVEL_BOUND}")
    if k > CHEAP_LEVEL_BOUND and not expensive:
        raise ExpensiveComputation(f"level {k} takes minutes; pass expensive=True")


def _gcd_b(polys):
    g = None
    for p in polys:
        u = p.to_unipoly("b")
        g = u if g is None else g.gcd(u)
        if g.degree() == 0:
            break
    return g


class PkVector:
    __slots__ = ("k", "num", "den")

    def __init__(self, k, coefficients=None, den=None, _raw=False):
        self.k = k
        if _raw:
            self.num = coefficients
            self.den = den
            return
        num = {}
        d = ONE
        items = []
        for m, c in (coefficients or {}).items():
            mate = m.mate if isinstance(m, PairPartition) else tuple(m)
            if len(mate) != 2 * k:
                raise ValueError(f"{m} is not in P_{k}")
            c = c if isinstance(c, RatFrac) else RatFrac(c)
            items.append((mate, c))
            d = d * c.den if not c.den.is_constant() else d * c.den.constant_value()
        for mate, c in items:
            if not c.is_zero():
                num[mate] = (c * d).to_mpoly()
        self.num = num
        self.den = d if isinstance(d, MPoly) else MPoly.constant(d)
        self._reduce()

    @classmethod
    def basis(cls, m):
        return cls(m.k, {m.mate: ONE}, ONE, _raw=True)

    @classmethod
    def raw(cls, k, num, den=ONE):
        v = cls(k, {m: p for m, p in num.items() if p.terms}, den, _raw=True)
        v._reduce()
        return v

    def _reduce(self):
        if not self.num:
            self.den = ONE
            return
        if not self.den.is_constant():
            g = _gcd_b([self.den, *self.num.values()])
            if g.degree() > 0:
                gm = MPoly.from_unipoly(g.primitive(), "b")
                self.num = {m: p.divexact(gm) for m, p in self.num.items()}
                self.den = self.den.divexact(gm)
        c = self.den.content()
        _, lead = self.den.leading()
        if lead < 0:
            c = -c
        if c != 1:
            self.num = {m: p * (1 / c) for m, p in self.num.items()}
            self.den = self.den * (1 / c)

    def coefficient(self, m):
        mate = m.mate if isinstance(m, PairPartition) else tuple(m)
        p = self.num.get(mate)
        return RatFrac(p, self.den) if p is not None else RatFrac(0)

    def support(self):
        return sorted(PairPartition.from_mate(m) for m in self.num)

    def is_zero(self):
        return not self.num

    def __add__(self, other):
        if self.k != other.k:
            raise ValueError("level mismatch")
        if self.den == other.den:
            num = dict(self.num)
            for m, p in other.num.items():
                num[m] = num[m] + p if m in num else p
            return PkVector.raw(self.k, num, self.den)
        num = {m: p * other.den for m, p in self.num.items()}
        for m, p in other.num.items():
            q = p * self.den
            num[m] = num[m] + q if m in num else q
        return PkVector.raw(self.k, num, self.den * other.den)

    def __neg__(self):
        return PkVector(self.k, {m: -p for m, p in self.num.items()}, self.den, _raw=True)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = c if isinstance(c, RatFrac) else RatFrac(c)
        return PkVector.raw(self.k, {m: p * c.num for m, p in self.num.items()}, self.den * c.den)

    __mul__ = scale
    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, PkVector) or self.k != other.k:
            return False
        if set(self.num) != set(other.num):
            return False
        return all(p * other.den == other.num[m] * self.den for m, p in self.num.items())

    __hash__ = None

    def lift(self, levels=1):
        """𝔪 ↦ 𝔪↑ on every basis vector."""
        k = self.k
        num = self.num
        for _ in range(levels):
            num = {m + (2 * k + 2, 2 * k + 1): p for m, p in num.items()}
            k += 1
        return PkVector(k, num, self.den, _raw=True)

    def by_coset_type(self):
        """coset-type -> coefficient; raises NotCosetTypeInvariant if not constant on types."""
        seen = {}
        for lam in all_partitions(self.k):
            seen[lam] = None
        for m in all_pair_partitions(self.k):
            lam = coset_type_mate(m.mate)
            p = self.num.get(m.mate, MPoly())
            if seen[lam] is None:
                seen[lam] = p
            elif seen[lam] != p:
                raise NotCosetTypeInvariant(f"coefficients differ within coset-type {lam}")
        return {lam: RatFrac(p, self.den) for lam, p in seen.items() if p is not None and p.terms}

    def __str__(self):
        if not self.num:
            return "0"
        return " + ".join(f"[{RatFrac(p, self.den)}]{PairPartition.from_mate(m)}"
                          for m, p in sorted(self.num.items()))

    def __repr__(self):
        return f"PkVector(k={self.k}: {self})"


def e_vector(k):
    return PkVector.basis(identity_pairing(k))


# ---------------------------------------------------------------------------
# operator action
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _column(i, mate, weighted):
    """Nonzero entries of column 𝔪 of 𝒥_i (weighted) or J_{2i-1}: tuple of (row mate, is_b)."""
    top = 2 * i - 1
    out = []
    for a in range(1, top):
        n = act_mate(mate, a, top)
        out.append((n, weighted and step_is_flip(n, a, top)))
    return tuple(out)


def _apply(i, num, weighted):
    out = {}
    for m, p in num.items():
        pb = None
        for n, is_b in _column(i, m, weighted):
            if is_b:
                if pb is None:
                    pb = p * B
                q = pb
            else:
                q = p
            if n in out:
                s = out[n] + q
                if s.terms:
                    out[n] = s
                else:
                    del out[n]
            else:
                out[n] = q
    return out


def _check_index(i, k):
    if not (1 <= i <= k):
        raise IndexOutOfRange(f"operator index {i} outside 1..{k}")


def j_apply(i, v):
    _check_index(i, v.k)
    if i == 1:
        return PkVector(v.k, {}, ONE, _raw=True)
    return PkVector.raw(v.k, _apply(i, v.num, True), v.den)


def odd_jm_apply(i, v):
    """Classical odd Jucys–Murphy element J_{2i-1}: unweighted sum of transpositions."""
    _check_index(i, v.k)
    if i == 1:
        return PkVector(v.k, {}, ONE, _raw=True)
    return PkVector.raw(v.k, _apply(i, v.num, False), v.den)


def operator_entries(i, k, weighted=True):
    """Sparse matrix of 𝒥_i on 𝒱_k: dict (row mate, column mate) -> 1 or b."""
    out = {}
    if i == 1:
        return out
    for m in all_pair_partitions(k):
        for n, is_b in _column(i, m.mate, weighted):
            out[(n, m.mate)] = B if is_b else ONE
    return out


@dataclass(frozen=True)
class JOperator:
    k: int
    i: int
    weighted: bool
    entries: dict = field(repr=False, compare=False)   # (row mate, column mate) -> 1 or b

    @classmethod
    def build(cls, i, k, weighted=True):
        _check_index(i, k)
        return cls(k, i, weighted, operator_entries(i, k, weighted))

    def __call__(self, v):
        return j_apply(self.i, v) if self.weighted else odd_jm_apply(self.i, v)

    def column(self, m):
        mate = m.mate if isinstance(m, PairPartition) else tuple(m)
        return {row: w for (row, col), w in self.entries.items() if col == mate}


def apply_matrix_to_numerators(i, k, vec, weighted):
    """Operator action on a raw dict mate -> polynomial (coefficients may involve M, N)."""
    if i == 1:
        return {}
    return _apply(i, vec, weighted)


def solve_shifted(i, k, vec, shift, weighted):
    """Solve (shift + J_i)·x = vec on the J_i-stable span of vec's support.

    Returns (numerators, det) with x = numerators/det."""
    support = set(vec)
    frontier = list(support)
    while frontier and i > 1:
        m = frontier.pop()
        for n, _ in _column(i, m, weighted):
            if n not in support:
                support.add(n)
                frontier.append(n)
    unknowns = sorted(support)
    index = {m: r for r, m in enumerate(unknowns)}
    rows = []
    for n in unknowns:
        row = {index[n]: shift}
        top = 2 * i - 1
        for a in range(1, top if i > 1 else 1):
            # entry (n, m) of the operator is ω(n, m), read off the charges of n
            m = act_mate(n, a, top)
            w = B if weighted and step_is_flip(n, a, top) else ONE
            c = index[m]
            row[c] = row[c] + w if c in row else w
        rows.append({c: v for c, v in row.items() if v.terms})
    rhs = [vec.get(m, MPoly()) for m in unknowns]
    y, det = bareiss_solve(rows, rhs)
    return {m: p for m, p in zip(unknowns, y) if p.terms}, det


# ---------------------------------------------------------------------------
# the orbit space 𝒳(k)
# ---------------------------------------------------------------------------

@dataclass
class SubspaceBasis:
    k: int
    vectors: list                     # spanning PkVectors (polynomial in b)
    echelon: RowEchelon = field(repr=False)

    @property
    def dimension(self):
        return len(self.echelon)

    def contains(self, v):
        scaled = {m: p for m, p in v.num.items()}
        return self.echelon.contains(scaled)


def orbit_space(k, expensive=False):
    """Closure of 𝔢_k under 𝒥_2..𝒥_k (𝒥_1 = 0), echelonized."""
    _check_level(k, expensive)
    return _orbit_space(k)


@lru_cache(maxsize=None)
def _orbit_space(k):
    ech = RowEchelon()
    start = e_vector(k)
    ech.add(start.num)
    vectors = [start]
    queue = [start]
    while queue:
        v = queue.pop(0)
        for i in range(2, k + 1):
            w = j_apply(i, v)
            if w.is_zero():
                continue
            if ech.add(w.num):
                vectors.append(w)
                queue.append(w)
    return SubspaceBasis(k, vectors, ech)


# ---------------------------------------------------------------------------
# the vectors 𝔴_T, 𝔭_λ, 𝔴_λ and the characteristic map
# ---------------------------------------------------------------------------

def _addable_corners(lam):
    lam = list(lam)
    out = []
    for i in range(len(lam) + 1):
        row_len = lam[i] if i < len(lam) else 0
        if i == 0 or lam[i - 1] > row_len:
            out.append((i + 1, row_len + 1))
    return out


@lru_cache(maxsize=None)
def w_tableau(T):
    """𝔴_T = Π_{S ≠ T, S̄ = T̄} (𝒥_k - c_b(S_k))/(c_b(T_k) - c_b(S_k)) · 𝔴_T̄, with 𝔴 of one box = 𝔢_1."""
    if not isinstance(T, Tableau):
        T = Tableau(tuple(tuple(r) for r in T))
    k = len(T)
    if k == 0:
        raise ValueError("𝔴 is defined from the one-box tableau upwards")
    if k == 1:
        return e_vector(1)
    parent = T.remove_largest()
    v = w_tableau(parent).lift()
    c_T = T.content(k)
    for corner in _addable_corners(parent.shape):
        if corner == T.position(k):
            continue
        c_S = b_content(*corner)
        numer = j_apply(k, v) - v.scale(c_S)
        v = numer.scale(RatFrac(1, c_T - c_S))
    return v


def p_vector(lam, k=None):
    lam = partition(lam)
    k = sum(lam) if k is None else k
    if sum(lam) != k:
        raise ValueError(f"{lam} is not a partition of {k}")
    return PkVector(k, {m.mate: ONE for m in all_pair_partitions(k) if coset_type_mate(m.mate) == lam}, ONE,
                    _raw=True)


def jack_pairing(lam, mu):
    """⟨J_λ, p_μ⟩_b"""
    return jack(lam).coefficient(mu) * power_norm(partition(mu))


@lru_cache(maxsize=None)
def w_vector(lam, k=None):
    lam = partition(lam)
    k = sum(lam) if k is None else k
    total = PkVector(k, {}, ONE, _raw=True)
    for mu in all_partitions(k):
        c = jack_pairing(lam, mu)
        if not c.is_zero():
            total = total + p_vector(mu, k).scale(c)
    return total.scale(RatFrac(1) / jack_norm(lam))


def ch_b(v):
    """𝔭_μ ↦ p_μ / ((1+b)^ℓ(μ) z_μ), extended linearly on coset-type-invariant vectors."""
    coeffs = v.by_coset_type()
    return SymFunc({mu: c / power_norm(mu) for mu, c in coeffs.items()})


# ---------------------------------------------------------------------------
# symmetric functions of the operators
# ---------------------------------------------------------------------------

def _monomial_operator(nu, k, v):
    """m_ν^≥(𝒥)·v: each monomial x^α becomes 𝒥_k^{α_k} ⋯ 𝒥_1^{α_1} (smallest index acts first)."""
    nu = partition(nu)
    if len(nu) > k:
        return PkVector(v.k, {}, ONE, _raw=True)
    start = tuple(sorted(nu))
    states = {start: v.num}
    for j in range(1, k + 1):
        new = {}
        for remaining, num in states.items():
            choices = {0} | set(remaining)
            for e in choices:
                if e:
                    rest = list(remaining)
                    rest.remove(e)
                    rest = tuple(rest)
                else:
                    rest = remaining
                # variables left after j must be able to take the rest
                if len(rest) > k - j:
                    continue
                w = num
                for _ in range(e):
                    w = _apply(j, w, True) if j > 1 else {}
                if not w:
                    continue
                if rest in new:
                    acc = dict(new[rest])
                    for m, p in w.items():
                        s = acc[m] + p if m in acc else p
                        if s.terms:
                            acc[m] = s
                        else:
                            acc.pop(m)
                    new[rest] = acc
                else:
                    new[rest] = w
        states = new
    return PkVector.raw(v.k, states.get((), {}), v.den)


def sym_operator(f, k, v):
    """f^≥(𝒥)·v for a homogeneous symmetric function f given as a SymFunc."""
    total = PkVector(v.k, {}, ONE, _raw=True)
    for nu, c in to_monomial_basis(f).items():
        total = total + _monomial_operator(nu, k, v).scale(c)
    return total


# ---------------------------------------------------------------------------
# verification suite
# ---------------------------------------------------------------------------

@dataclass
class CheckResult:
    check: str
    k: int
    status: str            # "pass" / "fail"
    kind: str              # "THEOREM" / "CONJECTURE"
    witness: str = ""

    def record(self):
        out = {"check": self.check, "k": self.k, "status": self.status, "kind": self.kind}
        if self.witness:
            out["witness"] = self.witness
        return out


def _symmetric_test_functions(max_degree):
    for r in range(1, max_degree + 1):
        yield f"e_{r}", elementary(r)
        yield f"h_{r}", complete(r)
        for nu in all_partitions(r):
            yield f"m_{''.join(map(str, nu))}", monomial_in_powersum(nu)


def verify_suite(k, max_degree=3, expensive=False):
    _check_level(k, expensive)
    results = []

    def report(name, kind, ok, witness=""):
        results.append(CheckResult(name, k, "pass" if ok else "fail", kind, "" if ok else witness))

    X = orbit_space(k, expensive)
    tabs = all_tableaux(k)
    report("dimension of X(k) equals #Tab(k)", "CONJECTURE", X.dimension == len(tabs),
           f"dim {X.dimension} vs {len(tabs)} tableaux")

    # (i) commutation on X(k)
    bad = ""
    for v in X.vectors:
        for m in range(2, k + 1):
            for n in range(m + 1, k + 1):
                if not (j_apply(m, j_apply(n, v)) - j_apply(n, j_apply(m, v))).is_zero():
                    bad = bad or f"[J_{m}, J_{n}] nonzero on an orbit vector"
    report("operators commute on X(k)", "CONJECTURE", not bad, bad)

    # (ii) eigenvalues
    bad = ""
    for T in tabs:
        w = w_tableau(T)
        for i in range(1, k + 1):
            if j_apply(i, w) != w.scale(T.content(i)):
                bad = bad or f"J_{i} on w_T for T={T}"
    report("J_i w_T = c_b(T_i) w_T", "CONJECTURE", not bad, bad)

    # (iii) branching: w_S lifted equals the sum of w_T over T extending S
    bad = ""
    for j in range(1, k):
        for S in all_tableaux(j):
            total = PkVector(k, {}, ONE, _raw=True)
            for T in tabs:
                if T.restrict(j) == S:
                    total = total + w_tableau(T)
            if total != w_tableau(S).lift(k - j):
                bad = bad or f"S={S}"
    total = PkVector(k, {}, ONE, _raw=True)
    for T in tabs:
        total = total + w_tableau(T)
    if total != e_vector(k):
        bad = bad or "sum of all w_T differs from e_k"
    report("w_S = sum of w_T over T containing S (and sum w_T = e_k)", "CONJECTURE", not bad, bad)

    # (iv) w_λ = Σ_{T ∈ Tab(λ)} w_T
    bad = ""
    for lam in all_partitions(k):
        total = PkVector(k, {}, ONE, _raw=True)
        for T in standard_tableaux(lam):
            total = total + w_tableau(T)
        if total != w_vector(lam, k):
            bad = bad or f"λ={lam}"
    report("w_lambda = sum of w_T over Tab(lambda)", "CONJECTURE", not bad, bad)

    # (v) symmetric functions of the operators act on w_λ by evaluation at contents
    bad = ""
    funcs = list(_symmetric_test_functions(max_degree))
    for lam in all_partitions(k):
        w = w_vector(lam, k)
        cont = [b_content(i, j) for i, row in enumerate(lam, 1) for j in range(1, row + 1)]
        for name, f in funcs:
            lhs = sym_operator(f, k, w)
            rhs = w.scale(RatFrac(eval_at_multiset(f, cont, k)))
            if lhs != rhs:
                bad = bad or f"{name} on w_{lam}"
    report("f(J) w_lambda = f(cont_b lambda) w_lambda", "CONJECTURE", not bad, bad)

    # (vi) Laplace–Beltrami intertwining
    bad = ""
    for lam in all_partitions(k):
        p = p_vector(lam, k)
        s = PkVector(k, {}, ONE, _raw=True)
        for i in range(1, k + 1):
            s = s + j_apply(i, p)
        try:
            lhs = ch_b(s)
        except NotCosetTypeInvariant:
            bad = bad or f"(sum J_i) p_{lam} is not coset-type invariant"
            continue
        if lhs != laplace_beltrami(ch_b(p)):
            bad = bad or f"λ={lam}"
    report("ch((sum J_i) p_lambda) = D(b) ch(p_lambda)", "CONJECTURE", not bad, bad)

    # (vii) theorem: elementary and complete symmetric functions applied to e_k
    e = e_vector(k)
    for r in range(1, max_degree + 1):
        lhs = sym_operator(elementary(r), k, e)
        rhs = PkVector(k, {}, ONE, _raw=True)
        for lam in all_partitions(k):
            if len(lam) == k - r:
                rhs = rhs + p_vector(lam, k)
        report(f"e_{r}(J) e_k = sum of p_lambda with k-r parts", "THEOREM", lhs == rhs, f"r={r}")
        lhs = sym_operator(complete(r), k, e)
        rhs = PkVector(k, {}, ONE, _raw=True)
        for lam in all_partitions(k):
            cont = [b_content(i, j) for i, row in enumerate(lam, 1) for j in range(1, row + 1)]
            c = eval_at_multiset(complete(r), cont, k)
            rhs = rhs + w_vector(lam, k).scale(RatFrac(c))
        report(f"h_{r}(J) e_k = sum of h_r(cont) w_lambda", "THEOREM", lhs == rhs, f"r={r}")
    return results
