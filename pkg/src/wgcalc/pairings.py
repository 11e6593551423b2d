"""Pair partitions of {1..2k}: symmetric-group action, coset-type, charges and the weight ω^(b).

A pair partition is stored by its ``mate`` tuple: ``mate[i-1]`` is the partner of ``i``.
That representation is canonical, hashable and cheap to act on; the sorted pair
list is derived from it on demand.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .exactnum import MPoly

B = MPoly.var("b")
ONE = MPoly.constant(1)
ZERO = MPoly()


class IndexOutOfRange(ValueError):
    pass


class PairPartition:
    __slots__ = ("mate", "_hash")

    def __init__(self, pairs=()):
        pairs = [tuple(p) for p in pairs]
        n = 2 * len(pairs)
        mate = [0] * n
        for a, b in pairs:
            if not (1 <= a <= n and 1 <= b <= n) or a == b or mate[a - 1] or mate[b - 1]:
                raise ValueError(f"not a pair partition of 1..{n}: {pairs}")
            mate[a - 1] = b
            mate[b - 1] = a
        self.mate = tuple(mate)
        self._hash = hash(self.mate)

    @classmethod
    def from_mate(cls, mate):
        obj = cls.__new__(cls)
        obj.mate = tuple(mate)
        obj._hash = hash(obj.mate)
        return obj

    @classmethod
    def parse(cls, text):
        """'(1 4|2 3|5 6)' (whitespace-insensitive); '()' or '(~)' is the empty pair partition."""
        body = text.strip()
        if body.startswith("(") and body.endswith(")"):
            body = body[1:-1]
        body = body.strip()
        if body in ("", "~"):
            return cls(())
        pairs = []
        for chunk in body.split("|"):
            nums = re.findall(r"\d+", chunk)
            if len(nums) == 1 and len(nums[0]) == 2:
                nums = list(nums[0])  # compact form (13|24)
            if len(nums) != 2:
                raise ValueError(f"bad pair {chunk!r} in {text!r}")
            pairs.append((int(nums[0]), int(nums[1])))
        return cls(pairs)

    @property
    def k(self):
        return len(self.mate) // 2

    @property
    def pairs(self):
        return tuple((i, m) for i, m in enumerate(self.mate, start=1) if i < m)

    def partner(self, i):
        return self.mate[i - 1]

    def contains(self, a, b):
        return self.mate[a - 1] == b

    def __eq__(self, other):
        return isinstance(other, PairPartition) and self.mate == other.mate

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return (self.k, self.pairs) < (other.k, other.pairs)

    def __len__(self):
        return self.k

    def __str__(self):
        if not self.mate:
            return "(~)"
        return "(" + "|".join(f"{a} {b}" for a, b in self.pairs) + ")"

    def __repr__(self):
        return f"PairPartition{self}"


def identity_pairing(k):
    """𝔢_k = (1 2|3 4|...|2k-1 2k)"""
    return PairPartition.from_mate(_identity_mate(k))


@lru_cache(maxsize=None)
def _identity_mate(k):
    return tuple(i + 1 if i % 2 else i - 1 for i in range(1, 2 * k + 1))


# -- raw operations on mate tuples (used in hot loops) -----------------------

def act_mate(mate, a, b):
    """mate of (a b)·𝔪: relabel a <-> b."""
    m = list(mate)
    pa, pb = m[a - 1], m[b - 1]
    if pa == b:
        return tuple(mate)
    m[a - 1], m[b - 1] = pb, pa
    m[pa - 1] = b
    m[pb - 1] = a
    return tuple(m)


def cycles_mate(mate):
    """Cycles of Γ(𝔪) as vertex lists, each starting at its largest vertex and
    stepping first along the 𝔢-edge."""
    n = len(mate)
    seen = [False] * (n + 1)
    out = []
    for start in range(n, 0, -1):
        if seen[start]:
            continue
        cyc = []
        v = start
        use_e = True
        while True:
            seen[v] = True
            cyc.append(v)
            w = (v + 1 if v % 2 else v - 1) if use_e else mate[v - 1]
            use_e = not use_e
            if w == start:
                break
            v = w
        out.append(cyc)
    return out


def charge_mate(mate):
    """+1/-1 per vertex (index 0 unused): the largest vertex of each cycle is +,
    charges alternate along the cycle."""
    q = [0] * (len(mate) + 1)
    for cyc in cycles_mate(mate):
        s = 1
        for v in cyc:
            q[v] = s
            s = -s
    return q


def coset_type_mate(mate):
    return tuple(sorted((len(c) // 2 for c in cycles_mate(mate)), reverse=True))


def step_is_flip(mate, a, c):
    """For 𝔫 = (a c)·𝔪 with a ≠ c, whether ω^(b)(𝔪, 𝔫) = b (else it is 1).

    A transposition whose endpoints carry different charges (in particular the
    loop 𝔪 -> 𝔪, whose endpoints are partners) weighs b."""
    if mate[a - 1] == c:
        return True
    q = charge_mate(mate)
    return q[a] != q[c]


# -- public API --------------------------------------------------------------

def act(tau, m):
    a, b = sorted(tau)
    n = len(m.mate)
    if not (1 <= a < b <= n):
        raise IndexOutOfRange(f"transposition {tau} outside 1..{n}")
    return PairPartition.from_mate(act_mate(m.mate, a, b))


def act_permutation(sigma, m):
    """σ·𝔪 for σ given as a dict or 1-based sequence i -> σ(i)."""
    n = len(m.mate)
    s = (lambda i: sigma[i]) if isinstance(sigma, dict) else (lambda i: sigma[i - 1])
    mate = [0] * n
    for a, b in m.pairs:
        sa, sb = s(a), s(b)
        mate[sa - 1] = sb
        mate[sb - 1] = sa
    return PairPartition.from_mate(mate)


def lower(m):
    """𝔪↓: drop the pair {2k-1, 2k}, which must be present."""
    k = m.k
    if k == 0 or m.mate[-1] != 2 * k - 1:
        raise ValueError(f"{m} does not contain {{{2 * k - 1}, {2 * k}}}")
    return PairPartition.from_mate(m.mate[:-2])


def raise_(m):
    """𝔪↑: append the pair {2k+1, 2k+2}."""
    k = m.k
    return PairPartition.from_mate(m.mate + (2 * k + 2, 2 * k + 1))


def cycles(m):
    return cycles_mate(m.mate)


def coset_type(m):
    return coset_type_mate(m.mate)


@dataclass(frozen=True)
class ChargedGraph:
    charge: dict
    cycles: tuple

    def sign(self, v):
        return "+" if self.charge[v] > 0 else "-"


def charges(m):
    q = charge_mate(m.mate)
    return ChargedGraph({v: q[v] for v in range(1, len(m.mate) + 1)},
                        tuple(tuple(c) for c in cycles_mate(m.mate)))


def transposition_between(m, n):
    """Some (i, j), i < j, with (i j)·𝔪 = 𝔫, or None."""
    if m.k != n.k:
        return None
    if m == n:
        return (1, m.mate[0]) if m.k else None
    diff = [v for v in range(1, len(m.mate) + 1) if m.mate[v - 1] != n.mate[v - 1]]
    if len(diff) != 4:
        return None
    # 𝔪 has {a, a'} and {c, c'} which 𝔫 recombines; the swap is a <-> c or a <-> c'
    a = diff[0]
    a2 = m.mate[a - 1]
    for c in diff:
        if c in (a, a2):
            continue
        if act_mate(m.mate, a, c) == n.mate:
            return tuple(sorted((a, c)))
    return None


def omega_b(m, n):
    """ω^(b)(𝔪, 𝔫) ∈ {0, 1, b} as a polynomial."""
    if m.k != n.k:
        return ZERO
    if m.k == 0:
        return ONE
    tau = transposition_between(m, n)
    if tau is None:
        return ZERO
    return B if step_is_flip(m.mate, *tau) else ONE


def is_connected_factorisation(taus, k):
    parent = list(range(2 * k + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for i in range(1, k + 1):
        union(2 * i - 1, 2 * i)
    for a, b in taus:
        if not (1 <= a <= 2 * k and 1 <= b <= 2 * k):
            raise IndexOutOfRange(f"transposition {(a, b)} outside 1..{2 * k}")
        union(a, b)
    return len({find(v) for v in range(1, 2 * k + 1)}) <= 1


@lru_cache(maxsize=None)
def all_pair_partitions(k):
    """P_k in lexicographic order of the canonical pair lists."""
    def gen(rest):
        if not rest:
            yield ()
            return
        a = rest[0]
        for idx in range(1, len(rest)):
            b = rest[idx]
            for tail in gen(rest[1:idx] + rest[idx + 1:]):
                yield ((a, b),) + tail
    return tuple(PairPartition(p) for p in gen(tuple(range(1, 2 * k + 1))))


def pairing_of_type(lam):
    """A representative pair partition of coset-type λ: one cycle per part on consecutive blocks."""
    pairs = []
    start = 0
    for part in lam:
        vs = list(range(start + 1, start + 2 * part + 1))
        for i in range(part):
            pairs.append((vs[2 * i + 1], vs[(2 * i + 2) % len(vs)]))
        start += 2 * part
    return PairPartition([tuple(sorted(p)) for p in pairs])


def admissible(m, index):
    """index: sequence i(1..2k).  {a,b} ∈ 𝔪 implies i(a) = i(b)."""
    return all(index[a - 1] == index[b - 1] for a, b in m.pairs)


def strongly_admissible(m, index):
    """{a,b} ∈ 𝔪 if and only if i(a) = i(b)."""
    n = len(m.mate)
    if len(index) != n:
        return False
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            if (index[a - 1] == index[b - 1]) != (m.mate[a - 1] == b):
                return False
    return True


def as_permutation(m):
    """𝔪 as the permutation sending 2i-1, 2i to the i-th pair (1-based list)."""
    out = []
    for a, b in m.pairs:
        out += [a, b]
    return out


def hyperoctahedral_generators(k):
    """Generators of H_k ⊂ S_{2k}: swaps inside a block and swaps of adjacent blocks."""
    gens = []
    n = 2 * k
    for i in range(1, k + 1):
        p = list(range(1, n + 1))
        p[2 * i - 2], p[2 * i - 1] = p[2 * i - 1], p[2 * i - 2]
        gens.append(tuple(p))
    for i in range(1, k):
        p = list(range(1, n + 1))
        a, b = 2 * i - 1, 2 * i + 1
        p[a - 1], p[b - 1] = b, a
        p[a], p[b] = b + 1, a + 1
        gens.append(tuple(p))
    return gens
