"""Integer partitions, b-contents and b-hooks, dominance order, standard Young tableaux.

Partitions are plain tuples of positive integers in weakly decreasing order.
Boxes are addressed 1-based as (row, column).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod

from .exactnum import MPoly

B = MPoly.var("b")


def partition(parts):
    """Canonical partition from any composition (zeros dropped, sorted decreasing)."""
    out = tuple(sorted((int(p) for p in parts if p), reverse=True))
    if out and out[-1] < 0:
        raise ValueError(f"negative part in {parts!r}")
    return out


def size(lam):
    return sum(lam)


@lru_cache(maxsize=None)
def all_partitions(k):
    """Partitions of k in decreasing lexicographic order: (k), (k-1,1), ..., (1^k)."""
    def gen(n, largest):
        if n == 0:
            yield ()
            return
        for first in range(min(n, largest), 0, -1):
            for rest in gen(n - first, first):
                yield (first,) + rest
    return tuple(gen(k, k))


def partitions_up_to(n_max, min_size=1):
    for n in range(min_size, n_max + 1):
        yield from all_partitions(n)


def conjugate(lam):
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > j) for j in range(lam[0]))


def n_statistic(lam):
    """n(λ) = Σ (i-1) λ_i"""
    return sum(i * p for i, p in enumerate(lam))


def multiplicities(lam):
    return Counter(lam)


def z_lambda(lam):
    return prod(i ** m * factorial(m) for i, m in Counter(lam).items())


def dominates(lam, mu):
    """λ ⪰ μ: equal size and every partial sum of λ is at least that of μ."""
    if sum(lam) != sum(mu):
        return False
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a < b:
            return False
    return True


def dominance_less(mu, lam):
    """μ ≺ λ strictly in dominance order."""
    return mu != lam and dominates(lam, mu)


def boxes(lam):
    for i, row in enumerate(lam, start=1):
        for j in range(1, row + 1):
            yield i, j


def b_content(i, j):
    return (B + 1) * (j - 1) - (i - 1)


def contents_multiset(lam):
    """b-contents of all boxes, row by row."""
    return [b_content(i, j) for i, j in boxes(lam)]


def content_sum(lam):
    total = MPoly()
    for c in contents_multiset(lam):
        total = total + c
    return total


def arm_leg(lam, i, j):
    conj = conjugate(lam)
    return lam[i - 1] - j, conj[j - 1] - i


def hook_products(lam):
    """(hook_b(λ), hook'_b(λ)): products of (b+1)a + ℓ + 1 and (b+1)a + ℓ + b + 1."""
    hook = MPoly.constant(1)
    hook_dual = MPoly.constant(1)
    for i, j in boxes(lam):
        a, leg = arm_leg(lam, i, j)
        hook = hook * ((B + 1) * a + leg + 1)
        hook_dual = hook_dual * ((B + 1) * a + leg + B + 1)
    return hook, hook_dual


def hook_length_count(lam):
    """|λ|! / hook_0(λ), the number of standard tableaux of shape λ."""
    h = prod(a + leg + 1 for a, leg in (arm_leg(lam, i, j) for i, j in boxes(lam)))
    return factorial(sum(lam)) // h


@dataclass(frozen=True)
class Tableau:
    """Standard Young tableau stored row-major."""

    rows: tuple

    @property
    def shape(self):
        return tuple(len(r) for r in self.rows)

    def __len__(self):
        return sum(len(r) for r in self.rows)

    def position(self, v):
        for i, row in enumerate(self.rows, start=1):
            if v in row:
                return i, row.index(v) + 1
        raise KeyError(v)

    def content(self, v):
        """b-content of the box holding v."""
        return b_content(*self.position(v))

    def contents(self):
        return [self.content(v) for v in range(1, len(self) + 1)]

    def remove_largest(self):
        """T̄: delete the box labelled |T|."""
        k = len(self)
        rows = tuple(tuple(x for x in r if x != k) for r in self.rows)
        return Tableau(tuple(r for r in rows if r))

    def restrict(self, j):
        """The subtableau of entries 1..j."""
        rows = tuple(tuple(x for x in r if x <= j) for r in self.rows)
        return Tableau(tuple(r for r in rows if r))

    def is_standard(self):
        for r in self.rows:
            if any(r[x] >= r[x + 1] for x in range(len(r) - 1)):
                return False
        for i in range(len(self.rows) - 1):
            for j, v in enumerate(self.rows[i + 1]):
                if self.rows[i][j] >= v:
                    return False
        return sorted(x for r in self.rows for x in r) == list(range(1, len(self) + 1))

    def to_list(self):
        return [list(r) for r in self.rows]

    def __str__(self):
        return "/".join(" ".join(map(str, r)) for r in self.rows)


@lru_cache(maxsize=None)
def standard_tableaux(lam):
    """All standard tableaux of shape λ, sorted lexicographically by their rows."""
    lam = partition(lam)
    n = sum(lam)
    if n == 0:
        return (Tableau(()),)
    out = []
    # place n in each removable corner and recurse on the smaller shape
    for i, row in enumerate(lam):
        if i + 1 < len(lam) and lam[i + 1] == row:
            continue
        smaller = list(lam)
        smaller[i] -= 1
        for t in standard_tableaux(partition(smaller)):
            rows = [list(r) for r in t.rows]
            if i < len(rows):
                rows[i].append(n)
            else:
                rows.append([n])
            out.append(Tableau(tuple(tuple(r) for r in rows)))
    out.sort(key=lambda t: t.rows)
    return tuple(out)


def all_tableaux(k):
    return [t for lam in all_partitions(k) for t in standard_tableaux(lam)]
