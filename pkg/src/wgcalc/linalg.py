"""Fraction-free linear algebra over polynomial rings (sparse rows of MPoly)."""
from __future__ import annotations

from .exactnum import MPoly, UniPoly


class SingularSystem(ArithmeticError):
    pass


def _weight(p):
    return len(p.terms)


def bareiss_solve(rows, rhs, order=None):
    """Solve A x = r for square A given as sparse rows (dict col -> MPoly).

    Returns (numerators, det) with x_i = numerators[i] / det, everything
    polynomial.  Uses one-step fraction-free elimination: after step s every
    entry is a minor of the original augmented matrix, so the divisions by the
    previous pivot are exact.
    """
    n = len(rows)
    A = [dict(r) for r in rows]
    for i in range(n):
        if rhs[i].terms:
            A[i][n] = rhs[i]
    perm = list(range(n))
    prev = MPoly.constant(1)
    for s in range(n):
        # pivot: the sparsest nonzero entry in column s among remaining rows
        best = None
        for r in range(s, n):
            p = A[perm[r]].get(s)
            if p is not None and p.terms:
                w = (_weight(p), len(A[perm[r]]))
                if best is None or w < best[0]:
                    best = (w, r)
        if best is None:
            raise SingularSystem(f"no pivot in column {s}")
        r = best[1]
        perm[s], perm[r] = perm[r], perm[s]
        prow = A[perm[s]]
        piv = prow[s]
        for r in range(s + 1, n):
            row = A[perm[r]]
            f = row.get(s)
            new = {}
            for c, v in row.items():
                if c <= s:
                    continue
                new[c] = piv * v
            if f is not None and f.terms:
                for c, v in prow.items():
                    if c <= s:
                        continue
                    val = new.get(c)
                    prod = f * v
                    new[c] = (val - prod) if val is not None else -prod
            out = {}
            for c, v in new.items():
                if v.terms:
                    out[c] = v.divexact(prev) if not prev.is_constant() or prev.constant_value() != 1 else v
            A[perm[r]] = out
        prev = piv
    det = prev
    # back substitution: x_i = y_i / det with y polynomial
    y = [None] * n
    for s in range(n - 1, -1, -1):
        row = A[perm[s]]
        acc = det * row[n] if n in row else MPoly()
        for c, v in row.items():
            if s < c < n:
                acc = acc - v * y[c]
        y[s] = acc.divexact(row[s])
    return y, det


def _primitive_in_b(vec):
    """Divide a dict of univariate-in-b polynomials by their common gcd (and content)."""
    g = None
    for v in vec.values():
        u = v.to_unipoly("b")
        g = u if g is None else g.gcd(u)
        if g.degree() == 0:
            break
    if g is None:
        return vec
    cont = None
    if g.degree() > 0:
        gm = MPoly.from_unipoly(g.primitive(), "b")
        vec = {k: v.divexact(gm) for k, v in vec.items()}
    from fractions import Fraction
    from math import gcd, lcm
    num = 0
    den = 1
    for v in vec.values():
        for c in v.terms.values():
            c = Fraction(c)
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
    cont = Fraction(num, den)
    if cont != 1:
        vec = {k: v * (1 / cont) for k, v in vec.items()}
    return vec


class RowEchelon:
    """Incremental fraction-free echelon form of vectors with entries in Q[b].

    Vectors are dicts key -> MPoly (univariate in b).  Pivots are chosen as the
    lowest-degree entry of each new independent vector."""

    def __init__(self):
        self.rows = []  # (pivot key, pivot value, row dict)

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec):
        v = {k: c for k, c in vec.items() if c.terms}
        for key, piv, row in self.rows:
            f = v.get(key)
            if f is None:
                continue
            new = {k: piv * c for k, c in v.items()}
            for k, c in row.items():
                val = new.get(k, MPoly()) - f * c
                if val.terms:
                    new[k] = val
                else:
                    new.pop(k, None)
            v = _primitive_in_b(new) if new else new
        return v

    def add(self, vec):
        """Insert vec; True if it was independent of the rows so far."""
        v = self.reduce(vec)
        if not v:
            return False
        key = min(v, key=lambda k: (v[k].degree("b"), len(v[k].terms), str(k)))
        self.rows.append((key, v[key], v))
        return True

    def contains(self, vec):
        return not self.reduce(vec)
