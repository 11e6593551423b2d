"""Exact arithmetic: sparse multivariate polynomials over Q, fractions of them,
dense univariate polynomials, and truncated series.

Rationals are ``fractions.Fraction``; integral coefficients are kept as ``int``.

Every polynomial lives over one global, ordered variable universe
``b < t < N < M < hbar < z < p1 < ... < pP``.  A monomial is stored as a single
packed integer with 16 bits per variable (variable ``i`` occupies bits
``16*i .. 16*i+15``), so multiplying monomials is integer addition and
comparing packed keys is a lexicographic monomial order.
"""
from __future__ import annotations

import ast
import json
from fractions import Fraction
from math import gcd, lcm

MAX_POWER_SUM = 12
VARIABLES = ("b", "t", "N", "M", "hbar", "z") + tuple(f"p{i}" for i in range(1, MAX_POWER_SUM + 1))
VAR_INDEX = {name: i for i, name in enumerate(VARIABLES)}
_ALIASES = {"ħ": "hbar", "h": "hbar"}

_FIELD = 16
_FIELD_MASK = (1 << _FIELD) - 1
# the top bit of every field is a guard bit used to detect borrows when dividing monomials
_GUARD = sum(1 << (_FIELD * i + _FIELD - 1) for i in range(len(VARIABLES)))
MAX_EXPONENT = (1 << (_FIELD - 1)) - 1


class DenominatorVanishes(ZeroDivisionError):
    pass


class PoleAtInfinity(ValueError):
    pass


class NonzeroConstantTerm(ValueError):
    pass


class PrecisionError(ValueError):
    """Asked for a series coefficient beyond the known order."""


class NotDivisible(ArithmeticError):
    pass


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _var_index(name):
    name = _ALIASES.get(name, name)
    try:
        return VAR_INDEX[name]
    except KeyError:
        raise ValueError(f"unknown variable {name!r}") from None


def pack(exponents):
    """dict var-name -> exponent  ->  packed monomial key"""
    key = 0
    for name, e in exponents.items():
        if e < 0 or e > MAX_EXPONENT:
            raise OverflowError(f"exponent {e} out of range")
        key |= e << (_FIELD * _var_index(name))
    return key


def unpack(key):
    """packed key -> dict var-name -> exponent (nonzero entries only)"""
    out = {}
    i = 0
    while key:
        e = key & _FIELD_MASK
        if e:
            out[VARIABLES[i]] = e
        key >>= _FIELD
        i += 1
    return out


def _exponent(key, idx):
    return (key >> (_FIELD * idx)) & _FIELD_MASK


def _divides(small, big):
    return ((big | _GUARD) - small) & _GUARD == _GUARD


def _cdiv(c, d):
    if type(c) is int and type(d) is int and c % d == 0:
        return c // d
    return _norm(Fraction(c) / d)


def _rat_str(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class MPoly:
    """Sparse polynomial: dict packed-monomial -> nonzero rational."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = terms if terms is not None else {}

    # -- construction --------------------------------------------------
    @classmethod
    def constant(cls, c):
        c = _norm(c)
        return cls({0: c} if c else {})

    @classmethod
    def var(cls, name, power=1):
        return cls({power << (_FIELD * _var_index(name)): 1})

    @classmethod
    def from_exponents(cls, pairs):
        """iterable of (dict var -> exponent, coefficient)"""
        terms = {}
        for exps, c in pairs:
            k = pack(exps)
            v = terms.get(k, 0) + c
            if v:
                terms[k] = _norm(v)
            else:
                terms.pop(k, None)
        return cls(terms)

    @staticmethod
    def coerce(x):
        if isinstance(x, MPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return MPoly.constant(x)
        return NotImplemented

    # -- predicates ----------------------------------------------------
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self):
        return self.terms.get(0, 0)

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def variables(self):
        used = 0
        for k in self.terms:
            used |= k
        return tuple(VARIABLES[i] for i in range(len(VARIABLES)) if _exponent(used, i))

    def univariate_in(self):
        """Name of the single variable this polynomial uses, '' if constant, None if several."""
        vs = self.variables()
        if not vs:
            return ""
        return vs[0] if len(vs) == 1 else None

    def degree(self, name=None):
        if not self.terms:
            return -1
        if name is None:
            return max(sum(unpack(k).values()) for k in self.terms)
        idx = _var_index(name)
        return max(_exponent(k, idx) for k in self.terms)

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        other = MPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if len(self.terms) < len(other.terms):
            self, other = other, self
        terms = dict(self.terms)
        for k, c in other.terms.items():
            v = terms.get(k, 0) + c
            if v:
                terms[k] = _norm(v)
            else:
                del terms[k]
        return MPoly(terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = MPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for k, c in other.terms.items():
            v = terms.get(k, 0) - c
            if v:
                terms[k] = _norm(v)
            else:
                del terms[k]
        return MPoly(terms)

    def __rsub__(self, other):
        return MPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MPoly()
            return MPoly({k: _norm(c * other) for k, c in self.terms.items()})
        if not isinstance(other, MPoly):
            return NotImplemented
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (kb, cb), = b.items()
            return MPoly({ka + kb: _norm(ca * cb) for ka, ca in a.items()})
        terms = {}
        get = terms.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                terms[k] = get(k, 0) + ca * cb
        return MPoly({k: _norm(c) for k, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = MPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError
            return MPoly({k: _norm(Fraction(c) / other) for k, c in self.terms.items()})
        if isinstance(other, MPoly):
            return RatFrac(self, other)
        if isinstance(other, RatFrac):
            return RatFrac(self * other.den, other.num)
        return NotImplemented

    def __rtruediv__(self, other):
        other = MPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFrac(other, self)

    def __eq__(self, other):
        if isinstance(other, RatFrac):
            return other == self
        other = MPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- structure -----------------------------------------------------
    def leading(self):
        """(key, coefficient) of the largest monomial in the packed-key order."""
        k = max(self.terms)
        return k, self.terms[k]

    def content(self):
        """Positive rational c with self/c primitive with integer coefficients."""
        if not self.terms:
            return Fraction(1)
        num = 0
        den = 1
        for c in self.terms.values():
            c = Fraction(c)
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
        return Fraction(num, den)

    def scale(self, c):
        return self * c

    def divexact(self, other):
        """Exact quotient self/other; raises NotDivisible if other does not divide self."""
        if not other.terms:
            raise ZeroDivisionError
        if len(other.terms) == 1:
            (kd, cd), = other.terms.items()
            out = {}
            for k, c in self.terms.items():
                if not _divides(kd, k):
                    raise NotDivisible
                out[k - kd] = _cdiv(c, cd)
            return MPoly(out)
        kd, cd = other.leading()
        rem = dict(self.terms)
        quot = {}
        dterms = list(other.terms.items())
        while rem:
            k = max(rem)
            c = rem[k]
            if not _divides(kd, k):
                raise NotDivisible
            qk = k - kd
            qc = _cdiv(c, cd)
            quot[qk] = qc
            for dk, dc in dterms:
                kk = dk + qk
                v = rem.get(kk, 0) - qc * dc
                if v:
                    rem[kk] = v
                else:
                    rem.pop(kk, None)
        return MPoly({k: _norm(c) for k, c in quot.items()})

    def coefficients_in(self, name):
        """dict power -> MPoly (coefficient of name**power, free of name)."""
        idx = _var_index(name)
        shift = _FIELD * idx
        out = {}
        for k, c in self.terms.items():
            e = (k >> shift) & _FIELD_MASK
            out.setdefault(e, {})[k - (e << shift)] = c
        return {e: MPoly(t) for e, t in out.items()}

    def derivative(self, name):
        idx = _var_index(name)
        shift = _FIELD * idx
        out = {}
        for k, c in self.terms.items():
            e = (k >> shift) & _FIELD_MASK
            if e:
                out[k - (1 << shift)] = _norm(c * e)
        return MPoly(out)

    def evaluate(self, bindings, one=None):
        """Substitute values for variables.  Unbound variables stay symbolic.

        Values may be anything supporting + and * with MPoly (MPoly, RatFrac,
        int, Fraction).  Returns the image in the common ring.
        """
        bound = {_var_index(n): v for n, v in bindings.items()}
        if not bound:
            return self
        powcache = {}

        def power(i, e):
            key = (i, e)
            if key not in powcache:
                powcache[key] = bound[i] ** e
            return powcache[key]

        total = MPoly() if one is None else one * 0
        groups = {}
        for k, c in self.terms.items():
            free = 0
            fixed = []
            i = 0
            kk = k
            while kk:
                e = kk & _FIELD_MASK
                if e:
                    if i in bound:
                        fixed.append((i, e))
                    else:
                        free |= e << (_FIELD * i)
                kk >>= _FIELD
                i += 1
            groups.setdefault(tuple(fixed), {})[free] = c
        for fixed, rest in groups.items():
            part = MPoly(rest)
            for i, e in fixed:
                part = power(i, e) * part
            total = total + part
        return total

    # -- conversion ----------------------------------------------------
    def to_unipoly(self, name):
        idx = _var_index(name)
        deg = -1
        coeffs = {}
        for k, c in self.terms.items():
            e = _exponent(k, idx)
            if k != e << (_FIELD * idx):
                raise ValueError(f"polynomial is not univariate in {name}")
            coeffs[e] = c
            deg = max(deg, e)
        return UniPoly([coeffs.get(i, 0) for i in range(deg + 1)], name)

    @classmethod
    def from_unipoly(cls, p, name=None):
        name = name or p.var
        shift = _FIELD * _var_index(name)
        return cls({i << shift: _norm(c) for i, c in enumerate(p.coeffs) if c})

    def to_record(self):
        names = self.variables()
        idxs = [VAR_INDEX[n] for n in names]
        rows = []
        for k in sorted(self.terms):
            rows.append({"exp": [_exponent(k, i) for i in idxs], "coef": _rat_str(self.terms[k])})
        return {"vars": list(names), "terms": rows}

    @classmethod
    def from_record(cls, rec):
        names = rec["vars"]
        terms = {}
        for row in rec["terms"]:
            terms[pack(dict(zip(names, row["exp"])))] = _norm(Fraction(row["coef"]))
        return cls(terms)

    # -- display -------------------------------------------------------
    def _sorted_items(self):
        def order(item):
            k = item[0]
            exps = [_exponent(k, i) for i in range(len(VARIABLES))]
            return (-sum(exps), [-e for e in exps])
        return sorted(self.terms.items(), key=order)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, c in self._sorted_items():
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in unpack(k).items())
            c = Fraction(c)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = _rat_str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{_rat_str(a)}*{mono}"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"MPoly({self})"


class RatFrac:
    """num/den with den normalized to integer content 1 and positive leading coefficient.

    No multivariate gcd is taken.  Cheap cancellations are applied when the
    denominator is a constant, a single monomial, or univariate (then a
    univariate gcd with the numerator's coefficients is exact).
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _normalized=False):
        num = MPoly.coerce(num)
        den = MPoly.constant(1) if den is None else MPoly.coerce(den)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("RatFrac expects polynomial operands")
        if not den.terms:
            raise ZeroDivisionError("zero denominator")
        if not _normalized:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den

    @staticmethod
    def coerce(x):
        if isinstance(x, RatFrac):
            return x
        if isinstance(x, (MPoly, int, Fraction)):
            return RatFrac(x)
        return NotImplemented

    def is_zero(self):
        return not self.num.terms

    def __bool__(self):
        return bool(self.num.terms)

    def is_polynomial(self):
        return self.den.is_constant()

    def to_mpoly(self):
        """The polynomial this fraction equals; raises NotDivisible otherwise."""
        if self.den.is_constant():
            return self.num / self.den.constant_value()
        return self.num.divexact(self.den)

    def __add__(self, other):
        other = RatFrac.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RatFrac(self.num + other.num, self.den)
        return RatFrac(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFrac(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        other = RatFrac.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RatFrac(self.num - other.num, self.den)
        return RatFrac(self.num * other.den - other.num * self.den, self.den * other.den)

    def __rsub__(self, other):
        return RatFrac.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatFrac(self.num * other, self.den)
        other = RatFrac.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFrac(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RatFrac.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num.terms:
            raise ZeroDivisionError
        return RatFrac(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatFrac.coerce(other) / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return RatFrac(self.den ** -n, self.num ** -n)
        return RatFrac(self.num ** n, self.den ** n)

    def __eq__(self, other):
        other = RatFrac.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return frac_equal(self, other)

    def __hash__(self):
        raise TypeError("RatFrac is not hashable (equality is by cross-multiplication)")

    def evaluate(self, bindings):
        return substitute(self, bindings)

    def to_record(self):
        return {"num": self.num.to_record(), "den": self.den.to_record()}

    @classmethod
    def from_record(cls, rec):
        return cls(MPoly.from_record(rec["num"]), MPoly.from_record(rec["den"]))

    def __str__(self):
        if self.den.is_constant() and self.den.constant_value() == 1:
            return str(self.num)
        n = str(self.num)
        d = str(self.den)
        if len(self.num) > 1 or "/" in n:
            n = f"({n})"
        if len(self.den) > 1 or "*" in d:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RatFrac({self})"


def _normalize(num, den):
    if not num.terms:
        return num, MPoly.constant(1)
    common = None
    for k in den.terms:
        common = k if common is None else _min_exponents(common, k)
        if not common:
            break
    if common:
        for k in num.terms:
            common = _min_exponents(common, k)
            if not common:
                break
        if common:
            num = MPoly({k - common: c for k, c in num.terms.items()})
            den = MPoly({k - common: c for k, c in den.terms.items()})
    if len(den.terms) == 1:
        (kd, cd), = den.terms.items()
        return num * (Fraction(1) / Fraction(cd)), MPoly({kd: 1})
    var = den.univariate_in()
    if var:
        dpoly = den.to_unipoly(var)
        g = dpoly
        for coef in _coefficient_slices(num, var):
            g = g.gcd(coef)
            if g.degree() == 0:
                break
        if g.degree() > 0:
            gm = MPoly.from_unipoly(g, var)
            num = num.divexact(gm)
            den = den.divexact(gm)
    c = den.content()
    _, lead = den.leading()
    if lead < 0:
        c = -c
    if c != 1:
        inv = 1 / c
        num = num * inv
        den = den * inv
    return num, den


def _min_exponents(a, b):
    out = 0
    i = 0
    while a and b:
        e = min(a & _FIELD_MASK, b & _FIELD_MASK)
        out |= e << (_FIELD * i)
        a >>= _FIELD
        b >>= _FIELD
        i += 1
    return out


def _coefficient_slices(poly, var):
    """Univariate (in var) polynomials whose var-free monomial combinations make up poly."""
    idx = _var_index(var)
    shift = _FIELD * idx
    groups = {}
    for k, c in poly.terms.items():
        e = (k >> shift) & _FIELD_MASK
        groups.setdefault(k - (e << shift), {})[e] = c
    for g in groups.values():
        deg = max(g)
        yield UniPoly([g.get(i, 0) for i in range(deg + 1)], var)


def frac_equal(a, b):
    a = RatFrac.coerce(a)
    b = RatFrac.coerce(b)
    if a.den == b.den:
        return a.num == b.num
    return a.num * b.den == b.num * a.den


def substitute(f, bindings):
    """Ring-homomorphic image of f under var -> value; always returns a RatFrac."""
    f = RatFrac.coerce(f)
    if not bindings:
        return f
    vals = {n: RatFrac.coerce(v) for n, v in bindings.items()}
    num = _eval_frac(f.num, vals)
    den = _eval_frac(f.den, vals)
    if den.is_zero():
        raise DenominatorVanishes(f"denominator {f.den} vanishes under {bindings}")
    return num / den


def _eval_frac(poly, vals):
    polyvals = {n: v.num for n, v in vals.items() if v.den.is_constant() and v.den.constant_value() == 1}
    if len(polyvals) == len(vals):
        return RatFrac(poly.evaluate(polyvals))
    # clear denominators: a/d at exponent e contributes a^e * d^(D-e) over d^D
    dens = {n: v.den for n, v in vals.items()}
    degs = {n: poly.degree(n) for n in vals}
    cache = {}

    def power(which, n, e):
        key = (which, n, e)
        if key not in cache:
            cache[key] = (vals[n].num if which == "num" else dens[n]) ** e
        return cache[key]

    out = MPoly()
    for k, c in poly.terms.items():
        free = k
        exps = {}
        for n in vals:
            idx = _var_index(n)
            e = _exponent(k, idx)
            exps[n] = e
            free -= e << (_FIELD * idx)
        term = MPoly({free: c})
        for n in vals:
            e = exps[n]
            if e:
                term = term * power("num", n, e)
            if degs[n] - e:
                term = term * power("den", n, degs[n] - e)
        out = out + term
    den = MPoly.constant(1)
    for n in vals:
        if degs[n] > 0:
            den = den * dens[n] ** degs[n]
    return RatFrac(out, den)


# ---------------------------------------------------------------------------
# Univariate polynomials (dense, low degree first)
# ---------------------------------------------------------------------------

class UniPoly:
    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=(), var="t"):
        cs = [_norm(c) if isinstance(c, Fraction) else c for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = cs
        self.var = var

    @classmethod
    def from_roots(cls, roots, var="t"):
        p = cls([1], var)
        for r in roots:
            p = p * cls([-r, 1], var)
        return p

    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def _co(self, other):
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly([other], self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._co(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return UniPoly([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        other = self._co(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._co(other) - self

    def __mul__(self, other):
        other = self._co(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly([], self.var)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n):
        r = UniPoly([1], self.var)
        for _ in range(n):
            r = r * self
        return r

    def __eq__(self, other):
        other = self._co(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def divmod(self, other):
        if not other.coeffs:
            raise ZeroDivisionError
        rem = [Fraction(c) for c in self.coeffs]
        d = other.coeffs
        dl = Fraction(d[-1])
        q = [Fraction(0)] * max(len(rem) - len(d) + 1, 0)
        for i in range(len(rem) - len(d), -1, -1):
            c = rem[i + len(d) - 1] / dl
            q[i] = c
            if c:
                for j, dc in enumerate(d):
                    rem[i + j] -= c * dc
        return UniPoly(q, self.var), UniPoly(rem[: len(d) - 1], self.var)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self):
        if not self.coeffs:
            return self
        lc = Fraction(self.coeffs[-1])
        return UniPoly([c / lc for c in self.coeffs], self.var)

    def primitive(self):
        """Integer coefficients with gcd 1 and positive leading coefficient."""
        if not self.coeffs:
            return self
        fr = [Fraction(c) for c in self.coeffs]
        den = 1
        for c in fr:
            den = lcm(den, c.denominator)
        ints = [int(c * den) for c in fr]
        g = 0
        for c in ints:
            g = gcd(g, c)
        if ints[-1] < 0:
            g = -g
        return UniPoly([c // g for c in ints], self.var)

    def gcd(self, other):
        a, b = self, other
        if not b.coeffs:
            return a.monic()
        if not a.coeffs:
            return b.monic()
        while b.coeffs:
            a, b = b, (a % b).primitive()
        return a.monic()

    def derivative(self):
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x):
        v = self(x)
        return (v > 0) - (v < 0)

    def squarefree_decomposition(self):
        """Yun's algorithm: list of (factor, multiplicity) with monic squarefree factors."""
        if self.degree() <= 0:
            return []
        f = self.monic()
        out = []
        df = f.derivative()
        a = f.gcd(df)
        b = f // a
        c = df // a
        i = 1
        while b.degree() > 0:
            d = c - b.derivative()
            g = b.gcd(d)
            if g.degree() > 0:
                out.append((g, i))
            b = b // g
            c = d // g
            i += 1
        return out

    def squarefree_part(self):
        return self // self.gcd(self.derivative())

    def to_mpoly(self):
        return MPoly.from_unipoly(self)

    def __str__(self):
        return str(MPoly.from_unipoly(self)) if self.var in VAR_INDEX else repr(self.coeffs)

    def __repr__(self):
        return f"UniPoly({self.coeffs!r}, {self.var!r})"


# ---------------------------------------------------------------------------
# Truncated series
# ---------------------------------------------------------------------------

class TruncSeries:
    """c_0 + c_1 x + ... + c_R x^R + O(x^(R+1)); coefficients beyond R are unknown."""

    __slots__ = ("var", "order", "coeffs")

    def __init__(self, var, coeffs, order=None):
        coeffs = list(coeffs)
        self.order = len(coeffs) - 1 if order is None else order
        if len(coeffs) < self.order + 1:
            raise PrecisionError("fewer coefficients than the stated order")
        self.var = var
        self.coeffs = coeffs[: self.order + 1]

    def __getitem__(self, i):
        if i < 0:
            return 0
        if i > self.order:
            raise PrecisionError(f"coefficient {i} is beyond the known order {self.order}")
        return self.coeffs[i]

    def truncate(self, order):
        if order > self.order:
            raise PrecisionError(f"cannot extend a series known to order {self.order} to {order}")
        return TruncSeries(self.var, self.coeffs[: order + 1], order)

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            return TruncSeries(self.var, [self.coeffs[0] + other] + self.coeffs[1:], self.order)
        R = min(self.order, other.order)
        return TruncSeries(self.var, [self.coeffs[i] + other.coeffs[i] for i in range(R + 1)], R)

    def __sub__(self, other):
        return self + (-1) * other

    def __rmul__(self, c):
        return TruncSeries(self.var, [c * x for x in self.coeffs], self.order)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return TruncSeries(self.var, [x * other for x in self.coeffs], self.order)
        R = min(self.order, other.order)
        out = []
        for s in range(R + 1):
            acc = 0
            for i in range(s + 1):
                acc = self.coeffs[i] * other.coeffs[s - i] + acc
            out.append(acc)
        return TruncSeries(self.var, out, R)

    def agrees_with(self, other, order=None):
        R = min(self.order, other.order) if order is None else order
        for i in range(R + 1):
            if not _scalar_equal(self[i], other[i]):
                return False
        return True

    def __repr__(self):
        return f"TruncSeries({self.var}, {[str(c) for c in self.coeffs]}, O({self.var}^{self.order + 1}))"


def _scalar_equal(a, b):
    if isinstance(a, RatFrac) or isinstance(b, RatFrac):
        return frac_equal(a, b)
    return a == b


def series_at_infinity(f, R, var="N"):
    """Coefficients c_0..c_R of f = sum c_r var^(-r) + O(var^(-R-1))."""
    f = RatFrac.coerce(f)
    num = f.num.coefficients_in(var)
    den = f.den.coefficients_in(var)
    dn = max(num) if f.num.terms else -1
    dd = max(den)
    if dn > dd:
        raise PoleAtInfinity(f"degree {dn} numerator over degree {dd} denominator in {var}")
    zero = MPoly()
    # in u = 1/var: f = u^(dd-dn) * A(u)/C(u), A_i = num_{dn-i}, C_j = den_{dd-j}
    A = lambda i: num.get(dn - i, zero) if dn >= 0 else zero
    C = lambda j: den.get(dd - j, zero)
    c0 = C(0)
    shift = dd - dn if dn >= 0 else R + 1
    # Q_s = q_s * c0^(s+1) stays polynomial
    Q = []
    c0pow = [MPoly.constant(1)]
    for s in range(R + 1):
        c0pow.append(c0pow[-1] * c0)
    out = []
    for r in range(R + 1):
        s = r - shift
        if s < 0:
            out.append(RatFrac(0))
            continue
        acc = A(s) * c0pow[s]
        for j in range(1, s + 1):
            cj = C(j)
            if cj.terms:
                acc = acc - cj * Q[s - j] * c0pow[j - 1]
        Q.append(acc)
        out.append(RatFrac(acc, c0pow[s + 1]))
    return TruncSeries("1/" + var, out, R)


# ---------------------------------------------------------------------------
# Graded exponential / logarithm on polynomials
# ---------------------------------------------------------------------------

def _graded_degree(key, grading):
    return sum(w * _exponent(key, VAR_INDEX[_ALIASES.get(n, n)]) for n, w in grading.items())


def graded_truncate(S, grading, bound, caps=None):
    caps = {VAR_INDEX[_ALIASES.get(n, n)]: c for n, c in (caps or {}).items()}
    out = {}
    for k, c in S.terms.items():
        if _graded_degree(k, grading) > bound:
            continue
        if any(_exponent(k, i) > c_ for i, c_ in caps.items()):
            continue
        out[k] = c
    return MPoly(out)


def graded_series_exp(S, grading, bound, caps=None):
    """exp(S) truncated at graded degree <= bound; S must have no degree-0 terms."""
    if any(_graded_degree(k, grading) <= 0 for k in S.terms):
        raise NonzeroConstantTerm("exp needs every term of positive graded degree")
    S = graded_truncate(S, grading, bound, caps)
    result = MPoly.constant(1)
    power = MPoly.constant(1)
    m = 1
    while True:
        power = graded_truncate(power * S, grading, bound, caps) * Fraction(1, m)
        if not power.terms:
            break
        result = result + power
        m += 1
    return result


def graded_series_log(S, grading, bound, caps=None):
    """log(S) truncated at graded degree <= bound; S must be 1 + (positive degree)."""
    X = S - 1
    if any(_graded_degree(k, grading) <= 0 for k in X.terms):
        raise NonzeroConstantTerm("log needs constant term exactly 1")
    X = graded_truncate(X, grading, bound, caps)
    result = MPoly()
    power = MPoly.constant(1)
    m = 1
    while True:
        power = graded_truncate(power * X, grading, bound, caps)
        if not power.terms:
            break
        result = result + power * Fraction((-1) ** (m + 1), m)
        m += 1
    return result


# ---------------------------------------------------------------------------
# Parsing and serialization helpers
# ---------------------------------------------------------------------------

_BINOPS = {ast.Add: lambda a, b: a + b, ast.Sub: lambda a, b: a - b,
           ast.Mult: lambda a, b: a * b, ast.Div: None, ast.Pow: lambda a, b: a ** b}


def parse(text):
    """Parse an arithmetic expression in the universe variables into MPoly or RatFrac.

    Accepts +, -, *, /, ** (or ^) and integer literals; division yields RatFrac.
    """
    text = text.replace("^", "**").replace("ħ", "hbar").replace("−", "-")
    tree = ast.parse(text, mode="eval")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return MPoly.constant(node.value)
        if isinstance(node, ast.Name):
            return MPoly.var(node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            a = ev(node.left)
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise ValueError("exponents must be integer literals")
                return a ** node.right.value
            b = ev(node.right)
            if isinstance(node.op, ast.Div):
                if isinstance(b, MPoly) and b.is_constant():
                    return a * Fraction(1) / b.constant_value() if isinstance(a, MPoly) else a / b
                return RatFrac.coerce(a) / RatFrac.coerce(b)
            if isinstance(a, RatFrac) or isinstance(b, RatFrac):
                a, b = RatFrac.coerce(a), RatFrac.coerce(b)
            return _BINOPS[type(node.op)](a, b)
        raise ValueError(f"unsupported syntax in {text!r}")

    return ev(tree)


def to_json(x):
    rec = x.to_record()
    return json.dumps(rec, sort_keys=True, separators=(",", ":"))


def from_json(text):
    rec = json.loads(text)
    if "num" in rec:
        return RatFrac.from_record(rec)
    return MPoly.from_record(rec)


def as_ratfrac(x):
    return RatFrac.coerce(x)
