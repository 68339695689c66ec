"""Polynomials in edge variables and the coproduct ``sha*`` on them.

Monomials are sorted tuples of ``(variable, exponent)`` pairs with positive
exponents; the empty tuple is 1.  Coefficients are Python ints or Fractions.

>>> e1, e2 = Poly.var("e1"), Poly.var("e2")
>>> str((e1 - e2) * (e1 + e2))
'e1^2 - e2^2'
>>> str(sha_star(e1 * e1))
'e1^2 (x) 1 + 2*e1 (x) e1 + 1 (x) e1^2'
"""
from __future__ import annotations

import re
from itertools import combinations_with_replacement, product
from math import comb

ONE = ()


def mono(**exps):
    """``mono(e1=2, e2=1)`` -> ((e1, 2), (e2, 1))."""
    return tuple(sorted((k, v) for k, v in exps.items() if v))


def mono_from_pairs(pairs):
    acc = {}
    for var, exp in pairs:
        acc[var] = acc.get(var, 0) + exp
    return tuple(sorted((k, v) for k, v in acc.items() if v))


def mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    return mono_from_pairs(a + b)


def mono_degree(m):
    return sum(e for _, e in m)


def mono_str(m):
    if not m:
        return "1"
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)


def mono_key(m):
    """Print order: higher degree first, then lexicographic on variables."""
    return (-mono_degree(m), [(v, -e) for v, e in m])


def binomial_splits(exps):
    """All ``(b, a - b, prod C(a_i, b_i))`` for an exponent vector ``a``."""
    ranges = [range(a + 1) for a in exps]
    for b in product(*ranges):
        c = 1
        for ai, bi in zip(exps, b):
            c *= comb(ai, bi)
        yield b, tuple(ai - bi for ai, bi in zip(exps, b)), c


def mono_splits(m):
    """``sha*`` of a single monomial as ``(left, right, coefficient)`` triples."""
    names = [v for v, _ in m]
    for b, rest, c in binomial_splits([e for _, e in m]):
        yield (tuple((v, x) for v, x in zip(names, b) if x),
               tuple((v, x) for v, x in zip(names, rest) if x), c)


def _fmt_terms(items, fmt):
    out = []
    for key, c in items:
        body = fmt(key)
        mag = abs(c)
        if body == "1":
            txt = str(mag)
        elif mag == 1:
            txt = body
        else:
            txt = f"{mag}*{body}"
        if not out:
            out.append(txt if c > 0 else f"-{txt}")
        else:
            out.append(("+ " if c > 0 else "- ") + txt)
    return " ".join(out) if out else "0"


class Poly:
    """Sparse polynomial: dict monomial -> nonzero coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for m, c in dict(terms).items():
                if c:
                    self.terms[m] = self.terms.get(m, 0) + c
            self.terms = {m: c for m, c in self.terms.items() if c}

    @classmethod
    def var(cls, name):
        return cls({((name, 1),): 1})

    @classmethod
    def const(cls, c):
        return cls({ONE: c})

    @staticmethod
    def _lift(x):
        return x if isinstance(x, Poly) else Poly.const(x)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = Poly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int,)) or not isinstance(other, Poly):
            try:
                other = Poly.const(other)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((mono_degree(m) for m in self.terms), default=-1)

    def is_homogeneous(self):
        return len({mono_degree(m) for m in self.terms}) <= 1

    def variables(self):
        return sorted({v for m in self.terms for v, _ in m})

    def substitute(self, mapping):
        """Replace variables by polynomials (absent names stay put)."""
        out = Poly()
        for m, c in self.terms.items():
            t = Poly.const(c)
            for v, e in m:
                t = t * (mapping[v] ** e if v in mapping else Poly({((v, e),): 1}))
            out = out + t
        return out

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: mono_key(mc[0]))

    def __str__(self):
        return _fmt_terms(self.sorted_terms(), mono_str)

    def __repr__(self):
        return f"Poly({str(self)!r})"


class TensorPoly:
    """Sparse element of R[E] (x) R[E]: dict (monomial, monomial) -> coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        acc = {}
        for k, c in dict(terms or {}).items():
            acc[k] = acc.get(k, 0) + c
        self.terms = {k: c for k, c in acc.items() if c}

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return TensorPoly(out)

    def __sub__(self, other):
        return self + TensorPoly({k: -c for k, c in other.terms.items()})

    def __mul__(self, other):
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (mono_mul(a1, a2), mono_mul(b1, b2))
                out[k] = out.get(k, 0) + c1 * c2
        return TensorPoly(out)

    def __eq__(self, other):
        return isinstance(other, TensorPoly) and self.terms == other.terms

    def swap(self):
        return TensorPoly({(b, a): c for (a, b), c in self.terms.items()})

    def counit_left(self):
        """(project-to-degree-0 (x) id): keep terms with trivial left factor."""
        return Poly({b: c for (a, b), c in self.terms.items() if not a})

    def counit_right(self):
        return Poly({a: c for (a, b), c in self.terms.items() if not b})

    def __str__(self):
        items = sorted(self.terms.items(),
                       key=lambda kc: (mono_key(kc[0][0]), mono_key(kc[0][1])))
        return _fmt_terms(items, lambda k: f"{mono_str(k[0])} (x) {mono_str(k[1])}")

    def __repr__(self):
        return f"TensorPoly({str(self)!r})"


def sha_star(p):
    """The coproduct with ``sha*(e) = e (x) 1 + 1 (x) e``, via the binomial formula."""
    out = {}
    for m, c in p.terms.items():
        for left, right, b in mono_splits(m):
            out[(left, right)] = out.get((left, right), 0) + b * c
    return TensorPoly(out)


def sha_star_left(t):
    """(sha* (x) id) on a TensorPoly, as a dict over monomial triples."""
    out = {}
    for (a, b), c in t.terms.items():
        for l, r, k in mono_splits(a):
            key = (l, r, b)
            out[key] = out.get(key, 0) + c * k
    return {k: c for k, c in out.items() if c}


def sha_star_right(t):
    out = {}
    for (a, b), c in t.terms.items():
        for l, r, k in mono_splits(b):
            key = (a, l, r)
            out[key] = out.get(key, 0) + c * k
    return {k: c for k, c in out.items() if c}


def in_R0(p, e0):
    """Membership in the subalgebra generated by edge differences.

    Every other variable e is rewritten as ``bar_e + e0``; the polynomial lies
    in the subalgebra exactly when no power of ``e0`` survives.
    """
    bar = {v: Poly.var(f"bar({v})") + Poly.var(e0) for v in p.variables() if v != e0}
    q = p.substitute(bar)
    return all(v != e0 for m in q.terms for v, _ in m)


def r0_homogeneous_basis(E, e0, d):
    """Products of ``d`` differences ``e - e0`` (e != e0), in input order."""
    others = [e for e in E if e != e0]
    diffs = [Poly.var(e) - Poly.var(e0) for e in others]
    out = []
    for combo in combinations_with_replacement(range(len(diffs)), d):
        t = Poly.const(1)
        for j in combo:
            t = t * diffs[j]
        out.append(t)
    return out


def parse_poly(text):
    """Inverse of ``str(Poly)`` for integer coefficients."""
    text = text.replace(" ", "")
    if text == "0":
        return Poly()
    out = Poly()
    for sign, body in re.findall(r"([+-]?)([^+-]+)", text):
        coef, factors = 1, []
        for f in body.split("*"):
            if f.isdigit():
                coef *= int(f)
            elif "^" in f:
                v, e = f.split("^")
                factors.append((v, int(e)))
            else:
                factors.append((f, 1))
        out = out + Poly({mono_from_pairs(factors): -coef if sign == "-" else coef})
    return out
