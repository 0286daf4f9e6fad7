"""Exact rational functions over the Laurent ring, plus mod-p identity testing.

A RatFunc is a fraction num/den of multivariate Laurent polynomials.  The
denominator is stored in factored form (an integer content and a multiset of
canonical polynomial factors); this keeps the fractions produced by long
operator pipelines quasi-reduced without ever running a multivariate GCD.
Fractions are not required to be reduced: equality is semantic, by
cross-multiplication.

Mod-p testing evaluates both sides at random points with all coordinates in
the multiplicative group of F_p, where p is a fixed published 62-bit prime.
For cross-multiplied total degree at most D, a single point catches a
nonzero difference with probability at least 1 - D/(p-1); k independent
points give one-sided error at most (D/(p-1))^k.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

from .laurent import LaurentPoly, parse_poly

__all__ = [
    "RatFunc",
    "ModPPoint",
    "FIXED_PRIME",
    "ModPSamplingError",
    "ratfunc_eq",
    "parse_ratfunc",
]

# Largest 62-bit prime, 2^62 - 57.
FIXED_PRIME = 4611686018427387847

MAX_RESAMPLES = 32


class ModPSamplingError(RuntimeError):
    """No evaluation point with nonvanishing denominators was found."""


def _normalize_factor(f: LaurentPoly):
    """Split f = c * monomial * canon with canon canonical.

    canon has integer content 1, componentwise-minimal exponents 0 and a
    positive leading coefficient.  Returns (c, monomial exponents, canon).
    """
    if not f.terms:
        raise ZeroDivisionError("zero polynomial in a denominator")
    mc = f.monomial_content()
    g = f.int_content()
    canon = LaurentPoly(
        f.arity,
        {tuple(x - y for x, y in zip(e, mc)): c // g for e, c in f.terms.items()},
    )
    _, lead = canon.leading()
    if lead < 0:
        canon = -canon
        g = -g
    return g, mc, canon


class RatFunc:
    """num / (dc * prod factor^mult), with factors canonical and sorted."""

    __slots__ = ("num", "dc", "facs", "_den")

    def __init__(self, num: LaurentPoly, dc: int = 1, facs: tuple = (), reduce: bool = True):
        if dc == 0:
            raise ZeroDivisionError("zero denominator content")
        if dc < 0:
            num, dc = -num, -dc
        if not num.terms:
            dc, facs = 1, ()
        elif reduce and (dc != 1 or facs):
            g = gcd(num.int_content(), dc)
            if g > 1:
                num = LaurentPoly(num.arity, {e: c // g for e, c in num.terms.items()})
                dc //= g
            if facs:
                kept = []
                for f, mult in facs:
                    while mult > 0:
                        q = num.exact_divide(f)
                        if q is None:
                            break
                        num, mult = q, mult - 1
                    if mult:
                        kept.append((f, mult))
                facs = tuple(kept)
        self.num = num
        self.dc = dc
        self.facs = facs
        self._den = None

    # ---------- constructors ----------

    @classmethod
    def from_int(cls, arity: int, c: int) -> "RatFunc":
        return cls(LaurentPoly.const(arity, c))

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "RatFunc":
        return cls(p)

    @classmethod
    def from_den_factors(cls, num: LaurentPoly, factors) -> "RatFunc":
        """num divided by a product of polynomial factors (each may repeat)."""
        dc = 1
        bag: dict = {}
        for f in factors:
            c, mc, canon = _normalize_factor(f)
            dc *= c
            num = num.shift(tuple(-x for x in mc))
            if not canon.is_one():
                key = canon.sort_key()
                if key in bag:
                    bag[key] = (canon, bag[key][1] + 1)
                else:
                    bag[key] = (canon, 1)
        facs = tuple(bag[k] for k in sorted(bag))
        return cls(num, dc, facs)

    @classmethod
    def fraction(cls, num: LaurentPoly, den: LaurentPoly) -> "RatFunc":
        return cls.from_den_factors(num, [den])

    # ---------- views ----------

    @property
    def arity(self) -> int:
        return self.num.arity

    @property
    def den(self) -> LaurentPoly:
        """Denominator as an expanded polynomial."""
        if self._den is None:
            d = LaurentPoly.const(self.num.arity, self.dc)
            for f, mult in self.facs:
                for _ in range(mult):
                    d = d * f
            self._den = d
        return self._den

    def is_zero(self) -> bool:
        return not self.num.terms

    def is_poly(self) -> bool:
        return self.dc == 1 and not self.facs

    def __bool__(self):
        return bool(self.num.terms)

    # ---------- arithmetic ----------

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, int):
            return RatFunc.from_int(self.arity, other)
        if isinstance(other, LaurentPoly):
            return RatFunc(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.facs == other.facs and self.dc == other.dc:
            return RatFunc(self.num + other.num, self.dc, self.facs)
        a, b = dict(self.facs), dict(other.facs)
        # union multiset of factors, keyed by the factor polynomial
        union = dict(a)
        for f, mult in b.items():
            if union.get(f, 0) < mult:
                union[f] = mult
        g = gcd(self.dc, other.dc)
        L = self.dc // g * other.dc
        num_a = self.num.scale(L // self.dc)
        num_b = other.num.scale(L // other.dc)
        for f, mult in union.items():
            da = mult - a.get(f, 0)
            db = mult - b.get(f, 0)
            for _ in range(da):
                num_a = num_a * f
            for _ in range(db):
                num_b = num_b * f
        facs = tuple(sorted(union.items(), key=lambda kv: kv[0].sort_key()))
        return RatFunc(num_a + num_b, L, facs)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return RatFunc(-self.num, self.dc, self.facs, reduce=False)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatFunc(LaurentPoly(self.arity))
        bag = dict(self.facs)
        for f, mult in other.facs:
            bag[f] = bag.get(f, 0) + mult
        facs = tuple(sorted(bag.items(), key=lambda kv: kv[0].sort_key()))
        return RatFunc(self.num * other.num, self.dc * other.dc, facs)

    def __rmul__(self, other):
        return self.__mul__(other)

    def inv(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        c, mc, canon = _normalize_factor(self.num)
        num = LaurentPoly.const(self.arity, self.dc).shift(tuple(-x for x in mc))
        for f, mult in self.facs:
            for _ in range(mult):
                num = num * f
        if c < 0:
            num, c = -num, -c
        facs = () if canon.is_one() else ((canon, 1),)
        return RatFunc(num, c, facs)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inv()

    # ---------- semantic equality ----------

    def __eq__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = self._coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        if self.num.arity != other.num.arity:
            return False
        if self.dc == other.dc and self.facs == other.facs:
            return self.num == other.num
        # cancel shared factors before cross-multiplying
        a, b = dict(self.facs), dict(other.facs)
        for f in list(a):
            if f in b:
                m = min(a[f], b[f])
                a[f] -= m
                b[f] -= m
        lhs = self.num.scale(other.dc)
        for f, mult in b.items():
            for _ in range(mult):
                lhs = lhs * f
        rhs = other.num.scale(self.dc)
        for f, mult in a.items():
            for _ in range(mult):
                rhs = rhs * f
        return lhs == rhs

    __hash__ = None  # semantic equality classes are not hashable

    # ---------- substitutions ----------

    def _map(self, fn) -> "RatFunc":
        num = fn(self.num)
        dc = self.dc
        bag: dict = {}
        for f, mult in self.facs:
            c, mc, canon = _normalize_factor(fn(f))
            if c < 0 and mult % 2:
                num = -num
            dc *= abs(c) ** mult
            num = num.shift(tuple(-x * mult for x in mc))
            if not canon.is_one():
                bag[canon] = bag.get(canon, 0) + mult
        facs = tuple(sorted(bag.items(), key=lambda kv: kv[0].sort_key()))
        return RatFunc(num, dc, facs)

    def weyl(self, matrix) -> "RatFunc":
        return self._map(lambda p: p.weyl(matrix))

    def dualize(self, invert_t: bool = True, invert_chars: bool = True) -> "RatFunc":
        return self._map(lambda p: p.dualize(invert_t, invert_chars))

    # ---------- degree data and evaluation ----------

    def span(self) -> int:
        """Structural degree bound: span(num) + sum of factor spans."""
        s = self.num.total_span()
        for f, mult in self.facs:
            s += f.total_span() * mult
        return s

    def eval_mod(self, point: tuple, p: int) -> int:
        den = self.dc % p
        if den == 0:
            raise ZeroDivisionError("denominator content divisible by p")
        for f, mult in self.facs:
            v = f.eval_mod(point, p)
            if v == 0:
                raise ZeroDivisionError("denominator factor vanishes at point")
            den = den * pow(v, mult, p) % p
        return self.num.eval_mod(point, p) * pow(den, p - 2, p) % p

    # ---------- printing ----------

    def simplified(self):
        """(num, den) with integer/monomial content and univariate GCDs removed."""
        num, den = self.num, self.den
        if not num.terms:
            return num, LaurentPoly.const(num.arity, 1)
        q = num.exact_divide(den)
        if q is not None:
            return q, LaurentPoly.const(num.arity, 1)
        mc_n, mc_d = num.monomial_content(), den.monomial_content()
        shift = tuple(-min(x, y) for x, y in zip(mc_n, mc_d))
        num, den = num.shift(shift), den.shift(shift)
        g = gcd(num.int_content(), den.int_content())
        if g > 1:
            num = LaurentPoly(num.arity, {e: c // g for e, c in num.terms.items()})
            den = LaurentPoly(den.arity, {e: c // g for e, c in den.terms.items()})
        slot = _common_single_var(num, den)
        if slot is not None:
            g1 = _univariate_gcd(num, den, slot)
            if g1 is not None and not g1.is_one():
                num = num.exact_divide(g1) or num
                den = den.exact_divide(g1) or den
        _, lead = den.leading()
        if lead < 0:
            num, den = -num, -den
        return num, den

    def format(self) -> str:
        num, den = self.simplified()
        return f"({num.format()})/({den.format()})"

    def __repr__(self):
        return f"RatFunc{self.format()}"


def _common_single_var(a: LaurentPoly, b: LaurentPoly):
    """Slot index if both polynomials involve only that one variable, else None."""
    used = set()
    for p in (a, b):
        for e in p.terms:
            for i, x in enumerate(e):
                if x:
                    used.add(i)
    if len(used) == 1:
        return used.pop()
    return None


def _univariate_gcd(a: LaurentPoly, b: LaurentPoly, slot: int):
    """Primitive gcd of two univariate (in the given slot) polynomials."""

    def coeffs(p):
        d = {e[slot]: c for e, c in p.terms.items()}
        lo, hi = min(d), max(d)
        return [Fraction(d.get(i, 0)) for i in range(lo, hi + 1)]

    fa, fb = coeffs(a), coeffs(b)

    def rem(x, y):
        x = x[:]
        while len(x) >= len(y) and any(x):
            while x and x[-1] == 0:
                x.pop()
            if len(x) < len(y):
                break
            q = x[-1] / y[-1]
            off = len(x) - len(y)
            for i, c in enumerate(y):
                x[off + i] -= q * c
            x.pop()
        while x and x[-1] == 0:
            x.pop()
        return x

    while fb:
        fa, fb = fb, rem(fa, fb)
    if len(fa) <= 1:
        return None
    denoms = 1
    for c in fa:
        denoms = denoms * c.denominator // gcd(denoms, c.denominator)
    ints = [int(c * denoms) for c in fa]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    arity = a.arity
    out = LaurentPoly(arity)
    for i, c in enumerate(ints):
        e = [0] * arity
        e[slot] = i
        out = out + LaurentPoly.monomial(tuple(e), c)
    return out


def parse_ratfunc(text: str, arity: int) -> RatFunc:
    """Parse `(num)/(den)` or a bare polynomial in the canonical grammar."""
    text = text.strip()
    if text.startswith("(") and ")/(" in text and text.endswith(")"):
        i = text.index(")/(")
        num = parse_poly(text[1:i], arity)
        den = parse_poly(text[i + 3 : -1], arity)
        return RatFunc.fraction(num, den)
    return RatFunc(parse_poly(text, arity))


class ModPPoint:
    """An evaluation point: one nonzero residue per variable slot."""

    __slots__ = ("prime", "values", "seed")

    def __init__(self, prime: int, values: tuple, seed: int):
        if any(v % prime == 0 for v in values):
            raise ValueError("evaluation point has a zero coordinate")
        self.prime = prime
        self.values = values
        self.seed = seed

    @classmethod
    def draw(cls, arity: int, seed: int, prime: int = FIXED_PRIME) -> "ModPPoint":
        rng = random.Random(seed)
        values = tuple(rng.randrange(1, prime) for _ in range(arity))
        return cls(prime, values, seed)

    def __repr__(self):
        return f"ModPPoint(p={self.prime}, seed={self.seed})"


def ratfunc_eq(a: RatFunc, b: RatFunc, mode: str = "exact", k: int = 3, seed: int = 0) -> bool:
    """Equality of fractions, exact or probabilistic.

    exact: cross-multiplication.  modp: agreement at k independently drawn
    points whose denominators do not vanish; points where a denominator
    vanishes are resampled (at most MAX_RESAMPLES times each).
    """
    if a.arity != b.arity:
        raise ValueError("arity mismatch")
    if mode == "exact":
        return a == b
    if mode != "modp":
        raise ValueError(f"unknown mode {mode!r}")
    if k < 1:
        raise ValueError("modp mode needs k >= 1")
    p = FIXED_PRIME
    for i in range(k):
        for attempt in range(MAX_RESAMPLES):
            point = ModPPoint.draw(a.arity, seed * 1000003 + i * 1009 + attempt, p)
            try:
                va = a.eval_mod(point.values, p)
                vb = b.eval_mod(point.values, p)
            except ZeroDivisionError:
                continue
            if va != vb:
                return False
            break
        else:
            raise ModPSamplingError(
                f"no nonvanishing evaluation point found in {MAX_RESAMPLES} resamples"
            )
    return True
