"""Scalar domains: exact rational functions, or residues at Weyl-orbit points.

Every algebraic pipeline here (twisted group ring products, localization
actions, pairings) uses scalars only through +, -, *, inv and three
context-dependent maps: the Weyl action, the t/character inversion, and
lifting an exact rational function.  A domain object supplies those maps, so
the same pipeline code runs either exactly or as a Schwartz-Zippel style
evaluation mod a fixed 62-bit prime.

The mod-p domain evaluates at the full Weyl orbit of one random base point
(plus the coordinatewise-inverted copies).  The Weyl action and duality then
become index permutations of the residue vector: for a point P and the
transformed point w*P with (w*P)_i = P^(w omega_i), one has
(w f)(v*P) = f((v w)*P) and (D f)(v*P) = f(inv(v*P)).
"""

from __future__ import annotations

import random

from .ratfunc import FIXED_PRIME, RatFunc
from .rootsystem import RootSystem, WeylElt

__all__ = [
    "ExactDomain",
    "OrbitDomain",
    "OrbitScalar",
    "ZeroDenominator",
    "domains_compatible",
]


def domains_compatible(d1, d2) -> bool:
    """Scalars are exchangeable: the same instance, or exact over one group."""
    if d1 is d2:
        return True
    return (
        isinstance(d1, ExactDomain)
        and isinstance(d2, ExactDomain)
        and d1.system is d2.system
    )


class ZeroDenominator(ArithmeticError):
    """A denominator vanished at the evaluation point; resample and retry."""


class ExactDomain:
    """Exact RatFunc scalars for a given root system."""

    kind = "exact"

    def __init__(self, system: RootSystem):
        self.system = system
        self.arity = system.rank + 1
        self.one = RatFunc.from_int(self.arity, 1)
        self.zero = RatFunc.from_int(self.arity, 0)

    def lift(self, r: RatFunc) -> RatFunc:
        return r

    def weyl(self, w: WeylElt, c: RatFunc) -> RatFunc:
        return c.weyl(w.matrix)

    def dualize(self, c: RatFunc) -> RatFunc:
        return c.dualize()

    def inv(self, c: RatFunc) -> RatFunc:
        return c.inv()

    def is_zero(self, c: RatFunc) -> bool:
        return c.is_zero()

    def eq(self, a: RatFunc, b: RatFunc) -> bool:
        return a == b


class OrbitScalar:
    """A function on the orbit point family, stored as a residue vector."""

    __slots__ = ("domain", "values")

    def __init__(self, domain: "OrbitDomain", values: tuple):
        self.domain = domain
        self.values = values

    def _check(self, other):
        if self.domain is not other.domain:
            raise ValueError("scalars from different evaluation domains")

    def __add__(self, other):
        other = self.domain.coerce(other)
        self._check(other)
        p = self.domain.prime
        return OrbitScalar(
            self.domain, tuple((x + y) % p for x, y in zip(self.values, other.values))
        )

    __radd__ = __add__

    def __neg__(self):
        p = self.domain.prime
        return OrbitScalar(self.domain, tuple((-x) % p for x in self.values))

    def __sub__(self, other):
        other = self.domain.coerce(other)
        return self + (-other)

    def __rsub__(self, other):
        return self.domain.coerce(other) - self

    def __mul__(self, other):
        other = self.domain.coerce(other)
        self._check(other)
        p = self.domain.prime
        return OrbitScalar(
            self.domain, tuple((x * y) % p for x, y in zip(self.values, other.values))
        )

    __rmul__ = __mul__

    def inv(self) -> "OrbitScalar":
        p = self.domain.prime
        if any(x == 0 for x in self.values):
            raise ZeroDenominator("inverting a scalar that vanishes at an orbit point")
        return OrbitScalar(self.domain, tuple(pow(x, p - 2, p) for x in self.values))

    def __truediv__(self, other):
        other = self.domain.coerce(other)
        return self * other.inv()

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.domain.coerce(other)
        if not isinstance(other, OrbitScalar):
            return NotImplemented
        return self.domain is other.domain and self.values == other.values

    __hash__ = None

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.values)

    def __repr__(self):
        return f"OrbitScalar({self.values[0]}, ...)"


class OrbitDomain:
    """Evaluation of the whole pipeline at the Weyl orbit of one random point.

    Residue vectors are indexed by 2|W| points: block one holds w * P for
    each group element w (in element order), block two the coordinatewise
    inverses of those points (t included), which realizes the duality
    substitution as a block swap.
    """

    kind = "modp"

    def __init__(self, system: RootSystem, seed: int, prime: int = FIXED_PRIME):
        self.system = system
        self.prime = prime
        self.seed = seed
        rng = random.Random(seed)
        n = system.rank
        p = prime
        self.base_point = tuple(rng.randrange(2, p - 1) for _ in range(n + 1))
        t_val = self.base_point[0]
        t_inv = pow(t_val, p - 2, p)
        zvals = self.base_point[1:]
        zinvs = tuple(pow(z, p - 2, p) for z in zvals)
        points = []
        for w in system.elements:
            m = w.matrix
            coords = []
            for i in range(n):
                # z_i evaluates to P^{w(omega_i)}; w(omega_i) is column i of m
                v = 1
                for j in range(n):
                    e = m[j][i]
                    if e:
                        base = zvals[j] if e > 0 else zinvs[j]
                        v = v * pow(base, abs(e), p) % p
                coords.append(v)
            points.append((t_val,) + tuple(coords))
        inv_points = [
            (t_inv,) + tuple(pow(z, p - 2, p) for z in pt[1:]) for pt in points
        ]
        self.points = points + inv_points
        self.size = len(self.points)
        # weyl permutation: value of (w f) at point u*P is f((u w)*P)
        order = system.order
        self._perm = []
        for widx in range(order):
            perm = [0] * (2 * order)
            for u in range(order):
                uw = self._product_idx(u, widx)
                perm[u] = uw
                perm[u + order] = uw + order
            self._perm.append(perm)
        self.one = OrbitScalar(self, (1,) * self.size)
        self.zero = OrbitScalar(self, (0,) * self.size)
        self._lift_cache: dict = {}

    def _product_idx(self, u_idx: int, w_idx: int) -> int:
        idx = u_idx
        for i in self.system._words[w_idx]:
            idx = self.system.right_table[idx][i]
        return idx

    def coerce(self, value) -> OrbitScalar:
        if isinstance(value, OrbitScalar):
            return value
        if isinstance(value, int):
            v = value % self.prime
            return OrbitScalar(self, (v,) * self.size)
        if isinstance(value, RatFunc):
            return self.lift(value)
        raise TypeError(f"cannot coerce {type(value).__name__} into OrbitDomain")

    def lift(self, r: RatFunc) -> OrbitScalar:
        key = id(r)
        hit = self._lift_cache.get(key)
        if hit is not None and hit[0] is r:
            return hit[1]
        p = self.prime
        values = []
        for pt in self.points:
            num = r.num.eval_mod(pt, p)
            den = r.dc % p
            for f, mult in r.facs:
                v = f.eval_mod(pt, p)
                if v == 0:
                    raise ZeroDenominator("denominator vanishes at an orbit point")
                den = den * pow(v, mult, p) % p
            if den == 0:
                raise ZeroDenominator("denominator content divisible by p")
            values.append(num * pow(den, p - 2, p) % p)
        out = OrbitScalar(self, tuple(values))
        self._lift_cache[key] = (r, out)
        return out

    def weyl(self, w: WeylElt, c: OrbitScalar) -> OrbitScalar:
        perm = self._perm[w.idx]
        vals = c.values
        return OrbitScalar(self, tuple(vals[j] for j in perm))

    def dualize(self, c: OrbitScalar) -> OrbitScalar:
        half = self.size // 2
        return OrbitScalar(self, c.values[half:] + c.values[:half])

    def inv(self, c: OrbitScalar) -> OrbitScalar:
        return c.inv()

    def is_zero(self, c: OrbitScalar) -> bool:
        return c.is_zero()

    def eq(self, a: OrbitScalar, b: OrbitScalar) -> bool:
        return a.values == b.values
