"""Fixed-point (GKM) model of the flag variety's equivariant cohomology.

A class is the total map W -> Q of restrictions to the torus-fixed points,
stored sparsely (missing = zero restriction).  The twisted group ring acts
in two ways:

    (p delta_v) . (q f_w)  : bullet  q w v^{-1}(p) f_{w v^{-1}}
    (p delta_v) o (q f_w)  : odot    p v(q) f_{v w}

bullet is linear over the fraction field, odot is not, and the two commute.
On top of these actions sit the point classes, motivic Chern and Segre
motivic Chern classes of cells, the canonical (Kazhdan-Lusztig) classes and
their parabolic versions, the tensor-product pairing, a localization formula
for Serre-Grothendieck duality, the smoothness criterion, and the canonical
classes of the hyperbolic theory together with restriction-formula
fundamental classes of smooth Schubert varieties.
"""

from __future__ import annotations

import random

from .hecke import HeckeAlgebra
from .laurent import LaurentPoly
from .modp import ExactDomain, domains_compatible
from .ratfunc import RatFunc
from .rootsystem import RootSystem, WeylElt
from .twisted import QWElt, TwistedRing, psi

__all__ = ["CohClass", "Localization"]


class CohClass:
    """Restrictions to fixed points: a sparse total map W -> Q."""

    __slots__ = ("ring", "restrictions", "J")

    def __init__(self, ring: TwistedRing, restrictions: dict, J: tuple | None = None):
        self.ring = ring
        dom = ring.dom
        self.restrictions = {w: c for w, c in restrictions.items() if not dom.is_zero(c)}
        self.J = tuple(J) if J is not None else None

    def __add__(self, other: "CohClass") -> "CohClass":
        out = dict(self.restrictions)
        for w, c in other.restrictions.items():
            q = out.get(w)
            out[w] = c if q is None else q + c
        return CohClass(self.ring, out, self.J)

    def __sub__(self, other: "CohClass") -> "CohClass":
        return self + other.scale(-1)

    def scale(self, c) -> "CohClass":
        c = self.ring.as_scalar(c)
        return CohClass(self.ring, {w: p * c for w, p in self.restrictions.items()}, self.J)

    def mul_pointwise(self, other: "CohClass") -> "CohClass":
        out = {}
        for w, c in self.restrictions.items():
            q = other.restrictions.get(w)
            if q is not None:
                out[w] = c * q
        return CohClass(self.ring, out, self.J)

    def __eq__(self, other):
        if not isinstance(other, CohClass):
            return NotImplemented
        if self.ring.kind != other.ring.kind or not domains_compatible(
            self.ring.dom, other.ring.dom
        ):
            return False
        if self.restrictions.keys() != other.restrictions.keys():
            return False
        eq = self.ring.dom.eq
        return all(eq(c, other.restrictions[w]) for w, c in self.restrictions.items())

    __hash__ = None

    def support(self):
        return sorted(self.restrictions, key=lambda w: (w.length, w.idx))

    def format(self) -> str:
        if not self.restrictions:
            return "0"
        parts = []
        for w in self.support():
            c = self.restrictions[w]
            text = c.format() if isinstance(c, RatFunc) else repr(c)
            parts.append(f"{w!r}: {text}")
        return "; ".join(parts)

    def __repr__(self):
        return f"CohClass<{self.ring.kind}>({self.format()})"


class Localization:
    """All fixed-point computations for one group, one scalar domain."""

    def __init__(
        self,
        system: RootSystem,
        domain=None,
        hecke: HeckeAlgebra | None = None,
        cache_dir: str | None = None,
    ):
        self.system = system
        self.dom = domain if domain is not None else ExactDomain(system)
        self.hecke = hecke if hecke is not None else HeckeAlgebra(system, cache_dir)
        self.mult = TwistedRing(system, "multiplicative", self.dom)
        self.hyp = TwistedRing(system, "hyperbolic", self.dom)
        self._pt_cache: dict = {}
        self._mc_cell_cache: dict = {}
        self._lambda_inv_cache: dict = {}
        self._smc_norm = None

    def ring(self, kind: str) -> TwistedRing:
        if kind == "multiplicative":
            return self.mult
        if kind == "hyperbolic":
            return self.hyp
        raise ValueError(f"unknown model kind {kind!r}")

    # ---------- the two actions ----------

    def bullet(self, a: QWElt, c: CohClass) -> CohClass:
        """(a . c)_u = sum_v c_{uv} u(p_v); linear over the fraction field."""
        if a.ring is not c.ring:
            a.ring._check(c.ring.zero())
        dom = self.dom
        out: dict = {}
        for v, p in a.coeffs.items():
            vinv = v.inverse()
            for w, q in c.restrictions.items():
                u = w * vinv
                val = q * dom.weyl(u, p)
                acc = out.get(u)
                out[u] = val if acc is None else acc + val
        return CohClass(c.ring, out)

    def odot(self, a: QWElt, c: CohClass) -> CohClass:
        """(a o c)_u = sum_v p_v v(c_{v^{-1} u}); not linear over the field."""
        if a.ring is not c.ring:
            a.ring._check(c.ring.zero())
        dom = self.dom
        out: dict = {}
        for v, p in a.coeffs.items():
            for w, q in c.restrictions.items():
                u = v * w
                val = p * dom.weyl(v, q)
                acc = out.get(u)
                out[u] = val if acc is None else acc + val
        return CohClass(c.ring, out)

    # ---------- basic classes ----------

    def point_class(self, w: WeylElt, kind: str = "multiplicative") -> CohClass:
        """pt_w: the single restriction w(x_Pi) at w."""
        key = (kind, w)
        hit = self._pt_cache.get(key)
        if hit is not None:
            return hit
        ring = self.ring(kind)
        val = self.dom.one
        for alpha in self.system.positive_roots:
            val = val * ring.x_root(-self.system.act_root(w, alpha))
        cls = CohClass(ring, {w: val})
        self._pt_cache[key] = cls
        return cls

    def one_class(self, kind: str) -> CohClass:
        ring = self.ring(kind)
        return CohClass(ring, {w: self.dom.one for w in self.system.elements})

    def mc_cell(self, w: WeylElt) -> CohClass:
        """Motivic Chern class of the open cell, t^{-l(w)} tau_w o pt_e."""
        hit = self._mc_cell_cache.get(w)
        if hit is not None:
            return hit
        cls = self.odot(self.mult.dl_element(w), self.point_class(self.system.identity))
        cls = cls.scale(self.mult.scalar_t(-w.length))
        self._mc_cell_cache[w] = cls
        return cls

    def mc_variety(self, w: WeylElt) -> CohClass:
        """Bruhat-interval sum of cell classes."""
        out = CohClass(self.mult, {})
        for v in self.system.bruhat_interval(w):
            out = out + self.mc_cell(v)
        return out

    def mc_opposite_cell(self, v: WeylElt) -> CohClass:
        """MC of the opposite cell, by w_0-translation of a cell class."""
        w0 = self.system.w0
        return self.odot(self.mult.delta(w0), self.mc_cell(w0 * v))

    def lambda_cotangent_factors(self, u: WeylElt, J=()):
        """The binomial factors (1 - t^-2 e^{u a}), a in Sigma^+ minus Sigma_J^+."""
        arity = self.system.rank + 1
        Jset = set(J)
        out = []
        for alpha in self.system.positive_roots:
            if all(x == 0 or i in Jset for i, x in enumerate(alpha.simple)):
                continue
            ua = u.act_weight(alpha.weight)
            out.append(
                LaurentPoly.const(arity, 1)
                - LaurentPoly.monomial((-2,) + tuple(ua), 1)
            )
        return out

    def lambda_cotangent(self, J=()) -> CohClass:
        """lambda_{-t^-2} of the cotangent bundle, restricted fixed point by point."""
        out = {}
        for u in self.system.elements:
            val = RatFunc.from_int(self.system.rank + 1, 1)
            for f in self.lambda_cotangent_factors(u, J):
                val = val * RatFunc(f)
            out[u] = self.dom.lift(val)
        return CohClass(self.mult, out, J or None)

    def _lambda_inv(self, u: WeylElt, J=()):
        key = (u, tuple(J))
        hit = self._lambda_inv_cache.get(key)
        if hit is None:
            arity = self.system.rank + 1
            hit = self.dom.lift(
                RatFunc.from_den_factors(
                    LaurentPoly.const(arity, 1), self.lambda_cotangent_factors(u, J)
                )
            )
            self._lambda_inv_cache[key] = hit
        return hit

    # ---------- Serre-Grothendieck duality (localization formula) ----------

    def serre_dual(self, c: CohClass, J=()) -> CohClass:
        """(D c)_u = (-1)^{N_J} dualize(c_u) * prod e^{u a} over Sigma^+ - Sigma_J^+."""
        system = self.system
        Jset = set(J)
        rel_roots = [
            a
            for a in system.positive_roots
            if not all(x == 0 or i in Jset for i, x in enumerate(a.simple))
        ]
        sign = -1 if len(rel_roots) % 2 else 1
        two_rho = [0] * system.rank
        for a in rel_roots:
            for i, x in enumerate(a.weight):
                two_rho[i] += x
        dom = self.dom
        arity = system.rank + 1
        out = {}
        for u, val in c.restrictions.items():
            mono = RatFunc(
                LaurentPoly.monomial((0,) + tuple(u.act_weight(tuple(two_rho))), sign)
            )
            out[u] = dom.dualize(val) * dom.lift(mono)
        return CohClass(c.ring, out, c.J)

    # ---------- Segre motivic Chern classes ----------

    def _smc_normalizer(self):
        """1 / prod_{a>0} (1 - t^-2 e^{-a}), lifted once."""
        if self._smc_norm is None:
            arity = self.system.rank + 1
            facs = [
                LaurentPoly.const(arity, 1)
                - LaurentPoly.monomial((-2,) + tuple(-x for x in a.weight), 1)
                for a in self.system.positive_roots
            ]
            self._smc_norm = self.dom.lift(
                RatFunc.from_den_factors(LaurentPoly.const(arity, 1), facs)
            )
        return self._smc_norm

    def smc_cell(self, v: WeylElt) -> CohClass:
        """SMC of the opposite cell, via the inverse tau action on pt_{w_0}."""
        w0 = self.system.w0
        hk = self.hecke.tau_inverse(w0 * v)
        cls = self.bullet(self.mult.hecke_to_qw(hk), self.point_class(w0))
        scal = self.mult.scalar_t(-(w0 * v).length) * self._smc_normalizer()
        return cls.scale(scal)

    def smc_cell_via_duality(self, v: WeylElt) -> CohClass:
        """Independent route: t^{-2 dim} D(MC(opposite cell)) / lambda_{-t^-2}(T*)."""
        w0 = self.system.w0
        mc = self.mc_opposite_cell(v)
        dual = self.serre_dual(mc)
        dim = w0.length - v.length
        out = {
            u: val * self._lambda_inv(u) for u, val in dual.restrictions.items()
        }
        return CohClass(self.mult, out).scale(self.mult.scalar_t(-2 * dim))

    # ---------- pairings ----------

    def pairing(self, f: CohClass, g: CohClass, J=()):
        """Y_{Pi/J} . (f g); must be constant, and that constant is returned."""
        if f.ring is not g.ring:
            raise ValueError("pairing requires classes in the same model")
        ring = f.ring
        h = f.mul_pointwise(g)
        a = ring.pushpull_rel(tuple(range(self.system.rank)), tuple(J))
        res = self.bullet(a, h)
        values = [
            res.restrictions.get(u, self.dom.zero) for u in self.system.elements
        ]
        first = values[0]
        for other in values[1:]:
            if not self.dom.eq(first, other):
                raise ValueError("pairing of non-invariant classes is not constant")
        return first

    def pairing_normalizer(self, J=()):
        """prod (t - t^-1 e^{-a}) over Sigma^+ minus Sigma_J^+, exact and lifted."""
        arity = self.system.rank + 1
        Jset = set(J)
        val = RatFunc.from_int(arity, 1)
        for a in self.system.positive_roots:
            if all(x == 0 or i in Jset for i, x in enumerate(a.simple)):
                continue
            val = val * RatFunc(
                LaurentPoly.t_power(arity, 1)
                - LaurentPoly.monomial((-1,) + tuple(-x for x in a.weight), 1)
            )
        return self.dom.lift(val)

    # ---------- canonical (Kazhdan-Lusztig) classes ----------

    def kl_class_c(self, w: WeylElt) -> CohClass:
        """C_w = gamma_w o pt_e in the multiplicative model."""
        g = self.hecke.kl_basis(w)
        return self.odot(self.mult.hecke_to_qw(g), self.point_class(self.system.identity))

    def kl_class_c_tilde(self, w: WeylElt) -> CohClass:
        """C~_w = gamma~_{w^{-1} w_0} . pt_{w_0}."""
        g = self.hecke.kl_tilde_basis(w.inverse() * self.system.w0)
        return self.bullet(self.mult.hecke_to_qw(g), self.point_class(self.system.w0))

    def kl_class_c_expansion(self, w: WeylElt) -> CohClass:
        """Cross-check expansion: sum t_w P_{u,w}(t^-2) MC(cell u)."""
        out = CohClass(self.mult, {})
        lw = w.length
        for u in self.system.bruhat_interval(w):
            p = self.hecke.kl_polynomial(u, w)
            poly = LaurentPoly(1, {(lw - 2 * j,): c for j, c in enumerate(p)})
            out = out + self.mc_cell(u).scale(self.mult.t_poly(poly))
        return out

    def kl_class_c_tilde_expansion(self, w: WeylElt) -> CohClass:
        """Cross-check expansion of C~_w in Segre classes of opposite cells."""
        system = self.system
        w0 = system.w0
        arity = system.rank + 1
        norm = RatFunc.from_int(arity, 1)
        for a in system.positive_roots:
            norm = norm * RatFunc(
                LaurentPoly.const(arity, 1)
                - LaurentPoly.monomial((-2,) + tuple(-x for x in a.weight), 1)
            )
        out = CohClass(self.mult, {})
        base = w.inverse() * w0
        for v in system.elements:
            if not system.bruhat_leq(w, v):
                continue
            p = self.hecke.kl_polynomial(v.inverse() * w0, base)
            if not p:
                continue
            sign = w.sign * v.sign
            poly = LaurentPoly(1, {(base.length - 2 * j,): sign * c for j, c in enumerate(p)})
            out = out + self.smc_cell(v).scale(self.mult.t_poly(poly))
        return out.scale(self.dom.lift(norm))

    # ---------- parabolic classes ----------

    def _require_min_rep(self, w: WeylElt, J):
        if set(J).intersection(self.system.right_descents(w)):
            raise ValueError(f"{w!r} is not a minimal coset representative for J={J}")

    def mc_cell_parabolic(self, u: WeylElt, J) -> CohClass:
        """MC of a cell downstairs: Y_J . MC(cell u)."""
        self._require_min_rep(u, J)
        cls = self.bullet(self.mult.pushpull_rel(tuple(J), ()), self.mc_cell(u))
        cls.J = tuple(J)
        return cls

    def smc_cell_parabolic(self, v: WeylElt, J) -> CohClass:
        """SMC of an opposite cell downstairs, via w_0-translation and duality."""
        self._require_min_rep(v, J)
        system = self.system
        w0 = system.w0
        wj = system.longest_parabolic(J)
        u = w0 * v * wj
        self._require_min_rep(u, J)
        mc_opp = self.odot(self.mult.delta(w0), self.mc_cell_parabolic(u, J))
        dual = self.serre_dual(mc_opp, J)
        n_j = sum(
            1
            for a in system.positive_roots
            if not all(x == 0 or i in set(J) for i, x in enumerate(a.simple))
        )
        dim = n_j - v.length
        out = {x: val * self._lambda_inv(x, J) for x, val in dual.restrictions.items()}
        return CohClass(self.mult, out, tuple(J)).scale(self.mult.scalar_t(-2 * dim))

    def kl_class_c_parabolic(self, w: WeylElt, J) -> CohClass:
        """C^J_w = sum over u in W^J, u <= w of t_w P^J_{u,w}(t^-2) MC(cell u)_J."""
        self._require_min_rep(w, J)
        out = CohClass(self.mult, {}, tuple(J))
        lw = w.length
        for u in self.system.minimal_coset_reps(J):
            if not self.system.bruhat_leq(u, w):
                continue
            p = self.hecke.parabolic_kl(u, w, J)
            if not p:
                continue
            poly = LaurentPoly(1, {(lw - 2 * j,): c for j, c in enumerate(p)})
            out = out + self.mc_cell_parabolic(u, J).scale(self.mult.t_poly(poly))
        out.J = tuple(J)
        return out

    def kl_class_c_tilde_parabolic(self, w: WeylElt, J) -> CohClass:
        """C~^J_w, from inverse parabolic KL polynomials and Segre classes."""
        self._require_min_rep(w, J)
        system = self.system
        wj = system.longest_parabolic(J)
        shift = (wj * w.inverse() * system.w0).length
        out = CohClass(self.mult, {}, tuple(J))
        for v in system.minimal_coset_reps(J):
            if not system.bruhat_leq(w, v):
                continue
            q = self.hecke.inverse_parabolic_kl(w, v, J)
            if not q:
                continue
            sign = w.sign * v.sign
            poly = LaurentPoly(1, {(shift - 2 * j,): sign * c for j, c in enumerate(q)})
            out = out + self.smc_cell_parabolic(v, J).scale(self.mult.t_poly(poly))
        arity = system.rank + 1
        norm = RatFunc.from_int(arity, 1)
        Jset = set(J)
        for a in system.positive_roots:
            if all(x == 0 or i in Jset for i, x in enumerate(a.simple)):
                continue
            norm = norm * RatFunc(
                LaurentPoly.const(arity, 1)
                - LaurentPoly.monomial((-2,) + tuple(-x for x in a.weight), 1)
            )
        out = out.scale(self.dom.lift(norm))
        out.J = tuple(J)
        return out

    def pushforward_scalar(self, J):
        """t_{w_J}^{-1} P_J(t^2), the multiplier in the pushforward of C_{w w_J}."""
        wj = self.system.longest_parabolic(J)
        pj = self.system.poincare_polynomial(J)
        poly = LaurentPoly(1, {(2 * e - wj.length,): c for (e,), c in pj.terms.items()})
        return self.mult.t_poly(poly)

    # ---------- hyperbolic classes ----------

    def kl_schubert(self, w: WeylElt, J=()) -> CohClass:
        """mu^{-l(w w_J)} psi(gamma_{w w_J}) o pt_e in the hyperbolic model."""
        self._require_min_rep(w, J)
        target = w * self.system.longest_parabolic(J)
        g = self.hecke.kl_basis(target)
        op = self.hyp.hecke_to_qw(g)
        scal = self.dom.one
        inv_mu = self.hyp.scalar_mu().inv()
        for _ in range(target.length):
            scal = scal * inv_mu
        cls = self.odot(op, self.point_class(self.system.identity, "hyperbolic"))
        cls = cls.scale(scal)
        cls.J = tuple(J) or None
        return cls

    def is_invariant(self, c: CohClass, J) -> bool:
        """Restrictions constant on left cosets u W_J."""
        dom = self.dom
        for u in self.system.elements:
            cu = c.restrictions.get(u, dom.zero)
            for j in J:
                us = self.system.elements[self.system.right_table[u.idx][j]]
                if not dom.eq(cu, c.restrictions.get(us, dom.zero)):
                    return False
        return True

    def fundamental_class_smooth(self, w: WeylElt, J=()) -> CohClass:
        """Restriction-formula class of a smooth Schubert variety (hyperbolic).

        At v <= w the restriction is the product of x_{-a} over positive a
        with s_a v not <= w; parabolic inputs are pulled back via w -> w w_J.
        """
        system = self.system
        if J:
            self._require_min_rep(w, J)
            target = w * system.longest_parabolic(J)
        else:
            target = w
        smooth, _ = self.is_smooth(target)
        if not smooth:
            raise ValueError(f"Schubert variety for {target!r} is not smooth")
        out = {}
        reflections = [(a, system.reflection(a)) for a in system.positive_roots]
        for v in system.bruhat_interval(target):
            val = self.dom.one
            for alpha, s_alpha in reflections:
                if not system.bruhat_leq(s_alpha * v, target):
                    val = val * self.hyp.x_root(-alpha)
            out[v] = val
        cls = CohClass(self.hyp, out, tuple(J) or None)
        return cls

    # ---------- smoothness criterion ----------

    def is_smooth(self, w: WeylElt):
        """Fixed-point smoothness verdicts from the coefficients of Gamma_w."""
        system = self.system
        coeffs = self.mult.gamma_coefficients(self.hecke, w)
        arity = system.rank + 1
        witnesses = {}
        reflections = [(a, system.reflection(a)) for a in system.positive_roots]
        for u in system.bruhat_interval(w):
            expected = RatFunc.from_int(arity, 1)
            for alpha, s_alpha in reflections:
                if system.bruhat_leq(u * s_alpha, w):
                    ua = u.act_weight(alpha.weight)
                    one = LaurentPoly.const(arity, 1)
                    expected = expected * RatFunc.from_den_factors(
                        one - LaurentPoly.monomial((-2,) + tuple(ua), 1),
                        [one - LaurentPoly.monomial((0,) + tuple(ua), 1)],
                    )
            got = coeffs.get(u, self.dom.zero)
            witnesses[u] = self.dom.eq(got, self.dom.lift(expected))
        return all(witnesses.values()), witnesses

    # ---------- random classes (for involution tests) ----------

    def random_class(self, seed: int, kind: str = "multiplicative", terms: int = 3) -> CohClass:
        rng = random.Random(seed)
        arity = self.system.rank + 1
        ring = self.ring(kind)
        out = {}
        for w in rng.sample(self.system.elements, min(terms, self.system.order)):
            num = {}
            for _ in range(rng.randrange(1, 4)):
                e = tuple(rng.randrange(-2, 3) for _ in range(arity))
                num[e] = rng.randrange(-4, 5) or 1
            den = LaurentPoly.const(arity, 1) - LaurentPoly.monomial(
                (0,) + tuple(rng.randrange(-1, 2) for _ in range(arity - 1)), 1
            )
            if den.is_zero():
                den = LaurentPoly.const(arity, 1)
            out[w] = ring.as_scalar(RatFunc.from_den_factors(LaurentPoly(arity, num), [den]))
        return CohClass(ring, out)
