"""Localized twisted group ring Q_W over a formal-group-law realization.

Elements are finite sums sum p_w delta_w with rational-function coefficients
and the twisted product (p delta_v)(p' delta_w) = p v(p') delta_{vw}.  Two
realizations are supported, sharing one rational-function field so that the
transfer between them is coefficientwise trivial:

    multiplicative   x_lam = 1 - e^{-lam}
    hyperbolic       x_lam = (t^2+1)(1 - e^{-lam}) / (t^2 - e^{-lam})

The hyperbolic x is the preimage of the multiplicative one under the formal
group law morphism g(x) = (1-t^2) x / (x - (t^2+1)); the price is that the
coefficient ring inverts t^2 - 1, which the fraction field supplies.

Demazure-Lusztig generators: in the multiplicative realization
tau_i = Y_i (t - t^{-1} e^{alpha_i}) - t; in the hyperbolic one the Hecke
algebra acts through mu Y_i - t with mu = t + t^{-1}.  The transfer psi sends
the first to the second, which is one of the verified contracts.
"""

from __future__ import annotations

from .laurent import LaurentPoly
from .modp import ExactDomain, domains_compatible
from .ratfunc import RatFunc
from .rootsystem import Root, RootSystem, WeylElt

__all__ = ["FglModel", "QWElt", "TwistedRing", "psi"]


class FglModel:
    """Exact-fraction realization of x_lambda for one formal group law."""

    KINDS = ("multiplicative", "hyperbolic")

    def __init__(self, kind: str, rank: int):
        if kind not in self.KINDS:
            raise ValueError(f"unknown formal group law kind {kind!r}")
        self.kind = kind
        self.rank = rank
        self.arity = rank + 1

    def _e_minus(self, lam) -> LaurentPoly:
        return LaurentPoly.monomial((0,) + tuple(-x for x in lam), 1)

    def x_weight(self, lam) -> RatFunc:
        """x_lambda as an exact rational function."""
        one = LaurentPoly.const(self.arity, 1)
        em = self._e_minus(lam)
        if self.kind == "multiplicative":
            return RatFunc(one - em)
        t2p1 = LaurentPoly.t_power(self.arity, 2) + one
        t2 = LaurentPoly.t_power(self.arity, 2)
        return RatFunc.from_den_factors(t2p1 * (one - em), [t2 - em])

    def x_weight_inv(self, lam) -> RatFunc:
        """1 / x_lambda, with the denominator kept in factored binomials."""
        one = LaurentPoly.const(self.arity, 1)
        em = self._e_minus(lam)
        if self.kind == "multiplicative":
            return RatFunc.from_den_factors(one, [one - em])
        t2p1 = LaurentPoly.t_power(self.arity, 2) + one
        t2 = LaurentPoly.t_power(self.arity, 2)
        return RatFunc.from_den_factors(t2 - em, [t2p1, one - em])

    def fgl_morphism_g(self, x: RatFunc) -> RatFunc:
        """g(x) = (1 - t^2) x / (x - (t^2 + 1)), from this law to the multiplicative one."""
        if self.kind != "hyperbolic":
            raise ValueError("g is defined on the hyperbolic realization")
        one = RatFunc.from_int(self.arity, 1)
        t2 = RatFunc(LaurentPoly.t_power(self.arity, 2))
        return (one - t2) * x / (x - (t2 + one))


class QWElt:
    """Finite combination sum p_w delta_w in a twisted group ring."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: "TwistedRing", coeffs: dict):
        self.ring = ring
        dom = ring.dom
        self.coeffs = {w: c for w, c in coeffs.items() if not dom.is_zero(c)}

    def __add__(self, other: "QWElt") -> "QWElt":
        self.ring._check(other)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            q = out.get(w)
            out[w] = c if q is None else q + c
        return QWElt(self.ring, out)

    def __sub__(self, other: "QWElt") -> "QWElt":
        return self + other.scale(-1)

    def scale(self, c) -> "QWElt":
        c = self.ring.as_scalar(c)
        return QWElt(self.ring, {w: p * c for w, p in self.coeffs.items()})

    def __mul__(self, other: "QWElt") -> "QWElt":
        return self.ring.qw_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, QWElt):
            return NotImplemented
        self.ring._check(other)
        if self.coeffs.keys() != other.coeffs.keys():
            return False
        eq = self.ring.dom.eq
        return all(eq(c, other.coeffs[w]) for w, c in self.coeffs.items())

    __hash__ = None

    def support(self):
        return sorted(self.coeffs, key=lambda w: (w.length, w.idx))

    def format(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for w in self.support():
            c = self.coeffs[w]
            text = c.format() if isinstance(c, RatFunc) else repr(c)
            parts.append(f"({text}) d[{w!r}]")
        return " + ".join(parts)

    def __repr__(self):
        return f"QWElt<{self.ring.kind}>({self.format()})"


class TwistedRing:
    def __init__(self, system: RootSystem, kind: str, domain=None):
        self.system = system
        self.kind = kind
        self.model = FglModel(kind, system.rank)
        self.dom = domain if domain is not None else ExactDomain(system)
        self._x_root_cache: dict = {}
        self._x_root_inv_cache: dict = {}
        self._dl_cache: dict = {}
        self._dl_gen_cache: dict = {}
        self._dl_act_cache: dict = {}

    def _check(self, other: "QWElt"):
        ring = other.ring
        if (
            ring.system is not self.system
            or ring.kind != self.kind
            or not domains_compatible(ring.dom, self.dom)
        ):
            raise ValueError("elements of different twisted rings")

    # ---------- scalars ----------

    def as_scalar(self, value):
        dom = self.dom
        if isinstance(value, int):
            if value == 1:
                return dom.one
            return dom.lift(RatFunc.from_int(self.model.arity, value))
        if isinstance(value, RatFunc):
            return dom.lift(value)
        if isinstance(value, LaurentPoly):
            return dom.lift(RatFunc(value))
        return value

    def scalar_t(self, exp: int = 1):
        return self.as_scalar(RatFunc(LaurentPoly.t_power(self.model.arity, exp)))

    def scalar_mu(self):
        arity = self.model.arity
        return self.as_scalar(
            RatFunc(LaurentPoly.t_power(arity, 1) + LaurentPoly.t_power(arity, -1))
        )

    def t_poly(self, p: LaurentPoly):
        """Lift a polynomial in t alone (arity-1 LaurentPoly)."""
        return self.as_scalar(RatFunc(p.embed(self.model.arity, (0,))))

    def x_root(self, root: Root):
        hit = self._x_root_cache.get(root)
        if hit is None:
            hit = self.as_scalar(self.model.x_weight(root.weight))
            self._x_root_cache[root] = hit
        return hit

    def x_root_inv(self, root: Root):
        hit = self._x_root_inv_cache.get(root)
        if hit is None:
            hit = self.as_scalar(self.model.x_weight_inv(root.weight))
            self._x_root_inv_cache[root] = hit
        return hit

    def x_parabolic(self, J, Jp=()):
        """x_{J/J'} = product of x_alpha over negative roots of J not in J'."""
        neg = set(r for r in self.system.parabolic_roots(J) if not r.positive)
        negp = set(r for r in self.system.parabolic_roots(Jp) if not r.positive)
        out = self.dom.one
        for r in neg - negp:
            out = out * self.x_root(r)
        return out

    def x_parabolic_inv(self, J, Jp=()):
        neg = set(r for r in self.system.parabolic_roots(J) if not r.positive)
        negp = set(r for r in self.system.parabolic_roots(Jp) if not r.positive)
        out = self.dom.one
        for r in neg - negp:
            out = out * self.x_root_inv(r)
        return out

    # ---------- elements ----------

    def zero(self) -> QWElt:
        return QWElt(self, {})

    def delta(self, w: WeylElt) -> QWElt:
        return QWElt(self, {w: self.dom.one})

    def scalar_elt(self, c) -> QWElt:
        return QWElt(self, {self.system.identity: self.as_scalar(c)})

    def qw_mul(self, a: QWElt, b: QWElt) -> QWElt:
        self._check(a)
        self._check(b)
        dom = self.dom
        out: dict = {}
        for v, p in a.coeffs.items():
            for w, q in b.coeffs.items():
                c = p * dom.weyl(v, q)
                key = v * w
                acc = out.get(key)
                out[key] = c if acc is None else acc + c
        return QWElt(self, out)

    def pushpull_simple(self, i: int) -> QWElt:
        """Y_i = (1 + delta_{s_i}) 1/x_{-alpha_i}."""
        root = self.system.simple_roots[i]
        s = self.system.simple_reflection(i)
        return QWElt(
            self,
            {
                self.system.identity: self.x_root_inv(-root),
                s: self.x_root_inv(root),
            },
        )

    def pushpull_word(self, word) -> QWElt:
        out = self.delta(self.system.identity)
        for i in word:
            out = self.qw_mul(out, self.pushpull_simple(i))
        return out

    def pushpull_rel(self, J, Jp=(), reps=None) -> QWElt:
        """Y_{J/J'} = (sum over coset representatives delta_w) / x_{J/J'}.

        Changing the W_J / W_{J'} representatives moves delta_w to delta_{wv}
        with the same coefficient, so the element itself depends on the
        choice; its products against right-W_{J'}-symmetric elements (e.g.
        Y_{J'}) and its action on W_{J'}-invariant classes do not.
        """
        if not set(Jp) <= set(J):
            raise ValueError("J' must be contained in J")
        if reps is None:
            reps = self.system.relative_reps(J, Jp)
        xinv = self.x_parabolic_inv(J, Jp)
        dom = self.dom
        return QWElt(self, {w: dom.weyl(w, xinv) for w in reps})

    # ---------- Demazure-Lusztig generators and the Hecke action ----------

    def dl_generator(self, i: int) -> QWElt:
        """The element acting as tau_i: Demazure-Lusztig in the multiplicative
        realization, mu Y_i - t in the hyperbolic one."""
        hit = self._dl_gen_cache.get(i)
        if hit is not None:
            return hit
        t = self.scalar_t(1)
        if self.kind == "multiplicative":
            root = self.system.simple_roots[i]
            arity = self.model.arity
            one = LaurentPoly.const(arity, 1)
            den = one - LaurentPoly.monomial((0,) + tuple(-x for x in root.weight), 1)
            c_e = self.as_scalar(
                RatFunc.from_den_factors(
                    LaurentPoly.t_power(arity, -1) - LaurentPoly.t_power(arity, 1), [den]
                )
            )
            c_s = self.as_scalar(
                RatFunc.from_den_factors(
                    LaurentPoly.t_power(arity, 1)
                    - LaurentPoly.t_power(arity, -1)
                    * LaurentPoly.monomial((0,) + tuple(-x for x in root.weight), 1),
                    [den],
                )
            )
            s = self.system.simple_reflection(i)
            elt = QWElt(self, {self.system.identity: c_e, s: c_s})
            # same element via the operator formula Y_i (t - t^-1 e^alpha) - t
            alt = self.qw_mul(
                self.pushpull_simple(i),
                self.scalar_elt(
                    t
                    - self.scalar_t(-1)
                    * self.as_scalar(
                        RatFunc(
                            LaurentPoly.monomial(
                                (0,) + tuple(root.weight), 1
                            )
                        )
                    )
                ),
            ) - self.scalar_elt(t)
            assert elt == alt, "Demazure-Lusztig expressions disagree"
        else:
            mu = self.scalar_mu()
            elt = self.pushpull_simple(i).scale(mu) - self.scalar_elt(t)
        self._dl_gen_cache[i] = elt
        return elt

    def _dl_step(self, a: QWElt, i: int) -> QWElt:
        """Right-multiply by the 2-term generator, caching Weyl images."""
        gen = self.dl_generator(i)
        s = self.system.simple_reflection(i)
        c_e = gen.coeffs.get(self.system.identity)
        c_s = gen.coeffs.get(s)
        dom = self.dom
        table = self.system.right_table
        elements = self.system.elements
        cache = self._dl_act_cache
        out: dict = {}
        for u, p in a.coeffs.items():
            key = (i, u.idx, 0)
            ue = cache.get(key)
            if ue is None:
                ue = dom.weyl(u, c_e)
                cache[key] = ue
            key = (i, u.idx, 1)
            us = cache.get(key)
            if us is None:
                us = dom.weyl(u, c_s)
                cache[key] = us
            c = p * ue
            acc = out.get(u)
            out[u] = c if acc is None else acc + c
            target = elements[table[u.idx][i]]
            c = p * us
            acc = out.get(target)
            out[target] = c if acc is None else acc + c
        return QWElt(self, out)

    def dl_element(self, w: WeylElt) -> QWElt:
        """The image of tau_w, built along reduced words and cached."""
        hit = self._dl_cache.get(w)
        if hit is not None:
            return hit
        if w.length == 0:
            out = self.delta(self.system.identity)
        else:
            i = w.word[-1]
            prev = self.system.elements[self.system.right_table[w.idx][i]]
            out = self._dl_step(self.dl_element(prev), i)
        self._dl_cache[w] = out
        return out

    def hecke_to_qw(self, h) -> QWElt:
        """Ring homomorphism sending tau_w to the generator product along w."""
        out = self.zero()
        for w, poly in h.coeffs.items():
            out = out + self.dl_element(w).scale(self.t_poly(poly))
        return out

    def gamma_coefficients(self, hecke, w: WeylElt) -> dict:
        """delta-basis coefficients a_{w,u} of the image of Gamma_w."""
        return dict(self.hecke_to_qw(hecke.gamma_sum(w)).coeffs)

    # ---------- anti-involutions ----------

    def _inversion_ratio(self, u: WeylElt, hatted: bool = False):
        """x_Pi / u(x_Pi), as the product over inversions of u^{-1} of x_{-a}/x_a
        (with the extra factor (t - t^-1 e^{-a})/(t - t^-1 e^{a}) when hatted)."""
        dom = self.dom
        out = dom.one
        arity = self.model.arity
        for alpha in self.system.inversions(u.inverse()):
            out = out * self.x_root(-alpha) * self.x_root_inv(alpha)
            if hatted:
                num = LaurentPoly.t_power(arity, 1) - LaurentPoly.t_power(
                    arity, -1
                ) * LaurentPoly.monomial((0,) + tuple(-x for x in alpha.weight), 1)
                den = LaurentPoly.t_power(arity, 1) - LaurentPoly.t_power(
                    arity, -1
                ) * LaurentPoly.monomial((0,) + tuple(alpha.weight), 1)
                out = out * self.as_scalar(RatFunc.from_den_factors(num, [den]))
        return out

    def iota(self, a: QWElt) -> QWElt:
        """iota(p delta_v) = v^{-1}(p) (x_Pi / v^{-1}(x_Pi)) delta_{v^{-1}}."""
        self._check(a)
        dom = self.dom
        out: dict = {}
        for v, p in a.coeffs.items():
            u = v.inverse()
            c = dom.weyl(u, p) * self._inversion_ratio(u)
            acc = out.get(u)
            out[u] = c if acc is None else acc + c
        return QWElt(self, out)

    def hiota(self, a: QWElt) -> QWElt:
        """The hatted anti-involution, with x_Pi replaced by hat-x_Pi x_Pi."""
        if self.kind != "multiplicative":
            raise ValueError("the hatted anti-involution lives in the multiplicative ring")
        self._check(a)
        dom = self.dom
        out: dict = {}
        for v, p in a.coeffs.items():
            u = v.inverse()
            c = dom.weyl(u, p) * self._inversion_ratio(u, hatted=True)
            acc = out.get(u)
            out[u] = c if acc is None else acc + c
        return QWElt(self, out)


def psi(a: QWElt, target: TwistedRing) -> QWElt:
    """Transfer from the multiplicative ring to the hyperbolic one.

    In the shared rational-function realization the coefficient map is the
    identity; only the model tag changes.
    """
    if a.ring.kind != "multiplicative" or target.kind != "hyperbolic":
        raise ValueError("psi maps the multiplicative ring into the hyperbolic one")
    if a.ring.system is not target.system or not domains_compatible(a.ring.dom, target.dom):
        raise ValueError("psi requires the same group and scalar domain")
    return QWElt(target, dict(a.coeffs))
