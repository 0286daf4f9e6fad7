"""Multivariate Laurent polynomials with arbitrary-precision integer coefficients.

The variables are t, z1, ..., zn; an exponent vector is a tuple of length
arity = n + 1, slot 0 holding the exponent of t and slot i the exponent of
z_i.  Here z_i stands for the character of the i-th fundamental weight, so a
weight written in fundamental-weight coordinates maps to the monomial
prod z_i^{lambda_i}.

Terms are kept in a dict from exponent tuple to nonzero int; the canonical
total order on monomials is lexicographic on exponent tuples (t first),
which is exactly Python's tuple comparison.  The zero polynomial is the
empty dict.  Instances are immutable by convention: no method mutates terms
after construction.
"""

from __future__ import annotations

import re
from math import gcd

__all__ = ["LaurentPoly", "parse_poly"]


class LaurentPoly:
    __slots__ = ("arity", "terms", "_key")

    def __init__(self, arity: int, terms: dict | None = None):
        self.arity = arity
        if terms:
            self.terms = {e: c for e, c in terms.items() if c}
        else:
            self.terms = {}
        self._key = None

    # ---------- constructors ----------

    @classmethod
    def zero(cls, arity: int) -> "LaurentPoly":
        return cls(arity)

    @classmethod
    def const(cls, arity: int, c: int) -> "LaurentPoly":
        if c == 0:
            return cls(arity)
        return cls(arity, {(0,) * arity: c})

    @classmethod
    def monomial(cls, exps: tuple, c: int = 1) -> "LaurentPoly":
        if c == 0:
            return cls(len(exps))
        return cls(len(exps), {tuple(exps): c})

    @classmethod
    def var(cls, arity: int, slot: int, exp: int = 1, c: int = 1) -> "LaurentPoly":
        e = [0] * arity
        e[slot] = exp
        return cls.monomial(tuple(e), c)

    @classmethod
    def t_power(cls, arity: int, exp: int, c: int = 1) -> "LaurentPoly":
        return cls.var(arity, 0, exp, c)

    # ---------- basic queries ----------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        z = (0,) * self.arity
        return len(self.terms) == 1 and self.terms.get(z) == 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_value(self):
        """The integer value if this is a constant, else None."""
        if not self.terms:
            return 0
        if len(self.terms) == 1:
            ((e, c),) = self.terms.items()
            if all(x == 0 for x in e):
                return c
        return None

    def sort_key(self):
        """Canonical hashable key: terms sorted by descending monomial order."""
        if self._key is None:
            self._key = (self.arity, tuple(sorted(self.terms.items(), reverse=True)))
        return self._key

    def leading(self):
        """(exponent tuple, coefficient) of the lex-largest monomial."""
        e = max(self.terms)
        return e, self.terms[e]

    def total_span(self) -> int:
        """max over terms of sum |e_i|; a degree bound for identity testing."""
        if not self.terms:
            return 0
        return max(sum(abs(x) for x in e) for e in self.terms)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self):
        return hash(self.sort_key())

    def __bool__(self):
        return bool(self.terms)

    # ---------- ring operations ----------

    def _check(self, other: "LaurentPoly"):
        if self.arity != other.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        if not self.terms:
            return other
        if not other.terms:
            return self
        terms = dict(self.terms)
        for e, c in other.terms.items():
            v = terms.get(e, 0) + c
            if v:
                terms[e] = v
            elif e in terms:
                del terms[e]
        return LaurentPoly(self.arity, terms)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.arity, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        if not self.terms or not other.terms:
            return LaurentPoly(self.arity)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                v = out.get(e, 0) + ca * cb
                if v:
                    out[e] = v
                elif e in out:
                    del out[e]
        return LaurentPoly(self.arity, out)

    def scale(self, c: int) -> "LaurentPoly":
        if c == 0:
            return LaurentPoly(self.arity)
        if c == 1:
            return self
        return LaurentPoly(self.arity, {e: k * c for e, k in self.terms.items()})

    def shift(self, exps: tuple) -> "LaurentPoly":
        """Multiply by the monomial with the given exponent tuple."""
        if all(x == 0 for x in exps):
            return self
        return LaurentPoly(
            self.arity,
            {tuple(x + y for x, y in zip(e, exps)): c for e, c in self.terms.items()},
        )

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = LaurentPoly.const(self.arity, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # ---------- content and division ----------

    def int_content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = gcd(g, c)
            if g == 1:
                return 1
        return g

    def monomial_content(self) -> tuple:
        """Componentwise min of exponent tuples (zero tuple for the zero poly)."""
        if not self.terms:
            return (0,) * self.arity
        mins = None
        for e in self.terms:
            if mins is None:
                mins = list(e)
            else:
                for i, x in enumerate(e):
                    if x < mins[i]:
                        mins[i] = x
        return tuple(mins)

    def exact_divide(self, d: "LaurentPoly"):
        """Return self / d if d divides self exactly in the Laurent ring, else None."""
        self._check(d)
        if not d.terms:
            raise ZeroDivisionError("division by zero polynomial")
        if not self.terms:
            return LaurentPoly(self.arity)
        # Strip monomial content so divisibility reduces to the true-polynomial case.
        mc_n, mc_d = self.monomial_content(), d.monomial_content()
        num = self.shift(tuple(-x for x in mc_n))
        den = d.shift(tuple(-x for x in mc_d))
        elead = max(den.terms)
        clead = den.terms[elead]
        cur = dict(num.terms)
        quo: dict = {}
        while cur:
            e = max(cur)
            c = cur[e]
            qe = tuple(x - y for x, y in zip(e, elead))
            if any(x < 0 for x in qe):
                return None
            qc, r = divmod(c, clead)
            if r:
                return None
            quo[qe] = qc
            for ed, cd in den.terms.items():
                k = tuple(x + y for x, y in zip(qe, ed))
                v = cur.get(k, 0) - qc * cd
                if v:
                    cur[k] = v
                elif k in cur:
                    del cur[k]
        shift_back = tuple(x - y for x, y in zip(mc_n, mc_d))
        return LaurentPoly(self.arity, quo).shift(shift_back)

    # ---------- substitutions ----------

    def weyl(self, matrix) -> "LaurentPoly":
        """Apply a Weyl group element to the characters: z^lam -> z^(M lam), t fixed.

        matrix is an n x n tuple-of-tuples acting on fundamental-weight
        coordinates (column vectors).
        """
        n = self.arity - 1
        out: dict = {}
        for e, c in self.terms.items():
            lam = e[1:]
            new = tuple(
                sum(matrix[i][j] * lam[j] for j in range(n)) for i in range(n)
            )
            k = (e[0],) + new
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            elif k in out:
                del out[k]
        return LaurentPoly(self.arity, out)

    def dualize(self, invert_t: bool = True, invert_chars: bool = True) -> "LaurentPoly":
        """Substitution t -> t^-1 and/or z_i -> z_i^-1."""
        if not invert_t and not invert_chars:
            return self
        out = {}
        for e, c in self.terms.items():
            t = -e[0] if invert_t else e[0]
            rest = tuple(-x for x in e[1:]) if invert_chars else e[1:]
            out[(t,) + rest] = c
        return LaurentPoly(self.arity, out)

    def embed(self, arity: int, slots: tuple) -> "LaurentPoly":
        """Re-embed into a ring of the given arity, slot i -> slots[i]."""
        out = {}
        for e, c in self.terms.items():
            k = [0] * arity
            for i, x in enumerate(e):
                k[slots[i]] = x
            out[tuple(k)] = c
        return LaurentPoly(arity, out)

    # ---------- evaluation ----------

    def eval_mod(self, point: tuple, p: int) -> int:
        """Evaluate at a tuple of residues (one per slot, all nonzero) mod p."""
        total = 0
        for e, c in self.terms.items():
            v = c % p
            for x, base in zip(e, point):
                if x:
                    v = v * pow(base, x, p) % p
            total = (total + v) % p
        return total

    # ---------- text form ----------

    def format(self, names: list | None = None) -> str:
        """Canonical text form: terms in descending monomial order.

        Each term prints as `c * t^a * z1^b1 * ...`, omitting factors with
        zero exponent, `^1` on single powers, and `c *` when c is 1 and at
        least one variable factor is present.
        """
        if not self.terms:
            return "0"
        if names is None:
            names = ["t"] + [f"z{i}" for i in range(1, self.arity)]
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            factors = []
            for name, x in zip(names, e):
                if x == 1:
                    factors.append(name)
                elif x != 0:
                    factors.append(f"{name}^{x}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append(" * ".join(factors))
            elif c == -1:
                parts.append("-" + " * ".join(factors))
            else:
                parts.append(f"{c} * " + " * ".join(factors))
        out = parts[0]
        for term in parts[1:]:
            if term.startswith("-"):
                out += " - " + term[1:]
            else:
                out += " + " + term
        return out

    def __repr__(self):
        return f"LaurentPoly({self.format()})"


_TERM_FACTOR = re.compile(r"^(t|z(\d+))(?:\^(-?\d+))?$")


def parse_poly(text: str, arity: int) -> LaurentPoly:
    """Parse the canonical text form produced by LaurentPoly.format."""
    text = text.strip()
    if text == "0":
        return LaurentPoly(arity)
    # Split on top-level + and - (no parentheses occur inside a polynomial).
    chunks = []
    sign = 1
    buf = ""
    for tok in re.split(r"\s+([+-])\s+", text):
        if tok == "+" or tok == "-":
            chunks.append((sign, buf))
            sign = 1 if tok == "+" else -1
        else:
            buf = tok
    chunks.append((sign, buf))
    out = LaurentPoly(arity)
    for sg, chunk in chunks:
        chunk = chunk.strip()
        if chunk.startswith("-"):
            sg = -sg
            chunk = chunk[1:].strip()
        coeff = sg
        exps = [0] * arity
        for factor in chunk.split("*"):
            factor = factor.strip()
            if re.fullmatch(r"-?\d+", factor):
                coeff *= int(factor)
                continue
            m = _TERM_FACTOR.match(factor)
            if not m:
                raise ValueError(f"bad factor {factor!r} in {text!r}")
            slot = 0 if m.group(1) == "t" else int(m.group(2))
            if slot >= arity:
                raise ValueError(f"variable {factor!r} out of range for arity {arity}")
            exps[slot] += int(m.group(3)) if m.group(3) else 1
        out = out + LaurentPoly.monomial(tuple(exps), coeff)
    return out
