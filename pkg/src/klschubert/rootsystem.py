"""Finite crystallographic root systems, Weyl groups, Bruhat order, parabolics.

Weights are stored in fundamental-weight coordinates throughout; the simple
root alpha_j is the j-th column of the Cartan matrix, which is the single
source of truth for the Weyl action.  Group elements are identified by their
integer action matrix on these coordinates and interned in the enumerating
RootSystem, so equality is object identity and hashing is by index.

Enumeration is breadth-first from the identity, which makes element indices,
cached reduced words, and all downstream serialization deterministic.
"""

from __future__ import annotations

from collections import deque

from .laurent import LaurentPoly

__all__ = ["CartanData", "RootSystem", "WeylElt", "Root", "cartan_type_a"]

DEFAULT_SIZE_CAP = 50_000


def cartan_type_a(n: int):
    """Cartan matrix of type A_n."""
    return tuple(
        tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n))
        for i in range(n)
    )


class CartanData:
    __slots__ = ("rank", "cartan", "type_label")

    def __init__(self, cartan, type_label: str = ""):
        cartan = tuple(tuple(int(x) for x in row) for row in cartan)
        n = len(cartan)
        for i, row in enumerate(cartan):
            if len(row) != n:
                raise ValueError("Cartan matrix must be square")
            if row[i] != 2:
                raise ValueError("Cartan diagonal entries must be 2")
            for j, x in enumerate(row):
                if i != j and x > 0:
                    raise ValueError("Cartan off-diagonal entries must be <= 0")
        self.rank = n
        self.cartan = cartan
        self.type_label = type_label or f"rank{n}"

    @classmethod
    def type_a(cls, n: int) -> "CartanData":
        return cls(cartan_type_a(n), "A")


class Root:
    """A root, carried in both simple-root and fundamental-weight coordinates."""

    __slots__ = ("simple", "weight", "positive", "coweight_pairing")

    def __init__(self, simple: tuple, weight: tuple, coweight_pairing: tuple):
        self.simple = simple
        self.weight = weight
        # pairing vector gamma with <lam, alpha^vee> = gamma . lam (fund. coords)
        self.coweight_pairing = coweight_pairing
        self.positive = all(x >= 0 for x in simple)

    def __eq__(self, other):
        return isinstance(other, Root) and self.weight == other.weight

    def __hash__(self):
        return hash(self.weight)

    def __neg__(self):
        return Root(
            tuple(-x for x in self.simple),
            tuple(-x for x in self.weight),
            tuple(-x for x in self.coweight_pairing),
        )

    def __repr__(self):
        return f"Root(simple={self.simple})"


class WeylElt:
    __slots__ = ("system", "idx")

    def __init__(self, system: "RootSystem", idx: int):
        self.system = system
        self.idx = idx

    @property
    def matrix(self):
        return self.system._matrices[self.idx]

    @property
    def length(self) -> int:
        return self.system._lengths[self.idx]

    @property
    def word(self) -> tuple:
        """A reduced word (0-based simple reflection indices)."""
        return self.system._words[self.idx]

    @property
    def sign(self) -> int:
        return -1 if self.length % 2 else 1

    def inverse(self) -> "WeylElt":
        return self.system.elements[self.system._inverse[self.idx]]

    def __mul__(self, other: "WeylElt") -> "WeylElt":
        if other.system is not self.system:
            raise ValueError("elements of different Weyl groups")
        return self.system.product(self, other)

    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return self.idx

    def act_weight(self, lam: tuple) -> tuple:
        m = self.matrix
        n = len(lam)
        return tuple(sum(m[i][j] * lam[j] for j in range(n)) for i in range(n))

    def one_line(self):
        """One-line permutation for type A (None for other types)."""
        if self.system.cartan_data.type_label != "A":
            return None
        n = self.system.rank + 1
        perm = list(range(1, n + 1))
        for letter in reversed(self.word):
            a, b = letter + 1, letter + 2
            for k in range(n):
                if perm[k] == a:
                    perm[k] = b
                elif perm[k] == b:
                    perm[k] = a
        return perm

    def __repr__(self):
        if self.idx == 0:
            return "e"
        line = self.one_line()
        if line is not None:
            return "[" + ",".join(str(x) for x in line) + "]"
        return "*".join(f"s{i + 1}" for i in self.word)


class RootSystem:
    """Enumerated Weyl group with root data and Bruhat order."""

    def __init__(self, cartan_data: CartanData, size_cap: int = DEFAULT_SIZE_CAP):
        self.cartan_data = cartan_data
        self.rank = cartan_data.rank
        n = self.rank
        C = cartan_data.cartan
        ident = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        # simple reflection matrices on fundamental-weight coordinates
        self.simple_matrices = []
        for i in range(n):
            rows = []
            for r in range(n):
                row = list(ident[r])
                row[i] -= C[r][i]
                rows.append(tuple(row))
            self.simple_matrices.append(tuple(rows))

        self._matrices = [ident]
        self._by_matrix = {ident: 0}
        self._lengths = [0]
        self._words = [()]
        queue = deque([0])
        while queue:
            idx = queue.popleft()
            m = self._matrices[idx]
            for i in range(n):
                prod = _matmul(m, self.simple_matrices[i])
                j = self._by_matrix.get(prod)
                if j is None:
                    j = len(self._matrices)
                    if j >= size_cap:
                        raise ValueError(
                            f"Weyl group exceeds the size cap {size_cap}; "
                            "is the Cartan matrix of finite type?"
                        )
                    self._matrices.append(prod)
                    self._by_matrix[prod] = j
                    self._lengths.append(self._lengths[idx] + 1)
                    self._words.append(self._words[idx] + (i,))
                    queue.append(j)
        self.order = len(self._matrices)
        self.elements = [WeylElt(self, i) for i in range(self.order)]
        self.identity = self.elements[0]

        # Cayley tables for right and left multiplication by simple reflections.
        self.right_table = []
        self.left_table = []
        for idx in range(self.order):
            m = self._matrices[idx]
            self.right_table.append(
                tuple(self._by_matrix[_matmul(m, s)] for s in self.simple_matrices)
            )
            self.left_table.append(
                tuple(self._by_matrix[_matmul(s, m)] for s in self.simple_matrices)
            )
        self._inverse = [0] * self.order
        for idx in range(self.order):
            j = 0
            for i in self._words[idx]:
                j = self.left_table[j][i]
            self._inverse[idx] = j

        self._init_roots(C)
        w0 = max(range(self.order), key=lambda i: self._lengths[i])
        assert self._lengths.count(self._lengths[w0]) == 1, "longest element not unique"
        self.w0 = self.elements[w0]
        self._bruhat = {}
        self._wj_cache = {}

    # ---------- roots ----------

    def _init_roots(self, C):
        n = self.rank
        Ct = tuple(tuple(C[j][i] for j in range(n)) for i in range(n))
        seen = {}
        queue = deque()
        for i in range(n):
            simple = tuple(1 if k == i else 0 for k in range(n))
            coroot = simple
            seen[simple] = coroot
            queue.append(simple)
        while queue:
            beta = queue.popleft()
            gamma = seen[beta]
            for i in range(n):
                nb = list(beta)
                nb[i] -= sum(C[i][j] * beta[j] for j in range(n))
                nb = tuple(nb)
                if nb not in seen:
                    ng = list(gamma)
                    ng[i] -= sum(Ct[i][j] * gamma[j] for j in range(n))
                    seen[nb] = tuple(ng)
                    queue.append(nb)
        self.roots = []
        self._root_by_weight = {}
        for simple, coroot in sorted(seen.items()):
            weight = tuple(sum(C[r][j] * simple[j] for j in range(n)) for r in range(n))
            root = Root(simple, weight, coroot)
            self.roots.append(root)
            self._root_by_weight[weight] = root
        self.positive_roots = [r for r in self.roots if r.positive]
        self.positive_roots.sort(key=lambda r: (sum(r.simple), r.simple))
        if len(self.positive_roots) != self.w0_length_expected():
            raise AssertionError("positive root count disagrees with l(w0)")
        self.simple_roots = [
            self._root_by_weight[tuple(C[r][i] for r in range(self.rank))]
            for i in range(self.rank)
        ]

    def w0_length_expected(self):
        return max(self._lengths)

    def root_of_weight(self, weight: tuple):
        return self._root_by_weight.get(tuple(weight))

    def act_root(self, w: WeylElt, root: Root) -> Root:
        return self._root_by_weight[w.act_weight(root.weight)]

    def reflection(self, root: Root) -> WeylElt:
        """s_alpha as a group element; raises KeyError for a non-root."""
        if root.weight not in self._root_by_weight:
            raise KeyError(f"not a root: {root}")
        n = self.rank
        alpha, gamma = root.weight, root.coweight_pairing
        m = tuple(
            tuple((1 if r == c else 0) - alpha[r] * gamma[c] for c in range(n))
            for r in range(n)
        )
        return self.elements[self._by_matrix[m]]

    def inversions(self, w: WeylElt):
        """{alpha > 0 : w alpha < 0}; its size is l(w)."""
        out = [a for a in self.positive_roots if not self.act_root(w, a).positive]
        assert len(out) == w.length
        return out

    # ---------- group operations ----------

    def product(self, u: WeylElt, v: WeylElt) -> WeylElt:
        idx = u.idx
        for i in v.word:
            idx = self.right_table[idx][i]
        return self.elements[idx]

    def simple_reflection(self, i: int) -> WeylElt:
        return self.elements[self.right_table[0][i]]

    def right_descents(self, w: WeylElt):
        idx, L = w.idx, w.length
        return [i for i in range(self.rank) if self._lengths[self.right_table[idx][i]] < L]

    def left_descents(self, w: WeylElt):
        idx, L = w.idx, w.length
        return [i for i in range(self.rank) if self._lengths[self.left_table[idx][i]] < L]

    def reduced_word(self, w: WeylElt) -> tuple:
        return w.word

    def from_word(self, word) -> WeylElt:
        idx = 0
        for i in word:
            if not 0 <= i < self.rank:
                raise ValueError(f"simple reflection index {i + 1} out of range")
            idx = self.right_table[idx][i]
        return self.elements[idx]

    # ---------- Bruhat order ----------

    def bruhat_leq(self, u: WeylElt, v: WeylElt) -> bool:
        """u <= v via the descent recursion."""
        if u.system is not self or v.system is not self:
            raise ValueError("elements of a different group")
        lu, lv = u.length, v.length
        if lu > lv:
            return False
        if lu == lv:
            return u is v
        key = (u.idx, v.idx)
        memo = self._bruhat
        hit = memo.get(key)
        if hit is not None:
            return hit
        i = self.left_descents(v)[0]
        sv = self.elements[self.left_table[v.idx][i]]
        su = self.elements[self.left_table[u.idx][i]]
        if su.length < lu:
            result = self.bruhat_leq(su, sv)
        else:
            result = self.bruhat_leq(u, sv)
        memo[key] = result
        return result

    def bruhat_interval(self, w: WeylElt):
        """All v with v <= w, in (length, index) order."""
        out = [v for v in self.elements if self.bruhat_leq(v, w)]
        out.sort(key=lambda v: (v.length, v.idx))
        return out

    # ---------- parabolic combinatorics ----------

    def parabolic_elements(self, J) -> list:
        """Elements of W_J in BFS order."""
        J = tuple(sorted(J))
        hit = self._wj_cache.get(J)
        if hit is not None:
            return hit
        seen = {0}
        order = [0]
        queue = deque([0])
        while queue:
            idx = queue.popleft()
            for i in J:
                j = self.right_table[idx][i]
                if j not in seen:
                    seen.add(j)
                    order.append(j)
                    queue.append(j)
        out = [self.elements[i] for i in order]
        self._wj_cache[J] = out
        return out

    def longest_parabolic(self, J) -> WeylElt:
        return max(self.parabolic_elements(J), key=lambda w: w.length)

    def minimal_coset_reps(self, J) -> list:
        """W^J: minimal-length representatives of the left cosets W / W_J."""
        J = set(J)
        return [
            w
            for w in self.elements
            if not J.intersection(self.right_descents(w))
        ]

    def coset_decompose(self, w: WeylElt, J):
        """w = u * v with u in W^J, v in W_J and l(w) = l(u) + l(v)."""
        J = tuple(J)
        idx = w.idx
        v_word = []
        while True:
            for i in J:
                if self._lengths[self.right_table[idx][i]] < self._lengths[idx]:
                    v_word.append(i)
                    idx = self.right_table[idx][i]
                    break
            else:
                break
        u = self.elements[idx]
        v = self.from_word(reversed(v_word))
        return u, v

    def relative_longest(self, J, Jp) -> WeylElt:
        """w_{J/J'} = w_J w_{J'}, the longest element of W_J intersect W^{J'}."""
        if not set(Jp) <= set(J):
            raise ValueError("J' must be contained in J")
        return self.longest_parabolic(J) * self.longest_parabolic(Jp)

    def relative_reps(self, J, Jp) -> list:
        """W_J intersect W^{J'}: minimal reps of W_J / W_{J'}."""
        if not set(Jp) <= set(J):
            raise ValueError("J' must be contained in J")
        Jp = set(Jp)
        return [
            w
            for w in self.parabolic_elements(J)
            if not Jp.intersection(self.right_descents(w))
        ]

    def parabolic_roots(self, J):
        """Roots of Sigma_J (those with support inside J)."""
        J = set(J)
        return [
            r
            for r in self.roots
            if all(x == 0 or i in J for i, x in enumerate(r.simple))
        ]

    def poincare_polynomial(self, J) -> LaurentPoly:
        """P_J(t) = sum over W_J of t^l(v), as a polynomial in t alone."""
        out = LaurentPoly(1)
        for v in self.parabolic_elements(J):
            out = out + LaurentPoly.monomial((v.length,), 1)
        return out


def _matmul(a, b):
    n = len(a)
    rng = range(n)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in rng) for j in rng) for i in rng
    )
