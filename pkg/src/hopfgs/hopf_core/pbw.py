"""Rewriting kernel for the universal Hopf algebra ``B(E)`` of a bilinear form.

``B(E)`` is generated by the entries ``u_ij`` of an ``n x n`` matrix ``u``
subject to ``E^-1 u^t E u = I = u E^-1 u^t E``.  The relations are expanded
from ``E``, oriented under the degree-lexicographic order with generator
order ``u_11 < u_12 < ... < u_nn`` (``a < b < c < d`` for ``n = 2``) and
completed by overlap resolution up to a degree bound.

Words are tuples of generator indices ``i*n + j``.  Polynomials are dicts
``{word: scalar}``.
"""

from __future__ import annotations

import itertools
import sys
import threading
from dataclasses import dataclass, field
from fractions import Fraction

from ..exact_linalg.scalars import RationalFunction, simplify
from .base import DegreeOverflowError, HopfAlgebra
from .finite import cyclic_group, group_algebra
from .linear import ONE, ZERO, add_into, add_term

# normal forms recurse once per rewrite step
sys.setrecursionlimit(max(sys.getrecursionlimit(), 10000))


class RewriteError(ValueError):
    pass


class CompletionBudgetError(RewriteError):
    """Overlap completion produced more rules than the budget allows."""


def word_key(w: tuple) -> tuple:
    """Sort key of the degree-lexicographic order."""
    return (len(w), w)


def leading_word(poly: dict) -> tuple:
    return max(poly, key=word_key)


def _mat_inverse(m):
    """Gauss-Jordan inverse over the scalar field; raises on singular input."""
    n = len(m)
    a = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            raise RewriteError("E is singular")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [[simplify(x) for x in row[n:]] for row in a]


def matrix_relations(E) -> list[dict]:
    """The ``2 n^2`` relations ``E^-1 u^t E u - I`` and ``u E^-1 u^t E - I``."""
    n = len(E)
    if n < 2 or any(len(row) != n for row in E):
        raise RewriteError("E must be a square matrix of size n >= 2")
    Einv = _mat_inverse(E)
    g = lambda i, j: i * n + j  # noqa: E731
    rels = []
    for i in range(n):
        for j in range(n):
            # (E^-1 u^t E u)_ij = sum_{k,l,m} Einv_ik u_lk E_lm u_mj
            p: dict = {}
            for k in range(n):
                for l in range(n):
                    for m in range(n):
                        c = Einv[i][k] * E[l][m]
                        if c != 0:
                            add_term(p, (g(l, k), g(m, j)), c)
            if i == j:
                add_term(p, (), -ONE)
            rels.append(p)
    for i in range(n):
        for j in range(n):
            # (u E^-1 u^t E)_ij = sum_{k,l,m} u_ik Einv_kl u_ml E_mj
            p = {}
            for k in range(n):
                for l in range(n):
                    for m in range(n):
                        c = Einv[k][l] * E[m][j]
                        if c != 0:
                            add_term(p, (g(i, k), g(m, l)), c)
            if i == j:
                add_term(p, (), -ONE)
            rels.append(p)
    return [{w: simplify(c) for w, c in r.items()} for r in rels]


@dataclass
class RewriteSystem:
    """Ordered rules ``lead -> rhs`` with ``rhs`` strictly below ``lead``."""

    ngens: int
    names: tuple[str, ...]
    rules: dict[tuple, dict]
    relations: list[dict] = field(default_factory=list, repr=False)
    degree_bound: int = 6

    def __post_init__(self):
        self._by_len = sorted({len(l) for l in self.rules})
        self._memo: dict = {}
        self._lock = threading.Lock()
        for lead, rhs in self.rules.items():
            if any(word_key(w) >= word_key(lead) for w in rhs):
                raise RewriteError(f"rule for {self.word_name(lead)} does not decrease the order")

    # -- words ------------------------------------------------------------
    def word_name(self, w: tuple) -> str:
        if not w:
            return "1"
        parts = []
        for g, grp in itertools.groupby(w):
            k = len(list(grp))
            parts.append(self.names[g] + (f"^{k}" if k > 1 else ""))
        return "*".join(parts)

    def find_redex(self, w: tuple):
        """Leftmost occurrence ``(pos, lead)`` of a rule's leading word."""
        for pos in range(len(w)):
            for L in self._by_len:
                if pos + L <= len(w) and w[pos:pos + L] in self.rules:
                    return pos, w[pos:pos + L]
        return None

    def is_normal(self, w: tuple) -> bool:
        return self.find_redex(w) is None

    # -- reduction --------------------------------------------------------
    def reduce_word(self, w: tuple) -> dict:
        """Normal form of a single word (memoized, thread-safe)."""
        try:
            return self._memo[w]
        except KeyError:
            pass
        hit = self.find_redex(w)
        if hit is None:
            out = {w: ONE}
        else:
            pos, lead = hit
            pre, post = w[:pos], w[pos + len(lead):]
            out = {}
            for v, c in self.rules[lead].items():
                add_into(out, self.reduce_word(pre + v + post), c)
        with self._lock:
            self._memo.setdefault(w, out)
        return self._memo[w]

    def reduce(self, poly: dict) -> dict:
        out: dict = {}
        for w, c in poly.items():
            add_into(out, self.reduce_word(w), c)
        return out

    # -- confluence -------------------------------------------------------
    def overlaps(self, max_degree: int):
        """Overlap ambiguities ``(word, lead1, pos1, lead2, pos2)`` of length <= max_degree."""
        leads = sorted(self.rules, key=word_key)
        for l1 in leads:
            for l2 in leads:
                for k in range(1, min(len(l1), len(l2))):
                    if l1[-k:] == l2[:k]:
                        w = l1 + l2[k:]
                        if len(w) <= max_degree:
                            yield w, l1, 0, l2, len(l1) - k
                if l1 != l2 and len(l2) < len(l1):
                    for pos in range(len(l1) - len(l2) + 1):
                        if l1[pos:pos + len(l2)] == l2 and len(l1) <= max_degree:
                            yield l1, l1, 0, l2, pos

    def rewrite_at(self, w: tuple, lead: tuple, pos: int) -> dict:
        out: dict = {}
        for v, c in self.rules[lead].items():
            add_term(out, w[:pos] + v + w[pos + len(lead):], c)
        return out

    def check_confluence(self, max_degree: int | None = None) -> list[tuple]:
        """All unresolved overlaps up to ``max_degree``, as ``(word, difference)``."""
        max_degree = self.degree_bound if max_degree is None else max_degree
        bad = []
        for w, l1, p1, l2, p2 in self.overlaps(max_degree):
            diff = self.reduce(self.rewrite_at(w, l1, p1))
            add_into(diff, self.reduce(self.rewrite_at(w, l2, p2)), -ONE)
            if diff:
                bad.append((w, diff))
        return bad

    def check_diamond(self, max_degree: int) -> list[tuple]:
        """Exhaustive check: every one-step rewrite of every word of length
        <= max_degree has the same normal form as the word itself."""
        bad = []
        for L in range(max_degree + 1):
            for w in itertools.product(range(self.ngens), repeat=L):
                target = self.reduce_word(w)
                for pos in range(L):
                    for RL in self._by_len:
                        lead = w[pos:pos + RL]
                        if len(lead) == RL and lead in self.rules:
                            got = self.reduce(self.rewrite_at(w, lead, pos))
                            if got != target:
                                bad.append((w, pos))
        return bad

    def parity_preserving(self) -> bool:
        return all(len(w) % 2 == len(l) % 2 for l, rhs in self.rules.items() for w in rhs)

    def degree_homogeneous(self) -> bool:
        return all(len(w) == len(l) for l, rhs in self.rules.items() for w in rhs)

    # -- standard monomials -----------------------------------------------
    def normal_words(self, max_degree: int) -> list[tuple]:
        """Normal words of length <= max_degree in degree-lex order."""
        out = [()]
        layer = [()]
        for _ in range(max_degree):
            nxt = []
            for w in layer:
                for g in range(self.ngens):
                    v = w + (g,)
                    if not any(v[len(v) - L:] in self.rules for L in self._by_len if L <= len(v)):
                        nxt.append(v)
            nxt.sort()
            out.extend(nxt)
            layer = nxt
        return out

    def standard_counts(self, max_degree: int) -> list[int]:
        counts = [0] * (max_degree + 1)
        for w in self.normal_words(max_degree):
            counts[len(w)] += 1
        return counts

    def rules_table(self) -> list[tuple[str, str]]:
        from ..exact_linalg.scalars import format_scalar

        rows = []
        for lead in sorted(self.rules, key=word_key):
            rhs = self.rules[lead]
            terms = []
            for w in sorted(rhs, key=word_key, reverse=True):
                c = format_scalar(rhs[w])
                c = f"({c})" if " " in c else c
                terms.append(c if not w else f"{c}*{self.word_name(w)}")
            rows.append((self.word_name(lead), " + ".join(terms) or "0"))
        return rows


def _generator_names(n: int) -> tuple[str, ...]:
    if n == 2:
        return ("a", "b", "c", "d")
    return tuple(f"u{i + 1}{j + 1}" for i in range(n) for j in range(n))


def _complete(ngens, relations, D, budget):
    """Overlap completion with interreduction; returns the rule dict."""
    rules: dict[tuple, dict] = {}
    names = tuple(str(i) for i in range(ngens))
    pending = [dict(r) for r in relations if r]
    checked: set = set()
    while True:
        while pending:
            sys_ = RewriteSystem(ngens, names, rules, degree_bound=D)
            polys = [p for p in (sys_.reduce(p) for p in pending) if p]
            pending = []
            if not polys:
                break
            # add the polynomial with the smallest leading word first
            polys.sort(key=lambda p: word_key(leading_word(p)))
            p = polys[0]
            lead = leading_word(p)
            inv = 1 / p[lead]
            rhs = {w: simplify(-c * inv) for w, c in p.items() if w != lead}
            # rules made redundant by the new lead are re-queued
            for old in list(rules):
                if any(old[i:i + len(lead)] == lead for i in range(len(old) - len(lead) + 1)):
                    poly = dict(rules.pop(old))
                    poly = {w: -c for w, c in poly.items()}
                    add_term(poly, old, ONE)
                    polys.append(poly)
            rules[lead] = rhs
            if len(rules) > budget:
                raise CompletionBudgetError(f"completion exceeded {budget} rules at degree {len(lead)}")
            sys_ = RewriteSystem(ngens, names, rules, degree_bound=D)
            for old in list(rules):
                rules[old] = {w: simplify(c) for w, c in sys_.reduce(rules[old]).items()}
            pending = polys[1:]
        sys_ = RewriteSystem(ngens, names, rules, degree_bound=D)
        for w, l1, p1, l2, p2 in sys_.overlaps(D):
            key = (w, l1, p1, l2, p2)
            if key in checked:
                continue
            diff = sys_.reduce(sys_.rewrite_at(w, l1, p1))
            add_into(diff, sys_.reduce(sys_.rewrite_at(w, l2, p2)), -ONE)
            checked.add(key)
            if diff:
                pending.append(diff)
        if not pending:
            return rules


def derive_be_relations(E, D: int = 6, budget: int = 200) -> RewriteSystem:
    """Rewrite system of ``B(E)``, completed on overlaps of degree <= D."""
    n = len(E)
    if n < 2:
        raise RewriteError("B(E) needs n >= 2")
    E = [[simplify(x) for x in row] for row in E]
    rels = matrix_relations(E)
    rules = _complete(n * n, rels, D, budget)
    return RewriteSystem(n * n, _generator_names(n), rules, relations=rels, degree_bound=D)


def e_q(q) -> list[list]:
    """``E_q = [[0, 1], [-1/q, 0]]``."""
    if q == 0:
        raise ValueError("q must be nonzero")
    return [[ZERO, ONE], [simplify(-1 / q), ZERO]]


def check_q(q) -> None:
    if q == 0:
        raise ValueError("q must be nonzero")
    if q + 1 / q == 0:
        raise ValueError("q + 1/q must be nonzero")


class PBWAlgebra(HopfAlgebra):
    """``B(E)`` on its PBW basis of normal words, truncated at degree D.

    Products whose total degree exceeds D raise :class:`DegreeOverflowError`.
    """

    def __init__(self, E, degree_bound: int = 6, name: str | None = None, q=None, budget: int = 200):
        super().__init__()
        self.E = [[simplify(x) for x in row] for row in E]
        self.n = len(self.E)
        self.Einv = _mat_inverse(self.E)
        self.degree_bound = degree_bound
        self.q = q
        self.rewriting = derive_be_relations(self.E, degree_bound, budget)
        self.names = self.rewriting.names
        self.name = name or "B(E)"
        self.ngens = self.n * self.n

    @classmethod
    def quantum_sl2(cls, q, degree_bound: int = 6) -> "PBWAlgebra":
        check_q(q)
        return cls(e_q(q), degree_bound, name="O(SL_q(2))", q=q)

    @classmethod
    def from_json(cls, obj: dict) -> "PBWAlgebra":
        """``{"bilinear_form_E": [[...]], "q": "2", "degree_bound": 6}``.

        Entries may mention ``q``; with ``"q": "symbolic"`` (or no ``q``) they stay in Q(q).
        """
        from ..exact_linalg.scalars import parse_scalar

        try:
            raw_q = obj.get("q", "symbolic")
            q = symbolic_q() if str(raw_q) == "symbolic" else parse_scalar(str(raw_q))
            qv = None if str(raw_q) == "symbolic" else q
            E = [[parse_scalar(str(x), q=qv) for x in row] for row in obj["bilinear_form_E"]]
            D = int(obj.get("degree_bound", 6))
        except (KeyError, TypeError, AttributeError) as exc:
            raise ValueError(f"malformed bilinear form description: {exc}") from exc
        check_q(q)
        name = "O(SL_q(2))" if E == e_q(q) else None
        return cls(E, D, name=name, q=q)

    def gen(self, i: int, j: int) -> tuple:
        return (i * self.n + j,)

    def generator(self, name: str):
        return self.basis_element((self.names.index(name),))

    # -- basis ------------------------------------------------------------
    def basis(self, max_degree=None):
        D = self.degree_bound if max_degree is None else max_degree
        if D > self.degree_bound:
            raise DegreeOverflowError(f"degree {D} exceeds bound {self.degree_bound}")
        return self.rewriting.normal_words(D)

    def degree(self, key) -> int:
        return len(key)

    def key_name(self, key) -> str:
        return self.rewriting.word_name(key)

    def exponents(self, key) -> tuple[int, ...]:
        return tuple(key.count(g) for g in range(self.ngens))

    def _guard(self, deg: int):
        if deg > self.degree_bound:
            raise DegreeOverflowError(f"degree {deg} exceeds truncation bound {self.degree_bound}")

    def normal_form(self, poly: dict) -> dict:
        """Normal form of a combination of arbitrary words."""
        for w in poly:
            self._guard(len(w))
        return self.rewriting.reduce(poly)

    # -- structure --------------------------------------------------------
    def one(self):
        return {(): ONE}

    def mul_basis(self, x, y):
        self._guard(len(x) + len(y))
        return self.rewriting.reduce_word(x + y)

    def counit_basis(self, x):
        for g in x:
            i, j = divmod(g, self.n)
            if i != j:
                return ZERO
        return ONE

    def _comul_gen(self, g) -> dict:
        i, j = divmod(g, self.n)
        return {((i * self.n + k,), (k * self.n + j,)): ONE for k in range(self.n)}

    def comul_basis(self, x):
        self._guard(len(x))

        def build():
            if not x:
                return {((), ()): ONE}
            prev = self.comul_basis(x[:-1])
            out: dict = {}
            for (l, r), c in prev.items():
                for (gl, gr), d in self._comul_gen(x[-1]).items():
                    left = self.rewriting.reduce_word(l + gl)
                    right = self.rewriting.reduce_word(r + gr)
                    for lw, lc in left.items():
                        for rw, rc in right.items():
                            add_term(out, (lw, rw), c * d * lc * rc)
            return out

        return self._cached("comul", x, build)

    def _antipode_gen(self, g) -> dict:
        # S(u) = E^-1 u^t E, so S(u_ij) = sum_{k,l} Einv_ik u_lk E_lj
        i, j = divmod(g, self.n)
        out: dict = {}
        for k in range(self.n):
            for l in range(self.n):
                c = self.Einv[i][k] * self.E[l][j]
                if c != 0:
                    add_term(out, (l * self.n + k,), c)
        return out

    def antipode_basis(self, x):
        self._guard(len(x))

        def build():
            if not x:
                return {(): ONE}
            # anti-multiplicative: S(w g) = S(g) S(w)
            out: dict = {}
            head = self._antipode_gen(x[-1])
            for v, c in self.antipode_basis(x[:-1]).items():
                for h, d in head.items():
                    add_into(out, self.rewriting.reduce_word(h + v), c * d)
            return out

        return self._cached("antipode", x, build)

    # -- parity and the cocentral projection --------------------------------
    def parity_split(self, x: dict) -> tuple[dict, dict]:
        even = {w: c for w, c in x.items() if len(w) % 2 == 0}
        odd = {w: c for w, c in x.items() if len(w) % 2 == 1}
        return even, odd

    def even_basis(self, max_degree=None):
        return [w for w in self.basis(max_degree) if len(w) % 2 == 0]

    def cocentral_projection(self) -> "CocentralProjection":
        return CocentralProjection(self)

    def is_diagonal_word(self, w) -> bool:
        return all(divmod(g, self.n)[0] == divmod(g, self.n)[1] for g in w)


class EvenSubalgebra(HopfAlgebra):
    """``B_+``: the span of even normal words, a Hopf subalgebra of ``B(E)``."""

    def __init__(self, parent: PBWAlgebra):
        super().__init__()
        self.parent = parent
        self.name = parent.name.replace("SL", "PSL") if "SL" in parent.name else parent.name + "_+"
        self.degree_bound = parent.degree_bound
        self.q = parent.q

    def basis(self, max_degree=None):
        return self.parent.even_basis(max_degree)

    def degree(self, key):
        return len(key)

    def key_name(self, key):
        return self.parent.key_name(key)

    def one(self):
        return self.parent.one()

    def mul_basis(self, x, y):
        return self.parent.mul_basis(x, y)

    def comul_basis(self, x):
        return self.parent.comul_basis(x)

    def counit_basis(self, x):
        return self.parent.counit_basis(x)

    def antipode_basis(self, x):
        return self.parent.antipode_basis(x)


class CocentralProjection:
    """Hopf map ``p: B(E) -> CZ2``, ``u_ij -> delta_ij g``."""

    def __init__(self, algebra: PBWAlgebra):
        self.source = algebra
        self.target = group_algebra(cyclic_group(2))

    def basis_image(self, w) -> dict:
        if not self.source.is_diagonal_word(w):
            return {}
        return {len(w) % 2: ONE}

    def __call__(self, x: dict) -> dict:
        out: dict = {}
        for w, c in x.items():
            add_into(out, self.basis_image(w), c)
        return out

    def relation_images(self) -> list[dict]:
        """Images of the defining relations (all zero for a well-defined map)."""
        return [self(r) for r in self.source.rewriting.relations]

    def cocentrality_failures(self, max_degree: int) -> list[tuple]:
        """Basis words violating ``p(x1) (x) x2 = p(x2) (x) x1``."""
        bad = []
        for w in self.source.basis(max_degree):
            lhs: dict = {}
            rhs: dict = {}
            for (l, r), c in self.source.comul_basis(w).items():
                for g, d in self.basis_image(l).items():
                    add_term(lhs, (g, r), c * d)
                for g, d in self.basis_image(r).items():
                    add_term(rhs, (g, l), c * d)
            if lhs != rhs:
                bad.append(w)
        return bad

    def coinvariance_failures(self, x: dict) -> bool:
        """True when ``(id (x) p) Delta(x) != x (x) 1``."""
        out: dict = {}
        for w, c in x.items():
            for (l, r), d in self.source.comul_basis(w).items():
                for g, e in self.basis_image(r).items():
                    add_term(out, (l, g), c * d * e)
        return out != {(w, 0): c for w, c in x.items()}


def symbolic_q() -> RationalFunction:
    return RationalFunction.q()


def as_fraction(q) -> Fraction | RationalFunction:
    return simplify(q) if not isinstance(q, RationalFunction) else q
