"""Common interface for Hopf algebras given on a basis."""

from __future__ import annotations

import threading
from fractions import Fraction

from .linear import ONE, ZERO, add_into, add_term


class DegreeOverflowError(ArithmeticError):
    """An operation would leave the truncated part of a graded basis."""


class HopfAlgebra:
    """A Hopf algebra presented on a basis of hashable keys.

    Subclasses provide the structure maps on basis keys; linear extensions,
    iterated coproducts and an :class:`Element` wrapper live here.  Elements
    are plain ``dict`` objects ``{key: scalar}`` internally.
    """

    name = "A"
    #: truncation bound for graded infinite-dimensional algebras, else None
    degree_bound: int | None = None

    def __init__(self):
        self._memo: dict = {}
        self._memo_lock = threading.Lock()

    # -- structure on basis keys (subclass responsibility) ----------------
    def basis(self, max_degree: int | None = None) -> list:
        raise NotImplementedError

    def degree(self, key) -> int:
        return 0

    def mul_basis(self, x, y) -> dict:
        raise NotImplementedError

    def comul_basis(self, x) -> dict:
        raise NotImplementedError

    def counit_basis(self, x):
        raise NotImplementedError

    def antipode_basis(self, x) -> dict:
        raise NotImplementedError

    @property
    def has_haar(self) -> bool:
        return False

    def haar_basis(self, x):
        raise ValueError(f"{self.name} has no Haar integral")

    def key_name(self, key) -> str:
        return str(key)

    # -- memoization ------------------------------------------------------
    def _cached(self, table: str, key, fn):
        slot = (table, key)
        try:
            return self._memo[slot]
        except KeyError:
            pass
        value = fn()
        with self._memo_lock:
            self._memo.setdefault(slot, value)
        return self._memo[slot]

    # -- linear extensions ------------------------------------------------
    def one(self) -> dict:
        raise NotImplementedError

    def mul(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for x, a in u.items():
            for y, b in v.items():
                add_into(out, self.mul_basis(x, y), a * b)
        return out

    def mul_many(self, *factors: dict) -> dict:
        out = self.one()
        for f in factors:
            out = self.mul(out, f)
        return out

    def comul(self, u: dict) -> dict:
        out: dict = {}
        for x, a in u.items():
            add_into(out, self.comul_basis(x), a)
        return out

    def counit(self, u: dict):
        total = ZERO
        for x, a in u.items():
            total = total + a * self.counit_basis(x)
        return total

    def antipode(self, u: dict) -> dict:
        out: dict = {}
        for x, a in u.items():
            add_into(out, self.antipode_basis(x), a)
        return out

    def haar(self, u: dict):
        total = ZERO
        for x, a in u.items():
            total = total + a * self.haar_basis(x)
        return total

    def comul2_basis(self, x) -> dict:
        """``(Delta (x) id) Delta(x)`` keyed by triples."""

        def build():
            out: dict = {}
            for (x1, x2), c in self.comul_basis(x).items():
                for (y1, y2), d in self.comul_basis(x1).items():
                    add_term(out, (y1, y2, x2), c * d)
            return out

        return self._cached("comul2", x, build)

    def comul3_basis(self, x) -> dict:
        """Three-fold coproduct keyed by 4-tuples."""

        def build():
            out: dict = {}
            for (x1, x2, x3), c in self.comul2_basis(x).items():
                for (y1, y2), d in self.comul_basis(x3).items():
                    add_term(out, (x1, x2, y1, y2), c * d)
            return out

        return self._cached("comul3", x, build)

    def conj_basis(self, a1, x, a3) -> dict:
        """``S(a1) x a3`` on basis keys (cached); the shape of every coadjoint leg."""

        def build():
            out: dict = {}
            for s, c in self.antipode_basis(a1).items():
                for k, d in self.mul_basis(s, x).items():
                    add_into(out, self.mul_basis(k, a3), c * d)
            return out

        return self._cached("conj", (a1, x, a3), build)

    def mul_keys(self, *keys) -> dict:
        """Product of basis elements, left to right."""
        out = self.one()
        for k in keys:
            nxt: dict = {}
            for x, a in out.items():
                add_into(nxt, self.mul_basis(x, k), a)
            out = nxt
        return out

    # -- elements ---------------------------------------------------------
    def element(self, terms: dict | None = None) -> "Element":
        return Element(self, terms or {})

    def basis_element(self, key) -> "Element":
        return Element(self, {key: ONE})


class Element:
    """An element of a :class:`HopfAlgebra` with arithmetic operators."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: HopfAlgebra, terms: dict):
        self.algebra = algebra
        self.terms = {k: (v if not isinstance(v, int) else Fraction(v)) for k, v in terms.items() if v != 0}

    def _wrap(self, terms):
        return Element(self.algebra, terms)

    def _other(self, other) -> dict:
        if isinstance(other, Element):
            if other.algebra is not self.algebra:
                raise ValueError("elements of different algebras")
            return other.terms
        return {k: v * other for k, v in self.algebra.one().items()} if other != 0 else {}

    def __add__(self, other):
        return self._wrap(add_into(dict(self.terms), self._other(other)))

    __radd__ = __add__

    def __neg__(self):
        return self._wrap({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self._wrap(add_into(dict(self.terms), self._other(other), -ONE))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Element):
            return self._wrap(self.algebra.mul(self.terms, self._other(other)))
        return self._wrap({k: v * other for k, v in self.terms.items()})

    def __rmul__(self, other):
        return self._wrap({k: other * v for k, v in self.terms.items()})

    def __pow__(self, k: int):
        out = self._wrap(self.algebra.one())
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.algebra is other.algebra and self.terms == other.terms
        return self.terms == self._other(other)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def counit(self):
        return self.algebra.counit(self.terms)

    def antipode(self) -> "Element":
        return self._wrap(self.algebra.antipode(self.terms))

    def coproduct(self) -> dict:
        return self.algebra.comul(self.terms)

    def degree(self) -> int:
        return max((self.algebra.degree(k) for k in self.terms), default=0)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, key=lambda k: (self.algebra.degree(k), str(k))):
            v = self.terms[k]
            name = self.algebra.key_name(k)
            parts.append(f"({v})*{name}" if name != "1" else f"({v})")
        return " + ".join(parts)
