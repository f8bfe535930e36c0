"""Comodules, modules, bimodules and Yetter-Drinfeld modules.

All structures are right-handed.  A Yetter-Drinfeld module ``V`` over ``A``
is a right module and right comodule with

    (v <- a)_(0) (x) (v <- a)_(1) = v_(0) <- a_(2) (x) S(a_(1)) v_(1) a_(3).

Carriers are given by basis keys; vectors are ``{key: scalar}`` dicts and
coactions return ``{(key, algebra_key): scalar}``.  Infinite carriers are
never materialized: ``basis(max_degree)`` enumerates a degree filtration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from ..hopf_core.base import HopfAlgebra
from ..hopf_core.linear import ONE, add_into, add_term
from ..reporting import Report


def _finite_basis(keys):
    keys = list(keys)
    return lambda max_degree=None: keys


@dataclass
class Comodule:
    """Right comodule given on basis keys."""

    algebra: HopfAlgebra
    keys: list
    coaction_basis: Callable
    name: str = "V"

    def basis(self, max_degree=None):
        return list(self.keys)

    def degree(self, key) -> int:
        return 0

    def coact(self, vec: dict) -> dict:
        out: dict = {}
        for v, c in vec.items():
            add_into(out, self.coaction_basis(v), c)
        return out

    @classmethod
    def from_table(cls, algebra, table: dict, name="V") -> "Comodule":
        """``table[key] = {(key', algebra_key): scalar}``."""
        table = {k: dict(v) for k, v in table.items()}
        return cls(algebra, list(table), lambda k: table[k], name)

    @classmethod
    def trivial(cls, algebra) -> "Comodule":
        one = algebra.one()
        return cls(algebra, [0], lambda k: {(0, a): c for a, c in one.items()}, "C")

    @classmethod
    def regular(cls, algebra) -> "Comodule":
        return cls(algebra, algebra.basis(), algebra.comul_basis, algebra.name)

    def tensor(self, other: "Comodule", name=None) -> "Comodule":
        """``V (x) W`` with ``v (x) w -> v0 (x) w0 (x) v1 w1``."""
        A = self.algebra

        def coact(key):
            v, w = key
            out: dict = {}
            for (v0, x), c in self.coaction_basis(v).items():
                for (w0, y), d in other.coaction_basis(w).items():
                    for z, e in A.mul_basis(x, y).items():
                        add_term(out, ((v0, w0), z), c * d * e)
            return out

        keys = [(v, w) for v in self.keys for w in other.keys]
        return Comodule(A, keys, _memoize(coact), name or f"{self.name}(x){other.name}")


def _memoize(fn):
    cache: dict = {}

    def wrapped(key):
        try:
            return cache[key]
        except KeyError:
            cache[key] = fn(key)
            return cache[key]

    wrapped.cache = cache
    return wrapped


def check_comodule(V, keys=None) -> Report:
    A = V.algebra
    keys = V.basis() if keys is None else keys
    rep = Report(f"comodule axioms for {V.name}")
    bad = []
    for v in keys:
        out: dict = {}
        for (v0, x), c in V.coaction_basis(v).items():
            add_term(out, v0, c * A.counit_basis(x))
        if out != {v: ONE}:
            bad.append(v)
    rep.add("counit", bad, len(keys))
    bad = []
    for v in keys:
        lhs: dict = {}
        rhs: dict = {}
        for (v0, x), c in V.coaction_basis(v).items():
            for (v00, y), d in V.coaction_basis(v0).items():
                add_term(lhs, (v00, y, x), c * d)
            for (x1, x2), d in A.comul_basis(x).items():
                add_term(rhs, (v0, x1, x2), c * d)
        if lhs != rhs:
            bad.append(v)
    rep.add("coassociativity", bad, len(keys))
    return rep


@dataclass
class RightModule:
    algebra: HopfAlgebra
    keys: list
    action_basis: Callable
    name: str = "M"

    def act(self, vec: dict, a: dict) -> dict:
        out: dict = {}
        for v, c in vec.items():
            for k, d in a.items():
                add_into(out, self.action_basis(v, k), c * d)
        return out

    @classmethod
    def trivial(cls, algebra) -> "RightModule":
        """``C_eps``: ``1 <- a = eps(a)``."""
        return cls(algebra, [0], lambda v, a: {0: algebra.counit_basis(a)} if algebra.counit_basis(a) else {}, "C_eps")

    @classmethod
    def regular(cls, algebra) -> "RightModule":
        """``A`` acting on itself by right multiplication (finite-dimensional ``A``)."""
        return cls(algebra, algebra.basis(), algebra.mul_basis, "A_reg")


class Bimodule:
    """Finite-dimensional ``A``-bimodule on basis ``0..dim-1``.

    ``left(a, i)`` and ``right(i, a)`` return vectors for basis keys ``a``.
    """

    def __init__(self, algebra: HopfAlgebra, dim: int, left: Callable, right: Callable, name: str = "M"):
        self.algebra = algebra
        self.dim = dim
        self._left = _memoize(lambda key: left(*key))
        self._right = _memoize(lambda key: right(*key))
        self.name = name

    def left(self, a, i) -> dict:
        return self._left((a, i))

    def right(self, i, a) -> dict:
        return self._right((i, a))

    def act_left(self, a: dict, vec: dict) -> dict:
        out: dict = {}
        for k, c in a.items():
            for i, d in vec.items():
                add_into(out, self.left(k, i), c * d)
        return out

    def act_right(self, vec: dict, a: dict) -> dict:
        out: dict = {}
        for i, d in vec.items():
            for k, c in a.items():
                add_into(out, self.right(i, k), c * d)
        return out

    def twisted_right(self, i, a) -> dict:
        """``e_i <- a = S(a_(1)) . e_i . a_(2)``."""
        A = self.algebra
        out: dict = {}
        for (a1, a2), c in A.comul_basis(a).items():
            mid = self.act_left(A.antipode_basis(a1), {i: ONE})
            add_into(out, self.act_right(mid, {a2: ONE}), c)
        return out

    # -- constructors ---------------------------------------------------------
    @classmethod
    def trivial(cls, A: HopfAlgebra) -> "Bimodule":
        """``C_eps`` on both sides."""
        return cls(
            A, 1,
            lambda a, i: {0: A.counit_basis(a)} if A.counit_basis(a) != 0 else {},
            lambda i, a: {0: A.counit_basis(a)} if A.counit_basis(a) != 0 else {},
            "trivial",
        )

    @classmethod
    def regular(cls, A: HopfAlgebra) -> "Bimodule":
        keys = A.basis()
        idx = {k: n for n, k in enumerate(keys)}
        return cls(
            A, len(keys),
            lambda a, i: {idx[k]: c for k, c in A.mul_basis(a, keys[i]).items()},
            lambda i, a: {idx[k]: c for k, c in A.mul_basis(keys[i], a).items()},
            "regular",
        )

    @classmethod
    def from_matrices(cls, A: HopfAlgebra, left: dict, right: dict, name="M") -> "Bimodule":
        """``left[a]`` and ``right[a]`` are dense matrices acting on column vectors.

        ``a . e_i = sum_j left[a][j][i] e_j`` and ``e_i . a = sum_j right[a][j][i] e_j``.
        """
        dim = len(next(iter(left.values())))

        def col(mat, i):
            return {j: mat[j][i] for j in range(dim) if mat[j][i] != 0}

        return cls(A, dim, lambda a, i: col(left[a], i), lambda i, a: col(right[a], i), name)

    def matrices(self) -> tuple[dict, dict]:
        keys = self.algebra.basis()
        L = {a: [[self.left(a, i).get(j, 0) for i in range(self.dim)] for j in range(self.dim)] for a in keys}
        R = {a: [[self.right(i, a).get(j, 0) for i in range(self.dim)] for j in range(self.dim)] for a in keys}
        return L, R


def check_bimodule(M: Bimodule) -> Report:
    A = M.algebra
    keys = A.basis()
    rep = Report(f"bimodule axioms for {M.name}")
    one = A.one()
    basis = [{i: ONE} for i in range(M.dim)]
    bad = [i for i, e in enumerate(basis) if M.act_left(one, e) != e or M.act_right(e, one) != e]
    rep.add("unital", bad, M.dim)
    bad = []
    for a, b in itertools.product(keys, repeat=2):
        ab = A.mul_basis(a, b)
        for i, e in enumerate(basis):
            if M.act_left(ab, e) != M.act_left({a: ONE}, M.act_left({b: ONE}, e)):
                bad.append(("left", a, b, i))
            if M.act_right(e, ab) != M.act_right(M.act_right(e, {a: ONE}), {b: ONE}):
                bad.append(("right", a, b, i))
            if M.act_right(M.act_left({a: ONE}, e), {b: ONE}) != M.act_left({a: ONE}, M.act_right(e, {b: ONE})):
                bad.append(("commute", a, b, i))
    rep.add("associative and commuting", bad, len(keys) ** 2 * M.dim)
    return rep


class YDModule:
    """Right-right Yetter-Drinfeld module given by evaluators.

    ``basis(max_degree)`` enumerates carrier keys (all of them for finite
    carriers), ``action_basis(v, a)`` and ``coaction_basis(v)`` evaluate the
    structure on basis keys.
    """

    def __init__(self, algebra, basis, action_basis, coaction_basis, name="Y", degree=None):
        self.algebra = algebra
        self._basis = basis if callable(basis) else _finite_basis(basis)
        self.action_basis = _memoize2(action_basis)
        self.coaction_basis = _memoize(coaction_basis)
        self.name = name
        self._degree = degree

    def basis(self, max_degree=None):
        return self._basis(max_degree)

    def degree(self, key) -> int:
        return self._degree(key) if self._degree else 0

    def act(self, vec: dict, a: dict) -> dict:
        out: dict = {}
        for v, c in vec.items():
            for k, d in a.items():
                add_into(out, self.action_basis(v, k), c * d)
        return out

    def coact(self, vec: dict) -> dict:
        out: dict = {}
        for v, c in vec.items():
            add_into(out, self.coaction_basis(v), c)
        return out

    def as_comodule(self) -> Comodule:
        return Comodule(self.algebra, self.basis(), self.coaction_basis, self.name)

    def tables(self, max_degree=None) -> tuple[dict, dict]:
        """Action and coaction tables restricted to a finite part (for comparisons)."""
        A = self.algebra
        keys = self.basis(max_degree)
        akeys = A.basis(max_degree) if A.degree_bound is not None else A.basis()
        act = {(v, a): self.action_basis(v, a) for v in keys for a in akeys}
        coact = {v: self.coaction_basis(v) for v in keys}
        return act, coact


def _memoize2(fn):
    cache: dict = {}

    def wrapped(v, a):
        key = (v, a)
        try:
            return cache[key]
        except KeyError:
            cache[key] = fn(v, a)
            return cache[key]

    return wrapped


def check_yd(Y: YDModule, vectors=None, algebra_keys=None, D: int | None = None,
             total_degree: int | None = None) -> Report:
    """Module, comodule and Yetter-Drinfeld compatibility on basis pairs.

    For graded carriers pass ``D`` (or explicit key lists) and optionally
    ``total_degree`` to keep only pairs with ``deg v + deg a`` below it.
    """
    A = Y.algebra
    vs = Y.basis(D) if vectors is None else list(vectors)
    if algebra_keys is None:
        algebra_keys = A.basis(D) if A.degree_bound is not None else A.basis()
    rep = Report(f"Yetter-Drinfeld axioms for {Y.name}")
    one = A.one()

    bad = [v for v in vs if Y.act({v: ONE}, one) != {v: ONE}]
    rep.add("unital action", bad, len(vs))

    rep.extend(check_comodule(Y.as_comodule(), vs))

    bad = []
    n = 0
    for v in vs:
        for a in algebra_keys:
            if total_degree is not None and Y.degree(v) + A.degree(a) > total_degree:
                continue
            n += 1
            lhs = Y.coact(Y.action_basis(v, a))
            rhs: dict = {}
            for (v0, x), c in Y.coaction_basis(v).items():
                for (a1, a2, a3), d in A.comul2_basis(a).items():
                    acted = Y.action_basis(v0, a2)
                    if not acted:
                        continue
                    leg = A.conj_basis(a1, x, a3)
                    for w, e in acted.items():
                        for z, f in leg.items():
                            add_term(rhs, (w, z), c * d * e * f)
            if lhs != rhs:
                bad.append((v, A.key_name(a)))
    rep.add("Yetter-Drinfeld compatibility", bad, n)
    return rep


def check_action_associative(Y: YDModule, vectors, algebra_keys) -> Report:
    A = Y.algebra
    rep = Report(f"action associativity for {Y.name}")
    bad = []
    n = 0
    for v in vectors:
        for a, b in itertools.product(algebra_keys, repeat=2):
            n += 1
            if Y.act(Y.action_basis(v, a), {b: ONE}) != Y.act({v: ONE}, A.mul_basis(a, b)):
                bad.append((v, a, b))
    rep.add("associativity", bad, n)
    return rep
