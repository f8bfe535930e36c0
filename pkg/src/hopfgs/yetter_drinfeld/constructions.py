"""Free, cofree and twisted Yetter-Drinfeld modules and the free adjunction."""

from __future__ import annotations

from ..hopf_core.base import HopfAlgebra
from ..hopf_core.linear import ONE, add_into, add_term
from .modules import Bimodule, Comodule, RightModule, YDModule


def _algebra_basis(A: HopfAlgebra, max_degree):
    if A.degree_bound is None:
        return A.basis()
    return A.basis(max_degree)


def free_yd(V: Comodule, name: str | None = None) -> YDModule:
    """``V [x] A``: right multiplication and
    ``v (x) a -> v0 (x) a2 (x) S(a1) v1 a3``."""
    A = V.algebra

    def basis(max_degree=None):
        return [(v, a) for v in V.basis() for a in _algebra_basis(A, max_degree)]

    def action(key, b):
        v, a = key
        return {(v, k): c for k, c in A.mul_basis(a, b).items()}

    def coaction(key):
        v, a = key
        out: dict = {}
        for (v0, x), c in V.coaction_basis(v).items():
            for (a1, a2, a3), d in A.comul2_basis(a).items():
                for z, e in A.conj_basis(a1, x, a3).items():
                    add_term(out, ((v0, a2), z), c * d * e)
        return out

    return YDModule(A, basis, action, coaction, name or f"{V.name}[x]A", degree=lambda k: A.degree(k[1]))


def cofree_yd(M: RightModule, name: str | None = None) -> YDModule:
    """``M # A``: coaction ``id (x) Delta`` and
    ``(x (x) a) <- b = x.b2 (x) S(b1) a b3``."""
    A = M.algebra

    def basis(max_degree=None):
        return [(m, a) for m in M.keys for a in _algebra_basis(A, max_degree)]

    def action(key, b):
        m, a = key
        out: dict = {}
        for (b1, b2, b3), c in A.comul2_basis(b).items():
            acted = M.action_basis(m, b2)
            if not acted:
                continue
            leg = A.conj_basis(b1, a, b3)
            for m2, d in acted.items():
                for z, e in leg.items():
                    add_term(out, (m2, z), c * d * e)
        return out

    def coaction(key):
        m, a = key
        return {((m, a1), a2): c for (a1, a2), c in A.comul_basis(a).items()}

    return YDModule(A, basis, action, coaction, name or f"{M.name}#A", degree=lambda k: A.degree(k[1]))


def trivial_yd(A: HopfAlgebra) -> YDModule:
    """``C`` with ``1 <- a = eps(a)`` and ``1 -> 1 (x) 1``."""
    one = A.one()

    def action(v, a):
        e = A.counit_basis(a)
        return {v: e} if e != 0 else {}

    return YDModule(A, [()], action, lambda v: {(v, k): c for k, c in one.items()}, "C")


def coad_power(A: HopfAlgebra, n: int) -> YDModule:
    """``A^[x]n = A^[x](n-1) [x] A`` on keys ``(a_1, ..., a_n)``.

    The coaction is ``S(a_1(1) ... a_n(1)) a_1(3) ... a_n(3)`` on the last
    leg and the action is right multiplication on the last tensor factor.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return trivial_yd(A)
    lower = coad_power(A, n - 1)

    def basis(max_degree=None):
        keys = _algebra_basis(A, max_degree)
        out = [()]
        for _ in range(n):
            out = [t + (k,) for t in out for k in keys]
        return out

    def action(t, b):
        return {t[:-1] + (k,): c for k, c in A.mul_basis(t[-1], b).items()}

    def coaction(t):
        head, a = t[:-1], t[-1]
        out: dict = {}
        for (s, x), c in lower.coaction_basis(head).items():
            for (a1, a2, a3), d in A.comul2_basis(a).items():
                for z, e in A.conj_basis(a1, x, a3).items():
                    add_term(out, (s + (a2,), z), c * d * e)
        return out

    return YDModule(A, basis, action, coaction, f"{A.name}^[x]{n}",
                    degree=lambda t: sum(A.degree(k) for k in t))


def twist_bimodule(M: Bimodule, name: str | None = None) -> YDModule:
    """``M' # A`` on ``M (x) A``: coaction ``m (x) a -> m (x) a1 (x) a2`` and
    ``(m (x) a) <- b = S(b2).m.b3 (x) S(b1) a b4``."""
    A = M.algebra
    if A.degree_bound is not None:
        raise ValueError("the twisted bimodule construction needs a finite-dimensional algebra")
    keys = [(i, a) for i in range(M.dim) for a in A.basis()]

    def action(key, b):
        i, a = key
        out: dict = {}
        for (b1, b2, b3, b4), c in A.comul3_basis(b).items():
            mid = M.act_left(A.antipode_basis(b2), {i: ONE})
            acted = M.act_right(mid, {b3: ONE})
            if not acted:
                continue
            leg = A.conj_basis(b1, a, b4)
            for j, d in acted.items():
                for z, e in leg.items():
                    add_term(out, (j, z), c * d * e)
        return out

    def coaction(key):
        i, a = key
        return {((i, a1), a2): c for (a1, a2), c in A.comul_basis(a).items()}

    return YDModule(A, keys, action, coaction, name or f"{M.name}'#{A.name}")


# -- free adjunction ------------------------------------------------------------


def extend_to_free(f, X: YDModule):
    """``Hom^A(V, X) -> Hom_YD(V [x] A, X)``, ``f~(v (x) a) = f(v) <- a``.

    ``f`` maps V basis keys to X vectors; the result acts on ``(v, a)`` keys.
    """

    def ft(key):
        v, a = key
        return X.act(f(v), {a: ONE})

    return ft


def restrict_to_generators(F, A: HopfAlgebra):
    """Inverse converter: ``F -> F(- (x) 1)``."""
    one = A.one()

    def f(v):
        out: dict = {}
        for k, c in one.items():
            add_into(out, F((v, k)), c)
        return out

    return f


def free_map(f, V: Comodule, A: HopfAlgebra):
    """``f (x) id: V [x] A -> W [x] A`` for a comodule map ``f`` (functoriality)."""

    def g(key):
        v, a = key
        return {(w, a): c for w, c in f(v).items()}

    return g
