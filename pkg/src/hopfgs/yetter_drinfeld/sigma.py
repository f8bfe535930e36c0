"""Adjoint subalgebra ``B_+ = B(E)^co CZ2`` and the section ``sigma``.

For ``F = E (E^t)^-1 = (alpha_ij)`` with ``t = tr F != 0`` the section is
``sigma(1) = 1``, ``sigma(g) = x = t^-1 sum_ij alpha_ij u_ij``.  It yields
the splitting ``mu iota = id`` of ``W [x] A`` inside ``(W [x] A) [x] B``.
"""

from __future__ import annotations

import random

from ..exact_linalg.scalars import simplify
from ..hopf_core.linear import ONE, ZERO, add_into, add_term
from ..hopf_core.pbw import PBWAlgebra, _mat_inverse
from ..reporting import Report
from .constructions import free_yd
from .modules import Comodule

E_KEY, G_KEY = 0, 1  # identity and generator of Z2 in the group algebra


# -- fundamental comodules -------------------------------------------------------


def fundamental_comodule(A: PBWAlgebra) -> Comodule:
    """``V``: ``e_j -> sum_i e_i (x) u_ij``."""
    n = A.n
    return Comodule(A, list(range(n)), lambda j: {(i, A.gen(i, j)): ONE for i in range(n)}, "V")


def dual_fundamental_comodule(A: PBWAlgebra) -> Comodule:
    """``V*``: ``e_j* -> sum_i e_i* (x) S(u_ji)``."""
    n = A.n

    def coact(j):
        out: dict = {}
        for i in range(n):
            for w, c in A.antipode_basis(A.gen(j, i)).items():
                add_term(out, (i, w), c)
        return out

    return Comodule(A, list(range(n)), coact, "V*")


def end_comodule(A: PBWAlgebra) -> Comodule:
    """``V* (x) V`` on keys ``(i, j) = e_i* (x) e_j``; a ``B_+``-comodule."""
    return dual_fundamental_comodule(A).tensor(fundamental_comodule(A), name="V*(x)V")


def trivial_comodule(A) -> Comodule:
    return Comodule.trivial(A)


# -- sigma ------------------------------------------------------------------------


class SigmaSection:
    def __init__(self, A: PBWAlgebra):
        E = A.E
        n = A.n
        Et_inv = _mat_inverse([[E[j][i] for j in range(n)] for i in range(n)])
        self.F = [[simplify(sum((E[i][k] * Et_inv[k][j] for k in range(n)), ZERO)) for j in range(n)]
                  for i in range(n)]
        self.t = simplify(sum((self.F[i][i] for i in range(n)), ZERO))
        if self.t == 0:
            raise ValueError("tr(E^-1 E^t) = 0: no section of this form")
        self.A = A
        self.p = A.cocentral_projection()
        x: dict = {}
        for i in range(n):
            for j in range(n):
                if self.F[i][j] != 0:
                    add_term(x, A.gen(i, j), simplify(self.F[i][j] / self.t))
        self.x = x

    def __call__(self, y: dict) -> dict:
        """Linear extension of ``sigma(1) = 1``, ``sigma(g) = x``."""
        out: dict = {}
        add_into(out, self.A.one(), y.get(E_KEY, ZERO))
        add_into(out, self.x, y.get(G_KEY, ZERO))
        return out

    def sigma_p_basis(self, a) -> dict:
        """``sigma(p(a))`` for a basis word ``a``."""
        return self(self.p.basis_image(a))

    def conditions(self) -> Report:
        A = self.A
        rep = Report("sigma conditions")
        L = [E_KEY, G_KEY]
        bad = [y for y in L if self.p(self({y: ONE})) != {y: ONE}]
        rep.add("(1) p sigma = id", bad, 2)

        bad = []
        for y in L:
            s = self({y: ONE})
            lhs: dict = {}
            for w, c in s.items():
                for (s1, s2), d in A.comul_basis(w).items():
                    for z, e in self.p.basis_image(s2).items():
                        add_term(lhs, (s1, z), c * d * e)
            # y is grouplike: sigma(y1) (x) y2 = sigma(y) (x) y
            rhs = {(w, y): c for w, c in s.items()}
            if lhs != rhs:
                bad.append(y)
        rep.add("(2) sigma(x)1 (x) p(sigma(x)2) = sigma(x1) (x) x2", bad, 2)

        bad = []
        for y in L:
            s = self({y: ONE})
            lhs: dict = {}
            for w, c in s.items():
                for (s1, s2, s3), d in A.comul2_basis(w).items():
                    for s3a, e in A.antipode_basis(s3).items():
                        for z, f in A.mul_basis(s1, s3a).items():
                            add_term(lhs, (z, s2), c * d * e * f)
            rhs = {((), w): c for w, c in s.items()}
            if lhs != rhs:
                bad.append(y)
        rep.add("(3) sigma(x)1 S(sigma(x)3) (x) sigma(x)2 = 1 (x) sigma(x)", bad, 2)
        return rep


def sigma_section(A: PBWAlgebra) -> tuple[SigmaSection, Report]:
    s = SigmaSection(A)
    return s, s.conditions()


# -- iota / mu ----------------------------------------------------------------------


class Splitting:
    """``iota: W [x] A -> (W [x] A) [x] B`` and ``mu`` for a ``B``-comodule ``W``."""

    def __init__(self, A: PBWAlgebra, W: Comodule, sigma: SigmaSection | None = None):
        self.A = A
        self.W = W
        self.sigma = sigma or SigmaSection(A)
        self.inner = free_yd(W, name=f"{W.name}[x]A")
        self.outer = free_yd(self.inner.as_comodule(), name=f"({W.name}[x]A)[x]B")

    def iota_basis(self, key) -> dict:
        w, a = key
        A = self.A
        out: dict = {}
        for (a1, a2), c in A.comul_basis(a).items():
            for s, d in self.sigma.sigma_p_basis(a1).items():
                for (s1, s2), e in A.comul_basis(s).items():
                    for s2a, f in A.antipode_basis(s2).items():
                        for z, g in A.mul_basis(s2a, a2).items():
                            add_term(out, ((w, s1), z), c * d * e * f * g)
        return out

    def iota(self, vec: dict) -> dict:
        out: dict = {}
        for k, c in vec.items():
            add_into(out, self.iota_basis(k), c)
        return out

    def mu(self, vec: dict) -> dict:
        out: dict = {}
        for ((w, a), b), c in vec.items():
            for z, d in self.A.mul_basis(a, b).items():
                add_term(out, (w, z), c * d)
        return out

    def check(self, max_degree: int = 2, samples: int = 20, seed: int = 0) -> Report:
        A = self.A
        keys = [(w, a) for w in self.W.keys for a in A.basis(max_degree)]
        rep = Report(f"iota/mu splitting for {self.W.name}")

        bad = [k for k in keys if self.mu(self.iota_basis(k)) != {k: ONE}]
        rep.add("mu iota = id", bad, len(keys))

        bad = [k for k in keys if any(len(b) % 2 for (_, b) in self.iota_basis(k))]
        rep.add("iota lands in (W[x]A)[x]B", bad, len(keys))

        bi = [b for b in A.even_basis(2)]
        bad = []
        n = 0
        for k in keys:
            for b in bi:
                n += 1
                lhs = self.iota(self.inner.action_basis(k, b))
                rhs = self.outer.act(self.iota_basis(k), {b: ONE})
                if lhs != rhs:
                    bad.append((k, b))
        rep.add("iota is B-linear", bad, n)

        rng = random.Random(seed)
        sample = [rng.choice(keys) for _ in range(samples)]
        bad = []
        for k in sample:
            lhs = self.outer.coact(self.iota_basis(k))
            rhs: dict = {}
            for (v, z), c in self.inner.coaction_basis(k).items():
                for u, d in self.iota_basis(v).items():
                    add_term(rhs, (u, z), c * d)
            if lhs != rhs:
                bad.append(k)
        rep.add("iota is B-colinear", bad, len(sample))
        return rep


# -- checks on the coadjoint coaction -------------------------------------------------


def chi_element(A: PBWAlgebra) -> dict:
    """``chi = q^-1 a + q d``."""
    q = A.q
    return {A.gen(0, 0): simplify(1 / q), A.gen(1, 1): simplify(q)}


def ad_r(A, y: dict) -> dict:
    """Coadjoint coaction ``y -> y2 (x) S(y1) y3``."""
    one = A.one()
    out: dict = {}
    for w, c in y.items():
        for (a1, a2, a3), d in A.comul2_basis(w).items():
            for u, f in one.items():
                for z, e in A.conj_basis(a1, u, a3).items():
                    add_term(out, (a2, z), c * d * e * f)
    return out


def chi_coinvariant_check(A: PBWAlgebra) -> Report:
    rep = Report("coinvariance of 1 and chi")
    one = A.one()
    unit = next(iter(one))
    for label, y in (("1", one), ("chi", chi_element(A))):
        expect = {(w, unit): c for w, c in y.items()}
        rep.add(f"ad_r({label}) = {label} (x) 1", [] if ad_r(A, y) == expect else [label], 1)
    a = {A.gen(0, 0): ONE}
    res = ad_r(A, a) != {(A.gen(0, 0), unit): ONE}
    rep.add("ad_r(a) != a (x) 1 (negative control)", [] if res else ["a"], 1)
    return rep


def adjoint_restriction_check(A: PBWAlgebra, D: int = 3) -> Report:
    """``a2 (x) S(a1) b a3`` has an even second leg for ``b`` in ``B_+``."""
    if 3 * D > A.degree_bound:
        raise ValueError(f"needs degree bound >= {3 * D}")
    rep = Report("adjoint subalgebra condition")
    bad = []
    n = 0
    for a in A.basis(D):
        for b in A.even_basis(D):
            n += 1
            total: dict = {}
            for (a1, a2, a3), c in A.comul2_basis(a).items():
                for z, d in A.conj_basis(a1, b, a3).items():
                    add_term(total, (a2, z), c * d)
            if any(len(z) % 2 for (_, z) in total):
                bad.append((A.key_name(a), A.key_name(b)))
    rep.add("second leg in B_+", bad, n)
    return rep
