"""Length-3 free resolution of the trivial Yetter-Drinfeld module over ``B(E_q)``.

    0 -> C[x]A -phi1-> (V*(x)V)[x]A -phi2-> (V*(x)V)[x]A -phi3-> C[x]A -eps-> C -> 0

All four maps are left multiplications by fixed coefficients, so they are
stored as tables ``input W key -> [(output W key, coefficient element)]``.
Applying ``Hom_YD(-, C)`` gives a four-term complex.  Over ``B(E_q)`` each
term is ``Hom^A(W, C)`` via ``psi(w (x) x) = f(w) eps(x)``; over the even
subalgebra each term is two copies of it, with coordinates
``(psi(- (x) 1), psi(- (x) chi))``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..exact_linalg import CochainComplex, SparseMatrix, format_scalar, simplify, solve_kernel
from ..hopf_core.linear import ONE, ZERO, add_term
from ..hopf_core.pbw import PBWAlgebra, as_fraction, check_q, symbolic_q
from ..reporting import Report
from ..yetter_drinfeld.constructions import free_yd
from ..yetter_drinfeld.modules import Comodule
from ..yetter_drinfeld.sigma import chi_element, end_comodule, trivial_comodule

UNIT_KEY = 0
DEFAULT_BOUND = 6


def _elem(A: PBWAlgebra, *terms) -> dict:
    """Sum of ``coeff * generator-word`` terms; the empty word is the unit."""
    out: dict = {}
    for c, name in terms:
        key = () if name == "1" else (A.names.index(name),)
        add_term(out, key, simplify(c))
    return out


class ResolutionMaps:
    """The maps of the resolution, transcribed literally, as coefficient tables."""

    def __init__(self, A: PBWAlgebra):
        if A.n != 2:
            raise ValueError("the resolution is written for 2x2 forms")
        self.A = A
        q = A.q
        qi = simplify(ONE / q)
        a, b, c, d = "a", "b", "c", "d"
        self.W = {"C": trivial_comodule(A), "End": end_comodule(A)}
        e = (lambda i, j: (i, j))
        self.phi1 = {UNIT_KEY: [
            (e(0, 0), _elem(A, (-qi, "1"), (q, d))),
            (e(0, 1), _elem(A, (-ONE, c))),
            (e(1, 0), _elem(A, (-ONE, b))),
            (e(1, 1), _elem(A, (-q, "1"), (qi, a))),
        ]}
        self.phi2 = {
            e(0, 0): [(e(0, 0), A.one()), (e(1, 0), _elem(A, (-q, b))), (e(1, 1), _elem(A, (ONE, a)))],
            e(0, 1): [(e(0, 0), _elem(A, (ONE, b))), (e(0, 1), _elem(A, (ONE, "1"), (-qi, a)))],
            e(1, 0): [(e(1, 0), _elem(A, (ONE, "1"), (-q, d))), (e(1, 1), _elem(A, (ONE, c)))],
            e(1, 1): [(e(0, 0), _elem(A, (ONE, d))), (e(0, 1), _elem(A, (-qi, c))), (e(1, 1), A.one())],
        }
        self.phi3 = {}
        for i in range(2):
            for j in range(2):
                coef = {A.gen(i, j): ONE}
                if i == j:
                    add_term(coef, (), -ONE)
                self.phi3[e(i, j)] = [(UNIT_KEY, coef)]
        # (name, table, source W, target W)
        self.maps = [
            ("phi1", self.phi1, "C", "End"),
            ("phi2", self.phi2, "End", "End"),
            ("phi3", self.phi3, "End", "C"),
        ]

    def apply(self, table: dict, vec: dict) -> dict:
        """Apply a coefficient table to ``{(w, word): c}``."""
        A = self.A
        out: dict = {}
        for (w, x), c in vec.items():
            for w2, coef in table[w]:
                for z, d in A.mul(coef, {x: ONE}).items():
                    add_term(out, (w2, z), c * d)
        return out

    def eps(self, vec: dict) -> dict:
        total = ZERO
        for (_, x), c in vec.items():
            total = total + c * self.A.counit_basis(x)
        total = simplify(total)
        return {UNIT_KEY: total} if total != 0 else {}

    def composition_check(self, max_degree: int = 2) -> Report:
        """``phi2 phi1``, ``phi3 phi2`` and ``eps phi3`` vanish over ``B`` and ``B_+``."""
        A = self.A
        rep = Report("zero compositions of the resolution")
        for label, keys in (("B", A.basis(max_degree)), ("B+", A.even_basis(max_degree))):
            pairs = [
                ("phi2 phi1", list(self.phi1), lambda v: self.apply(self.phi2, self.apply(self.phi1, v))),
                ("phi3 phi2", list(self.phi2), lambda v: self.apply(self.phi3, self.apply(self.phi2, v))),
                ("eps phi3", list(self.phi3), lambda v: self.eps(self.apply(self.phi3, v))),
            ]
            for name, wkeys, fn in pairs:
                bad = []
                n = 0
                for w in wkeys:
                    for x in keys:
                        n += 1
                        if fn({(w, x): ONE}):
                            bad.append((w, A.key_name(x)))
                rep.add(f"{name} = 0 over {label}", bad, n)
        return rep

    def linearity_check(self, max_degree: int = 1) -> Report:
        """``phi(w (x) x y) = phi(w (x) x) y`` on basis pairs."""
        A = self.A
        rep = Report("right A-linearity of the resolution maps")
        keys = A.basis(max_degree)
        for name, table, _, _ in self.maps:
            bad = []
            n = 0
            for w in table:
                for x in keys:
                    left = self.apply(table, {(w, x): ONE})
                    for y in keys:
                        n += 1
                        lhs = self.apply(table, {(w, z): c for z, c in A.mul_basis(x, y).items()})
                        rhs: dict = {}
                        for (w2, z), c in left.items():
                            for u, d in A.mul_basis(z, y).items():
                                add_term(rhs, (w2, u), c * d)
                        if lhs != rhs:
                            bad.append((w, A.key_name(x), A.key_name(y)))
            rep.add(f"{name} is right A-linear", bad, n)
        return rep

    def colinearity_check(self, max_degree: int = 1) -> Report:
        """Each map intertwines the free Yetter-Drinfeld coactions."""
        A = self.A
        rep = Report("colinearity of the resolution maps")
        keys = A.basis(max_degree)
        for name, table, src, dst in self.maps:
            S, T = free_yd(self.W[src]), free_yd(self.W[dst])
            bad = []
            n = 0
            for w in table:
                for x in keys:
                    n += 1
                    image = self.apply(table, {(w, x): ONE})
                    lhs = T.coact(image)
                    rhs: dict = {}
                    for (v, z), c in S.coaction_basis((w, x)).items():
                        for u, d in self.apply(table, {v: ONE}).items():
                            add_term(rhs, (u, z), c * d)
                    if lhs != rhs:
                        bad.append((w, A.key_name(x)))
            rep.add(f"{name} is colinear", bad, n)
        return rep


# -- coinvariant functionals ----------------------------------------------------


def coinvariant_functionals(W: Comodule) -> list[dict]:
    """Basis of ``Hom^A(W, C)``: functionals with ``f(w0) w1 = f(w) 1``."""
    A = W.algebra
    keys = list(W.keys)
    idx = {k: i for i, k in enumerate(keys)}
    unit = next(iter(A.one()))
    rows: dict = {}
    for w in keys:
        for (w0, y), c in W.coaction_basis(w).items():
            r = rows.setdefault((w, y), {})
            r[idx[w0]] = r.get(idx[w0], ZERO) + c
        r = rows.setdefault((w, unit), {})
        r[idx[w]] = r.get(idx[w], ZERO) - ONE
    clean = [{k: simplify(v) for k, v in r.items() if simplify(v) != 0} for r in rows.values()]
    kb = solve_kernel(clean, len(keys))
    return [{keys[i]: simplify(c) for i, c in v.items() if c != 0} for v in kb.vectors]


def normalized_functional(W: Comodule) -> dict:
    """The unique coinvariant functional, scaled to 1 at the first basis key (``e1* (x) e1``)."""
    basis = coinvariant_functionals(W)
    if len(basis) != 1:
        raise ValueError(f"Hom^A({W.name}, C) has dimension {len(basis)}, expected 1")
    f = basis[0]
    pivot = next(k for k in W.keys if f.get(k, ZERO) != 0)
    s = f[pivot]
    return {k: simplify(v / s) for k, v in f.items()}


def _proportion(g: dict, f: dict, keys) -> object:
    """``lambda`` with ``g = lambda f``; raises if ``g`` is not a multiple of ``f``."""
    pivot = next(k for k in keys if f.get(k, ZERO) != 0)
    lam = simplify(g.get(pivot, ZERO) / f[pivot])
    for k in keys:
        if simplify(g.get(k, ZERO) - lam * f.get(k, ZERO)) != 0:
            raise ValueError("image functional is not colinear")
    return lam


# -- the two complexes ---------------------------------------------------------------


@dataclass
class ResolutionComplex:
    algebra: str
    q: object
    complex: CochainComplex
    functionals: dict = field(repr=False, default_factory=dict)
    maps: ResolutionMaps | None = field(repr=False, default=None)

    @property
    def dims(self) -> list[int]:
        return list(self.complex.dims)

    def ranks(self) -> list[int]:
        return self.complex.ranks()

    def homology(self) -> list[int]:
        return self.complex.homology()

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra,
            "coefficients": "C",
            "q": format_scalar(self.q),
            "cochain_dims": self.dims,
            "ranks": self.ranks(),
            "homology": self.homology(),
        }


def make_algebra(q=None, degree_bound: int = DEFAULT_BOUND) -> PBWAlgebra:
    """``B(E_q)`` for rational ``q`` or, with ``q=None``, over ``Q(q)``."""
    if q is None:
        q = symbolic_q()
    else:
        q = as_fraction(q)
    check_q(q)
    return PBWAlgebra.quantum_sl2(q, degree_bound)


# position k of the cochain complex: (W of P_k, map Hom(P_k) -> Hom(P_{k+1}))
_TERMS = ["C", "End", "End", "C"]
_DIFFS = ["phi3", "phi2", "phi1"]


def _functionals(R: ResolutionMaps) -> dict:
    return {"C": {UNIT_KEY: ONE}, "End": normalized_functional(R.W["End"])}


def resolution_complex_sl2(q=None, degree_bound: int = DEFAULT_BOUND) -> ResolutionComplex:
    """``Hom_YD(P_k, C) = Hom^A(W_k, C)``: every term is one-dimensional."""
    A = make_algebra(q, degree_bound)
    R = ResolutionMaps(A)
    fs = _functionals(R)
    tables = {name: table for name, table, _, _ in R.maps}
    unit = next(iter(A.one()))
    diffs = []
    for k, name in enumerate(_DIFFS):
        src_w, dst_w = _TERMS[k], _TERMS[k + 1]
        f = fs[src_w]
        table = tables[name]
        g: dict = {}
        for w in R.W[dst_w].keys:
            total = ZERO
            for (w2, z), c in R.apply(table, {(w, unit): ONE}).items():
                total = total + f.get(w2, ZERO) * c * A.counit_basis(z)
            g[w] = simplify(total)
        lam = _proportion(g, fs[dst_w], R.W[dst_w].keys)
        diffs.append(SparseMatrix(1, 1, {(0, 0): lam} if lam != 0 else {}))
    cx = CochainComplex([1, 1, 1, 1], diffs)
    return ResolutionComplex(A.name, A.q, cx, fs, R)


class Reconstruction:
    """``psi(w (x) (y + y')) = psi1(w) eps(y) + (q + 1/q)^-1 psi2(w) eps(y')``."""

    def __init__(self, A: PBWAlgebra, psi1: dict, psi2: dict):
        self.A = A
        self.psi1, self.psi2 = psi1, psi2
        self.tinv = simplify(ONE / (A.q + ONE / A.q))

    def __call__(self, vec: dict):
        A = self.A
        total = ZERO
        for (w, z), c in vec.items():
            e = A.counit_basis(z)
            if e == 0:
                continue
            coeff = self.psi1.get(w, ZERO) if len(z) % 2 == 0 else self.tinv * self.psi2.get(w, ZERO)
            total = total + c * e * coeff
        return simplify(total)


def resolution_complex_psl2(q=None, degree_bound: int = DEFAULT_BOUND) -> ResolutionComplex:
    """Two-dimensional terms with coordinates ``(psi(- (x) 1), psi(- (x) chi))``."""
    A = make_algebra(q, degree_bound)
    R = ResolutionMaps(A)
    fs = _functionals(R)
    tables = {name: table for name, table, _, _ in R.maps}
    unit = next(iter(A.one()))
    chi = chi_element(A)
    diffs = []
    for k, name in enumerate(_DIFFS):
        src_w, dst_w = _TERMS[k], _TERMS[k + 1]
        f = fs[src_w]
        table = tables[name]
        entries = {}
        for col, (p1, p2) in enumerate(((f, {}), ({}, f))):
            psi = Reconstruction(A, p1, p2)
            g1, g2 = {}, {}
            for w in R.W[dst_w].keys:
                g1[w] = psi(R.apply(table, {(w, unit): ONE}))
                g2[w] = psi(R.apply(table, {(w, x): c for x, c in chi.items()}))
            for row, g in enumerate((g1, g2)):
                lam = _proportion(g, fs[dst_w], R.W[dst_w].keys)
                if lam != 0:
                    entries[(row, col)] = lam
        diffs.append(SparseMatrix(2, 2, entries))
    cx = CochainComplex([2, 2, 2, 2], diffs)
    from ..hopf_core.pbw import EvenSubalgebra

    return ResolutionComplex(EvenSubalgebra(A).name, A.q, cx, fs, R)


def reconstruction_check(q=None, max_degree: int = 2, samples: int = 30, seed: int = 0) -> Report:
    """Spot checks on the reconstructed ``psi`` for every coordinate basis vector.

    ``psi(w (x) b) = 0``, ``psi(w (x) d) = psi(w (x) a)``, and ``psi`` is
    colinear over the even subalgebra on sampled inputs of degree <= max_degree.
    """
    A = make_algebra(q)
    R = ResolutionMaps(A)
    fs = _functionals(R)
    rep = Report("reconstructed functionals")
    a, b, d = A.gen(0, 0), A.gen(0, 1), A.gen(1, 1)
    rng = random.Random(seed)
    unit = next(iter(A.one()))
    for wname in ("C", "End"):
        W = R.W[wname]
        f = fs[wname]
        Y = free_yd(W)
        keys = [(w, x) for w in W.keys for x in A.basis(max_degree)]
        sample = sorted(rng.sample(keys, min(samples, len(keys))), key=repr)
        for label, (p1, p2) in (("psi1", (f, {})), ("psi2", ({}, f))):
            psi = Reconstruction(A, p1, p2)
            bad = [w for w in W.keys if psi({(w, b): ONE}) != 0]
            rep.add(f"{wname}/{label}: psi(w (x) b) = 0", bad, len(W.keys))
            bad = [w for w in W.keys if psi({(w, d): ONE}) != psi({(w, a): ONE})]
            rep.add(f"{wname}/{label}: psi(w (x) d) = psi(w (x) a)", bad, len(W.keys))
            bad = []
            for key in sample:
                out: dict = {}
                for (v, z), c in Y.coaction_basis(key).items():
                    val = psi({v: c})
                    if val != 0:
                        add_term(out, z, val)
                out = {z: simplify(c) for z, c in out.items() if simplify(c) != 0}
                val = psi({key: ONE})
                expect = {unit: val} if val != 0 else {}
                if out != expect:
                    bad.append((key[0], A.key_name(key[1])))
            rep.add(f"{wname}/{label}: psi is colinear", bad, len(sample))
    return rep


def homology_agreement(kind: str, qs=(2, 3), symbolic: bool = True) -> Report:
    """Homology of the SL or PSL complex at several ``q`` and in ``Q(q)`` mode."""
    build = {"sl2": resolution_complex_sl2, "psl2": resolution_complex_psl2}[kind]
    rep = Report(f"{kind} homology across q")
    results = {str(q): build(q).homology() for q in qs}
    if symbolic:
        results["q"] = build(None).homology()
    ref = next(iter(results.values()))
    bad = [f"{k}: {v}" for k, v in results.items() if v != ref]
    rep.add("homology independent of q", bad, len(results),
            detail="; ".join(f"{k} -> {v}" for k, v in results.items()))
    return rep


def d_squared_check(c) -> Report:
    """``d_(i+1) d_i = 0`` for a complex or a plain list of matrices."""
    diffs = list(c.differentials) if hasattr(c, "differentials") else list(c)
    rep = Report("d^2 = 0")
    bad = []
    for i in range(len(diffs) - 1):
        if not (diffs[i + 1] @ diffs[i]).is_zero():
            bad.append(f"d{i + 1} d{i} != 0 at position {i}")
    rep.add("consecutive compositions vanish", bad, max(len(diffs) - 1, 0))
    return rep
