"""Hopf algebra axiom checks on a (possibly truncated) basis."""

from __future__ import annotations

import itertools

from ..reporting import Report
from .base import HopfAlgebra
from .linear import ONE, add_into, add_term


def tensor_mul(A: HopfAlgebra, s: dict, t: dict) -> dict:
    """Product in ``A (x) A``."""
    out: dict = {}
    for (a, b), x in s.items():
        for (c, d), y in t.items():
            for k1, u in A.mul_basis(a, c).items():
                for k2, v in A.mul_basis(b, d).items():
                    add_term(out, (k1, k2), x * y * u * v)
    return out


def _check_basis(A: HopfAlgebra, D: int | None) -> list:
    if A.degree_bound is None:
        return A.basis()
    return A.basis(min(D, A.degree_bound) if D is not None else None)


def _fits(A: HopfAlgebra, *keys) -> bool:
    return A.degree_bound is None or sum(A.degree(k) for k in keys) <= A.degree_bound


def check_hopf_axioms(A: HopfAlgebra, D: int | None = None) -> Report:
    """Verify every Hopf axiom on basis elements of degree <= D.

    Products of several basis elements are tested whenever their total
    degree fits under the algebra's truncation bound.
    """
    B = _check_basis(A, D)
    rep = Report(f"Hopf axioms for {A.name}")
    name = A.key_name
    one = A.one()

    bad = [name(x) for x in B if A.mul(one, {x: ONE}) != {x: ONE} or A.mul({x: ONE}, one) != {x: ONE}]
    rep.add("unit", bad, len(B))

    triples = [t for t in itertools.product(B, repeat=3) if _fits(A, *t)]
    bad = []
    for x, y, z in triples:
        if A.mul(A.mul_basis(x, y), {z: ONE}) != A.mul({x: ONE}, A.mul_basis(y, z)):
            bad.append(f"({name(x)}, {name(y)}, {name(z)})")
    rep.add("associativity", bad, len(triples))

    bad = []
    for x in B:
        lhs: dict = {}
        rhs: dict = {}
        for (a, b), c in A.comul_basis(x).items():
            for (p, r), d in A.comul_basis(a).items():
                add_term(lhs, (p, r, b), c * d)
            for (p, r), d in A.comul_basis(b).items():
                add_term(rhs, (a, p, r), c * d)
        if lhs != rhs:
            bad.append(name(x))
    rep.add("coassociativity", bad, len(B))

    bad = []
    for x in B:
        l: dict = {}
        r: dict = {}
        for (a, b), c in A.comul_basis(x).items():
            add_term(l, b, c * A.counit_basis(a))
            add_term(r, a, c * A.counit_basis(b))
        if l != {x: ONE} or r != {x: ONE}:
            bad.append(name(x))
    if A.comul(one) != {(k1, k2): c1 * c2 for k1, c1 in one.items() for k2, c2 in one.items()}:
        bad.append("Delta(1) != 1 (x) 1")
    if A.counit(one) != 1:
        bad.append("eps(1) != 1")
    rep.add("counit", bad, len(B))

    pairs = [p for p in itertools.product(B, repeat=2) if _fits(A, *p)]
    bad = []
    for x, y in pairs:
        prod = A.mul_basis(x, y)
        if A.comul(prod) != tensor_mul(A, A.comul_basis(x), A.comul_basis(y)):
            bad.append(f"Delta({name(x)}*{name(y)})")
        elif A.counit(prod) != A.counit_basis(x) * A.counit_basis(y):
            bad.append(f"eps({name(x)}*{name(y)})")
    rep.add("comultiplication multiplicative", bad, len(pairs))

    # S(x1) x2 has twice the degree of x
    BS = [x for x in B if _fits(A, x, x)]
    bad = []
    for x in BS:
        target = {k: v * A.counit_basis(x) for k, v in one.items()} if A.counit_basis(x) != 0 else {}
        left: dict = {}
        right: dict = {}
        for (a, b), c in A.comul_basis(x).items():
            add_into(left, A.mul(A.antipode_basis(a), {b: ONE}), c)
            add_into(right, A.mul({a: ONE}, A.antipode_basis(b)), c)
        if left != target:
            bad.append(f"m(S (x) id)Delta({name(x)})")
        if right != target:
            bad.append(f"m(id (x) S)Delta({name(x)})")
    rep.add("antipode", bad, len(BS))

    if A.has_haar:
        bad = []
        if A.haar(one) != 1:
            bad.append("h(1) != 1")
        for x in B:
            target = {k: v * A.haar_basis(x) for k, v in one.items()} if A.haar_basis(x) != 0 else {}
            left: dict = {}
            right: dict = {}
            for (a, b), c in A.comul_basis(x).items():
                if A.haar_basis(a) != 0:
                    add_term(left, b, c * A.haar_basis(a))
                if A.haar_basis(b) != 0:
                    add_term(right, a, c * A.haar_basis(b))
            if left != target or right != target:
                bad.append(name(x))
        rep.add("haar invariance", bad, len(B) + 1)
    return rep


def kac_witnesses(A: HopfAlgebra, D: int | None = None) -> list:
    """Basis elements with ``S^2(x) != x``."""
    D = 2 if D is None and A.degree_bound is not None else D
    return [x for x in _check_basis(A, D) if A.antipode(A.antipode_basis(x)) != {x: ONE}]


def check_kac(A: HopfAlgebra, D: int | None = None) -> bool:
    """Whether ``S^2 = id`` on the basis (degree <= D for graded algebras)."""
    return not kac_witnesses(A, D)
