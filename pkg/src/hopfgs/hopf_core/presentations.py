"""Quantum permutation and hyperoctahedral presentations.

``A_s(n)`` is generated by ``x_ij`` with the magic-unitary relations
``sum_l x_li = 1 = sum_l x_il``, ``x_ik x_ij = delta_kj x_ij`` and
``x_ki x_ji = delta_kj x_ji``.  ``A_h(n)`` is generated by ``a_ij`` with
``sum_l a_li^2 = 1 = sum_l a_il^2`` and ``a_ik a_ij = 0 = a_ji a_ki`` for
``j != k``.

Relation consequences are verified by explicit ideal-membership
certificates: a claimed identity ``t = 0`` comes with a list of terms
``c * u * r * v`` (``r`` a defining relation) whose sum is ``t`` in the
free algebra.
"""

from __future__ import annotations

import itertools

from ..reporting import Report
from .finite import function_algebra, symmetric_group
from .linear import ONE, add_into, add_term

# free algebra elements: {tuple of generator pairs (i, j): scalar}


def fmul(*polys: dict) -> dict:
    out = {(): ONE}
    for p in polys:
        nxt: dict = {}
        for u, a in out.items():
            for v, b in p.items():
                add_term(nxt, u + v, a * b)
        out = nxt
    return out


def gen(i, j) -> dict:
    return {((i, j),): ONE}


def fsum(*pairs) -> dict:
    out: dict = {}
    for c, p in pairs:
        add_into(out, p, c)
    return out


UNIT = {(): ONE}


def as_relations(n: int) -> dict[tuple, dict]:
    """Defining relations of ``A_s(n)`` keyed by a descriptive tag."""
    rels = {}
    r = range(n)
    for i in r:
        rels[("col", i)] = fsum(*[(ONE, gen(l, i)) for l in r], (-ONE, UNIT))
        rels[("row", i)] = fsum(*[(ONE, gen(i, l)) for l in r], (-ONE, UNIT))
    for i, j, k in itertools.product(r, repeat=3):
        rels[("rowprod", i, k, j)] = fsum((ONE, fmul(gen(i, k), gen(i, j))), (-ONE if k == j else 0, gen(i, j)))
        rels[("colprod", k, i, j)] = fsum((ONE, fmul(gen(k, i), gen(j, i))), (-ONE if k == j else 0, gen(j, i)))
    return rels


def ah_relations(n: int) -> dict[tuple, dict]:
    rels = {}
    r = range(n)
    for i in r:
        rels[("col", i)] = fsum(*[(ONE, fmul(gen(l, i), gen(l, i))) for l in r], (-ONE, UNIT))
        rels[("row", i)] = fsum(*[(ONE, fmul(gen(i, l), gen(i, l))) for l in r], (-ONE, UNIT))
    for i, j, k in itertools.product(r, repeat=3):
        if j != k:
            rels[("rowprod", i, k, j)] = fmul(gen(i, k), gen(i, j))
            rels[("colprod", j, i, k)] = fmul(gen(j, i), gen(k, i))
    return rels


def substitute(p: dict, images: dict) -> dict:
    """Algebra map on free algebras given by generator images."""
    out: dict = {}
    for w, c in p.items():
        add_into(out, fmul(*[images[g] for g in w]), c)
    return out


def certificate_holds(target: dict, certificate, relations: dict) -> bool:
    """Check ``target == sum c * u * relations[tag] * v`` in the free algebra."""
    total: dict = {}
    for c, left, tag, right in certificate:
        add_into(total, fmul(left, relations[tag], right), c)
    return total == {w: c for w, c in target.items() if c != 0}


def _i_images(n):
    return {(i, j): fmul(gen(i, j), gen(i, j)) for i in range(n) for j in range(n)}


def _pi_images(n):
    return {(i, j): gen(i, j) for i in range(n) for j in range(n)}


def _i_certificate(n: int, tag) -> list:
    """Certificate that ``i`` maps the A_s relation ``tag`` into the ideal of A_h."""
    kind = tag[0]
    r = range(n)
    if kind in ("row", "col"):
        return [(ONE, UNIT, tag, UNIT)]
    if kind == "rowprod":
        _, i, k, j = tag
        if k != j:
            return [(ONE, gen(i, k), ("rowprod", i, k, j), gen(i, j))]
        # a^4 - a^2 = a^2 (sum_l a_il^2 - 1) - sum_{l != j} a_ij (a_ij a_il) a_il
        a2 = fmul(gen(i, j), gen(i, j))
        cert = [(ONE, a2, ("row", i), UNIT)]
        cert += [(-ONE, gen(i, j), ("rowprod", i, j, l), gen(i, l)) for l in r if l != j]
        return cert
    _, k, i, j = tag
    if k != j:
        return [(ONE, gen(k, i), ("colprod", k, i, j), gen(j, i))]
    a2 = fmul(gen(j, i), gen(j, i))
    cert = [(ONE, a2, ("col", i), UNIT)]
    cert += [(-ONE, gen(j, i), ("colprod", j, i, l), gen(l, i)) for l in r if l != j]
    return cert


def _pi_certificate(n: int, tag) -> list:
    """Certificate that ``pi`` maps the A_h relation ``tag`` into the ideal of A_s."""
    kind = tag[0]
    if kind in ("row", "col"):
        i = tag[1]
        cert = [(ONE, UNIT, tag, UNIT)]
        for l in range(n):
            if kind == "row":
                cert.append((ONE, UNIT, ("rowprod", i, l, l), UNIT))
            else:
                cert.append((ONE, UNIT, ("colprod", l, i, l), UNIT))
        return cert
    return [(ONE, UNIT, tag, UNIT)]


def _indicator(G, n, i, j) -> dict:
    """Indicator of ``{s : s(j) = i}`` in O(S_n) on the delta basis."""
    perms = sorted(itertools.permutations(range(n)))
    return {idx: ONE for idx, s in enumerate(perms) if s[j] == i}


def presentation_check_As_Ah(n: int) -> Report:
    if n < 2:
        raise ValueError("n must be at least 2")
    rep = Report(f"A_s({n}) / A_h({n}) presentations")
    G = symmetric_group(n)
    O = function_algebra(G)
    ind = {(i, j): _indicator(G, n, i, j) for i in range(n) for j in range(n)}

    # (i) evaluation in O(S_n) kills every relation of A_s(n)
    As = as_relations(n)
    bad = []
    for tag, rel in As.items():
        val: dict = {}
        for w, c in rel.items():
            add_into(val, O.mul_many(*[ind[g] for g in w]), c)
        if val:
            bad.append(tag)
    rep.add("O(S_n) quotient kills A_s relations", bad, len(As))

    bad = []
    for (i, j), x in ind.items():
        lhs = O.comul(x)
        rhs: dict = {}
        for k in range(n):
            for a, c in ind[(i, k)].items():
                for b, d in ind[(k, j)].items():
                    add_term(rhs, (a, b), c * d)
        if lhs != rhs:
            bad.append((i, j))
    rep.add("O(S_n) quotient respects comultiplication", bad, n * n)

    # (ii) i and pi respect relations
    Ah = ah_relations(n)
    ii = _i_images(n)
    bad = [tag for tag, rel in As.items() if not certificate_holds(substitute(rel, ii), _i_certificate(n, tag), Ah)]
    rep.add("i: A_s -> A_h respects relations", bad, len(As))

    pp = _pi_images(n)
    bad = [tag for tag, rel in Ah.items() if not certificate_holds(substitute(rel, pp), _pi_certificate(n, tag), As)]
    rep.add("pi: A_h -> A_s respects relations", bad, len(Ah))

    # pi(i(x_ij)) = x_ij^2 reduces to x_ij
    bad = []
    for i, j in itertools.product(range(n), repeat=2):
        target = fsum((ONE, substitute(ii[(i, j)], pp)), (-ONE, gen(i, j)))
        if not certificate_holds(target, [(ONE, UNIT, ("rowprod", i, j, j), UNIT)], As):
            bad.append((i, j))
    rep.add("pi i = id on generators", bad, n * n)

    # Delta(i(x_ij)) - (i (x) i)Delta(x_ij) = sum_{k != l} (a_ik a_il) (x) a_kj a_lj
    bad = []
    for i, j in itertools.product(range(n), repeat=2):
        delta_a = {(((i, k),), ((k, j),)): ONE for k in range(n)}
        lhs = _tensor_mul(delta_a, delta_a)
        for k in range(n):
            for w, c in _tensor_from(ii[(i, k)], ii[(k, j)]).items():
                add_term(lhs, w, -c)
        cert: dict = {}
        for k in range(n):
            for l in range(n):
                if k != l:
                    add_into(cert, _tensor_from(Ah[("rowprod", i, k, l)], fmul(gen(k, j), gen(l, j))))
        if lhs != cert:
            bad.append((i, j))
    rep.add("i intertwines comultiplication", bad, n * n)
    return rep


def _tensor_from(p: dict, r: dict) -> dict:
    out: dict = {}
    for u, a in p.items():
        for v, b in r.items():
            add_term(out, (u, v), a * b)
    return out


def _tensor_mul(s: dict, t: dict) -> dict:
    out: dict = {}
    for (a, b), x in s.items():
        for (c, d), y in t.items():
            add_term(out, (a + c, b + d), x * y)
    return out
