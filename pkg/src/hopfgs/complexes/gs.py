"""Gerstenhaber-Schack and Hochschild complexes of finite-dimensional Hopf algebras.

Cochains live in ``Hom(A^(x)n, V)`` with ambient coordinates ``(t, j)``:
``t`` a tuple of basis indices of ``A`` and ``j`` a basis index of ``V``.
The bar differential

    df(a1..a(n+1)) = eps(a1) f(a2..) + sum_i (-1)^i f(..a_i a_(i+1)..)
                     + (-1)^(n+1) f(a1..an) <- a(n+1)

is applied by pushing each nonzero coordinate forward.  GS cochains are the
colinear maps ``Hom^A(A^[x]n, V)``, computed as the null space of the
colinearity constraint; Hochschild cochains are unconstrained with the
twisted action ``x <- a = S(a1).x.a2``.
"""

from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction

from ..exact_linalg import CochainComplex, KernelBasis, SparseMatrix, rank, solve_kernel
from ..hopf_core.base import HopfAlgebra
from ..hopf_core.linear import ONE, ZERO, add_term
from ..reporting import Report
from ..yetter_drinfeld.constructions import coad_power, twist_bimodule
from ..yetter_drinfeld.modules import Bimodule, YDModule


class BudgetExceededError(RuntimeError):
    pass


def column_budget() -> int:
    """Matrix column cap from ``HOPFGS_BUDGET`` (default 5000)."""
    raw = os.environ.get("HOPFGS_BUDGET", "5000")
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"HOPFGS_BUDGET must be an integer, got {raw!r}") from exc
    if value <= 0:
        raise ValueError("HOPFGS_BUDGET must be positive")
    return value


AMBIENT_FACTOR = 20


class BarCochains:
    """Index bookkeeping and the bar differential for ``Hom(A^(x)n, V)``."""

    def __init__(self, A: HopfAlgebra, target_keys: list, action):
        if A.degree_bound is not None:
            raise ValueError(f"{A.name} is not finite-dimensional")
        self.A = A
        self.keys = A.basis()
        self.kidx = {k: i for i, k in enumerate(self.keys)}
        self.m = len(self.keys)
        self.tkeys = list(target_keys)
        self.tidx = {k: i for i, k in enumerate(self.tkeys)}
        self.dimV = len(self.tkeys)
        self.action = action  # (target key, algebra key) -> {target key: c}
        one = A.one()
        self.counit = [A.counit_basis(k) for k in self.keys]
        # preimages of multiplication: k -> [(x, y, c)] with c = coeff of k in xy
        self.premul: dict[int, list] = {i: [] for i in range(self.m)}
        for x, kx in enumerate(self.keys):
            for y, ky in enumerate(self.keys):
                for z, c in A.mul_basis(kx, ky).items():
                    self.premul[self.kidx[z]].append((x, y, c))
        self.act_table = {}
        for j, v in enumerate(self.tkeys):
            for a, ka in enumerate(self.keys):
                self.act_table[(j, a)] = [(self.tidx[w], c) for w, c in action(v, ka).items()]
        self._one = one

    def ambient_dim(self, n: int) -> int:
        return self.m ** n * self.dimV

    def index(self, t: tuple, j: int) -> int:
        r = 0
        for x in t:
            r = r * self.m + x
        return r * self.dimV + j

    def unindex(self, n: int, idx: int) -> tuple[tuple, int]:
        r, j = divmod(idx, self.dimV)
        t = []
        for _ in range(n):
            r, x = divmod(r, self.m)
            t.append(x)
        return tuple(reversed(t)), j

    def differential(self, n: int, f: dict) -> dict:
        """Push a cochain ``{ambient index: c}`` of degree n forward to degree n+1."""
        out: dict = {}
        m = self.m
        sign_last = -ONE if (n + 1) % 2 else ONE
        for idx, c in f.items():
            t, j = self.unindex(n, idx)
            for a in range(m):
                e = self.counit[a]
                if e != 0:
                    add_term(out, self.index((a,) + t, j), c * e)
            for i in range(1, n + 1):
                sgn = -ONE if i % 2 else ONE
                pre, k, post = t[:i - 1], t[i - 1], t[i:]
                for x, y, d in self.premul[k]:
                    add_term(out, self.index(pre + (x, y) + post, j), sgn * c * d)
            for a in range(m):
                for w, d in self.act_table[(j, a)]:
                    add_term(out, self.index(t + (a,), w), sign_last * c * d)
        return out

    def differential_matrix(self, n: int) -> SparseMatrix:
        """Ambient differential as a sparse matrix (columns = ambient coordinates)."""
        cols = []
        for idx in range(self.ambient_dim(n)):
            cols.append(self.differential(n, {idx: ONE}))
        return SparseMatrix.from_columns(self.ambient_dim(n + 1), cols)


@dataclass
class HomSpace:
    """Colinear maps ``Hom^A(A^[x]n, V)`` inside the ambient ``Hom(A^(x)n, V)``."""

    n: int
    ambient_dim: int
    kernel: KernelBasis = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.kernel)

    def basis(self) -> list[dict]:
        return self.kernel.vectors

    def coordinates(self, vec: dict) -> list:
        return self.kernel.coordinates(vec, check=True)


def colinearity_rows(bar: BarCochains, Y: YDModule, V: YDModule, n: int) -> list[dict]:
    """Rows of ``f(x)0 (x) f(x)1 - f(x0) (x) x1 = 0`` over all domain tuples."""
    keys = bar.keys
    rows: dict = {}
    vco = [V.coaction_basis(v) for v in bar.tkeys]
    for t in itertools.product(range(bar.m), repeat=n):
        tk = tuple(keys[x] for x in t)
        for j in range(bar.dimV):
            col = bar.index(t, j)
            for (w, y), c in vco[j].items():
                r = rows.setdefault((t, bar.tidx[w], y), {})
                r[col] = r.get(col, ZERO) + c
        for (s, y), c in Y.coaction_basis(tk).items():
            sidx = tuple(bar.kidx[k] for k in s)
            for j in range(bar.dimV):
                r = rows.setdefault((t, j, y), {})
                col = bar.index(sidx, j)
                r[col] = r.get(col, ZERO) - c
    return [{k: v for k, v in r.items() if v != 0} for r in rows.values()]


def hom_space(bar: BarCochains, V: YDModule, n: int, ambient_cap: int) -> HomSpace:
    amb = bar.ambient_dim(n)
    if amb > ambient_cap:
        raise BudgetExceededError(f"ambient Hom(A^{n}, V) has {amb} coordinates, cap {ambient_cap}")
    Y = coad_power(bar.A, n)
    rows = colinearity_rows(bar, Y, V, n)
    return HomSpace(n, amb, solve_kernel(rows, amb))


@dataclass
class BuiltComplex:
    """A cochain complex plus the data needed to interpret it."""

    algebra: str
    coefficients: str
    complex: CochainComplex
    max_degree: int
    spaces: list = field(default_factory=list, repr=False)
    bar: BarCochains | None = field(default=None, repr=False)

    @property
    def dims(self) -> list[int]:
        return list(self.complex.dims)

    def ranks(self) -> list[int]:
        return self.complex.ranks()

    def homology(self) -> list[int]:
        """Homology in degrees ``0..max_degree`` (the last term only bounds the image)."""
        return self.complex.homology()[: self.max_degree + 1]


def _check_budget(dims, budget):
    for n, d in enumerate(dims):
        if d > budget:
            raise BudgetExceededError(f"cochain space in degree {n} has {d} columns, budget {budget}")


def gs_complex(A: HopfAlgebra, V: YDModule, N: int, budget: int | None = None) -> BuiltComplex:
    """Complex ``Hom^A(A^[x]n, V)``, ``0 <= n <= N+1``, with the bar differential."""
    if not A.has_haar:
        raise ValueError(f"{A.name} is not declared cosemisimple")
    if N < 1:
        raise ValueError("N must be at least 1")
    budget = column_budget() if budget is None else budget
    bar = BarCochains(A, V.basis(), V.action_basis)
    spaces = []
    for n in range(N + 2):
        sp = hom_space(bar, V, n, budget * AMBIENT_FACTOR)
        _check_budget([sp.dim], budget)
        spaces.append(sp)
    diffs = []
    for n in range(N + 1):
        src, dst = spaces[n], spaces[n + 1]
        cols = [dict(enumerate(dst.coordinates(bar.differential(n, v)))) for v in src.basis()]
        cols = [{k: c for k, c in col.items() if c != 0} for col in cols]
        diffs.append(SparseMatrix.from_columns(dst.dim, cols))
    cx = CochainComplex([sp.dim for sp in spaces], diffs)
    return BuiltComplex(A.name, V.name, cx, N, spaces, bar)


def hochschild_complex(A: HopfAlgebra, M: Bimodule, N: int, budget: int | None = None) -> BuiltComplex:
    """Complex ``Hom(A^(x)n, M')`` with ``x <- a = S(a1).x.a2``, ``0 <= n <= N+1``."""
    if N < 1:
        raise ValueError("N must be at least 1")
    budget = column_budget() if budget is None else budget
    bar = BarCochains(A, list(range(M.dim)), M.twisted_right)
    dims = [bar.ambient_dim(n) for n in range(N + 2)]
    _check_budget(dims, budget)
    diffs = [bar.differential_matrix(n) for n in range(N + 1)]
    cx = CochainComplex(dims, diffs)
    return BuiltComplex(A.name, M.name, cx, N, [], bar)


def gs_equals_hochschild_check(A: HopfAlgebra, M: Bimodule, N: int, budget: int | None = None) -> Report:
    """Compare the GS complex of ``M' # A`` with the Hochschild complex of ``M``.

    The coordinate map ``Phi(f) = (id (x) eps) f`` must be a degreewise
    isomorphism commuting with the differentials.
    """
    rep = Report(f"GS vs Hochschild for {A.name}, {M.name}")
    V = twist_bimodule(M)
    gs = gs_complex(A, V, N, budget)
    hh = hochschild_complex(A, M, N, budget)
    eps = {k: A.counit_basis(k) for k in A.basis()}
    vkeys = V.basis()
    phis = []
    bad_iso = []
    for n, sp in enumerate(gs.spaces):
        cols = []
        for vec in sp.basis():
            out: dict = {}
            for idx, c in vec.items():
                t, j = gs.bar.unindex(n, idx)
                i, a = vkeys[j]
                if eps[a] != 0:
                    add_term(out, hh.bar.index(t, i), c * eps[a])
            cols.append(out)
        phi = SparseMatrix.from_columns(hh.complex.dims[n], cols)
        phis.append(phi)
        if not (phi.rows == phi.cols == rank(phi)):
            bad_iso.append(f"degree {n}: {phi.cols} -> {phi.rows}, rank {rank(phi)}")
    rep.add("Phi is a degreewise isomorphism", bad_iso, len(phis))
    bad = []
    for n in range(N + 1):
        lhs = hh.complex.differentials[n] @ phis[n]
        rhs = phis[n + 1] @ gs.complex.differentials[n]
        if lhs != rhs:
            bad.append(f"degree {n}")
    rep.add("d Phi = Phi d", bad, N + 1)
    hg, hhh = gs.homology(), hh.homology()
    rep.add("homology agrees", [] if hg == hhh else [f"GS {hg} vs Hochschild {hhh}"], N + 1,
            detail=f"GS {hg}, Hochschild {hhh}")
    rep.gs = gs
    rep.hochschild = hh
    return rep


# -- averaging ----------------------------------------------------------------


class Averaging:
    """``M(f)(v) = h(f(v0)_(1) S(v1)) f(v0)_(0)`` on ``Hom(A^(x)n, V)``."""

    def __init__(self, A: HopfAlgebra, V: YDModule, n: int):
        if not A.has_haar:
            raise ValueError(f"{A.name} has no Haar integral")
        self.A, self.V, self.n = A, V, n
        self.bar = BarCochains(A, V.basis(), V.action_basis)
        bar = self.bar
        Y = coad_power(A, n)
        hcache: dict = {}

        def h_yS(y, x):
            key = (y, x)
            if key not in hcache:
                total = ZERO
                for s, c in A.antipode_basis(x).items():
                    for z, d in A.mul_basis(y, s).items():
                        total = total + c * d * A.haar_basis(z)
                hcache[key] = total
            return hcache[key]

        vco = [V.coaction_basis(v) for v in bar.tkeys]
        entries: dict = {}
        for t in itertools.product(range(bar.m), repeat=n):
            tk = tuple(bar.keys[x] for x in t)
            for (s, x), c in Y.coaction_basis(tk).items():
                sidx = tuple(bar.kidx[k] for k in s)
                for j in range(bar.dimV):
                    src = bar.index(sidx, j)
                    for (w, y), d in vco[j].items():
                        hv = h_yS(y, x)
                        if hv != 0:
                            key = (bar.index(t, bar.tidx[w]), src)
                            entries[key] = entries.get(key, ZERO) + c * d * hv
        dim = bar.ambient_dim(n)
        self.matrix = SparseMatrix(dim, dim, entries)

    def __call__(self, f: dict) -> dict:
        return self.matrix.apply(f)


def averaging(A: HopfAlgebra, V: YDModule, n: int, f: dict) -> dict:
    return Averaging(A, V, n)(f)


def colinear_space(A: HopfAlgebra, V: YDModule, n: int) -> HomSpace:
    bar = BarCochains(A, V.basis(), V.action_basis)
    return hom_space(bar, V, n, 10 ** 9)


def is_colinear(space: HomSpace, f: dict) -> bool:
    try:
        space.coordinates(f)
    except ValueError:
        return False
    return True






def averaging_check(A: HopfAlgebra, V: YDModule, n: int, samples: int = 50, seed: int = 0) -> Report:
    """Properties of the averaging operator on ``Hom(A^(x)n, V)``.

    Matrix identities cover every cochain at once; seeded random cochains
    exercise the same identities through the evaluators.
    """
    rep = Report(f"averaging on Hom({A.name}^{n}, {V.name})")
    if not A.has_haar:
        raise ValueError(f"{A.name} has no Haar integral")
    avg = Averaging(A, V, n)
    P = avg.matrix
    dim = P.cols
    space = colinear_space(A, V, n)
    nxt = Averaging(A, V, n + 1)
    d = avg.bar.differential_matrix(n)
    rep.add("M o M = M (matrix)", [] if P @ P == P else ["M^2 - M != 0"], dim)
    rep.add("d M = M d (matrix)", [] if d @ P == nxt.matrix @ d else ["d M - M d != 0"], dim)
    bad = [i for i, c in enumerate(P.column_dicts()) if not is_colinear(space, c)]
    rep.add("image of M is colinear", bad, dim)
    rep.add("rank M = dim Hom^A", [] if rank(P) == space.dim else [f"rank {rank(P)} vs {space.dim}"], 1)

    rng = random.Random(seed)

    def rand_vec():
        k = rng.randint(1, min(6, dim))
        return {i: Fraction(rng.randint(-5, 5) or 1, rng.randint(1, 4)) for i in rng.sample(range(dim), k)}

    def clean(v):
        return {k: c for k, c in v.items() if c != 0}

    fs = [rand_vec() for _ in range(samples)]
    bad = [i for i, f in enumerate(fs) if clean(bar_diff(avg, n, avg(f))) != clean(nxt(bar_diff(avg, n, f)))]
    rep.add("d(M(f)) = M(d(f)) on random cochains", bad, samples)
    bad = [i for i, f in enumerate(fs) if clean(avg(avg(f))) != clean(avg(f))]
    rep.add("M(M(f)) = M(f) on random cochains", bad, samples)

    # positives: random combinations of colinear basis maps; negatives: random non-colinear maps
    bad = []
    basis = space.basis()
    for i in range(samples):
        f: dict = {}
        for v in rng.sample(basis, min(3, len(basis))):
            add_into_vec(f, v, Fraction(rng.randint(1, 5)))
        f = clean(f)
        if clean(avg(f)) != f:
            bad.append(i)
    rep.add("M(f) = f for colinear f", bad, samples)
    bad = []
    checked = 0
    for i, f in enumerate(fs):
        if is_colinear(space, clean(f)):
            continue
        checked += 1
        if clean(avg(f)) == clean(f):
            bad.append(i)
    rep.add("M(f) != f for non-colinear f", bad, checked)
    return rep


def bar_diff(avg: Averaging, n: int, f: dict) -> dict:
    return avg.bar.differential(n, f)


def add_into_vec(out: dict, vec: dict, c) -> None:
    for k, v in vec.items():
        out[k] = out.get(k, ZERO) + c * v


# -- separability homotopy ------------------------------------------------------


def algebra_integral(A: HopfAlgebra) -> dict:
    """Normalized integral ``L`` in ``A`` with ``a L = eps(a) L`` and ``eps(L) = 1``."""
    keys = A.basis()
    rows: dict = {}
    for a in keys:
        e = A.counit_basis(a)
        for i, k in enumerate(keys):
            for z, c in A.mul_basis(a, k).items():
                r = rows.setdefault((a, z), {})
                r[i] = r.get(i, ZERO) + c
            if e != 0:
                r = rows.setdefault((a, k), {})
                r[i] = r.get(i, ZERO) - e
    kb = solve_kernel([{k: v for k, v in r.items() if v != 0} for r in rows.values()], len(keys))
    for v in kb.vectors:
        s = sum((c * A.counit_basis(keys[i]) for i, c in v.items()), ZERO)
        if s != 0:
            return {keys[i]: c / s for i, c in v.items()}
    raise ValueError(f"{A.name} has no normalized integral (not semisimple)")


def contracting_homotopy_check(A: HopfAlgebra, M: Bimodule, N: int) -> Report:
    """``s d + d s = id`` in degrees ``1..N`` of the Hochschild complex.

    ``(s f)(a1..a(n-1)) = (-1)^n f(a1..a(n-1), L1) <- S(L2)`` for the
    normalized integral ``L``; its existence forces ``H^n = 0`` for n >= 1.
    """
    L = algebra_integral(A)
    bar = BarCochains(A, list(range(M.dim)), M.twisted_right)
    split = []
    for lk, lc in L.items():
        for (l1, l2), d in A.comul_basis(lk).items():
            for sk, e in A.antipode_basis(l2).items():
                split.append((bar.kidx[l1], bar.kidx[sk], lc * d * e))

    def s(n, f):
        out: dict = {}
        sign = -ONE if n % 2 else ONE
        for idx, c in f.items():
            t, j = bar.unindex(n, idx)
            for l1, sk, w in split:
                if t[-1] != l1:
                    continue
                for v, g in bar.act_table[(j, sk)]:
                    add_term(out, bar.index(t[:-1], v), sign * c * w * g)
        return out

    rep = Report(f"contracting homotopy for H({A.name}, {M.name})")
    for n in range(1, N + 1):
        bad = []
        for idx in range(bar.ambient_dim(n)):
            f = {idx: ONE}
            total = s(n + 1, bar.differential(n, f))
            for k, v in bar.differential(n - 1, s(n, f)).items():
                add_term(total, k, v)
            if total != f:
                bad.append(bar.unindex(n, idx))
        rep.add(f"s d + d s = id in degree {n}", bad, bar.ambient_dim(n))
    return rep


# -- random bimodules -----------------------------------------------------------


def _characters(G) -> list[list[int]]:
    """All homomorphisms ``G -> {+1, -1}`` as value lists."""
    out = []
    for vals in itertools.product((1, -1), repeat=G.order):
        if all(vals[G.mul(g, h)] == vals[g] * vals[h] for g in range(G.order) for h in range(G.order)):
            out.append(list(vals))
    return out


def _standard_rep(G) -> list | None:
    """The 2-dimensional standard representation when ``G`` is labelled by permutations of 3 points."""
    labels = list(G.labels or [])
    if sorted(labels) != ["123", "132", "213", "231", "312", "321"]:
        return None
    perms = [tuple(int(ch) - 1 for ch in lab) for lab in labels]
    mats = []
    for s in perms:
        cols = []
        for v in ((1, -1, 0), (0, 1, -1)):
            x = [0, 0, 0]
            for i in range(3):
                x[s[i]] += v[i]
            cols.append((Fraction(x[0]), Fraction(x[0] + x[1])))
        mats.append([[cols[0][0], cols[1][0]], [cols[0][1], cols[1][1]]])
    return mats


def _conjugate(P, Pinv, M):
    def mm(X, Y):
        return [[sum((X[i][k] * Y[k][j] for k in range(2)), Fraction(0)) for j in range(2)] for i in range(2)]

    return mm(mm(P, M), Pinv)


def random_bimodule(A, G, seed: int) -> Bimodule:
    """Seeded 2-dimensional bimodule over ``CG`` or ``O(G)``.

    Over ``CG`` the left action is a sum of two sign characters or the
    standard representation of ``S3``; the right action is diagonal in
    characters.  Over ``O(G)`` both sides are diagonal evaluations.  A
    random rational change of basis is applied to both sides.
    """
    rng = random.Random(seed)
    keys = A.basis()
    kind = A.name.startswith("C")
    if kind:
        chars = _characters(G)
        std = _standard_rep(G)
        use_std = std is not None and rng.random() < 0.5
        if use_std:
            left = {g: std[g] for g in keys}
        else:
            c1, c2 = rng.choice(chars), rng.choice(chars)
            left = {g: [[Fraction(c1[g]), Fraction(0)], [Fraction(0), Fraction(c2[g])]] for g in keys}
        r1, r2 = rng.choice(chars), rng.choice(chars)
        if use_std:
            r2 = r1  # a scalar right action commutes with the standard representation
        right = {g: [[Fraction(r1[g]), Fraction(0)], [Fraction(0), Fraction(r2[g])]] for g in keys}
    else:
        g1, g2, g3, g4 = (rng.randrange(G.order) for _ in range(4))

        def ev(a, b):
            return {h: [[Fraction(int(h == a)), Fraction(0)], [Fraction(0), Fraction(int(h == b))]] for h in keys}

        left, right = ev(g1, g2), ev(g3, g4)
    while True:
        P = [[Fraction(rng.randint(-3, 3)) for _ in range(2)] for _ in range(2)]
        det = P[0][0] * P[1][1] - P[0][1] * P[1][0]
        if det != 0:
            break
    Pinv = [[P[1][1] / det, -P[0][1] / det], [-P[1][0] / det, P[0][0] / det]]
    left = {a: _conjugate(P, Pinv, m) for a, m in left.items()}
    right = {a: _conjugate(P, Pinv, m) for a, m in right.items()}
    return Bimodule.from_matrices(A, left, right, name=f"random[{seed}]")
