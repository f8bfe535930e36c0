"""Finite-dimensional measured algebras ``(R, phi)``.

Frobenius dual bases, the functional ``phi~``, the normalizability test
and the parameter ``q`` with ``q + 1/q = mu``, ``mu^2 = lambda * phi(1)``.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .exact_linalg.scalars import format_scalar, is_symbolic, parse_scalar, simplify
from .hopf_core.linear import ONE, ZERO


class MeasuredAlgebraError(ValueError):
    pass


class DegenerateMeasureError(MeasuredAlgebraError):
    pass


@dataclass
class MeasuredAlgebra:
    """``mult[i][j][k]`` is the coefficient of ``b_k`` in ``b_i b_j``."""

    name: str
    mult: list
    unit: list
    phi: list
    labels: list[str] = field(default_factory=list)

    def __post_init__(self):
        m = len(self.unit)
        if m == 0:
            raise MeasuredAlgebraError("algebra must have positive dimension")
        if len(self.phi) != m or len(self.mult) != m:
            raise MeasuredAlgebraError("mult, unit and phi must all have length dim")
        if any(len(row) != m or any(len(v) != m for v in row) for row in self.mult):
            raise MeasuredAlgebraError("mult must be a dim x dim x dim array")
        if not self.labels:
            self.labels = [f"e{i + 1}" for i in range(m)]
        for i in range(m):
            e = self.basis_vector(i)
            if self.mul(self.unit, e) != e or self.mul(e, self.unit) != e:
                raise MeasuredAlgebraError(f"unit law fails on {self.labels[i]}")
        for i, j, k in itertools.product(range(m), repeat=3):
            bi, bj, bk = self.basis_vector(i), self.basis_vector(j), self.basis_vector(k)
            if self.mul(self.mul(bi, bj), bk) != self.mul(bi, self.mul(bj, bk)):
                raise MeasuredAlgebraError(f"not associative on ({i}, {j}, {k})")

    @property
    def dim(self) -> int:
        return len(self.unit)

    def basis_vector(self, i: int) -> list:
        return [ONE if k == i else ZERO for k in range(self.dim)]

    def mul(self, x: list, y: list) -> list:
        out = [ZERO] * self.dim
        for i, a in enumerate(x):
            if a == 0:
                continue
            for j, b in enumerate(y):
                if b == 0:
                    continue
                for k, c in enumerate(self.mult[i][j]):
                    if c != 0:
                        out[k] = out[k] + a * b * c
        return [simplify(v) for v in out]

    def measure(self, x: list):
        total = ZERO
        for a, p in zip(x, self.phi):
            total = total + a * p
        return simplify(total)

    def gram(self) -> list[list]:
        return [[self.measure(self.mul(self.basis_vector(i), self.basis_vector(j))) for j in range(self.dim)]
                for i in range(self.dim)]

    # -- serialization ------------------------------------------------------
    @classmethod
    def from_json(cls, obj: dict, name: str = "R", q=None) -> "MeasuredAlgebra":
        try:
            m = int(obj["dim"])
            conv = lambda x: parse_scalar(str(x), q=q)  # noqa: E731
            mult = [[[conv(c) for c in v] for v in row] for row in obj["mult"]]
            unit = [conv(c) for c in obj["unit"]]
            phi = [conv(c) for c in obj["phi"]]
        except (KeyError, TypeError) as exc:
            raise MeasuredAlgebraError(f"malformed measured algebra: {exc}") from exc
        if len(unit) != m:
            raise MeasuredAlgebraError(f"declared dim {m} but unit has length {len(unit)}")
        return cls(obj.get("name", name), mult, unit, phi, list(obj.get("labels", [])))

    @classmethod
    def load(cls, path) -> "MeasuredAlgebra":
        path = Path(path)
        try:
            obj = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise MeasuredAlgebraError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
        return cls.from_json(obj, name=path.stem)

    def to_json(self) -> dict:
        f = format_scalar
        return {
            "name": self.name,
            "dim": self.dim,
            "mult": [[[f(c) for c in v] for v in row] for row in self.mult],
            "unit": [f(c) for c in self.unit],
            "phi": [f(c) for c in self.phi],
            "labels": list(self.labels),
        }

    def change_basis(self, P: list[list]) -> "MeasuredAlgebra":
        """The same algebra on the basis ``b'_j = sum_i P[i][j] b_i``."""
        m = self.dim
        Pinv = _inverse(P)
        cols = [[P[i][j] for i in range(m)] for j in range(m)]

        def to_new(v):
            return [simplify(sum((Pinv[j][i] * v[i] for i in range(m)), ZERO)) for j in range(m)]

        mult = [[to_new(self.mul(cols[i], cols[j])) for j in range(m)] for i in range(m)]
        return MeasuredAlgebra(
            self.name, mult, to_new(self.unit), [self.measure(c) for c in cols], [f"b{i + 1}" for i in range(m)]
        )


def _inverse(G: list[list]) -> list[list]:
    n = len(G)
    a = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(G)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            raise DegenerateMeasureError("the bilinear form phi(xy) is degenerate")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [[simplify(x) for x in row[n:]] for row in a]


@dataclass
class FrobeniusDual:
    """``delta(1) = sum_ij coeffs[i][j] b_i (x) b_j``."""

    coeffs: list[list]
    snake_failures: list[str]

    def terms(self) -> dict:
        return {(i, j): c for i, row in enumerate(self.coeffs) for j, c in enumerate(row) if c != 0}


def frobenius_dual(R: MeasuredAlgebra) -> FrobeniusDual:
    """Dual basis tensor with ``coeffs = G^-1``, ``G_ij = phi(b_i b_j)``.

    Both snake identities are verified on every basis vector.
    """
    G = R.gram()
    C = _inverse(G)
    m = R.dim
    bad = []
    for k in range(m):
        # ((phi m) (x) id)(b_k (x) delta) = sum_ij C_ij phi(b_k b_i) b_j
        left = [simplify(sum((C[i][j] * G[k][i] for i in range(m)), ZERO)) for j in range(m)]
        # (id (x) (phi m))(delta (x) b_k) = sum_ij C_ij b_i phi(b_j b_k)
        right = [simplify(sum((C[i][j] * G[j][k] for j in range(m)), ZERO)) for i in range(m)]
        target = R.basis_vector(k)
        if left != target:
            bad.append(f"left snake on {R.labels[k]}")
        if right != target:
            bad.append(f"right snake on {R.labels[k]}")
    return FrobeniusDual(C, bad)


def phi_tilde(R: MeasuredAlgebra, dual: FrobeniusDual | None = None) -> list:
    """``phi~(x) = sum_ij C_ij phi(x b_i b_j)`` on each basis vector."""
    dual = dual or frobenius_dual(R)
    out = []
    for k in range(R.dim):
        bk = R.basis_vector(k)
        total = ZERO
        for (i, j), c in dual.terms().items():
            total = total + c * R.measure(R.mul(R.mul(bk, R.basis_vector(i)), R.basis_vector(j)))
        out.append(simplify(total))
    return out


def _rational_sqrt(x) -> Fraction | None:
    if is_symbolic(x):
        return None
    x = Fraction(x)
    if x < 0:
        return None
    n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None


@dataclass
class Normalizability:
    normalizable: bool
    reason: str = ""
    witness: str | None = None
    lam: object = None
    phi1: object = None
    mu_squared: object = None
    mu: object = None
    q_roots: list | None = None
    phi_tilde: list = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def q_quadratic(self) -> str | None:
        if self.mu_squared is None:
            return None
        if self.mu is not None:
            return f"z^2 - ({format_scalar(self.mu)})*z + 1"
        return f"z^2 - mu*z + 1 with mu^2 = {format_scalar(self.mu_squared)}"

    def to_json(self) -> dict:
        f = lambda x: None if x is None else format_scalar(x)  # noqa: E731
        return {
            "normalizable": self.normalizable,
            "reason": self.reason,
            "witness": self.witness,
            "lambda": f(self.lam),
            "phi1": f(self.phi1),
            "mu_squared": f(self.mu_squared),
            "mu": f(self.mu),
            "q_quadratic": self.q_quadratic,
            "q_roots": None if self.q_roots is None else [f(r) for r in self.q_roots],
            "phi_tilde": [f(x) for x in self.phi_tilde],
            "warnings": list(self.warnings),
        }


def normalizability(R: MeasuredAlgebra) -> Normalizability:
    """Test ``phi~ = lambda * phi`` with ``phi(1) != 0`` and extract ``mu^2``."""
    warnings = []
    if R.dim < 4:
        warnings.append(f"dimension {R.dim} < 4: the monoidal parameter rule assumes dim >= 4")
    try:
        dual = frobenius_dual(R)
    except DegenerateMeasureError as exc:
        return Normalizability(False, str(exc), warnings=warnings)
    pt = phi_tilde(R, dual)
    phi1 = R.measure(R.unit)
    if phi1 == 0:
        return Normalizability(False, "phi(1) = 0", phi1=phi1, phi_tilde=pt, warnings=warnings)
    lam = _ratio(pt, R.phi)
    if lam is None:
        return Normalizability(False, "phi~ and phi are not proportional", phi1=phi1, phi_tilde=pt, warnings=warnings)
    for k in range(R.dim):
        if pt[k] != lam * R.phi[k]:
            return Normalizability(
                False, "phi~ and phi are not proportional", witness=R.labels[k], phi1=phi1,
                phi_tilde=pt, warnings=warnings,
            )
    if lam == 0:
        return Normalizability(False, "lambda = 0", phi1=phi1, phi_tilde=pt, warnings=warnings)
    mu2 = simplify(lam * phi1)
    mu = _rational_sqrt(mu2)
    roots = None
    if mu is not None:
        disc = _rational_sqrt(mu * mu - 4)
        roots = [] if disc is None else sorted({(mu - disc) / 2, (mu + disc) / 2})
    return Normalizability(True, "", None, lam, phi1, mu2, mu, roots, pt, warnings)


def _ratio(pt: list, phi: list):
    """``lambda`` read off the first index where ``phi`` is nonzero."""
    for a, b in zip(pt, phi):
        if b != 0:
            return simplify(a / b)
    return None


# -- built-ins ---------------------------------------------------------------


def diagonal_algebra(weights, name: str | None = None) -> MeasuredAlgebra:
    """``C^n`` with idempotent basis and ``phi(e_i) = weights[i]``."""
    n = len(weights)
    mult = [[[ONE if (i == j == k) else ZERO for k in range(n)] for j in range(n)] for i in range(n)]
    w = [simplify(x) for x in weights]
    return MeasuredAlgebra(name or f"C^{n}", mult, [ONE] * n, w)


def cn(n: int) -> MeasuredAlgebra:
    """``(C^n, phi_n)`` with ``phi_n(e_i) = 1``."""
    return diagonal_algebra([ONE] * n, name=f"C^{n}")


def weighted_c2(w1=1, w2=2) -> MeasuredAlgebra:
    return diagonal_algebra([Fraction(w1), Fraction(w2)], name=f"C^2 weights ({w1},{w2})")


def matrix_algebra(diag_weights, name: str) -> MeasuredAlgebra:
    """``M_k`` on matrix units ``e_ab`` with ``phi(e_ab) = [a = b] * w_a``."""
    k = len(diag_weights)
    units = [(a, b) for a in range(k) for b in range(k)]
    idx = {u: i for i, u in enumerate(units)}
    m = len(units)
    mult = [[[ZERO] * m for _ in range(m)] for _ in range(m)]
    for (a, b), i in idx.items():
        for (c, d), j in idx.items():
            if b == c:
                mult[i][j][idx[(a, d)]] = ONE
    unit = [ONE if a == b else ZERO for a, b in units]
    phi = [simplify(diag_weights[a]) if a == b else ZERO for a, b in units]
    return MeasuredAlgebra(name, mult, unit, phi, [f"e{a + 1}{b + 1}" for a, b in units])


def m2_trace() -> MeasuredAlgebra:
    return matrix_algebra([ONE, ONE], "M2 trace")


def m2_trq(q) -> MeasuredAlgebra:
    """``tr_q(g) = q g_11 + q^-1 g_22``."""
    if q == 0:
        raise MeasuredAlgebraError("q must be nonzero")
    return matrix_algebra([q, 1 / q], f"M2 tr_q (q = {format_scalar(q)})")


def scalar_field(c=1) -> MeasuredAlgebra:
    return MeasuredAlgebra("C", [[[ONE]]], [ONE], [Fraction(c)] if not is_symbolic(c) else [c])


BUILTINS = {
    "cn": lambda n=4, q=None: cn(n),
    "weighted": lambda n=None, q=None: weighted_c2(),
    "m2-trace": lambda n=None, q=None: m2_trace(),
    "m2-trq": lambda n=None, q=None: m2_trq(q if q is not None else Fraction(2)),
    "scalar": lambda n=None, q=None: scalar_field(),
}
