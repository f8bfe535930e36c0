"""Sparse exact matrices, fraction-free rank, and kernels."""

from __future__ import annotations

import heapq
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .scalars import RationalFunction, exact_div, format_scalar, parse_scalar, specialize


class SparseMatrix:
    """Immutable ``rows x cols`` matrix stored as ``{(r, c): nonzero}``."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix shape must be nonnegative")
        self.rows = rows
        self.cols = cols
        clean = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
            if v != 0:
                clean[(r, c)] = v if isinstance(v, (Fraction, RationalFunction)) else Fraction(v)
        self._entries = clean

    @classmethod
    def from_dense(cls, data, cols: int | None = None) -> "SparseMatrix":
        data = [list(row) for row in data]
        nrows = len(data)
        ncols = cols if cols is not None else (len(data[0]) if data else 0)
        return cls(nrows, ncols, {(i, j): v for i, row in enumerate(data) for j, v in enumerate(row)})

    @classmethod
    def from_columns(cls, rows: int, columns) -> "SparseMatrix":
        """Build from a sequence of sparse column vectors ``{row: value}``."""
        entries = {}
        ncols = 0
        for j, col in enumerate(columns):
            ncols = j + 1
            for i, v in col.items():
                entries[(i, j)] = v
        return cls(rows, ncols, entries)

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {(i, i): Fraction(1) for i in range(n)})

    @property
    def entries(self) -> dict:
        return dict(self._entries)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, key):
        return self._entries.get(key, Fraction(0))

    def nnz(self) -> int:
        return len(self._entries)

    def is_zero(self) -> bool:
        return not self._entries

    def row_dicts(self) -> list[dict]:
        out = [dict() for _ in range(self.rows)]
        for (r, c), v in self._entries.items():
            out[r][c] = v
        return out

    def column_dicts(self) -> list[dict]:
        out = [dict() for _ in range(self.cols)]
        for (r, c), v in self._entries.items():
            out[c][r] = v
        return out

    def to_dense(self) -> list[list]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), v in self._entries.items():
            out[r][c] = v
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self._entries.items()})

    def scale(self, s) -> "SparseMatrix":
        return SparseMatrix(self.rows, self.cols, {k: v * s for k, v in self._entries.items()})

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        out = dict(self._entries)
        for k, v in other._entries.items():
            out[k] = out.get(k, 0) + v
        return SparseMatrix(self.rows, self.cols, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        right_rows = other.row_dicts()
        out: dict = {}
        for (r, k), v in self._entries.items():
            for c, w in right_rows[k].items():
                out[(r, c)] = out.get((r, c), 0) + v * w
        return SparseMatrix(self.rows, other.cols, out)

    def apply(self, vec: dict) -> dict:
        """Multiply by a sparse column vector ``{col: value}``."""
        out: dict = {}
        cols = self.column_dicts()
        for c, x in vec.items():
            for r, v in cols[c].items():
                out[r] = out.get(r, 0) + v * x
        return {k: v for k, v in out.items() if v != 0}

    def specialize(self, q_value) -> "SparseMatrix":
        return SparseMatrix(
            self.rows, self.cols, {k: specialize(v, q_value) for k, v in self._entries.items()}
        )

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self._entries.items())))

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[r, c, format_scalar(v)] for (r, c), v in sorted(self._entries.items())],
        }

    @classmethod
    def from_json(cls, obj: dict, q=None) -> "SparseMatrix":
        return cls(
            int(obj["rows"]),
            int(obj["cols"]),
            {(int(r), int(c)): parse_scalar(s, q) for r, c, s in obj["entries"]},
        )


# -- elimination ----------------------------------------------------------


def _is_rational_rows(rows) -> bool:
    return all(not isinstance(v, RationalFunction) for row in rows for v in row.values())


def _integer_row(row: dict) -> dict:
    lcm = 1
    for v in row.values():
        lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
    out = {c: int(v * lcm) for c, v in row.items()}
    g = 0
    for v in out.values():
        g = math.gcd(g, v)
    if g > 1:
        out = {c: v // g for c, v in out.items()}
    return out


def _eliminate(rows: list[dict], reduce_back: bool):
    """Sparse elimination, pivoting on smallest column then sparsest row.

    Rational input is cleared to integers and eliminated fraction-free
    (``row <- p*row - x*pivot`` followed by content removal).  Rational
    function input uses field arithmetic.  Returns ``{pivot_col: row}``;
    with ``reduce_back`` the rows are normalized to a reduced echelon form.
    """
    integral = _is_rational_rows(rows) and not reduce_back
    active: dict[int, dict] = {}
    for i, row in enumerate(rows):
        row = {c: v for c, v in row.items() if v != 0}
        if row:
            active[i] = _integer_row(row) if integral else dict(row)
    colmap: dict[int, set] = defaultdict(set)
    for i, row in active.items():
        for c in row:
            colmap[c].add(i)
    heap = list(colmap)
    heapq.heapify(heap)
    pivots: dict[int, dict] = {}
    while heap:
        c = heapq.heappop(heap)
        cand = colmap.get(c)
        if not cand:
            continue
        pi = min(cand, key=lambda r: (len(active[r]), r))
        prow = active.pop(pi)
        for k in prow:
            colmap[k].discard(pi)
        p = prow[c]
        if not integral:
            inv = 1 / p
            prow = {k: v * inv for k, v in prow.items()}
            p = 1
        for j in list(cand):
            row = active[j]
            x = row[c]
            if integral:
                new = {k: p * v for k, v in row.items()}
                for k, v in prow.items():
                    new[k] = new.get(k, 0) - x * v
            else:
                new = dict(row)
                for k, v in prow.items():
                    new[k] = new.get(k, 0) - x * v
            new = {k: v for k, v in new.items() if v != 0}
            if integral and new:
                g = 0
                for v in new.values():
                    g = math.gcd(g, v)
                    if g == 1:
                        break
                if g > 1:
                    new = {k: v // g for k, v in new.items()}
            for k in row:
                if k not in new:
                    colmap[k].discard(j)
            for k in new:
                if k not in row:
                    colmap[k].add(j)
                    heapq.heappush(heap, k)
            if new:
                active[j] = new
            else:
                del active[j]
        pivots[c] = prow
    if reduce_back:
        for c in sorted(pivots, reverse=True):
            prow = pivots[c]
            for k in [k for k in prow if k != c and k in pivots]:
                x = prow.get(k)
                if not x:
                    continue
                for kk, v in pivots[k].items():
                    prow[kk] = prow.get(kk, 0) - x * v
                prow = {kk: v for kk, v in prow.items() if v != 0}
            pivots[c] = prow
    return pivots


def rank(m: SparseMatrix, method: str = "sparse") -> int:
    """Rank over Q (or Q(q) when entries are rational functions)."""
    if method == "sparse":
        return len(_eliminate(m.row_dicts(), reduce_back=False))
    if method == "bareiss":
        return bareiss_rank(m.to_dense())
    raise ValueError(f"unknown rank method {method!r}")


def bareiss_rank(data: list[list]) -> int:
    """Dense Bareiss elimination (exact divisions by the previous pivot)."""
    if not data or not data[0]:
        return 0
    rows = [dict(enumerate(r)) for r in data]
    if _is_rational_rows(rows):
        a = [[_integer_row({j: v for j, v in enumerate(r)}).get(j, 0) for j in range(len(r))] for r in data]
    else:
        a = [list(r) for r in data]
    m, n = len(a), len(a[0])
    prev = 1
    r = 0
    for c in range(n):
        if r == m:
            break
        cand = [i for i in range(r, m) if a[i][c] != 0]
        if not cand:
            continue
        piv = min(cand, key=lambda i: (sum(1 for x in a[i] if x != 0), i))
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, m):
            x = a[i][c]
            for j in range(c + 1, n):
                a[i][j] = exact_div(p * a[i][j] - x * a[r][j], prev)
            a[i][c] = 0
        # rows above the active block keep their values; only prev changes
        prev = p
        r += 1
    return r


@dataclass
class KernelBasis:
    """Basis of a null space in reduced form.

    Vector ``k`` has a 1 at ``free_cols[k]`` and 0 at every other free
    column, so coordinates of a kernel element are read off the free
    columns directly.
    """

    ncols: int
    free_cols: list[int]
    vectors: list[dict] = field(repr=False)

    def __len__(self):
        return len(self.vectors)

    def coordinates(self, vec: dict, check: bool = True) -> list:
        coords = [vec.get(f, Fraction(0)) for f in self.free_cols]
        if check:
            recon: dict = {}
            for x, v in zip(coords, self.vectors):
                if x != 0:
                    for k, y in v.items():
                        recon[k] = recon.get(k, 0) + x * y
            recon = {k: y for k, y in recon.items() if y != 0}
            clean = {k: y for k, y in vec.items() if y != 0}
            if recon != clean:
                raise ValueError("vector does not lie in the kernel")
        return coords

    def dense(self) -> list[tuple]:
        return [tuple(v.get(i, Fraction(0)) for i in range(self.ncols)) for v in self.vectors]


def _components(rows: list[dict], ncols: int) -> list[tuple[list[int], list[int]]]:
    parent = list(range(ncols))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for row in rows:
        keys = [k for k, v in row.items() if v != 0]
        for k in keys[1:]:
            a, b = find(keys[0]), find(k)
            if a != b:
                parent[max(a, b)] = min(a, b)
    cols_by_root: dict[int, list[int]] = defaultdict(list)
    for c in range(ncols):
        cols_by_root[find(c)].append(c)
    rows_by_root: dict[int, list[int]] = defaultdict(list)
    for i, row in enumerate(rows):
        keys = [k for k, v in row.items() if v != 0]
        if keys:
            rows_by_root[find(keys[0])].append(i)
    return [(cols_by_root[r], rows_by_root.get(r, [])) for r in sorted(cols_by_root)]


def solve_kernel(rows: list[dict], ncols: int) -> KernelBasis:
    """Null space of the system ``rows`` (sparse dict rows) in ``ncols`` unknowns.

    The system is split into independent blocks of unknowns first.
    """
    free: list[int] = []
    vecs: dict[int, dict] = {}
    for cols, ridx in _components(rows, ncols):
        if not ridx:
            for c in cols:
                free.append(c)
                vecs[c] = {c: Fraction(1)}
            continue
        pivots = _eliminate([rows[i] for i in ridx], reduce_back=True)
        for c in cols:
            if c not in pivots:
                free.append(c)
                vecs[c] = {c: Fraction(1)}
        for p, prow in pivots.items():
            for k, v in prow.items():
                if k != p:
                    vecs[k][p] = -v
    free.sort()
    return KernelBasis(ncols, free, [vecs[f] for f in free])


def kernel_basis(m: SparseMatrix) -> list[tuple]:
    """Basis of the right null space as dense coordinate tuples."""
    return solve_kernel(m.row_dicts(), m.cols).dense()


def kernel(m: SparseMatrix) -> KernelBasis:
    return solve_kernel(m.row_dicts(), m.cols)
