"""Finite-dimensional Hopf algebras from structure constants.

Group algebras and function algebras of finite groups are built from
Cayley tables.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .base import HopfAlgebra
from .linear import ONE


class GroupTableError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its Cayley table ``table[i][j] = i*j``."""

    name: str
    table: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        n = len(self.table)
        if n == 0:
            raise GroupTableError("empty group table")
        if any(len(row) != n for row in self.table):
            raise GroupTableError("group table must be square")
        if any(not (0 <= x < n) for row in self.table for x in row):
            raise GroupTableError("table entries must be element indices")
        if len(self.labels) != n:
            raise GroupTableError("one label per element required")
        for a, b, c in itertools.product(range(n), repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                raise GroupTableError(f"not associative at ({a}, {b}, {c})")
        ids = [e for e in range(n) if all(self.table[e][x] == x == self.table[x][e] for x in range(n))]
        if not ids:
            raise GroupTableError("no identity element")
        e = ids[0]
        for x in range(n):
            if not any(self.table[x][y] == e for y in range(n)):
                raise GroupTableError(f"element {x} has no inverse")

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def identity(self) -> int:
        n = self.order
        return next(e for e in range(n) if all(self.table[e][x] == x for x in range(n)))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        e = self.identity
        return next(y for y in range(self.order) if self.table[a][y] == e)

    @classmethod
    def from_table(cls, table, name: str = "G", labels=None) -> "FiniteGroup":
        table = tuple(tuple(int(x) for x in row) for row in table)
        labels = tuple(labels) if labels is not None else tuple(f"g{i}" for i in range(len(table)))
        return cls(name, table, labels)

    @classmethod
    def from_json(cls, obj: dict, name: str = "G") -> "FiniteGroup":
        g = obj["group"] if "group" in obj else obj
        table = g["table"]
        if "order" in g and int(g["order"]) != len(table):
            raise GroupTableError(f"declared order {g['order']} but table has {len(table)} rows")
        return cls.from_table(table, name=g.get("name", name), labels=g.get("labels"))

    def to_json(self) -> dict:
        return {"group": {"order": self.order, "table": [list(r) for r in self.table], "labels": list(self.labels)}}


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup.from_table(
        [[(i + j) % n for j in range(n)] for i in range(n)], name=f"Z{n}", labels=[f"g^{i}" for i in range(n)]
    )


def symmetric_group(n: int) -> FiniteGroup:
    """``S_n`` acting on ``{0..n-1}``; product ``(s*t)(i) = s(t(i))``."""
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(s[t[i]] for i in range(n))] for t in perms] for s in perms]
    labels = ["".join(str(x + 1) for x in p) for p in perms]
    return FiniteGroup.from_table(table, name=f"S{n}", labels=labels)


BUILTIN_GROUPS = {
    "Z2": lambda: cyclic_group(2),
    "Z3": lambda: cyclic_group(3),
    "Z4": lambda: cyclic_group(4),
    "S3": lambda: symmetric_group(3),
}


def load_group(source: str) -> FiniteGroup:
    """A built-in name (``Z2``, ``Z3``, ``Z4``, ``S3``) or a JSON file path."""
    if source in BUILTIN_GROUPS:
        return BUILTIN_GROUPS[source]()
    path = Path(source)
    if path.exists():
        return FiniteGroup.from_json(json.loads(path.read_text()), name=path.stem)
    raise GroupTableError(f"unknown group {source!r}; built-ins: {', '.join(BUILTIN_GROUPS)}")


class FiniteHopfAlgebra(HopfAlgebra):
    """Hopf algebra on basis ``0..dim-1`` given by explicit tables.

    ``mult[i][j]``, ``comult[i]`` and ``antipode[i]`` are sparse dicts;
    ``counit[i]`` and ``haar[i]`` are scalars.  ``haar`` is given only for
    algebras declared cosemisimple.
    """

    def __init__(self, name, labels, mult, unit, comult, counit, antipode, haar=None):
        super().__init__()
        self.name = name
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        self.mult = [[dict(c) for c in row] for row in mult]
        self.unit = dict(unit)
        self.comult = [dict(c) for c in comult]
        self.counit_table = [Fraction(c) for c in counit]
        self.antipode_table = [dict(c) for c in antipode]
        self.haar_table = None if haar is None else [Fraction(c) for c in haar]
        if len(self.mult) != self.dim or any(len(r) != self.dim for r in self.mult):
            raise ValueError("multiplication table has the wrong shape")

    def basis(self, max_degree=None):
        return list(range(self.dim))

    def one(self):
        return dict(self.unit)

    def mul_basis(self, x, y):
        return self.mult[x][y]

    def comul_basis(self, x):
        return self.comult[x]

    def counit_basis(self, x):
        return self.counit_table[x]

    def antipode_basis(self, x):
        return self.antipode_table[x]

    @property
    def has_haar(self):
        return self.haar_table is not None

    def haar_basis(self, x):
        if self.haar_table is None:
            raise ValueError(f"{self.name} is not declared cosemisimple")
        return self.haar_table[x]

    def key_name(self, key):
        return self.labels[key]

    def with_antipode(self, antipode, name=None) -> "FiniteHopfAlgebra":
        """Copy with a replaced antipode table (used for fault injection)."""
        return FiniteHopfAlgebra(
            name or self.name, self.labels, self.mult, self.unit, self.comult,
            self.counit_table, antipode, self.haar_table,
        )


def group_algebra(group: FiniteGroup) -> FiniteHopfAlgebra:
    """``CG``: grouplike basis, ``S(g) = g^-1``, Haar ``h(g) = [g = e]``."""
    n = group.order
    e = group.identity
    return FiniteHopfAlgebra(
        name=f"C{group.name}",
        labels=group.labels,
        mult=[[{group.mul(g, h): ONE} for h in range(n)] for g in range(n)],
        unit={e: ONE},
        comult=[{(g, g): ONE} for g in range(n)],
        counit=[1] * n,
        antipode=[{group.inverse(g): ONE} for g in range(n)],
        haar=[1 if g == e else 0 for g in range(n)],
    )


def function_algebra(group: FiniteGroup) -> FiniteHopfAlgebra:
    """``O(G)`` on the indicator basis ``delta_g``."""
    n = group.order
    e = group.identity
    comult = [dict() for _ in range(n)]
    for x in range(n):
        for y in range(n):
            comult[group.mul(x, y)][(x, y)] = ONE
    return FiniteHopfAlgebra(
        name=f"O({group.name})",
        labels=[f"d[{lab}]" for lab in group.labels],
        mult=[[({g: ONE} if g == h else {}) for h in range(n)] for g in range(n)],
        unit={g: ONE for g in range(n)},
        comult=comult,
        counit=[1 if g == e else 0 for g in range(n)],
        antipode=[{group.inverse(g): ONE} for g in range(n)],
        haar=[Fraction(1, n)] * n,
    )
