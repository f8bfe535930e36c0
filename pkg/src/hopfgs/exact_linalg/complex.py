"""Finite cochain complexes and their homology."""

from __future__ import annotations

from dataclasses import dataclass, field

from .matrix import SparseMatrix, rank


class ComplexError(ValueError):
    """Raised when a sequence of matrices is not a cochain complex."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


@dataclass(frozen=True)
class CochainComplex:
    """``C^0 -d0-> C^1 -d1-> ... -> C^k`` with ``d_i`` of shape ``n_{i+1} x n_i``."""

    dims: tuple[int, ...]
    differentials: tuple[SparseMatrix, ...]
    validate: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "differentials", tuple(self.differentials))
        if len(self.differentials) != max(len(self.dims) - 1, 0):
            raise ComplexError(
                f"{len(self.dims)} terms need {len(self.dims) - 1} differentials, "
                f"got {len(self.differentials)}"
            )
        for i, d in enumerate(self.differentials):
            if d.shape != (self.dims[i + 1], self.dims[i]):
                raise ComplexError(
                    f"d{i} has shape {d.shape}, expected {(self.dims[i + 1], self.dims[i])}", i
                )
        if self.validate:
            bad = first_nonzero_composition(self.differentials)
            if bad is not None:
                raise ComplexError(f"d{bad + 1} * d{bad} != 0", bad)

    def ranks(self) -> list[int]:
        return [rank(d) for d in self.differentials]

    def homology(self) -> list[int]:
        return homology_dims(self)


def first_nonzero_composition(differentials) -> int | None:
    for i in range(len(differentials) - 1):
        if not (differentials[i + 1] @ differentials[i]).is_zero():
            return i
    return None


def homology_dims(c: CochainComplex, ranks: list[int] | None = None) -> list[int]:
    """``dim ker d_i - rank d_{i-1}`` at every position."""
    bad = first_nonzero_composition(c.differentials)
    if bad is not None:
        raise ComplexError(f"not a complex: d{bad + 1} * d{bad} != 0", bad)
    r = list(ranks) if ranks is not None else c.ranks()
    out = []
    for i, n in enumerate(c.dims):
        out_rank = r[i] if i < len(r) else 0
        in_rank = r[i - 1] if i >= 1 else 0
        out.append(n - out_rank - in_rank)
    return out
