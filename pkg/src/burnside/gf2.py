"""Linear algebra over GF(2) with rows packed into Python ints.

Bit ``k`` of a row is coordinate ``k``.  Every routine returns reduced
row-echelon form, so two spans are equal exactly when their reduced
bases are equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Gf2Matrix:
    width: int
    rows: tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        limit = 1 << self.width
        for row in self.rows:
            if not 0 <= row < limit:
                raise ValueError(f"row {row:b} does not fit in width {self.width}")

    @classmethod
    def from_bits(cls, rows: Iterable[Sequence[int]]) -> "Gf2Matrix":
        """Build from explicit 0/1 lists (coordinate 0 first)."""
        rows = [list(r) for r in rows]
        width = len(rows[0]) if rows else 0
        return cls(width, tuple(pack(r) for r in rows))

    def __len__(self):
        return len(self.rows)

    def apply(self, x: int) -> int:
        """``M x`` as a bit vector indexed by row."""
        out = 0
        for i, row in enumerate(self.rows):
            if (row & x).bit_count() & 1:
                out |= 1 << i
        return out


def pack(bits: Sequence[int]) -> int:
    v = 0
    for k, b in enumerate(bits):
        if b & 1:
            v |= 1 << k
    return v


def unpack(v: int, width: int) -> list[int]:
    return [(v >> k) & 1 for k in range(width)]


def rref(M: Gf2Matrix) -> tuple[Gf2Matrix, list[int], int]:
    """Reduced row-echelon form, pivot columns ascending, zero rows dropped."""
    pivots: list[int] = []
    reduced: list[int] = []
    for row in M.rows:
        for p, r in zip(pivots, reduced):
            if (row >> p) & 1:
                row ^= r
        if not row:
            continue
        p = (row & -row).bit_length() - 1
        for i, r in enumerate(reduced):
            if (r >> p) & 1:
                reduced[i] = r ^ row
        pivots.append(p)
        reduced.append(row)
    order = sorted(range(len(pivots)), key=pivots.__getitem__)
    pivots = [pivots[i] for i in order]
    reduced = [reduced[i] for i in order]
    return Gf2Matrix(M.width, tuple(reduced)), pivots, len(pivots)


def rank(M: Gf2Matrix) -> int:
    return rref(M)[2]


def nullspace(M: Gf2Matrix) -> list[int]:
    """Basis of ``{x : M x = 0}``, one vector per free column.

    The vector for free column ``f`` has bit ``f`` set, no other free bit
    set, and pivot bits chosen to satisfy the equations.
    """
    R, pivots, _ = rref(M)
    pivot_set = set(pivots)
    basis = []
    for f in range(M.width):
        if f in pivot_set:
            continue
        v = 1 << f
        for p, row in zip(pivots, R.rows):
            if (row >> f) & 1:
                v |= 1 << p
        basis.append(v)
    return basis


def span_rref(vectors: Iterable[int], width: int) -> list[int]:
    return list(rref(Gf2Matrix(width, tuple(vectors)))[0].rows)


def project_span(basis: Iterable[int], coords: Sequence[int], width: int | None = None) -> list[int]:
    """Reduced basis of the image of ``span(basis)`` on ``coords``.

    Coordinate ``coords[j]`` of the input becomes coordinate ``j`` of the
    output.
    """
    out = []
    for v in basis:
        w = 0
        for j, c in enumerate(coords):
            if (v >> c) & 1:
                w |= 1 << j
        out.append(w)
    return span_rref(out, len(coords))


def in_span(v: int, reduced: Sequence[int]) -> bool:
    """Membership test against a reduced basis."""
    for r in reduced:
        p = (r & -r).bit_length() - 1
        if (v >> p) & 1:
            v ^= r
    return v == 0


def span_elements(reduced: Sequence[int]) -> list[int]:
    """All ``2^k`` vectors in the span."""
    out = [0]
    for r in reduced:
        out += [x ^ r for x in out]
    return out
