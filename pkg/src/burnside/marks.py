"""Table of marks and exact membership in the Burnside ring.

Row ``i`` of the table is the transitive G-set ``G/H_i``; column ``j``
counts the points of ``G/H_i`` fixed by ``H_j``.  A ghost vector ``x``
lies in the Burnside ring iff ``c M = x`` has an integral solution ``c``,
which is found by back substitution in exact integer arithmetic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .lattice import SubgroupClassList
from .perm import Subgroup, coset_labels


class MarksError(AssertionError):
    """The computed table violates a structural invariant."""


@dataclass(frozen=True)
class NonIntegral:
    """Back substitution hit an inexact division at ``index``."""

    index: int


def mark(Hi: Subgroup, Hj: Subgroup) -> int:
    """Fixed points of ``Hj`` on ``G/Hi``, counted over a transversal of ``Hi``.

    The coset ``gHi`` is fixed by ``Hj`` iff ``g⁻¹ Hj g ⊆ Hi``.
    """
    G = Hi.parent
    if Hj.parent is not G:
        raise ValueError("subgroups of different groups")
    mult, inv = G.mult, G.inv
    labels = coset_labels(G.whole, Hi)
    transversal = np.unique(labels)
    ginv = inv[transversal]
    conj = mult[mult[ginv[:, None], Hj.indices[None, :]], transversal[:, None]]
    return int(Hi.mask[conj].all(axis=1).sum())


class MarksTable:
    """The ``r × r`` table of marks for a canonical class list."""

    def __init__(self, classes: SubgroupClassList):
        self.classes = classes
        self.entries = self._compute()
        self.check()

    @property
    def r(self) -> int:
        return self.classes.r

    def _compute(self) -> list[list[int]]:
        # mark(H_i, H_j) = #{K ~ H_j : K ⊆ H_i} * |N_G(H_j)| / |H_i|
        cl = self.classes
        r = cl.r
        stacks = [np.stack([S.mask for S in c]) for c in cl.classes]
        table = [[0] * r for _ in range(r)]
        for i, Hi in enumerate(cl.reps):
            outside = ~Hi.mask
            for j in range(i + 1):
                Hj = cl.reps[j]
                if Hi.order % Hj.order:
                    continue
                inside = int((~np.any(stacks[j] & outside, axis=1)).sum())
                num = inside * cl.normalizers[j].order
                if num % Hi.order:
                    raise MarksError(f"non-integral mark at ({i}, {j})")
                table[i][j] = num // Hi.order
        return table

    def check(self):
        cl = self.classes
        G = cl.parent
        M = self.entries
        r = self.r
        for i in range(r):
            for j in range(i + 1, r):
                if M[i][j]:
                    raise MarksError(f"entry ({i}, {j}) above the diagonal")
            if M[i][i] != cl.normalizers[i].order // cl.reps[i].order or M[i][i] <= 0:
                raise MarksError(f"bad diagonal entry at {i}")
            if M[i][0] != G.order // cl.reps[i].order:
                raise MarksError(f"bad first-column entry at {i}")
        if any(v != 1 for v in M[r - 1]):
            raise MarksError("last row must be all ones")

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)

    def determinant(self) -> int:
        d = 1
        for i in range(self.r):
            d *= self.entries[i][i]
        return d

    def to_text(self) -> str:
        return "\n".join(" ".join(str(v) for v in row[: i + 1]) for i, row in enumerate(self.entries)) + "\n"

    def to_json(self) -> dict:
        cl = self.classes
        return {
            "r": self.r,
            "classes": [
                {"index": i + 1, "order": H.order, "class_size": s}
                for i, (H, s) in enumerate(zip(cl.reps, cl.class_sizes))
            ],
            "rows": [row[: i + 1] for i, row in enumerate(self.entries)],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def marks_table(classes: SubgroupClassList) -> MarksTable:
    return MarksTable(classes)


def marks_of(b: Sequence[int], M: MarksTable) -> list[int]:
    """Ghost vector ``b · M`` of a Burnside-ring element given by multiplicities."""
    E = M.entries
    r = M.r
    if len(b) != r:
        raise ValueError(f"expected {r} multiplicities")
    return [sum(int(b[i]) * E[i][j] for i in range(j, r)) for j in range(r)]


def decompose(x: Sequence[int], M: MarksTable) -> list[int] | NonIntegral:
    """Solve ``c · M = x`` exactly, from the last class down."""
    E = M.entries
    r = M.r
    if len(x) != r:
        raise ValueError(f"expected a ghost vector of length {r}")
    c = [0] * r
    for j in range(r - 1, -1, -1):
        acc = int(x[j])
        for i in range(j + 1, r):
            if c[i] and E[i][j]:
                acc -= c[i] * E[i][j]
        q, rem = divmod(acc, E[j][j])
        if rem:
            return NonIntegral(j)
        c[j] = q
    return c


def is_in_burnside(x: Sequence[int], M: MarksTable) -> bool:
    return not isinstance(decompose(x, M), NonIntegral)


def is_unit_in_burnside(u: Sequence[int], M: MarksTable) -> bool:
    if any(v not in (1, -1) for v in u):
        raise ValueError("a ghost-ring unit has entries ±1 only")
    return is_in_burnside(u, M)


def structure_constants(M: MarksTable, i: int, j: int) -> list[int] | NonIntegral:
    """Decompose ``[G/H_i] · [G/H_j]`` via the pointwise product of table rows."""
    E = M.entries
    return decompose([a * b for a, b in zip(E[i], E[j])], M)
