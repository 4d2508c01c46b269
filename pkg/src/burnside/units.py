"""Units of the Burnside ring via GF(2) equation systems.

A ghost-ring unit ``u`` is written ``u(H_i) = (-1)^{v_i}``.  For each class
representative ``H`` with normalizer ``N``, let ``E = N/R`` be the largest
elementary abelian 2-quotient of ``N/H``, with basis ``e_1, ..., e_m`` and
unknowns ``l_k`` standing for a sign character of ``E``.  Every conjugacy
class of ``N/H`` with representative ``q`` contributes one equation

    α_1(q) l_1 + ... + α_m(q) l_m + v_p + v_q' = 0

where ``Rq = Π e_k^{α_k}``, ``H ~ H_p`` and ``<H, q> ~ H_q'``.  The unit
group is the projection of the joint solution space onto the ``v``
coordinates.  Conjugate cosets have the same image in the abelian group
``E``, so one representative per class loses no equation.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import gf2
from .lattice import SubgroupClassList, class_list
from .marks import MarksTable, is_unit_in_burnside, marks_table
from .perm import (
    PermGroup,
    Subgroup,
    coset_labels,
    derived_subgroup,
    quotient_class_reps,
    subgroup_closure,
)

SignVector = tuple[int, ...]


class InternalError(AssertionError):
    pass


class VerificationFailed(AssertionError):
    pass


class CapExceeded(Exception):
    pass


class NotAbelian(ValueError):
    pass


class WrongConstruction(ValueError):
    pass


@dataclass
class TwoQuotientData:
    H: Subgroup
    N: Subgroup
    R: Subgroup
    basis_cosets: list[int]
    labels: np.ndarray = field(repr=False)
    alpha: dict[int, int] = field(repr=False)

    @property
    def m(self) -> int:
        return len(self.basis_cosets)


def elementary_two_quotient(N: Subgroup, H: Subgroup, rng=None) -> TwoQuotientData:
    """Largest elementary abelian 2-quotient ``N/R`` of ``N/H`` (H normal in N).

    ``R`` is generated by ``H``, ``N'`` and the squares of N's generators.
    The basis is picked greedily: cosets are scanned in order of their
    least element (shuffled when ``rng`` is given) and each coset outside
    the span so far is kept.
    """
    G = N.parent
    mult = G.mult
    squares = [int(mult[g, g]) for g in N.generators]
    R = subgroup_closure(G, squares + derived_subgroup(N).generators, base=H)
    labels = coset_labels(N, R)
    cosets = [int(c) for c in np.unique(labels[N.indices])]
    size = len(cosets)
    m = size.bit_length() - 1
    if size != 1 << m:
        raise InternalError(f"|N/R| = {size} is not a power of 2")
    if rng is not None:
        rng.shuffle(cosets)
    span = {int(labels[0]): 0}
    basis: list[int] = []
    for c in cosets:
        if len(span) == size:
            break
        if c in span:
            continue
        if rng is not None:
            members = np.flatnonzero(labels == c)
            c = int(members[rng.randrange(members.size)])
        bit = 1 << len(basis)
        basis.append(int(labels[c]))
        span.update({int(labels[mult[x, c]]): a | bit for x, a in list(span.items())})
    if len(span) != size:
        raise InternalError("greedy basis does not span N/R")
    return TwoQuotientData(H, N, R, basis, labels, span)


def two_quotient(cl: SubgroupClassList, i: int, rng=None) -> TwoQuotientData:
    """Two-quotient data for ``H_i`` inside its normalizer."""
    return elementary_two_quotient(cl.normalizers[i], cl.reps[i], rng)


def coset_decompose(data: TwoQuotientData, n: int) -> int:
    """Bit vector ``α`` with ``Rn = Π e_k^{α_k}``."""
    label = int(data.labels[n])
    if label < 0:
        raise ValueError("element is not in N")
    return data.alpha[label]


@dataclass
class SubgroupEquations:
    p: int
    m: int
    r: int
    rows: list[int]

    @property
    def width(self) -> int:
        return self.m + self.r

    def v_part(self, row: int) -> int:
        return row >> self.m


def equations_for(cl: SubgroupClassList, i: int, rng=None) -> SubgroupEquations:
    data = two_quotient(cl, i, rng)
    H, N = data.H, data.N
    m, r = data.m, cl.r
    rows = set()
    for q in quotient_class_reps(N, H, rng):
        C = subgroup_closure(cl.parent, [q], base=H)
        k = cl.index_of(C)
        rows.add(coset_decompose(data, q) | ((1 << (m + i)) ^ (1 << (m + k))))
    return SubgroupEquations(i, m, r, sorted(rows))


def assemble(eqs: Sequence[SubgroupEquations], r: int) -> tuple[gf2.Gf2Matrix, int]:
    """Global system over ``(l-blocks..., v_1..v_r)``; returns it and the v offset."""
    offsets = []
    total = 0
    for e in eqs:
        offsets.append(total)
        total += e.m
    rows = []
    for e, off in zip(eqs, offsets):
        lmask = (1 << e.m) - 1
        for row in e.rows:
            out = ((row & lmask) << off) | (e.v_part(row) << total)
            if out:
                rows.append(out)
    return gf2.Gf2Matrix(total + r, tuple(rows)), total


def to_signs(v: int, r: int) -> SignVector:
    return tuple(-1 if (v >> k) & 1 else 1 for k in range(r))


def from_signs(u: Sequence[int]) -> int:
    return gf2.pack([1 if s == -1 else 0 for s in u])


@dataclass
class UnitGroupResult:
    classes: SubgroupClassList
    space: list[int]
    basis: list[SignVector]
    all_verified: bool

    @property
    def rank(self) -> int:
        return len(self.space)

    @property
    def r(self) -> int:
        return self.classes.r

    def units(self) -> list[SignVector]:
        return sorted(to_signs(v, self.r) for v in gf2.span_elements(self.space))

    def __contains__(self, u: Sequence[int]) -> bool:
        return gf2.in_span(from_signs(u), self.space)

    def to_json(self, group: str | None = None, conjecture: "ConjectureReport | None" = None) -> dict:
        doc = {
            "group": group or self.classes.parent.name,
            "r": self.r,
            "rank": self.rank,
            "basis": [list(u) for u in self.basis],
            "verified": self.all_verified,
        }
        if conjecture is not None:
            doc["conjecture"] = conjecture.to_json()
        return doc

    def dumps(self, **kw) -> str:
        return json.dumps(self.to_json(**kw))


def unit_group(G: PermGroup, rng=None, jobs: int = 1, classes: SubgroupClassList | None = None,
               marks: MarksTable | None = None) -> UnitGroupResult:
    """Basis of the unit group of the Burnside ring of G, each unit verified."""
    cl = classes if classes is not None else class_list(G)
    M = marks if marks is not None else marks_table(cl)
    r = cl.r
    if jobs > 1 and rng is None:
        with ThreadPoolExecutor(jobs) as pool:
            eqs = list(pool.map(lambda i: equations_for(cl, i), range(r)))
    else:
        eqs = [equations_for(cl, i, rng) for i in range(r)]
    system, v0 = assemble(eqs, r)
    space = gf2.project_span(gf2.nullspace(system), range(v0, v0 + r))
    basis = [to_signs(v, r) for v in space]
    for u in basis:
        if not is_unit_in_burnside(u, M):
            raise VerificationFailed(f"{u} is not in the Burnside ring")
    if not gf2.in_span((1 << r) - 1, space):
        raise VerificationFailed("-1 is missing from the unit group")
    return UnitGroupResult(cl, space, basis, True)


def brute_force_units(G: PermGroup, cap_r: int = 20, marks: MarksTable | None = None) -> list[SignVector]:
    """Every ``±1`` vector that lies in the Burnside ring, from the marks table alone.

    Back substitution fixes ``c_j`` from ``x_j, ..., x_r``, so the ``2^r``
    candidates are walked as a binary tree from the last coordinate down
    and a branch is dropped at its first inexact division.
    """
    M = marks if marks is not None else marks_table(class_list(G))
    r = M.r
    if r > cap_r:
        raise CapExceeded(f"r = {r} exceeds the oracle cap {cap_r}")
    E = M.entries
    cols = [[(i, E[i][j]) for i in range(j + 1, r) if E[i][j]] for j in range(r)]
    c = [0] * r
    x = [0] * r
    found = []

    def walk(j: int):
        if j < 0:
            found.append(tuple(x))
            return
        base = sum(c[i] * e for i, e in cols[j])
        for s in (1, -1):
            q, rem = divmod(s - base, E[j][j])
            if rem:
                continue
            c[j], x[j] = q, s
            walk(j - 1)

    walk(r - 1)
    return sorted(found)


def brute_force_units_naive(G: PermGroup, cap_r: int = 14, marks: MarksTable | None = None) -> list[SignVector]:
    """Test all ``2^r`` sign vectors one by one."""
    M = marks if marks is not None else marks_table(class_list(G))
    r = M.r
    if r > cap_r:
        raise CapExceeded(f"r = {r} exceeds the oracle cap {cap_r}")
    out = []
    for bits in range(1 << r):
        u = to_signs(bits, r)
        if is_unit_in_burnside(u, M):
            out.append(u)
    return sorted(out)


def two_rank(G: PermGroup) -> int:
    """``n`` with ``2^n`` the order of the largest elementary abelian 2-quotient of G."""
    return elementary_two_quotient(G.whole, G.trivial).m


def abelian_basis_units(G: PermGroup) -> list[SignVector]:
    """The units ``-λ_i`` (one per index-2 subgroup ``N_i``) and ``λ_G = Π λ_i``.

    ``λ_i`` is ``+1`` on subgroups contained in ``N_i`` and ``-1`` elsewhere.
    """
    if not G.is_abelian():
        raise NotAbelian(f"{G} is not abelian")
    cl = class_list(G)
    r = cl.r
    index_two = [H for H in cl.reps if 2 * H.order == G.order]
    if not index_two:
        return [(-1,) * r]
    lambdas = [tuple(1 if H.issubset(Ni) else -1 for H in cl.reps) for Ni in index_two]
    lam_G = tuple(math.prod(col) for col in zip(*lambdas))
    return [tuple(-v for v in lam) for lam in lambdas] + [lam_G]


def inversion_units(G: PermGroup) -> list[SignVector]:
    """For ``G = A ⋊ <i>``: the units ``u_N`` for each ``N ≤ A``, plus ``-1``.

    ``u_N`` is ``-1`` exactly on the class of ``<N, i>``.
    """
    cl = class_list(G)
    A = derived_subgroup(G.whole)
    mult, inv = G.mult, G.inv
    if 2 * A.order != G.order or A.order % 2 == 0 or not A.is_abelian():
        raise WrongConstruction(f"{G} is not an odd abelian group extended by inversion")
    outside = np.flatnonzero(~A.mask)
    i = int(outside[0])
    if mult[i, i] != 0 or np.any(mult[mult[i, A.indices], i] != inv[A.indices]):
        raise WrongConstruction("the extending involution does not invert A")
    r = cl.r
    units = []
    for H, size in zip(cl.reps, cl.class_sizes):
        if not H.issubset(A):
            continue
        if size != 1:
            raise WrongConstruction("subgroups of A should be normal")
        k = cl.index_of(subgroup_closure(G, [i], base=H))
        units.append(tuple(-1 if j == k else 1 for j in range(r)))
    return units + [(-1,) * r]


def span_of(units: Sequence[Sequence[int]], r: int) -> list[int]:
    return gf2.span_rref((from_signs(u) for u in units), r)


def index_two_subgroups(H: Subgroup) -> list[Subgroup]:
    """Subgroups of index 2 in H: kernels of the nonzero sign characters."""
    G = H.parent
    data = elementary_two_quotient(H, G.trivial)
    alpha = np.array([data.alpha[int(data.labels[x])] for x in H.indices], dtype=np.int64)
    out = []
    for f in range(1, 1 << data.m):
        parity = np.array([(int(a) & f).bit_count() & 1 for a in alpha], dtype=bool)
        mask = np.zeros(G.order, dtype=bool)
        mask[H.indices[~parity]] = True
        out.append(Subgroup(G, mask))
    return out


def _count_orbits(subs: Sequence[Subgroup], N: Subgroup) -> int:
    if not subs:
        return 0
    G = N.parent
    maps = [G.conj_map(g) for g in N.generators]
    keys = {S.key: S for S in subs}
    seen: set[bytes] = set()
    orbits = 0
    for S in subs:
        if S.key in seen:
            continue
        orbits += 1
        seen.add(S.key)
        stack = [S]
        while stack:
            T = stack.pop()
            for cm in maps:
                mask = np.zeros_like(T.mask)
                mask[cm[T.indices]] = True
                key = np.packbits(mask).tobytes()
                if key not in seen:
                    if key not in keys:
                        raise InternalError("conjugation left the candidate set")
                    seen.add(key)
                    stack.append(keys[key])
    return orbits


def omega2_dim(G: PermGroup, classes: SubgroupClassList | None = None) -> int:
    """Number of G-classes of pairs ``(H, K)`` with ``K ≤ H`` of index at most 2."""
    cl = classes if classes is not None else class_list(G)
    return sum(1 + _count_orbits(index_two_subgroups(H), N) for H, N in zip(cl.reps, cl.normalizers))


def omega2_dim_by_pairs(G: PermGroup, classes: SubgroupClassList | None = None) -> int:
    """Same count, searching the full subgroup list for index-2 pairs."""
    cl = classes if classes is not None else class_list(G)
    subs = cl.all_subgroups()
    total = 0
    for H, N in zip(cl.reps, cl.normalizers):
        halves = [K for K in subs if 2 * K.order == H.order and K.issubset(H)]
        total += 1 + _count_orbits(halves, N)
    return total


def gaussian_binomial(n: int, k: int) -> int:
    """``[n choose k]_2`` from 2-factorials ``[j]_2! = Π (2^i - 1)``."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")

    def fact(j: int) -> int:
        return math.prod((1 << i) - 1 for i in range(1, j + 1))

    num = fact(n)
    den = fact(k) * fact(n - k)
    if num % den:
        raise InternalError("inexact Gaussian binomial")
    return num // den


def elementary_abelian_difference(n: int) -> int:
    """``[n]_2 · Σ_{k<n} [n-1 choose k]_2``, the pair-count excess for ``(C2)^n``."""
    if n == 0:
        return 0
    return ((1 << n) - 1) * sum(gaussian_binomial(n - 1, k) for k in range(n))


@dataclass
class ConjectureReport:
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs

    @property
    def equality(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "holds": self.holds}

    def __str__(self):
        if not self.holds:
            return f"{self.lhs} > {self.rhs} (FAILS)"
        return f"{self.lhs} ≤ {self.rhs} ({'equality' if self.equality else 'strict'})"


def conjecture_check(G: PermGroup, result: UnitGroupResult | None = None) -> ConjectureReport:
    """``rank - 1`` against ``dim Ω₂(G) - dim Ω(G)``."""
    cl = class_list(G)
    if result is None:
        result = unit_group(G, classes=cl)
    return ConjectureReport(result.rank - 1, omega2_dim(G, cl) - cl.r)
