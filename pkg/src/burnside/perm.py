"""Permutations and finite permutation groups with full element enumeration.

Convention: ``compose(p, q)`` applies ``q`` first, then ``p``, so that
``compose(p, q)(k) == p(q(k))``.  All group elements are enumerated up
front and sorted lexicographically by their image tuples; the identity is
therefore always element 0.  Subgroups are stored as boolean masks over
the parent's element list, which gives O(1) membership and cheap
vectorised conjugation through the multiplication table.
"""

from __future__ import annotations

import math
import re
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

DEFAULT_ORDER_CAP = 20000


class OrderCapExceeded(Exception):
    """The closure of the generators grew past the enumeration cap."""

    def __init__(self, cap: int):
        super().__init__(f"group order exceeds enumeration cap {cap}")
        self.cap = cap


class NotNormal(ValueError):
    pass


class Permutation:
    """A bijection of ``{0, ..., degree-1}`` stored as its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        self.images = images

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        images = list(range(degree))
        seen = set()
        for cycle in cycles:
            for a in cycle:
                if a in seen or not 0 <= a < degree:
                    raise ValueError(f"bad cycle {tuple(cycle)} for degree {degree}")
                seen.add(a)
            for a, b in zip(cycle, list(cycle[1:]) + list(cycle[:1])):
                images[a] = b
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, k: int) -> int:
        return self.images[k]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for k, v in enumerate(self.images):
            inv[v] = k
        return Permutation(inv)

    def is_identity(self) -> bool:
        return all(k == v for k, v in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            k = self.images[start]
            while k != start:
                cycle.append(k)
                seen[k] = True
                k = self.images[k]
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if self.cycles() else 1

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __repr__(self):
        return f"Permutation({list(self.images)})"

    def __str__(self):
        return format_cycles(self)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p∘q``: ``k ↦ p(q(k))``."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} != {q.degree}")
    pi = p.images
    return Permutation(tuple(pi[k] for k in q.images))


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int | None = None) -> Permutation:
    """Parse 1-based cycle notation such as ``(1,2)(3,4,5)``; ``()`` is the identity.

    Whitespace is ignored.  If ``degree`` is omitted the largest point
    mentioned is used.
    """
    s = "".join(text.split())
    if not s:
        raise ValueError("empty permutation")
    pos = 0
    cycles = []
    for m in _CYCLE_RE.finditer(s):
        if m.start() != pos:
            raise ValueError(f"unexpected text at position {pos} in {text!r}")
        pos = m.end()
        body = m.group(1)
        if not body:
            continue
        try:
            pts = [int(x) - 1 for x in body.split(",")]
        except ValueError:
            raise ValueError(f"bad cycle ({body}) in {text!r}") from None
        if min(pts) < 0:
            raise ValueError(f"points are 1-based in {text!r}")
        cycles.append(pts)
    if pos != len(s):
        raise ValueError(f"unexpected text at position {pos} in {text!r}")
    n = max((max(c) + 1 for c in cycles), default=1)
    if degree is None:
        degree = n
    elif n > degree:
        raise ValueError(f"point {n} exceeds degree {degree}")
    return Permutation.from_cycles(cycles, degree)


def format_cycles(p: Permutation) -> str:
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + ",".join(str(k + 1) for k in c) + ")" for c in cycles)


def enumerate_elements(generators: Sequence[Permutation], cap: int = DEFAULT_ORDER_CAP) -> list[Permutation]:
    """All products of ``generators``, sorted lexicographically by images."""
    if cap < 1:
        raise ValueError("cap must be positive")
    degree = generators[0].degree
    gens = [g.images for g in generators]
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(x[k] for k in g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        if len(seen) > cap:
            raise OrderCapExceeded(cap)
        frontier = nxt
    return [Permutation(t) for t in sorted(seen)]


class PermGroup:
    """A permutation group given by generators; elements are enumerated lazily."""

    def __init__(self, generators: Sequence[Permutation], name: str | None = None,
                 cap: int = DEFAULT_ORDER_CAP):
        generators = list(generators)
        if not generators:
            raise ValueError("need at least one generator")
        degree = generators[0].degree
        if any(g.degree != degree for g in generators):
            raise ValueError("generators must have equal degree")
        self.degree = degree
        self.generators = generators
        self.name = name
        self.cap = cap

    def __repr__(self):
        label = self.name or ",".join(map(str, self.generators))
        return f"PermGroup({label})"

    @cached_property
    def elements(self) -> list[Permutation]:
        return enumerate_elements(self.generators, self.cap)

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def images(self) -> np.ndarray:
        """``order × degree`` array of image tuples, row i is element i."""
        return np.array([p.images for p in self.elements], dtype=np.int32).reshape(self.order, self.degree)

    def _lookup(self, rows: np.ndarray) -> np.ndarray:
        """Element indices of image rows (each row must be a group element).

        Keys are built point by point and re-ranked after each step, so they
        stay below ``order * degree`` regardless of the degree.
        """
        images = self.images
        d = self.degree
        ref = np.zeros(self.order, dtype=np.int64)
        key = np.zeros(rows.shape[0], dtype=np.int64)
        for b in range(d):
            ref_k = ref * d + images[:, b]
            uniq = np.unique(ref_k)
            ref = np.searchsorted(uniq, ref_k)
            key = np.searchsorted(uniq, key * d + rows[:, b])
        return key

    @cached_property
    def mult(self) -> np.ndarray:
        """``mult[i, j]`` is the index of ``compose(elements[i], elements[j])``."""
        n = self.order
        table = np.empty((n, n), dtype=np.int32)
        images = self.images
        chunk = max(1, 2_000_000 // max(1, n * self.degree))
        for start in range(0, n, chunk):
            block = images[start:start + chunk]
            prods = block[:, images]  # prods[a, j, k] = block[a][images[j][k]]
            table[start:start + chunk] = self._lookup(prods.reshape(-1, self.degree)).reshape(-1, n)
        return table

    @cached_property
    def inv(self) -> np.ndarray:
        return np.argmax(self.mult == 0, axis=1)

    @cached_property
    def element_orders(self) -> np.ndarray:
        return np.array([p.order() for p in self.elements], dtype=np.int64)

    def index(self, p: Permutation) -> int:
        if p.degree != self.degree:
            raise ValueError(f"{p} has degree {p.degree}, group has degree {self.degree}")
        i = int(self._lookup(np.array([p.images]))[0])
        if i >= self.order or self.elements[i] != p:
            raise ValueError(f"{format_cycles(p)} is not an element of the group")
        return i

    def conj_map(self, g: int) -> np.ndarray:
        """Index map ``x ↦ g x g⁻¹``."""
        return self.mult[self.mult[g], self.inv[g]]

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, np.ones(self.order, dtype=bool), gens=[self.index(g) for g in self.generators])

    @cached_property
    def trivial(self) -> "Subgroup":
        mask = np.zeros(self.order, dtype=bool)
        mask[0] = True
        return Subgroup(self, mask, gens=[])

    @cached_property
    def generator_indices(self) -> list[int]:
        return sorted({self.index(g) for g in self.generators} - {0})

    def is_abelian(self) -> bool:
        g = self.generator_indices
        m = self.mult
        return all(m[a, b] == m[b, a] for a in g for b in g)


def enumerate_group(group: PermGroup, cap: int = DEFAULT_ORDER_CAP) -> list[Permutation]:
    """Enumerate ``group`` under an explicit cap."""
    return enumerate_elements(group.generators, cap)


class Subgroup:
    """A subgroup of a :class:`PermGroup`, held as a boolean mask over its elements."""

    def __init__(self, parent: PermGroup, mask: np.ndarray, gens: Sequence[int] | None = None):
        self.parent = parent
        self.mask = mask
        self._gens = None if gens is None else sorted(set(int(g) for g in gens) - {0})

    @cached_property
    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    @property
    def element_indices(self) -> tuple[int, ...]:
        return tuple(int(i) for i in self.indices)

    @property
    def order(self) -> int:
        return int(self.indices.size)

    @cached_property
    def key(self) -> bytes:
        return np.packbits(self.mask).tobytes()

    def __len__(self):
        return self.order

    def __contains__(self, idx: int) -> bool:
        return bool(self.mask[idx])

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.parent is other.parent and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"Subgroup(order={self.order}, gens={[str(self.parent.elements[g]) for g in self.generators]})"

    def elements(self) -> list[Permutation]:
        return [self.parent.elements[i] for i in self.indices]

    def issubset(self, other: "Subgroup") -> bool:
        return not np.any(self.mask & ~other.mask)

    @property
    def generators(self) -> list[int]:
        """A small generating set (element indices), found greedily."""
        if self._gens is None:
            self._gens = subgroup_closure(self.parent, self.indices).generators
        return self._gens

    def conjugate(self, g: int) -> "Subgroup":
        """``g H g⁻¹``."""
        cm = self.parent.conj_map(g)
        mask = np.zeros_like(self.mask)
        mask[cm[self.indices]] = True
        return Subgroup(self.parent, mask, gens=[int(cm[x]) for x in self.generators])

    def is_abelian(self) -> bool:
        m = self.parent.mult
        g = self.generators
        return all(m[a, b] == m[b, a] for a in g for b in g)

    def is_cyclic(self) -> bool:
        return bool(self.parent.element_orders[self.indices].max() == self.order)


def _extend(parent: PermGroup, mask: np.ndarray, gens: list[int], new: Sequence[int]) -> np.ndarray:
    """Close ``mask`` (a subgroup generated by ``gens``) after adjoining ``new``.

    Right multiplication by generators, breadth first from every element,
    so the result is the subgroup generated by ``gens + new``.
    """
    mult = parent.mult
    mask = mask.copy()
    mask[list(new)] = True
    g = np.array(gens + list(new), dtype=np.intp)
    frontier = np.flatnonzero(mask)
    while frontier.size:
        prod = mult[frontier[:, None], g[None, :]].ravel()
        fresh = prod[~mask[prod]]
        if not fresh.size:
            break
        fresh = np.unique(fresh)
        mask[fresh] = True
        frontier = fresh
    return mask


def subgroup_closure(parent: PermGroup, seed: Iterable[int], base: Subgroup | None = None) -> Subgroup:
    """Smallest subgroup containing ``seed`` (element indices) and ``base``.

    Generators are picked greedily from the seed in the given order, so the
    returned subgroup carries a short generating set.
    """
    if base is None:
        mask = np.zeros(parent.order, dtype=bool)
        mask[0] = True
        gens: list[int] = []
    else:
        mask = base.mask
        gens = list(base.generators)
    for x in seed:
        x = int(x)
        if mask[x]:
            continue
        mask = _extend(parent, mask, gens, [x])
        gens.append(x)
    if base is not None and mask is base.mask:
        mask = mask.copy()
    return Subgroup(parent, mask, gens=gens)


def normalizer(H: Subgroup) -> Subgroup:
    """``{g ∈ G : g H g⁻¹ = H}``, by testing every element of G."""
    G = H.parent
    mult, inv = G.mult, G.inv
    conj = mult[mult[:, H.indices], inv[:, None]]
    return Subgroup(G, H.mask[conj].all(axis=1))


def derived_subgroup(H: Subgroup) -> Subgroup:
    """Normal closure in H of the commutators ``a⁻¹b⁻¹ab`` of H's generators."""
    G = H.parent
    mult, inv = G.mult, G.inv
    gens = H.generators
    comms = {int(mult[mult[inv[a], inv[b]], mult[a, b]]) for a in gens for b in gens}
    comms.discard(0)
    if not comms:
        return G.trivial
    c = np.array(sorted(comms), dtype=np.intp)
    h = H.indices
    conj = mult[mult[h[:, None], c[None, :]], inv[h][:, None]]
    return subgroup_closure(G, np.unique(conj))


def is_conjugate(H: Subgroup, K: Subgroup) -> tuple[bool, int | None]:
    """Whether ``g H g⁻¹ = K`` for some g; returns ``(found, g)``."""
    G = H.parent
    if K.parent is not G:
        raise ValueError("subgroups of different groups")
    if H.order != K.order:
        return False, None
    eo = G.element_orders
    if not np.array_equal(np.sort(eo[H.indices]), np.sort(eo[K.indices])):
        return False, None
    if H == K:
        return True, 0
    mult, inv = G.mult, G.inv
    conj = mult[mult[:, H.indices], inv[:, None]]
    hits = np.flatnonzero(K.mask[conj].all(axis=1))
    if hits.size:
        return True, int(hits[0])
    return False, None


def coset_labels(N: Subgroup, H: Subgroup) -> np.ndarray:
    """For each element of G, the least index in its coset ``xH`` (``-1`` outside N)."""
    G = N.parent
    labels = np.full(G.order, -1, dtype=np.intp)
    labels[N.indices] = G.mult[N.indices[:, None], H.indices[None, :]].min(axis=1)
    return labels


def is_normal_in(H: Subgroup, N: Subgroup) -> bool:
    G = H.parent
    mult, inv = G.mult, G.inv
    gens = np.array(N.generators, dtype=np.intp)
    if not gens.size:
        return H.issubset(N)
    conj = mult[mult[gens[:, None], H.indices[None, :]], inv[gens][:, None]]
    return H.issubset(N) and bool(H.mask[conj].all())


def quotient_class_reps(N: Subgroup, H: Subgroup, rng=None) -> list[int]:
    """One element of N per conjugacy class of ``N/H``.

    Cosets are identified by their least element.  Classes are listed in
    order of their least coset label; the representative is that label,
    or a random coset member when ``rng`` is given.
    """
    if not is_normal_in(H, N):
        raise NotNormal("H is not normal in N")
    G = N.parent
    mult, inv = G.mult, G.inv
    labels = coset_labels(N, H)
    cosets = np.unique(labels[N.indices])
    gens = N.generators
    seen: set[int] = set()
    reps = []
    for c in cosets:
        c = int(c)
        if c in seen:
            continue
        orbit = {c}
        stack = [c]
        while stack:
            x = stack.pop()
            for g in gens:
                y = int(labels[mult[mult[g, x], inv[g]]])
                if y not in orbit:
                    orbit.add(y)
                    stack.append(y)
        seen |= orbit
        if rng is None:
            reps.append(c)
        else:
            coset = mult[c, H.indices]
            reps.append(int(coset[rng.randrange(coset.size)]))
    return reps
