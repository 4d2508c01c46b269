"""Subgroups of G up to conjugacy, in a fixed canonical order.

The ordered representatives ``H_1, ..., H_r`` built here index every
vector and matrix downstream.  Ordering is by subgroup order, then by the
sorted element-index tuple, so ``H_1`` is trivial, ``H_r`` is G and the
table of marks comes out lower triangular.
"""

from __future__ import annotations

import json
from functools import cached_property

import numpy as np

from .perm import (
    DEFAULT_ORDER_CAP,
    PermGroup,
    Subgroup,
    _extend,
    format_cycles,
    is_conjugate,
    normalizer,
    parse_cycles,
    subgroup_closure,
)


class LatticeError(ValueError):
    """Imported or computed lattice data failed validation."""


def cyclic_subgroups(G: PermGroup) -> list[Subgroup]:
    """Distinct cyclic subgroups, in order of their least generator index."""
    seen: dict[bytes, Subgroup] = {}
    covered = np.zeros(G.order, dtype=bool)
    for x in range(G.order):
        if covered[x]:
            continue
        Z = subgroup_closure(G, [x])
        # every generator of <x> yields the same subgroup
        orders = G.element_orders[Z.indices]
        covered[Z.indices[orders == Z.order]] = True
        seen.setdefault(Z.key, Z)
    return list(seen.values())


def conjugacy_class(T: Subgroup) -> list[Subgroup]:
    """All G-conjugates of T (orbit under conjugation by G's generators)."""
    G = T.parent
    maps = [G.conj_map(g) for g in G.generator_indices]
    orbit = {T.key: T}
    stack = [T]
    while stack:
        S = stack.pop()
        for cm in maps:
            mask = np.zeros_like(S.mask)
            mask[cm[S.indices]] = True
            U = Subgroup(G, mask)
            if U.key not in orbit:
                U._gens = [int(cm[x]) for x in S.generators]
                orbit[U.key] = U
                stack.append(U)
    return list(orbit.values())


def _class_orbits(G: PermGroup) -> list[list[Subgroup]]:
    """Conjugacy classes of subgroups via cyclic extension up to conjugacy.

    Every subgroup T is reached by a chain ``1 < <z1> < <z1,z2> < ... = T``;
    conjugating the chain into the representative of each step shows that
    extending one representative per class by every cyclic subgroup of G
    finds every class.
    """
    cyclic = cyclic_subgroups(G)
    zs = [Z.generators[0] for Z in cyclic if Z.order > 1]
    known: set[bytes] = set()
    classes: list[list[Subgroup]] = []

    def add(T: Subgroup):
        orbit = conjugacy_class(T)
        known.update(S.key for S in orbit)
        classes.append(orbit)

    add(G.trivial)
    todo = 0
    while todo < len(classes):
        S = classes[todo][0]
        todo += 1
        for z in zs:
            if S.mask[z]:
                continue
            mask = _extend(G, S.mask, list(S.generators), [z])
            T = Subgroup(G, mask, gens=list(S.generators) + [z])
            if T.key in known:
                continue
            add(T)
    return classes


def _canonical_order(classes: list[list[Subgroup]]) -> list[list[Subgroup]]:
    out = []
    for orbit in classes:
        orbit = sorted(orbit, key=lambda S: S.element_indices)
        out.append(orbit)
    out.sort(key=lambda o: (o[0].order, o[0].element_indices))
    return out


class SubgroupClassList:
    """Ordered conjugacy-class representatives ``H_1, ..., H_r`` of G."""

    def __init__(self, parent: PermGroup, classes: list[list[Subgroup]]):
        self.parent = parent
        self.classes = _canonical_order(classes)
        self.reps = [c[0] for c in self.classes]
        self.class_sizes = [len(c) for c in self.classes]
        self._index = {S.key: i for i, c in enumerate(self.classes) for S in c}
        self._check()

    def _check(self):
        G = self.parent
        if self.reps[0].order != 1 or self.reps[-1].order != G.order:
            raise LatticeError("first class must be trivial and last must be G")
        for H, size, N in zip(self.reps, self.class_sizes, self.normalizers):
            if size * N.order != G.order:
                raise LatticeError(f"orbit-stabilizer fails for class of order {H.order}")
            if G.order % H.order:
                raise LatticeError("subgroup order does not divide |G|")

    @property
    def r(self) -> int:
        return len(self.reps)

    def __len__(self):
        return len(self.reps)

    @cached_property
    def normalizers(self) -> list[Subgroup]:
        return [normalizer(H) for H in self.reps]

    def all_subgroups(self) -> list[Subgroup]:
        return [S for c in self.classes for S in c]

    def index_of(self, S: Subgroup | np.ndarray) -> int:
        """0-based class index of a subgroup (or boolean mask)."""
        key = S.key if isinstance(S, Subgroup) else np.packbits(S).tobytes()
        try:
            return self._index[key]
        except KeyError:
            raise LatticeError("subgroup not found in the class list") from None

    def describe(self, i: int) -> str:
        H = self.reps[i]
        if H.is_cyclic():
            return "cyclic"
        return "abelian" if H.is_abelian() else ""

    def to_json(self) -> dict:
        G = self.parent
        return {
            "degree": G.degree,
            "generators": [format_cycles(g) for g in G.generators],
            "classes": [
                {
                    "order": H.order,
                    "representative": [format_cycles(G.elements[g]) for g in H.generators] or ["()"],
                }
                for H in self.reps
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)


def all_subgroups(G: PermGroup) -> list[Subgroup]:
    return class_list(G).all_subgroups()


_CACHE: dict[int, SubgroupClassList] = {}


def class_list(G: PermGroup) -> SubgroupClassList:
    """The canonical class list of G (cached per group object)."""
    cl = _CACHE.get(id(G))
    if cl is None or cl.parent is not G:
        cl = SubgroupClassList(G, _class_orbits(G))
        _CACHE[id(G)] = cl
    return cl


def group_from_json(doc: dict, cap: int = DEFAULT_ORDER_CAP, name: str | None = None) -> PermGroup:
    degree = int(doc["degree"])
    gens = [parse_cycles(s, degree) for s in doc["generators"]]
    return PermGroup(gens, name=name, cap=cap)


def load_lattice(doc: dict | str, cap: int = DEFAULT_ORDER_CAP, name: str | None = None) -> SubgroupClassList:
    """Rebuild a class list from its JSON form, re-validating everything.

    Each representative is closed under multiplication from its listed
    generators, checked against the stated order, and checked to be
    non-conjugate to every other representative.  Class orbits are then
    recomputed, so the result does not depend on the order of the input.
    """
    if isinstance(doc, str):
        doc = json.loads(doc)
    G = group_from_json(doc, cap, name)
    reps = []
    for entry in doc["classes"]:
        idx = [G.index(parse_cycles(s, G.degree)) for s in entry["representative"]]
        H = subgroup_closure(G, idx)
        if H.order != int(entry["order"]):
            raise LatticeError(f"representative generates order {H.order}, expected {entry['order']}")
        reps.append(H)
    for a in range(len(reps)):
        for b in range(a + 1, len(reps)):
            if is_conjugate(reps[a], reps[b])[0]:
                raise LatticeError(f"classes {a + 1} and {b + 1} are conjugate")
    cl = SubgroupClassList(G, [conjugacy_class(H) for H in reps])
    _CACHE[id(G)] = cl
    return cl


def subgroup_count_check(cl: SubgroupClassList) -> bool:
    """``Σ |G : N_G(H_i)|`` equals the number of subgroups found."""
    G = cl.parent
    return sum(G.order // N.order for N in cl.normalizers) == len(cl.all_subgroups())

