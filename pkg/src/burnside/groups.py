"""Named permutation groups used throughout the test pool and the CLI."""

from __future__ import annotations

import itertools
from typing import Sequence

from .perm import DEFAULT_ORDER_CAP, Permutation, PermGroup


def _cycle(points: Sequence[int], degree: int) -> Permutation:
    return Permutation.from_cycles([list(points)], degree)


def symmetric(n: int, cap: int = DEFAULT_ORDER_CAP) -> PermGroup:
    if n < 1:
        raise ValueError("symmetric(n) needs n >= 1")
    if n == 1:
        gens = [Permutation.identity(1)]
    else:
        gens = [_cycle([0, 1], n), _cycle(range(n), n)]
    return PermGroup(gens, name=f"S{n}", cap=cap)


def alternating(n: int, cap: int = DEFAULT_ORDER_CAP) -> PermGroup:
    if n < 1:
        raise ValueError("alternating(n) needs n >= 1")
    if n < 3:
        gens = [Permutation.identity(n)]
    else:
        gens = [_cycle([0, 1, k], n) for k in range(2, n)]
    return PermGroup(gens, name=f"A{n}", cap=cap)


def cyclic(n: int, cap: int = DEFAULT_ORDER_CAP) -> PermGroup:
    if n < 1:
        raise ValueError("cyclic(n) needs n >= 1")
    gen = Permutation.identity(1) if n == 1 else _cycle(range(n), n)
    return PermGroup([gen], name=f"C{n}", cap=cap)


def dihedral(order: int, cap: int = DEFAULT_ORDER_CAP) -> PermGroup:
    """Dihedral group of the given order (symmetries of a regular polygon)."""
    if order < 2 or order % 2:
        raise ValueError("dihedral order must be even and >= 2")
    n = order // 2
    if n == 1:
        G = cyclic(2, cap)
    elif n == 2:
        G = elementary_abelian(2, cap)
    else:
        rot = _cycle(range(n), n)
        ref = Permutation([(-k) % n for k in range(n)])
        G = PermGroup([rot, ref], cap=cap)
    G.name = f"D{order}"
    return G


def elementary_abelian(k: int, cap: int = DEFAULT_ORDER_CAP) -> PermGroup:
    """``(C2)^k`` acting on ``2k`` points by disjoint transpositions."""
    if k < 0:
        raise ValueError("elementary_abelian(k) needs k >= 0")
    if k == 0:
        return PermGroup([Permutation.identity(1)], name="EA0", cap=cap)
    gens = [_cycle([2 * i, 2 * i + 1], 2 * k) for i in range(k)]
    return PermGroup(gens, name=f"EA{k}", cap=cap)


def direct_product(G: PermGroup, H: PermGroup, cap: int | None = None) -> PermGroup:
    """``G × H`` on the disjoint union of the point sets."""
    dg, dh = G.degree, H.degree
    gens = [Permutation(list(g.images) + [dg + k for k in range(dh)]) for g in G.generators]
    gens += [Permutation(list(range(dg)) + [dg + k for k in h.images]) for h in H.generators]
    name = f"{G.name}x{H.name}" if G.name and H.name else None
    return PermGroup(gens, name=name, cap=cap if cap is not None else max(G.cap, H.cap))


def semidirect_inversion(orders: Sequence[int], cap: int = DEFAULT_ORDER_CAP) -> PermGroup:
    """``A ⋊ <i>`` for ``A = C_{m1} × ... × C_{mt}`` with every ``m`` odd.

    A acts regularly on its own elements; ``i`` is the map ``a ↦ a⁻¹``.
    """
    orders = list(orders)
    if not orders:
        raise ValueError("need at least one cyclic factor")
    for m in orders:
        if m < 3 or m % 2 == 0:
            raise ValueError(f"factor C{m} must have odd order >= 3")
    points = list(itertools.product(*(range(m) for m in orders)))
    where = {a: k for k, a in enumerate(points)}
    gens = []
    for t in range(len(orders)):
        shift = [where[tuple((a[s] + (s == t)) % orders[s] for s in range(len(orders)))] for a in points]
        gens.append(Permutation(shift))
    gens.append(Permutation([where[tuple((-x) % m for x, m in zip(a, orders))] for a in points]))
    name = "inv(" + "x".join(f"C{m}" for m in orders) + ")"
    G = PermGroup(gens, name=name, cap=cap)
    G.inversion_factors = tuple(orders)
    return G
