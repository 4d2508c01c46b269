import itertools
import random

import pytest

from burnside import gf2, groups
from burnside.lattice import class_list
from burnside.marks import is_unit_in_burnside, marks_table
from burnside.units import (
    NotAbelian,
    WrongConstruction,
    CapExceeded,
    abelian_basis_units,
    brute_force_units,
    brute_force_units_naive,
    coset_decompose,
    conjecture_check,
    elementary_abelian_difference,
    equations_for,
    gaussian_binomial,
    inversion_units,
    omega2_dim,
    omega2_dim_by_pairs,
    span_of,
    two_quotient,
    two_rank,
    unit_group,
)

from conftest import POOL, SMALL_POOL, get_group


def cl_of(name):
    return class_list(get_group(name))


def test_two_quotient_whole_group():
    cl = cl_of("S4")
    data = two_quotient(cl, cl.r - 1)
    assert data.N.order == data.R.order == 24 and data.m == 0


def test_two_quotient_c2():
    data = two_quotient(cl_of("C2"), 0)
    assert (data.N.order, data.R.order, data.m) == (2, 1, 1)


def test_two_quotient_s3():
    data = two_quotient(cl_of("S3"), 0)
    assert data.N.order == 6 and data.R.order == 3 and data.m == 1
    assert data.R.is_cyclic()


@pytest.mark.parametrize("name", ["D8", "C2xC2xC2", "S4", "C2xC4"])
def test_coset_decompose(name):
    cl = cl_of(name)
    G = cl.parent
    data = two_quotient(cl, 0)
    assert all(coset_decompose(data, x) == 0 for x in data.R.indices)
    for k, e in enumerate(data.basis_cosets):
        assert coset_decompose(data, e) == 1 << k
    # alpha is a homomorphism N -> GF(2)^m
    for a, b in itertools.product(data.N.indices[:12], repeat=2):
        assert coset_decompose(data, G.mult[a, b]) == coset_decompose(data, a) ^ coset_decompose(data, b)
    with pytest.raises(ValueError):
        outside = [x for x in range(G.order) if not data.N.mask[x]]
        if not outside:
            raise ValueError
        coset_decompose(data, outside[0])


def test_equations_whole_group():
    cl = cl_of("S3")
    eq = equations_for(cl, cl.r - 1)
    assert eq.m == 0 and eq.rows == [0]


def test_equations_c2():
    eq = equations_for(cl_of("C2"), 0)
    # l1 + v1 + v2 = 0, plus the zero row from the identity coset
    assert eq.m == 1 and eq.rows == [0, 0b111]


def test_equations_c3():
    eq = equations_for(cl_of("C3"), 0)
    assert eq.m == 0 and eq.rows == [0, 0b11]
    assert unit_group(get_group("C3")).rank == 1


@pytest.mark.parametrize("name", POOL)
def test_equation_rows_touch_p_and_q_only(name):
    cl = cl_of(name)
    for i in range(cl.r):
        eq = equations_for(cl, i)
        for row in eq.rows:
            v = eq.v_part(row)
            assert v == 0 or (v >> i) & 1
            assert bin(v).count("1") in (0, 2)


@pytest.mark.parametrize("name, rank", [("C1", 1), ("S3", 3), ("A5", 5), ("D8", 5), ("C2", 2), ("A4", 2), ("S4", 6)])
def test_unit_group_ranks(name, rank):
    res = unit_group(get_group(name))
    assert res.rank == rank
    assert res.all_verified


def test_trivial_group_basis():
    assert unit_group(get_group("C1")).basis == [(-1,)]


@pytest.mark.parametrize("name, count", [("C2", 4), ("C3", 2), ("S3", 8)])
def test_brute_force_examples(name, count):
    assert len(brute_force_units(get_group(name))) == count


def test_brute_force_cap():
    with pytest.raises(CapExceeded):
        brute_force_units(get_group("S4"), cap_r=10)


@pytest.mark.parametrize("name", [n for n in SMALL_POOL if class_list(get_group(n)).r <= 12])
def test_pruned_oracle_matches_naive(name):
    G = get_group(name)
    assert brute_force_units(G) == brute_force_units_naive(G)


@pytest.mark.parametrize("name", POOL)
def test_oracle_equivalence(name):
    G = get_group(name)
    assert unit_group(G).units() == brute_force_units(G, cap_r=30)


@pytest.mark.parametrize("name", POOL)
def test_unit_group_properties(name):
    G = get_group(name)
    res = unit_group(G)
    M = marks_table(res.classes)
    r = res.r
    assert 1 <= res.rank <= r
    assert (-1,) * r in res
    for u in res.basis:
        assert tuple(a * a for a in u) == (1,) * r
    for u, w in itertools.combinations_with_replacement(res.basis, 2):
        prod = tuple(a * b for a, b in zip(u, w))
        assert is_unit_in_burnside(prod, M) and prod in res
    if G.order % 2:
        assert res.rank == 1


@pytest.mark.parametrize("name", POOL)
def test_choice_independence(name):
    G = get_group(name)
    base = unit_group(G).space
    for seed in range(5):
        assert unit_group(G, rng=random.Random(seed)).space == base


def test_jobs_do_not_change_result():
    G = get_group("S4")
    assert unit_group(G, jobs=4).space == unit_group(G).space


@pytest.mark.parametrize("name, n", [("C2", 1), ("C4", 1), ("C6", 1), ("C12", 1), ("C2xC2", 2), ("C2xC4", 2),
                                     ("C2xC2xC2", 3), ("C3", 0), ("C9", 0), ("C3xC3", 0)])
def test_abelian_rank(name, n):
    G = get_group(name)
    assert two_rank(G) == n
    res = unit_group(G)
    assert res.rank == 2 ** n
    basis = abelian_basis_units(G)
    assert len(basis) == 2 ** n
    M = marks_table(res.classes)
    assert all(is_unit_in_burnside(u, M) for u in basis)
    assert span_of(basis, res.r) == res.space


def test_abelian_basis_c2_and_c3():
    assert abelian_basis_units(get_group("C2")) == [(-1, 1), (1, -1)]
    assert abelian_basis_units(get_group("C3")) == [(-1, -1)]


def test_abelian_basis_rejects_nonabelian():
    with pytest.raises(NotAbelian):
        abelian_basis_units(get_group("S3"))


@pytest.mark.parametrize("name", ["D8", "Q8", "C2xC4", "C2xC2xC2"])
def test_two_group_lower_bound(name):
    G = get_group(name)
    assert unit_group(G).rank >= 2 ** two_rank(G)


@pytest.mark.parametrize("orders, rank", [([3], 3), ([5], 3), ([7], 3), ([9], 4), ([15], 5), ([3, 3], 7)])
def test_inversion_family(orders, rank):
    G = groups.semidirect_inversion(orders)
    res = unit_group(G)
    units = inversion_units(G)
    assert res.rank == rank == len(units)
    M = marks_table(res.classes)
    assert all(is_unit_in_burnside(u, M) for u in units)
    assert span_of(units, res.r) == res.space


def test_inversion_units_rejects_other_groups():
    for name in ("S4", "C6", "D8"):
        with pytest.raises(WrongConstruction):
            inversion_units(get_group(name))


@pytest.mark.parametrize("name", ["C3", "C9", "C15", "C21", "C3xC3", "F21"])
def test_omega2_odd_order(name):
    G = get_group(name)
    assert omega2_dim(G) == class_list(G).r


def test_omega2_examples():
    assert omega2_dim(get_group("C2xC2")) == 11
    assert omega2_dim(get_group("S3")) - 4 == 2


@pytest.mark.parametrize("name", POOL)
def test_omega2_matches_pair_count(name):
    G = get_group(name)
    assert omega2_dim(G) == omega2_dim_by_pairs(G)


def count_subspaces(n, k):
    spans = set()
    for combo in itertools.combinations(range(1, 1 << n), k):
        basis = gf2.span_rref(combo, n)
        if len(basis) == k:
            spans.add(tuple(basis))
    return len(spans)


@pytest.mark.parametrize("n, k", [(n, k) for n in range(5) for k in range(n + 1)])
def test_gaussian_binomial_counts_subspaces(n, k):
    assert gaussian_binomial(n, k) == count_subspaces(n, k)


def test_gaussian_binomial_examples():
    assert gaussian_binomial(7, 0) == 1
    assert gaussian_binomial(2, 1) == 3
    assert gaussian_binomial(4, 2) == 35
    with pytest.raises(ValueError):
        gaussian_binomial(2, 3)


# (C2)^3 by hand: 7 lines with 1 hyperplane, 7 planes with 3, the whole group with 7
@pytest.mark.parametrize("k, expected", [(1, 1), (2, 6), (3, 35)])
def test_elementary_abelian_formula(k, expected):
    G = groups.elementary_abelian(k)
    assert elementary_abelian_difference(k) == expected
    assert omega2_dim(G) - class_list(G).r == expected
    assert omega2_dim_by_pairs(G) - class_list(G).r == expected


@pytest.mark.parametrize("name, lhs, rhs", [("A5", 4, 4), ("S3", 2, 2), ("S4", 5, 11)])
def test_conjecture_examples(name, lhs, rhs):
    rep = conjecture_check(get_group(name))
    assert (rep.lhs, rep.rhs, rep.holds) == (lhs, rhs, True)


@pytest.mark.parametrize("name", POOL)
def test_conjecture_holds(name):
    assert conjecture_check(get_group(name)).holds
