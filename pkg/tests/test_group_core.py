"""Core group machinery: table validation, censuses, subgroup searches.

The census oracle here is deliberately dumb: enumerate the cyclic subgroup
generated by every element with plain python, deduplicate, and bucket by
size.  Every fast census in the library has to agree with it.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cycensus.construct import (
    alternating_4,
    cyclic,
    dihedral,
    direct_product,
    group_by_name,
    order16,
    p4_odd,
)
from cycensus.groups import Group, GroupError, build_from_generators, validate_table
from cycensus.numtheory import divisor_count


def brute_census(table) -> dict[int, int]:
    """Cyclic subgroups by order, found by generating each one explicitly."""
    n = len(table)
    seen = set()
    for x in range(n):
        members = [0]
        acc = x
        while acc != 0:
            members.append(acc)
            acc = table[acc][x]
        seen.add(frozenset(members))
    census: dict[int, int] = {}
    for sub in seen:
        census[len(sub)] = census.get(len(sub), 0) + 1
    return census


SAMPLE_NAMES = ["C1", "C12", "C2xC2xC2", "S3", "D8", "Q8", "A4", "heis27", "G7", "G14", "C7:C3"]


@pytest.mark.parametrize("name", SAMPLE_NAMES)
def test_census_matches_brute_force(name):
    g = group_by_name(name)
    assert g.cyclic_census() == brute_census(g.table.tolist())


def test_census_total_and_divisor_floor():
    for name in SAMPLE_NAMES:
        g = group_by_name(name)
        total = g.census_total()
        assert total == sum(g.cyclic_census().values())
        assert total >= divisor_count(g.n)
        assert (total == divisor_count(g.n)) == g.is_cyclic


# -- table validation -------------------------------------------------------


def test_rejects_non_square():
    with pytest.raises(GroupError, match="square"):
        validate_table(np.zeros((2, 3), dtype=np.int64))


def test_rejects_empty():
    with pytest.raises(GroupError, match="empty"):
        validate_table(np.zeros((0, 0), dtype=np.int64))


def test_rejects_out_of_range_entries():
    t = np.array([[0, 1], [1, 2]])
    with pytest.raises(GroupError, match="0..n-1"):
        validate_table(t)


def test_rejects_broken_identity_row():
    t = np.array([[0, 0], [1, 0]])
    with pytest.raises(GroupError, match=r"identity row broken: 0\*1 != 1"):
        validate_table(t)


def test_rejects_broken_identity_column():
    t = np.array([[0, 1], [0, 1]])
    with pytest.raises(GroupError, match="identity column broken"):
        validate_table(t)


def test_rejects_repeated_entry_in_row():
    t = np.array([[0, 1, 2], [1, 1, 0], [2, 0, 1]])
    with pytest.raises(GroupError, match="not a permutation"):
        validate_table(t)


# A 5x5 latin square with identity 0 that is not associative: the census
# machinery must refuse it and name a violating triple.
NON_ASSOC_LOOP = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 4, 0, 1, 3],
    [3, 2, 4, 0, 1],
    [4, 3, 1, 2, 0],
]


def test_rejects_non_associative_loop_and_names_a_triple():
    with pytest.raises(GroupError, match=r"associativity fails: \(1\*1\)\*2 != 1\*\(1\*2\)"):
        validate_table(np.array(NON_ASSOC_LOOP))


def test_group_error_is_a_value_error():
    assert issubclass(GroupError, ValueError)


# -- relabeling invariance --------------------------------------------------


POOL = ["C6", "D8", "Q8", "S3", "C2xC4", "C3xC3", "A4", "C10"]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(POOL), st.randoms(use_true_random=False))
def test_census_is_relabeling_invariant(name, rng):
    g = group_by_name(name)
    perm = list(range(1, g.n))
    rng.shuffle(perm)
    perm = np.array([0] + perm)  # identity must stay at index 0
    inv = np.empty_like(perm)
    inv[perm] = np.arange(g.n)
    relabeled = Group(perm[g.table[np.ix_(inv, inv)]], name=f"{name}-shuffled")
    assert relabeled.cyclic_census() == g.cyclic_census()
    assert relabeled.fingerprint() == g.fingerprint()


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=1, max_value=60))
def test_cyclic_group_census_is_divisor_function(n):
    g = cyclic(n)
    assert g.is_cyclic
    assert g.census_total() == divisor_count(n)
    assert all(n % int(d) == 0 for d in np.unique(g.element_orders()))


# -- whole-group invariants ---------------------------------------------------


def test_element_orders_histogram_c12():
    g = cyclic(12)
    assert g.order_histogram() == {1: 1, 2: 1, 3: 2, 4: 2, 6: 2, 12: 4}


def test_power_and_inverse_agree():
    g = group_by_name("C5")
    for x in range(5):
        assert g.power(x, -1) == g.inverse(x)
        assert g.power(x, 7) == g.power(x, 7 % 5)
        assert g.mul(x, g.inverse(x)) == 0


def test_exponent_values():
    assert cyclic(6).exponent == 6
    assert group_by_name("C2xC2").exponent == 2
    assert group_by_name("Q8").exponent == 4
    assert p4_odd(3, "xii").exponent == 9


def test_nilpotency_class_values():
    assert cyclic(1).nilpotency_class() == 0
    assert cyclic(12).nilpotency_class() == 1
    assert group_by_name("D8").nilpotency_class() == 2
    assert group_by_name("Q8").nilpotency_class() == 2
    assert dihedral(8).nilpotency_class() == 3
    assert group_by_name("S3").nilpotency_class() is None
    assert alternating_4().nilpotency_class() is None


def test_center_and_derived_sizes():
    s3 = group_by_name("S3")
    assert len(s3.center()) == 1 and len(s3.derived_subgroup()) == 3
    q8 = group_by_name("Q8")
    assert len(q8.center()) == 2 and len(q8.derived_subgroup()) == 2
    c12 = cyclic(12)
    assert len(c12.center()) == 12 and c12.derived_subgroup() == frozenset({0})


def test_q8_has_a_unique_involution():
    q8 = group_by_name("Q8")
    assert q8.order_histogram() == {1: 1, 2: 1, 4: 6}
    assert q8.cyclic_census() == {1: 1, 2: 1, 4: 3}


# -- subgroup searches --------------------------------------------------------


def test_a4_subgroup_lattice():
    a4 = alternating_4()
    sizes = sorted(len(s) for s in a4.all_subgroups())
    assert sizes == [1, 2, 2, 2, 3, 3, 3, 3, 4, 12]
    assert not a4.has_subgroup_of_order(6)
    assert a4.sylow_count(2) == 1
    assert a4.sylow_count(3) == 4
    assert a4.census_total() == 8


def test_d8_subgroup_lattice():
    d8 = group_by_name("D8")
    sizes = sorted(len(s) for s in d8.all_subgroups())
    assert sizes == [1, 2, 2, 2, 2, 2, 4, 4, 4, 8]
    for d in (1, 2, 4, 8):
        assert d8.has_subgroup_of_order(d)
    assert not d8.has_subgroup_of_order(3)
    assert not d8.has_subgroup_of_order(16)


def test_cyclic_subgroups_agree_with_lattice():
    for name in ("D8", "A4", "Q8", "C12"):
        g = group_by_name(name)
        cyc = set(g.cyclic_subgroups())
        from_lattice = {
            s for s in g.all_subgroups()
            if any(frozenset(_cyc_members(g, x)) == s for x in s)
        }
        assert cyc == from_lattice
        assert len(cyc) == g.census_total()


def _cyc_members(g: Group, x: int) -> set[int]:
    members = {0}
    acc = x
    while acc != 0:
        members.add(acc)
        acc = g.mul(acc, x)
    return members


def test_klein_subgroup_found_without_cyclic_witness():
    # A4 has a subgroup of order 4 but no element of order 4; the search
    # must find it as a join of two order-2 subgroups.
    a4 = alternating_4()
    assert 4 not in a4.order_histogram()
    assert a4.has_subgroup_of_order(4)


def test_fingerprints_separate_c4_from_klein():
    assert cyclic(4).fingerprint() != group_by_name("C2xC2").fingerprint()


# -- generator-driven tabulation ----------------------------------------------


def test_build_from_generators_symmetric_group():
    def act(state, g):
        perm = ((1, 0, 2), (0, 2, 1))[g]
        return tuple(state[i] for i in perm)

    s3 = build_from_generators(6, 2, act, (0, 1, 2), name="sym3")
    assert s3.n == 6
    assert s3.census_total() == 5
    assert s3.fingerprint() == group_by_name("S3").fingerprint()


def test_build_from_generators_respects_bound():
    def act(state, g):
        return state + 1

    with pytest.raises(GroupError, match="exceeds bound"):
        build_from_generators(4, 1, act, 0)


def test_direct_product_census_is_multiplicative_for_coprime_orders():
    a, b = cyclic(4), group_by_name("S3")
    prod = direct_product(a, b)
    assert prod.census_total() == a.census_total() * b.census_total()
