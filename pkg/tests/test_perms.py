import math

import pytest
from hypothesis import given, strategies as st

import oracles
from tiebreak.errors import DegreeMismatch, GroupTooLarge
from tiebreak.perms import (
    Partition,
    Perm,
    all_subgroups,
    compose,
    cycle_type,
    generate,
    is_conjugate,
    order_reversing,
    parse_cycles,
    symmetric_group,
    trivial_group,
    type_number,
)


@st.composite
def perm_of(draw, m=None):
    m = m if m is not None else draw(st.integers(1, 7))
    return Perm(draw(st.permutations(range(m))))


@st.composite
def perm_pair(draw):
    m = draw(st.integers(1, 7))
    return draw(perm_of(m)), draw(perm_of(m))


def test_one_based_call_and_one_line():
    s = Perm.from_one_line([2, 3, 1])
    assert [s(i) for i in (1, 2, 3)] == [2, 3, 1]
    assert s.one_line() == [2, 3, 1]


def test_from_cycles_string_and_tuples_agree():
    a = Perm.from_cycles("(1 4)(2 3)", 4)
    b = Perm.from_cycles([(1, 4), (2, 3)], 4)
    assert a == b == order_reversing(4)
    assert str(a) == "(1 4)(2 3)"
    assert str(Perm.identity(3)) == "id"


def test_compose_is_right_to_left():
    a = Perm.from_cycles("(1 2)", 3)
    b = Perm.from_cycles("(2 3)", 3)
    ab = a * b
    assert ab(2) == a(b(2)) == 3


def test_compose_rejects_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        compose(Perm.identity(2), Perm.identity(3))


@pytest.mark.parametrize("text", ["(1 2", "(1 1)", "(0 1)", "(a b)"])
def test_parse_cycles_rejects_garbage(text):
    with pytest.raises(ValueError):
        Perm.from_cycles(parse_cycles(text), 3)


@given(perm_pair())
def test_composition_matches_oracle(pair):
    a, b = pair
    assert (a * b).images == oracles.mul(a.images, b.images)


@given(perm_of())
def test_inverse_and_order(s):
    assert (s * s.inverse()).is_identity()
    assert (s ** s.order()).is_identity()
    assert s.order() == math.lcm(*oracles.cycle_lengths(s.images))


@given(perm_of())
def test_cycle_string_round_trip(s):
    assert Perm.from_cycles(str(s) if not s.is_identity() else "", s.m) == s


@given(perm_of())
def test_cycle_type_sums_to_degree(s):
    T = cycle_type(s)
    assert T.m == s.m
    assert sorted(T.terms) == sorted(oracles.cycle_lengths(s.images))


@given(perm_pair())
def test_conjugacy_is_cycle_type_equality(pair):
    a, b = pair
    assert is_conjugate(a, b) == oracles.conjugate(a.images, b.images)


def test_partition_normal_form_and_str():
    T = Partition((3, 1, 2, 3, 2))
    assert T.normal_form == [(1, 1), (2, 2), (3, 2)]
    assert str(T) == "[1,2^2,3^2]"
    assert T.gcd() == 1 and T.lcm() == 6


def test_order_reversing():
    assert order_reversing(5).one_line() == [5, 4, 3, 2, 1]


def test_generate_respects_cap():
    with pytest.raises(GroupTooLarge):
        generate(6, symmetric_group(6).generators, cap=100)


@pytest.mark.parametrize("m", range(1, 6))
def test_symmetric_group_order(m):
    assert symmetric_group(m).order == math.factorial(m)
    assert trivial_group(m).order == 1


@pytest.mark.parametrize("m", [2, 3])
def test_all_subgroups_matches_subset_oracle(m):
    mine = {frozenset(s.images for s in G.elements) for G in all_subgroups(m)}
    assert mine == set(oracles.all_subgroups(m))


def test_subgroup_count_s4():
    # S_4 has 30 subgroups
    assert len(all_subgroups(4)) == 30


@pytest.mark.parametrize("m", [2, 3, 4])
def test_type_number_matches_oracle(m):
    for G in all_subgroups(m):
        assert type_number(G) == oracles.gamma([s.images for s in G.elements])


def test_group_membership_and_conjugation():
    S3 = symmetric_group(3)
    C3 = generate(3, [Perm.from_cycles("(1 2 3)", 3)])
    assert C3.is_subgroup_of(S3)
    assert Perm.from_cycles("(1 2)", 3) not in C3
    conj = C3.conjugate_by(Perm.from_cycles("(1 2)", 3))
    assert set(conj.elements) == set(C3.elements)
