from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from periodcalc.characters import InfinityType, multiply
from periodcalc.hodge import (
    CriticalRange,
    HodgeError,
    HodgeType,
    critical_range_character,
    critical_range_closed,
    critical_range_pair,
    deligne_oracle,
    hodge_of_character,
    hodge_of_representation,
    oracle_scan,
    tensor_hodge,
)


def as_list(rng: CriticalRange) -> list:
    return [] if rng.empty else rng.members()


def twisted_hodge(c, eta: InfinityType) -> HodgeType:
    """Hodge type of M(Pi) (x) M(eta) over K, from the slotwise product of types."""
    pi = InfinityType("K", tuple((x, -x) for x in c))
    return hodge_of_representation(multiply(pi, InfinityType("K", eta.exps * len(c))))


@st.composite
def hodge_types(draw, max_rank=6, bound=20):
    w = draw(st.integers(-2 * bound, 2 * bound))
    k = draw(st.integers(1, max_rank))
    ps = draw(st.lists(st.integers(-bound, bound).filter(lambda p: 2 * p != w), min_size=k, max_size=k))
    return HodgeType.from_p_list(w, ps)


@st.composite
def csd_vectors(draw, n=None):
    n = n or draw(st.integers(1, 6))
    a = draw(st.lists(st.integers(-12, 12), min_size=n, max_size=n, unique=True))
    return tuple(sorted(a, reverse=True))


def test_representation_hodge_type():
    pi = InfinityType("K", ((2, -2), (0, 0), (-2, 2)))
    h = hodge_of_representation(pi)
    assert h.weight == 2
    assert set(h.pairs) == {(-1, 3), (1, 1), (3, -1)}
    assert h.has_diagonal()


def test_character_hodge_type():
    h = hodge_of_character(InfinityType("K", ((2, -2),)))
    assert h.weight == 0 and set(h.pairs) == {(-2, 2), (2, -2)}


def test_tensor():
    h = HodgeType(3, ((0, 3), (3, 0)))
    assert tensor_hodge(h, HodgeType(0, ((0, 0),))) == h
    t = tensor_hodge(h, HodgeType(1, ((0, 1), (1, 0))))
    assert t.weight == 4 and set(t.pairs) == {(0, 4), (1, 3), (3, 1), (4, 0)}


def test_hodge_type_validation():
    with pytest.raises(HodgeError):
        HodgeType(2, ((0, 1), (1, 0)))
    with pytest.raises(HodgeError):
        HodgeType(3, ((0, 3),))


def test_closed_form_examples():
    assert critical_range_closed(HodgeType.from_p_list(3, [0])) == CriticalRange(1, 3)
    assert critical_range_closed(HodgeType.from_p_list(0, [-2])) == CriticalRange(-1, 2)
    with pytest.raises(HodgeError):
        critical_range_closed(HodgeType(2, ((1, 1),)))


def test_oracle_examples():
    h3 = HodgeType.from_p_list(3, [0])
    assert deligne_oracle(h3, 1)
    assert not deligne_oracle(h3, 0)
    assert not deligne_oracle(HodgeType.from_p_list(0, [-2]), 3)
    assert oracle_scan(h3) == [1, 2, 3]


def test_character_range_examples():
    assert critical_range_character(InfinityType("K", ((2, -2),))) == CriticalRange(-1, 2)
    assert critical_range_character(InfinityType.from_a("F", (1, -2))) == CriticalRange(0, 1)
    with pytest.raises(HodgeError, match="not critical"):
        critical_range_character(InfinityType.from_a("F", (1, 0)))


def test_pair_range_example():
    # plugging in naively suggests [-1, 0]; the oracle scan below settles it at [0, 0]
    c, eta = (2, 0, -2), InfinityType("K", ((0, 1),))
    assert critical_range_pair(c, eta) == CriticalRange(0, 0)
    assert [m - 1 for m in oracle_scan(twisted_hodge(c, eta))] == [0]


def test_pair_range_guard():
    with pytest.raises(HodgeError):
        critical_range_pair((2, 0, -2), InfinityType("K", ((0, 4),)))


@given(hodge_types())
def test_closed_form_matches_oracle(h):
    assert as_list(critical_range_closed(h)) == oracle_scan(h)


@given(csd_vectors(), st.integers(-6, 6))
def test_character_range_matches_oracle(a, w):
    chi = InfinityType.from_a("F", a, w)
    assume(all(2 * x != -w for x in a))
    assert as_list(critical_range_character(chi)) == oracle_scan(hodge_of_character(chi))


@given(csd_vectors(), st.integers(-8, 8), st.integers(-8, 8))
def test_pair_range_matches_oracle(a, ea, eb):
    n = len(a)
    c = [Fraction(x) + (Fraction(1, 2) if n % 2 == 0 else 0) for x in a]
    assume(all(ea - eb + 2 * x != 0 for x in c))
    eta = InfinityType("K", ((ea, eb),))
    shift = Fraction(n - 1, 2)
    assert as_list(critical_range_pair(c, eta)) == [m - shift for m in oracle_scan(twisted_hodge(c, eta))]


@given(csd_vectors(), st.integers(-6, 6))
def test_character_range_matches_closed_form(a, w):
    chi = InfinityType.from_a("F", a, w)
    assume(all(2 * x != -w for x in a))
    assert critical_range_character(chi) == critical_range_closed(hodge_of_character(chi))


@given(hodge_types())
def test_critical_values_always_exist(h):
    assert not critical_range_closed(h).empty
