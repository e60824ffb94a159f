from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from periodcalc.characters import (
    Atom,
    CharacterError,
    CharacterSpec,
    CharExpr,
    InfinityType,
    check_transform,
    compatible_cm_type,
    conj_transform,
    galois_twist,
    is_primitive_at_infinity,
    multiply,
    norm_pullback,
    power,
    predicates,
)
from periodcalc.fields import CMFieldSpec, CMType, EmbeddingRef

F3 = CMFieldSpec("F", 3)

exps = st.tuples(st.integers(-10, 10), st.integers(-10, 10))


def types(n=3):
    return st.lists(exps, min_size=n, max_size=n).map(lambda e: InfinityType("F", tuple(e)))


def test_check_transform():
    csd = InfinityType.from_a("F", (2, 0, -2))
    assert check_transform(csd) == csd
    assert check_transform(InfinityType("K", ((3, 0),))).exps == ((0, -3),)


def test_multiply_identities():
    chi = InfinityType("F", ((2, -2),))
    assert multiply(chi, InfinityType.trivial("F", 1)) == chi
    assert multiply(chi, InfinityType("F", ((-2, 2),))) == InfinityType.trivial("F", 1)
    with pytest.raises(CharacterError):
        multiply(chi, InfinityType("G", ((0, 0),)))


@given(types(), )
def test_chi_times_conj_is_weight(chi):
    prod = multiply(chi, conj_transform(chi))
    assert all(a == b == x + y for (a, b), (x, y) in zip(prod.exps, chi.exps))


def test_norm_pullback():
    assert norm_pullback(InfinityType("K", ((0, 1),)), F3).exps == ((0, 1),) * 3
    assert norm_pullback(InfinityType.trivial("K", 1), F3) == InfinityType.trivial("F", 3)
    half = norm_pullback(power(InfinityType("K", ((1, 1),)), Fraction(-1, 2)), F3)
    assert half.exps == ((Fraction(-1, 2), Fraction(-1, 2)),) * 3


def test_half_integers_only():
    with pytest.raises(CharacterError):
        InfinityType("K", ((Fraction(1, 3), 0),))


def test_predicates():
    pr = predicates(InfinityType.from_a("F", (2, 0, -2)))
    assert pr.algebraic and pr.motivic and pr.regular and pr.conjugate_self_dual
    assert pr.weight == 0
    assert not pr.very_regular
    # a_2 = 0 = b_2 is the only non-critical slot
    assert not pr.critical
    assert predicates(InfinityType.from_a("F", (4, 0, -4))).very_regular
    assert not predicates(InfinityType.from_a("F", (1, 1, 0))).regular
    assert predicates(InfinityType("F", ((1, 2), (0, 3)))).weight == -3
    assert not predicates(InfinityType("F", ((1, 2), (0, 2)))).motivic


def test_compatible_cm_type():
    phi = compatible_cm_type(InfinityType.from_a("F", (2, 1, -2)))
    assert phi == CMType.of("F", [EmbeddingRef(1, True), EmbeddingRef(2, True), EmbeddingRef(3)])
    every = compatible_cm_type(InfinityType("F", ((0, 1), (0, 2))))
    assert every.members == {EmbeddingRef(1), EmbeddingRef(2)}
    with pytest.raises(CharacterError, match="not critical"):
        compatible_cm_type(InfinityType.from_a("F", (2, 0, -2)))


def test_galois_twist():
    chi = InfinityType.from_a("F", (2, 1, -2))
    assert galois_twist(chi, 0, F3) == chi
    assert galois_twist(chi, 1, F3).a == (-2, 2, 1)
    assert galois_twist(chi, 1, F3).b == (2, -2, -1)
    assert galois_twist(chi, 3, F3) == chi
    with pytest.raises(CharacterError):
        galois_twist(chi, 1, CMFieldSpec("F", 3, cyclic=False, generator=(1, 2, 3)))


@given(types(), st.integers(0, 5), st.integers(0, 5))
def test_twists_compose(chi, j, k):
    assert galois_twist(galois_twist(chi, j, F3), k, F3) == galois_twist(chi, j + k, F3)


def test_primitivity():
    assert is_primitive_at_infinity(InfinityType.from_a("F", (2, 1, -2)), F3)
    assert not is_primitive_at_infinity(InfinityType.from_a("F", (1, 1, 1)), F3)
    assert is_primitive_at_infinity(InfinityType("K", ((1, 0),)), CMFieldSpec("K1", 1))


@given(st.integers(1, 6).flatmap(lambda n: st.lists(st.integers(-20, 20), min_size=n, max_size=n, unique=True)))
def test_regular_implies_primitive(a):
    spec = CMFieldSpec("F", len(a))
    assert is_primitive_at_infinity(InfinityType.from_a("F", a), spec)


def test_csd_flag_is_checked():
    with pytest.raises(CharacterError):
        CharacterSpec("chi", InfinityType("F", ((1, 0),)), csd=True)


def test_char_expr_group_laws():
    x = CharExpr.of(Atom("chi", "F", "F", False, False))
    y = CharExpr.of(Atom("eta", "K", "F", False, False))
    assert (x * x.inv()).is_trivial()
    assert (x * y) ** 2 == x ** 2 * y ** 2
    assert x.conj().conj() == x
    assert x.check() == x.conj().inv()
    assert str(x * y.conj()) == "chi*eta.c@F"


def test_self_conjugate_atoms_ignore_conjugation():
    nrm = CharExpr.of(Atom("norm", "K", "K", False, True))
    assert nrm.conj() == nrm


@given(types())
def test_check_transform_involution_and_csd(chi):
    assert check_transform(check_transform(chi)) == chi
    assert (check_transform(chi) == chi) == predicates(chi).conjugate_self_dual


@given(types(), types(), types())
def test_multiply_is_an_abelian_group_law(x, y, z):
    assert multiply(x, y) == multiply(y, x)
    assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))
    assert multiply(x, InfinityType.trivial("F", 3)) == x


@given(exps)
def test_norm_pullback_commutes_with_check(e):
    eta = InfinityType("K", (e,))
    assert norm_pullback(check_transform(eta), F3) == check_transform(norm_pullback(eta, F3))


@given(st.integers(1, 8).flatmap(lambda n: st.lists(st.integers(-20, 20), min_size=n, max_size=n, unique=True)))
def test_regular_implies_primitive_up_to_eight(a):
    assert is_primitive_at_infinity(InfinityType.from_a("F", a), CMFieldSpec("F", len(a)))


@given(types())
def test_cm_type_of_check_is_conjugate(chi):
    pr = predicates(chi)
    if not (pr.motivic and pr.critical):
        return
    # (a, b) -> (-b, -a) keeps a < b; it is the conjugate that flips the type
    assert compatible_cm_type(conj_transform(chi)) == compatible_cm_type(chi).conj()
    assert compatible_cm_type(check_transform(chi)) == compatible_cm_type(chi)
