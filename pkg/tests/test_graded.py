from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hmoduli.graded import (
    Algebra,
    AlgebraMorphism,
    Element,
    ParseError,
    apply,
    basis_of_degree,
    compose,
    embedding,
    format_element,
    parse_element,
    smash_basis,
    tensor_cube,
    tensor_square,
)
from hmoduli.homloop import primitive_diagonal

LY = Algebra.free([("y", 2)], 8)
LZ = Algebra.free([("z", 3)], 6)
MIXED = Algebra.free([("y", 2), ("z", 3), ("w", 1)], 9)


def test_even_square_and_odd_square():
    y = LY.gen("y")
    assert y * y == LY.monomial([2])
    z = LZ.gen("z")
    assert (z * z).is_zero()


def test_koszul_sign_in_tensor_square():
    t = tensor_square(LZ)
    z1, z2 = t.gen("z_1"), t.gen("z_2")
    assert z2 * z1 == -(z1 * z2)
    assert not (z1 * z2).is_zero()


def test_tensor_powers():
    t = tensor_square(LY)
    assert [g.name for g in t.generators] == ["y_1", "y_2"]
    assert (1, 1) in basis_of_degree(t, 4)
    assert tensor_cube(LY).ngens == 3


def test_bases():
    assert basis_of_degree(LY, 8) == [(4,)]
    t = tensor_square(LY)
    assert basis_of_degree(t, 8) == [(j, 4 - j) for j in range(5)]
    assert basis_of_degree(tensor_square(LZ), 6) == [(1, 1)]
    assert smash_basis(t, 8) == [(j, 4 - j) for j in range(1, 4)]
    assert smash_basis(tensor_square(LZ), 6) == [(1, 1)]
    assert smash_basis(t, 2) == []


def test_apply_examples():
    neg = AlgebraMorphism(LY, LY, [-LY.gen("y")])
    assert apply(neg, LY.monomial([3])) == -LY.monomial([3])
    nu = primitive_diagonal(LY)
    t = nu.square
    assert nu(LY.monomial([2])) == (t.monomial([2, 0]) + t.monomial([1, 1]).scale(2)
                                    + t.monomial([0, 2]))
    assert apply(neg, LY.zero()).is_zero()


def test_compose_identity_and_antipode_twice():
    neg = AlgebraMorphism(LY, LY, [-LY.gen("y")])
    ident = AlgebraMorphism.identity(LY)
    assert compose(ident, neg) == neg
    assert compose(neg, neg) == ident


def test_truncation_kills_high_degrees():
    y = LY.gen("y")
    assert (y ** 5).is_zero()
    assert y ** 4 == LY.monomial([4])


def test_homogeneity_enforced():
    with pytest.raises(ValueError):
        AlgebraMorphism(LY, LY, [LY.gen("y") + LY.one()])


def test_parse_examples():
    t = tensor_square(LY)
    e = parse_element("2 - y_2^4 + 3/2*y_1^2.y_2", t)
    assert e.coefficient((0, 0)) == 2
    assert e.coefficient((0, 4)) == -1
    assert e.coefficient((2, 1)) == Fraction(3, 2)
    assert parse_element("0", t).is_zero()


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_element("y_1 + q", tensor_square(LY), line=3)
    assert info.value.line == 3 and info.value.column == 7


# properties

coeff = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@st.composite
def elements(draw, a):
    monos = [m for d in range(a.truncation + 1) for m in basis_of_degree(a, d)]
    picked = draw(st.lists(st.sampled_from(monos), max_size=4))
    return Element(a, {m: draw(coeff) for m in picked})


@st.composite
def homogeneous(draw, a):
    d = draw(st.sampled_from([d for d in range(a.truncation + 1) if basis_of_degree(a, d)]))
    monos = basis_of_degree(a, d)
    picked = draw(st.lists(st.sampled_from(monos), min_size=1, max_size=3))
    return d, Element(a, {m: draw(coeff) for m in picked})


@given(st.data())
def test_multiplication_associative(data):
    a = data.draw(st.sampled_from([MIXED, tensor_square(LZ), tensor_square(LY)]))
    x, y, z = (data.draw(elements(a)) for _ in range(3))
    assert (x * y) * z == x * (y * z)


@given(st.data())
def test_graded_commutative(data):
    a = data.draw(st.sampled_from([MIXED, tensor_square(Algebra.free([("y", 2), ("z", 3)], 9))]))
    dx, x = data.draw(homogeneous(a))
    dy, y = data.draw(homogeneous(a))
    assert x * y == (y * x).scale((-1) ** (dx * dy))


@st.composite
def morphisms(draw, src, tgt):
    images = []
    for g in src.generators:
        basis = basis_of_degree(tgt, g.degree)
        images.append(Element(tgt, {m: draw(coeff) for m in basis}))
    return AlgebraMorphism(src, tgt, images)


@given(st.data())
def test_apply_multiplicative(data):
    src = MIXED
    tgt = tensor_square(MIXED)
    phi = data.draw(morphisms(src, tgt))
    x, y = data.draw(elements(src)), data.draw(elements(src))
    assert apply(phi, x * y) == apply(phi, x) * apply(phi, y)


@given(st.data())
def test_truncation_consistency(data):
    small = MIXED
    big = small.with_truncation(14)
    x, y = data.draw(elements(small)), data.draw(elements(small))
    lift = lambda e: Element(big, e.terms)  # noqa: E731
    assert Element(small, (lift(x) * lift(y)).truncate(small.truncation).terms) == x * y


@given(st.data())
def test_bases_ordered_and_smash_inside(data):
    a = data.draw(st.sampled_from([tensor_square(LY), tensor_square(MIXED)]))
    d = data.draw(st.integers(0, a.truncation))
    basis = basis_of_degree(a, d)
    assert basis == sorted(set(basis))
    assert set(smash_basis(a, d)) <= set(basis)


@given(st.data())
def test_text_round_trip(data):
    a = data.draw(st.sampled_from([tensor_square(MIXED), tensor_cube(LY)]))
    e = data.draw(elements(a))
    assert parse_element(format_element(e), a) == e


def test_embedding_into_square():
    t = tensor_square(LY)
    assert apply(embedding(t, 1), LY.gen("y")) == t.gen("y_2")


def test_parse_rejects_monomial_above_truncation():
    with pytest.raises(ParseError, match="exceeds truncation") as info:
        parse_element("y_1 + y_1^5", tensor_square(LY))
    assert info.value.column == 7
