from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hmoduli.graded import (
    Algebra,
    AlgebraMorphism,
    Element,
    Generator,
    apply,
    basis_of_degree,
    smash_basis,
    tensor_square,
)
from hmoduli.homloop import (
    CounitError,
    Diagonal,
    GeneratorLinearMap,
    deviation_P,
    hd_bar,
    left_divide,
    left_inverse,
    loop_product,
    primitive_diagonal,
    reduced_diagonal,
    right_divide,
    right_inverse,
    smash_coordinates,
    unit,
)

coeff = st.fractions(min_value=-3, max_value=3, max_denominator=3)


def perturbed():
    m = Algebra.free([("y1", 2), ("y2", 2), ("x", 4)], 8)
    t = tensor_square(m)
    images = {g.name: t.gen(f"{g.name}_1") + t.gen(f"{g.name}_2") for g in m.generators}
    images["x"] = images["x"] + t.gen("y1_1") * t.gen("y2_2")
    return Diagonal.from_images(m, images)


def test_counit_violation_names_generator():
    m = Algebra.free([("y", 2)], 4)
    t = tensor_square(m)
    with pytest.raises(CounitError, match="'y'"):
        Diagonal.from_images(m, {"y": t.gen("y_1")})


def test_primitive_diagonal_binomials():
    m = Algebra.free([("y", 2)], 12)
    nu = primitive_diagonal(m)
    t = nu.square
    for k in range(1, 7):
        want = Element(t, {(j, k - j): comb(k, j) for j in range(k + 1)})
        assert nu(m.monomial([k])) == want


def test_unit_laws_and_primitive_product_is_sum():
    m = Algebra.free([("y", 2), ("z", 3)], 6)
    nu = primitive_diagonal(m)
    a = Algebra.free([("u", 1), ("v", 2)], 6)
    alpha = AlgebraMorphism(m, a, [a.gen("v"), a.gen("u") * a.gen("v")])
    beta = AlgebraMorphism(m, a, [a.gen("u") * a.gen("u") + a.gen("v").scale(3), a.zero()])
    e = unit(m, a)
    assert loop_product(e, alpha, nu) == alpha == loop_product(alpha, e, nu)
    prod = loop_product(alpha, beta, nu)
    assert list(prod.images) == [x + y for x, y in zip(alpha.images, beta.images)]


def test_perturbed_product():
    nu = perturbed()
    m = nu.algebra
    a = Algebra.free([("s", 2), ("t", 2)], 8)
    s, t = a.gen("s"), a.gen("t")
    alpha = AlgebraMorphism.from_mapping(m, a, {"y1": s, "y2": t, "x": s * t})
    beta = AlgebraMorphism.from_mapping(m, a, {"y1": t, "y2": s.scale(2), "x": t * t})
    prod = loop_product(alpha, beta, nu)
    assert prod.image("x") == alpha.image("x") + beta.image("x") + alpha.image("y1") * beta.image("y2")


def test_division_examples():
    nu = perturbed()
    m = nu.algebra
    a = Algebra.free([("s", 2)], 8)
    s = a.gen("s")
    alpha = AlgebraMorphism.from_mapping(m, a, {"y1": s, "y2": s.scale(-1), "x": s * s})
    beta = AlgebraMorphism.from_mapping(m, a, {"y1": s.scale(2), "x": (s * s).scale(5)})
    e = unit(m, a)
    assert left_divide(beta, e, nu) == beta
    assert left_divide(alpha, alpha, nu) == e
    assert right_divide(alpha, alpha, nu) == e
    p = primitive_diagonal(m)
    gamma = left_divide(beta, alpha, p)
    assert list(gamma.images) == [b - x for b, x in zip(beta.images, alpha.images)]


def test_antipode():
    m = Algebra.free([("y", 2)], 12)
    nu = primitive_diagonal(m)
    lam, rho = left_inverse(nu), right_inverse(nu)
    assert lam == rho
    for k in range(7):
        assert apply(lam, m.monomial([k])) == m.monomial([k]).scale((-1) ** k)
    ident = AlgebraMorphism.identity(m)
    assert loop_product(lam, ident, nu) == unit(m, m)
    z = Algebra.free([("z", 3)], 3)
    assert left_inverse(primitive_diagonal(z)).image("z") == -z.gen("z")


def test_inverses_of_perturbed_diagonal():
    nu = perturbed()
    m = nu.algebra
    ident = AlgebraMorphism.identity(m)
    e = unit(m, m)
    assert loop_product(left_inverse(nu), ident, nu) == e
    assert loop_product(ident, right_inverse(nu), nu) == e


def test_deviation_examples():
    m = Algebra.free([("y", 2)], 8)
    nu = primitive_diagonal(m)
    assert deviation_P(nu, "y").is_zero()
    t = nu.square
    p = reduced_diagonal(nu, m.monomial([4]))
    assert p.coordinates(smash_basis(t, 8)) == [4, 6, 4]
    assert p.coordinates(basis_of_degree(t, 8)) == [0, 4, 6, 4, 0]
    two = Algebra.free([("y", 2), ("x", 4)], 4)
    tt = tensor_square(two)
    skew = Diagonal.from_images(two, {
        "y": tt.gen("y_1") + tt.gen("y_2"),
        "x": tt.gen("x_1") + tt.gen("x_2") + tt.gen("y_1") * tt.gen("y_2")})
    assert deviation_P(skew, "x") == tt.gen("y_1") * tt.gen("y_2")


@pytest.mark.parametrize("k", range(1, 13))
def test_hd_bar_of_power_is_binomial(k):
    a = Algebra.free([("y", 2)], 2 * k)
    nu = primitive_diagonal(a)
    x = Generator("x", 2 * k)
    r = Fraction(3, 2)
    alpha = GeneratorLinearMap((x,), a, [a.monomial([k]).scale(r)])
    assert smash_coordinates(hd_bar(alpha, nu)) == [r * comb(k, j) for j in range(1, k)]


# random diagonals and loop elements


@st.composite
def diagonals(draw):
    n = draw(st.integers(1, 3))
    degs = sorted(draw(st.lists(st.integers(1, 4), min_size=n, max_size=n)))
    m = Algebra.free([(f"g{i}", d) for i, d in enumerate(degs)], max(degs))
    t = tensor_square(m)
    images = []
    for i, g in enumerate(m.generators):
        extra = Element(t, {mono: draw(coeff) for mono in smash_basis(t, g.degree)})
        images.append(t.gen(i) + t.gen(m.ngens + i) + extra)
    return Diagonal(AlgebraMorphism(m, t, images))


@st.composite
def elements_of_hom(draw, m, a):
    images = [Element(a, {mono: draw(coeff) for mono in basis_of_degree(a, g.degree)})
              for g in m.generators]
    return AlgebraMorphism(m, a, images)


TARGETS = [Algebra.free([("u", 1), ("v", 2)], 4), Algebra.free([("s", 2), ("w", 3)], 4)]


@given(st.data())
def test_loop_axioms_random(data):
    nu = data.draw(diagonals())
    m = nu.algebra
    a = data.draw(st.sampled_from(TARGETS)).with_truncation(max(4, m.truncation))
    alpha, beta, gamma = (data.draw(elements_of_hom(m, a)) for _ in range(3))
    e = unit(m, a)
    assert loop_product(e, alpha, nu) == alpha == loop_product(alpha, e, nu)
    left = left_divide(beta, alpha, nu)
    right = right_divide(beta, alpha, nu)
    assert loop_product(left, alpha, nu) == beta
    assert loop_product(alpha, right, nu) == beta
    # uniqueness: dividing a known product recovers the factor
    assert left_divide(loop_product(gamma, alpha, nu), alpha, nu) == gamma
    assert right_divide(loop_product(alpha, gamma, nu), alpha, nu) == gamma


@given(st.data())
def test_primitive_loop_is_abelian_group(data):
    m = Algebra.free([("p", 1), ("q", 2), ("r", 3)], 4)
    nu = primitive_diagonal(m)
    a = TARGETS[0]
    x, y, z = (data.draw(elements_of_hom(m, a)) for _ in range(3))
    assert loop_product(x, y, nu) == loop_product(y, x, nu)
    assert loop_product(loop_product(x, y, nu), z, nu) == loop_product(x, loop_product(y, z, nu), nu)


@given(st.data())
def test_deviation_has_no_edge_terms(data):
    nu = data.draw(diagonals())
    t = nu.square
    for g in nu.algebra.generators:
        p = deviation_P(nu, g.name)
        for edge in (f"{g.name}_1", f"{g.name}_2"):
            [(mono, _)] = t.gen(edge).items()
            assert p.coefficient(mono) == 0
        assert set(p.terms) <= set(smash_basis(t, g.degree))


@given(st.data())
def test_hd_bar_linear(data):
    a = Algebra.free([("y", 2), ("z", 3)], 8)
    t = tensor_square(a)
    mu = Diagonal.from_images(a, {"y": t.gen("y_1") + t.gen("y_2"),
                                  "z": t.gen("z_1") + t.gen("z_2")})
    gens = (Generator("x1", 6), Generator("x2", 8))

    def draw_map():
        return GeneratorLinearMap(gens, a, [
            Element(a, {mono: data.draw(coeff) for mono in basis_of_degree(a, g.degree)})
            for g in gens])

    f, g = draw_map(), draw_map()
    s, r = data.draw(coeff), data.draw(coeff)
    lhs = smash_coordinates(hd_bar(f.scale(s) + g.scale(r), mu))
    rhs = [s * x + r * y for x, y in zip(smash_coordinates(hd_bar(f, mu)),
                                         smash_coordinates(hd_bar(g, mu)))]
    assert lhs == rhs
