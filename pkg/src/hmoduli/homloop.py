"""The algebraic loop Hom_Alg(M, A) of a free algebra M carrying a diagonal.

Loop elements are plain :class:`~hmoduli.graded.AlgebraMorphism` objects
from M to A.  The product is ``m (alpha (x) beta) nu`` and the unit sends
every generator of M to zero.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .graded import (
    Algebra,
    AlgebraMorphism,
    Element,
    Generator,
    apply,
    collapse,
    embedding,
    smash_basis,
    tensor_square,
)


class CounitError(ValueError):
    pass


class DivisionError(ArithmeticError):
    pass


class Diagonal:
    """An algebra map M -> M (x) M satisfying both counit laws."""

    __slots__ = ("underlying",)

    def __init__(self, underlying: AlgebraMorphism):
        m = underlying.source
        if underlying.target != tensor_square(m):
            raise ValueError("a diagonal must land in the tensor square of its source")
        left = collapse(underlying.target, 1)   # epsilon (x) id
        right = collapse(underlying.target, 0)  # id (x) epsilon
        for g, im in zip(m.generators, underlying.images):
            if apply(left, im) != m.gen(g.name) or apply(right, im) != m.gen(g.name):
                raise CounitError(f"counit law fails for generator {g.name!r}: nu({g.name}) = {im}")
        self.underlying = underlying

    @classmethod
    def from_images(cls, m: Algebra, images: Mapping[str, Element]) -> "Diagonal":
        return cls(AlgebraMorphism.from_mapping(m, tensor_square(m), images))

    @property
    def algebra(self) -> Algebra:
        return self.underlying.source

    @property
    def square(self) -> Algebra:
        return self.underlying.target

    def __call__(self, e: Element) -> Element:
        return apply(self.underlying, e)

    def image(self, name: str) -> Element:
        return self.underlying.image(name)

    def is_primitive(self) -> bool:
        return all(deviation_P(self, g.name).is_zero() for g in self.algebra.generators)

    def __eq__(self, other):
        return isinstance(other, Diagonal) and self.underlying == other.underlying

    def __hash__(self):
        return hash(self.underlying)

    def __repr__(self):
        return f"Diagonal({self.underlying!r})"


def primitive_diagonal(m: Algebra) -> Diagonal:
    t = tensor_square(m)
    i1, i2 = embedding(t, 0), embedding(t, 1)
    return Diagonal(AlgebraMorphism(m, t, [apply(i1, g) + apply(i2, g) for g in m.gens()]))


def deviation_P(nu: Diagonal, g: str) -> Element:
    """Reduced diagonal nu(g) - g (x) 1 - 1 (x) g."""
    m, t = nu.algebra, nu.square
    x = m.gen(g)
    return nu.image(g) - apply(embedding(t, 0), x) - apply(embedding(t, 1), x)


def unit(m: Algebra, a: Algebra) -> AlgebraMorphism:
    return AlgebraMorphism.zero(m, a)


def _check(alpha: AlgebraMorphism, beta: AlgebraMorphism, nu: Diagonal):
    if alpha.source != nu.algebra or beta.source != nu.algebra:
        raise ValueError("loop elements must share the diagonal's source algebra")
    if alpha.target != beta.target:
        raise ValueError("loop elements must share a target algebra")


def _contraction(alpha: AlgebraMorphism, beta: AlgebraMorphism, t: Algebra) -> AlgebraMorphism:
    # m (alpha (x) beta) as a single algebra map M (x) M -> A
    return AlgebraMorphism(t, alpha.target, alpha.images + beta.images)


def loop_product(alpha: AlgebraMorphism, beta: AlgebraMorphism, nu: Diagonal) -> AlgebraMorphism:
    _check(alpha, beta, nu)
    c = _contraction(alpha, beta, nu.square)
    return AlgebraMorphism(alpha.source, alpha.target, [apply(c, im) for im in nu.underlying.images])


def _division_order(m: Algebra) -> list[int]:
    return sorted(range(m.ngens), key=lambda i: (m.generators[i].degree, i))


def left_divide(beta: AlgebraMorphism, alpha: AlgebraMorphism, nu: Diagonal) -> AlgebraMorphism:
    """The unique gamma with gamma . alpha = beta."""
    return _divide(beta, alpha, nu, left=True)


def right_divide(beta: AlgebraMorphism, alpha: AlgebraMorphism, nu: Diagonal) -> AlgebraMorphism:
    """The unique gamma with alpha . gamma = beta."""
    return _divide(beta, alpha, nu, left=False)


def _divide(beta, alpha, nu, left):
    _check(alpha, beta, nu)
    m, a = alpha.source, alpha.target
    images = [a.zero()] * m.ngens
    # P(g) only involves strictly lower-degree generators on the side being solved for
    for i in _division_order(m):
        g = m.generators[i].name
        gamma = AlgebraMorphism(m, a, images)
        c = _contraction(gamma, alpha, nu.square) if left else _contraction(alpha, gamma, nu.square)
        images[i] = beta.images[i] - alpha.images[i] - apply(c, deviation_P(nu, g))
    gamma = AlgebraMorphism(m, a, images)
    check = loop_product(gamma, alpha, nu) if left else loop_product(alpha, gamma, nu)
    if check != beta:
        side = "left" if left else "right"
        raise DivisionError(f"{side} division failed verification; is the diagonal valid?")
    return gamma


def left_inverse(nu: Diagonal) -> AlgebraMorphism:
    m = nu.algebra
    return left_divide(unit(m, m), AlgebraMorphism.identity(m), nu)


def right_inverse(nu: Diagonal) -> AlgebraMorphism:
    m = nu.algebra
    return right_divide(unit(m, m), AlgebraMorphism.identity(m), nu)


class GeneratorLinearMap:
    """A Q-linear map from the span of some generators into an algebra.

    Its coefficient vector over a fixed monomial basis per generator is the
    coordinate vector (r_1, ..., r_{k-1}) used by the moduli computations.
    """

    __slots__ = ("generators", "target", "images")

    def __init__(self, generators: Sequence[Generator], target: Algebra, images: Sequence[Element]):
        generators, images = tuple(generators), tuple(images)
        if len(generators) != len(images):
            raise ValueError("need one image per generator")
        for g, im in zip(generators, images):
            if im.algebra != target:
                raise ValueError(f"image of {g.name} is not in the target algebra")
            if not im.is_homogeneous(g.degree):
                raise ValueError(f"image of {g.name} is not homogeneous of degree {g.degree}")
        self.generators = generators
        self.target = target
        self.images = images

    @classmethod
    def from_coordinates(cls, generators, target, bases, coords) -> "GeneratorLinearMap":
        """Build from one flat coordinate vector over the concatenated ``bases``."""
        images, pos = [], 0
        coords = list(coords)
        for basis in bases:
            images.append(Element.from_coordinates(target, basis, coords[pos:pos + len(basis)]))
            pos += len(basis)
        if pos != len(coords):
            raise ValueError("coordinate vector length does not match the bases")
        return cls(generators, target, images)

    def coordinates(self, bases) -> list[Fraction]:
        out = []
        for im, basis in zip(self.images, bases):
            out.extend(im.coordinates(basis))
        return out

    def as_morphism(self, source: Algebra) -> AlgebraMorphism:
        """The algebra map on Lambda(generators) agreeing with self on generators."""
        return AlgebraMorphism.from_mapping(
            source, self.target, {g.name: im for g, im in zip(self.generators, self.images)})

    def image(self, name: str) -> Element:
        for g, im in zip(self.generators, self.images):
            if g.name == name:
                return im
        raise KeyError(name)

    def _same_shape(self, other):
        if self.generators != other.generators or self.target != other.target:
            raise ValueError("linear maps differ in source or target")

    def __add__(self, other: "GeneratorLinearMap") -> "GeneratorLinearMap":
        self._same_shape(other)
        return GeneratorLinearMap(self.generators, self.target,
                                  [a + b for a, b in zip(self.images, other.images)])

    def scale(self, c) -> "GeneratorLinearMap":
        return GeneratorLinearMap(self.generators, self.target, [im.scale(c) for im in self.images])

    def __eq__(self, other):
        return (isinstance(other, GeneratorLinearMap) and self.generators == other.generators
                and self.target == other.target and self.images == other.images)

    def __repr__(self):
        body = ", ".join(f"{g.name} -> {im}" for g, im in zip(self.generators, self.images))
        return f"GeneratorLinearMap({body})"


def reduced_diagonal(mu: Diagonal, e: Element) -> Element:
    """mu(e) - e (x) 1 - 1 (x) e for an arbitrary element e."""
    t = mu.square
    return mu(e) - apply(embedding(t, 0), e) - apply(embedding(t, 1), e)


def hd_bar(alpha: GeneratorLinearMap, mu2: Diagonal) -> GeneratorLinearMap:
    """Algebraic H-deviation: x |-> reduced_diagonal(alpha(x)), landing in the smash part."""
    if alpha.target != mu2.algebra:
        raise ValueError("alpha must land in the algebra carrying mu2")
    return GeneratorLinearMap(alpha.generators, mu2.square,
                              [reduced_diagonal(mu2, im) for im in alpha.images])


def smash_coordinates(phi: GeneratorLinearMap) -> list[Fraction]:
    return phi.coordinates([smash_basis(phi.target, g.degree) for g in phi.generators])
