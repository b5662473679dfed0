"""Moduli subspaces of central H-extensions of rational H-spaces.

Setting: X_1 has cohomology Lambda(x_1, x_2, ...) with every x_i
primitive, X_2 has free cohomology A with diagonal mu_2.  A classifying
map omega : X_2 ^ X_2 -> X_1 is recorded by alpha, the images
alpha(x_i) in the smash part of A (x) A; its coordinates over
``smash_basis`` form the vector space V.

For each loop property the extension is required to satisfy, there is a
pair of maps X_2^p -> X_1 built from omega, mu_2, diagonals and twists.
The property holds iff the two pullbacks of every x_i agree.  Since the
x_i are primitive these pullbacks are linear in alpha, so each V_tag is a
kernel.  The moduli subspace S_tag is V_tag / Im HD-bar.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .graded import (
    Algebra,
    AlgebraMorphism,
    Element,
    Generator,
    basis_of_degree,
    format_monomial,
    smash_basis,
    tensor,
    tensor_square,
)
from .homloop import (
    Diagonal,
    GeneratorLinearMap,
    hd_bar,
    left_inverse,
    primitive_diagonal,
    right_inverse,
    smash_coordinates,
)
from .linalg import ContainmentError, Matrix, Subspace, contains, kernel, quotient_dim
from . import spacemaps as sm

TAGS = ("inv", "pa", "mo", "sa")
SPACES = ("V", "inv", "pa", "mo", "sa", "imhd")


def retruncate(e: Element, a: Algebra) -> Element:
    """Move e into an algebra with the same generators but another truncation."""
    if e.algebra.generators != a.generators:
        raise ValueError("algebras differ in their generators")
    return Element(a, {m: c for m, c in e.terms.items() if a.degree_of(m) <= a.truncation})


def retruncate_diagonal(nu: Diagonal, truncation: int) -> Diagonal:
    a = nu.algebra.with_truncation(truncation)
    t = tensor_square(a)
    return Diagonal(AlgebraMorphism(a, t, [retruncate(im, t) for im in nu.underlying.images]))


class ExtensionProblem:
    """Central H-extensions of X_1 (given by generator degrees) by (X_2, mu_2)."""

    def __init__(self, x1_generators: Sequence, mu2: Diagonal, truncation: int | None = None):
        gens = tuple(g if isinstance(g, Generator) else Generator(*g) for g in x1_generators)
        if not gens:
            raise ValueError("X_1 needs at least one generator")
        names = {g.name for g in gens}
        if len(names) != len(gens):
            raise ValueError("duplicate X_1 generator names")
        a = mu2.algebra
        floor = max([g.degree for g in gens] + [g.degree for g in a.generators])
        if truncation is None:
            truncation = floor
        if truncation < floor:
            raise ValueError(f"truncation {truncation} is below a generator degree ({floor})")
        self.truncation = truncation
        self.x1 = Algebra(gens, truncation)
        self.mu2 = mu2 if a.truncation == truncation else retruncate_diagonal(mu2, truncation)
        self.x2 = self.mu2.algebra
        self.mu1 = primitive_diagonal(self.x1)
        self._matrices: dict[str, Matrix] = {}

    @classmethod
    def eilenberg_maclane(cls, deg_x, deg_y: int, truncation: int | None = None,
                          mu2: Diagonal | None = None) -> "ExtensionProblem":
        """K(Q, deg_x) (one or several degrees) by K(Q, deg_y) or a given X_2."""
        degs = [deg_x] if isinstance(deg_x, int) else list(deg_x)
        names = ["x"] if len(degs) == 1 else [f"x{i + 1}" for i in range(len(degs))]
        if mu2 is None:
            mu2 = primitive_diagonal(Algebra.free([("y", deg_y)], max(degs + [deg_y])))
        return cls(list(zip(names, degs)), mu2, truncation)

    def __repr__(self):
        x1 = ", ".join(f"{g.name}:{g.degree}" for g in self.x1.generators)
        return f"ExtensionProblem(X1=[{x1}], X2={self.x2!r})"

    # structural pieces ---------------------------------------------------

    @property
    def generators(self) -> tuple[Generator, ...]:
        return self.x1.generators

    @cached_property
    def square(self) -> Algebra:
        return tensor_square(self.x2)

    @cached_property
    def smash_bases(self) -> tuple[list, ...]:
        return tuple(smash_basis(self.square, g.degree) for g in self.generators)

    @cached_property
    def lambda2(self) -> AlgebraMorphism:
        return left_inverse(self.mu2)

    @cached_property
    def rho2(self) -> AlgebraMorphism:
        return right_inverse(self.mu2)

    def generator_index(self, name: str) -> int:
        return self.x1.index[name]

    def block(self, name: str) -> slice:
        i = self.generator_index(name)
        start = sum(len(b) for b in self.smash_bases[:i])
        return slice(start, start + len(self.smash_bases[i]))

    @property
    def dim_V(self) -> int:
        return sum(len(b) for b in self.smash_bases)

    def alpha(self, coords) -> GeneratorLinearMap:
        """The classifying class with the given coordinates over the smash bases."""
        return GeneratorLinearMap.from_coordinates(self.generators, self.square,
                                                   self.smash_bases, coords)

    def residual_target(self, tag: str) -> Algebra:
        a = self.x2
        return {"inv": a, "pa": a, "sa": tensor((a, a)), "mo": tensor((a, a, a))}[tag]

    # the two sides of each condition -------------------------------------

    def sides(self, tag: str, alpha: GeneratorLinearMap) -> tuple[sm.SpaceMap, sm.SpaceMap]:
        """Two maps X_2^p -> X_1 whose pullbacks agree iff alpha has property ``tag``."""
        a, m = self.x2, self.x1
        X, M = (a,), (m,)
        omega = sm.from_pullback((a, a), M, alpha.as_morphism(m))   # omega q
        mu1 = sm.from_pullback((m, m), M, self.mu1.underlying)
        mu2 = sm.multiplication(self.mu2)
        idx = sm.identity(X)
        delta = sm.coordinates(X, (0, 0))
        twist = sm.coordinates((a, a), (1, 0))
        if tag == "inv":
            l2 = sm.from_pullback(X, X, self.lambda2)
            r2 = sm.from_pullback(X, X, self.rho2)
            return delta >> (l2 * idx) >> omega, delta >> (idx * r2) >> omega
        if tag == "pa":
            delta_bar = delta >> (delta * idx)
            return delta_bar >> (mu2 * idx) >> omega, delta_bar >> (idx * mu2) >> omega
        if tag == "sa":
            delta_prime = sm.coordinates((a, a), (0, 1, 0, 1))
            g = delta_prime >> (twist * ((delta * idx) >> (idx * (twist >> mu2))))
            g_prime = delta_prime >> (sm.identity((a, a)) *
                                      ((delta * idx) >> (idx * twist) >> (mu2 * idx)))
            pair = (omega * omega) >> mu1
            return g >> pair, g_prime >> pair
        if tag == "mo":
            X3 = (a, a, a)
            theta = sm.coordinates(X3, (0, 1, 2, 0))
            diag3 = sm.coordinates(X3, (0, 1, 2, 0, 1, 2))
            delta_prime = sm.coordinates((a, a), (0, 1, 0, 1))
            left = theta >> (omega * omega) >> mu1
            right = theta >> (mu2 * mu2) >> omega
            left_p = (idx * (delta_prime >> (mu2 * sm.identity((a, a))))) >> (omega * omega) >> mu1
            right_p = theta >> (((idx * mu2) >> mu2) * idx) >> omega
            return diag3 >> (left * right) >> mu1, diag3 >> (left_p * right_p) >> mu1
        raise ValueError(f"unknown property tag {tag!r}")

    def residual(self, tag: str, alpha: GeneratorLinearMap) -> dict[str, Element]:
        lhs, rhs = self.sides(tag, alpha)
        return {g.name: sm.pull(lhs, g.name) - sm.pull(rhs, g.name) for g in self.generators}

    def residual_matrix(self, tag: str) -> Matrix:
        """Rows: residual coordinates for every x_i; columns: coordinates of V."""
        if tag not in self._matrices:
            self._matrices[tag] = self._residual_matrix(tag)
        return self._matrices[tag]

    def _residual_matrix(self, tag: str) -> Matrix:
        target = self.residual_target(tag)
        bases = [basis_of_degree(target, g.degree) for g in self.generators]
        n_rows = sum(len(b) for b in bases)
        columns = []
        for j in range(self.dim_V):
            e = [0] * self.dim_V
            e[j] = 1
            res = self.residual(tag, self.alpha(e))
            col = []
            for g, basis in zip(self.generators, bases):
                col.extend(res[g.name].coordinates(basis))
            columns.append(col)
        return Matrix(n_rows, self.dim_V,
                      (columns[j][i] for i in range(n_rows) for j in range(self.dim_V)))

    # subspaces of V -------------------------------------------------------

    @cached_property
    def _subspaces(self) -> dict[str, Subspace]:
        out = {"V": Subspace.full(self.dim_V)}
        for tag in TAGS:
            out[tag] = kernel(self.residual_matrix(tag))
        out["imhd"] = self._im_hd()
        return out

    def subspace(self, name: str) -> Subspace:
        return self._subspaces[name]

    def _im_hd(self) -> Subspace:
        vectors = []
        for g in self.generators:
            for mono in basis_of_degree(self.x2, g.degree):
                images = [self.x2.monomial(mono) if h == g else self.x2.zero()
                          for h in self.generators]
                beta = GeneratorLinearMap(self.generators, self.x2, images)
                vectors.append(smash_coordinates(hd_bar(beta, self.mu2)))
        return Subspace.span(vectors, self.dim_V)

    def restrict(self, space: Subspace, name: str) -> Subspace:
        """Coordinates of ``space`` on the block of generator ``name``.

        Only meaningful for subspaces that split along generators.
        """
        sl = self.block(name)
        return Subspace.span([r[sl] for r in space.rows()], sl.stop - sl.start)


# per-generator operations ---------------------------------------------------


def _generator_matrix(problem: ExtensionProblem, name: str, tag: str) -> Matrix:
    full = problem.residual_matrix(tag)
    sl = problem.block(name)
    rows = [r[sl] for r in full.tolist()]
    return Matrix.from_rows(rows, cols=sl.stop - sl.start)


def residual_inv(problem: ExtensionProblem, alpha: GeneratorLinearMap) -> dict[str, Element]:
    return problem.residual("inv", alpha)


def residual_pa(problem: ExtensionProblem, alpha: GeneratorLinearMap) -> dict[str, Element]:
    return problem.residual("pa", alpha)


def residual_sa(problem: ExtensionProblem, alpha: GeneratorLinearMap) -> dict[str, Element]:
    return problem.residual("sa", alpha)


def residual_mo(problem: ExtensionProblem, alpha: GeneratorLinearMap) -> dict[str, Element]:
    return problem.residual("mo", alpha)


def property_subspace(problem: ExtensionProblem, generator: str, tag: str) -> Subspace:
    """V_tag for the single generator ``generator`` (alpha vanishing elsewhere)."""
    if tag not in TAGS:
        raise ValueError(f"unknown property tag {tag!r}")
    sl = problem.block(generator)
    if sl.stop == sl.start:
        return Subspace.zero(0)
    return kernel(_generator_matrix(problem, generator, tag))


def im_hd_subspace(problem: ExtensionProblem, generator: str) -> Subspace:
    g = problem.x1.generators[problem.generator_index(generator)]
    mu2 = problem.mu2
    vectors = []
    for mono in basis_of_degree(problem.x2, g.degree):
        beta = GeneratorLinearMap((g,), problem.x2, [problem.x2.monomial(mono)])
        vectors.append(smash_coordinates(hd_bar(beta, mu2)))
    return Subspace.span(vectors, len(problem.smash_bases[problem.generator_index(generator)]))


# reports ----------------------------------------------------------------------


@dataclass
class GeneratorReport:
    name: str
    degree: int
    ambient_basis: list[str]
    spaces: dict[str, Subspace]
    quotients: dict[str, int]
    lattice: dict[str, dict[str, bool]]
    case: str


@dataclass
class ModuliReport:
    problem: ExtensionProblem
    per_generator: list[GeneratorReport]
    totals: dict[str, int]
    quotient_totals: dict[str, int]
    splitting_verified: bool


def case_label(problem: ExtensionProblem, degree: int, ambient: int) -> str:
    a = problem.x2
    if ambient == 0:
        return "zero"
    if a.ngens != 1 or not problem.mu2.is_primitive():
        return "general"
    dy = a.generators[0].degree
    if dy % 2:
        return "odd-generator"
    k = degree // dy
    if k == 2:
        return "ratio-2"
    if k == 3:
        return "ratio-3"
    return "even-ratio" if k % 2 == 0 else "odd-ratio"


def _lattice(spaces: dict[str, Subspace]) -> dict[str, dict[str, bool]]:
    # lattice[a][b] is True when space a is contained in space b
    return {a: {b: contains(spaces[b], spaces[a]) for b in SPACES} for a in SPACES}


def quotient_dims(spaces: dict[str, Subspace], label: str = "") -> dict[str, int]:
    out = {}
    for name in ("V",) + TAGS:
        try:
            out[name] = quotient_dim(spaces[name], spaces["imhd"])
        except ContainmentError:
            raise ContainmentError(
                f"{label}Im HD-bar is not contained in V_{name}; the X_2 multiplication "
                f"lacks this property or the computation is wrong") from None
    return out


def moduli_report(problem: ExtensionProblem) -> ModuliReport:
    per = []
    for g in problem.generators:
        spaces = {"V": Subspace.full(len(problem.smash_bases[problem.generator_index(g.name)]))}
        for tag in TAGS:
            spaces[tag] = property_subspace(problem, g.name, tag)
        spaces["imhd"] = im_hd_subspace(problem, g.name)
        basis = problem.smash_bases[problem.generator_index(g.name)]
        per.append(GeneratorReport(
            name=g.name,
            degree=g.degree,
            ambient_basis=[format_monomial(problem.square, m) for m in basis],
            spaces=spaces,
            quotients=quotient_dims(spaces, f"generator {g.name}: "),
            lattice=_lattice(spaces),
            case=case_label(problem, g.degree, len(basis)),
        ))
    full = {name: problem.subspace(name) for name in SPACES}
    totals = {name: s.dim for name, s in full.items()}
    quotient_totals = quotient_dims(full)
    split_ok = all(
        problem.restrict(full[name], r.name) == r.spaces[name]
        and full[name].dim == sum(p.spaces[name].dim for p in per)
        for name in SPACES for r in per)
    return ModuliReport(problem, per, totals, quotient_totals, split_ok)


def block_sum(parts: Sequence[Subspace]) -> Subspace:
    """Direct sum of subspaces, placed block-diagonally."""
    n = sum(p.ambient_dim for p in parts)
    rows, offset = [], 0
    for p in parts:
        for r in p.rows():
            rows.append([Fraction(0)] * offset + r + [Fraction(0)] * (n - offset - len(r)))
        offset += p.ambient_dim
    return Subspace.span(rows, n)
