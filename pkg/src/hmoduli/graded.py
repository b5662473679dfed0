"""Free graded-commutative algebras over Q, truncated above a fixed degree.

An :class:`Algebra` is Lambda(g_1, ..., g_r): polynomial on even generators,
exterior on odd ones.  Tensor products of such algebras are again free
graded-commutative, so ``tensor((A, A))`` is just an algebra whose
generators are tagged with their factor (``y_1``, ``y_2``) and ordered
factor by factor.  A monomial is its exponent vector; the canonical word
is the generators written in declaration order, and Koszul signs appear
only when two odd generators are swapped to restore that order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

Monomial = tuple  # exponent vector aligned with Algebra.generators


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError(f"generator {self.name} must have positive degree")
        if not _NAME.fullmatch(self.name):
            raise ValueError(f"bad generator name {self.name!r}")

    @property
    def odd(self) -> bool:
        return self.degree % 2 == 1


@dataclass(frozen=True, eq=False)
class Algebra:
    generators: tuple[Generator, ...]
    truncation: int
    factors: tuple["Algebra", ...] | None = None

    def _key(self):
        return (self.generators, self.truncation, self.factors)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Algebra):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return self._hash

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "_hash", hash(self._key()))
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        if self.generators and self.truncation < max(g.degree for g in self.generators):
            raise ValueError("truncation degree below a generator degree")

    @classmethod
    def free(cls, gens: Iterable, truncation: int) -> "Algebra":
        """``Algebra.free([("y", 2)], 8)``"""
        gens = tuple(g if isinstance(g, Generator) else Generator(*g) for g in gens)
        return cls(gens, truncation)

    @cached_property
    def ngens(self) -> int:
        return len(self.generators)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(g.degree for g in self.generators)

    @cached_property
    def _odd(self) -> tuple[bool, ...]:
        return tuple(g.odd for g in self.generators)

    @cached_property
    def index(self) -> dict[str, int]:
        return {g.name: i for i, g in enumerate(self.generators)}

    @cached_property
    def factor_slices(self) -> tuple[slice, ...]:
        out, start = [], 0
        for f in self.factor_list:
            out.append(slice(start, start + f.ngens))
            start += f.ngens
        return tuple(out)

    @property
    def factor_list(self) -> tuple["Algebra", ...]:
        return self.factors if self.factors is not None else (self,)

    def degree_of(self, mono: Monomial) -> int:
        return sum(e * d for e, d in zip(mono, self.degrees))

    def unit_monomial(self) -> Monomial:
        return (0,) * self.ngens

    def one(self) -> "Element":
        return Element(self, {self.unit_monomial(): Fraction(1)})

    def zero(self) -> "Element":
        return Element(self, {})

    def gen(self, name_or_index) -> "Element":
        i = self.index[name_or_index] if isinstance(name_or_index, str) else name_or_index
        mono = tuple(1 if j == i else 0 for j in range(self.ngens))
        return Element(self, {mono: Fraction(1)})

    def gens(self) -> list["Element"]:
        return [self.gen(i) for i in range(self.ngens)]

    def monomial(self, exponents: Sequence[int]) -> "Element":
        mono = tuple(exponents)
        if len(mono) != self.ngens:
            raise ValueError("exponent vector has the wrong length")
        if any(e > 1 for e, o in zip(mono, self._odd) if o):
            return self.zero()
        if self.degree_of(mono) > self.truncation:
            return self.zero()
        return Element(self, {mono: Fraction(1)})

    def with_truncation(self, truncation: int) -> "Algebra":
        factors = None if self.factors is None else tuple(
            f.with_truncation(truncation) for f in self.factors)
        return Algebra(self.generators, truncation, factors)

    def __repr__(self):
        gens = ", ".join(f"{g.name}:{g.degree}" for g in self.generators)
        return f"Algebra({gens}; trunc={self.truncation})"


def tensor(algebras: Sequence[Algebra]) -> Algebra:
    """Tensor product; generators tagged ``name_i`` for factor i (1-based).

    A single factor is returned unchanged.
    """
    return _tensor(tuple(algebras))


@lru_cache(maxsize=None)
def _tensor(algebras: tuple) -> Algebra:
    if len(algebras) == 1:
        return algebras[0]
    if any(a.factors is not None for a in algebras):
        raise ValueError("tensor factors must be plain free algebras")
    gens = tuple(Generator(f"{g.name}_{i + 1}", g.degree)
                 for i, a in enumerate(algebras) for g in a.generators)
    trunc = max(a.truncation for a in algebras)
    return Algebra(gens, trunc, algebras)


def tensor_square(a: Algebra) -> Algebra:
    return tensor((a, a))


def tensor_cube(a: Algebra) -> Algebra:
    return tensor((a, a, a))


def _exponent_vectors(degs, odd, d) -> Iterator[tuple]:
    # ascending lexicographic order on exponent vectors
    n = len(degs)

    def rec(i, remaining):
        if i == n:
            if remaining == 0:
                yield ()
            return
        top = remaining // degs[i]
        if odd[i]:
            top = min(top, 1)
        for e in range(top + 1):
            for rest in rec(i + 1, remaining - e * degs[i]):
                yield (e,) + rest

    yield from rec(0, d)


def basis_of_degree(a: Algebra, d: int) -> list[Monomial]:
    if d > a.truncation:
        raise ValueError(f"degree {d} exceeds truncation {a.truncation}")
    if d < 0:
        return []
    return list(_exponent_vectors(a.degrees, a._odd, d))


def smash_basis(a: Algebra, d: int) -> list[Monomial]:
    """Monomials u (x) v of degree d with both deg u > 0 and deg v > 0."""
    if a.factors is None or len(a.factors) != 2:
        raise ValueError("smash_basis needs a tensor square")
    s1, s2 = a.factor_slices
    out = []
    for m in basis_of_degree(a, d):
        if any(m[s1]) and any(m[s2]):
            out.append(m)
    return out


def _mono_mul(a: Algebra, u: Monomial, v: Monomial):
    """Product of two canonical monomials as (sign, monomial), or None if zero."""
    odd = a._odd
    parity = 0
    later_odd = 0  # odd generators of u with index > j
    for j in range(a.ngens - 1, -1, -1):
        if odd[j]:
            if u[j] and v[j]:
                return None
            if v[j]:
                parity += later_odd
            if u[j]:
                later_odd += 1
    w = tuple(x + y for x, y in zip(u, v))
    if a.degree_of(w) > a.truncation:
        return None
    return (-1 if parity % 2 else 1), w


class Element:
    """Finite Q-linear combination of monomials of one algebra.

    Treated as immutable; all operations return new elements.
    """

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: Algebra, terms: Mapping[Monomial, Fraction] | None = None):
        self.algebra = algebra
        clean = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[tuple(m)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, algebra, terms):
        e = cls.__new__(cls)
        e.algebra = algebra
        e.terms = terms
        return e

    # arithmetic -----------------------------------------------------------

    def _check(self, other: "Element"):
        if other.algebra != self.algebra:
            raise ValueError(f"algebra mismatch: {self.algebra!r} vs {other.algebra!r}")

    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.algebra.one() * Fraction(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Element._raw(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return Element._raw(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Element":
        c = Fraction(c)
        if not c:
            return self.algebra.zero()
        return Element._raw(self.algebra, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        a = self.algebra
        out: dict = {}
        for u, cu in self.terms.items():
            for v, cv in other.terms.items():
                r = _mono_mul(a, u, v)
                if r is None:
                    continue
                s, w = r
                val = out.get(w, 0) + s * cu * cv
                if val:
                    out[w] = val
                else:
                    out.pop(w, None)
        return Element._raw(a, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = self.algebra.one()
        for _ in range(k):
            out = out * self
        return out

    # inspection -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.algebra.one() * Fraction(other)
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash((self.algebra, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def degrees(self) -> set[int]:
        return {self.algebra.degree_of(m) for m in self.terms}

    def is_homogeneous(self, d: int | None = None) -> bool:
        ds = self.degrees()
        if not ds:
            return True
        return len(ds) == 1 and (d is None or d in ds)

    def homogeneous_part(self, d: int) -> "Element":
        a = self.algebra
        return Element._raw(a, {m: c for m, c in self.terms.items() if a.degree_of(m) == d})

    def truncate(self, d: int) -> "Element":
        a = self.algebra
        return Element._raw(a, {m: c for m, c in self.terms.items() if a.degree_of(m) <= d})

    def coordinates(self, basis: Sequence[Monomial]) -> list[Fraction]:
        """Coefficients on ``basis``; raises if the element has support outside it."""
        index = {m: i for i, m in enumerate(basis)}
        out = [Fraction(0)] * len(basis)
        for m, c in self.terms.items():
            if m not in index:
                raise ValueError(f"monomial {format_monomial(self.algebra, m)} not in basis")
            out[index[m]] = c
        return out

    @classmethod
    def from_coordinates(cls, algebra: Algebra, basis: Sequence[Monomial], coords) -> "Element":
        return cls(algebra, {m: c for m, c in zip(basis, coords)})

    def items(self):
        return sorted(self.terms.items())

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"Element({format_element(self)!r})"


# morphisms ----------------------------------------------------------------


class AlgebraMorphism:
    """Degree-preserving algebra map, determined by generator images."""

    __slots__ = ("source", "target", "images")

    def __init__(self, source: Algebra, target: Algebra, images: Sequence[Element]):
        images = tuple(images)
        if len(images) != source.ngens:
            raise ValueError("need one image per source generator")
        for g, im in zip(source.generators, images):
            if im.algebra != target:
                raise ValueError(f"image of {g.name} is not in the target algebra")
            if not im.is_homogeneous(g.degree):
                raise ValueError(f"image of {g.name} is not homogeneous of degree {g.degree}")
        self.source = source
        self.target = target
        self.images = images

    @classmethod
    def from_mapping(cls, source: Algebra, target: Algebra, images: Mapping[str, Element]):
        extra = set(images) - set(source.index)
        if extra:
            raise ValueError(f"unknown source generators {sorted(extra)}")
        return cls(source, target, [images.get(g.name, target.zero()) for g in source.generators])

    @classmethod
    def identity(cls, a: Algebra) -> "AlgebraMorphism":
        return cls(a, a, a.gens())

    @classmethod
    def zero(cls, source: Algebra, target: Algebra) -> "AlgebraMorphism":
        """Augmentation followed by the unit: every generator goes to 0."""
        return cls(source, target, [target.zero()] * source.ngens)

    def __call__(self, e: Element) -> Element:
        return apply(self, e)

    def image(self, name: str) -> Element:
        return self.images[self.source.index[name]]

    def __eq__(self, other):
        if not isinstance(other, AlgebraMorphism):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.images == other.images)

    def __hash__(self):
        return hash((self.source, self.target, self.images))

    def __repr__(self):
        body = ", ".join(f"{g.name} -> {im}" for g, im in zip(self.source.generators, self.images))
        return f"AlgebraMorphism({body})"


def multiply(a: Element, b: Element) -> Element:
    return a * b


def apply(phi: AlgebraMorphism, e: Element) -> Element:
    """Extend phi multiplicatively, following the canonical generator order."""
    if e.algebra != phi.source:
        raise ValueError("element does not live in the morphism's source")
    tgt = phi.target
    powers: dict[int, list[Element]] = {}

    def power(i, k):
        p = powers.setdefault(i, [tgt.one()])
        while len(p) <= k:
            p.append(p[-1] * phi.images[i])
        return p[k]

    out = tgt.zero()
    for mono, c in e.terms.items():
        term = tgt.one()
        for i, k in enumerate(mono):
            if k:
                term = term * power(i, k)
                if term.is_zero():
                    break
        out = out + term.scale(c)
    return out


def compose(phi: AlgebraMorphism, psi: AlgebraMorphism) -> AlgebraMorphism:
    """Diagrammatic order: first phi, then psi.  Returns psi o phi."""
    if phi.target != psi.source:
        raise ValueError("compose(phi, psi) needs phi.target == psi.source")
    return AlgebraMorphism(phi.source, psi.target, [apply(psi, im) for im in phi.images])


def embedding(t: Algebra, i: int) -> AlgebraMorphism:
    """Inclusion of the i-th tensor factor (0-based) into t."""
    f = t.factor_list[i]
    sl = t.factor_slices[i]
    return AlgebraMorphism(f, t, [t.gen(j) for j in range(sl.start, sl.stop)])


def collapse(t: Algebra, keep: int) -> AlgebraMorphism:
    """Augmentation on every factor except ``keep``: t -> factor ``keep``."""
    f = t.factor_list[keep]
    images = []
    for i, sl in enumerate(t.factor_slices):
        for j in range(sl.stop - sl.start):
            images.append(f.gen(j) if i == keep else f.zero())
    return AlgebraMorphism(t, f, images)


def tensor_morphism(maps: Sequence[AlgebraMorphism],
                    source: Algebra | None = None,
                    target: Algebra | None = None) -> AlgebraMorphism:
    """f_1 (x) ... (x) f_r between tensor products of the sources and targets."""
    maps = tuple(maps)
    source = source or tensor([m.source for m in maps])
    target = target or tensor([m.target for m in maps])
    images = []
    for i, m in enumerate(maps):
        emb = embedding(target, i)
        images.extend(apply(emb, im) for im in m.images)
    return AlgebraMorphism(source, target, images)


def multiplication(t: Algebra) -> AlgebraMorphism:
    """Product map A (x) ... (x) A -> A; an algebra map since A is graded-commutative."""
    base = t.factor_list[0]
    if any(f != base for f in t.factor_list):
        raise ValueError("multiplication needs a tensor power of one algebra")
    return AlgebraMorphism(t, base, [base.gen(j) for sl in t.factor_slices
                                     for j in range(sl.stop - sl.start)])


# text format --------------------------------------------------------------

_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_']*")


class ParseError(ValueError):
    def __init__(self, msg: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {msg}")
        self.line = line
        self.column = column


def format_monomial(a: Algebra, mono: Monomial) -> str:
    parts = []
    for g, e in zip(a.generators, mono):
        if e == 1:
            parts.append(g.name)
        elif e > 1:
            parts.append(f"{g.name}^{e}")
    return ".".join(parts) if parts else "1"


def format_element(e: Element) -> str:
    if e.is_zero():
        return "0"
    out = []
    for mono, c in e.items():
        neg = c < 0
        c = abs(c)
        if not any(mono):
            body = str(c)
        elif c == 1:
            body = format_monomial(e.algebra, mono)
        else:
            body = f"{c}*{format_monomial(e.algebra, mono)}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z][A-Za-z0-9_']*)|(?P<op>[-+*/.^()]))")


def parse_element(text: str, a: Algebra, line: int = 1, col_offset: int = 0) -> Element:
    """Parse the textual format produced by :func:`format_element`.

    ``line`` and ``col_offset`` only affect error positions.
    """
    tokens = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        m = _TOKEN.match(stripped, pos)
        if not m or m.end() == pos:
            col = pos + len(stripped[pos:]) - len(stripped[pos:].lstrip()) + 1
            raise ParseError(f"unexpected character {stripped[col - 1]!r}", line, col + col_offset)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind) + 1 + col_offset))
        pos = m.end()
    tokens.append(("end", "", len(stripped) + 1 + col_offset))
    i = 0

    def peek():
        return tokens[i]

    def take(kind=None, value=None):
        nonlocal i
        t = tokens[i]
        if (kind and t[0] != kind) or (value and t[1] != value):
            want = value or kind
            raise ParseError(f"expected {want}, found {t[1] or 'end of input'!r}", line, t[2])
        i += 1
        return t

    def factor():
        t = take("name")
        if t[1] not in a.index:
            raise ParseError(f"unknown generator {t[1]!r}", line, t[2])
        g = a.gen(t[1])
        d = a.generators[a.index[t[1]]].degree
        if peek()[1] == "^":
            take("op", "^")
            k = int(take("num")[1])
            return g ** k, d * k
        return g, d

    def monomial():
        start = peek()[2]
        out, deg = factor()
        while peek()[1] == ".":
            take("op", ".")
            f, d = factor()
            out, deg = out * f, deg + d
        if deg > a.truncation:
            raise ParseError(f"monomial of degree {deg} exceeds truncation {a.truncation}", line, start)
        return out

    def term():
        t = peek()
        if t[0] == "num":
            num = int(take("num")[1])
            den = 1
            if peek()[1] == "/":
                take("op", "/")
                d = take("num")
                den = int(d[1])
                if den == 0:
                    raise ParseError("zero denominator", line, d[2])
            c = Fraction(num, den)
            if peek()[1] == "*":
                take("op", "*")
                return monomial().scale(c)
            if peek()[0] == "name":
                return monomial().scale(c)
            return a.one().scale(c)
        if t[0] == "name":
            return monomial()
        raise ParseError(f"expected a term, found {t[1] or 'end of input'!r}", line, t[2])

    total = a.zero()
    sign = 1
    if peek()[1] in "+-" and peek()[0] == "op":
        sign = -1 if take("op")[1] == "-" else 1
    total = total + term().scale(sign)
    while peek()[0] != "end":
        t = peek()
        if t[1] not in ("+", "-"):
            raise ParseError(f"expected '+' or '-', found {t[1]!r}", line, t[2])
        take("op")
        total = total + term().scale(-1 if t[1] == "-" else 1)
    return total
