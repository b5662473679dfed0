"""Maps between finite products of H-spaces, seen through rational cohomology.

A :class:`SpaceMap` from X_{s_1} x ... x X_{s_p} to X_{t_1} x ... x X_{t_q}
is stored as its pullback, an algebra map from the tensor product of the
target cohomologies to that of the source.  Composition reverses the
order of pullbacks and cartesian products become tensor products, so a
composite like ``(q x q)(t x (id x mu t)(Delta x id))Delta'`` can be
written down literally and evaluated exactly.

The smash quotient q : X x X -> X ^ X is invisible here: its pullback is
the inclusion of the smash part, so a map omega : X ^ X -> Y enters only
as ``omega q``, whose pullback is the given morphism into the smash part.
"""

from __future__ import annotations

from typing import Sequence

from .graded import Algebra, AlgebraMorphism, apply, compose, embedding, tensor
from .homloop import Diagonal

Factors = tuple  # tuple[Algebra, ...]


class SpaceMap:
    __slots__ = ("source", "target", "pullback")

    def __init__(self, source: Sequence[Algebra], target: Sequence[Algebra],
                 pullback: AlgebraMorphism):
        source, target = tuple(source), tuple(target)
        if pullback.source != tensor(target) or pullback.target != tensor(source):
            raise ValueError("pullback does not match the source and target factors")
        self.source = source
        self.target = target
        self.pullback = pullback

    def then(self, other: "SpaceMap") -> "SpaceMap":
        """``other`` after ``self``."""
        if self.target != other.source:
            raise ValueError("cannot compose: factor lists differ")
        return SpaceMap(self.source, other.target, compose(other.pullback, self.pullback))

    def __rshift__(self, other: "SpaceMap") -> "SpaceMap":
        return self.then(other)

    def __mul__(self, other: "SpaceMap") -> "SpaceMap":
        return times(self, other)

    def __repr__(self):
        return f"SpaceMap({len(self.source)} factors -> {len(self.target)} factors)"


def _block(big: Factors, offset: int, small: Factors) -> AlgebraMorphism:
    # tensor(small) -> tensor(big), small sitting at factor position ``offset``
    tb = tensor(big)
    start = tb.factor_slices[offset].start if len(big) > 1 else 0
    ts = tensor(small)
    return AlgebraMorphism(ts, tb, [tb.gen(start + j) for j in range(ts.ngens)])


def times(f: SpaceMap, g: SpaceMap) -> SpaceMap:
    """Cartesian product f x g."""
    source, target = f.source + g.source, f.target + g.target
    tt, ts = tensor(target), tensor(source)
    fs = _block(source, 0, f.source)
    gs = _block(source, len(f.source), g.source)
    images = [apply(fs, im) for im in f.pullback.images]
    images += [apply(gs, im) for im in g.pullback.images]
    return SpaceMap(source, target, AlgebraMorphism(tt, ts, images))


def product(*maps: SpaceMap) -> SpaceMap:
    out = maps[0]
    for m in maps[1:]:
        out = times(out, m)
    return out


def coordinates(source: Sequence[Algebra], picks: Sequence[int]) -> SpaceMap:
    """(v_0, ..., v_{p-1}) |-> (v_{picks[0]}, v_{picks[1]}, ...).

    Diagonals, twists, projections and theta(x, y, z) = (x, y, z, x) are all
    of this form.
    """
    source = tuple(source)
    target = tuple(source[i] for i in picks)
    tt, ts = tensor(target), tensor(source)
    images = []
    for i in picks:
        emb = embedding(ts, i) if len(source) > 1 else AlgebraMorphism.identity(ts)
        images.extend(apply(emb, g) for g in source[i].gens())
    return SpaceMap(source, target, AlgebraMorphism(tt, ts, images))


def identity(source: Sequence[Algebra]) -> SpaceMap:
    return coordinates(source, range(len(tuple(source))))


def multiplication(mu: Diagonal) -> SpaceMap:
    """The H-space multiplication X x X -> X whose pullback is ``mu``."""
    a = mu.algebra
    return SpaceMap((a, a), (a,), mu.underlying)


def from_pullback(source: Sequence[Algebra], target: Sequence[Algebra],
                  pullback: AlgebraMorphism) -> SpaceMap:
    return SpaceMap(source, target, pullback)


def pull(f: SpaceMap, name: str):
    """Pullback of a target generator (by tensor-product name) to the source."""
    return f.pullback.image(name)
