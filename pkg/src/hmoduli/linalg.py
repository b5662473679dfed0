"""Exact dense linear algebra over Q.

Everything here works on :class:`fractions.Fraction` entries and never
rounds.  Subspaces are stored in reduced row echelon form, so two
subspaces are equal exactly when their basis matrices are equal.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class DimensionMismatch(ValueError):
    pass


class ContainmentError(ValueError):
    pass


def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point entries are not allowed")
    return Fraction(x)


class Matrix:
    """Immutable dense matrix of Fractions, stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable = ()):
        entries = tuple(_q(x) for x in entries)
        if len(entries) != rows * cols:
            raise DimensionMismatch(
                f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cols must be given for a matrix with no rows")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise DimensionMismatch("ragged rows")
        return cls(len(rows), cols, (x for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, (1 if i == j else 0 for i in range(n) for j in range(n)))

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def tolist(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      (self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        ocols = [other.entries[j::other.cols] for j in range(other.cols)]
        for i in range(self.rows):
            r = self.row(i)
            for c in ocols:
                out.append(sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)))
        return Matrix(self.rows, other.cols, out)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise DimensionMismatch("vector length does not match column count")
        v = [_q(x) for x in v]
        return tuple(sum((a * b for a, b in zip(self.row(i), v) if a and b), Fraction(0))
                     for i in range(self.rows))

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise DimensionMismatch("vstack needs equal column counts")
        return Matrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"Matrix({self.rows}, {self.cols}, {[str(x) for x in self.entries]})"


def rref(m: Matrix) -> tuple[Matrix, int, tuple[int, ...]]:
    """Reduced row echelon form.  Zero rows are dropped from the result."""
    a = m.tolist()
    n_rows, n_cols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(n_rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return Matrix.from_rows(a[:r], cols=n_cols), r, tuple(pivots)


def rank(m: Matrix) -> int:
    return rref(m)[1]


class Subspace:
    """A subspace of Q^n, held as the RREF of a spanning set."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, basis: Matrix | None = None):
        if basis is None:
            basis = Matrix(0, ambient_dim)
        if basis.cols != ambient_dim:
            raise DimensionMismatch("basis width differs from ambient dimension")
        basis, _, pivots = rref(basis)
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "pivots", pivots)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Matrix.from_rows(list(vectors), cols=ambient_dim))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, Matrix.identity(n))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @property
    def dim(self) -> int:
        return self.basis.rows

    def rows(self) -> list[list[Fraction]]:
        return self.basis.tolist()

    def __contains__(self, v: Sequence) -> bool:
        return contains(self, Subspace.span([v], self.ambient_dim))

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __le__(self, other: "Subspace") -> bool:
        return contains(other, self)

    def __lt__(self, other: "Subspace") -> bool:
        return contains(other, self) and self.dim < other.dim

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def annihilator(self) -> "Subspace":
        """Vectors orthogonal (standard dot product) to every vector here."""
        return kernel(self.basis)

    def __repr__(self):
        rows = [[str(x) for x in r] for r in self.rows()]
        return f"Subspace(ambient={self.ambient_dim}, dim={self.dim}, basis={rows})"


def kernel(m: Matrix) -> Subspace:
    """Null space {v : m v = 0} as a subspace of Q^cols."""
    red, r, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    vectors = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i, f]
        vectors.append(v)
    return Subspace.span(vectors, m.cols)


def _check_ambient(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(
            f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}")


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    return Subspace(a.ambient_dim, a.basis.vstack(b.basis))


def intersect(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    # v lies in a iff it is orthogonal to a's annihilator
    constraints = a.annihilator().basis.vstack(b.annihilator().basis)
    return kernel(constraints)


def contains(a: Subspace, b: Subspace) -> bool:
    """True when b is a subspace of a."""
    _check_ambient(a, b)
    if b.dim > a.dim:
        return False
    return rank(a.basis.vstack(b.basis)) == a.dim


def quotient_dim(a: Subspace, b: Subspace) -> int:
    """dim(a / b); b must lie inside a."""
    if not contains(a, b):
        raise ContainmentError(f"{b!r} is not contained in {a!r}")
    return a.dim - b.dim
