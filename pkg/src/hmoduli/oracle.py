"""Independent polynomial oracle for X_2 = K(Q, even) with the primitive diagonal.

With H*(X_2^p) = Q[a, b, c, ...] and alpha(x) = sum_j r_j y^j (x) y^(k-j),
pulling omega back along a map whose two coordinates have linear
cohomology images u, v gives f(u, v) = sum_j r_j u^j v^(k-j).  Each
condition then becomes a polynomial identity.  Nothing here touches
:mod:`hmoduli.graded`; plain dicts of exponent tuples are enough.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .linalg import Matrix, Subspace, kernel

Poly = dict  # exponent tuple -> Fraction


def _add(p: Poly, q: Poly, sign: int = 1) -> Poly:
    out = dict(p)
    for m, c in q.items():
        v = out.get(m, 0) + sign * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            out[m] = out.get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def _pow(p: Poly, k: int, nvars: int) -> Poly:
    out = {(0,) * nvars: Fraction(1)}
    for _ in range(k):
        out = _mul(out, p)
    return out


def linear(coeffs: Sequence[int]) -> Poly:
    """The linear form sum coeffs[i] * var_i."""
    n = len(coeffs)
    return {tuple(1 if j == i else 0 for j in range(n)): Fraction(c)
            for i, c in enumerate(coeffs) if c}


def f(r: Sequence, u: Poly, v: Poly, nvars: int) -> Poly:
    k = len(r) + 1
    out: Poly = {}
    for j in range(1, k):
        if r[j - 1]:
            term = _mul(_pow(u, j, nvars), _pow(v, k - j, nvars))
            out = _add(out, {m: c * Fraction(r[j - 1]) for m, c in term.items()})
    return out


def residual_polynomial(tag: str, r: Sequence) -> Poly:
    """Left side minus right side of each condition, as a polynomial.

    inv: f(-y, y) - f(y, -y)
    pa:  f(2y, y) - f(y, 2y)
    sa:  f(b, a) + f(a, a+b) - f(a, b) - f(a+b, a)
    mo:  f(a, b) + f(c, a) + f(a+b, c+a) - f(a, b+c) - f(b, c) - f(a+b+c, a)
    """
    if tag == "inv":
        y = linear([1])
        return _add(f(r, linear([-1]), y, 1), f(r, y, linear([-1]), 1), -1)
    if tag == "pa":
        return _add(f(r, linear([2]), linear([1]), 1), f(r, linear([1]), linear([2]), 1), -1)
    if tag == "sa":
        a, b, ab = linear([1, 0]), linear([0, 1]), linear([1, 1])
        lhs = _add(f(r, b, a, 2), f(r, a, ab, 2))
        rhs = _add(f(r, a, b, 2), f(r, ab, a, 2))
        return _add(lhs, rhs, -1)
    if tag == "mo":
        a, b, c = linear([1, 0, 0]), linear([0, 1, 0]), linear([0, 0, 1])
        lhs = _add(_add(f(r, a, b, 3), f(r, c, a, 3)), f(r, linear([1, 1, 0]), linear([1, 0, 1]), 3))
        rhs = _add(_add(f(r, a, linear([0, 1, 1]), 3), f(r, b, c, 3)),
                   f(r, linear([1, 1, 1]), a, 3))
        return _add(lhs, rhs, -1)
    raise ValueError(f"unknown property tag {tag!r}")


def oracle_kernel(tag: str, k: int) -> Subspace:
    """Kernel of the polynomial residual over Q^(k-1)."""
    n = k - 1
    if n <= 0:
        return Subspace.zero(0)
    columns = []
    for j in range(n):
        e = [0] * n
        e[j] = 1
        columns.append(residual_polynomial(tag, e))
    monomials = sorted({m for col in columns for m in col})
    if not monomials:
        return Subspace.full(n)
    rows = [[col.get(m, Fraction(0)) for col in columns] for m in monomials]
    return kernel(Matrix.from_rows(rows, cols=n))
