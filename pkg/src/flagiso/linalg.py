"""Exact linear algebra over the rationals.

Matrices are lists of rows, vectors are sequences; entries are ints or
``fractions.Fraction``.  Pivoting is always "first nonzero", so reduced
forms and nullspace bases are canonical and every run is deterministic.
Sizes in this package are small (dimensions of flag tangent spaces), so
plain Gaussian elimination is fast enough.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Vector = Sequence
Matrix = list[list]


def scale_to_int(vec: Vector) -> tuple[int, ...]:
    """Primitive integer vector spanning the same line (orientation kept)."""
    denoms = [Fraction(x).denominator for x in vec]
    mult = lcm(*denoms) if denoms else 1
    ints = [int(Fraction(x) * mult) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


def normalize_row(vec: Vector) -> tuple[int, ...]:
    """Like scale_to_int but with the first nonzero entry positive."""
    ints = list(scale_to_int(vec))
    for x in ints:
        if x != 0:
            if x < 0:
                ints = [-y for y in ints]
            break
    return tuple(ints)


def rref(rows: Sequence[Vector]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns).

    Entries are coerced to Fraction up front: int/int division would fall
    into floating point and silently poison exactness.
    """
    m = [[x if isinstance(x, Fraction) else Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        if pv != 1:
            m[r] = [x / pv if x else Fraction(0) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Vector]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Vector], ncols: int) -> list[tuple[int, ...]]:
    """Canonical integer basis of {x : rows @ x = 0}, ordered by free column."""
    red, pivots = rref(rows)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for row, p in zip(red, pivots):
            vec[p] = -row[free]
        basis.append(scale_to_int(vec))
    return basis


def span_basis(vectors: Sequence[Vector]) -> list[tuple[int, ...]]:
    """Canonical (row-reduced, integer) basis of the span of the vectors."""
    red, _ = rref(vectors)
    return [scale_to_int(row) for row in red]


def solve_many(cols: Sequence[Vector], targets: Sequence[Vector]):
    """Solve B @ X = T where B has the given columns.

    Returns the columns of X (exact), or None if some target is outside the
    column span.  The columns are assumed independent (a basis), which makes
    the solution unique.
    """
    if not cols:
        return None if any(any(x != 0 for x in t) for t in targets) else [[] for _ in targets]
    n = len(cols[0])
    d = len(cols)
    aug = [[cols[j][i] for j in range(d)] + [t[i] for t in targets] for i in range(n)]
    red, pivots = rref(aug)
    if any(p >= d for p in pivots):
        return None
    out = []
    for k in range(len(targets)):
        x = [Fraction(0)] * d
        for row, p in zip(red, pivots):
            x[p] = row[d + k]
        out.append(x)
    return out


def in_span(basis: Sequence[Vector], vec: Vector) -> bool:
    if not basis:
        return all(x == 0 for x in vec)
    return solve_many(list(basis), [vec]) is not None


def matvec(mat: Matrix, vec: Vector) -> list:
    return [sum(a * b for a, b in zip(row, vec)) for row in mat]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def transpose(mat: Matrix) -> Matrix:
    return [list(r) for r in zip(*mat)]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def restrict_action(mat: Matrix, basis: Sequence[Vector]):
    """Matrix of x -> mat @ x on span(basis), in basis coordinates.

    Returns None when the span is not invariant.
    """
    targets = [matvec(mat, v) for v in basis]
    sol = solve_many(list(basis), targets)
    if sol is None:
        return None
    d = len(basis)
    return [[sol[j][i] for j in range(d)] for i in range(d)]
