"""Exact linear algebra over Z and Q for small dense systems."""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence


def content(vec: Sequence[int]) -> int:
    g = 0
    for a in vec:
        g = gcd(g, a)
    return g


def primitive_vector(vec: Sequence[Fraction | int]) -> list[int]:
    """Scale a rational vector to integers with content 1 and first nonzero
    entry positive."""
    den = 1
    for a in vec:
        den = lcm(den, Fraction(a).denominator)
    ints = [int(Fraction(a) * den) for a in vec]
    c = content(ints)
    if c == 0:
        return ints
    ints = [a // c for a in ints]
    for a in ints:
        if a:
            if a < 0:
                ints = [-b for b in ints]
            break
    return ints


def bareiss_echelon(matrix: Sequence[Sequence[int]]):
    """Fraction-free row echelon form.

    Returns ``(rows, pivot_columns)``. Pivots are chosen as the first nonzero
    entry in row order, so the result is deterministic. Every intermediate
    entry is a minor of the input, hence each division is exact.
    """
    a = [[int(x) for x in row] for row in matrix]
    if not a:
        return a, []
    n_rows, n_cols = len(a), len(a[0])
    prev = 1
    r = 0
    pivots = []
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[p], a[r] = a[r], a[p]
        piv = a[r][c]
        for i in range(r + 1, n_rows):
            lead = a[i][c]
            row_i = a[i]
            row_r = a[r]
            for j in range(c + 1, n_cols):
                q, rem = divmod(piv * row_i[j] - lead * row_r[j], prev)
                if rem:
                    raise ArithmeticError("non-exact Bareiss division")
                row_i[j] = q
            row_i[c] = 0
        # rows above r keep their entries; zero out the untouched tail columns
        prev = piv
        pivots.append(c)
        r += 1
    return a, pivots


def rank(matrix) -> int:
    return len(bareiss_echelon(matrix)[1])


def integer_nullspace(matrix: Sequence[Sequence[int]], n_cols: int | None = None,
                      limit: int | None = None) -> list[list[int]]:
    """Basis of ``{x : M x = 0}`` as primitive integer vectors.

    One vector per free column, in column order (the first free column gives
    the first vector).
    """
    if not matrix:
        if n_cols is None:
            raise ValueError("n_cols required for an empty matrix")
        return [[int(i == j) for j in range(n_cols)] for i in range(n_cols)]
    ech, pivots = bareiss_echelon(matrix)
    n = len(ech[0])
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for i in range(len(pivots) - 1, -1, -1):
            pc = pivots[i]
            s = sum((ech[i][j] * x[j] for j in range(pc + 1, n) if x[j]), Fraction(0))
            x[pc] = -s / ech[i][pc]
        basis.append(primitive_vector(x))
        if limit is not None and len(basis) >= limit:
            break
    return basis


class InconsistentSystem(ArithmeticError):
    def __init__(self, multipliers):
        self.multipliers = multipliers  # row index -> integer multiplier
        super().__init__(f"inconsistent system ({len(multipliers)} rows in certificate)")


def solve_rational(a: Sequence[Sequence[int]], b: Sequence[int]) -> list[Fraction]:
    """One solution of ``A x = b`` over Q (free variables set to 0).

    Raises :class:`InconsistentSystem` carrying integer row multipliers ``y``
    with ``y A = 0`` and ``y b != 0``.
    """
    n_rows = len(a)
    n_cols = len(a[0]) if a else 0
    m = [[Fraction(x) for x in row] + [Fraction(rhs)] for row, rhs in zip(a, b)]
    pivots = []
    r = 0
    for c in range(n_cols):
        p = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[p], m[r] = m[r], m[p]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                row_r = m[r]
                m[i] = [x - f * y for x, y in zip(m[i], row_r)]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    if any(m[i][n_cols] != 0 for i in range(r, n_rows)):
        raise InconsistentSystem(_infeasibility_certificate(a, b))
    x = [Fraction(0)] * n_cols
    for i, c in enumerate(pivots):
        x[c] = m[i][n_cols]
    return x


def _infeasibility_certificate(a, b) -> dict:
    transpose = [[int(a[i][j]) for i in range(len(a))] for j in range(len(a[0]))]
    for y in _lazy_nullspace(transpose):
        if sum(yi * bi for yi, bi in zip(y, b)) != 0:
            return {i: yi for i, yi in enumerate(y) if yi}
    raise ArithmeticError("no certificate found for an inconsistent system")


def _lazy_nullspace(matrix):
    ech, pivots = bareiss_echelon(matrix)
    n = len(ech[0])
    pivset = set(pivots)
    for f in (c for c in range(n) if c not in pivset):
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for i in range(len(pivots) - 1, -1, -1):
            pc = pivots[i]
            s = sum((ech[i][j] * x[j] for j in range(pc + 1, n) if x[j]), Fraction(0))
            x[pc] = -s / ech[i][pc]
        yield primitive_vector(x)
