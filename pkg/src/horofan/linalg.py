"""Exact rational and integer-lattice linear algebra.

Everything here works over ``fractions.Fraction`` or plain ``int``; no
floating point enters anywhere.  Lattice questions (primitivity, basis
extension, integer solvability) are answered through gcd and Hermite
normal form, never through numerics.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

Vec = tuple[Fraction, ...]
IntVec = tuple[int, ...]
Matrix = list[list[Fraction]]
IntMatrix = list[list[int]]


def parse_rational(text: str) -> Fraction:
    """Parse an exact rational written as "p" or "p/q"."""
    text = text.strip()
    if "/" in text:
        num, _, den = text.partition("/")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_rational(x: Fraction) -> str:
    """Serialize a rational as "p" or "p/q" in lowest terms."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def vec_gcd(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    return g


def is_primitive(v: Sequence[int]) -> bool:
    """True iff v is a primitive lattice vector (content 1, nonzero)."""
    return vec_gcd(v) == 1


def primitive_vector(v: Sequence[Fraction]) -> IntVec:
    """Scale a nonzero rational vector to its primitive integer generator."""
    fracs = [Fraction(x) for x in v]
    if all(x == 0 for x in fracs):
        raise ValueError("zero vector has no primitive generator")
    denom = 1
    for x in fracs:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in fracs]
    g = vec_gcd(ints)
    return tuple(x // g for x in ints)


def identity_matrix(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    rows, inner, cols = len(a), len(b), len(b[0])
    assert all(len(r) == inner for r in a)
    return [
        [sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)]
        for i in range(rows)
    ]


def mat_vec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(row[j] * v[j] for j in range(len(v))) for row in a]


def det(a: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-free Gaussian elimination."""
    n = len(a)
    if n == 0:
        return Fraction(1)
    assert all(len(row) == n for row in a)
    m = [[Fraction(x) for x in row] for row in a]
    sign = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        for r in range(col + 1, n):
            factor = m[r][col] / m[col][col]
            for c in range(col, n):
                m[r][c] -= factor * m[col][c]
    result = Fraction(sign)
    for i in range(n):
        result *= m[i][i]
    return result


def rank(a: Sequence[Sequence]) -> int:
    """Exact rank over the rationals."""
    if not a:
        return 0
    m = [[Fraction(x) for x in row] for row in a]
    rows, cols = len(m), len(m[0])
    r = 0
    for col in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for i in range(rows):
            if i != r and m[i][col] != 0:
                factor = m[i][col] / m[r][col]
                for c in range(col, cols):
                    m[i][c] -= factor * m[r][c]
        r += 1
        if r == rows:
            break
    return r


def solve_rational(a: Sequence[Sequence], b: Sequence) -> Optional[list[Fraction]]:
    """One exact solution of A x = b over the rationals, or None.

    When the system is underdetermined an arbitrary solution is returned
    (free variables pinned to 0); callers needing the full solution set
    should pair this with :func:`kernel_basis`.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [[Fraction(x) for x in a[i]] + [Fraction(b[i])] for i in range(rows)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for col in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][col] != 0:
                factor = m[i][col]
                m[i] = [m[i][c] - factor * m[r][c] for c in range(cols + 1)]
        pivots.append((r, col))
        r += 1
    for i in range(r, rows):
        if m[i][cols] != 0:
            return None
    x = [Fraction(0)] * cols
    for row, col in pivots:
        x[col] = m[row][cols]
    return x


def kernel_basis(a: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of the rational kernel of A."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [[Fraction(x) for x in row] for row in a]
    pivots: list[tuple[int, int]] = []
    r = 0
    for col in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][col] != 0:
                factor = m[i][col]
                m[i] = [m[i][c] - factor * m[r][c] for c in range(cols)]
        pivots.append((r, col))
        r += 1
    pivot_cols = {col for _, col in pivots}
    basis = []
    for free in range(cols):
        if free in pivot_cols:
            continue
        v = [Fraction(0)] * cols
        v[free] = Fraction(1)
        for row, col in pivots:
            v[col] = -m[row][free]
        basis.append(v)
    return basis


def invert(a: Sequence[Sequence]) -> Matrix:
    """Exact inverse of a square rational matrix."""
    n = len(a)
    m = [[Fraction(x) for x in a[i]] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        m[col], m[pivot] = m[pivot], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [m[r][c] - factor * m[col][c] for c in range(2 * n)]
    return [row[n:] for row in m]


def hnf(a: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form H = U·A with U unimodular.

    H is in row-echelon staircase form: column pivots are positive,
    entries above a pivot are reduced into [0, pivot), rows below the
    staircase are zero.  Total — works for any rank and shape.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    h = [[int(x) for x in row] for row in a]
    u = identity_matrix(rows)

    def swap(i, j):
        h[i], h[j] = h[j], h[i]
        u[i], u[j] = u[j], u[i]

    def combine(i, j, q):
        # row_i -= q * row_j
        h[i] = [h[i][c] - q * h[j][c] for c in range(cols)]
        u[i] = [u[i][c] - q * u[j][c] for c in range(rows)]

    r = 0
    for col in range(cols):
        # gcd out the column below the staircase via Euclid on rows
        while True:
            nonzero = [i for i in range(r + 1, rows) if h[i][col] != 0]
            if not nonzero:
                break
            if h[r][col] == 0:
                swap(r, nonzero[0])
                continue
            i = min(nonzero, key=lambda k: abs(h[k][col]))
            if abs(h[i][col]) < abs(h[r][col]):
                swap(r, i)
                continue
            q = h[i][col] // h[r][col]
            combine(i, r, q)
        if h[r][col] == 0:
            continue
        if h[r][col] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = h[i][col] // h[r][col]
            if q != 0:
                combine(i, r, q)
        r += 1
        if r == rows:
            break
    return h, u


def hnf_pivots(h: Sequence[Sequence[int]]) -> list[tuple[int, int]]:
    """(row, col) positions of the staircase pivots of an HNF matrix."""
    pivots = []
    rows = len(h)
    cols = len(h[0]) if rows else 0
    r = 0
    for col in range(cols):
        if r < rows and h[r][col] != 0:
            pivots.append((r, col))
            r += 1
    return pivots


def is_unimodular(u: Sequence[Sequence[int]]) -> bool:
    return abs(det(u)) == 1


def is_lattice_basis(vectors: Sequence[Sequence[int]], r: int) -> bool:
    """True iff the vectors extend to (or form) a basis of Z^r.

    Square case: |det| = 1.  Rectangular case: all HNF pivots of the
    column matrix equal 1, i.e. every Smith invariant factor is 1.
    """
    if any(len(v) != r for v in vectors):
        raise ValueError("vector dimension does not match rank")
    k = len(vectors)
    if k > r:
        return False
    if k == 0:
        return True
    columns = [[int(vectors[j][i]) for j in range(k)] for i in range(r)]
    h, _ = hnf(columns)
    pivots = hnf_pivots(h)
    return len(pivots) == k and all(h[i][j] == 1 for i, j in pivots)


def solve_integer(a: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[IntVec]:
    """One integer solution of A x = b, or None if no integral solution.

    Reduces A by unimodular column operations (HNF of the transpose) and
    back-substitutes with divisibility checks.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    # column HNF: A·W has staircase columns, where W = U^T is unimodular
    at = [[int(a[i][j]) for i in range(rows)] for j in range(cols)]
    h_t, u = hnf(at)
    hc = [[h_t[j][i] for j in range(cols)] for i in range(rows)]  # = A·W
    y = [0] * cols
    residual = [int(x) for x in b]
    for j in range(cols):
        pivot_row = next((i for i in range(rows) if hc[i][j] != 0), None)
        if pivot_row is None:
            continue
        if residual[pivot_row] % hc[pivot_row][j] != 0:
            return None
        q = residual[pivot_row] // hc[pivot_row][j]
        y[j] = q
        for i in range(rows):
            residual[i] -= q * hc[i][j]
    if any(x != 0 for x in residual):
        return None
    # x = W y with W = U^T
    return tuple(sum(u[j][i] * y[j] for j in range(cols)) for i in range(cols))
