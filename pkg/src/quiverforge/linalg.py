"""Small exact linear algebra over the rationals and the integers.

Matrices are lists of rows. Everything here is meant for desk-scale sizes
(a few dozen rows), so clarity wins over speed.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def to_fraction_matrix(rows) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(rows):
    return [list(col) for col in zip(*rows)] if rows else []


def matmul(a, b):
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def rref(rows) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = to_fraction_matrix(rows)
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        lead = m[r][c]
        m[r] = [x / lead for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{v : rows @ v = 0}``.

    Each basis vector has a 1 in one free column and 0 in the other free
    columns, so coordinates of a kernel element are read off at the free
    columns (see :func:`free_columns`).
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def free_columns(rows, ncols: int) -> list[int]:
    if not rows:
        return list(range(ncols))
    pivots = rref(rows)[1]
    return [c for c in range(ncols) if c not in pivots]


def determinant(rows) -> Fraction:
    m = to_fraction_matrix(rows)
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


def inverse(rows) -> list[list[Fraction]]:
    n = len(rows)
    aug = [list(row) + e for row, e in zip(to_fraction_matrix(rows), identity(n))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def leading_minors(rows) -> list[Fraction]:
    return [determinant([row[:k] for row in rows[:k]]) for k in range(1, len(rows) + 1)]


def charpoly(rows) -> list[Fraction]:
    """Coefficients of ``det(t I - A)``, highest degree first (Faddeev-LeVerrier)."""
    a = to_fraction_matrix(rows)
    n = len(a)
    coeffs = [Fraction(1)]
    m = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        am = matmul(a, m) if k > 1 else [[Fraction(0)] * n for _ in range(n)]
        m = [[am[i][j] + (coeffs[-1] if i == j else 0) for j in range(n)] for i in range(n)]
        am = matmul(a, m)
        c = -sum(am[i][i] for i in range(n)) / k
        coeffs.append(c)
    return coeffs


def primitive_integer_vector(v) -> list[int]:
    """Scale a rational vector to a primitive integer vector (first nonzero entry positive)."""
    v = [Fraction(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return ints
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x != 0)
    return [-x for x in ints] if lead < 0 else ints


def smith_invariants(rows) -> list[int]:
    """Nonzero diagonal entries ``d1 | d2 | ...`` of the Smith normal form of an integer matrix."""
    m = [[int(x) for x in row] for row in rows]
    if not m or not m[0]:
        return []
    nr, nc = len(m), len(m[0])
    diag = []
    t = 0
    while t < min(nr, nc):
        entries = [(abs(m[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if m[i][j] != 0]
        if not entries:
            break
        _, i, j = min(entries)
        m[t], m[i] = m[i], m[t]
        for row in m:
            row[t], row[j] = row[j], row[t]
        while True:
            p = m[t][t]
            dirty = False
            for i in range(t + 1, nr):
                q, r = divmod(m[i][t], p)
                if q:
                    m[i] = [x - q * y for x, y in zip(m[i], m[t])]
                if r:
                    dirty = True
            for j in range(t + 1, nc):
                q, r = divmod(m[t][j], p)
                if q:
                    for row in m:
                        row[j] -= q * row[t]
                if r:
                    dirty = True
            if not dirty:
                # pivot must also divide the remaining block
                bad = next(
                    ((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc) if m[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                m[t] = [x + y for x, y in zip(m[t], m[bad[0]])]
                continue
            # move the smallest nonzero entry of row/column t into the pivot
            cands = [(abs(m[i][t]), i, t) for i in range(t, nr) if m[i][t]]
            cands += [(abs(m[t][j]), t, j) for j in range(t, nc) if m[t][j]]
            _, i, j = min(cands)
            m[t], m[i] = m[i], m[t]
            for row in m:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(m[t][t]))
        t += 1
    return diag


def symmetric_pivot_classification(rows) -> tuple[str, int]:
    """Classify a symmetric rational matrix by exact symmetric elimination.

    Returns ``(kind, corank)`` with kind one of ``"positive-definite"``,
    ``"positive-semidefinite"``, ``"indefinite"``. A matrix is PSD iff a
    positive diagonal pivot leaves a PSD Schur complement; a zero diagonal
    entry in a PSD matrix forces its whole row to vanish.
    """
    m = to_fraction_matrix(rows)
    n = len(m)
    zero_dims = 0
    while m:
        if any(m[i][i] < 0 for i in range(len(m))):
            return "indefinite", n - rank(rows)
        k = next((i for i in range(len(m)) if m[i][i] > 0), None)
        if k is None:
            if any(x != 0 for row in m for x in row):
                return "indefinite", n - rank(rows)
            zero_dims += len(m)
            break
        p = m[k][k]
        rest = [i for i in range(len(m)) if i != k]
        m = [[m[i][j] - m[i][k] * m[k][j] / p for j in rest] for i in rest]
    if zero_dims == 0:
        return "positive-definite", 0
    return "positive-semidefinite", zero_dims
