"""Cartan matrices, Euler forms, root counts, Dynkin types and Coxeter polynomials.

Conventions: ``C[i][j] = dim e_j A e_i`` (rows are source vertices), the
Euler form is ``<x, y> = x E y^T`` with ``E = C^{-T}``, its quadratic form is
``q(x) = <x, x>``, and the symmetrization is ``S = E + E^T`` (so ``q(x) =
x S x^T / 2``). The Coxeter matrix is ``Phi = -C^{-1} C^T``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator

from .algebra import Presentation
from .errors import PreconditionError
from .linalg import (
    charpoly,
    determinant,
    inverse,
    nullspace,
    primitive_integer_vector,
    symmetric_pivot_classification,
    matmul,
    transpose,
)
from .pathspace import PathAlgebra
from .quiver import Quiver, enumerate_chordless_cycles, is_acyclic, require_simple

ROOT_BOX = 6
MAX_COMPANION_ARROWS = 20


@dataclass(frozen=True)
class CartanMatrix:
    vertices: tuple[str, ...]
    rows: tuple[tuple[int, ...], ...]

    def as_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def cartan_matrix(A: Presentation, cutoff: int | None = None) -> CartanMatrix:
    alg = PathAlgebra(A, cutoff)
    verts = A.quiver.vertices
    return CartanMatrix(verts, tuple(tuple(alg.space(i, j).dim for j in verts) for i in verts))


@dataclass(frozen=True)
class SymmetricForm:
    """A symmetric rational matrix with its definiteness class and radical."""

    vertices: tuple[str, ...]
    matrix: tuple[tuple[Fraction, ...], ...]
    kind: str
    corank: int
    radical: tuple[tuple[int, ...], ...] = ()

    @property
    def positive_definite(self) -> bool:
        return self.kind == "positive-definite"

    @property
    def semidefinite_corank_one(self) -> bool:
        return self.kind == "positive-semidefinite" and self.corank == 1

    def restrict(self, keep) -> "SymmetricForm":
        idx = [self.vertices.index(v) for v in keep]
        return symmetric_form([[self.matrix[i][j] for j in idx] for i in idx], tuple(keep))

    def to_json(self) -> dict:
        return {
            "matrix": [[str(x) for x in row] for row in self.matrix],
            "definiteness": self.kind,
            "corank": self.corank,
            "radical": [list(v) for v in self.radical],
        }


def symmetric_form(rows, vertices=None) -> SymmetricForm:
    m = tuple(tuple(Fraction(x) for x in row) for row in rows)
    if any(m[i][j] != m[j][i] for i in range(len(m)) for j in range(len(m))):
        raise PreconditionError("matrix is not symmetric")
    vertices = tuple(vertices) if vertices is not None else tuple(str(i) for i in range(len(m)))
    kind, corank = symmetric_pivot_classification(m)
    radical = ()
    if kind == "positive-semidefinite":
        radical = tuple(tuple(primitive_integer_vector(v)) for v in nullspace(m, len(m)))
    return SymmetricForm(vertices, m, kind, corank, radical)


def euler_matrix(A: Presentation) -> list[list[Fraction]]:
    c = cartan_matrix(A).as_lists()
    try:
        return transpose(inverse(c))
    except ZeroDivisionError:
        raise PreconditionError("singular Cartan matrix: infinite global dimension suspected", witness=c) from None


def euler_symmetrized(A: Presentation) -> SymmetricForm:
    e = euler_matrix(A)
    n = len(e)
    return symmetric_form([[e[i][j] + e[j][i] for j in range(n)] for i in range(n)], A.quiver.vertices)


# -- roots -------------------------------------------------------------------


def _ldl(m) -> tuple[list[list[Fraction]], list[Fraction]]:
    """``m = L D L^T`` with ``L`` unit lower triangular; ``m`` positive definite."""
    n = len(m)
    L = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    D = [Fraction(0)] * n
    for j in range(n):
        D[j] = m[j][j] - sum(L[j][k] ** 2 * D[k] for k in range(j))
        for i in range(j + 1, n):
            L[i][j] = (m[i][j] - sum(L[i][k] * L[j][k] * D[k] for k in range(j))) / D[j]
    return L, D


def count_roots(f: SymmetricForm, box: int = ROOT_BOX) -> int:
    """Number of integer vectors with ``x S x^T = 2``, i.e. ``q(x) = 1``, with ``|x_i| <= box``.

    Coordinates are fixed from the last to the first; the ``L D L^T``
    decomposition bounds each coordinate given the later ones, so only
    vectors that can still reach ``q = 1`` are visited.
    """
    if not f.positive_definite:
        raise PreconditionError("root counting needs a positive definite form", witness=f.kind)
    if any(f.matrix[i][i] != 2 for i in range(len(f.matrix))):
        raise PreconditionError("not a unit form: q(e_i) must be 1 for every vertex")
    n = len(f.matrix)
    half = [[x / 2 for x in row] for row in f.matrix]
    L, D = _ldl(half)
    x = [0] * n
    count = 0

    def rec(i, budget):
        nonlocal count
        if i < 0:
            if budget == 0:
                count += 1
            return
        centre = -sum(L[j][i] * x[j] for j in range(i + 1, n))
        reach = math.sqrt(budget / D[i]) if budget > 0 else 0.0
        lo = max(-box, math.floor(centre - reach) - 1)
        hi = min(box, math.ceil(centre + reach) + 1)
        for v in range(lo, hi + 1):
            rest = budget - D[i] * (v - centre) ** 2
            if rest >= 0:
                x[i] = v
                rec(i - 1, rest)
        x[i] = 0

    rec(n - 1, Fraction(1))
    return count


# -- type identification -----------------------------------------------------


@dataclass(frozen=True)
class TypeLabel:
    family: str  # A, D, E, A~, D~, E~ or none
    rank: int = 0
    diagnostic: str = ""

    def __str__(self):
        return "none" if self.family == "none" else f"{self.family}{self.rank}"


NONE = "none"

_AFFINE_DELTAS = {
    ("E~", 6): sorted([1, 1, 1, 2, 2, 2, 3]),
    ("E~", 7): sorted([1, 1, 2, 2, 2, 3, 3, 4]),
    ("E~", 8): sorted([1, 2, 2, 3, 3, 4, 4, 5, 6]),
}


def dynkin_from_roots(n: int, roots: int) -> TypeLabel:
    if n >= 1 and roots == n * (n + 1):
        return TypeLabel("A", n)
    if n >= 4 and roots == 2 * n * (n - 1):
        return TypeLabel("D", n)
    if (n, roots) in ((6, 72), (7, 126), (8, 240)):
        return TypeLabel("E", n)
    return TypeLabel(NONE, 0, f"{roots} roots on {n} vertices match no connected Dynkin diagram")


def _expected_delta(family: str, rank: int) -> list[int] | None:
    if family == "A~":
        return [1] * (rank + 1)
    if family == "D~":
        return sorted([1, 1, 1, 1] + [2] * (rank - 3))
    return _AFFINE_DELTAS.get((family, rank))


def classify_form(f: SymmetricForm) -> TypeLabel:
    n = len(f.matrix)
    if f.positive_definite:
        return dynkin_from_roots(n, count_roots(f))
    if not f.semidefinite_corank_one:
        return TypeLabel(NONE, 0, f"{f.kind}, corank {f.corank}")
    delta = list(f.radical[0])
    if sum(delta) < 0:
        delta = [-d for d in delta]
    unit = [k for k, d in enumerate(delta) if abs(d) == 1]
    if not unit:
        return TypeLabel(NONE, 0, f"radical vector {delta} has no entry +-1")
    sub = f.restrict([w for k, w in enumerate(f.vertices) if k != unit[0]])
    base = classify_form(sub)
    if base.family not in ("A", "D", "E"):
        return TypeLabel(NONE, 0, f"deleting a vertex leaves type {base}")
    family = base.family + "~"
    # in a hereditary basis the radical is the affine null root; other bases need not show it
    if all(d > 0 for d in delta) and sorted(delta) != _expected_delta(family, base.rank):
        return TypeLabel(NONE, 0, f"radical vector {delta} does not fit {family}{base.rank}")
    return TypeLabel(family, base.rank)


def classify_type(A: Presentation) -> TypeLabel:
    if not is_acyclic(A.quiver):
        raise PreconditionError("type classification needs an acyclic quiver")
    return classify_form(euler_symmetrized(A))


# -- quasi-Cartan companions -------------------------------------------------


def _edges(q: Quiver) -> list[tuple[int, int, int]]:
    seen = {}
    for a in q.arrows:
        i, j = sorted((q.index(a.source), q.index(a.target)))
        seen[i, j] = seen.get((i, j), 0) + 1
    return [(i, j, m) for (i, j), m in sorted(seen.items())]


def _check_companion_input(q: Quiver):
    if len(q.arrows) > MAX_COMPANION_ARROWS:
        raise PreconditionError(f"more than {MAX_COMPANION_ARROWS} arrows")
    require_simple(q)


def _companion(n, edges, signs):
    m = [[Fraction(2 if i == j else 0) for j in range(n)] for i in range(n)]
    for (i, j, mult), s in zip(edges, signs):
        m[i][j] = m[j][i] = Fraction(s * mult)
    return m


def _cycle_edges(q: Quiver, edges) -> list[tuple[list[int], bool]]:
    """Edge indices of each chordless cycle, with its orientation."""
    where = {(i, j): k for k, (i, j, _) in enumerate(edges)}
    out = []
    for c in enumerate_chordless_cycles(q):
        idx = [q.index(v) for v in c.vertices]
        ks = [where[tuple(sorted((idx[t], idx[(t + 1) % len(idx)])))] for t in range(len(idx))]
        out.append((ks, c.oriented))
    return out


def _admissible(signs, cycles) -> bool:
    """Oriented chordless cycles carry an odd number of positive entries, the others an even number."""
    for ks, oriented in cycles:
        positive = sum(signs[k] > 0 for k in ks)
        if positive % 2 != int(oriented):
            return False
    return True


def quasi_cartan_companions(q: Quiver, admissible: bool = False) -> Iterator[SymmetricForm]:
    """Every sign choice for the off-diagonal entries, in lexicographic order of signs.

    With ``admissible`` only sign choices obeying the chordless-cycle parity
    rule are produced.
    """
    _check_companion_input(q)
    edges = _edges(q)
    n = len(q.vertices)
    cycles = _cycle_edges(q, edges) if admissible else []
    for signs in product((-1, 1), repeat=len(edges)):
        if admissible and not _admissible(signs, cycles):
            continue
        yield symmetric_form(_companion(n, edges, signs), q.vertices)


@dataclass(frozen=True)
class CompanionFlags:
    positive_definite: bool
    semidefinite_corank_one: bool
    admissible_positive_definite: bool
    admissible_semidefinite_corank_one: bool
    patterns_checked: int

    def to_json(self) -> dict:
        return {
            "positive_definite_exists": self.positive_definite,
            "semidefinite_corank_one_exists": self.semidefinite_corank_one,
            "admissible_positive_definite_exists": self.admissible_positive_definite,
            "admissible_semidefinite_corank_one_exists": self.admissible_semidefinite_corank_one,
            "patterns_checked": self.patterns_checked,
        }


def quasi_cartan_flags(q: Quiver) -> CompanionFlags:
    """Existence of positive definite / corank-one semidefinite companions, all and admissible.

    Flipping the sign of a vertex flips every entry in its row and column;
    this preserves definiteness and the parity of positive entries on every
    cycle, so edges of a spanning forest are fixed to -1. The remaining signs
    are assigned vertex by vertex, and a negative leading minor rules out
    every completion.
    """
    _check_companion_input(q)
    n = len(q.vertices)
    edges = _edges(q)
    cycles = _cycle_edges(q, edges)
    tree = set()
    reached = set()
    for root in range(n):
        if root in reached:
            continue
        reached.add(root)
        todo = [root]
        while todo:
            v = todo.pop(0)
            for k, (i, j, _) in enumerate(edges):
                if v in (i, j):
                    w = j if v == i else i
                    if w not in reached:
                        reached.add(w)
                        tree.add(k)
                        todo.append(w)
    free = [k for k in range(len(edges)) if k not in tree]
    by_vertex = {k: [e for e in free if edges[e][1] == k] for k in range(n)}

    found = {"pd": False, "psd1": False, "apd": False, "apsd1": False}
    checked = 0
    signs = {k: -1 for k in tree}

    def rec(k):
        nonlocal checked
        if all(found.values()):
            return
        if k == n:
            checked += 1
            vec = [signs[e] for e in range(len(edges))]
            kind, corank = symmetric_pivot_classification(_companion(n, edges, vec))
            pd = kind == "positive-definite"
            psd1 = kind == "positive-semidefinite" and corank == 1
            adm = _admissible(vec, cycles)
            found["pd"] |= pd
            found["psd1"] |= psd1
            found["apd"] |= pd and adm
            found["apsd1"] |= psd1 and adm
            return
        idx = [e for e, (i, j, _) in enumerate(edges) if j <= k]
        partial = [edges[e] for e in idx]
        for choice in product((-1, 1), repeat=len(by_vertex[k])):
            for e, s in zip(by_vertex[k], choice):
                signs[e] = s
            if determinant(_companion(k + 1, partial, [signs[e] for e in idx])) < 0:
                continue
            rec(k + 1)

    rec(0)
    return CompanionFlags(found["pd"], found["psd1"], found["apd"], found["apsd1"], checked)


# -- Coxeter polynomial ------------------------------------------------------


def coxeter_matrix(A: Presentation) -> list[list[Fraction]]:
    c = cartan_matrix(A).as_lists()
    try:
        cinv = inverse(c)
    except ZeroDivisionError:
        raise PreconditionError("singular Cartan matrix", witness=c) from None
    return [[-x for x in row] for row in matmul(cinv, transpose(c))]


def coxeter_polynomial(A: Presentation) -> list[int]:
    """Characteristic polynomial of ``-C^{-1} C^T``, integer coefficients, highest degree first."""
    coeffs = charpoly(coxeter_matrix(A))
    if any(c.denominator != 1 for c in coeffs):
        raise PreconditionError("Coxeter polynomial has non-integer coefficients", witness=[str(c) for c in coeffs])
    return [int(c) for c in coeffs]


def format_polynomial(coeffs: list[int], var: str = "t") -> str:
    deg = len(coeffs) - 1
    parts = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        d = deg - k
        mono = "" if d == 0 else (var if d == 1 else f"{var}^{d}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}{mono}")
        parts.append(("- " if c < 0 else "+ ") + body)
    if not parts:
        return "0"
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]
