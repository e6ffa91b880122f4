"""Finite-dimensional representations of a bound quiver and minimal projective resolutions.

A representation assigns a dimension to each vertex and, to each arrow
``a: u -> w``, a matrix of shape ``dim(w) x dim(u)`` acting on column
vectors. The indecomposable projective ``P_v`` has the paths ``v -> w``
modulo the ideal at vertex ``w``; arrows act by appending.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import free_columns, nullspace, rank, transpose
from .pathspace import PathAlgebra


@dataclass(frozen=True)
class Representation:
    dims: dict
    maps: dict  # arrow id -> list of rows

    @property
    def dimension(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.dimension == 0


def _zeros(r, c):
    return [[Fraction(0)] * c for _ in range(r)]


def projective(alg: PathAlgebra, v) -> Representation:
    q = alg.quiver
    spaces = {w: alg.space(v, w) for w in q.vertices}
    maps = {}
    for a in q.arrows:
        src, dst = spaces[a.source], spaces[a.target]
        mat = _zeros(dst.dim, src.dim)
        for col, path in enumerate(src.basis):
            coords = dst.coordinates({path + (a.id,): 1})
            for row, c in enumerate(coords):
                mat[row][col] = c
        maps[a.id] = mat
    return Representation({w: spaces[w].dim for w in q.vertices}, maps)


def act(m: Representation, path, vec) -> list:
    """Image of ``vec`` under the arrows of ``path``, applied source first."""
    for aid in path:
        vec = [sum((x * y for x, y in zip(row, vec)), Fraction(0)) for row in m.maps[aid]]
    return vec


def simple(alg: PathAlgebra, v) -> Representation:
    q = alg.quiver
    dims = {w: int(w == v) for w in q.vertices}
    return Representation(dims, {a.id: _zeros(dims[a.target], dims[a.source]) for a in q.arrows})


class Resolver:
    """Computes syzygies over one bound quiver, caching the projectives."""

    def __init__(self, alg: PathAlgebra):
        self.alg = alg
        self.quiver = alg.quiver
        self._proj: dict = {}

    def proj(self, v) -> Representation:
        if v not in self._proj:
            self._proj[v] = projective(self.alg, v)
        return self._proj[v]

    def top_generators(self, m: Representation) -> list:
        """``(vertex, vector)`` pairs whose classes form a basis of ``m / rad m``."""
        gens = []
        for v in self.quiver.vertices:
            d = m.dims[v]
            if not d:
                continue
            image_cols = []
            for a in self.quiver.in_arrows(v):
                image_cols += transpose(m.maps[a.id])
            span = [list(c) for c in image_cols]
            r = rank(span) if span else 0
            for k in range(d):
                e = [Fraction(int(i == k)) for i in range(d)]
                if rank(span + [e]) > r:
                    span.append(e)
                    r += 1
                    gens.append((v, e))
        return gens

    def syzygy(self, m: Representation) -> tuple[Representation, list]:
        """Kernel of the projective cover of ``m`` and the cover's summands."""
        gens = self.top_generators(m)
        q = self.quiver
        blocks = [(v, self.proj(v), vec) for v, vec in gens]
        kernel_basis = {}
        dims = {}
        for w in q.vertices:
            cols = []
            for v, pv, vec in blocks:
                for path in self.alg.space(v, w).basis:
                    cols.append(act(m, path, vec))
            ncols = len(cols)
            phi = transpose(cols) if cols and m.dims[w] else []
            if ncols and m.dims[w]:
                ker = nullspace(phi, ncols)
                free = free_columns(phi, ncols)
            else:
                ker = [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
                free = list(range(ncols))
            kernel_basis[w] = (ker, free)
            dims[w] = len(ker)

        maps = {}
        for a in q.arrows:
            ker_s, _ = kernel_basis[a.source]
            _, free_t = kernel_basis[a.target]
            big = self._cover_map(blocks, a)
            mat = _zeros(dims[a.target], dims[a.source])
            for col, kv in enumerate(ker_s):
                image = [sum((x * y for x, y in zip(row, kv)), Fraction(0)) for row in big] if big else []
                for row, f in enumerate(free_t):
                    mat[row][col] = image[f]
            maps[a.id] = mat
        return Representation(dims, maps), [v for v, _, _ in blocks]

    def _cover_map(self, blocks, a):
        """Block-diagonal action of arrow ``a`` on the direct sum of projectives."""
        rows_total = sum(p.dims[a.target] for _, p, _ in blocks)
        cols_total = sum(p.dims[a.source] for _, p, _ in blocks)
        big = _zeros(rows_total, cols_total)
        r0 = c0 = 0
        for _, p, _ in blocks:
            block = p.maps[a.id]
            for i, row in enumerate(block):
                for j, x in enumerate(row):
                    big[r0 + i][c0 + j] = x
            r0 += p.dims[a.target]
            c0 += p.dims[a.source]
        return big


def projective_dimension(alg: PathAlgebra, v, max_steps: int = 4) -> int | None:
    """Projective dimension of the simple at ``v``; ``None`` if undetermined within ``max_steps`` syzygies."""
    res = Resolver(alg)
    m = simple(alg, v)
    for step in range(1, max_steps + 1):
        m, _ = res.syzygy(m)
        if m.is_zero():
            return step - 1
    return None


def global_dimension(alg: PathAlgebra, max_steps: int = 4) -> int | None:
    dims = [projective_dimension(alg, v, max_steps) for v in alg.quiver.vertices]
    if any(d is None for d in dims):
        return None
    return max(dims, default=0)


def satisfies_relations(m: Representation, p) -> bool:
    """Whether every relation of ``p`` acts as zero on ``m``."""
    for rel in p.relations:
        s, _ = p.endpoints(rel)
        for k in range(m.dims[s]):
            e = [Fraction(int(i == k)) for i in range(m.dims[s])]
            total = None
            for c, path in rel.terms:
                img = [c * x for x in act(m, path, e)]
                total = img if total is None else [x + y for x, y in zip(total, img)]
            if any(total):
                return False
    return True
