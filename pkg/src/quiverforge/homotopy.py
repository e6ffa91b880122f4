"""Homotopy of parallel paths and the first homology of a bound quiver."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Presentation
from .errors import PreconditionError
from .linalg import smith_invariants
from .pathspace import default_cutoff
from .quiver import is_acyclic, is_connected


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _length_bound(p: Presentation, L: int | None) -> int:
    if L is not None:
        return L
    if is_acyclic(p.quiver):
        return max(len(p.quiver.vertices) - 1, 0)
    return default_cutoff(p)


def homotopy_classes(p: Presentation, x, y, L: int | None = None) -> list[list[tuple]]:
    """Partition the paths ``x -> y`` of length <= ``L`` into homotopy classes.

    Two paths are merged when one arises from the other by swapping terms of
    a relation inside a common context ``u * w_i * v``; only moves between
    paths within the bound are used. Classes are sorted by their first path.
    """
    q = p.quiver
    L = _length_bound(p, L)
    paths = q.paths_between(x, y, L)
    uf = _UnionFind(paths)
    members = set(paths)
    for rel in p.relations:
        if len(rel.terms) < 2:
            continue
        s, e = p.endpoints(rel)
        first = rel.paths[0]
        for u in q.paths_between(x, s, L):
            for v in q.paths_between(e, y, L - len(u)):
                base = u + first + v
                for w in rel.paths[1:]:
                    other = u + w + v
                    if base in members and other in members:
                        uf.union(base, other)
    classes: dict = {}
    for path in paths:
        classes.setdefault(uf.find(path), []).append(path)
    return sorted(classes.values(), key=lambda c: (len(c[0]), c[0]))


@dataclass(frozen=True)
class AbelianGroup:
    """``Z^free_rank`` plus cyclic factors ``Z/t`` for each entry of ``torsion``."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        parts = [f"Z/{t}" for t in self.torsion] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"


def first_homology(p: Presentation, L: int | None = None) -> AbelianGroup:
    """Abelianised fundamental group of the bound quiver.

    Arrows outside a spanning tree give coordinates on the cycle lattice;
    every pair of homotopic parallel paths contributes the difference of its
    arrow-count vectors as a relation.
    """
    q = p.quiver
    if not is_connected(q):
        raise PreconditionError("first_homology needs a connected quiver")
    if not q.vertices:
        return AbelianGroup(0)

    tree = set()
    reached = {q.vertices[0]}
    todo = [q.vertices[0]]
    while todo:
        v = todo.pop()
        for a in q.out_arrows(v) + q.in_arrows(v):
            w = a.target if a.source == v else a.source
            if w not in reached:
                reached.add(w)
                tree.add(a.id)
                todo.append(w)
    gens = [aid for aid in q.arrow_ids if aid not in tree]
    col = {aid: n for n, aid in enumerate(gens)}

    def vector(path):
        vec = [0] * len(gens)
        for aid in path:
            if aid in col:
                vec[col[aid]] += 1
        return vec

    rows = []
    for x in q.vertices:
        for y in q.vertices:
            for cls in homotopy_classes(p, x, y, L):
                base = vector(cls[0])
                for other in cls[1:]:
                    row = [a - b for a, b in zip(vector(other), base)]
                    if any(row):
                        rows.append(row)
    if not gens:
        return AbelianGroup(0)
    diag = smith_invariants(rows) if rows else []
    torsion = tuple(d for d in diag if d > 1)
    return AbelianGroup(len(gens) - len(diag), torsion)
