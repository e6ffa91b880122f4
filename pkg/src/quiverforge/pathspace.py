"""Bases of ``e_j (kQ/I) e_i`` by truncated exact row reduction.

Paths ``i -> j`` up to a length cutoff ``N`` are reduced against the span of
all ``u * rho * v`` (terms longer than ``N`` dropped). This computes the
quotient ``kQ / (I + rad^(N+1))``; if a path of length ``N`` survives, the
algebra is reported as possibly infinite-dimensional.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Presentation, Relation
from .errors import InfiniteDimensionError

CUTOFF_ENV = "QUIVERFORGE_MAX_PATH_LEN"


def default_cutoff(p: Presentation) -> int:
    """``|Q0| * (1 + longest relation path)``, unless overridden by the environment."""
    override = os.environ.get(CUTOFF_ENV)
    if override:
        return int(override)
    longest = max((r.max_length for r in p.relations), default=0)
    return len(p.quiver.vertices) * (1 + longest)


def _key(path):
    return (len(path), path)


class Echelon:
    """Sparse echelon form over paths; each row's pivot is its largest path."""

    def __init__(self):
        self.rows: dict = {}

    def reduce(self, vec: dict) -> dict:
        vec = {p: c for p, c in vec.items() if c != 0}
        while True:
            hits = [p for p in vec if p in self.rows]
            if not hits:
                return vec
            p = max(hits, key=_key)
            c = vec[p]
            for path, v in self.rows[p].items():
                nv = vec.get(path, Fraction(0)) - c * v
                if nv:
                    vec[path] = nv
                else:
                    vec.pop(path, None)

    def add(self, vec: dict) -> bool:
        vec = self.reduce(vec)
        if not vec:
            return False
        pivot = max(vec, key=_key)
        lead = vec[pivot]
        row = {p: c / lead for p, c in vec.items()}
        # keep existing rows reduced with respect to the new pivot
        for other, orow in self.rows.items():
            c = orow.get(pivot)
            if c:
                for path, v in row.items():
                    nv = orow.get(path, Fraction(0)) - c * v
                    if nv:
                        orow[path] = nv
                    else:
                        orow.pop(path, None)
        self.rows[pivot] = row
        return True


@dataclass
class PathSpaceBasis:
    """Basis of the paths ``source -> target`` modulo the ideal.

    ``basis`` lists surviving paths (shortest first); :meth:`coordinates`
    expresses any linear combination of paths in that basis.
    """

    source: str
    target: str
    basis: tuple
    cutoff: int
    _echelon: Echelon = field(repr=False, default_factory=Echelon)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates(self, vec: dict) -> tuple[Fraction, ...]:
        vec = {p: Fraction(c) for p, c in vec.items() if len(p) <= self.cutoff}
        rest = self._echelon.reduce(vec)
        index = {p: n for n, p in enumerate(self.basis)}
        out = [Fraction(0)] * len(self.basis)
        for p, c in rest.items():
            out[index[p]] = c
        return tuple(out)

    def is_zero(self, vec: dict) -> bool:
        return not any(self.coordinates(vec))


class PathAlgebra:
    """Shared path enumeration and generator spans for one presentation."""

    def __init__(self, p: Presentation, cutoff: int | None = None):
        self.presentation = p
        self.quiver = p.quiver
        self.cutoff = default_cutoff(p) if cutoff is None else cutoff
        self._paths: dict = {}
        self._endpoints = [p.endpoints(r) for r in p.relations]
        self._spaces: dict = {}

    def paths(self, x, y, max_length: int | None = None) -> list:
        n = self.cutoff if max_length is None else max_length
        key = (x, y, n)
        if key not in self._paths:
            self._paths[key] = self.quiver.paths_between(x, y, n)
        return self._paths[key]

    def ideal_elements(self, i, j, relations=None, skip_bare: bool = False):
        """Yield ``u * rho * v`` truncated at the cutoff, as ``{path: coeff}``.

        With ``skip_bare`` the products with both ``u`` and ``v`` trivial are
        omitted, which spans ``rad*I + I*rad`` instead of ``I``.
        """
        N = self.cutoff
        rels = self.presentation.relations if relations is None else relations
        for rel in rels:
            s, e = self.presentation.endpoints(rel)
            lo = rel.min_length
            for u in self.paths(i, s, N - lo):
                for v in self.paths(e, j, N - lo - len(u)):
                    if skip_bare and not u and not v:
                        continue
                    elem = {u + w + v: c for c, w in rel.terms if len(u) + len(w) + len(v) <= N}
                    if elem:
                        yield elem

    def _raw_space(self, i, j) -> PathSpaceBasis:
        ech = Echelon()
        for elem in self.ideal_elements(i, j):
            ech.add(elem)
        basis = tuple(p for p in self.paths(i, j) if p not in ech.rows)
        return PathSpaceBasis(i, j, basis, self.cutoff, ech)

    def space(self, i, j) -> PathSpaceBasis:
        """Basis of the paths ``i -> j`` modulo the ideal.

        All spaces out of ``i`` are computed together: a surviving path at the
        cutoff length to any target means the truncation is not faithful.
        """
        if (i, j) in self._spaces:
            return self._spaces[i, j]
        row = {w: self._raw_space(i, w) for w in self.quiver.vertices}
        for w, sp in row.items():
            if any(len(p) >= self.cutoff for p in sp.basis):
                raise InfiniteDimensionError(
                    f"paths {i} -> {w} survive at length cutoff {self.cutoff}: possibly infinite-dimensional",
                    witness={"source": i, "target": w, "cutoff": self.cutoff},
                )
        for w, sp in row.items():
            self._spaces[i, w] = sp
        return self._spaces[i, j]

    def total_dimension(self) -> int:
        return sum(self.space(i, j).dim for i in self.quiver.vertices for j in self.quiver.vertices)

    def is_minimal(self, rel: Relation) -> bool:
        """False if ``rel`` lies in ``rad*I + I*rad`` (computed at the cutoff)."""
        s, e = self.presentation.endpoints(rel)
        ech = Echelon()
        for elem in self.ideal_elements(s, e, skip_bare=True):
            ech.add(elem)
        return bool(ech.reduce(rel.as_dict()))


def path_space(p: Presentation, i, j, cutoff: int | None = None) -> PathSpaceBasis:
    return PathAlgebra(p, cutoff).space(i, j)


def non_minimal_relations(p: Presentation, cutoff: int | None = None) -> list[int]:
    alg = PathAlgebra(p, cutoff)
    return [n for n, rel in enumerate(p.relations) if not alg.is_minimal(rel)]
