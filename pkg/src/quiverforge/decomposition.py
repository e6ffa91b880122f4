"""Shortest antiparallel paths and the decomposition of a quiver around an arrow."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvariantError, PreconditionError
from .quiver import (
    Cycle,
    Quiver,
    connected_components,
    enumerate_chordless_cycles,
    full_subquiver,
    is_connected,
    require_cyclically_oriented,
    subquiver,
)


def _rotate_to_end(path: tuple, aid: str) -> tuple:
    k = path.index(aid)
    return path[k + 1:] + path[: k + 1]


def oriented_cycles_through(q: Quiver, aid: str, cycles: list[Cycle] | None = None) -> list[Cycle]:
    if cycles is None:
        cycles = enumerate_chordless_cycles(q)
    return [c for c in cycles if c.oriented and aid in c.arrows]


def antiparallel_shortest_paths(q: Quiver, eta: str) -> list[tuple]:
    """All paths ``delta`` such that ``eta`` followed by ``delta`` closes a chordless cycle.

    Paths run from the target of ``eta`` to its source and are sorted by their
    arrow-id sequence. Pairwise they meet only in their two endpoints; this
    is checked before returning.
    """
    q.arrow(eta)
    require_cyclically_oriented(q)
    deltas = sorted(_rotate_to_end(c.as_path(), eta)[:-1] for c in oriented_cycles_through(q, eta))
    inner = [set(q.path_vertices(d)[1:-1]) for d in deltas]
    for i in range(len(inner)):
        for j in range(i + 1, len(inner)):
            if inner[i] & inner[j]:
                raise InvariantError(f"paths antiparallel to {eta} share an interior vertex")
    return deltas


@dataclass(frozen=True)
class ArrowDecomposition:
    """The pieces of a connected cyclically oriented quiver around ``eta: y -> x``.

    ``components[i]`` is the connected component of ``Q - {x, y}`` meeting
    ``deltas[i]``; ``closures[i]`` is the full subquiver on that component
    plus ``x`` and ``y``, without ``eta``. ``closure_x``/``closure_y`` are the
    components of ``x`` and ``y`` in what remains after deleting every
    component and ``eta``; they may coincide.
    """

    eta: str
    x: str
    y: str
    deltas: tuple[tuple, ...]
    components: tuple[frozenset, ...]
    closures: tuple[Quiver, ...]
    closure_x: Quiver
    closure_y: Quiver

    @property
    def pieces(self) -> list[Quiver]:
        """Closures without repetition: ``x``-part, ``y``-part, then one per delta."""
        out = [self.closure_x]
        if set(self.closure_y.vertices) != set(self.closure_x.vertices):
            out.append(self.closure_y)
        return out + list(self.closures)


def decompose_at_arrow(q: Quiver, eta: str) -> ArrowDecomposition:
    if not is_connected(q):
        raise PreconditionError("decompose_at_arrow needs a connected quiver; split components first")
    deltas = antiparallel_shortest_paths(q, eta)
    if not deltas:
        raise PreconditionError(f"arrow {eta} lies on no oriented cycle", witness=eta)
    arrow = q.arrow(eta)
    x, y = arrow.target, arrow.source

    rest = full_subquiver(q, [v for v in q.vertices if v not in (x, y)])
    comp_of = {}
    for comp in connected_components(rest):
        for v in comp:
            comp_of[v] = frozenset(comp)
    components = tuple(comp_of[q.path_vertices(d)[1]] for d in deltas)
    if len(set(components)) != len(components):
        raise InvariantError(f"components around {eta} are not pairwise disjoint")

    closures = tuple(
        subquiver(
            q,
            list(comp) + [x, y],
            [a.id for a in q.arrows if a.id != eta and {a.source, a.target} <= comp | {x, y}],
        )
        for comp in components
    )

    removed = frozenset().union(*components)
    remainder = subquiver(
        q,
        [v for v in q.vertices if v not in removed],
        [a.id for a in q.arrows if a.id != eta and a.source not in removed and a.target not in removed],
    )
    blocks = {v: comp for comp in connected_components(remainder) for v in comp}
    closure_x = full_subquiver(remainder, blocks[x])
    closure_y = full_subquiver(remainder, blocks[y])

    dec = ArrowDecomposition(eta, x, y, tuple(deltas), components, closures, closure_x, closure_y)
    _check_containment(q, dec)
    return dec


def _check_containment(q: Quiver, dec: ArrowDecomposition) -> None:
    special = {frozenset(d) | {dec.eta} for d in dec.deltas}
    pieces = [set(p.vertices) for p in dec.pieces]
    for c in enumerate_chordless_cycles(q):
        if frozenset(c.arrows) in special:
            continue
        verts = set(c.vertices)
        if dec.eta in c.arrows or not any(verts <= p for p in pieces):
            raise InvariantError(f"chordless cycle {c.vertices} escapes the decomposition at {dec.eta}")
