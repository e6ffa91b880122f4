"""Finite quivers: representation, validation, cycle analysis and surgery.

Paths are stored as tuples of arrow ids in traversal order, source first.
The right-to-left composition used in much of the literature (``ba`` means
"first ``a``, then ``b``") corresponds to the reversed tuple.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from graphlib import CycleError, TopologicalSorter
from typing import Iterable, Iterator, Sequence

from .errors import MalformedInputError, PreconditionError

Path = tuple  # tuple[str, ...] of arrow ids


@dataclass(frozen=True)
class Arrow:
    id: str
    source: str
    target: str


def _as_id(value, what):
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise MalformedInputError(f"{what} must be a string, got {value!r}")
    value = str(value)
    if not value:
        raise MalformedInputError(f"{what} must be nonempty")
    return value


class Quiver:
    """An immutable finite quiver with ordered vertices and named arrows.

    Vertex and arrow order is the insertion order; every derived listing
    (neighbours, cycles, cuts) follows it, which keeps outputs
    deterministic.
    """

    __slots__ = ("_vertices", "_arrows", "_vindex", "_by_id", "_out", "_in")

    def __init__(self, vertices: Iterable, arrows: Iterable = ()):
        verts = tuple(_as_id(v, "vertex id") for v in vertices)
        if len(set(verts)) != len(verts):
            dup = next(v for v in verts if verts.count(v) > 1)
            raise MalformedInputError(f"duplicate vertex {dup!r}")
        vindex = {v: i for i, v in enumerate(verts)}

        arrs = []
        for a in arrows:
            if not isinstance(a, Arrow):
                try:
                    aid, s, t = a
                except (TypeError, ValueError):
                    raise MalformedInputError(f"cannot read arrow {a!r}") from None
                a = Arrow(_as_id(aid, "arrow id"), _as_id(s, "arrow source"), _as_id(t, "arrow target"))
            for end in (a.source, a.target):
                if end not in vindex:
                    raise MalformedInputError(f"arrow {a.id!r} uses undeclared vertex {end!r}")
            arrs.append(a)
        by_id = {}
        for a in arrs:
            if a.id in by_id:
                raise MalformedInputError(f"duplicate arrow id {a.id!r}")
            by_id[a.id] = a

        out = {v: [] for v in verts}
        inc = {v: [] for v in verts}
        for a in arrs:
            out[a.source].append(a)
            inc[a.target].append(a)

        object.__setattr__(self, "_vertices", verts)
        object.__setattr__(self, "_arrows", tuple(arrs))
        object.__setattr__(self, "_vindex", vindex)
        object.__setattr__(self, "_by_id", by_id)
        object.__setattr__(self, "_out", {v: tuple(x) for v, x in out.items()})
        object.__setattr__(self, "_in", {v: tuple(x) for v, x in inc.items()})

    def __setattr__(self, name, value):
        raise AttributeError("Quiver is immutable")

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        return self._arrows

    @property
    def arrow_ids(self) -> tuple[str, ...]:
        return tuple(a.id for a in self._arrows)

    def __eq__(self, other):
        if not isinstance(other, Quiver):
            return NotImplemented
        return self._vertices == other._vertices and self._arrows == other._arrows

    def __hash__(self):
        return hash((self._vertices, self._arrows))

    def __repr__(self):
        arrows = ", ".join(f"{a.id}:{a.source}->{a.target}" for a in self._arrows)
        return f"Quiver(vertices={list(self._vertices)}, arrows=[{arrows}])"

    def has_vertex(self, v) -> bool:
        return v in self._vindex

    def has_arrow(self, aid) -> bool:
        return aid in self._by_id

    def index(self, v) -> int:
        try:
            return self._vindex[v]
        except KeyError:
            raise PreconditionError(f"unknown vertex {v!r}", witness=v) from None

    def arrow(self, aid) -> Arrow:
        try:
            return self._by_id[aid]
        except KeyError:
            raise PreconditionError(f"unknown arrow {aid!r}", witness=aid) from None

    def arrow_index(self, aid) -> int:
        return self._arrows.index(self.arrow(aid))

    def out_arrows(self, v) -> tuple[Arrow, ...]:
        self.index(v)
        return self._out[v]

    def in_arrows(self, v) -> tuple[Arrow, ...]:
        self.index(v)
        return self._in[v]

    def arrows_between(self, u, v) -> tuple[Arrow, ...]:
        """Arrows ``u -> v`` in insertion order."""
        return tuple(a for a in self.out_arrows(u) if a.target == v)

    def multiplicity(self, u, v) -> int:
        return len(self.arrows_between(u, v))

    def neighbours(self, v) -> list[str]:
        """Vertices joined to ``v`` by an arrow in either direction, in vertex order."""
        near = {a.target for a in self.out_arrows(v)} | {a.source for a in self.in_arrows(v)}
        near.discard(v)
        return sorted(near, key=self._vindex.__getitem__)

    # -- paths ------------------------------------------------------------

    def path_vertices(self, path: Sequence[str], start=None) -> list[str]:
        """Vertex sequence of ``path``; raises if arrows are not composable."""
        if not path:
            if start is None:
                raise PreconditionError("the trivial path needs an explicit start vertex")
            self.index(start)
            return [start]
        first = self.arrow(path[0])
        if start is not None and first.source != start:
            raise PreconditionError(f"path does not start at {start!r}", witness=list(path))
        verts = [first.source, first.target]
        for aid in path[1:]:
            a = self.arrow(aid)
            if a.source != verts[-1]:
                raise PreconditionError(f"arrows {list(path)} are not composable", witness=list(path))
            verts.append(a.target)
        return verts

    def path_source(self, path) -> str:
        return self.arrow(path[0]).source

    def path_target(self, path) -> str:
        return self.arrow(path[-1]).target

    def is_path(self, path) -> bool:
        try:
            self.path_vertices(path)
        except PreconditionError:
            return False
        return bool(path)

    def reachable_from(self, v) -> set[str]:
        """Vertices reachable from ``v`` by a path of length >= 0."""
        seen = {v}
        todo = [v]
        while todo:
            u = todo.pop()
            for a in self.out_arrows(u):
                if a.target not in seen:
                    seen.add(a.target)
                    todo.append(a.target)
        return seen

    def paths_between(self, x, y, max_length: int) -> list[Path]:
        """All paths ``x -> y`` of length at most ``max_length`` (trivial path included when x == y).

        Sorted by length, then lexicographically by arrow ids.
        """
        self.index(x)
        self.index(y)
        # distance-to-y bound prunes branches that cannot arrive in time
        dist = {y: 0}
        frontier = deque([y])
        while frontier:
            u = frontier.popleft()
            for a in self.in_arrows(u):
                if a.source not in dist:
                    dist[a.source] = dist[u] + 1
                    frontier.append(a.source)
        found = []

        def walk(v, prefix):
            if v == y:
                found.append(tuple(prefix))
            if len(prefix) == max_length:
                return
            for a in self._out[v]:
                d = dist.get(a.target)
                if d is not None and len(prefix) + 1 + d <= max_length:
                    prefix.append(a.id)
                    walk(a.target, prefix)
                    prefix.pop()

        if x in dist and dist[x] <= max_length:
            walk(x, [])
        found.sort(key=lambda p: (len(p), p))
        return found


@dataclass(frozen=True)
class Walk:
    """A walk: a start vertex and steps ``(arrow id, +1 | -1)``.

    A ``+1`` step traverses the arrow along its orientation, ``-1`` against it.
    """

    start: str
    steps: tuple[tuple[str, int], ...]

    def vertices(self, q: Quiver) -> list[str]:
        verts = [self.start]
        for aid, sign in self.steps:
            a = q.arrow(aid)
            entering, leaving = (a.source, a.target) if sign == 1 else (a.target, a.source)
            if entering != verts[-1]:
                raise PreconditionError(f"step {aid!r} is not incident to {verts[-1]!r}")
            verts.append(leaving)
        return verts

    @property
    def is_path(self) -> bool:
        return all(sign == 1 for _, sign in self.steps)


@dataclass(frozen=True)
class Cycle:
    """A non-intersecting cycle in canonical form.

    ``vertices[i]`` and ``vertices[i+1]`` (cyclically) are joined by
    ``arrows[i]``; ``signs[i]`` is +1 when that arrow points forward along
    the listing. The listing starts at the smallest vertex (in quiver order)
    and goes towards the smaller of its two cycle neighbours.
    """

    vertices: tuple[str, ...]
    arrows: tuple[str, ...]
    signs: tuple[int, ...]
    chordless: bool = True

    @property
    def oriented(self) -> bool:
        return len(set(self.signs)) == 1

    def __len__(self):
        return len(self.arrows)

    def as_walk(self) -> Walk:
        return Walk(self.vertices[0], tuple(zip(self.arrows, self.signs)))

    def as_path(self) -> Path:
        """Arrow ids in traversal order, starting right after the smallest vertex."""
        if not self.oriented:
            raise PreconditionError("cycle is not oriented", witness=list(self.vertices))
        if self.signs[0] == 1:
            return self.arrows
        return tuple(reversed(self.arrows))

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": list(self.arrows),
            "signs": list(self.signs),
            "oriented": self.oriented,
        }


# -- validation -------------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    loops: tuple[str, ...] = ()
    two_cycles: tuple[tuple[str, str], ...] = ()
    multiple_arrows: tuple[tuple[str, str, int], ...] = ()

    @property
    def ok(self) -> bool:
        """No loops and no 2-cycles. Multiple arrows are only flagged."""
        return not self.loops and not self.two_cycles

    @property
    def simple(self) -> bool:
        return self.ok and not self.multiple_arrows

    @property
    def violations(self) -> list[str]:
        return [f"loop {aid}" for aid in self.loops] + [f"2-cycle {{{u},{v}}}" for u, v in self.two_cycles]

    @property
    def flags(self) -> list[str]:
        return [f"multiple arrow {u}→{v}" for u, v, _ in self.multiple_arrows]

    def to_json(self) -> dict:
        return {"ok": self.ok, "violations": self.violations, "flags": self.flags}


def validate_cluster_quiver(q: Quiver) -> ValidationReport:
    loops = tuple(a.id for a in q.arrows if a.source == a.target)
    pairs = list(dict.fromkeys((a.source, a.target) for a in q.arrows if a.source != a.target))
    multiple = tuple((u, v, q.multiplicity(u, v)) for u, v in pairs if q.multiplicity(u, v) > 1)
    two_cycles = {
        (u, v) if q.index(u) < q.index(v) else (v, u) for u, v in pairs if q.multiplicity(v, u)
    }
    two_cycles = sorted(two_cycles, key=lambda p: (q.index(p[0]), q.index(p[1])))
    return ValidationReport(loops, tuple(two_cycles), tuple(multiple))


def require_simple(q: Quiver) -> None:
    """Reject loops, 2-cycles and multiple arrows, with a witness."""
    report = validate_cluster_quiver(q)
    if report.loops:
        raise PreconditionError("quiver has a loop", witness={"loop": report.loops[0]})
    if report.two_cycles:
        raise PreconditionError("quiver has a 2-cycle", witness={"2-cycle": list(report.two_cycles[0])})
    if report.multiple_arrows:
        u, v, _ = report.multiple_arrows[0]
        raise PreconditionError("quiver has multiple arrows", witness={"multiple arrow": [u, v]})


# -- chordless cycles -------------------------------------------------------


def _edge_arrow(q: Quiver, u, v) -> Arrow:
    (a,) = q.arrows_between(u, v) or q.arrows_between(v, u)
    return a


def _make_cycle(q: Quiver, verts: Sequence[str]) -> Cycle:
    arrows, signs = [], []
    for i, u in enumerate(verts):
        v = verts[(i + 1) % len(verts)]
        a = _edge_arrow(q, u, v)
        arrows.append(a.id)
        signs.append(1 if a.source == u else -1)
    return Cycle(tuple(verts), tuple(arrows), tuple(signs))


def enumerate_chordless_cycles(q: Quiver) -> list[Cycle]:
    """All chordless cycles of the underlying graph, each once, in canonical form.

    Simple paths are grown from an anchor vertex through larger vertices only,
    and a candidate extension is dropped as soon as it would create a chord.
    """
    require_simple(q)
    idx = q.index
    adj = {v: set(q.neighbours(v)) for v in q.vertices}
    cycles = []

    def grow(path):
        anchor, last = path[0], path[-1]
        for w in q.neighbours(last):
            if idx(w) <= idx(anchor) or w in path:
                continue
            if any(w in adj[p] for p in path[1:-1]):
                continue
            if len(path) >= 2 and anchor in adj[w]:
                if idx(path[1]) < idx(w):
                    cycles.append(_make_cycle(q, path + [w]))
                continue
            grow(path + [w])

    for v in q.vertices:
        grow([v])
    return cycles


def is_cyclically_oriented(q: Quiver) -> tuple[bool, Cycle | None]:
    """Whether every chordless cycle is oriented; otherwise a non-oriented witness."""
    for c in enumerate_chordless_cycles(q):
        if not c.oriented:
            return False, c
    return True, None


def require_cyclically_oriented(q: Quiver) -> None:
    ok, witness = is_cyclically_oriented(q)
    if not ok:
        raise PreconditionError("quiver is not cyclically oriented", witness=witness.to_json())


# -- surgery ----------------------------------------------------------------


def _check_vertices(q: Quiver, vertices) -> set:
    vs = set(vertices)
    for v in vs:
        q.index(v)
    return vs


def full_subquiver(q: Quiver, vertices: Iterable) -> Quiver:
    keep = _check_vertices(q, vertices)
    return Quiver(
        [v for v in q.vertices if v in keep],
        [a for a in q.arrows if a.source in keep and a.target in keep],
    )


def delete_arrows(q: Quiver, arrow_ids: Iterable) -> Quiver:
    drop = set(arrow_ids)
    for aid in drop:
        q.arrow(aid)
    return Quiver(q.vertices, [a for a in q.arrows if a.id not in drop])


def kill_vertices(q: Quiver, vertices: Iterable) -> Quiver:
    """Remove the given vertices together with every incident arrow."""
    drop = _check_vertices(q, vertices)
    return full_subquiver(q, [v for v in q.vertices if v not in drop])


def subquiver(q: Quiver, vertices: Iterable, arrow_ids: Iterable) -> Quiver:
    keep = _check_vertices(q, vertices)
    ids = set(arrow_ids)
    return Quiver([v for v in q.vertices if v in keep], [a for a in q.arrows if a.id in ids])


def is_convex(q: Quiver, vertices: Iterable) -> bool:
    """Every vertex on a path between two vertices of the set lies in the set."""
    inside = _check_vertices(q, vertices)
    below = set()
    for v in inside:
        below |= q.reachable_from(v)
    reverse = Quiver(q.vertices, [(a.id, a.target, a.source) for a in q.arrows])
    above = set()
    for v in inside:
        above |= reverse.reachable_from(v)
    return (below & above) <= inside


def connected_components(q: Quiver) -> list[tuple[str, ...]]:
    """Vertex sets of the connected components, each in quiver order."""
    seen = set()
    comps = []
    for v in q.vertices:
        if v in seen:
            continue
        comp = {v}
        todo = [v]
        while todo:
            u = todo.pop()
            for w in q.neighbours(u):
                if w not in comp:
                    comp.add(w)
                    todo.append(w)
        seen |= comp
        comps.append(tuple(x for x in q.vertices if x in comp))
    return comps


def is_connected(q: Quiver) -> bool:
    return len(connected_components(q)) <= 1


def is_acyclic(q: Quiver) -> bool:
    """True iff ``q`` has no oriented cycle (loops included)."""
    if any(a.source == a.target for a in q.arrows):
        return False
    sorter = TopologicalSorter({v: [a.source for a in q.in_arrows(v)] for v in q.vertices})
    try:
        tuple(sorter.static_order())
    except CycleError:
        return False
    return True


def has_bypass(q: Quiver) -> tuple[bool, tuple[str, Path] | None]:
    """Whether some arrow is parallel to a path of length >= 2.

    The witness is ``(arrow id, path)`` with a shortest such path.
    """
    for a in q.arrows:
        path = _long_path(q, a.source, a.target)
        if path is not None:
            return True, (a.id, path)
    return False, None


def _long_path(q: Quiver, x, y) -> Path | None:
    # BFS over (vertex, min(length, 2)) finds a shortest path of length >= 2
    start = (x, 0)
    parent = {start: None}
    frontier = deque([start])
    while frontier:
        state = frontier.popleft()
        v, k = state
        for a in q.out_arrows(v):
            nxt = (a.target, min(k + 1, 2))
            if nxt in parent:
                continue
            parent[nxt] = (state, a.id)
            if nxt == (y, 2):
                path = []
                cur = nxt
                while parent[cur] is not None:
                    cur, aid = parent[cur]
                    path.append(aid)
                return tuple(reversed(path))
            frontier.append(nxt)
    return None


# -- generators -------------------------------------------------------------


def make_cycle(n: int) -> Quiver:
    """The oriented cycle ``1 -> 2 -> ... -> n -> 1`` with arrows ``a1..an``."""
    if n < 3:
        raise PreconditionError(f"make_cycle needs n >= 3, got {n}")
    verts = [str(i) for i in range(1, n + 1)]
    return Quiver(verts, [(f"a{i}", verts[i - 1], verts[i % n]) for i in range(1, n + 1)])


def make_G(m: int, n: int) -> Quiver:
    """One arrow ``eta: y -> x`` and two arms ``x -> ... -> y`` of lengths m and n.

    Arm arrows are ``alpha1..alpham`` and ``beta1..betan``; interior vertices
    ``a1..a(m-1)`` and ``b1..b(n-1)``.
    """
    if m < 2 or n < 2:
        raise PreconditionError(f"make_G needs m, n >= 2 (got {m}, {n}); shorter arms create a 2-cycle")
    a_int = [f"a{i}" for i in range(1, m)]
    b_int = [f"b{i}" for i in range(1, n)]
    arrows = [("eta", "y", "x")]
    for name, inner, length in (("alpha", a_int, m), ("beta", b_int, n)):
        stops = ["x", *inner, "y"]
        arrows += [(f"{name}{i}", stops[i - 1], stops[i]) for i in range(1, length + 1)]
    return Quiver(["x", *a_int, *b_int, "y"], arrows)


# -- isomorphism ------------------------------------------------------------

MAX_ISO_VERTICES = 12


def quiver_isomorphic(q1: Quiver, q2: Quiver, max_vertices: int = MAX_ISO_VERTICES) -> dict | None:
    """A vertex bijection preserving arrow multiplicities, or ``None``.

    Backtracking in vertex order with degree-signature pruning; the first
    bijection in lexicographic order (by ``q2`` vertex order) is returned.
    """
    n = len(q1.vertices)
    if max(n, len(q2.vertices)) > max_vertices:
        raise PreconditionError(f"isomorphism search limited to {max_vertices} vertices")
    if n != len(q2.vertices) or len(q1.arrows) != len(q2.arrows):
        return None

    def mult_table(q):
        table = {}
        for a in q.arrows:
            table[a.source, a.target] = table.get((a.source, a.target), 0) + 1
        return table

    m1, m2 = mult_table(q1), mult_table(q2)

    def signature(q, v):
        return (len(q.out_arrows(v)), len(q.in_arrows(v)), q.multiplicity(v, v))

    sig2 = {v: signature(q2, v) for v in q2.vertices}
    order = q1.vertices
    image: dict = {}
    used = set()

    def extend(k):
        if k == n:
            return True
        v = order[k]
        sv = signature(q1, v)
        for w in q2.vertices:
            if w in used or sig2[w] != sv:
                continue
            if all(
                m1.get((u, v), 0) == m2.get((image[u], w), 0) and m1.get((v, u), 0) == m2.get((w, image[u]), 0)
                for u in order[:k]
            ):
                image[v] = w
                used.add(w)
                if extend(k + 1):
                    return True
                del image[v]
                used.discard(w)
        return False

    return dict(image) if extend(0) else None


def induced_arrow_map(q1: Quiver, q2: Quiver, vertex_map: dict) -> dict:
    """Arrow bijection induced by a vertex isomorphism; parallel arrows are matched in order."""
    result = {}
    for u, v in dict.fromkeys((a.source, a.target) for a in q1.arrows):
        src = q1.arrows_between(u, v)
        dst = q2.arrows_between(vertex_map[u], vertex_map[v])
        if len(src) != len(dst):
            raise PreconditionError("vertex map is not an isomorphism", witness=[u, v])
        result.update({a.id: b.id for a, b in zip(src, dst)})
    return result


# -- interchange ------------------------------------------------------------


def quiver_to_json(q: Quiver) -> dict:
    return {
        "vertices": list(q.vertices),
        "arrows": [{"id": a.id, "from": a.source, "to": a.target} for a in q.arrows],
    }


def quiver_from_json(doc) -> Quiver:
    if not isinstance(doc, dict):
        raise MalformedInputError("quiver document must be a JSON object")
    try:
        vertices = doc["vertices"]
        arrows = doc.get("arrows", [])
    except KeyError:
        raise MalformedInputError("quiver document needs a 'vertices' list") from None
    if not isinstance(vertices, list) or not isinstance(arrows, list):
        raise MalformedInputError("'vertices' and 'arrows' must be lists")
    parsed = []
    for a in arrows:
        if not isinstance(a, dict) or not {"id", "from", "to"} <= a.keys():
            raise MalformedInputError(f"arrow entries need 'id', 'from', 'to': {a!r}")
        parsed.append((a["id"], a["from"], a["to"]))
    return Quiver(vertices, parsed)


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(q: Quiver, name: str = "Q") -> str:
    lines = [f"digraph {_dot_quote(name)} {{"]
    lines += [f"  {_dot_quote(v)};" for v in q.vertices]
    lines += [f"  {_dot_quote(a.source)} -> {_dot_quote(a.target)} [label={_dot_quote(a.id)}];" for a in q.arrows]
    lines.append("}")
    return "\n".join(lines) + "\n"


def iter_vertex_subsets(q: Quiver, min_size: int = 1) -> Iterator[tuple[str, ...]]:
    for k in range(min_size, len(q.vertices) + 1):
        yield from itertools.combinations(q.vertices, k)
