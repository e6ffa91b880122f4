"""Independent oracles and random generators shared by the test modules.

Each oracle here is deliberately naive and shares no code with the library
beyond the Quiver container.
"""

from __future__ import annotations

import itertools

import numpy as np
from hypothesis import strategies as st

from quiverforge.mutation import mutate
from quiverforge.quiver import Quiver


# -- random quivers ------------------------------------------------------------


def linear_quiver(n, flips=()):
    verts = [str(i) for i in range(1, n + 1)]
    arrows = []
    for i in range(1, n):
        s, t = str(i), str(i + 1)
        if i in flips:
            s, t = t, s
        arrows.append((f"a{i}", s, t))
    return Quiver(verts, arrows)


def d_quiver(n):
    arrows = [("a1", "1", "3"), ("a2", "2", "3")] + [(f"a{i}", str(i), str(i + 1)) for i in range(3, n)]
    return Quiver([str(i) for i in range(1, n + 1)], arrows)


def e6_quiver():
    arrows = [(f"a{i}", str(i), str(i + 1)) for i in range(1, 5)] + [("a5", "6", "3")]
    return Quiver([str(i) for i in range(1, 7)], arrows)


DYNKIN_SEEDS = [linear_quiver(3), linear_quiver(4, (2,)), linear_quiver(5, (1, 3)), linear_quiver(6), d_quiver(4), d_quiver(5), e6_quiver()]


def relabel(q: Quiver) -> Quiver:
    """Short arrow ids, so mutated quivers stay readable."""
    return Quiver(q.vertices, [(f"e{n}", a.source, a.target) for n, a in enumerate(q.arrows)])


@st.composite
def dynkin_mutation_quivers(draw, max_steps=6):
    """Quivers mutation-equivalent to a simply-laced Dynkin quiver.

    Every such quiver is cyclically oriented, and its standard algebra is
    finite-dimensional.
    """
    q = draw(st.sampled_from(DYNKIN_SEEDS))
    steps = draw(st.lists(st.sampled_from(list(q.vertices)), max_size=max_steps))
    for v in steps:
        q = relabel(mutate(q, v))
    return q


@st.composite
def small_digraphs(draw, max_vertices=6, allow_multi=False):
    n = draw(st.integers(1, max_vertices))
    verts = [str(i) for i in range(n)]
    pairs = [(u, v) for u in verts for v in verts if u < v]
    arrows = []
    for u, v in pairs:
        kind = draw(st.sampled_from(["none", "none", "fwd", "back"] + (["double"] if allow_multi else [])))
        if kind == "fwd":
            arrows.append((u, v))
        elif kind == "back":
            arrows.append((v, u))
        elif kind == "double":
            arrows += [(u, v), (u, v)]
    return Quiver(verts, [(f"e{k}", s, t) for k, (s, t) in enumerate(arrows)])


# -- naive oracles ---------------------------------------------------------------


def naive_chordless_cycles(q: Quiver) -> set[frozenset]:
    """Vertex sets of chordless cycles, by trying every subset and cyclic order."""
    adj = {v: set() for v in q.vertices}
    for a in q.arrows:
        adj[a.source].add(a.target)
        adj[a.target].add(a.source)
    found = set()
    for k in range(3, len(q.vertices) + 1):
        for subset in itertools.combinations(q.vertices, k):
            # chordless cycle on a vertex set <=> induced subgraph is a k-cycle
            if all(len(adj[v] & set(subset)) == 2 for v in subset):
                # connected check through one cyclic order
                first = subset[0]
                for order in itertools.permutations(subset[1:]):
                    seq = (first,) + order
                    if all(seq[(i + 1) % k] in adj[seq[i]] for i in range(k)):
                        found.add(frozenset(subset))
                        break
    return found


def matrix_mutation(B, k):
    n = len(B)
    out = [row[:] for row in B]
    for i in range(n):
        for j in range(n):
            if i == k or j == k:
                out[i][j] = -B[i][j]
            else:
                out[i][j] = B[i][j] + (abs(B[i][k]) * B[k][j] + B[i][k] * abs(B[k][j])) // 2
    return out


def brute_force_cuts(q: Quiver, oriented_cycles) -> list[frozenset]:
    """All arrow subsets meeting every given arrow set in exactly one arrow."""
    out = []
    ids = q.arrow_ids
    for r in range(len(ids) + 1):
        for subset in itertools.combinations(ids, r):
            s = set(subset)
            if all(len(s & set(c)) == 1 for c in oriented_cycles):
                on_cycle = set().union(*map(set, oriented_cycles)) if oriented_cycles else set()
                if s <= on_cycle:
                    out.append(frozenset(s))
    return out


def naive_homotopy(q: Quiver, rels, x, y, L):
    """Fixed-point closure of the homotopy relation on paths x -> y of length <= L."""
    def paths_from(v, n):
        out = [((), v)]
        frontier = [((), v)]
        for _ in range(n):
            nxt = []
            for p, end in frontier:
                for a in q.arrows:
                    if a.source == end:
                        nxt.append((p + (a.id,), a.target))
            out += nxt
            frontier = nxt
        return out

    paths = [p for p, end in paths_from(x, L) if end == y]
    if x != y:
        paths = [p for p in paths if p]
    cls = {p: {p} for p in paths}
    changed = True
    while changed:
        changed = False
        for p in paths:
            for rel in rels:
                supp = [w for _, w in rel.terms]
                if len(supp) < 2:
                    continue
                for w in supp:
                    n = len(w)
                    for start in range(len(p) - n + 1):
                        if p[start:start + n] == w:
                            for w2 in supp:
                                other = p[:start] + w2 + p[start + n:]
                                if other in cls and other not in cls[p]:
                                    merged = cls[p] | cls[other]
                                    for m in merged:
                                        cls[m] = merged
                                    changed = True
    return {frozenset(c) for c in cls.values()}


def numpy_root_count(S, box=3):
    """Vectorised brute force over the full box ``|x_i| <= box``."""
    S = np.array([[float(v) for v in row] for row in S])
    n = len(S)
    axes = np.meshgrid(*([np.arange(-box, box + 1)] * n), indexing="ij")
    grid = np.stack([a.ravel() for a in axes], axis=1).astype(float)
    vals = np.einsum("ij,jk,ik->i", grid, S, grid)
    return int(np.sum(np.isclose(vals, 2.0)))
