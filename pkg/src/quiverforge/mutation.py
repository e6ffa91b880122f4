"""Fomin-Zelevinsky mutation of quivers without loops and 2-cycles."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError
from .quiver import Quiver, validate_cluster_quiver


@dataclass(frozen=True)
class MutationStep:
    vertex: str
    before: Quiver
    after: Quiver


def mutate(q: Quiver, k: str) -> Quiver:
    """Mutate ``q`` at vertex ``k``.

    Arrows at ``k`` are reversed and renamed ``<id>*``. Every path
    ``i -> k -> j`` contributes a new arrow ``m<k>_<i>_<j>_<n>``. Opposite
    pairs ``i -> j``, ``j -> i`` are then cancelled, oldest arrows first,
    so original arrows go before newly created ones.
    """
    q.index(k)
    report = validate_cluster_quiver(q)
    if not report.ok:
        raise PreconditionError("mutation needs a quiver without loops and 2-cycles", witness=report.violations)

    kept = []
    for a in q.arrows:
        if a.source == k:
            kept.append((f"{a.id}*", a.target, k))
        elif a.target == k:
            kept.append((f"{a.id}*", k, a.source))
        else:
            kept.append((a.id, a.source, a.target))

    taken = {aid for aid, _, _ in kept}
    counter: dict = {}
    for a in q.in_arrows(k):
        for b in q.out_arrows(k):
            i, j = a.source, b.target
            n = counter.get((i, j), 0)
            while True:
                n += 1
                aid = f"m{k}_{i}_{j}_{n}"
                if aid not in taken:
                    break
            counter[i, j] = n
            taken.add(aid)
            kept.append((aid, i, j))

    # cancel 2-cycles not passing through k
    removed = set()
    for pos, (aid, i, j) in enumerate(kept):
        if pos in removed or k in (i, j):
            continue
        for other in range(len(kept)):
            if other in removed or other == pos:
                continue
            _, s, t = kept[other]
            if s == j and t == i:
                removed.update((pos, other))
                break
    return Quiver(q.vertices, [arr for pos, arr in enumerate(kept) if pos not in removed])


def mutation_sequence(q: Quiver, vertices) -> list[MutationStep]:
    steps = []
    for k in vertices:
        after = mutate(q, k)
        steps.append(MutationStep(k, q, after))
        q = after
    return steps


def exchange_matrix(q: Quiver) -> list[list[int]]:
    """Skew-symmetric matrix ``B[i][j] = #(i -> j) - #(j -> i)`` in vertex order."""
    idx = {v: n for n, v in enumerate(q.vertices)}
    B = [[0] * len(idx) for _ in idx]
    for a in q.arrows:
        B[idx[a.source]][idx[a.target]] += 1
        B[idx[a.target]][idx[a.source]] -= 1
    return B
