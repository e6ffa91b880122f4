"""Admissible cuts: enumeration, construction through a given arrow, quotients and checks."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .algebra import Presentation, check_R1_R2
from .decomposition import decompose_at_arrow
from .errors import InvariantError, PreconditionError
from .homotopy import AbelianGroup, first_homology
from .modules import global_dimension
from .pathspace import PathAlgebra
from .quiver import (
    Quiver,
    connected_components,
    delete_arrows,
    enumerate_chordless_cycles,
    full_subquiver,
    has_bypass,
    is_acyclic,
    is_convex,
    iter_vertex_subsets,
    require_cyclically_oriented,
)

logger = logging.getLogger(__name__)


def _oriented_cycle_sets(q: Quiver) -> list[frozenset]:
    return [frozenset(c.arrows) for c in enumerate_chordless_cycles(q) if c.oriented]


def cut_violation(q: Quiver, arrows) -> dict | None:
    """``None`` if ``arrows`` meets every oriented chordless cycle exactly once, else a witness."""
    arrows = set(arrows)
    for aid in arrows:
        q.arrow(aid)
    cycles = _oriented_cycle_sets(q)
    for cyc in cycles:
        hit = sorted(cyc & arrows, key=q.arrow_index)
        if len(hit) != 1:
            return {"cycle": sorted(cyc, key=q.arrow_index), "cut_arrows_on_cycle": hit}
    on_cycle = frozenset().union(*cycles) if cycles else frozenset()
    stray = sorted(arrows - on_cycle, key=q.arrow_index)
    if stray:
        return {"arrows_off_cycles": stray}
    return None


@dataclass(frozen=True)
class AdmissibleCut:
    """A set of arrows of ``quiver`` with exactly one arrow on each oriented chordless cycle."""

    arrows: frozenset
    quiver: Quiver = field(repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "arrows", frozenset(self.arrows))
        witness = cut_violation(self.quiver, self.arrows)
        if witness is not None:
            raise PreconditionError("not an admissible cut", witness=witness)

    @property
    def ordered(self) -> tuple[str, ...]:
        return tuple(sorted(self.arrows, key=self.quiver.arrow_index))

    def __iter__(self):
        return iter(self.ordered)

    def __len__(self):
        return len(self.arrows)


# -- exhaustive search ------------------------------------------------------


def _search(q: Quiver, required=frozenset(), forbidden=frozenset()):
    """Yield every cut containing ``required`` and avoiding ``forbidden``.

    Backtracks over cycles without a chosen arrow, always branching on the
    one with the fewest admissible candidates.
    """
    cycles = _oriented_cycle_sets(q)
    required = frozenset(required)
    if required & forbidden:
        return
    for cyc in cycles:
        if len(cyc & required) > 1:
            return
    blocked = set(forbidden)
    for cyc in cycles:
        if cyc & required:
            blocked |= cyc - required
    order = {aid: n for n, aid in enumerate(q.arrow_ids)}

    def rec(chosen, blocked):
        open_cycles = [c for c in cycles if not (c & chosen)]
        if not open_cycles:
            yield frozenset(chosen)
            return
        best = min(open_cycles, key=lambda c: len(c - blocked))
        for aid in sorted(best - blocked, key=order.__getitem__):
            newly = set()
            for c in cycles:
                if aid in c:
                    newly |= c - {aid}
            yield from rec(chosen | {aid}, blocked | newly)

    yield from rec(set(required), blocked)


def enumerate_admissible_cuts(q: Quiver) -> list[AdmissibleCut]:
    require_cyclically_oriented(q)
    order = {aid: n for n, aid in enumerate(q.arrow_ids)}
    found = sorted(_search(q), key=lambda s: sorted(order[a] for a in s))
    return [AdmissibleCut(s, q) for s in found]


# -- constructive cut through an arrow --------------------------------------


def _solve(q: Quiver, required: frozenset, forbidden: frozenset) -> frozenset | None:
    """A cut of ``q`` containing ``required`` and avoiding ``forbidden``, built by recursive decomposition.

    Required arrows lying on no oriented chordless cycle of ``q`` are simply
    added. Returns ``None`` when the choices made along the way run into a
    conflict.
    """
    ids = set(q.arrow_ids)
    required = frozenset(required) & ids
    forbidden = frozenset(forbidden) & ids
    comps = connected_components(q)
    if len(comps) > 1:
        out = set()
        for comp in comps:
            part = _solve(full_subquiver(q, comp), required, forbidden)
            if part is None:
                return None
            out |= part
        return frozenset(out)

    cycles = [c for c in enumerate_chordless_cycles(q) if c.oriented]
    if not cycles:
        return required
    on_cycle = {aid for c in cycles for aid in c.arrows}
    anchors = [aid for aid in q.arrow_ids if aid in required and aid in on_cycle]
    attempts = []
    if anchors:
        alpha = anchors[0]
        for c in cycles:
            if alpha in c.arrows and not (set(c.arrows) - {alpha}) & required:
                attempts.append((alpha, c))
    else:
        for c in cycles:
            alpha = next((aid for aid in c.as_path() if aid not in forbidden), None)
            if alpha is not None:
                attempts.append((alpha, c))
                break
    for alpha, c in attempts:
        path = c.as_path()
        k = path.index(alpha)
        eta = path[k - 1]
        result = _split(q, alpha, eta, required, forbidden)
        if result is not None:
            return result
    return None


def _split(q, alpha, eta, required, forbidden):
    dec = decompose_at_arrow(q, eta)
    picks = []
    for delta in dec.deltas:
        must = [aid for aid in delta if aid in required or aid == alpha]
        if len(set(must)) > 1:
            return None
        if must:
            picks.append(must[0])
            continue
        pick = next((aid for aid in delta if aid not in forbidden), None)
        if pick is None:
            return None
        picks.append(pick)

    out = set()
    for piece in dec.pieces[: len(dec.pieces) - len(dec.closures)]:
        part = _solve(piece, required, forbidden)
        if part is None:
            return None
        out |= part
    for closure, delta, pick in zip(dec.closures, dec.deltas, picks):
        part = _solve(closure, required | {pick}, forbidden | (set(delta) - {pick}))
        if part is None:
            return None
        out |= part
    return frozenset(out)


def constrained_cut(q: Quiver, required=frozenset(), forbidden=frozenset()) -> frozenset | None:
    """Recursive construction first; exhaustive search if the recursion hits a conflict."""
    required, forbidden = frozenset(required), frozenset(forbidden)
    result = _solve(q, required, forbidden)
    if result is not None and _valid_with_extras(q, result):
        return result
    logger.debug("recursive cut construction failed on %r; falling back to search", q)
    for cut in _search(q, required & set(q.arrow_ids), forbidden & set(q.arrow_ids)):
        extras = required - cut
        return cut | extras
    return None


def _valid_with_extras(q: Quiver, arrows) -> bool:
    return all(len(c & arrows) == 1 for c in _oriented_cycle_sets(q))


def cut_containing(q: Quiver, alpha: str) -> AdmissibleCut:
    q.arrow(alpha)
    require_cyclically_oriented(q)
    if not any(alpha in c for c in _oriented_cycle_sets(q)):
        raise PreconditionError(f"arrow {alpha} lies on no oriented cycle", witness=alpha)
    arrows = constrained_cut(q, {alpha})
    if arrows is None:
        raise InvariantError(f"no admissible cut contains {alpha}")
    return AdmissibleCut(arrows, q)


# -- quotients --------------------------------------------------------------


def quotient_by_cut(p: Presentation, cut: AdmissibleCut) -> Presentation:
    """Delete the cut arrows; keep exactly the relations antiparallel to cut arrows.

    Both facts behind this are checked term by term: summands of a kept
    relation avoid the cut, and every summand of a dropped relation uses a
    cut arrow.
    """
    q = p.quiver
    if cut.quiver != q:
        raise PreconditionError("cut belongs to a different quiver")
    report = check_R1_R2(p)
    if not report.ok:
        raise PreconditionError("quotient_by_cut needs relations satisfying (R1) and (R2)", witness=list(report.diagnostics))
    kept = []
    for n, rel in enumerate(p.relations):
        aid = report.arrow_of[n]
        hits = [bool(set(path) & cut.arrows) for path in rel.paths]
        if aid in cut.arrows:
            if any(hits):
                raise InvariantError(f"relation at cut arrow {aid} has a summand through the cut")
            kept.append(rel)
        elif not all(hits):
            raise InvariantError(f"relation at {aid} has a summand avoiding the cut")
    return Presentation(delete_arrows(q, cut.arrows), tuple(kept))


@dataclass(frozen=True)
class CutQuotientReport:
    acyclic: bool
    bypass: tuple | None
    h1_trivial: bool
    h1_witness: dict | None
    convex_checked: int
    gldim: int | None

    @property
    def bypass_free(self) -> bool:
        return self.bypass is None

    @property
    def gldim_at_most_two(self) -> bool | None:
        return None if self.gldim is None else self.gldim <= 2

    @property
    def ok(self) -> bool:
        """Structural checks only. Global dimension is reported but not required:
        some cut quotients (two of the five for G(2,2)) have gldim 3."""
        return self.acyclic and self.bypass_free and self.h1_trivial

    def to_json(self) -> dict:
        return {
            "acyclic": self.acyclic,
            "bypass_free": self.bypass_free,
            "bypass_witness": None if self.bypass is None else {"arrow": self.bypass[0], "path": list(self.bypass[1])},
            "h1_trivial_on_convex_subquivers": self.h1_trivial,
            "h1_witness": self.h1_witness,
            "convex_subquivers_checked": self.convex_checked,
            "gldim": "not determined" if self.gldim is None else self.gldim,
            "gldim_at_most_two": self.gldim_at_most_two,
            "structural_ok": self.ok,
        }


def restrict(p: Presentation, vertices) -> Presentation:
    """The presentation on a convex full subquiver: relations with both ends inside."""
    keep = set(vertices)
    sub = full_subquiver(p.quiver, keep)
    rels = [r for r in p.relations if set(p.endpoints(r)) <= keep]
    return Presentation(sub, tuple(rels))


def convex_h1_certificate(p: Presentation) -> tuple[bool, dict | None, int]:
    """Check ``H1 = 0`` on every connected convex full subquiver."""
    q = p.quiver
    checked = 0
    for subset in iter_vertex_subsets(q):
        if not is_convex(q, subset):
            continue
        sub = full_subquiver(q, subset)
        if len(connected_components(sub)) != 1:
            continue
        checked += 1
        group: AbelianGroup = first_homology(restrict(p, subset))
        if not group.is_trivial:
            return False, {"vertices": list(subset), "h1": str(group)}, checked
    return True, None, checked


def verify_cut_quotient(A: Presentation, max_steps: int = 4) -> CutQuotientReport:
    q = A.quiver
    acyclic = is_acyclic(q)
    _, bypass = has_bypass(q)
    if acyclic:
        h1_ok, h1_witness, checked = convex_h1_certificate(A)
        gldim = global_dimension(PathAlgebra(A), max_steps)
    else:
        h1_ok, h1_witness, checked, gldim = False, {"reason": "quiver has an oriented cycle"}, 0, None
    return CutQuotientReport(acyclic, bypass, h1_ok, h1_witness, checked, gldim)
