"""Relation-extension quivers and the cut/extension round trip."""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Presentation, Relation, presentation_to_json, standard_relations
from .cuts import AdmissibleCut, enumerate_admissible_cuts, quotient_by_cut
from .errors import InvariantError, PreconditionError
from .pathspace import PathAlgebra, non_minimal_relations
from .quiver import (
    Arrow,
    Cycle,
    Quiver,
    induced_arrow_map,
    is_acyclic,
    is_cyclically_oriented,
    quiver_isomorphic,
    quiver_to_json,
)


@dataclass(frozen=True)
class ExtensionResult:
    """The extended quiver, the arrow added for each relation, and the rebuilt relations.

    ``relations`` is ``None`` when the extended quiver is not cyclically
    oriented; ``scope_witness`` then holds a non-oriented chordless cycle.
    """

    quiver: Quiver
    new_arrows: tuple[str, ...]  # new_arrows[n] was added for relation n
    relations: Presentation | None
    scope_witness: Cycle | None = None

    @property
    def in_scope(self) -> bool:
        return self.relations is not None

    def to_json(self) -> dict:
        doc = {
            "quiver": quiver_to_json(self.quiver),
            "new_arrows": list(self.new_arrows),
            "cyclically_oriented": self.in_scope,
        }
        if self.in_scope:
            doc["reconstructed"] = presentation_to_json(self.relations)
        else:
            doc["scope"] = "outside theorem scope"
            doc["witness"] = self.scope_witness.to_json()
        return doc


def _fresh_id(rel: Relation, n: int, taken: set) -> str:
    if rel.arrow is not None and rel.arrow not in taken:
        return rel.arrow
    base = f"rho{n}"
    aid, k = base, 1
    while aid in taken:
        aid, k = f"{base}_{k}", k + 1
    return aid


def relation_extension_quiver(A: Presentation, allow_cycles: bool = False, cutoff: int | None = None) -> ExtensionResult:
    """Add one arrow ``target(rho) -> source(rho)`` for every relation of ``A``.

    The new arrow reuses the relation's tag when that id is free, else gets
    ``rho<n>``. Generators are first checked for minimality.
    """
    q = A.quiver
    if not allow_cycles and not is_acyclic(q):
        raise PreconditionError("relation extension expects an acyclic quiver (pass allow_cycles to override)")
    bad = non_minimal_relations(A, cutoff)
    if bad:
        raise PreconditionError("relation generators are not minimal", witness=bad)
    taken = set(q.arrow_ids)
    arrows = list(q.arrows)
    added = []
    for n, rel in enumerate(A.relations):
        s, e = A.endpoints(rel)
        aid = _fresh_id(rel, n, taken)
        taken.add(aid)
        arrows.append(Arrow(aid, e, s))
        added.append(aid)
    ext = Quiver(q.vertices, arrows)
    ok, witness = is_cyclically_oriented(ext)
    if not ok:
        return ExtensionResult(ext, tuple(added), None, witness)
    return ExtensionResult(ext, tuple(added), standard_relations(ext))


# -- round trip --------------------------------------------------------------


@dataclass(frozen=True)
class CutRoundTrip:
    cut: tuple[str, ...]
    identical: bool
    isomorphic: bool
    relations_match: bool

    @property
    def ok(self) -> bool:
        return self.isomorphic and self.relations_match

    def to_json(self) -> dict:
        return {
            "cut": list(self.cut),
            "same_quiver": self.identical,
            "isomorphic": self.isomorphic,
            "relations_match": self.relations_match,
            "ok": self.ok,
        }


@dataclass(frozen=True)
class CutTheoremReport:
    cases: tuple[CutRoundTrip, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.cases)

    def to_json(self) -> dict:
        return {"cuts": [c.to_json() for c in self.cases], "all_pass": self.ok}


def _relation_key(rel: Relation, amap: dict | None = None):
    amap = amap or {}
    rel = Relation.from_terms([(c, tuple(amap.get(a, a) for a in path)) for c, path in rel.terms])
    return rel.terms


def round_trip(q: Quiver, cut: AdmissibleCut, standard: Presentation | None = None) -> CutRoundTrip:
    standard = standard or standard_relations(q)
    A = quotient_by_cut(standard, cut)
    ext = relation_extension_quiver(A)
    vmap = quiver_isomorphic(ext.quiver, q)
    matched = False
    if vmap is not None and ext.relations is not None:
        amap = induced_arrow_map(ext.quiver, q, vmap)
        got = sorted(_relation_key(r, amap) for r in ext.relations.relations)
        want = sorted(_relation_key(r) for r in standard.relations)
        matched = got == want
    same = set(ext.quiver.arrows) == set(q.arrows) and set(ext.quiver.vertices) == set(q.vertices)
    return CutRoundTrip(cut.ordered, same, vmap is not None, matched)


def check_cut_theorem(q: Quiver) -> CutTheoremReport:
    """Quotient by each admissible cut, extend back, and compare with ``q`` and its standard relations."""
    standard = standard_relations(q)
    return CutTheoremReport(tuple(round_trip(q, cut, standard) for cut in enumerate_admissible_cuts(q)))


# -- split extension maps ----------------------------------------------------


@dataclass(frozen=True)
class SplitExtensionReport:
    dim_quotient: int
    dim_algebra: int
    inclusion_well_defined: bool
    projection_well_defined: bool
    composite_is_identity: bool

    @property
    def ok(self) -> bool:
        return self.inclusion_well_defined and self.projection_well_defined and self.composite_is_identity


def split_extension_maps(A: Presentation, cut: AdmissibleCut) -> SplitExtensionReport:
    """Check the inclusion ``A -> C`` and the projection ``C -> A`` killing the cut, and ``pi . iota = id``.

    ``C`` is the standard algebra of ``cut.quiver``; both maps act on paths
    and are compared on bases of the path spaces.
    """
    big = cut.quiver
    C = standard_relations(big)
    small = A.quiver
    if set(small.vertices) != set(big.vertices) or set(small.arrow_ids) != set(big.arrow_ids) - cut.arrows:
        raise PreconditionError("A is not the cut quotient of the given quiver")
    alg_a, alg_c = PathAlgebra(A), PathAlgebra(C)

    def project(i, j, vec):
        kept = {p: c for p, c in vec.items() if not set(p) & cut.arrows}
        return alg_a.space(i, j).coordinates(kept)

    iota_ok = all(alg_c.space(*A.endpoints(r)).is_zero(r.as_dict()) for r in A.relations)
    pi_ok = all(not any(project(*C.endpoints(r), r.as_dict())) for r in C.relations)

    identity = True
    for i in small.vertices:
        for j in small.vertices:
            sa, sc = alg_a.space(i, j), alg_c.space(i, j)
            for n, path in enumerate(sa.basis):
                coords = sc.coordinates({path: 1})
                image = {b: c for b, c in zip(sc.basis, coords) if c}
                back = project(i, j, image)
                if list(back) != [int(k == n) for k in range(sa.dim)]:
                    identity = False
    if alg_a.total_dimension() > alg_c.total_dimension():
        raise InvariantError("quotient is larger than the algebra it was cut from")
    return SplitExtensionReport(alg_a.total_dimension(), alg_c.total_dimension(), iota_ok, pi_ok, identity)
