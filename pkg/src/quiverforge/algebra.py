"""Presentations ``kQ/I`` with rational relations, and the standard relations of a quiver."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .decomposition import antiparallel_shortest_paths
from .errors import MalformedInputError, PreconditionError
from .quiver import (
    Quiver,
    enumerate_chordless_cycles,
    is_cyclically_oriented,
    quiver_from_json,
    quiver_to_json,
    require_cyclically_oriented,
)


@dataclass(frozen=True)
class Relation:
    """A rational linear combination of pairwise parallel paths.

    ``terms`` is sorted by path and never holds zero coefficients or repeated
    paths. ``arrow`` optionally tags the arrow the relation is antiparallel to.
    """

    terms: tuple[tuple[Fraction, tuple], ...]
    arrow: str | None = None

    def __post_init__(self):
        paths = [p for _, p in self.terms]
        if not self.terms:
            raise MalformedInputError("a relation needs at least one term")
        if any(c == 0 for c, _ in self.terms):
            raise MalformedInputError("relation coefficients must be nonzero")
        if len(set(paths)) != len(paths) or paths != sorted(paths):
            raise MalformedInputError("relation terms must be distinct and canonically ordered")

    @classmethod
    def from_terms(cls, terms: Iterable, arrow: str | None = None) -> "Relation":
        """Build a relation, merging repeated paths and dropping zero coefficients."""
        acc: dict = {}
        for coeff, path in terms:
            path = tuple(path)
            acc[path] = acc.get(path, Fraction(0)) + Fraction(coeff)
        items = tuple(sorted(((c, p) for p, c in acc.items() if c != 0), key=lambda t: t[1]))
        return cls(items, arrow)

    @classmethod
    def zero_path(cls, path, arrow: str | None = None) -> "Relation":
        return cls.from_terms([(1, path)], arrow)

    @property
    def paths(self) -> tuple[tuple, ...]:
        return tuple(p for _, p in self.terms)

    def coefficient(self, path) -> Fraction:
        return dict((p, c) for c, p in self.terms).get(tuple(path), Fraction(0))

    def scaled(self, factor) -> "Relation":
        return Relation.from_terms([(c * factor, p) for c, p in self.terms], self.arrow)

    def normalized(self) -> "Relation":
        """Divide by the first coefficient so the leading term has coefficient 1."""
        return self.scaled(1 / self.terms[0][0])

    def as_dict(self) -> dict:
        return {p: c for c, p in self.terms}

    @property
    def max_length(self) -> int:
        return max(len(p) for p in self.paths)

    @property
    def min_length(self) -> int:
        return min(len(p) for p in self.paths)


@dataclass(frozen=True)
class Presentation:
    """A quiver with a list of relation generators, standing for ``kQ/<relations>``."""

    quiver: Quiver
    relations: tuple[Relation, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple(self.relations))
        for rel in self.relations:
            self.endpoints(rel)

    def endpoints(self, rel: Relation) -> tuple[str, str]:
        q = self.quiver
        ends = set()
        for path in rel.paths:
            if len(path) < 2:
                raise MalformedInputError(f"relation path {list(path)} has length < 2")
            try:
                verts = q.path_vertices(path)
            except PreconditionError as exc:
                raise MalformedInputError(str(exc)) from None
            ends.add((verts[0], verts[-1]))
        if len(ends) != 1:
            raise MalformedInputError(f"relation mixes endpoints {sorted(ends)}")
        return ends.pop()

    def relation_for(self, arrow: str) -> Relation | None:
        return next((r for r in self.relations if r.arrow == arrow), None)


def cyclic_arrows(q: Quiver) -> tuple[str, ...]:
    """Arrows lying on at least one chordless cycle, in quiver order."""
    require_cyclically_oriented(q)
    on_cycle = {aid for c in enumerate_chordless_cycles(q) for aid in c.arrows}
    return tuple(aid for aid in q.arrow_ids if aid in on_cycle)


def standard_relations(q: Quiver) -> Presentation:
    """For every cyclic arrow, the sum of its antiparallel shortest paths, all coefficients 1."""
    rels = [
        Relation.from_terms([(1, d) for d in antiparallel_shortest_paths(q, aid)], arrow=aid)
        for aid in cyclic_arrows(q)
    ]
    return Presentation(q, tuple(rels))


def antiparallel_arrow(p: Presentation, rel: Relation) -> list[str]:
    s, e = p.endpoints(rel)
    return [a.id for a in p.quiver.arrows_between(e, s)]


@dataclass(frozen=True)
class R1R2Report:
    ok: bool
    diagnostics: tuple[str, ...]
    arrow_of: dict = field(default_factory=dict)  # relation index -> arrow id

    def to_json(self) -> dict:
        return {"ok": self.ok, "diagnostics": list(self.diagnostics)}


def check_R1_R2(p: Presentation) -> R1R2Report:
    """Relations biject with cyclic arrows, each supported on exactly its shortest antiparallel paths."""
    q = p.quiver
    ok, witness = is_cyclically_oriented(q)
    if not ok:
        return R1R2Report(False, (f"quiver is not cyclically oriented: {list(witness.vertices)}",))
    cyc = cyclic_arrows(q)
    diags = []
    arrow_of = {}
    seen: dict = {}
    for n, rel in enumerate(p.relations):
        candidates = antiparallel_arrow(p, rel)
        if len(candidates) != 1:
            diags.append(f"relation {n} has {len(candidates)} antiparallel arrows")
            continue
        (aid,) = candidates
        if rel.arrow is not None and rel.arrow != aid:
            diags.append(f"relation {n} is tagged {rel.arrow} but antiparallel to {aid}")
        if aid not in cyc:
            diags.append(f"relation {n} is antiparallel to {aid}, which lies on no chordless cycle")
            continue
        if aid in seen:
            diags.append(f"relations {seen[aid]} and {n} are both antiparallel to {aid}")
            continue
        seen[aid] = n
        arrow_of[n] = aid
        expected = set(antiparallel_shortest_paths(q, aid))
        support = set(rel.paths)
        if expected - support:
            diags.append(f"support incomplete at {aid}")
        if support - expected:
            diags.append(f"support of relation at {aid} has paths that are not shortest antiparallel paths")
    for aid in cyc:
        if aid not in seen:
            diags.append(f"no relation antiparallel to {aid}")
    return R1R2Report(not diags, tuple(diags), arrow_of)


def substitute(rel: Relation, scaling: dict) -> Relation:
    """Apply the arrow rescaling ``beta -> scaling[beta] * beta`` to every term."""
    terms = []
    for c, path in rel.terms:
        for aid in path:
            c *= scaling.get(aid, 1)
        terms.append((c, path))
    return Relation.from_terms(terms, rel.arrow)


# -- interchange ------------------------------------------------------------


def _parse_coeff(value) -> Fraction:
    if isinstance(value, bool):
        raise MalformedInputError(f"bad coefficient {value!r}")
    try:
        if isinstance(value, float):
            raise ValueError
        return Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError):
        raise MalformedInputError(f"coefficients must be integers or 'p/q' strings, got {value!r}") from None


def relations_to_json(rels) -> list:
    return [
        {"arrow": r.arrow, "terms": [{"coeff": str(c), "path": list(p)} for c, p in r.terms]} for r in rels
    ]


def relations_from_json(doc) -> tuple[Relation, ...]:
    if not isinstance(doc, list):
        raise MalformedInputError("relations must be a JSON list")
    rels = []
    for entry in doc:
        if not isinstance(entry, dict) or not isinstance(entry.get("terms"), list):
            raise MalformedInputError(f"relation entries need a 'terms' list: {entry!r}")
        terms = []
        for t in entry["terms"]:
            if not isinstance(t, dict) or not isinstance(t.get("path"), list):
                raise MalformedInputError(f"terms need 'coeff' and 'path': {t!r}")
            terms.append((_parse_coeff(t.get("coeff", 1)), tuple(str(a) for a in t["path"])))
        arrow = entry.get("arrow")
        rels.append(Relation.from_terms(terms, None if arrow is None else str(arrow)))
    return tuple(rels)


def presentation_to_json(p: Presentation) -> dict:
    doc = quiver_to_json(p.quiver)
    doc["relations"] = relations_to_json(p.relations)
    return doc


def presentation_from_json(doc) -> Presentation:
    if isinstance(doc, dict) and "quiver" in doc:
        q = quiver_from_json(doc["quiver"])
    else:
        q = quiver_from_json(doc)
    return Presentation(q, relations_from_json(doc.get("relations", [])))
