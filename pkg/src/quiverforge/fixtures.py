"""Built-in catalog of quivers and presentations."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Presentation, Relation, presentation_from_json, presentation_to_json
from .errors import MalformedInputError
from .quiver import Quiver, make_cycle, make_G


@dataclass(frozen=True)
class Fixture:
    name: str
    presentation: Presentation
    note: str
    cyclic: bool = False  # quiver is cyclically oriented and the entry is quiver-only

    @property
    def quiver(self) -> Quiver:
        return self.presentation.quiver

    def to_json(self) -> dict:
        return presentation_to_json(self.presentation)


def _linear(n: int) -> Quiver:
    verts = [str(i) for i in range(1, n + 1)]
    return Quiver(verts, [(f"a{i}", str(i), str(i + 1)) for i in range(1, n)])


def _dynkin_d(n: int) -> Quiver:
    verts = [str(i) for i in range(1, n + 1)]
    arrows = [("a1", "1", "3"), ("a2", "2", "3")]
    arrows += [(f"a{i}", str(i), str(i + 1)) for i in range(3, n)]
    return Quiver(verts, arrows)


def _dynkin_e(n: int) -> Quiver:
    verts = [str(i) for i in range(1, n + 1)]
    arrows = [(f"a{i}", str(i), str(i + 1)) for i in range(1, n - 1)]
    arrows.append((f"a{n - 1}", str(n), "3"))
    return Quiver(verts, arrows)


def _star(arms: int) -> Quiver:
    centre = str(arms + 1)
    verts = [str(i) for i in range(1, arms + 2)]
    return Quiver(verts, [(f"a{i}", str(i), centre) for i in range(1, arms + 1)])


def _bare(q: Quiver) -> Presentation:
    return Presentation(q, ())


def _build() -> dict:
    out = []
    for n in range(3, 9):
        out.append(Fixture(f"C{n}", _bare(make_cycle(n)), f"oriented {n}-cycle", True))
    out.append(Fixture("G22", _bare(make_G(2, 2)), "arrow y->x with two arms x->y of length 2", True))
    out.append(Fixture("G32", _bare(make_G(3, 2)), "arrow y->x with arms x->y of lengths 3 and 2", True))
    out.append(Fixture("G33", _bare(make_G(3, 3)), "arrow y->x with two arms x->y of length 3", True))
    double = Quiver(
        ["1", "2", "3"],
        [("alpha1", "1", "2"), ("alpha2", "1", "2"), ("beta1", "2", "3"), ("beta2", "2", "3"), ("gamma1", "1", "3")],
    )
    out.append(Fixture("double-arrow", _bare(double), "double arrows 1->2->3 plus one arrow 1->3; mutate at 2"))

    qb = Quiver(["1", "2", "3", "4"], [("alpha", "1", "2"), ("beta", "1", "3"), ("phi", "4", "3"), ("gamma", "3", "2")])
    qc = Quiver(["1", "2", "3", "4"], [("alpha", "1", "2"), ("beta", "1", "3"), ("phi", "4", "3"), ("eta", "2", "4")])
    out.append(Fixture("example13-B", Presentation(qb, (Relation.zero_path(("phi", "gamma")),)),
                       "square with zero relation phi then gamma (4->3->2)"))
    out.append(Fixture("example13-C", Presentation(qc, (Relation.zero_path(("eta", "phi")),)),
                       "square with zero relation eta then phi (2->4->3)"))

    square = Quiver(["1", "2", "3", "4"], [("a", "1", "2"), ("b", "1", "3"), ("c", "2", "4"), ("d", "3", "4")])
    out.append(Fixture("commutative-square",
                       Presentation(square, (Relation.from_terms([(1, ("a", "c")), (-1, ("b", "d"))]),)),
                       "square 1->2->4, 1->3->4 with the two paths identified"))
    for n in range(2, 6):
        out.append(Fixture(f"A{n}", _bare(_linear(n)), f"hereditary, linearly oriented A{n}"))
    for n in (4, 5):
        out.append(Fixture(f"D{n}", _bare(_dynkin_d(n)), f"hereditary D{n}, arms 1->3, 2->3"))
    out.append(Fixture("E6", _bare(_dynkin_e(6)), "hereditary E6, chain 1..5 with 6->3"))
    out.append(Fixture("D~4", _bare(_star(4)), "hereditary extended D4, four arrows into 5"))
    return {f.name: f for f in out}


FIXTURES = _build()


def fixtures() -> list[Fixture]:
    return list(FIXTURES.values())


def get_fixture(name: str) -> Fixture:
    try:
        return FIXTURES[name]
    except KeyError:
        raise MalformedInputError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}") from None


def cyclic_catalog() -> list[Fixture]:
    """Fixtures whose quiver is cyclically oriented with at least one oriented cycle."""
    return [f for f in FIXTURES.values() if f.cyclic]


def roundtrip(f: Fixture) -> bool:
    return presentation_from_json(f.to_json()) == f.presentation
