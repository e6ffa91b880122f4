"""Rescaling arrows to bring (R1)/(R2) relations to all-coefficients-1 form."""

from __future__ import annotations

from fractions import Fraction

from .algebra import Presentation, Relation, check_R1_R2, standard_relations, substitute
from .cuts import constrained_cut
from .decomposition import decompose_at_arrow
from .errors import InvariantError, PreconditionError
from .quiver import connected_components, full_subquiver


def _normalized(rels: dict) -> dict:
    return {aid: rel.normalized() for aid, rel in rels.items()}


def _next_target(rels: dict):
    """First ``(arrow, path, coefficient)`` with coefficient != 1, by arrow id then path."""
    for aid in sorted(rels):
        for c, path in rels[aid].terms:
            if c != 1:
                return aid, path, c
    return None


def normalize_coefficients(p: Presentation) -> tuple[Presentation, dict]:
    """Return the standard presentation and a scaling ``f`` with ``beta -> f[beta] * beta``.

    Relations are only defined up to a nonzero scalar, so each is divided by
    its leading coefficient first. Then one coefficient ``lam`` of a path
    ``phi`` in the relation at ``xi`` is fixed per step: decompose at ``xi``,
    take a cut of the closure containing ``phi`` that meets ``phi`` only in
    its first arrow, and divide every cut arrow by ``lam``. Every other
    relation is either untouched or scaled as a whole, so the number of
    coefficients different from 1 drops by one each step.
    """
    report = check_R1_R2(p)
    if not report.ok:
        raise PreconditionError("relations violate (R1)/(R2)", witness=list(report.diagnostics))
    q = p.quiver
    original = {report.arrow_of[n]: rel for n, rel in enumerate(p.relations)}
    scaling = {aid: Fraction(1) for aid in q.arrow_ids}
    current = _normalized(original)
    comp_of = {}
    for comp in connected_components(q):
        for v in comp:
            comp_of[v] = comp

    for _ in range(sum(len(r.terms) for r in current.values()) + 1):
        target = _next_target(current)
        if target is None:
            break
        xi, phi, lam = target
        host = full_subquiver(q, comp_of[q.arrow(xi).source])
        dec = decompose_at_arrow(host, xi)
        i = dec.deltas.index(phi)
        closure = dec.closures[i]
        alpha = phi[0]
        cut = constrained_cut(closure, {alpha}, set(phi) - {alpha})
        if cut is None:
            raise InvariantError(f"no cut of the closure of {list(phi)} through {alpha}")
        step = {aid: 1 / lam for aid in cut}
        for aid in cut:
            scaling[aid] /= lam
        current = _normalized({aid: substitute(rel, step) for aid, rel in current.items()})
    else:
        raise InvariantError("normalization did not terminate")

    standard = standard_relations(q)
    for rel in standard.relations:
        got = substitute(original[rel.arrow], scaling).normalized()
        if got.terms != rel.terms:
            raise InvariantError(f"rescaled relation at {rel.arrow} is not standard: {got.terms}")
    return standard, scaling


def apply_scaling(p: Presentation, scaling: dict) -> list[Relation]:
    """Substitute the scaling into every relation and divide out the leading coefficient."""
    return [substitute(rel, scaling).normalized() for rel in p.relations]
