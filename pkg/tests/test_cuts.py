import pytest
from hypothesis import given, settings

from helpers import brute_force_cuts, dynkin_mutation_quivers
from quiverforge.algebra import Presentation, Relation, standard_relations
from quiverforge.cuts import (
    AdmissibleCut,
    constrained_cut,
    cut_containing,
    enumerate_admissible_cuts,
    quotient_by_cut,
    verify_cut_quotient,
)
from quiverforge.errors import PreconditionError
from quiverforge.fixtures import FIXTURES, cyclic_catalog
from quiverforge.quiver import Quiver, delete_arrows, enumerate_chordless_cycles, has_bypass, is_acyclic, make_cycle, make_G

G22 = make_G(2, 2)

# eta: y -> x with one long path x -> a -> b -> y and a triangle hanging off
# each end; the literal recursion (cut arrows = first arrow of each path)
# can pick conflicting arrows here
TANGLE = Quiver(
    ["x", "a", "b", "y", "c", "d"],
    [("eta", "y", "x"), ("p", "x", "a"), ("m", "a", "b"), ("n", "b", "y"),
     ("s", "a", "c"), ("t", "c", "x"), ("u", "y", "d"), ("v", "d", "b")],
)


def _oriented_sets(q):
    return [c.arrows for c in enumerate_chordless_cycles(q) if c.oriented]


@pytest.mark.parametrize("n", range(3, 9))
def test_cycle_cut_count(n):
    q = make_cycle(n)
    cuts = enumerate_admissible_cuts(q)
    assert [c.ordered for c in cuts] == [(a,) for a in q.arrow_ids]
    assert len(brute_force_cuts(q, _oriented_sets(q))) == n


def test_G22_cuts():
    cuts = [c.ordered for c in enumerate_admissible_cuts(G22)]
    assert cuts == [("eta",), ("alpha1", "beta1"), ("alpha1", "beta2"), ("alpha2", "beta1"), ("alpha2", "beta2")]
    assert len(brute_force_cuts(G22, _oriented_sets(G22))) == 5


def test_G32_cut_count_frozen_from_brute_force():
    g = make_G(3, 2)
    assert len(brute_force_cuts(g, _oriented_sets(g))) == 7
    assert len(enumerate_admissible_cuts(g)) == 7


def test_acyclic_quiver_has_the_empty_cut():
    cuts = enumerate_admissible_cuts(FIXTURES["A4"].quiver)
    assert [c.ordered for c in cuts] == [()]


def test_invalid_cut_is_rejected():
    with pytest.raises(PreconditionError):
        AdmissibleCut({"a1", "a2"}, make_cycle(3))
    with pytest.raises(PreconditionError):
        AdmissibleCut({"alpha1"}, G22)


def test_cut_containing_examples():
    assert cut_containing(make_cycle(5), "a3").ordered == ("a3",)
    assert cut_containing(G22, "eta").ordered == ("eta",)
    c = cut_containing(G22, "alpha1")
    assert "alpha1" in c.arrows and len(c) == 2 and c.arrows & {"beta1", "beta2"}
    pendant = Quiver(["1", "2", "3", "4"], [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1"), ("d", "3", "4")])
    with pytest.raises(PreconditionError):
        cut_containing(pendant, "d")


def test_recursion_handles_tangled_paths():
    all_cuts = {c.arrows for c in enumerate_admissible_cuts(TANGLE)}
    for aid in TANGLE.arrow_ids:
        cut = cut_containing(TANGLE, aid)
        assert aid in cut.arrows and cut.arrows in all_cuts


def test_constrained_cut_respects_forbidden_arrows():
    cut = constrained_cut(G22, {"alpha1"}, {"beta1"})
    assert cut == frozenset({"alpha1", "beta2"})
    assert constrained_cut(G22, {"alpha1"}, {"beta1", "beta2"}) is None


@pytest.mark.parametrize("fixture", [f.name for f in cyclic_catalog()])
def test_every_cut_through_every_arrow(fixture):
    q = FIXTURES[fixture].quiver
    all_cuts = {c.arrows for c in enumerate_admissible_cuts(q)}
    for aid in {a for c in _oriented_sets(q) for a in c}:
        assert cut_containing(q, aid).arrows in all_cuts


def test_quotient_examples():
    c3 = make_cycle(3)
    A = quotient_by_cut(standard_relations(c3), AdmissibleCut({"a3"}, c3))
    assert A.quiver.arrow_ids == ("a1", "a2")
    assert [r.terms for r in A.relations] == [((1, ("a1", "a2")),)]

    A = quotient_by_cut(standard_relations(G22), AdmissibleCut({"eta"}, G22))
    assert len(A.quiver.vertices) == 4 and len(A.quiver.arrows) == 4
    assert [r.terms for r in A.relations] == [((1, ("alpha1", "alpha2")), (1, ("beta1", "beta2")))]

    A = quotient_by_cut(standard_relations(G22), AdmissibleCut({"alpha1", "beta1"}, G22))
    assert len(A.quiver.arrows) == 3
    assert sorted(r.paths for r in A.relations) == [(("alpha2", "eta"),), (("beta2", "eta"),)]


def test_quotient_rejects_relations_outside_R1_R2():
    p = standard_relations(G22)
    bad = Presentation(G22, tuple(r for r in p.relations if r.arrow != "eta"))
    with pytest.raises(PreconditionError):
        quotient_by_cut(bad, AdmissibleCut({"eta"}, G22))


def _filter_oracle(std, cut):
    """Keep the summands avoiding the cut; a relation survives iff nothing was dropped."""
    kept = []
    for rel in std.relations:
        summands = [t for t in rel.terms if not set(t[1]) & cut.arrows]
        if summands and len(summands) == len(rel.terms):
            kept.append(Relation.from_terms(summands, rel.arrow))
        else:
            assert not summands
    return kept


@pytest.mark.parametrize("fixture", [f.name for f in cyclic_catalog()])
def test_quotient_matches_filtering_oracle(fixture):
    q = FIXTURES[fixture].quiver
    std = standard_relations(q)
    for cut in enumerate_admissible_cuts(q):
        A = quotient_by_cut(std, cut)
        assert list(A.relations) == _filter_oracle(std, cut)
        assert {r.arrow for r in A.relations} == set(cut.arrows)


def test_verification_reports():
    for n in (3, 4, 5):
        q = make_cycle(n)
        std = standard_relations(q)
        for cut in enumerate_admissible_cuts(q):
            report = verify_cut_quotient(quotient_by_cut(std, cut))
            assert report.ok and report.gldim == 2


def test_G22_global_dimensions():
    std = standard_relations(G22)
    reports = [verify_cut_quotient(quotient_by_cut(std, c)) for c in enumerate_admissible_cuts(G22)]
    assert all(r.ok for r in reports)
    # overlapping zero relations on a path of length 3 resolve in three steps
    assert [r.gldim for r in reports] == [2, 2, 3, 3, 2]
    assert reports[2].to_json()["gldim_at_most_two"] is False


@settings(max_examples=25, deadline=None)
@given(dynkin_mutation_quivers(max_steps=5))
def test_cut_quotients_are_acyclic_without_bypasses(q):
    cuts = enumerate_admissible_cuts(q)
    if len(q.arrows) <= 10:
        assert len(cuts) == len(brute_force_cuts(q, _oriented_sets(q)))
    for cut in cuts:
        rest = delete_arrows(q, cut.arrows)
        assert is_acyclic(rest)
        assert has_bypass(rest) == (False, None)
    for aid in {a for c in _oriented_sets(q) for a in c}:
        assert cut_containing(q, aid).arrows in {c.arrows for c in cuts}
