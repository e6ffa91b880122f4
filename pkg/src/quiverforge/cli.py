"""Command-line interface over JSON documents.

Exit codes: 0 success, 1 malformed input, 2 precondition failure. Failures
print ``{"error", "detail", "witness"}`` as JSON on standard output.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .algebra import (
    Presentation,
    check_R1_R2,
    presentation_from_json,
    presentation_to_json,
    standard_relations,
)
from .cuts import AdmissibleCut, cut_containing, enumerate_admissible_cuts, quotient_by_cut, verify_cut_quotient
from .errors import MalformedInputError, PreconditionError
from .extension import check_cut_theorem, relation_extension_quiver
from .fixtures import fixtures, get_fixture
from .forms import (
    cartan_matrix,
    classify_type,
    count_roots,
    coxeter_polynomial,
    euler_symmetrized,
    format_polynomial,
    quasi_cartan_flags,
)
from .mutation import mutate
from .normalize import normalize_coefficients
from .quiver import (
    Quiver,
    enumerate_chordless_cycles,
    is_acyclic,
    is_cyclically_oriented,
    quiver_to_json,
    to_dot,
    validate_cluster_quiver,
)


def _jsonable(obj):
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return sorted(_jsonable(v) for v in obj)
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _load(args) -> Presentation:
    if args.fixture:
        return get_fixture(args.fixture).presentation
    source = args.input or "-"
    try:
        if source == "-":
            text = sys.stdin.read()
        else:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise MalformedInputError(f"cannot read {source}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise MalformedInputError("input must be a JSON object")
    return presentation_from_json(doc)


def _quiver_out(q: Quiver, args):
    if args.format == "dot":
        return to_dot(q)
    return quiver_to_json(q)


# -- commands ----------------------------------------------------------------


def cmd_validate(args):
    q = _load(args).quiver
    report = validate_cluster_quiver(q).to_json()
    report["simple"] = validate_cluster_quiver(q).simple
    return report


def cmd_cycles(args):
    q = _load(args).quiver
    return {"cycles": [c.to_json() for c in enumerate_chordless_cycles(q)]}


def cmd_cyclic_check(args):
    ok, witness = is_cyclically_oriented(_load(args).quiver)
    out = {"cyclically_oriented": ok}
    if witness is not None:
        out["witness"] = witness.to_json()
    return out


def cmd_relations(args):
    p = _load(args)
    if args.check:
        return check_R1_R2(p).to_json()
    return presentation_to_json(standard_relations(p.quiver))


def cmd_normalize(args):
    standard, scaling = normalize_coefficients(_load(args))
    return {"presentation": presentation_to_json(standard), "scaling": {k: str(v) for k, v in scaling.items()}}


def _arrow_list(text: str) -> list[str]:
    return [a.strip() for a in text.split(",") if a.strip()]


def cmd_cuts(args):
    q = _load(args).quiver
    if args.containing:
        return {"cut": list(cut_containing(q, args.containing).ordered)}
    if args.quotient is not None:
        cut = AdmissibleCut(frozenset(_arrow_list(args.quotient)), q)
        A = quotient_by_cut(standard_relations(q), cut)
        if args.format == "dot":
            return to_dot(A.quiver)
        return {"presentation": presentation_to_json(A), "report": verify_cut_quotient(A).to_json()}
    cuts = enumerate_admissible_cuts(q)
    return {"count": len(cuts), "cuts": [list(c.ordered) for c in cuts]}


def cmd_extend(args):
    result = relation_extension_quiver(_load(args), allow_cycles=args.allow_cycles)
    if args.format == "dot":
        return to_dot(result.quiver)
    return result.to_json()


def cmd_check_theorem(args):
    return check_cut_theorem(_load(args).quiver).to_json()


def cmd_mutate(args):
    q = _load(args).quiver
    for v in args.vertex:
        q = mutate(q, v)
    return _quiver_out(q, args)


def cmd_classify(args):
    p = _load(args)
    cartan = cartan_matrix(p)
    out = {"vertices": list(p.quiver.vertices), "cartan": cartan.as_lists()}
    form = euler_symmetrized(p)
    out["definiteness"] = form.kind
    out["corank"] = form.corank
    out["radical"] = [list(v) for v in form.radical]
    out["roots"] = count_roots(form) if form.positive_definite else None
    if is_acyclic(p.quiver):
        label = classify_type(p)
        out["type"] = str(label)
        if label.diagnostic:
            out["type_diagnostic"] = label.diagnostic
    else:
        out["type"] = None
        out["type_diagnostic"] = "quiver has an oriented cycle"
    poly = coxeter_polynomial(p)
    out["coxeter_polynomial"] = poly
    out["coxeter_polynomial_text"] = format_polynomial(poly)
    if validate_cluster_quiver(p.quiver).simple and len(p.quiver.arrows) <= 20:
        out["quasi_cartan"] = quasi_cartan_flags(p.quiver).to_json()
    return out


def cmd_fixtures(args):
    if args.fixture:
        f = get_fixture(args.fixture)
        if args.format == "dot":
            return to_dot(f.quiver, f.name)
        return f.to_json()
    return {"fixtures": [{"name": f.name, "note": f.note} for f in fixtures()]}


def cmd_dot(args):
    return to_dot(_load(args).quiver)


COMMANDS = {
    "validate": (cmd_validate, "report loops, 2-cycles and multiple arrows"),
    "cycles": (cmd_cycles, "list chordless cycles"),
    "cyclic-check": (cmd_cyclic_check, "test whether every chordless cycle is oriented"),
    "relations": (cmd_relations, "standard relations of a quiver, or check (R1)/(R2) with --check"),
    "normalize": (cmd_normalize, "rescale arrows to bring relations to unit coefficients"),
    "cuts": (cmd_cuts, "enumerate admissible cuts, find one through an arrow, or build a quotient"),
    "extend": (cmd_extend, "relation-extension quiver of a presentation"),
    "check-theorem": (cmd_check_theorem, "cut/extension round trip over all admissible cuts"),
    "mutate": (cmd_mutate, "mutate a quiver at one or more vertices"),
    "classify": (cmd_classify, "Cartan matrix, Euler form, roots, type and Coxeter polynomial"),
    "fixtures": (cmd_fixtures, "list the built-in catalog, or print one entry with --fixture"),
    "dot": (cmd_dot, "export a quiver as Graphviz DOT"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="input JSON file, or - for standard input (default)")
    common.add_argument("--fixture", "-f", help="use a built-in fixture instead of --input")
    common.add_argument("--format", choices=("json", "dot"), default="json")

    parser = argparse.ArgumentParser(prog="quiverforge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    parsers = {name: sub.add_parser(name, parents=[common], help=text) for name, (_, text) in COMMANDS.items()}
    parsers["relations"].add_argument("--check", action="store_true", help="check the input relations instead")
    cuts = parsers["cuts"].add_mutually_exclusive_group()
    cuts.add_argument("--enumerate", action="store_true", help="list all admissible cuts (default)")
    cuts.add_argument("--containing", metavar="ARROW", help="construct a cut through ARROW")
    cuts.add_argument("--quotient", metavar="ARROWS", help="quotient by the comma-separated cut")
    parsers["extend"].add_argument("--allow-cycles", action="store_true", help="accept quivers with oriented cycles")
    parsers["mutate"].add_argument("--vertex", "-k", action="append", required=True, help="vertex to mutate at (repeatable)")
    return parser


def _failure(kind: str, exc: Exception, witness=None) -> str:
    doc = {"error": kind, "detail": str(exc)}
    if witness is not None:
        doc["witness"] = _jsonable(witness)
    return json.dumps(doc, indent=2)


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    func = COMMANDS[args.command][0]
    try:
        result = func(args)
    except PreconditionError as exc:
        print(_failure("precondition failed", exc, exc.witness), file=stdout)
        return 2
    except MalformedInputError as exc:
        print(_failure("malformed input", exc), file=stdout)
        return 1
    if isinstance(result, str):
        print(result, end="" if result.endswith("\n") else "\n", file=stdout)
    else:
        print(json.dumps(_jsonable(result), indent=2), file=stdout)
    return 0


def main() -> None:
    sys.exit(run())
