"""Command-line interface: JSON documents in, JSON documents out.

Every document is ``{"schema_version", "kind", "payload"}``; reports also
carry the ``command`` that produced them.  Output is canonical (sorted keys,
no floats) and integers beyond 2**53 are written as decimal strings.

Exit codes: 0 success, 2 malformed input, 3 domain error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from functools import lru_cache
from importlib import resources
from typing import Any, Callable

import jsonschema

from . import __version__
from .abelian import FgAbelianGroup
from .corpus import GENERATORS, symmetric_fan_suite
from .errors import NotPointed, SchemaError, TorificError
from .fan import FanAction, KatoFan, barycentric_subdivision, is_action_simple
from .graded import (
    CharacterMultiset,
    Grading,
    balanced_closure,
    degree_zero_monoid,
    dual_taut_check,
    is_loose,
    is_taut,
    torific_ideal,
)
from .hilbert import ConstrainedMonoidSpec, hilbert_basis, hilbert_basis_by_completion
from .ideal import (
    MonoidIdeal,
    _minimalize,
    blowup_charts,
    order_subdivision,
    saturated_power,
    saturation_threshold_by_subdivision,
    saturation_threshold_report,
)
from .monoid import ToricMonoid, as_face, facet_split, faces, saturate, splits_off
from .torify import ModelAction, build_model, quotient_report, torify

SCHEMA_VERSION = "1.0"
EXIT_OK, EXIT_SCHEMA, EXIT_DOMAIN = 0, 2, 3
_SAFE = 2**53

__all__ = ["main", "run", "validate", "encode", "decode_int", "SCHEMA_VERSION"]


# ---------------------------------------------------------------------------
# JSON plumbing


@lru_cache(maxsize=1)
def _validator() -> jsonschema.Draft202012Validator:
    text = resources.files("torific").joinpath("schemas", "documents.json").read_text()
    return jsonschema.Draft202012Validator(json.loads(text))


def validate(doc: Any) -> None:
    errors = sorted(_validator().iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        first = errors[0]
        raise SchemaError(
            f"document does not match the schema: {first.message}",
            path=[str(p) for p in first.absolute_path],
            count=len(errors),
        )


def encode(obj: Any) -> Any:
    """Lists for tuples, decimal strings for integers outside +-2**53."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) > _SAFE else obj
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    raise TypeError(f"cannot encode {type(obj).__name__}")


def decode_int(x: Any) -> int:
    return int(x)


def _vec(v) -> tuple[int, ...]:
    return tuple(decode_int(x) for x in v)


def _mat(rows) -> list[tuple[int, ...]]:
    return [_vec(r) for r in rows]


def dumps(doc: dict) -> str:
    return json.dumps(encode(doc), sort_keys=True, separators=(",", ":")) + "\n"


def document(kind: str, payload: dict, command: str | None = None) -> dict:
    doc = {"schema_version": SCHEMA_VERSION, "kind": kind, "payload": payload}
    if command is not None:
        doc["command"] = command
    return doc


# ---------------------------------------------------------------------------
# payload <-> objects


def parse_group(p: dict) -> FgAbelianGroup:
    return FgAbelianGroup(int(p["free_rank"]), tuple(int(t) for t in p["torsion"]))


def group_payload(g: FgAbelianGroup) -> dict:
    return {"free_rank": g.free_rank, "torsion": list(g.torsion)}


def parse_monoid(p: dict) -> ToricMonoid:
    return ToricMonoid.from_generators(int(p["ambient_rank"]), _mat(p["generators"]), bool(p.get("saturated", False)))


def monoid_payload(m: ToricMonoid) -> dict:
    return {"ambient_rank": m.ambient_rank, "generators": m.generators, "saturated": m.saturated}


def parse_grading(m: ToricMonoid, p: dict) -> Grading:
    return Grading.from_rows(m, parse_group(p["group"]), _mat(p["matrix"]))


def grading_payload(g: Grading) -> dict:
    return {"group": group_payload(g.target), "matrix": g.matrix.rows}


def parse_multiset_list(p: dict) -> tuple[FgAbelianGroup, list[tuple[int, ...]]]:
    """Elements in document order, repeated by multiplicity."""
    group = parse_group(p["group"])
    out = []
    for entry in p["entries"]:
        out.extend([_vec(entry["element"])] * int(entry["mult"]))
    return group, out


def multiset_payload(s: CharacterMultiset) -> dict:
    return {"group": group_payload(s.target), "entries": [{"element": e, "mult": k} for e, k in s.entries]}


def ideal_payload(i: MonoidIdeal) -> dict:
    return {"monoid": monoid_payload(i.parent), "generators": i.gens}


def parse_ideal(p: dict) -> MonoidIdeal:
    m = parse_monoid(p["monoid"])
    return MonoidIdeal(m, _minimalize(m, _mat(p["generators"])))


def parse_model(p: dict) -> ModelAction:
    m = parse_monoid(p["monoid"])
    g = parse_grading(m, p["grading"])
    group, sigma = parse_multiset_list(p["sigma"])
    if group != g.target:
        raise ValueError("sigma and grading use different groups")
    return build_model(m, g, sigma)


def model_payload(model: ModelAction) -> dict:
    return {
        "monoid": monoid_payload(model.monoid),
        "grading": grading_payload(model.grading),
        "sigma": multiset_payload(model.sigma),
    }


def parse_spec(p: dict) -> ConstrainedMonoidSpec:
    return ConstrainedMonoidSpec(
        int(p["ambient_rank"]),
        tuple(_mat(p.get("inequalities", []))),
        tuple(_mat(p.get("equations", []))),
        tuple((_vec(c["row"]), int(c["modulus"])) for c in p.get("congruences", [])),
    )


def spec_payload(s: ConstrainedMonoidSpec) -> dict:
    return {
        "ambient_rank": s.ambient_rank,
        "inequalities": s.inequalities,
        "equations": s.equations,
        "congruences": [{"row": r, "modulus": m} for r, m in s.congruences],
    }


def parse_fan(p: dict) -> KatoFan:
    return KatoFan.from_cones(int(p["rank"]), _mat(p["rays"]), p["cones"])


def fan_payload(f: KatoFan) -> dict:
    rays, cones = f.index_form()
    return {"rank": f.lattice_rank, "rays": rays, "cones": cones}


def parse_fan_action(p: dict) -> FanAction:
    return FanAction(parse_fan(p["fan"]), tuple(_mat(g) for g in p["generators"]))


def fan_action_payload(a: FanAction) -> dict:
    return {"fan": fan_payload(a.fan), "generators": [g.rows for g in a.generators]}


def _cone_payload(c) -> dict:
    return {"rays": c.rays, "lineality": c.lineality, "facets": c.facets, "equations": c.equations}


# ---------------------------------------------------------------------------
# commands


def _expect(doc: dict, *kinds: str) -> dict:
    if doc["kind"] not in kinds:
        raise SchemaError(f"expected a document of kind {' or '.join(kinds)}", got=doc["kind"])
    return doc["payload"]


def _face_indices(text: str | None) -> list[int]:
    if text is None:
        raise SchemaError("--face is required for this command")
    text = text.strip()
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise SchemaError("--face expects comma-separated generator indices", face=text) from None


def cmd_hilbert(args, doc):
    p = _expect(doc, "constrained_spec", "monoid")
    if doc["kind"] == "monoid":
        # saturated sharp monoids keep their Hilbert basis as generators
        m = saturate(parse_monoid(p))
        if not m.is_sharp():
            raise NotPointed("the monoid has nonzero units", units=[list(u) for u in m.unit_lattice.basis])
        basis = m.generators
    else:
        route = hilbert_basis_by_completion if args.method == "completion" else hilbert_basis
        basis = route(parse_spec(p)).elements
    return "report", {"basis": basis, "method": args.method}


def cmd_saturate_monoid(args, doc):
    return "monoid", monoid_payload(saturate(parse_monoid(_expect(doc, "monoid"))))


def cmd_faces(args, doc):
    m = saturate(parse_monoid(_expect(doc, "monoid")))
    out = [
        {
            "indices": sorted(f.generator_subset),
            "generators": f.generators,
            "rank": f.rank,
            "normal": f.supporting_normal,
        }
        for f in faces(m)
    ]
    return "report", {"monoid": monoid_payload(m), "faces": out}


def cmd_split(args, doc):
    m = saturate(parse_monoid(_expect(doc, "monoid")))
    face = as_face(m, _face_indices(args.face))
    res = splits_off(m, face)
    payload = {
        "monoid": monoid_payload(m),
        "face": sorted(face.generator_subset),
        "splits": res.splits,
        "complement": sorted(res.complement.generator_subset) if res.complement else None,
        "facet": face.rank == m.rank - 1,
    }
    if payload["facet"]:
        fs = facet_split(m, face)
        payload["facet_generator"] = fs.generator
        payload["criteria"] = list(fs.criteria)
    return "report", payload


def cmd_saturate_ideal(args, doc):
    i = parse_ideal(_expect(doc, "ideal"))
    return "ideal", ideal_payload(saturated_power(i, args.power))


def cmd_blowup(args, doc):
    i = parse_ideal(_expect(doc, "ideal"))
    charts = blowup_charts(i.parent, i, saturated=not args.unsaturated)
    return "report", {
        "ideal": ideal_payload(i),
        "saturated": not args.unsaturated,
        "charts": [
            {"generator": c.generator, "merged": list(c.indices), "monoid": monoid_payload(c.monoid)} for c in charts
        ],
    }


def cmd_subdivision(args, doc):
    i = parse_ideal(_expect(doc, "ideal"))
    sub = order_subdivision(i)
    return "report", {
        "ideal": ideal_payload(i),
        "support": _cone_payload(sub.support),
        "cells": [
            {"cone": _cone_payload(c), "generators": [i.gens[k] for k in lab]} for c, lab in zip(sub.cells, sub.labels)
        ],
    }


def cmd_threshold(args, doc):
    i = parse_ideal(_expect(doc, "ideal"))
    report = saturation_threshold_report(i.parent, i, window=args.window, cap=args.cap)
    payload = report.to_dict()
    if args.cross_check:
        payload["subdivision_threshold"] = saturation_threshold_by_subdivision(i.parent, i, cap=args.cap)
    return "report", payload


def _grading_doc(doc) -> Grading:
    p = _expect(doc, "grading")
    m = saturate(parse_monoid(p["monoid"]))
    return Grading.from_rows(m, parse_group(p["group"]), _mat(p["matrix"]))


def cmd_degree_zero(args, doc):
    return "monoid", monoid_payload(degree_zero_monoid(_grading_doc(doc)))


def cmd_taut(args, doc):
    g = _grading_doc(doc)
    red, message = g.reduced(warn=False)
    try:
        dual = dual_taut_check(g)
    except TorificError:
        dual = None
    return "report", {
        "taut": is_taut(g),
        "loose": is_loose(g),
        "dual_taut": dual,
        "reduced_group": group_payload(red.target),
        "note": message,
    }


def cmd_torific_ideal(args, doc):
    p = _expect(doc, "graded_multiset", "model_action")
    if doc["kind"] == "model_action":
        model = parse_model(p)
        chi = model.chi
        s = balanced_closure(model.sigma) if args.mode == "balanced" else model.sigma
    else:
        m = saturate(parse_monoid(p["monoid"]))
        chi = parse_grading(m, p["grading"])
        group, elems = parse_multiset_list(p["multiset"])
        if group != chi.target:
            raise ValueError("multiset and grading use different groups")
        s = CharacterMultiset.from_elements(group, elems)
    return "ideal", ideal_payload(torific_ideal(chi, s))


def torify_payload(report) -> dict:
    chi = report.model.chi
    return {
        "input": model_payload(report.model),
        "mode": report.mode,
        "P": monoid_payload(report.model.P),
        "chi": grading_payload(chi),
        "removed": report.model.removed,
        "S": multiset_payload(report.S),
        "ideal": list(report.ideal.gens),
        "vacuous": report.vacuous,
        "input_taut": report.input_taut,
        "input_loose": report.input_loose,
        "toroidal": report.toroidal,
        "notes": list(report.notes),
        "charts": [
            {
                "generator": c.generator,
                "merged": list(c.merged),
                "monoid": monoid_payload(c.monoid),
                "grading": grading_payload(chi.with_monoid(c.monoid)),
                "exceptional": c.exceptional,
                "removed": c.removed,
                "kept": c.kept,
                "toroidal": c.toroidal,
                "taut": c.taut,
                "loose": c.loose,
            }
            for c in report.charts
        ],
    }


def cmd_torify(args, doc):
    model = parse_model(_expect(doc, "model_action"))
    return "report", torify_payload(torify(model, args.mode))


def cmd_quotient(args, doc):
    model = parse_model(_expect(doc, "model_action"))
    s = balanced_closure(model.sigma) if args.mode == "balanced" else model.sigma
    ideal = torific_ideal(model.chi, s)
    q = quotient_report(model.chi, ideal, s)
    return "report", {
        "mode": args.mode,
        "S": multiset_payload(s),
        "degree_zero": monoid_payload(q.degree_zero),
        "invariant_ideal": list(q.invariant_ideal.gens),
        "balanced": q.balanced,
        "quotient_charts": [{"generator": a, "monoid": monoid_payload(m)} for a, m in q.quotient_charts],
        "charts_match": q.charts_match,
    }


def cmd_fan_barycentric(args, doc):
    return "fan", fan_payload(barycentric_subdivision(parse_fan(_expect(doc, "fan"))))


def cmd_fan_simple(args, doc):
    a = parse_fan_action(_expect(doc, "fan_action"))
    if args.barycentric:
        a = a.on(barycentric_subdivision(a.fan))
    return "report", {"simple": is_action_simple(a), "order": a.order, "barycentric": args.barycentric}


def _corpus_item(kind: str, obj) -> dict:
    if kind == "constrained_spec":
        payload = spec_payload(obj)
    elif kind == "monoid":
        payload = monoid_payload(obj)
    elif kind == "grading":
        payload = {"monoid": monoid_payload(obj.monoid), **grading_payload(obj)}
    elif kind == "ideal":
        payload = ideal_payload(obj)
    elif kind == "model_action":
        payload = model_payload(obj)
    else:  # fan_action
        payload = fan_action_payload(obj)
    return document(kind, payload)


def cmd_corpus(args, doc):
    rng = random.Random(args.seed)
    if args.kind == "fan_action":
        suite = symmetric_fan_suite()
        items = [_corpus_item("fan_action", rng.choice(suite)[1]) for _ in range(args.count)]
    else:
        gen = GENERATORS[args.kind]
        items = [_corpus_item(args.kind, gen(rng)) for _ in range(args.count)]
    return "corpus", {"seed": args.seed, "items": items}


COMMANDS: dict[str, tuple[Callable, str]] = {
    "hilbert": (cmd_hilbert, "Hilbert basis of a constrained monoid or of a monoid's saturation"),
    "saturate-monoid": (cmd_saturate_monoid, "saturation of a monoid"),
    "faces": (cmd_faces, "face lattice of a sharp monoid"),
    "split": (cmd_split, "whether a face splits off (with facet criteria)"),
    "saturate-ideal": (cmd_saturate_ideal, "saturation of a power of an ideal"),
    "blowup": (cmd_blowup, "blowup charts of an ideal"),
    "subdivision": (cmd_subdivision, "order-function subdivision of an ideal"),
    "threshold": (cmd_threshold, "certified saturation threshold"),
    "degree-zero": (cmd_degree_zero, "degree-zero monoid of a grading"),
    "taut": (cmd_taut, "taut and loose checks for a grading"),
    "torific-ideal": (cmd_torific_ideal, "torific ideal of a character multiset"),
    "torify": (cmd_torify, "model-case torification report"),
    "quotient": (cmd_quotient, "degree-zero quotient data of a torification"),
    "fan-barycentric": (cmd_fan_barycentric, "barycentric subdivision of a fan"),
    "fan-simple": (cmd_fan_simple, "simpleness of a finite fan action"),
    "corpus": (cmd_corpus, "seeded random instances"),
}

_NO_INPUT = {"corpus"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="torific", description="Toric monoids, torific ideals and Kato fans.")
    parser.add_argument("--version", action="version", version=f"torific {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        if name not in _NO_INPUT:
            p.add_argument("--in", dest="infile", default="-", help="input document (default stdin)")
        p.add_argument("--out", dest="outfile", default="-", help="output file (default stdout)")
        if name == "hilbert":
            p.add_argument("--method", choices=["primary", "completion"], default="primary")
        if name == "split":
            p.add_argument("--face", help="comma-separated generator indices")
        if name == "saturate-ideal":
            p.add_argument("--power", type=int, default=1)
        if name == "blowup":
            p.add_argument("--unsaturated", action="store_true")
        if name == "threshold":
            p.add_argument("--cap", type=int, default=16)
            p.add_argument("--window", type=int, default=3)
            p.add_argument("--cross-check", action="store_true", help="also run the subdivision search")
        if name in ("torify", "quotient", "torific-ideal"):
            p.add_argument("--mode", choices=["balanced", "raw"], default="balanced")
        if name == "fan-simple":
            p.add_argument("--barycentric", action="store_true", help="subdivide before checking")
        if name == "corpus":
            p.add_argument("--kind", choices=sorted([*GENERATORS, "fan_action"]), default="model_action")
            p.add_argument("--count", type=int, default=10)
            p.add_argument("--seed", type=int, default=0)
    return parser


def _error_doc(exc: TorificError) -> dict:
    return document("error", exc.to_dict())


def run(argv: list[str], stdin: str = "") -> tuple[str, int]:
    """Run one command; returns (stdout text, exit code)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse has already printed help or a usage error
        return "", EXIT_OK if exc.code in (0, None) else EXIT_SCHEMA
    func, _ = COMMANDS[args.command]
    try:
        doc = None
        if args.command not in _NO_INPUT:
            text = stdin if args.infile == "-" else _read(args.infile)
            try:
                doc = json.loads(text)
            except json.JSONDecodeError as exc:
                raise SchemaError("input is not valid JSON", line=exc.lineno, column=exc.colno) from None
            validate(doc)
        kind, payload = func(args, doc)
        out = document(kind, payload, args.command if kind == "report" else None)
        code = EXIT_OK
    except SchemaError as exc:
        out, code = _error_doc(exc), EXIT_SCHEMA
    except TorificError as exc:
        out, code = _error_doc(exc), EXIT_DOMAIN
    except (ValueError, KeyError, TypeError) as exc:
        out, code = _error_doc(SchemaError(f"invalid input: {exc}")), EXIT_SCHEMA
    text = dumps(out)
    if code == EXIT_OK and args.outfile != "-":
        with open(args.outfile, "w") as fh:
            fh.write(text)
        return "", code
    return text, code


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise SchemaError(f"cannot read input: {exc.strerror}", path=path) from None


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    needs_stdin = bool(argv) and argv[0] in COMMANDS and argv[0] not in _NO_INPUT and "--in" not in argv
    stdin = sys.stdin.read() if needs_stdin else ""
    text, code = run(argv, stdin)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
