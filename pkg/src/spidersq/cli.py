"""Command-line interface: ``spidersq``."""
from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .core import DiagramError, UnitaryDiagram
from .dsl import (Document, DslError, compound_to_json, diagram_text, dumps, load_json,
                  parse_file)
from .proof import ProofSchemaError, check_proof, proof_from_json, proof_to_json
from .rules import RuleError, RuleInstance, apply_instance
from .search import SearchConfig, Searcher
from .semantics import count_models, entails, models


class CliError(Exception):
    pass


def _load_doc(path) -> Document:
    try:
        if path.endswith(".json"):
            with open(path, encoding="utf-8") as f:
                doc = load_json(f.read())
            if not isinstance(doc, Document):
                raise CliError(f"{path}: not a diagram document")
            return doc
        return parse_file(path)
    except OSError as e:
        raise CliError(f"{path}: {e.strerror}") from None
    except DslError as e:
        raise CliError(f"{path}: {e}") from None


def _split_ref(ref: str):
    if os.path.exists(ref) or ":" not in ref:
        return ref, None
    path, names = ref.rsplit(":", 1)
    return path, [n for n in names.split(",") if n]


def _resolve(ref: str) -> list:
    path, names = _split_ref(ref)
    doc = _load_doc(path)
    if names is None:
        names = doc.names()
    try:
        return [doc.get(n) for n in names]
    except DslError as e:
        raise CliError(f"{path}: {e}") from None


def _get(doc: Document, name: str):
    try:
        return doc.get(name)
    except DslError as e:
        raise CliError(str(e)) from None


def _out(args, text):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _log(args, msg):
    if not args.quiet:
        print(msg, file=sys.stderr)


def cmd_parse(args):
    doc = _load_doc(args.file)
    from .dsl import emit_json
    _out(args, emit_json(doc))
    return 0


def cmd_models(args):
    doc = _load_doc(args.file)
    D = _get(doc, args.name)
    if args.size < 0:
        raise CliError("--size must be non-negative")
    _out(args, str(count_models(D, args.size)))
    if args.list:
        for I in models(D, args.size):
            _out(args, json.dumps(I.to_json(), sort_keys=True))
    return 0


def cmd_entails(args):
    doc = _load_doc(args.file)
    if args.bound < 0:
        raise CliError("--bound must be non-negative")
    try:
        v = entails(_get(doc, args.lhs), _get(doc, args.rhs), args.bound)
    except DiagramError as e:
        raise CliError(str(e)) from None
    if v.holds:
        _out(args, f"holds up to |U| <= {args.bound}")
        return 0
    _out(args, "countermodel: " + json.dumps(v.countermodel.to_json(), sort_keys=True))
    return 1


def cmd_apply(args):
    doc = _load_doc(args.file)
    D = _get(doc, args.name)
    try:
        params = json.loads(args.params)
    except json.JSONDecodeError as e:
        raise CliError(f"--params: {e.msg}") from None
    if not isinstance(params, dict):
        raise CliError("--params must be a JSON object")
    second = None
    if "with" in params:
        second = _get(doc, params.pop("with"))
    try:
        out = apply_instance(D, RuleInstance.from_json(args.rule, params), second)
    except (RuleError, DiagramError) as e:
        raise CliError(str(e)) from None
    _out(args, dumps(compound_to_json(out)))
    return 0


def cmd_check(args):
    try:
        with open(args.proof, encoding="utf-8") as f:
            t = proof_from_json(f.read())
    except OSError as e:
        raise CliError(f"{args.proof}: {e.strerror}") from None
    except (ProofSchemaError, DslError) as e:
        raise CliError(f"{args.proof}: {e}") from None
    premises = [p for ref in args.premises for p in _resolve(ref)]
    rep = check_proof(t, premises)
    _out(args, dumps(rep.to_json()))
    return 0 if rep.valid else 1


def cmd_derive(args):
    premises = [p for ref in args.premises for p in _resolve(ref)]
    assertions = [a for ref in (args.assertions or []) for a in _resolve(ref)]
    for a in assertions:
        if not isinstance(a, UnitaryDiagram):
            raise CliError("assertions must be unitary diagrams")
    goals = _resolve(args.goal)
    if len(goals) != 1:
        raise CliError("--goal must name exactly one diagram")
    try:
        cfg = SearchConfig(max_depth=args.max_depth, premises=premises, assertions=assertions)
    except ValueError as e:
        raise CliError(str(e)) from None
    t = Searcher(cfg).derive(goals[0])
    if t is None:
        _log(args, f"no derivation within depth {args.max_depth}")
        return 1
    _out(args, proof_to_json(t))
    return 0


def cmd_square(args):
    from .greimas import SquareSpec, build_square
    from .render import render_dot
    try:
        spec = SquareSpec(args.s1, args.s2)
    except ValueError as e:
        raise CliError(str(e)) from None
    t0 = time.perf_counter()
    rep = build_square(spec, bound=args.bound, max_depth=args.max_depth)
    out = args.out
    os.makedirs(os.path.join(out, "proofs"), exist_ok=True)
    corners = "\n\n".join(diagram_text(n, d) for n, d in rep.corners.items())
    metas = "\n\n".join(diagram_text(d.tag, d.goal) for d in rep.derivations if d.tag in rep.meta_terms())
    _write(os.path.join(out, "corners.sq"), corners + "\n")
    _write(os.path.join(out, "meta_terms.sq"), metas + "\n")
    summary = {"s1": spec.s1_name, "s2": spec.s2_name, "labels": rep.meta,
               "bound": rep.bound, "max_depth": rep.max_depth,
               "relations": rep.relations, "derivations": []}
    for d in rep.derivations:
        _write(os.path.join(out, "proofs", f"{d.name}.json"), proof_to_json(d.proof))
        _write(os.path.join(out, "proofs", f"{d.name}.dot"), render_dot(d.proof))
        summary["derivations"].append({
            "name": d.name, "tag": d.tag, "depth": d.proof.depth(),
            "rules": dict(sorted(d.proof.rules_used().items())),
            "premises": [compound_to_json(p) for p in d.premises],
            "assertions": [compound_to_json(a) for a in d.assertions],
            "goal": compound_to_json(d.goal),
            **rep.checks[d.name],
        })
    _write(os.path.join(out, "square.dot"), render_dot(rep))
    _write(os.path.join(out, "summary.json"), dumps(summary))
    _log(args, f"wrote {len(rep.derivations)} proofs to {out} in {time.perf_counter() - t0:.1f}s")
    return 0


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="accepted for compatibility; the engine is deterministic")
    p = argparse.ArgumentParser(prog="spidersq", description="Unitary spider diagram toolkit.")
    p.add_argument("--quiet", action="store_true")
    p.add_argument("--seed", type=int)
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("parse", parents=[common], help="parse a diagram file, print canonical JSON")
    s.add_argument("file")
    s.set_defaults(func=cmd_parse)

    s = sub.add_parser("models", parents=[common], help="count models of a named diagram")
    s.add_argument("file")
    s.add_argument("--name", required=True)
    s.add_argument("--size", type=int, required=True)
    s.add_argument("--list", action="store_true")
    s.set_defaults(func=cmd_models)

    s = sub.add_parser("entails", parents=[common], help="bounded entailment check")
    s.add_argument("file")
    s.add_argument("--lhs", required=True)
    s.add_argument("--rhs", required=True)
    s.add_argument("--bound", type=int, default=3)
    s.set_defaults(func=cmd_entails)

    s = sub.add_parser("apply", parents=[common], help="apply one rule instance")
    s.add_argument("file")
    s.add_argument("--name", required=True)
    s.add_argument("--rule", required=True)
    s.add_argument("--params", default="{}")
    s.set_defaults(func=cmd_apply)

    s = sub.add_parser("check", parents=[common], help="check a proof tree")
    s.add_argument("proof")
    s.add_argument("--premises", nargs="+", required=True)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("derive", parents=[common], help="search for a derivation")
    s.add_argument("--premises", nargs="+", required=True)
    s.add_argument("--assert", dest="assertions", nargs="+")
    s.add_argument("--goal", required=True)
    s.add_argument("--max-depth", type=int, default=8)
    s.set_defaults(func=cmd_derive)

    s = sub.add_parser("square", parents=[common], help="build the semiotic square")
    s.add_argument("--s1", required=True)
    s.add_argument("--s2", required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--bound", type=int, default=3)
    s.add_argument("--max-depth", type=int, default=8)
    s.set_defaults(func=cmd_square)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    from .greimas import SquareError
    try:
        return args.func(args)
    except (CliError, SquareError) as e:
        print(f"spidersq: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
