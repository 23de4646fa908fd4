"""Proof trees and the proof checker."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .core import Compound, DiagramError
from .rules import BINARY, RULES, RuleError, RuleInstance, apply_instance, rule_family

KINDS = ("premise", "assert", "rule")


@dataclass(frozen=True)
class ProofTree:
    conclusion: Compound
    kind: str = "premise"
    rule: Optional[str] = None
    params: dict = field(default_factory=dict)
    children: tuple = ()

    @classmethod
    def premise(cls, d):
        return cls(d, "premise")

    @classmethod
    def assertion(cls, d):
        return cls(d, "assert")

    @classmethod
    def step(cls, conclusion, inst: RuleInstance, children):
        return cls(conclusion, "rule", inst.rule, inst.to_json(), tuple(children))

    def instance(self) -> RuleInstance:
        return RuleInstance.from_json(self.rule, self.params)

    def nodes(self):
        yield self
        for c in self.children:
            yield from c.nodes()

    def rules_used(self) -> Counter:
        return Counter(rule_family(n.rule) for n in self.nodes() if n.kind == "rule")

    def leaves(self, kind: str) -> list:
        return [n.conclusion for n in self.nodes() if n.kind == kind]

    def size(self) -> int:
        return sum(1 for _ in self.nodes())

    def depth(self) -> int:
        if self.kind != "rule":
            return 0
        return 1 + max(c.depth() for c in self.children)


@dataclass
class CheckReport:
    valid: bool
    steps_checked: int
    first_failure: Optional[tuple] = None  # (path, reason)
    premises: list = field(default_factory=list)
    assertions: list = field(default_factory=list)

    def to_json(self) -> dict:
        from .dsl import compound_to_json
        return {
            "valid": self.valid,
            "steps_checked": self.steps_checked,
            "first_failure": None if self.first_failure is None else
            {"path": list(self.first_failure[0]), "reason": self.first_failure[1]},
            "premises": [compound_to_json(p) for p in self.premises],
            "assertions": [compound_to_json(a) for a in self.assertions],
        }


def check_proof(t: ProofTree, allowed_premises: Iterable[Compound]) -> CheckReport:
    allowed = {p.canonical for p in allowed_premises}
    rep = CheckReport(True, 0)

    def fail(path, reason):
        if rep.first_failure is None:
            rep.first_failure = (tuple(path), reason)
            rep.valid = False

    def walk(node: ProofTree, path):
        for i, c in enumerate(node.children):
            walk(c, path + [i])
        if node.kind == "premise":
            rep.premises.append(node.conclusion)
            if node.conclusion.canonical not in allowed:
                fail(path, "premise is not among the allowed premises")
            return
        if node.kind == "assert":
            rep.assertions.append(node.conclusion)
            return
        if node.kind != "rule":
            fail(path, f"unknown justification kind {node.kind!r}")
            return
        rep.steps_checked += 1
        if node.rule not in RULES:
            fail(path, f"unknown rule {node.rule!r}")
            return
        arity = len(node.children)
        if node.rule in BINARY:
            ok = arity == 2 or (node.rule == "CopySpider" and arity == 1)
        else:
            ok = arity == 1
        if not ok:
            fail(path, f"{node.rule} cannot take {arity} children")
            return
        try:
            inst = node.instance()
            second = node.children[1].conclusion if arity == 2 else None
            got = apply_instance(node.children[0].conclusion, inst, second)
        except (RuleError, DiagramError) as e:
            fail(path, str(e))
            return
        if got != node.conclusion:
            fail(path, f"{node.rule} does not produce the recorded conclusion")

    walk(t, [])
    return rep


# JSON

class ProofSchemaError(ValueError):
    pass


def proof_to_obj(t: ProofTree) -> dict:
    from .dsl import compound_to_json
    just: dict = {"kind": t.kind}
    if t.kind == "rule":
        just["rule"] = t.rule
        just["params"] = t.params
        just["children"] = [proof_to_obj(c) for c in t.children]
    return {"conclusion": compound_to_json(t.conclusion), "just": just}


def proof_from_obj(obj, path="$") -> ProofTree:
    from .dsl import DslError, compound_from_json
    if not isinstance(obj, dict):
        raise ProofSchemaError(f"{path}: proof node must be an object")
    for k in obj:
        if k not in ("conclusion", "just"):
            raise ProofSchemaError(f"{path}: unknown key {k!r}")
    if "conclusion" not in obj or "just" not in obj:
        raise ProofSchemaError(f"{path}: proof node needs 'conclusion' and 'just'")
    try:
        concl = compound_from_json(obj["conclusion"])
    except (DslError, DiagramError) as e:
        raise ProofSchemaError(f"{path}.conclusion: {e}") from None
    just = obj["just"]
    if not isinstance(just, dict):
        raise ProofSchemaError(f"{path}.just: must be an object")
    for k in just:
        if k not in ("kind", "rule", "params", "children"):
            raise ProofSchemaError(f"{path}.just: unknown key {k!r}")
    kind = just.get("kind")
    if kind not in KINDS:
        raise ProofSchemaError(f"{path}.just: kind must be one of {KINDS}")
    if kind != "rule":
        return ProofTree(concl, kind)
    if "rule" not in just:
        raise ProofSchemaError(f"{path}.just: rule application is missing 'rule'")
    kids = just.get("children", [])
    if not isinstance(kids, list):
        raise ProofSchemaError(f"{path}.just.children: must be a list")
    params = just.get("params", {})
    if not isinstance(params, dict):
        raise ProofSchemaError(f"{path}.just.params: must be an object")
    children = tuple(proof_from_obj(c, f"{path}.just.children[{i}]") for i, c in enumerate(kids))
    return ProofTree(concl, "rule", just["rule"], params, children)


def proof_to_json(t: ProofTree) -> str:
    from .dsl import dumps
    return dumps(proof_to_obj(t))


def proof_from_json(text: str) -> ProofTree:
    from .dsl import loads
    return proof_from_obj(loads(text))


def proof_canonical(t: ProofTree) -> tuple:
    return (t.conclusion.canonical, t.kind, t.rule,
            repr(sorted(t.params.items())) if t.params else "",
            tuple(proof_canonical(c) for c in t.children))
