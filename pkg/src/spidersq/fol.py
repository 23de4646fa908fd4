"""First-order translation of unitary diagrams and a finite-model evaluator."""
from __future__ import annotations

from dataclasses import dataclass

from .core import DiagramError, UnitaryDiagram, Zone, check_unitary, sorted_zones


class FolSentence:
    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class TrueF(FolSentence):
    pass


@dataclass(frozen=True)
class FalseF(FolSentence):
    pass


@dataclass(frozen=True)
class Pred(FolSentence):
    label: str
    var: str


@dataclass(frozen=True)
class Eq(FolSentence):
    a: str
    b: str


@dataclass(frozen=True)
class Not(FolSentence):
    body: FolSentence


@dataclass(frozen=True)
class Conj(FolSentence):
    parts: tuple


@dataclass(frozen=True)
class Disj(FolSentence):
    parts: tuple


@dataclass(frozen=True)
class Implies(FolSentence):
    lhs: FolSentence
    rhs: FolSentence


@dataclass(frozen=True)
class Forall(FolSentence):
    var: str
    body: FolSentence


@dataclass(frozen=True)
class Exists(FolSentence):
    var: str
    body: FolSentence


def conj(*parts):
    parts = tuple(p for p in parts if not isinstance(p, TrueF))
    if not parts:
        return TrueF()
    return parts[0] if len(parts) == 1 else Conj(parts)


def disj(*parts):
    parts = tuple(p for p in parts if not isinstance(p, FalseF))
    if not parts:
        return FalseF()
    return parts[0] if len(parts) == 1 else Disj(parts)


def zone_formula(z: Zone, var: str) -> FolSentence:
    return conj(*[Pred(l, var) for l in sorted(z.ins)],
                *[Not(Pred(l, var)) for l in sorted(z.outs)])


def to_fol(d: UnitaryDiagram) -> FolSentence:
    check_unitary(d)
    spiders = []  # (variable, habitat)
    for e in d.entries():
        for _ in range(e.count):
            spiders.append((f"s{len(spiders) + 1}", e.habitat))
    parts = []
    for z in d.missing_zones():
        parts.append(Forall("x", Not(zone_formula(z, "x"))))
    for z in sorted_zones(d.shaded):
        eqs = [Eq("x", v) for v, h in spiders if z in h]
        parts.append(Forall("x", Implies(zone_formula(z, "x"), disj(*eqs))))
    for i, (v, _) in enumerate(spiders):
        for w, _ in spiders[i + 1:]:
            parts.append(Not(Eq(v, w)))
    for v, h in spiders:
        parts.append(disj(*[zone_formula(z, v) for z in sorted_zones(h)]))
    body = conj(*parts)
    for v, _ in reversed(spiders):
        body = Exists(v, body)
    return body


def evaluate(phi: FolSentence, I, env=None) -> bool:
    """Truth of ``phi`` in the finite interpretation ``I``."""
    env = env or {}
    if isinstance(phi, TrueF):
        return True
    if isinstance(phi, FalseF):
        return False
    if isinstance(phi, Pred):
        if phi.label not in I.assignment:
            raise DiagramError(f"unknown predicate {phi.label}")
        return env[phi.var] in I.assignment[phi.label]
    if isinstance(phi, Eq):
        return env[phi.a] == env[phi.b]
    if isinstance(phi, Not):
        return not evaluate(phi.body, I, env)
    if isinstance(phi, Conj):
        return all(evaluate(p, I, env) for p in phi.parts)
    if isinstance(phi, Disj):
        return any(evaluate(p, I, env) for p in phi.parts)
    if isinstance(phi, Implies):
        return not evaluate(phi.lhs, I, env) or evaluate(phi.rhs, I, env)
    if isinstance(phi, Forall):
        return all(evaluate(phi.body, I, {**env, phi.var: e}) for e in I.universe)
    if isinstance(phi, Exists):
        return any(evaluate(phi.body, I, {**env, phi.var: e}) for e in I.universe)
    raise TypeError(f"not a sentence: {phi!r}")


def render(phi: FolSentence) -> str:
    if isinstance(phi, TrueF):
        return "true"
    if isinstance(phi, FalseF):
        return "false"
    if isinstance(phi, Pred):
        return f"{phi.label}({phi.var})"
    if isinstance(phi, Eq):
        return f"{phi.a} = {phi.b}"
    if isinstance(phi, Not):
        return f"~{render(phi.body)}"
    if isinstance(phi, Conj):
        return "(" + " & ".join(render(p) for p in phi.parts) + ")"
    if isinstance(phi, Disj):
        return "(" + " | ".join(render(p) for p in phi.parts) + ")"
    if isinstance(phi, Implies):
        return f"({render(phi.lhs)} -> {render(phi.rhs)})"
    if isinstance(phi, Forall):
        return f"forall {phi.var}. {render(phi.body)}"
    if isinstance(phi, Exists):
        return f"exists {phi.var}. {render(phi.body)}"
    raise TypeError(f"not a sentence: {phi!r}")
