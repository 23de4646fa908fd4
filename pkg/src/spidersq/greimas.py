"""The semiotic square over the nested language S1, S2 ⊆ M ⊆ X."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from .core import And, DiagramError, UnitaryDiagram, Zone, make_diagram, zone
from .proof import ProofTree, check_proof
from .search import SearchConfig, Searcher
from .semantics import Interpretation, entails, region_denotation

LABELS = frozenset({"S1", "S2", "M", "X"})

ZONE_INS = {
    "z1": ("S1", "M", "X"),
    "z2": ("S2", "M", "X"),
    "z12": ("S1", "S2", "M", "X"),
    "zM": ("M", "X"),
    "zX": ("X",),
    "z0": (),
}


class SquareError(RuntimeError):
    pass


def Z(name: str) -> Zone:
    return zone(ZONE_INS[name], LABELS)


def canonical_language():
    zones = frozenset(Z(n) for n in ZONE_INS)
    return LABELS, zones, frozenset({Z("z12")})


def diagram(*habitats) -> UnitaryDiagram:
    """Canonical-language diagram with one spider per habitat (tuple of zone names)."""
    return make_diagram(LABELS, ZONE_INS.values(), [ZONE_INS["z12"]],
                        [(1, [ZONE_INS[z] for z in h]) for h in habitats])


_CORNERS = {
    "d1": (("z1",),),
    "d2": (("z2", "zX"),),
    "d3": (("z2",),),
    "d4": (("z1", "zX"),),
}
ALIASES = {"d5": "d2", "d6": "d3", "d7": "d4", "d8": "d1"}


def corner(which: str) -> UnitaryDiagram:
    which = ALIASES.get(which, which)
    if which not in _CORNERS:
        raise ValueError(f"unknown corner {which!r}")
    return diagram(*_CORNERS[which])


def negation(i: int) -> UnitaryDiagram:
    """The diagrammatic negation of S_i."""
    return corner({1: "d2", 2: "d4"}[i])


def _in_language(*ds):
    labels, zones, _ = canonical_language()
    for d in ds:
        if d.labels != labels or d.zones != zones:
            raise DiagramError("diagram is not over the canonical language")


def _single_spider(d) -> Optional[frozenset]:
    if d.spider_total() != 1:
        return None
    return next(iter(d.spiders)).habitat


def contrariety_check(dA: UnitaryDiagram, dB: UnitaryDiagram) -> bool:
    _in_language(dA, dB)
    ha, hb = _single_spider(dA), _single_spider(dB)
    if ha is None or hb is None:
        return False
    shade = frozenset({Z("z12")})
    if dA.shaded != shade or dB.shaded != shade:
        return False
    pair = {ha, hb}
    return pair == {frozenset({Z("z1")}), frozenset({Z("z2")})}


def implication_check(dA: UnitaryDiagram, dB: UnitaryDiagram, i: int) -> bool:
    _in_language(dA, dB)
    if i not in (1, 2):
        raise ValueError("i must be 1 or 2")
    if dA != negation(i):
        return False
    hb = _single_spider(dB)
    zj = Z("z2" if i == 1 else "z1")
    if hb != frozenset({zj}):
        return False
    if dA.shaded != dB.shaded:
        return False
    return hb <= _single_spider(dA)


# Prop: habitat of the negation under an interpretation

def _nesting_ok(I: Interpretation) -> bool:
    s1, s2, m, x = (I.extension(l) for l in ("S1", "S2", "M", "X"))
    return s1 <= m and s2 <= m and m <= x and not (s1 & s2)


def negation_denotation(I: Interpretation, i: int) -> frozenset:
    if not _nesting_ok(I):
        raise ValueError("interpretation violates S1, S2 ⊆ M ⊆ X with S1 ∩ S2 = ∅")
    return region_denotation(I, _single_spider(negation(i)))


def proposition_check(I: Interpretation, i: int) -> bool:
    den = negation_denotation(I, i)
    j = 3 - i
    si, sj = I.extension(f"S{i}"), I.extension(f"S{j}")
    s1, s2, m, x = (I.extension(l) for l in ("S1", "S2", "M", "X"))
    if den != (sj - si) | (x - (m | s1 | s2)):
        return False
    complement = x - si
    strict = den < complement
    return strict == bool(m - (s1 | s2))


# meta-terms

TARGETS = {
    "S": (("z1",), ("z2",), ("zM",)),
    "Sbar": (("z1", "zX"), ("z2", "zX"), ("zM",)),
    "Pos": (("z1", "zX"), ("zM",)),
    "Neg": (("z2", "zX"), ("zM",)),
    "PosSchema": (("z1",), ("z2", "zX"), ("zM",)),
    "NegSchema": (("z2",), ("z1", "zX"), ("zM",)),
}

PAIRS = {
    "S": ("d1", "d3"),
    "Sbar": ("d2", "d4"),
    "Pos": ("d1", "d4"),
    "Neg": ("d3", "d2"),
    "PosSchema": ("d1", "d2"),
    "NegSchema": ("d3", "d4"),
}

META_TAGS = tuple(TARGETS)


def meta_term_target(tag: str) -> UnitaryDiagram:
    if tag not in TARGETS:
        raise ValueError(f"unknown meta-term {tag!r}")
    return diagram(*TARGETS[tag])


def m_witness() -> UnitaryDiagram:
    return diagram(("zM",))


def neutral_axis() -> UnitaryDiagram:
    """Both negation witnesses as two distinct spiders of one diagram."""
    return diagram(("z1", "zX"), ("z2", "zX"))


def meta_term_pool(tag: str) -> list:
    """Assertions available to the meta-term search.

    The neutral term also receives the unitary neutral-axis diagram: the
    conjunction of the two negations cannot separate their witnesses (both
    may sit on one element of X), so the target is not reachable soundly
    without it.
    """
    pool = [m_witness()]
    if tag == "Sbar":
        pool.append(neutral_axis())
    return pool


def meta_term_clauses(d: UnitaryDiagram, tag: str) -> dict:
    a, b = (corner(c) for c in PAIRS[tag])
    habs = [e.habitat for e in d.spiders]
    inputs = [e.habitat for x in (a, b) for e in x.spiders]
    zm = frozenset({Z("zM")})
    return {
        1: all(any(h <= g for g in habs) for h in inputs),
        2: d.count_at(zm) >= 1,
        3: d.count_at(zm) >= 1 and all(any(h <= g and not g & zm for g in habs) for h in inputs),
        4: d.shaded == frozenset({Z("z12")}),
    }


@dataclass
class Derivation:
    tag: str
    name: str
    premises: list
    assertions: list
    goal: UnitaryDiagram
    proof: Optional[ProofTree]
    seconds: float = 0.0

    def premise(self):
        return self.premises[0]


def derivation_plan() -> list:
    """(name, tag, premises, assertions, goal) for the ten square derivations."""
    c = corner
    plan = [
        ("T1", "d1->d2", [c("d1")], [c("d2")], c("d2")),
        ("T2", "d3->d4", [c("d3")], [c("d4")], c("d4")),
        ("T3", "d5->d6", [c("d5")], [c("d6")], c("d6")),
        ("T4", "d7->d8", [c("d7")], [c("d8")], c("d8")),
    ]
    for k, tag in enumerate(META_TAGS):
        a, b = PAIRS[tag]
        plan.append((f"T{5 + k}", tag, [And(c(a), c(b))], meta_term_pool(tag), meta_term_target(tag)))
    return plan


_DERIVED: dict = {}


def run_derivation(name, tag, premises, assertions, goal, max_depth=8) -> Derivation:
    """Search once per distinct problem; results are deterministic so they are memoized."""
    key = (tuple(p.canonical for p in premises), tuple(a.canonical for a in assertions),
           goal.canonical, max_depth)
    t0 = time.perf_counter()
    if key not in _DERIVED:
        cfg = SearchConfig(max_depth=max_depth, premises=premises, assertions=assertions)
        _DERIVED[key] = Searcher(cfg).derive(goal)
    return Derivation(tag, name, premises, assertions, goal, _DERIVED[key], time.perf_counter() - t0)


def derive_meta_term(tag: str, max_depth: int = 8) -> ProofTree:
    for name, t, p, a, g in derivation_plan():
        if t == tag:
            d = run_derivation(name, t, p, a, g, max_depth)
            if d.proof is None:
                raise SquareError(f"{tag}: no derivation within depth {max_depth}")
            return d.proof
    raise ValueError(f"unknown meta-term {tag!r}")


@dataclass
class SquareSpec:
    s1_name: str
    s2_name: str

    def __post_init__(self):
        if not self.s1_name or not self.s2_name:
            raise ValueError("seme names must be nonempty")
        if self.s1_name == self.s2_name:
            raise ValueError("seme names must be distinct")


@dataclass
class SquareReport:
    spec: SquareSpec
    corners: dict
    derivations: list
    checks: dict
    relations: dict
    bound: int
    max_depth: int
    meta: dict = field(default_factory=dict)

    @property
    def complex_axis(self):
        return (self.corners["d1"], self.corners["d3"])

    @property
    def neutral_axis(self):
        return (self.corners["d2"], self.corners["d4"])

    def meta_terms(self) -> dict:
        return {d.tag: (d.goal, d.proof) for d in self.derivations if d.tag in TARGETS}


def build_square(spec: SquareSpec, bound: int = 3, max_depth: int = 8) -> SquareReport:
    corners = {n: corner(n) for n in ("d1", "d2", "d3", "d4", "d5", "d6", "d7", "d8")}
    derivs = []
    checks = {}
    for name, tag, prem, asserts, goal in derivation_plan():
        d = run_derivation(name, tag, prem, asserts, goal, max_depth)
        if d.proof is None:
            raise SquareError(f"{name} ({tag}): no derivation within depth {max_depth}")
        rep = check_proof(d.proof, prem)
        if not rep.valid:
            raise SquareError(f"{name} ({tag}): proof does not check: {rep.first_failure}")
        for a in rep.assertions:
            if a not in asserts:
                raise SquareError(f"{name} ({tag}): assertion outside the pool")
        ctx = prem[0]
        for a in asserts:
            ctx = And(ctx, a)
        ent = entails(ctx, d.proof.conclusion, bound)
        info = {"valid": rep.valid, "steps": rep.steps_checked,
                "entailed_with_assertions": ent.holds,
                "conclusion_matches_goal": d.proof.conclusion == goal}
        if tag in TARGETS:
            info["clauses"] = {str(k): v for k, v in meta_term_clauses(d.proof.conclusion, tag).items()}
        checks[name] = info
        derivs.append(d)
    base = ("d1", "d2", "d3", "d4")
    relations = {
        "contrariety": {f"{a},{b}": contrariety_check(corners[a], corners[b])
                        for a in base for b in base if a < b},
        "implication": {f"{a},{b},{i}": implication_check(corners[a], corners[b], i)
                        for a, i in (("d2", 1), ("d4", 2)) for b in base},
    }
    return SquareReport(spec, corners, derivs, checks, relations, bound, max_depth,
                        {"S1": spec.s1_name, "S2": spec.s2_name})
