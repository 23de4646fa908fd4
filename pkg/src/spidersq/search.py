"""Iterative-deepening proof search.

The main line of a derivation starts at a premise; binary rules take their
second operand from the assertion pool or from the unitary premises, which
enter the tree as leaves.  States are deduplicated by canonical form.

With ``prune_bound`` set, a state ``s`` is dropped when ``s`` together with
every pool diagram fails to entail the goal up to that bound.  All rules
are sound, so such a state has no descendant equal to the goal.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .core import And, Compound, Or, UnitaryDiagram, label_set
from .proof import ProofTree
from .rules import RULES, apply_all
from .semantics import model_space


@dataclass
class SearchConfig:
    max_depth: int = 8
    premises: list = field(default_factory=list)
    assertions: list = field(default_factory=list)
    rules: Optional[tuple] = None
    prune_bound: Optional[int] = 3

    def __post_init__(self):
        if self.max_depth < 1:
            raise ValueError("max_depth must be at least 1")
        self.premises = list(self.premises)
        self.assertions = list(self.assertions)
        if self.rules is not None:
            unknown = set(self.rules) - set(RULES)
            if unknown:
                raise ValueError(f"unknown rules: {sorted(unknown)}")
            self.rules = tuple(self.rules)

    def operands(self) -> list:
        """(diagram, leaf proof) pairs usable as second operands."""
        out = [(a, ProofTree.assertion(a)) for a in self.assertions]
        out += [(p, ProofTree.premise(p)) for p in self.premises if isinstance(p, UnitaryDiagram)]
        return out


def _okey(D):
    """Structure-preserving key (unlike canonical forms, keeps child order)."""
    if isinstance(D, (And, Or)):
        return (type(D).__name__, _okey(D.left), _okey(D.right))
    return D.canonical


class Searcher:
    def __init__(self, cfg: SearchConfig):
        self.cfg = cfg
        self.ops = cfg.operands()
        self._exp: dict = {}
        self.expanded = 0

    def expand(self, D):
        k = _okey(D)
        hit = self._exp.get(k)
        if hit is None:
            hit = apply_all(D, self.cfg.rules, [d for d, _ in self.ops])
            self._exp[k] = hit
            self.expanded += 1
        return hit

    def _labels(self, goal):
        labs = set()
        for D in self.cfg.premises + self.cfg.assertions + [goal]:
            ls = label_set(D)
            if ls is not None:
                labs.add(ls)
        return next(iter(labs)) if len(labs) == 1 else None

    def derive(self, goal: Compound) -> Optional[ProofTree]:
        cfg = self.cfg
        gk = goal.canonical
        for p in cfg.premises:
            if p.canonical == gk:
                return ProofTree.premise(p)
        prune = None
        labels = self._labels(goal)
        if cfg.prune_bound is not None and labels is not None:
            space = model_space(tuple(sorted(labels)), cfg.prune_bound)
            ctx = space.full
            for D in cfg.premises + cfg.assertions:
                ctx &= space.bits(D)
            bad = ctx & ~space.bits(goal) & space.full
            prune = (space, bad)

        def pruned(D):
            if prune is None:
                return False
            return bool(prune[0].bits(D) & prune[1])

        def dfs(D, tree, remaining, tt):
            k = D.canonical
            if tt.get(k, -1) >= remaining:
                return None
            tt[k] = remaining
            if pruned(D):
                return None
            for inst, i, child in self.expand(D):
                kids = [tree] if i is None else [tree, self.ops[i][1]]
                ctree = ProofTree.step(child, inst, kids)
                if child.canonical == gk:
                    return ctree
                if remaining > 1:
                    found = dfs(child, ctree, remaining - 1, tt)
                    if found is not None:
                        return found
            return None

        for limit in range(1, cfg.max_depth + 1):
            tt: dict = {}
            for p in cfg.premises:
                found = dfs(p, ProofTree.premise(p), limit, tt)
                if found is not None:
                    return found
        return None

    def reachable(self) -> dict:
        seen = {}
        frontier = []
        for p in self.cfg.premises:
            if p.canonical not in seen:
                seen[p.canonical] = 0
                frontier.append(p)
        for depth in range(1, self.cfg.max_depth + 1):
            nxt = []
            for D in frontier:
                for _, _, child in self.expand(D):
                    if child.canonical not in seen:
                        seen[child.canonical] = depth
                        nxt.append(child)
            frontier = nxt
        return seen


def derive(cfg: SearchConfig, goal: Compound) -> Optional[ProofTree]:
    return Searcher(cfg).derive(goal)


def reachable_set(cfg: SearchConfig) -> dict:
    """Canonical form -> depth of first reach, for everything within max_depth."""
    return Searcher(cfg).reachable()
