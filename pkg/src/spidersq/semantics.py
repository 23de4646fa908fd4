"""Set-theoretic semantics and bounded model checking.

Satisfaction of a unitary diagram depends only on how many elements fall
into each zone, so bounded checks work over zone-count vectors and lift the
result to individual interpretations through a precomputed rank table.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator, Optional

from . import kernels
from .core import (And, Bottom, Compound, DiagramError, Or, Top, UnitaryDiagram,
                   Zone, label_set)


@dataclass(frozen=True)
class Interpretation:
    universe: tuple
    assignment: dict  # label -> frozenset of elements

    def __hash__(self):
        return hash((self.universe, tuple(sorted((k, tuple(sorted(v))) for k, v in self.assignment.items()))))

    def extension(self, label: str) -> frozenset:
        return self.assignment.get(label, frozenset())

    def to_json(self) -> dict:
        return {"universe": [f"e{i}" for i in self.universe],
                "assignment": {l: [f"e{i}" for i in sorted(self.assignment[l])]
                               for l in sorted(self.assignment)}}


def _need_labels(I: Interpretation, labels) -> None:
    missing = set(labels) - set(I.assignment)
    if missing:
        raise DiagramError(f"interpretation does not cover labels: {sorted(missing)}")


def zone_denotation(I: Interpretation, z: Zone) -> frozenset:
    _need_labels(I, z.labels)
    out = set(I.universe)
    for l in z.ins:
        out &= I.extension(l)
    for l in z.outs:
        out -= I.extension(l)
    return frozenset(out)


def region_denotation(I: Interpretation, r: Iterable[Zone]) -> frozenset:
    out: set = set()
    for z in r:
        out |= zone_denotation(I, z)
    return frozenset(out)


def _encode(d: UnitaryDiagram, labels: tuple):
    idx = {l: i for i, l in enumerate(labels)}

    def zid(z):
        return sum(1 << idx[l] for l in z.ins)

    kind = bytearray(1 << len(labels))
    for z in d.zones:
        kind[zid(z)] = 2 if z in d.shaded else 1
    habs, mults = [], []
    for e in d.entries():
        habs.append(sum(1 << zid(z) for z in e.habitat))
        mults.append(e.count)
    return bytes(kind), habs, mults


def zone_counts(I: Interpretation, labels: tuple) -> bytes:
    c = bytearray(1 << len(labels))
    for e in I.universe:
        z = 0
        for i, l in enumerate(labels):
            if e in I.extension(l):
                z |= 1 << i
        c[z] += 1
    return bytes(c)


def satisfies(I: Interpretation, D: Compound) -> bool:
    if isinstance(D, Top):
        return True
    if isinstance(D, Bottom):
        return False
    if isinstance(D, And):
        return satisfies(I, D.left) and satisfies(I, D.right)
    if isinstance(D, Or):
        return satisfies(I, D.left) or satisfies(I, D.right)
    labels = tuple(sorted(D.labels))
    _need_labels(I, labels)
    kind, habs, mults = _encode(D, labels)
    counts = zone_counts(I, labels)
    return kernels.sat_many(counts, len(kind), kind, habs, mults) == b"\x01"


def enumerate_interpretations(labels: Iterable[str], n: int) -> Iterator[Interpretation]:
    """All interpretations over {e0..e(n-1)}; the first sorted label varies slowest."""
    labels = tuple(sorted(labels))
    universe = tuple(range(n))
    subsets = [frozenset(e for e in universe if m >> e & 1) for m in range(1 << n)]
    for combo in itertools.product(range(1 << n), repeat=len(labels)):
        yield Interpretation(universe, {l: subsets[m] for l, m in zip(labels, combo)})


def interpretation_at(labels: tuple, n: int, idx: int) -> Interpretation:
    base = 1 << n
    masks = []
    for _ in labels:
        masks.append(idx % base)
        idx //= base
    masks.reverse()
    universe = tuple(range(n))
    return Interpretation(universe, {l: frozenset(e for e in universe if m >> e & 1)
                                     for l, m in zip(labels, masks)})


class ModelSpace:
    """Zone-count vectors for all universe sizes up to ``bound``.

    Vectors are grouped by size; within a size they follow the order of
    ``combinations_with_replacement`` over zone indices.  Bitsets over this
    vector list represent bounded model sets.
    """

    def __init__(self, labels: Iterable[str], bound: int):
        self.labels = tuple(sorted(labels))
        self.bound = bound
        self.nzones = 1 << len(self.labels)
        self.offsets = []
        flat = bytearray()
        self.sizes = []
        off = 0
        for n in range(bound + 1):
            self.offsets.append(off)
            for combo in itertools.combinations_with_replacement(range(self.nzones), n):
                c = bytearray(self.nzones)
                for z in combo:
                    c[z] += 1
                flat += c
                self.sizes.append(n)
                off += 1
        self.nvectors = off
        self.flat = bytes(flat)
        self.full = (1 << self.nvectors) - 1
        self._cache: dict = {}

    def vector(self, v: int) -> bytes:
        return self.flat[v * self.nzones:(v + 1) * self.nzones]

    def multiplicity(self, v: int) -> int:
        """Number of interpretations with this count vector."""
        c = self.vector(v)
        out = factorial(self.sizes[v])
        for x in c:
            out //= factorial(x)
        return out

    def ranks(self, n: int) -> list:
        return _ranks(len(self.labels), n)

    def unitary_bits(self, d: UnitaryDiagram) -> int:
        key = d.canonical
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if tuple(sorted(d.labels)) != self.labels:
            raise DiagramError("diagram label set does not match the model space")
        kind, habs, mults = _encode(d, self.labels)
        flags = kernels.sat_many(self.flat, self.nzones, kind, habs, mults)
        bits = int.from_bytes(_pack(flags), "little")
        self._cache[key] = bits
        return bits

    def bits(self, D: Compound) -> int:
        if isinstance(D, Top):
            return self.full
        if isinstance(D, Bottom):
            return 0
        if isinstance(D, And):
            return self.bits(D.left) & self.bits(D.right)
        if isinstance(D, Or):
            return self.bits(D.left) | self.bits(D.right)
        return self.unitary_bits(D)

    def size_mask(self, n: int) -> int:
        lo = self.offsets[n]
        hi = self.offsets[n + 1] if n + 1 < len(self.offsets) else self.nvectors
        return ((1 << hi) - 1) ^ ((1 << lo) - 1)

    def first_interpretation(self, bits: int) -> Optional[Interpretation]:
        """Earliest interpretation in enumeration order whose vector is in ``bits``."""
        for n in range(self.bound + 1):
            part = bits & self.size_mask(n)
            if not part:
                continue
            lo = self.offsets[n]
            for idx, r in enumerate(self.ranks(n)):
                if part >> (lo + r) & 1:
                    return interpretation_at(self.labels, n, idx)
        return None


def _pack(flags: bytes) -> bytes:
    out = bytearray((len(flags) + 7) // 8)
    for i, f in enumerate(flags):
        if f:
            out[i >> 3] |= 1 << (i & 7)
    return bytes(out)


@lru_cache(maxsize=None)
def _ranks(k: int, n: int) -> list:
    return kernels.interpretation_ranks(k, n)


@lru_cache(maxsize=32)
def model_space(labels: tuple, bound: int) -> ModelSpace:
    return ModelSpace(labels, bound)


@dataclass(frozen=True)
class EntailmentVerdict:
    holds: bool
    bound: int
    countermodel: Optional[Interpretation] = None


def _common_labels(*Ds, labels=None) -> tuple:
    labs = set()
    if labels is not None:
        labs.add(frozenset(labels))
    for D in Ds:
        ls = label_set(D)
        if ls is not None:
            labs.add(ls)
    if len(labs) > 1:
        raise DiagramError("diagrams have different label sets")
    return tuple(sorted(next(iter(labs)))) if labs else ()


def entails(D1: Compound, D2: Compound, bound: int, labels=None) -> EntailmentVerdict:
    if bound < 0:
        raise ValueError("bound must be non-negative")
    labels = _common_labels(D1, D2, labels=labels)
    space = model_space(labels, bound)
    bad = space.bits(D1) & ~space.bits(D2) & space.full
    if not bad:
        return EntailmentVerdict(True, bound)
    return EntailmentVerdict(False, bound, space.first_interpretation(bad))


def count_models(D: Compound, n: int, labels=None) -> int:
    """Number of interpretations of size ``n`` satisfying ``D``.

    ``labels`` fixes the vocabulary when ``D`` has no unitary leaves.
    """
    if n < 0:
        raise ValueError("size must be non-negative")
    labels = _common_labels(D, labels=labels)
    space = model_space(labels, n)
    bits = space.bits(D) & space.size_mask(n)
    total = 0
    v = space.offsets[n]
    bits >>= v
    while bits:
        if bits & 1:
            total += space.multiplicity(v)
        bits >>= 1
        v += 1
    return total


def models(D: Compound, n: int, labels=None) -> Iterator[Interpretation]:
    """Satisfying interpretations of size ``n`` in enumeration order."""
    labels = _common_labels(D, labels=labels)
    space = model_space(labels, n)
    bits = space.bits(D) >> space.offsets[n]
    for idx, r in enumerate(space.ranks(n)):
        if bits >> r & 1:
            yield interpretation_at(labels, n, idx)


from .fol import FolSentence, evaluate, to_fol  # noqa: E402,F401
