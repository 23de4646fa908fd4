"""Reference implementations that share no code with the engine.

They work on raw Python sets and brute-force every injective spider
assignment, so they are slow but easy to audit.
"""
import itertools


def interpretations(labels, n):
    labels = sorted(labels)
    universe = list(range(n))
    subsets = [frozenset(c) for k in range(n + 1) for c in itertools.combinations(universe, k)]
    for combo in itertools.product(subsets, repeat=len(labels)):
        yield universe, dict(zip(labels, combo))


def zone_set(ins, labels, universe, phi):
    out = set(universe)
    for l in labels:
        out = out & phi[l] if l in ins else out - phi[l]
    return out


def satisfies(d, universe, phi):
    """d: dict with labels, zones (list of ins sets), shaded, spiders [(count, [ins...])]."""
    labels = d["labels"]
    present = {frozenset(z) for z in d["zones"]}
    for e in universe:
        here = frozenset(l for l in labels if e in phi[l])
        if here not in present:
            return False
    feet = []
    for count, hab in d["spiders"]:
        region = set()
        for ins in hab:
            region |= zone_set(ins, labels, universe, phi)
        feet += [region] * count
    shaded = [zone_set(z, labels, universe, phi) for z in d["shaded"]]
    for image in itertools.permutations(universe, len(feet)):
        if all(x in r for x, r in zip(image, feet)):
            if all(s <= set(image) for s in shaded):
                return True
    return False


def count_models(d, n):
    return sum(satisfies(d, u, phi) for u, phi in interpretations(d["labels"], n))


def from_diagram(d):
    """Convert an engine diagram to the oracle's plain representation."""
    return {
        "labels": sorted(d.labels),
        "zones": [set(z.ins) for z in d.zones],
        "shaded": [set(z.ins) for z in d.shaded],
        "spiders": [(e.count, [set(z.ins) for z in e.habitat]) for e in d.spiders],
    }


def to_engine_interp(universe, phi):
    from spidersq.semantics import Interpretation
    return Interpretation(tuple(universe), dict(phi))
