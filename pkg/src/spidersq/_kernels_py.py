"""Pure-Python kernels; same contract as the compiled ``_kernels`` module.

Zones are indexed by the bitmask of their ins labels (label ``i`` of the
sorted label list is bit ``i``).  ``kind[z]`` is 0 for a missing zone,
1 for a present unshaded zone and 2 for a shaded zone.  Spider habitats are
bitmasks over zone indices.
"""
from math import comb

BACKEND = "python"


def _expand(habitats, mults):
    spiders = []
    for h, n in zip(habitats, mults):
        zs = [z for z in range(h.bit_length()) if h >> z & 1]
        for j in range(n):
            spiders.append((zs, j > 0))
    return spiders


def _sat(c, kind, spiders):
    nz = len(kind)
    need = 0
    for z in range(nz):
        if c[z]:
            if kind[z] == 0:
                return False
            if kind[z] == 2:
                need += c[z]
    m = len(spiders)
    if need > m:
        return False
    cap = list(c)
    state = [need]

    def dfs(i, lo):
        if state[0] > m - i:
            return False
        if i == m:
            return True
        zs, same = spiders[i]
        if not same:
            lo = -1
        for z in zs:
            if z < lo or cap[z] == 0:
                continue
            cap[z] -= 1
            if kind[z] == 2:
                state[0] -= 1
            ok = dfs(i + 1, z)
            cap[z] += 1
            if kind[z] == 2:
                state[0] += 1
            if ok:
                return True
        return False

    return dfs(0, -1)


def sat_many(counts, nzones, kind, habitats, mults):
    """Satisfaction flag for each count vector in the flat ``counts`` buffer."""
    spiders = _expand(habitats, mults)
    nv = len(counts) // nzones if nzones else 0
    out = bytearray(nv)
    for v in range(nv):
        c = counts[v * nzones:(v + 1) * nzones]
        out[v] = _sat(c, kind, spiders)
    return bytes(out)


def multiset_rank(zs, m):
    """Rank of the sorted tuple ``zs`` among combinations_with_replacement(range(m), len(zs))."""
    n = len(zs)
    N = m + n - 1
    rank = 0
    prev = -1
    for i, a in enumerate(zs):
        b = a + i
        for v in range(prev + 1, b):
            rank += comb(N - 1 - v, n - 1 - i)
        prev = b
    return rank


def interpretation_ranks(k, n):
    """For each interpretation of a size-``n`` universe over ``k`` labels, in
    enumeration order, the rank of its zone multiset."""
    m = 1 << k
    base = 1 << n
    total = base ** k
    out = []
    for idx in range(total):
        masks = []
        x = idx
        for _ in range(k):
            masks.append(x % base)
            x //= base
        masks.reverse()
        zs = []
        for e in range(n):
            z = 0
            for j in range(k):
                if masks[j] >> e & 1:
                    z |= 1 << j
            zs.append(z)
        zs.sort()
        out.append(multiset_rank(zs, m))
    return out
