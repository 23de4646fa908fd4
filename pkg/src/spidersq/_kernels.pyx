# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; see ``_kernels_py`` for the contract."""
from libc.stdint cimport uint64_t

BACKEND = "cython"

cdef enum:
    MAXZ = 64
    MAXS = 512


cdef int _dfs(int i, int lo, int m, int* need, int* cap, const unsigned char* kind,
              uint64_t* hab, unsigned char* same):
    cdef int z, ok
    if need[0] > m - i:
        return 0
    if i == m:
        return 1
    if not same[i]:
        lo = 0
    cdef uint64_t h = hab[i]
    for z in range(lo, MAXZ):
        if (h >> z) & 1 == 0 or cap[z] == 0:
            continue
        cap[z] -= 1
        if kind[z] == 2:
            need[0] -= 1
        ok = _dfs(i + 1, z, m, need, cap, kind, hab, same)
        cap[z] += 1
        if kind[z] == 2:
            need[0] += 1
        if ok:
            return 1
    return 0


def sat_many(counts, int nzones, kind, habitats, mults):
    cdef const unsigned char[:] cv = bytes(counts)
    cdef bytes kb = bytes(kind)
    cdef const unsigned char* kp = kb
    cdef uint64_t hab[MAXS]
    cdef unsigned char same[MAXS]
    cdef int cap[MAXZ]
    cdef int m = 0, j, n, z, v, nv, need, bad
    if nzones > MAXZ:
        raise ValueError("too many zones for compiled kernel")
    for h, n in zip(habitats, mults):
        for j in range(n):
            if m >= MAXS:
                raise ValueError("too many spiders for compiled kernel")
            hab[m] = <uint64_t>h
            same[m] = 1 if j > 0 else 0
            m += 1
    nv = cv.shape[0] // nzones if nzones else 0
    out = bytearray(nv)
    cdef unsigned char[:] ov = out
    for v in range(nv):
        need = 0
        bad = 0
        for z in range(MAXZ):
            cap[z] = 0
        for z in range(nzones):
            cap[z] = cv[v * nzones + z]
            if cap[z]:
                if kp[z] == 0:
                    bad = 1
                    break
                if kp[z] == 2:
                    need += cap[z]
        if bad or need > m:
            ov[v] = 0
            continue
        ov[v] = _dfs(0, 0, m, &need, cap, kp, hab, same)
    return bytes(out)


cdef long long _comb(long long n, long long r):
    cdef long long out = 1, i
    if r < 0 or r > n:
        return 0
    for i in range(r):
        out = out * (n - i) // (i + 1)
    return out


def multiset_rank(zs, int m):
    cdef int n = len(zs), i, a, b, v, prev = -1
    cdef int N = m + n - 1
    cdef long long rank = 0
    for i in range(n):
        a = zs[i]
        b = a + i
        for v in range(prev + 1, b):
            rank += _comb(N - 1 - v, n - 1 - i)
        prev = b
    return rank


def interpretation_ranks(int k, int n):
    cdef int m = 1 << k, base = 1 << n
    cdef long long total = 1, idx, x
    cdef int i, j, e, z, t, key
    cdef int masks[8]
    cdef int zs[16]
    cdef int N = m + n - 1
    cdef long long rank
    cdef int prev, b, v
    if k > 8 or n > 16:
        raise ValueError("interpretation space too large")
    for i in range(k):
        total *= base
    out = [0] * total
    for idx in range(total):
        x = idx
        for j in range(k - 1, -1, -1):
            masks[j] = x % base
            x //= base
        for e in range(n):
            z = 0
            for j in range(k):
                if (masks[j] >> e) & 1:
                    z |= 1 << j
            zs[e] = z
        # insertion sort
        for i in range(1, n):
            key = zs[i]
            t = i - 1
            while t >= 0 and zs[t] > key:
                zs[t + 1] = zs[t]
                t -= 1
            zs[t + 1] = key
        rank = 0
        prev = -1
        for i in range(n):
            b = zs[i] + i
            for v in range(prev + 1, b):
                rank += _comb(N - 1 - v, n - 1 - i)
            prev = b
        out[idx] = rank
    return out
