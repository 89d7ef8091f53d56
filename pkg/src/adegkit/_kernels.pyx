# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels; same signatures and results as ``_kernels_py``."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t, int16_t, uint32_t
from libc.stdlib cimport malloc, calloc, free

from . import _kernels_py

cnp.import_array()

BACKEND = "cython"

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_clzll(unsigned long long) nogil


cdef inline int popcount(uint64_t v) nogil:
    return __builtin_popcountll(v)


def gf2_rank(vals):
    cdef uint64_t basis[64]
    cdef int rank = 0, k, hb
    cdef uint64_t v
    for k in range(64):
        basis[k] = 0
    for item in vals:
        item = int(item)
        if item >> 64:
            return _kernels_py.gf2_rank(vals)
        v = <uint64_t>item
        while v:
            hb = 63 - __builtin_clzll(v)
            if basis[hb] == 0:
                basis[hb] = v
                rank += 1
                break
            v ^= basis[hb]
    return rank


# ---------------------------------------------------------------- subset XOR

cdef inline uint64_t hash64(uint64_t z) nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef struct Table:
    uint64_t *keys
    uint64_t *codes  # packed indices, 16 bits each, +1 so that 0 means "unused slot"
    char *used
    uint64_t mask


cdef inline void table_put(Table *tb, uint64_t key, uint64_t code) nogil:
    cdef uint64_t h = hash64(key) & tb.mask
    while tb.used[h]:
        if tb.keys[h] == key:
            return
        h = (h + 1) & tb.mask
    tb.used[h] = 1
    tb.keys[h] = key
    tb.codes[h] = code


cdef inline int table_get(Table *tb, uint64_t key, uint64_t *code) nogil:
    cdef uint64_t h = hash64(key) & tb.mask
    while tb.used[h]:
        if tb.keys[h] == key:
            code[0] = tb.codes[h]
            return 1
        h = (h + 1) & tb.mask
    return 0


cdef object unpack(uint64_t code):
    out = []
    while code:
        out.append(<int>(code & 0xFFFF) - 1)
        code >>= 16
    return out


def xor_cover(vals, int d, target):
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] arr = np.ascontiguousarray(vals, dtype=np.uint64)
    cdef Py_ssize_t m = arr.shape[0]
    cdef uint64_t tgt = <uint64_t>int(target)
    if tgt == 0:
        return ()
    if d > m:
        d = <int>m
    if d <= 0:
        return None
    cdef int h1 = (d + 1) // 2
    cdef int h2 = d // 2
    from math import comb
    cdef object total = sum(comb(m, k) for k in range(h1 + 1))
    if sum(comb(m, k) for k in range(d + 1)) <= _kernels_py._PLAIN_LIMIT or h1 > 4 or m >= 65535 or total > (1 << 26):
        return _kernels_py.xor_cover(vals, d, target)

    cdef uint64_t cap = 1
    while cap < 2 * <uint64_t>total:
        cap <<= 1
    cdef Table tb
    tb.mask = cap - 1
    tb.keys = <uint64_t *>malloc(cap * sizeof(uint64_t))
    tb.codes = <uint64_t *>malloc(cap * sizeof(uint64_t))
    tb.used = <char *>calloc(cap, 1)
    if tb.keys == NULL or tb.codes == NULL or tb.used == NULL:
        free(tb.keys); free(tb.codes); free(tb.used)
        raise MemoryError()
    cdef uint64_t *a = <uint64_t *>arr.data
    cdef Py_ssize_t i0, i1, i2, i3
    cdef uint64_t code = 0, hit = 0
    cdef int found = 0
    cdef uint64_t x0, x1, x2
    try:
        with nogil:
            # left half: every subset of size <= h1
            table_put(&tb, 0, 0)
            for i0 in range(m):
                x0 = a[i0]
                table_put(&tb, x0, <uint64_t>(i0 + 1))
                if h1 < 2:
                    continue
                for i1 in range(i0 + 1, m):
                    x1 = x0 ^ a[i1]
                    table_put(&tb, x1, <uint64_t>(i0 + 1) | (<uint64_t>(i1 + 1) << 16))
                    if h1 < 3:
                        continue
                    for i2 in range(i1 + 1, m):
                        x2 = x1 ^ a[i2]
                        table_put(&tb, x2, <uint64_t>(i0 + 1) | (<uint64_t>(i1 + 1) << 16)
                                  | (<uint64_t>(i2 + 1) << 32))
                        if h1 < 4:
                            continue
                        for i3 in range(i2 + 1, m):
                            table_put(&tb, x2 ^ a[i3], <uint64_t>(i0 + 1) | (<uint64_t>(i1 + 1) << 16)
                                      | (<uint64_t>(i2 + 1) << 32) | (<uint64_t>(i3 + 1) << 48))
            # right half: subsets of size <= h2, probe target ^ xor
            if table_get(&tb, tgt, &hit):
                found = 1
                code = 0
            if not found and h2 >= 1:
                for i0 in range(m):
                    x0 = a[i0]
                    if table_get(&tb, tgt ^ x0, &hit):
                        found = 1
                        code = <uint64_t>(i0 + 1)
                        break
                    if h2 < 2:
                        continue
                    for i1 in range(i0 + 1, m):
                        x1 = x0 ^ a[i1]
                        if table_get(&tb, tgt ^ x1, &hit):
                            found = 1
                            code = <uint64_t>(i0 + 1) | (<uint64_t>(i1 + 1) << 16)
                            break
                        if h2 < 3:
                            continue
                        for i2 in range(i1 + 1, m):
                            x2 = x1 ^ a[i2]
                            if table_get(&tb, tgt ^ x2, &hit):
                                found = 1
                                code = <uint64_t>(i0 + 1) | (<uint64_t>(i1 + 1) << 16) | (<uint64_t>(i2 + 1) << 32)
                                break
                            if h2 < 4:
                                continue
                            for i3 in range(i2 + 1, m):
                                if table_get(&tb, tgt ^ x2 ^ a[i3], &hit):
                                    found = 1
                                    code = (<uint64_t>(i0 + 1) | (<uint64_t>(i1 + 1) << 16)
                                            | (<uint64_t>(i2 + 1) << 32) | (<uint64_t>(i3 + 1) << 48))
                                    break
                            if found:
                                break
                        if found:
                            break
                    if found:
                        break
    finally:
        free(tb.keys); free(tb.codes); free(tb.used)
    if not found:
        return None
    return tuple(sorted(set(unpack(hit)) ^ set(unpack(code))))


# ---------------------------------------------------------------- character sums

def char_sum(v, int n):
    cdef uint64_t mask = <uint64_t>int(v)
    cdef uint64_t z, size = (<uint64_t>1) << n
    cdef int64_t acc = 0
    with nogil:
        for z in range(size):
            acc += 1 - 2 * (popcount(z & mask) & 1)
    return int(acc)


# ---------------------------------------------------------------- halving walk

def os_final_bits(strings, eq_next, ne_next, int n):
    cdef cnp.ndarray[cnp.uint64_t, ndim=3] s = np.ascontiguousarray(strings, dtype=np.uint64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] eqn = np.ascontiguousarray(eq_next, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] nen = np.ascontiguousarray(ne_next, dtype=np.int64)
    cdef Py_ssize_t t = s.shape[0], K = s.shape[1], A = s.shape[2]
    cdef Py_ssize_t Z = (<Py_ssize_t>1) << n
    cdef cnp.ndarray[cnp.int16_t, ndim=2] out = np.empty((t, Z), dtype=np.int16)
    if K == 0:
        out[:, :] = 1
        return out
    cdef Py_ssize_t j, z, a
    cdef int64_t cur
    cdef int eq
    cdef uint64_t zz
    with nogil:
        for j in range(t):
            for z in range(Z):
                zz = <uint64_t>z
                cur = 0
                while cur >= 0:
                    eq = 1
                    for a in range(A):
                        if popcount(s[j, cur, a] & zz) & 1:
                            eq = 0
                            break
                    cur = eqn[cur] if eq else nen[cur]
                out[j, z] = <int16_t>(-cur)
    return out


# ---------------------------------------------------------------- classical Monte Carlo

cdef inline uint64_t mix64(uint64_t z) nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef inline uint64_t next64(uint64_t *state) nogil:
    state[0] += GOLDEN
    return mix64(state[0])


cdef inline uint64_t getbits(uint64_t *state, int k) nogil:
    if k <= 0:
        return 0
    return next64(state) >> (64 - k)


cdef inline uint64_t randrange(uint64_t *state, uint64_t m) nogil:
    cdef uint64_t r, rem
    if m <= 1:
        return 0
    # limit = 2^64 - (2^64 mod m); accept r < limit
    rem = ((<uint64_t>0) - m) % m  # == 2^64 mod m
    while True:
        r = next64(state)
        if rem == 0 or r < (<uint64_t>0) - rem:
            return r % m


cdef inline uint64_t seed_for(uint64_t master, uint64_t stream, uint64_t index) nogil:
    cdef uint64_t h = mix64(master ^ mix64(stream + GOLDEN))
    return mix64(h + index * GOLDEN)


cdef inline int parity(uint64_t v) nogil:
    return popcount(v) & 1


cdef inline int contains(uint64_t x, int n, uint64_t s, int k) nogil:
    """1 iff the k-bit string s occurs in the n-bit string x."""
    cdef uint64_t mask
    cdef int p
    if k == 0:
        return 1
    mask = ((<uint64_t>1) << k) - 1 if k < 64 else ~(<uint64_t>0)
    for p in range(n - k + 1):
        if ((x >> (n - k - p)) & mask) == s:
            return 1
    return 0


cdef inline uint64_t search_prefix(uint64_t x, int n, int steps, int64_t *q) nogil:
    cdef uint64_t prefix = 0, probe
    cdef int k, rest
    for k in range(steps):
        rest = n - k - 1
        probe = (prefix << (rest + 1)) | (((<uint64_t>1) << rest) - 1)
        q[0] += 1
        prefix = (prefix << 1) | (0 if x <= probe else 1)
    return prefix


cdef inline uint64_t grow(uint64_t x, int n, int limit, int one_first, int *length, int64_t *q) nogil:
    """Right then left extension; returns the identified substring, its length via ``length``."""
    cdef uint64_t s = 0, cand
    cdef int k = 0, side, bi, b, ok
    if limit > n:
        limit = n
    for side in range(2):
        while k < limit:
            ok = 0
            for bi in range(2):
                b = (1 - bi) if one_first else bi
                if side == 0:
                    cand = (s << 1) | <uint64_t>b
                else:
                    cand = s | (<uint64_t>b << k)
                q[0] += 1
                if contains(x, n, cand, k + 1):
                    s = cand
                    k += 1
                    ok = 1
                    break
            if not ok:
                break
    length[0] = k
    return s


cdef inline uint64_t place(int n, uint64_t s, int k, uint64_t *state) nogil:
    cdef int free_bits = n - k
    cdef uint64_t fill = getbits(state, free_bits)
    cdef int p = <int>randrange(state, <uint64_t>(free_bits + 1))
    cdef int right = free_bits - p
    cdef uint64_t left_bits = fill >> right
    cdef uint64_t right_bits = fill & (((<uint64_t>1) << right) - 1)
    cdef uint64_t hi = left_bits << (n - p) if n - p < 64 else 0
    return hi | (s << right) | right_bits


def classical_mc(int algo, int n, int t, long long trials, master, stream, one_first=True):
    if algo < 0 or algo > 3:
        raise ValueError(f"unknown algorithm id {algo}")
    if n < 1 or n > 63 or t < 0:
        return _kernels_py.classical_mc(algo, n, t, trials, master, stream, one_first)
    if algo <= 1 and t > n:
        raise ValueError(f"t must lie in 0..{n}")
    cdef uint64_t mst = <uint64_t>(int(master) & 0xFFFFFFFFFFFFFFFF)
    cdef uint64_t sid = <uint64_t>(int(stream) & 0xFFFFFFFFFFFFFFFF)
    cdef int of = 1 if one_first else 0
    cdef long long k
    cdef long long successes = 0
    cdef int64_t max_q = 0, q
    cdef uint64_t state, x, guess, prefix, s
    cdef int ok, length, upper, lower
    with nogil:
        for k in range(trials):
            state = seed_for(mst, sid, <uint64_t>k)
            x = getbits(&state, n)
            q = 0
            if algo <= 1:
                prefix = search_prefix(x, n, t, &q)
                guess = (prefix << (n - t)) | getbits(&state, n - t)
                if algo == 0:
                    ok = guess == x
                else:
                    q += 1
                    upper = x <= guess
                    lower = 0
                    if guess > 0:
                        q += 1
                        lower = x <= guess - 1
                    if upper and not lower:
                        ok = parity(guess) == parity(x)
                    else:
                        ok = <int>getbits(&state, 1) == parity(x)
            else:
                s = grow(x, n, t, of, &length, &q)
                guess = place(n, s, length, &state)
                if algo == 2:
                    ok = guess == x
                else:
                    q += 1
                    if guess == x:
                        ok = 1
                    else:
                        ok = <int>getbits(&state, 1) == parity(x)
            successes += ok
            if q > max_q:
                max_q = q
    return int(successes), int(max_q)
