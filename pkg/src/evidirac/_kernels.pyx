# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled hot kernels; same contract as ``_kernels_py``."""

from libcpp.vector cimport vector
from libcpp.algorithm cimport sort, unique

BACKEND = "cython"

DEF MAXN = 8


cdef int _load_cartan(object cartan, long long[:, ::1] out, int n) except -1:
    cdef int i, j
    for i in range(n):
        row = cartan[i]
        for j in range(n):
            out[i, j] = row[j]
    return 0


cdef inline int _dominate(long long* v, long long[:, ::1] A, int n,
                          vector[int]* word) noexcept nogil:
    cdef int i = 0, j
    cdef long long c
    while i < n:
        if v[i] < 0:
            c = v[i]
            for j in range(n):
                if A[i, j] != 0:
                    v[j] -= c * A[i, j]
            if word != NULL:
                word.push_back(i)
            i = 0
        else:
            i += 1
    return 0


def dominant_word(v, cartan):
    cdef int n = len(v)
    cdef long long buf[MAXN]
    cdef long long[:, ::1] A = _cartan_buffer(n)
    cdef vector[int] word
    cdef int k
    if n > MAXN:
        raise ValueError("rank too large")
    _load_cartan(cartan, A, n)
    for k in range(n):
        buf[k] = v[k]
    _dominate(buf, A, n, &word)
    return [buf[k] for k in range(n)], [word[k] for k in range(<int>word.size())]


def dominant_batch(vs, cartan):
    cdef list out = []
    cdef int n
    cdef long long buf[MAXN]
    cdef long long[:, ::1] A
    cdef int k
    vs = list(vs)
    if not vs:
        return out
    n = len(vs[0])
    if n > MAXN:
        raise ValueError("rank too large")
    A = _cartan_buffer(n)
    _load_cartan(cartan, A, n)
    for v in vs:
        for k in range(n):
            buf[k] = v[k]
        _dominate(buf, A, n, NULL)
        out.append([buf[k] for k in range(n)])
    return out


def apply_word(v, word, cartan):
    cdef int n = len(v)
    cdef long long buf[MAXN]
    cdef long long[:, ::1] A = _cartan_buffer(n)
    cdef long long c
    cdef int i, j, k
    if n > MAXN:
        raise ValueError("rank too large")
    _load_cartan(cartan, A, n)
    for k in range(n):
        buf[k] = v[k]
    for i in word:
        c = buf[i]
        if c != 0:
            for j in range(n):
                if A[i, j] != 0:
                    buf[j] -= c * A[i, j]
    return [buf[k] for k in range(n)]


cdef object _cartan_buffer(int n):
    import numpy as np
    return np.zeros((n, n), dtype=np.int64)


cdef inline unsigned long long _pack(long long* v, int n, int bits, long long off) noexcept nogil:
    cdef unsigned long long key = 0
    cdef int k
    for k in range(n):
        key = (key << bits) | <unsigned long long>(v[k] + off)
    return key


cdef inline void _unpack(unsigned long long key, long long* v, int n, int bits,
                         long long off) noexcept nogil:
    cdef int k
    cdef unsigned long long mask = (1ULL << bits) - 1
    for k in range(n - 1, -1, -1):
        v[k] = <long long>(key & mask) - off
        key >>= bits


def orbit_levels(start, cartan):
    cdef int n = len(start)
    cdef int bits, i, j, k
    cdef long long off, c, lim
    cdef long long v[MAXN]
    cdef long long w[MAXN]
    cdef long long[:, ::1] A
    cdef vector[unsigned long long] level, nxt
    cdef size_t idx
    cdef int overflow = 0
    cdef list sizes = []
    if n > MAXN:
        raise ValueError("rank too large")
    if any(x <= 0 for x in start):
        raise ValueError("orbit walk needs a strictly dominant start vector")
    A = _cartan_buffer(n)
    _load_cartan(cartan, A, n)
    bits = 64 // n
    if bits > 16:
        bits = 16
    off = 1LL << (bits - 1)
    # coordinates of w(start) are bounded by sum(start) * max|cartan| growth;
    # check every packed vector against the representable range instead
    lim = off - 1
    for k in range(n):
        v[k] = start[k]
    level.push_back(_pack(v, n, bits, off))
    while level.size() > 0:
        sizes.append(level.size())
        nxt.clear()
        with nogil:
            for idx in range(level.size()):
                _unpack(level[idx], v, n, bits, off)
                for i in range(n):
                    c = v[i]
                    if c > 0:
                        for k in range(n):
                            w[k] = v[k]
                        for j in range(n):
                            if A[i, j] != 0:
                                w[j] -= c * A[i, j]
                        for k in range(n):
                            if w[k] > lim or w[k] < -lim:
                                overflow = 1
                        nxt.push_back(_pack(w, n, bits, off))
            sort(nxt.begin(), nxt.end())
            nxt.erase(unique(nxt.begin(), nxt.end()), nxt.end())
        if overflow:
            raise OverflowError("orbit coordinate out of packing range")
        level.swap(nxt)
    return sizes


def orbit_select(start, cartan, test):
    cdef int n = len(start)
    cdef int m = len(test)
    cdef int bits, i, j, k, r, ok
    cdef long long off, c, lim, acc
    cdef long long v[MAXN]
    cdef long long w[MAXN]
    cdef long long[:, ::1] A
    cdef long long[:, ::1] T
    cdef vector[unsigned long long] level, nxt, keep
    cdef size_t idx
    cdef int overflow = 0
    cdef list kept = []
    if n > MAXN:
        raise ValueError("rank too large")
    if any(x <= 0 for x in start):
        raise ValueError("orbit walk needs a strictly dominant start vector")
    import numpy as np
    A = _cartan_buffer(n)
    _load_cartan(cartan, A, n)
    T = np.ascontiguousarray(np.asarray(test, dtype=np.int64).reshape(m, n))
    bits = 64 // n
    if bits > 16:
        bits = 16
    off = 1LL << (bits - 1)
    lim = off - 1
    for k in range(n):
        v[k] = start[k]
    level.push_back(_pack(v, n, bits, off))
    while level.size() > 0:
        nxt.clear()
        keep.clear()
        with nogil:
            for idx in range(level.size()):
                _unpack(level[idx], v, n, bits, off)
                ok = 1
                for r in range(m):
                    acc = 0
                    for k in range(n):
                        acc += T[r, k] * v[k]
                    if acc <= 0:
                        ok = 0
                        break
                if ok:
                    keep.push_back(level[idx])
                for i in range(n):
                    c = v[i]
                    if c > 0:
                        for k in range(n):
                            w[k] = v[k]
                        for j in range(n):
                            if A[i, j] != 0:
                                w[j] -= c * A[i, j]
                        for k in range(n):
                            if w[k] > lim or w[k] < -lim:
                                overflow = 1
                        nxt.push_back(_pack(w, n, bits, off))
            sort(nxt.begin(), nxt.end())
            nxt.erase(unique(nxt.begin(), nxt.end()), nxt.end())
        if overflow:
            raise OverflowError("orbit coordinate out of packing range")
        members = []
        for idx in range(keep.size()):
            _unpack(keep[idx], v, n, bits, off)
            members.append([v[k] for k in range(n)])
        kept.extend(sorted(members))
        level.swap(nxt)
    return kept


def spin_values(mu, rho_n, cartan, gram2, shift):
    cdef int n = len(mu)
    cdef int m = len(rho_n)
    cdef long long[:, ::1] A
    cdef long long[:, ::1] G
    cdef long long[:, ::1] R
    cdef long long mv[MAXN]
    cdef long long sh[MAXN]
    cdef long long d[MAXN]
    cdef long long s, t
    cdef int a, b, jj
    cdef list out = []
    if n > MAXN:
        raise ValueError("rank too large")
    A = _cartan_buffer(n)
    _load_cartan(cartan, A, n)
    G = _cartan_buffer(n)
    _load_cartan(gram2, G, n)
    import numpy as np
    R = np.ascontiguousarray(np.asarray(rho_n, dtype=np.int64).reshape(m, n))
    for a in range(n):
        mv[a] = mu[a]
        sh[a] = shift[a]
    for jj in range(m):
        for a in range(n):
            d[a] = mv[a] - R[jj, a]
        _dominate(d, A, n, NULL)
        for a in range(n):
            d[a] += sh[a]
        s = 0
        for a in range(n):
            if d[a] != 0:
                t = 0
                for b in range(n):
                    t += G[a, b] * d[b]
                s += d[a] * t
        out.append(s)
    return out


def support_argmax(c, targets):
    cdef int arg = -1
    best = None
    cdef int j, a
    for j in range(len(targets)):
        t = targets[j]
        s = 0
        for a in range(len(c)):
            s += c[a] * t[a]
        if best is None or s > best:
            best = s
            arg = j
    return arg, best
