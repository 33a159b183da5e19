# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled fixed-point enumeration; see ``_fallback.py`` for the reference."""

from libc.stdint cimport int8_t, int64_t


cdef inline bint _lookup(const int64_t[::1] keys, int64_t k, Py_ssize_t* where) nogil:
    cdef Py_ssize_t lo = 0, hi = keys.shape[0], mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if keys[mid] < k:
            lo = mid + 1
        else:
            hi = mid
    where[0] = lo
    return lo < keys.shape[0] and keys[lo] == k


def fixed_point_dfs(int64_t q, Py_ssize_t n,
                    const int64_t[::1] order, const int64_t[::1] cstart,
                    const int64_t[::1] ctarget, const int64_t[::1] cpoff,
                    const int64_t[::1] clen, const int64_t[::1] cpos,
                    const int64_t[::1] adm_keys, const int64_t[::1] rule_keys,
                    const int64_t[::1] rule_out, bint collect):
    cdef int64_t[::1] x
    cdef int64_t[::1] choice
    cdef Py_ssize_t t = 0, c, j, off, where
    cdef int64_t key, tgt
    cdef bint ok
    cdef long long count = 0
    found = []

    import numpy as np
    x_arr = np.zeros(n, dtype=np.int64)
    ch_arr = np.full(n + 1, -1, dtype=np.int64)
    x = x_arr
    choice = ch_arr

    while t >= 0:
        choice[t] += 1
        if choice[t] >= q:
            choice[t] = -1
            t -= 1
            continue
        x[order[t]] = choice[t]
        ok = True
        for c in range(cstart[t], cstart[t + 1]):
            off = cpoff[c]
            key = 0
            for j in range(off, off + clen[c]):
                key = key * q + x[cpos[j]]
            tgt = ctarget[c]
            if tgt < 0:
                if not _lookup(adm_keys, key, &where):
                    ok = False
                    break
            else:
                if not _lookup(rule_keys, key, &where) or rule_out[where] != x[tgt]:
                    ok = False
                    break
        if not ok:
            continue
        if t == n - 1:
            count += 1
            if collect:
                found.append(tuple(x_arr.tolist()))
            continue
        t += 1
    return count, found


def fixed_point_dfs_dense(int64_t q, Py_ssize_t n,
                          const int64_t[::1] order, const int64_t[::1] cstart,
                          const int64_t[::1] ctarget, const int64_t[::1] cpoff,
                          const int64_t[::1] clen, const int64_t[::1] cpos,
                          const int8_t[::1] adm, const int8_t[::1] rule, bint collect):
    """Variant with direct-indexed tables: ``adm[key]`` is 0/1 and
    ``rule[key]`` is the output symbol or -1 for a window outside the table."""
    cdef int64_t[::1] x
    cdef int64_t[::1] choice
    cdef Py_ssize_t t = 0, c, j, off
    cdef int64_t key, tgt
    cdef bint ok
    cdef long long count = 0
    found = []

    import numpy as np
    x_arr = np.zeros(n, dtype=np.int64)
    ch_arr = np.full(n + 1, -1, dtype=np.int64)
    x = x_arr
    choice = ch_arr

    while t >= 0:
        choice[t] += 1
        if choice[t] >= q:
            choice[t] = -1
            t -= 1
            continue
        x[order[t]] = choice[t]
        ok = True
        for c in range(cstart[t], cstart[t + 1]):
            off = cpoff[c]
            key = 0
            for j in range(off, off + clen[c]):
                key = key * q + x[cpos[j]]
            tgt = ctarget[c]
            if tgt < 0:
                if not adm[key]:
                    ok = False
                    break
            elif rule[key] != x[tgt]:
                ok = False
                break
        if not ok:
            continue
        if t == n - 1:
            count += 1
            if collect:
                found.append(tuple(x_arr.tolist()))
            continue
        t += 1
    return count, found
