# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled scan kernels; same contract as ``_kernels_py``."""

import numpy as np

BACKEND = "cython"


def closure(const int[:, ::1] gens, Py_ssize_t cap):
    cdef Py_ssize_t k = gens.shape[0], d = gens.shape[1]
    cdef Py_ssize_t j, x, head = 0
    cdef const int[::1] cur
    cdef int[::1] p
    if cap < 1:
        return None
    identity = np.arange(d, dtype=np.intc)
    seen = {identity.tobytes()}
    rows = [identity]
    prod = np.empty(d, dtype=np.intc)
    p = prod
    while head < len(rows):
        cur = rows[head]
        head += 1
        for j in range(k):
            for x in range(d):
                p[x] = gens[j, cur[x]]
            key = prod.tobytes()
            if key not in seen:
                if len(rows) >= cap:
                    return None
                seen.add(key)
                rows.append(prod.copy())
    return np.array(rows, dtype=np.intc).reshape(-1, d)


def conjugates(const int[:, ::1] table, const int[:, ::1] inv_table, const int[::1] g):
    cdef Py_ssize_t n = table.shape[0], d = table.shape[1], w, x
    out = np.empty((n, d), dtype=np.intc)
    cdef int[:, ::1] o = out
    for w in range(n):
        for x in range(d):
            o[w, x] = table[w, g[inv_table[w, x]]]
    return out


cdef inline bint _hit(const int[:, ::1] table, const int[:, ::1] inv_table, const int[::1] g,
                      const int[:, ::1] targets, Py_ssize_t w, int[::1] buf) nogil:
    cdef Py_ssize_t d = table.shape[1], t = targets.shape[0], x, k
    cdef bint same
    for x in range(d):
        buf[x] = table[w, g[inv_table[w, x]]]
    for k in range(t):
        same = True
        for x in range(d):
            if buf[x] != targets[k, x]:
                same = False
                break
        if same:
            return True
    return False


def conjugator_mask(const int[:, ::1] table, const int[:, ::1] inv_table, const int[::1] g,
                    const int[:, ::1] targets):
    cdef Py_ssize_t n = table.shape[0], w
    out = np.zeros(n, dtype=bool)
    cdef unsigned char[::1] mask = out.view(np.uint8)
    cdef int[::1] buf = np.empty(table.shape[1], dtype=np.intc)
    with nogil:
        for w in range(n):
            if _hit(table, inv_table, g, targets, w, buf):
                mask[w] = 1
    return out


def first_conjugator(const int[:, ::1] table, const int[:, ::1] inv_table, const int[::1] g,
                     const int[:, ::1] targets):
    cdef Py_ssize_t n = table.shape[0], w, found = -1
    cdef int[::1] buf = np.empty(table.shape[1], dtype=np.intc)
    with nogil:
        for w in range(n):
            if _hit(table, inv_table, g, targets, w, buf):
                found = w
                break
    return found
