# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled permutation kernels; same API as ``_perm_py``."""
from cpython.bytes cimport PyBytes_AS_STRING, PyBytes_FromStringAndSize
from libc.stdint cimport uint16_t
from libc.stdlib cimport free, malloc


def compose(a, b):
    cdef Py_ssize_t n = len(b), i
    cdef list out = [None] * n
    for i in range(n):
        out[i] = a[b[i]]
    return tuple(out)


def inverse(a):
    cdef Py_ssize_t n = len(a), i
    cdef list out = [0] * n
    for i in range(n):
        out[a[i]] = i
    return tuple(out)


cdef uint16_t* _pack(gens, Py_ssize_t n) except NULL:
    cdef Py_ssize_t k = len(gens), j, i
    cdef uint16_t* g = <uint16_t*> malloc(max(k, 1) * n * sizeof(uint16_t))
    if g == NULL:
        raise MemoryError()
    for j in range(k):
        row = gens[j]
        if len(row) != n:
            free(g)
            raise ValueError("generator permutations differ in length")
        for i in range(n):
            g[j * n + i] = <uint16_t> row[i]
    return g


def word_product(gens, word, Py_ssize_t n):
    cdef uint16_t* g = _pack(gens, n)
    cdef uint16_t* acc = <uint16_t*> malloc(n * sizeof(uint16_t))
    cdef uint16_t* tmp = <uint16_t*> malloc(n * sizeof(uint16_t))
    cdef Py_ssize_t i, off
    cdef uint16_t* swap
    try:
        for i in range(n):
            acc[i] = <uint16_t> i
        for w in word:
            off = <Py_ssize_t> w * n
            for i in range(n):
                tmp[i] = acc[g[off + i]]
            swap = acc
            acc = tmp
            tmp = swap
        return tuple([acc[i] for i in range(n)])
    finally:
        free(g)
        free(acc)
        free(tmp)


def group_order(gens, long long cap):
    cdef Py_ssize_t k = len(gens)
    cdef Py_ssize_t n = len(gens[0])
    cdef uint16_t* g = _pack(gens, n)
    cdef uint16_t* buf = <uint16_t*> malloc(n * sizeof(uint16_t))
    cdef const uint16_t* e
    cdef Py_ssize_t i, j
    cdef set seen
    cdef list frontier, nxt
    cdef bytes key
    try:
        for i in range(n):
            buf[i] = <uint16_t> i
        key = PyBytes_FromStringAndSize(<char*> buf, n * sizeof(uint16_t))
        seen = {key}
        frontier = [key]
        while frontier:
            nxt = []
            for elem in frontier:
                e = <const uint16_t*> PyBytes_AS_STRING(elem)
                for j in range(k):
                    for i in range(n):
                        buf[i] = e[g[j * n + i]]
                    key = PyBytes_FromStringAndSize(<char*> buf, n * sizeof(uint16_t))
                    if key not in seen:
                        seen.add(key)
                        if len(seen) > cap:
                            return -1
                        nxt.append(key)
            frontier = nxt
        return len(seen)
    finally:
        free(g)
        free(buf)


def longest_descent(gens, simple_index, positive, allowed):
    cdef Py_ssize_t n = len(positive), i, off
    cdef uint16_t* g = _pack(gens, n)
    cdef uint16_t* w = <uint16_t*> malloc(n * sizeof(uint16_t))
    cdef uint16_t* tmp = <uint16_t*> malloc(n * sizeof(uint16_t))
    cdef uint16_t* swap
    cdef unsigned char* pos = <unsigned char*> malloc(n)
    cdef list word = []
    cdef bint progress = True
    try:
        for i in range(n):
            w[i] = <uint16_t> i
            pos[i] = 1 if positive[i] else 0
        while progress:
            progress = False
            for s in allowed:
                if pos[w[<Py_ssize_t> simple_index[s]]]:
                    off = <Py_ssize_t> s * n
                    for i in range(n):
                        tmp[i] = w[g[off + i]]
                    swap = w
                    w = tmp
                    tmp = swap
                    word.append(s)
                    progress = True
                    break
        return tuple([w[i] for i in range(n)]), word
    finally:
        free(g)
        free(w)
        free(tmp)
        free(pos)
