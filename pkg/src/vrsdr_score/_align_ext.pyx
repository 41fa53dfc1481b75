# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled edit-distance kernels; mirrors ``_align_py``."""

from libc.stdlib cimport free, malloc


cdef inline int _min3(int a, int b, int c) nogil:
    if a <= b and a <= c:
        return a
    return b if b <= c else c


def edit_distance(const int[:] ref, const int[:] hyp):
    cdef Py_ssize_t n = ref.shape[0], m = hyp.shape[0], i, j
    cdef const int[:] tmp
    if n < m:
        tmp = ref
        ref = hyp
        hyp = tmp
        n, m = m, n
    cdef int *prev = <int *> malloc((m + 1) * sizeof(int))
    cdef int *cur = <int *> malloc((m + 1) * sizeof(int))
    cdef int *swap
    cdef int r, result
    if prev == NULL or cur == NULL:
        free(prev)
        free(cur)
        raise MemoryError()
    with nogil:
        for j in range(m + 1):
            prev[j] = <int> j
        for i in range(1, n + 1):
            cur[0] = <int> i
            r = ref[i - 1]
            for j in range(1, m + 1):
                if r == hyp[j - 1]:
                    cur[j] = prev[j - 1]
                else:
                    cur[j] = 1 + _min3(prev[j - 1], prev[j], cur[j - 1])
            swap = prev
            prev = cur
            cur = swap
        result = prev[m]
    free(prev)
    free(cur)
    return result


def edit_counts(const int[:] ref, const int[:] hyp):
    cdef Py_ssize_t n = ref.shape[0], m = hyp.shape[0], i, j, w = m + 1
    cdef int *d = <int *> malloc((n + 1) * w * sizeof(int))
    cdef int r, cur
    cdef long sub = 0, dele = 0, ins = 0, cor = 0
    if d == NULL:
        raise MemoryError()
    with nogil:
        for j in range(m + 1):
            d[j] = <int> j
        for i in range(1, n + 1):
            d[i * w] = <int> i
            r = ref[i - 1]
            for j in range(1, m + 1):
                if r == hyp[j - 1]:
                    d[i * w + j] = d[(i - 1) * w + j - 1]
                else:
                    d[i * w + j] = 1 + _min3(d[(i - 1) * w + j - 1], d[(i - 1) * w + j], d[i * w + j - 1])

        i = n
        j = m
        while i > 0 or j > 0:
            cur = d[i * w + j]
            if i > 0 and j > 0:
                if ref[i - 1] == hyp[j - 1] and d[(i - 1) * w + j - 1] == cur:
                    cor += 1
                    i -= 1
                    j -= 1
                    continue
                if ref[i - 1] != hyp[j - 1] and d[(i - 1) * w + j - 1] + 1 == cur:
                    sub += 1
                    i -= 1
                    j -= 1
                    continue
            if i > 0 and d[(i - 1) * w + j] + 1 == cur:
                dele += 1
                i -= 1
            else:
                ins += 1
                j -= 1
    free(d)
    return sub, dele, ins, cor
