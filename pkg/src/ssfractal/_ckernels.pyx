# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels; same contracts as ``_pykernels``."""

import numpy as np

from libc.stdint cimport int64_t, int8_t


def cyclic_subset_counts(weights, Py_ssize_t modulus):
    cdef int64_t[::1] w = np.ascontiguousarray(weights, dtype=np.int64)
    cur_arr = np.zeros(modulus, dtype=np.int64)
    nxt_arr = np.empty(modulus, dtype=np.int64)
    cdef int64_t[::1] cur = cur_arr
    cdef int64_t[::1] nxt = nxt_arr
    cdef int64_t[::1] tmp
    cdef Py_ssize_t i, c, a
    cur[0] = 1
    for i in range(w.shape[0]):
        a = w[i]
        for c in range(a):
            nxt[c] = cur[c] + cur[c - a + modulus]
        for c in range(a, modulus):
            nxt[c] = cur[c] + cur[c - a]
        tmp = cur
        cur = nxt
        nxt = tmp
    return np.asarray(cur)


def signed_zero_coefficient(weights, Py_ssize_t modulus):
    cdef int64_t[::1] w = np.ascontiguousarray(weights, dtype=np.int64)
    cdef int64_t[::1] cur = np.zeros(modulus, dtype=np.int64)
    cdef int64_t[::1] nxt = np.empty(modulus, dtype=np.int64)
    cdef int64_t[::1] tmp
    cdef Py_ssize_t i, c, a, lo, hi
    cur[0] = 1
    for i in range(w.shape[0]):
        a = w[i]
        for c in range(modulus):
            lo = c - a
            if lo < 0:
                lo += modulus
            hi = c + a
            if hi >= modulus:
                hi -= modulus
            nxt[c] = 2 * cur[c] + cur[lo] + cur[hi]
        tmp = cur
        cur = nxt
        nxt = tmp
    return int(cur[0])


def subset_sums(weights, int64_t modulus):
    cdef int64_t[::1] w = np.ascontiguousarray(weights, dtype=np.int64)
    cdef Py_ssize_t s = w.shape[0]
    out_arr = np.zeros(1 << s, dtype=np.int64)
    cdef int64_t[::1] out = out_arr
    cdef Py_ssize_t i, j, size = 1
    cdef int64_t a, v
    for i in range(s):
        a = w[i]
        for j in range(size):
            v = out[j] + a
            if v >= modulus:
                v -= modulus
            out[size + j] = v
        size <<= 1
    return out_arr


def subset_sum_histogram(weights, Py_ssize_t modulus):
    # Gray-code walk: one weight toggles per step, no 2^s buffer.
    cdef int64_t[::1] w = np.ascontiguousarray(weights, dtype=np.int64)
    cdef Py_ssize_t s = w.shape[0]
    hist_arr = np.zeros(modulus, dtype=np.int64)
    cdef int64_t[::1] hist = hist_arr
    cdef unsigned long long k, total = 1ULL << s
    cdef unsigned long long state = 0
    cdef int bit
    cdef int64_t acc = 0
    hist[0] = 1
    for k in range(1, total):
        bit = __builtin_ctzll(k)
        state ^= (1ULL << bit)
        if state & (1ULL << bit):
            acc += w[bit]
            if acc >= modulus:
                acc -= modulus
        else:
            acc -= w[bit]
            if acc < 0:
                acc += modulus
        hist[acc] += 1
    return hist_arr


cdef extern from *:
    int __builtin_ctzll(unsigned long long)


cdef Py_ssize_t _scan(int64_t[::1] w, int64_t modulus, int8_t[:, ::1] out, bint fill):
    # Lex order over {-1,0,1}^s restricted to vectors > 0: for each leading
    # position p (taken from the last index back to the first), y_p = +1 and
    # the tail runs through {-1,0,1}^(s-p-1) with an odometer.
    cdef Py_ssize_t s = w.shape[0]
    cdef Py_ssize_t found = 0
    cdef Py_ssize_t p, j, k
    cdef int64_t acc
    cdef int8_t digit[64]
    for p in range(s - 1, -1, -1):
        acc = w[p] % modulus
        for j in range(p + 1, s):
            digit[j] = -1
            acc -= w[j]
        acc %= modulus
        if acc < 0:
            acc += modulus
        while True:
            if acc == 0:
                if fill:
                    for j in range(p):
                        out[found, j] = 0
                    out[found, p] = 1
                    for j in range(p + 1, s):
                        out[found, j] = digit[j]
                found += 1
            # advance odometer (last position fastest)
            k = s - 1
            while k > p and digit[k] == 1:
                digit[k] = -1
                acc -= 2 * w[k]
                acc %= modulus
                if acc < 0:
                    acc += modulus
                k -= 1
            if k == p:
                break
            digit[k] += 1
            acc += w[k]
            if acc >= modulus:
                acc -= modulus
    return found


def weak_partition_vectors(weights, int64_t modulus):
    cdef int64_t[::1] w = np.ascontiguousarray(weights, dtype=np.int64)
    if w.shape[0] > 64:
        raise ValueError("ternary enumeration supports at most 64 weights")
    cdef int8_t[:, ::1] dummy = np.zeros((1, max(w.shape[0], 1)), dtype=np.int8)
    cdef Py_ssize_t count = _scan(w, modulus, dummy, False)
    out = np.zeros((count, w.shape[0]), dtype=np.int8)
    if count:
        _scan(w, modulus, out, True)
    return out
