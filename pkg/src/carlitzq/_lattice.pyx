# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled lattice-sum kernel (moduli below 2^63)."""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    #include <stdint.h>
    typedef unsigned __int128 carlitzq_u128;
    static inline uint64_t carlitzq_mulmod(uint64_t a, uint64_t b, uint64_t m) {
        return (uint64_t)(((carlitzq_u128)a * b) % m);
    }
    """
    uint64_t mulmod "carlitzq_mulmod"(uint64_t a, uint64_t b, uint64_t m) nogil


cdef inline uint64_t powmod(uint64_t x, uint64_t e, uint64_t m) nogil:
    cdef uint64_t r = 1 % m
    while e:
        if e & 1:
            r = mulmod(r, x, m)
        x = mulmod(x, x, m)
        e >>= 1
    return r


def lattice_sum(long long lo, long long hi, modulus, int alternate, long long skip_p,
                table, g0, g, brackets):
    """Same contract as ``carlitzq._lattice_py.lattice_sum``."""
    cdef uint64_t m = modulus
    cdef Py_ssize_t n_tab = len(table)
    cdef Py_ssize_t nb = len(brackets)
    cdef uint64_t *tab = <uint64_t *> malloc(n_tab * sizeof(uint64_t))
    cdef uint64_t *bval = <uint64_t *> malloc((nb + 1) * sizeof(uint64_t))
    cdef uint64_t *bstep = <uint64_t *> malloc((nb + 1) * sizeof(uint64_t))
    cdef uint64_t *bratio = <uint64_t *> malloc((nb + 1) * sizeof(uint64_t))
    cdef uint64_t *bexp = <uint64_t *> malloc((nb + 1) * sizeof(uint64_t))
    cdef uint64_t **wt = <uint64_t **> malloc((nb + 1) * sizeof(uint64_t *))
    cdef long long *wlen = <long long *> malloc((nb + 1) * sizeof(long long))
    cdef Py_ssize_t i, j
    cdef long long a
    cdef uint64_t val, x, acc = 0, gval, gr
    try:
        for i in range(n_tab):
            tab[i] = table[i] % modulus
        for i in range(nb):
            b0, s0, r, e, w = brackets[i]
            bval[i] = b0 % modulus
            bstep[i] = s0 % modulus
            bratio[i] = r % modulus
            bexp[i] = e
            if w is None:
                wt[i] = NULL
                wlen[i] = 0
            else:
                wlen[i] = len(w)
                wt[i] = <uint64_t *> malloc(wlen[i] * sizeof(uint64_t))
                for j in range(wlen[i]):
                    wt[i][j] = w[j] % modulus
        gval = g0 % modulus
        gr = g % modulus
        with nogil:
            for a in range(lo, hi):
                val = tab[a % n_tab]
                if val != 0 and not (skip_p != 0 and a % skip_p == 0):
                    val = mulmod(val, gval, m)
                    for i in range(nb):
                        x = bval[i]
                        if wt[i] != NULL:
                            x = mulmod(x, wt[i][a % wlen[i]], m)
                        val = mulmod(val, powmod(x, bexp[i], m), m)
                    if alternate and (a & 1):
                        acc = (acc + m - val) % m
                    else:
                        acc = (acc + val) % m
                gval = mulmod(gval, gr, m)
                for i in range(nb):
                    bval[i] = (bval[i] + bstep[i]) % m
                    bstep[i] = mulmod(bstep[i], bratio[i], m)
    finally:
        for i in range(nb):
            if wt[i] != NULL:
                free(wt[i])
        free(tab); free(bval); free(bstep); free(bratio); free(bexp); free(wt); free(wlen)
    return acc
