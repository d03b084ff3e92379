# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled simulation kernels (Cython backend).

Must stay draw-for-draw identical to _kernel_py: one uniform per slot from
the source stream, one per decision from the policy stream, inverse-CDF scan
with the same comparison direction. Uniforms are pulled straight from the
BitGenerator's C interface (next_double), which matches Generator.random.
"""

import numpy as np

cimport numpy as cnp
from cpython.pycapsule cimport PyCapsule_GetPointer, PyCapsule_IsValid
from numpy.random cimport bitgen_t

cnp.import_array()

BACKEND = "cython"

cdef const char *CAPSULE_NAME = "BitGenerator"


cdef bitgen_t *_bitgen_ptr(object bit_generator) except NULL:
    capsule = bit_generator.capsule
    if not PyCapsule_IsValid(capsule, CAPSULE_NAME):
        raise ValueError("expected a numpy BitGenerator")
    return <bitgen_t *> PyCapsule_GetPointer(capsule, CAPSULE_NAME)


cdef inline Py_ssize_t _scan(const double *row, Py_ssize_t n, double u) nogil:
    cdef Py_ssize_t i = 0
    while i < n - 1 and u >= row[i]:
        i += 1
    return i


def markov_path(const double[:, ::1] cum_rows, Py_ssize_t x0, Py_ssize_t horizon,
                object bit_generator):
    """Simulate states X_0..X_horizon; returns an int64 array."""
    cdef bitgen_t *bg = _bitgen_ptr(bit_generator)
    cdef Py_ssize_t n = cum_rows.shape[0]
    out_arr = np.empty(horizon + 1, dtype=np.int64)
    cdef cnp.int64_t[::1] out = out_arr
    cdef Py_ssize_t s = x0
    cdef Py_ssize_t t
    cdef double u
    out[0] = s
    with bit_generator.lock:
        with nogil:
            for t in range(1, horizon + 1):
                u = bg.next_double(bg.state)
                s = _scan(&cum_rows[s, 0], n, u)
                out[t] = s
    return out_arr


def policy_rollout(const double[:, ::1] cum_chain, const double[:, ::1] cum_policy,
                   Py_ssize_t x0, Py_ssize_t n_decisions, Py_ssize_t burn_in,
                   object source_bits, object policy_bits, bint trace=False):
    """Run a Markov sampling policy; see _kernel_py.policy_rollout."""
    cdef bitgen_t *sbg = _bitgen_ptr(source_bits)
    cdef bitgen_t *pbg = _bitgen_ptr(policy_bits)
    cdef Py_ssize_t n = cum_chain.shape[0]
    cdef Py_ssize_t m = cum_policy.shape[1]
    taus_arr = np.empty(n_decisions if trace else 0, dtype=np.int64)
    ages_arr = np.empty(n_decisions if trace else 0, dtype=np.int64)
    cdef cnp.int64_t[::1] taus = taus_arr
    cdef cnp.int64_t[::1] ages = ages_arr
    cdef bint want_trace = trace
    cdef long long sum_tau = 0
    cdef long long sum_age = 0
    cdef Py_ssize_t x = x0
    cdef Py_ssize_t k, step, tau, first, age, s, i
    cdef double u
    with source_bits.lock, policy_bits.lock:
        with nogil:
            for k in range(n_decisions):
                u = pbg.next_double(pbg.state)
                tau = _scan(&cum_policy[x, 0], m, u) + 1
                s = x
                first = 0
                for step in range(1, tau + 1):
                    u = sbg.next_double(sbg.state)
                    i = _scan(&cum_chain[s, 0], n, u)
                    if first == 0 and i != s:
                        first = step
                    s = i
                age = tau - first if first > 0 else 0
                if k >= burn_in:
                    sum_tau += tau
                    sum_age += age
                if want_trace:
                    taus[k] = tau
                    ages[k] = age
                x = s
    return int(sum_tau), int(sum_age), (taus_arr if trace else None), (ages_arr if trace else None)
