# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled sampling kernels.

Bitwise twin of kernels/fallback.py: same stream consumption, same
arithmetic associativity (see the kernels package docstring). The one
transcendental of the contract, S**(-mu/2), is delegated to the same
numpy ufunc the fallback uses, because numpy's vectorized pow and libm
pow differ in the last ulp for some arguments. Any change here must be
mirrored in fallback.py and vice versa.
"""

import numpy as np

from cpython.pycapsule cimport PyCapsule_GetPointer
from numpy.random cimport bitgen_t
from numpy.random.c_distributions cimport (
    random_standard_exponential_inv_fill,
    random_standard_normal_fill,
)

from ..rng import realization_stream

MODEL_NFD = 0
MODEL_FD = 1
MODEL_PFD = 2

cdef Py_ssize_t _MAX_POINTS = 1 << 26
cdef Py_ssize_t _CHUNK = 64


cdef bitgen_t* _bitgen(object generator):
    return <bitgen_t*> PyCapsule_GetPointer(generator.bit_generator.capsule, "BitGenerator")


cdef _arrivals(bitgen_t *bg, double mu, Py_ssize_t k_min, double rtol):
    """Returns (S array, w array, K, interferer w-sum up to K)."""
    cdef double em = -0.5 * mu
    cdef double tail_coef = 2.0 / (mu - 2.0)
    cdef Py_ssize_t cap = 4 * k_min
    S_arr = np.empty(cap)
    w_arr = np.empty(cap)
    gap_arr = np.empty(k_min)
    cdef double[::1] S = S_arr
    cdef double[::1] w = w_arr
    cdef double[::1] gap = gap_arr
    cdef Py_ssize_t total = 0, size, j, k, K = -1
    cdef double offset = 0.0, run, interf = 0.0
    while K < 0:
        size = k_min if total == 0 else total
        if total + size > cap:
            cap = 2 * (total + size)
            grown = np.empty(cap)
            grown[:total] = S_arr[:total]
            S_arr = grown
            S = S_arr
            grown = np.empty(cap)
            grown[:total] = w_arr[:total]
            w_arr = grown
            w = w_arr
        if size > gap.shape[0]:
            gap_arr = np.empty(size)
            gap = gap_arr
        random_standard_exponential_inv_fill(bg, size, &gap[0])
        run = 0.0
        for j in range(size):
            run += gap[j]
            S[total + j] = offset + run
        offset = S[total + size - 1]
        # numpy pow, not libm pow: part of the cross-backend contract
        w_arr[total:total + size] = S_arr[total:total + size] ** em
        for j in range(total, total + size):
            if j >= 1:
                interf += w[j]
                k = j + 1
                if k >= k_min and tail_coef * (S[j] * w[j]) <= rtol * interf:
                    K = k
                    break
        total += size
        if K < 0 and total > _MAX_POINTS:
            raise RuntimeError(
                "truncation rule did not fire within %d points "
                "(mu=%g, tail_rel_tol=%g); loosen the policy" % (_MAX_POINTS, mu, rtol)
            )
    return S_arr, w_arr, K, interf


def sinr_batch(double mu, Py_ssize_t k_min, double tail_rel_tol, bint compensate,
               int model, double delta_scaled, object seed, Py_ssize_t start,
               Py_ssize_t count):
    """See kernels.fallback.sinr_batch."""
    cdef double tail_coef = 2.0 / (mu - 2.0)
    cdef Py_ssize_t i, j, K
    cdef double num, acc, den, interf
    cdef bitgen_t* bg
    cdef double[::1] S, w, p
    out = np.empty(count)
    cdef double[::1] ov = out
    pbuf = np.empty(4 * k_min)
    for i in range(count):
        gen = realization_stream(seed, start + i)
        bg = _bitgen(gen)
        S_arr, w_arr, K, interf = _arrivals(bg, mu, k_min, tail_rel_tol)
        S = S_arr
        w = w_arr
        if model == MODEL_NFD:
            num = w[0]
            acc = interf
        else:
            if K > pbuf.shape[0]:
                pbuf = np.empty(K)
            p = pbuf
            random_standard_exponential_inv_fill(bg, K, &p[0])
            num = w[0] if model == MODEL_PFD else p[0] * w[0]
            acc = 0.0
            for j in range(1, K):
                acc += p[j] * w[j]
        den = acc
        if compensate:
            den = den + tail_coef * (S[K - 1] * w[K - 1])
        den = den + delta_scaled
        ov[i] = num / den
    return out


def mmimo_finite_batch(double mu, Py_ssize_t k_min, double tail_rel_tol,
                       bint compensate, Py_ssize_t antennas, double noise_scaled,
                       object seed, Py_ssize_t start, Py_ssize_t count):
    """See kernels.fallback.mmimo_finite_batch."""
    cdef double tail_coef = 2.0 / (mu - 2.0)
    cdef Py_ssize_t m = antennas
    cdef double mf = <double> m
    cdef Py_ssize_t i, j, l, lo, hi, rows, r, K
    cdef double num, den, acc, chunk_acc, desired, re_a, im_b, own, htil2, interf
    cdef bitgen_t* bg
    cdef double[::1] S, w
    des_arr = np.empty(2 * m)
    blk_arr = np.empty(_CHUNK * 4 * m)
    cdef double[::1] des = des_arr
    cdef double[::1] blk = blk_arr
    cdef Py_ssize_t base
    out = np.empty(count)
    cdef double[::1] ov = out
    for i in range(count):
        gen = realization_stream(seed, start + i)
        bg = _bitgen(gen)
        S_arr, w_arr, K, interf = _arrivals(bg, mu, k_min, tail_rel_tol)
        S = S_arr
        w = w_arr
        random_standard_normal_fill(bg, 2 * m, &des[0])
        desired = 0.0
        for l in range(m):
            desired += des[l] * des[l] + des[m + l] * des[m + l]
        desired = desired * 0.5
        acc = 0.0
        lo = 1
        while lo < K:
            hi = lo + _CHUNK
            if hi > K:
                hi = K
            rows = hi - lo
            random_standard_normal_fill(bg, rows * 4 * m, &blk[0])
            chunk_acc = 0.0
            for r in range(rows):
                base = r * 4 * m
                re_a = 0.0
                im_b = 0.0
                own = 0.0
                for l in range(m):
                    re_a += blk[base + 2 * m + l] * blk[base + l] + blk[base + 3 * m + l] * blk[base + m + l]
                    im_b += blk[base + 2 * m + l] * blk[base + m + l] - blk[base + 3 * m + l] * blk[base + l]
                    own += blk[base + l] * blk[base + l] + blk[base + m + l] * blk[base + m + l]
                htil2 = (re_a * re_a + im_b * im_b) / (2.0 * own)
                chunk_acc += w[lo + r] * htil2
            acc = acc + chunk_acc
            lo = hi
        num = w[0] * (desired / mf)
        den = acc / mf
        if compensate:
            den = den + tail_coef * (S[K - 1] * w[K - 1]) / mf
        den = den + noise_scaled / (mf * mf)
        ov[i] = num / den
    return out
