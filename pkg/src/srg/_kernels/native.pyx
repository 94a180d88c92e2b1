# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; semantics mirror fallback.py operation for operation.

Iteration order and float accumulation order match the fallback exactly so
that both backends return bit-identical results.
"""

import numpy as np

from libc.math cimport pow as cpow

BACKEND_NAME = "native"

cdef extern from *:
    """
    #if defined(__GNUC__) || defined(__clang__)
    #define SRG_POPCOUNT64(x) __builtin_popcountll(x)
    #else
    static int SRG_POPCOUNT64(unsigned long long x) {
        int c = 0;
        while (x) { x &= x - 1; c++; }
        return c;
    }
    #endif
    """
    int SRG_POPCOUNT64(unsigned long long x) nogil


def evaluate_labels(packed, labels, int new_limit, int old_limit, int total_limit, bint dynamic):
    """See fallback.evaluate_labels."""
    cdef const unsigned long long[:, ::1] new_words = packed.new_words
    cdef const unsigned long long[:, ::1] old_words = packed.old_words
    cdef Py_ssize_t m = new_words.shape[0]
    cdef Py_ssize_t wn = new_words.shape[1]
    cdef Py_ssize_t wo = old_words.shape[1]
    lab_arr = np.ascontiguousarray(labels, dtype=np.int64)
    cdef long long[::1] lab = lab_arr
    if lab.shape[0] != m:
        raise ValueError("label vector length does not match student count")

    gnew_arr = np.zeros((m, wn), dtype=np.uint64)
    gold_arr = np.zeros((m, wo), dtype=np.uint64)
    sizes_arr = np.zeros(m, dtype=np.int64)
    cdef unsigned long long[:, ::1] gnew = gnew_arr
    cdef unsigned long long[:, ::1] gold = gold_arr
    cdef long long[::1] sizes = sizes_arr

    cdef Py_ssize_t i, w
    cdef long long g, unassigned = 0
    for i in range(m):
        g = lab[i]
        if g < 0:
            unassigned += 1
            continue
        if g >= m:
            raise ValueError("group label out of range")
        sizes[g] += 1
        for w in range(wn):
            gnew[g, w] |= new_words[i, w]
        for w in range(wo):
            gold[g, w] |= old_words[i, w]

    cdef long long unfit = 0, size_penalty = 0, groups = 0
    cdef long long s, new_count, old_count, penalty, over
    for i in range(m):
        s = sizes[i]
        if s == 0:
            continue
        groups += 1
        new_count = 0
        for w in range(wn):
            new_count += SRG_POPCOUNT64(gnew[i, w])
        old_count = 0
        for w in range(wo):
            old_count += SRG_POPCOUNT64(gold[i, w])
        if dynamic:
            over = new_count + old_count - total_limit
            penalty = over if over > 0 else 0
        else:
            penalty = 0
            if new_count > new_limit:
                penalty += new_count - new_limit
            if old_count > old_limit:
                penalty += old_count - old_limit
        unfit += penalty * s
        size_penalty += (m - s) * s
    return unfit, size_penalty, unassigned, groups


cdef inline bint _fits(
    const unsigned long long[:, ::1] new_words, const unsigned long long[:, ::1] old_words,
    unsigned long long[:, ::1] gnew, unsigned long long[:, ::1] gold,
    Py_ssize_t g, Py_ssize_t s, Py_ssize_t wn, Py_ssize_t wo,
    int new_limit, int old_limit, int total_limit, bint dynamic,
) nogil:
    cdef long long new_count = 0, old_count = 0
    cdef Py_ssize_t w
    for w in range(wn):
        new_count += SRG_POPCOUNT64(gnew[g, w] | new_words[s, w])
    for w in range(wo):
        old_count += SRG_POPCOUNT64(gold[g, w] | old_words[s, w])
    if dynamic:
        return new_count + old_count <= total_limit
    return new_count <= new_limit and old_count <= old_limit


cdef inline long long _row_penalty(
    unsigned long long[:, ::1] gnew, unsigned long long[:, ::1] gold,
    Py_ssize_t g, Py_ssize_t wn, Py_ssize_t wo,
    int new_limit, int old_limit, int total_limit, bint dynamic,
) nogil:
    cdef long long new_count = 0, old_count = 0, over
    cdef Py_ssize_t w
    for w in range(wn):
        new_count += SRG_POPCOUNT64(gnew[g, w])
    for w in range(wo):
        old_count += SRG_POPCOUNT64(gold[g, w])
    if dynamic:
        over = new_count + old_count - total_limit
        return over if over > 0 else 0
    over = 0
    if new_count > new_limit:
        over += new_count - new_limit
    if old_count > old_limit:
        over += old_count - old_limit
    return over


def ant_traverse(packed, trails, eta_alpha, double beta,
                 int new_limit, int old_limit, int total_limit, bint dynamic, uniforms):
    """See fallback.ant_traverse."""
    cdef const unsigned long long[:, ::1] new_words = packed.new_words
    cdef const unsigned long long[:, ::1] old_words = packed.old_words
    cdef Py_ssize_t wn = new_words.shape[1]
    cdef Py_ssize_t wo = old_words.shape[1]
    trails_arr = np.ascontiguousarray(trails, dtype=np.float64)
    cdef double[:, ::1] T = trails_arr
    eta_arr = np.ascontiguousarray(eta_alpha, dtype=np.float64)
    cdef double[::1] eta = eta_arr
    uni_arr = np.ascontiguousarray(uniforms, dtype=np.float64)
    cdef double[::1] uni = uni_arr
    cdef Py_ssize_t n = T.shape[0]
    cdef Py_ssize_t m = T.shape[1]

    weights_arr = np.empty((n, m), dtype=np.float64)
    cdef double[:, ::1] weights = weights_arr
    cdef Py_ssize_t g, s, w
    for g in range(n):
        for s in range(m):
            if beta == 1.0:
                weights[g, s] = eta[s] * T[g, s]
            else:
                weights[g, s] = eta[s] * cpow(T[g, s], beta)

    labels_arr = np.full(m, -1, dtype=np.int64)
    cdef long long[::1] labels = labels_arr
    gnew_arr = np.zeros((n, wn), dtype=np.uint64)
    gold_arr = np.zeros((n, wo), dtype=np.uint64)
    gsize_arr = np.zeros(n, dtype=np.int64)
    cdef unsigned long long[:, ::1] gnew = gnew_arr
    cdef unsigned long long[:, ::1] gold = gold_arr
    cdef long long[::1] gsize = gsize_arr

    feas_arr = np.zeros((n, m), dtype=np.uint8)
    cdef unsigned char[:, ::1] feas = feas_arr
    open_fits_arr = np.zeros(m, dtype=np.int64)
    cdef long long[::1] open_fits = open_fits_arr
    cdef bint solo
    for s in range(m):
        # group 0's union is still empty here, so this tests the student alone
        solo = _fits(new_words, old_words, gnew, gold, 0, s, wn, wo,
                     new_limit, old_limit, total_limit, dynamic)
        for g in range(n):
            feas[g, s] = solo

    cdef Py_ssize_t opened = 0, assigned = 0, step = 0, fresh
    cdef double total, threshold, cumulative
    cdef Py_ssize_t chosen_g, chosen_s, last_g, last_s
    cdef bint newly_opened, fits_now
    while assigned < m:
        fresh = opened if opened < n else -1
        total = 0.0
        for g in range(opened):
            for s in range(m):
                if labels[s] < 0 and feas[g, s]:
                    total += weights[g, s]
        if fresh >= 0:
            for s in range(m):
                if labels[s] < 0 and open_fits[s] == 0 and feas[fresh, s]:
                    total += weights[fresh, s]
        if total <= 0.0:
            break
        threshold = uni[step] * total
        step += 1
        cumulative = 0.0
        chosen_g = chosen_s = -1
        last_g = last_s = -1
        for g in range(opened):
            for s in range(m):
                if labels[s] < 0 and feas[g, s]:
                    last_g = g
                    last_s = s
                    cumulative += weights[g, s]
                    if cumulative > threshold:
                        chosen_g = g
                        chosen_s = s
                        break
            if chosen_g >= 0:
                break
        if chosen_g < 0 and fresh >= 0:
            for s in range(m):
                if labels[s] < 0 and open_fits[s] == 0 and feas[fresh, s]:
                    last_g = fresh
                    last_s = s
                    cumulative += weights[fresh, s]
                    if cumulative > threshold:
                        chosen_g = fresh
                        chosen_s = s
                        break
        if chosen_g < 0:  # float round-off guard: fall back to the last pair
            chosen_g = last_g
            chosen_s = last_s

        labels[chosen_s] = chosen_g
        if chosen_g == opened:
            opened += 1
            newly_opened = True
        else:
            newly_opened = False
        for w in range(wn):
            gnew[chosen_g, w] |= new_words[chosen_s, w]
        for w in range(wo):
            gold[chosen_g, w] |= old_words[chosen_s, w]
        gsize[chosen_g] += 1
        assigned += 1
        for s in range(m):
            if labels[s] < 0:
                fits_now = _fits(new_words, old_words, gnew, gold, chosen_g, s,
                                 wn, wo, new_limit, old_limit, total_limit, dynamic)
                if newly_opened:
                    open_fits[s] += fits_now
                else:
                    open_fits[s] += fits_now - feas[chosen_g, s]
                feas[chosen_g, s] = fits_now

    # Dead ends: place leftover students where they do the least damage.
    cdef long long new_count, old_count, after, current, delta, best_delta
    cdef Py_ssize_t best_g
    cdef double best_trail, trail
    for s in range(m):
        if labels[s] >= 0:
            continue
        best_g = -1
        best_delta = 0
        best_trail = 0.0
        for g in range(n):
            new_count = 0
            for w in range(wn):
                new_count += SRG_POPCOUNT64(gnew[g, w] | new_words[s, w])
            old_count = 0
            for w in range(wo):
                old_count += SRG_POPCOUNT64(gold[g, w] | old_words[s, w])
            if dynamic:
                after = new_count + old_count - total_limit
                if after < 0:
                    after = 0
            else:
                after = 0
                if new_count > new_limit:
                    after += new_count - new_limit
                if old_count > old_limit:
                    after += old_count - old_limit
            current = _row_penalty(gnew, gold, g, wn, wo, new_limit, old_limit, total_limit, dynamic)
            delta = after * (gsize[g] + 1) - current * gsize[g]
            trail = T[g, s]
            if best_g < 0 or delta < best_delta or (delta == best_delta and trail > best_trail):
                best_g = g
                best_delta = delta
                best_trail = trail
        labels[s] = best_g
        for w in range(wn):
            gnew[best_g, w] |= new_words[s, w]
        for w in range(wo):
            gold[best_g, w] |= old_words[s, w]
        gsize[best_g] += 1
    return labels_arr.tolist()
