# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of speed_py: streaming identity checks on table algebras.

Same semantics as the pure module, over C arrays: words are digit strings
(coefficient letter, then slot letters), keys pack into 64-bit integers in
base dim + 1, and per-word defects accumulate in a small epoch-stamped
hash table."""

DEF MAXLEN = 16
DEF MAXTERMS = 64
DEF HSIZE = 4096

cdef struct TermBuf:
    long words[MAXTERMS][MAXLEN]
    long lens[MAXTERMS]
    long coefs[MAXTERMS]
    int n


cdef inline void hoch_faces(long* w, int length, int dim, int unit,
                            long* mul_idx, long* mul_coef, TermBuf* out) noexcept nogil:
    # w[0] = coefficient letter, w[1..s] = slots
    cdef int s = length - 1
    cdef int i, j, k
    cdef long prod, coef, sign
    out.n = 0
    if s == 0:
        return
    # d_0
    prod = mul_idx[w[0] * dim + w[1]]
    if prod >= 0:
        out.words[out.n][0] = prod
        for j in range(2, length):
            out.words[out.n][j - 1] = w[j]
        out.lens[out.n] = length - 1
        out.coefs[out.n] = mul_coef[w[0] * dim + w[1]]
        out.n += 1
    # interior merges
    for i in range(1, s):
        prod = mul_idx[w[i] * dim + w[i + 1]]
        if prod >= 0 and prod != unit:
            coef = mul_coef[w[i] * dim + w[i + 1]]
            sign = 1 if i % 2 == 0 else -1
            for j in range(0, i):
                out.words[out.n][j] = w[j]
            out.words[out.n][i] = prod
            for j in range(i + 2, length):
                out.words[out.n][j - 1] = w[j]
            out.lens[out.n] = length - 1
            out.coefs[out.n] = sign * coef
            out.n += 1
    # wrap
    prod = mul_idx[w[s] * dim + w[0]]
    if prod >= 0:
        sign = 1 if s % 2 == 0 else -1
        out.words[out.n][0] = prod
        for j in range(1, s):
            out.words[out.n][j] = w[j]
        out.lens[out.n] = s
        out.coefs[out.n] = sign * mul_coef[w[s] * dim + w[0]]
        out.n += 1


cdef inline void connes_terms(long* w, int length, int unit, TermBuf* out) noexcept nogil:
    cdef int s = length - 1
    cdef int i, j
    cdef long sign = 1
    cdef long buf[MAXLEN]
    out.n = 0
    if w[0] == unit:
        return
    for j in range(length):
        buf[j] = w[j]
    for i in range(s + 1):
        out.words[out.n][0] = unit
        for j in range(length):
            out.words[out.n][j + 1] = buf[j]
        out.lens[out.n] = length + 1
        out.coefs[out.n] = sign
        out.n += 1
        if i == s:
            break
        if s % 2 == 1:
            sign = -sign
        # rotate: last slot becomes the coefficient
        cdef_tmp_rotate(buf, length)


cdef inline void cdef_tmp_rotate(long* buf, int length) noexcept nogil:
    cdef long last = buf[length - 1]
    cdef int j
    for j in range(length - 1, 0, -1):
        buf[j] = buf[j - 1]
    buf[0] = last


cdef inline long word_key(long* w, int length, long base) noexcept nogil:
    cdef long key = 1
    cdef int j
    for j in range(length):
        key = key * base + w[j] + 1
    return key


cdef struct Hash:
    long keys[HSIZE]
    long vals[HSIZE]
    long stamps[HSIZE]
    long touched[HSIZE]
    int ntouched
    long epoch


cdef inline void hash_add(Hash* h, long key, long val, long modulus) noexcept nogil:
    cdef unsigned long mixed = (<unsigned long>key) * 2654435761UL
    cdef long idx = <long>(mixed & (HSIZE - 1))
    while True:
        if h.stamps[idx] != h.epoch:
            h.stamps[idx] = h.epoch
            h.keys[idx] = key
            h.vals[idx] = val % modulus if modulus else val
            h.touched[h.ntouched] = idx
            h.ntouched += 1
            return
        if h.keys[idx] == key:
            h.vals[idx] += val
            if modulus:
                h.vals[idx] %= modulus
            return
        idx = (idx + 1) & (HSIZE - 1)


cdef inline void hash_reset(Hash* h) noexcept nogil:
    h.epoch += 1
    h.ntouched = 0


cdef inline int hash_nonzero(Hash* h, long modulus) noexcept nogil:
    cdef int i
    for i in range(h.ntouched):
        if (h.vals[h.touched[i]] % modulus if modulus
                else h.vals[h.touched[i]]) != 0:
            return 1
    return 0


def check_table_hochschild(int dim, int unit, long[:] mul_idx, long[:] mul_coef,
                           int cutoff, long modulus):
    """Compiled b^2 / B^2 / bB + Bb check; returns (ok, witness-or-None)."""
    cdef long base = dim + 1
    cdef int nab = dim - 1
    cdef long ab[MAXLEN]
    cdef int i, j, s, m, f1, f2
    cdef long w[MAXLEN]
    cdef int digits[MAXLEN]
    cdef TermBuf first, second
    cdef Hash h
    h.epoch = 0
    h.ntouched = 0
    for i in range(HSIZE):
        h.stamps[i] = -1
    j = 0
    for i in range(dim):
        if i != unit:
            ab[j] = i
            j += 1
    for s in range(cutoff + 1):
        for m in range(dim):
            for i in range(s):
                digits[i] = 0
            while True:
                w[0] = m
                for i in range(s):
                    w[i + 1] = ab[digits[i]]
                # b . b
                hash_reset(&h)
                hoch_faces(w, s + 1, dim, unit, &mul_idx[0], &mul_coef[0], &first)
                for f1 in range(first.n):
                    hoch_faces(first.words[f1], first.lens[f1], dim, unit,
                               &mul_idx[0], &mul_coef[0], &second)
                    for f2 in range(second.n):
                        hash_add(&h, word_key(second.words[f2], second.lens[f2], base),
                                 first.coefs[f1] * second.coefs[f2], modulus)
                if hash_nonzero(&h, modulus):
                    return False, ("b2", tuple(w[i] for i in range(s + 1)))
                # B . B
                hash_reset(&h)
                connes_terms(w, s + 1, unit, &first)
                for f1 in range(first.n):
                    connes_terms(first.words[f1], first.lens[f1], unit, &second)
                    for f2 in range(second.n):
                        hash_add(&h, word_key(second.words[f2], second.lens[f2], base),
                                 first.coefs[f1] * second.coefs[f2], modulus)
                if hash_nonzero(&h, modulus):
                    return False, ("B2", tuple(w[i] for i in range(s + 1)))
                # bB + Bb
                hash_reset(&h)
                connes_terms(w, s + 1, unit, &first)
                for f1 in range(first.n):
                    hoch_faces(first.words[f1], first.lens[f1], dim, unit,
                               &mul_idx[0], &mul_coef[0], &second)
                    for f2 in range(second.n):
                        hash_add(&h, word_key(second.words[f2], second.lens[f2], base),
                                 first.coefs[f1] * second.coefs[f2], modulus)
                hoch_faces(w, s + 1, dim, unit, &mul_idx[0], &mul_coef[0], &first)
                for f1 in range(first.n):
                    connes_terms(first.words[f1], first.lens[f1], unit, &second)
                    for f2 in range(second.n):
                        hash_add(&h, word_key(second.words[f2], second.lens[f2], base),
                                 first.coefs[f1] * second.coefs[f2], modulus)
                if hash_nonzero(&h, modulus):
                    return False, ("bB+Bb", tuple(w[i] for i in range(s + 1)))
                # odometer
                if s == 0:
                    break
                i = s - 1
                while i >= 0:
                    digits[i] += 1
                    if digits[i] < nab:
                        break
                    digits[i] = 0
                    i -= 1
                if i < 0:
                    break
    return True, None


cdef inline void bar_faces(long* w, int length, int dim, int unit,
                           long* mul_idx, long* mul_coef, long* aug,
                           TermBuf* out) noexcept nogil:
    cdef int s = length
    cdef int i, j
    cdef long prod, sign
    out.n = 0
    if s == 0:
        return
    if aug[w[0]] != 0:
        for j in range(1, s):
            out.words[out.n][j - 1] = w[j]
        out.lens[out.n] = s - 1
        out.coefs[out.n] = aug[w[0]]
        out.n += 1
    for i in range(1, s):
        prod = mul_idx[w[i - 1] * dim + w[i]]
        if prod >= 0 and prod != unit:
            sign = 1 if i % 2 == 0 else -1
            for j in range(0, i - 1):
                out.words[out.n][j] = w[j]
            out.words[out.n][i - 1] = prod
            for j in range(i + 1, s):
                out.words[out.n][j - 1] = w[j]
            out.lens[out.n] = s - 1
            out.coefs[out.n] = sign * mul_coef[w[i - 1] * dim + w[i]]
            out.n += 1
    if aug[w[s - 1]] != 0:
        sign = 1 if s % 2 == 0 else -1
        for j in range(0, s - 1):
            out.words[out.n][j] = w[j]
        out.lens[out.n] = s - 1
        out.coefs[out.n] = sign * aug[w[s - 1]]
        out.n += 1


def check_table_bar_d2(int dim, int unit, long[:] mul_idx, long[:] mul_coef,
                       long[:] aug, int cutoff, long modulus):
    cdef long base = dim + 1
    cdef int nab = dim - 1
    cdef long ab[MAXLEN]
    cdef int i, j, s, f1, f2
    cdef long w[MAXLEN]
    cdef int digits[MAXLEN]
    cdef TermBuf first, second
    cdef Hash h
    h.epoch = 0
    h.ntouched = 0
    for i in range(HSIZE):
        h.stamps[i] = -1
    j = 0
    for i in range(dim):
        if i != unit:
            ab[j] = i
            j += 1
    for s in range(cutoff + 1):
        for i in range(s):
            digits[i] = 0
        while True:
            for i in range(s):
                w[i] = ab[digits[i]]
            hash_reset(&h)
            bar_faces(w, s, dim, unit, &mul_idx[0], &mul_coef[0], &aug[0], &first)
            for f1 in range(first.n):
                bar_faces(first.words[f1], first.lens[f1], dim, unit,
                          &mul_idx[0], &mul_coef[0], &aug[0], &second)
                for f2 in range(second.n):
                    hash_add(&h, word_key(second.words[f2], second.lens[f2], base),
                             first.coefs[f1] * second.coefs[f2], modulus)
            if hash_nonzero(&h, modulus):
                return False, tuple(w[i] for i in range(s))
            if s == 0:
                break
            i = s - 1
            while i >= 0:
                digits[i] += 1
                if digits[i] < nab:
                    break
                digits[i] = 0
                i -= 1
            if i < 0:
                break
    return True, None
