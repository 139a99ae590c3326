"""Pure-Python reference for the streaming identity kernel.

Works on table algebras: every basis element in degree zero, zero
differential, and each product either zero or a signed single basis
element.  Words are tuples of small ints; coefficients are machine ints,
reduced mod p when modulus > 0.  The compiled twin in _speed.pyx runs the
same loops over C arrays; both must agree entry for entry.
"""


def _faces_hochschild(word, mul_idx, mul_coef, unit, dim):
    """All (target word, coefficient) faces of a cyclic-bar word (m; slots)."""
    m = word[0]
    slots = word[1:]
    s = len(slots)
    out = []
    if s == 0:
        return out
    # d_0: m . a_1
    k = mul_idx[m * dim + slots[0]]
    if k >= 0:
        out.append(((k,) + slots[1:], mul_coef[m * dim + slots[0]]))
    # interior merges, projected off the unit
    for i in range(1, s):
        k = mul_idx[slots[i - 1] * dim + slots[i]]
        if k >= 0 and k != unit:
            coef = mul_coef[slots[i - 1] * dim + slots[i]]
            sign = 1 if i % 2 == 0 else -1
            out.append(((m,) + slots[:i - 1] + (k,) + slots[i + 1:], sign * coef))
    # wrap: a_s . m (no Koszul sign in degree zero)
    k = mul_idx[slots[-1] * dim + m]
    if k >= 0:
        sign = 1 if s % 2 == 0 else -1
        out.append(((k,) + slots[:-1], sign * mul_coef[slots[-1] * dim + m]))
    return out


def _connes_terms(word, unit):
    """B = s . N on a degree-zero word; dies when the coefficient is the unit."""
    m = word[0]
    slots = word[1:]
    if m == unit:
        return []
    out = []
    letters = (m,) + slots
    n = len(slots)
    sign = 1
    coef, rest = m, slots
    for i in range(n + 1):
        out.append(((unit,) + (coef,) + rest, sign))
        if i == n:
            break
        if len(rest) % 2 == 1:
            sign = -sign
        coef, rest = rest[-1], (coef,) + rest[:-1]
    return out


def _accumulate(terms, modulus):
    acc = {}
    for w, c in terms:
        v = acc.get(w, 0) + c
        if modulus:
            v %= modulus
        if v:
            acc[w] = v
        else:
            acc.pop(w, None)
    return acc


def _iter_words(dim, unit, s):
    """All cyclic-bar words (m; a_1..a_s), slots over the non-unit alphabet."""
    abar = [i for i in range(dim) if i != unit]
    word = [0] + [abar[0]] * s

    def rec(pos, prefix):
        if pos == s:
            yield tuple(prefix)
            return
        for a in abar:
            yield from rec(pos + 1, prefix + [a])

    for m in range(dim):
        yield from rec(0, [m])


def check_table_hochschild(dim, unit, mul_idx, mul_coef, cutoff, modulus):
    """Streaming check of b^2 = 0, B^2 = 0 and bB + Bb = 0 on every word
    through the bar cutoff; returns (ok, witness-or-None)."""
    for s in range(cutoff + 1):
        for word in _iter_words(dim, unit, s):
            bb = []
            for w1, c1 in _faces_hochschild(word, mul_idx, mul_coef, unit, dim):
                for w2, c2 in _faces_hochschild(w1, mul_idx, mul_coef, unit, dim):
                    bb.append((w2, c1 * c2))
            if _accumulate(bb, modulus):
                return False, ("b2", word)
            terms = []
            for w1, c1 in _connes_terms(word, unit):
                for w2, c2 in _connes_terms(w1, unit):
                    terms.append((w2, c1 * c2))
            if _accumulate(terms, modulus):
                return False, ("B2", word)
            anti = []
            for w1, c1 in _connes_terms(word, unit):
                for w2, c2 in _faces_hochschild(w1, mul_idx, mul_coef, unit, dim):
                    anti.append((w2, c1 * c2))
            for w1, c1 in _faces_hochschild(word, mul_idx, mul_coef, unit, dim):
                for w2, c2 in _connes_terms(w1, unit):
                    anti.append((w2, c1 * c2))
            if _accumulate(anti, modulus):
                return False, ("bB+Bb", word)
    return True, None


def _faces_bar(word, mul_idx, mul_coef, aug, unit, dim, modulus):
    """Faces of a one-sided bar word [a_1|...|a_s] over the trivial module
    on both ends, with augmentation values aug."""
    s = len(word)
    out = []
    if s == 0:
        return out
    if aug[word[0]]:
        out.append((word[1:], aug[word[0]]))
    for i in range(1, s):
        k = mul_idx[word[i - 1] * dim + word[i]]
        if k >= 0 and k != unit:
            sign = 1 if i % 2 == 0 else -1
            out.append((word[:i - 1] + (k,) + word[i + 1:],
                        sign * mul_coef[word[i - 1] * dim + word[i]]))
    if aug[word[-1]]:
        sign = 1 if s % 2 == 0 else -1
        out.append((word[:-1], sign * aug[word[-1]]))
    return out


def check_table_bar_d2(dim, unit, mul_idx, mul_coef, aug, cutoff, modulus):
    """d^2 = 0 on the normalized B(k, A, k) through the cutoff."""
    abar = [i for i in range(dim) if i != unit]

    def words(s):
        if s == 0:
            yield ()
            return
        for w in words(s - 1):
            for a in abar:
                yield w + (a,)

    for s in range(cutoff + 1):
        for word in words(s):
            dd = []
            for w1, c1 in _faces_bar(word, mul_idx, mul_coef, aug, unit, dim, modulus):
                for w2, c2 in _faces_bar(w1, mul_idx, mul_coef, aug, unit, dim, modulus):
                    dd.append((w2, c1 * c2))
            if _accumulate(dd, modulus):
                return False, word
    return True, None
