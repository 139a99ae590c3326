"""Shared machinery for complexes whose basis is a set of bar-type words.

A word is (coefficient indices..., slot tuple); slots hold indices of
non-unit basis elements and each slot contributes its internal degree
plus one to the total degree.  The stable-range rule lives here: a total
degree is trusted only when no word beyond the bar cutoff (or beyond the
algebra's completeness bound) could contribute to it or to the adjacent
degree feeding its homology.
"""
from .graded import GradedSpace, GradedMap, ChainComplexWindow
from .sparse import SparseMatrix


class DegreeProfile:
    """Degree bookkeeping for words base (x) slots^s.

    base_degrees: possible total degrees of the non-slot tensor factors.
    slot_degrees: shifted degrees (internal + 1) of the known slot basis.
    unknown_min: least shifted degree of a slot missing from a truncated
    basis, or None when the basis is complete.
    """

    def __init__(self, base_degrees, slot_degrees, unknown_min=None):
        self.base_degrees = sorted(set(base_degrees))
        self.slot_degrees = sorted(set(slot_degrees))
        self.unknown_min = unknown_min

    def word_sums(self, s, bound):
        """Possible sums of s known slot degrees, capped at bound."""
        sums = {0}
        for _ in range(s):
            sums = {t + d for t in sums for d in self.slot_degrees if t + d <= bound}
            if not sums:
                return sums
        return sums

    def contributes(self, s, t) -> bool:
        """Can bar degree s contribute a chain in total degree t (complete basis)?"""
        if s < 0 or not self.base_degrees:
            return False
        if not self.slot_degrees and s > 0:
            return self._contributes_unknown_only(s, t)
        for b in self.base_degrees:
            if t - b >= 0 and (t - b) in self.word_sums(s, t - b):
                return True
        return self._contributes_unknown_only(s, t)

    def _contributes_unknown_only(self, s, t) -> bool:
        if self.unknown_min is None or s == 0:
            return False
        min_known = self.slot_degrees[0] if self.slot_degrees else self.unknown_min
        least = min(self.base_degrees) + (s - 1) * min_known + self.unknown_min
        return t >= least

    def contributes_beyond_completeness(self, s, t) -> bool:
        return self._contributes_unknown_only(s, t)

    def min_total(self, s) -> int:
        if not self.base_degrees:
            return 0
        least_slot = self.slot_degrees[0] if self.slot_degrees else (self.unknown_min or 1)
        return min(self.base_degrees) + s * least_slot


def coch_contributes(profile: DegreeProfile, s, t) -> bool:
    """Can arity s contribute a cochain in stored total degree t?

    Stored cochain degree = base_degree - (word shifted sum)."""
    if s < 0 or not profile.base_degrees:
        return False
    for b in profile.base_degrees:
        w = b - t
        if w >= 0 and w in profile.word_sums(s, w):
            return True
    return coch_contributes_beyond_completeness(profile, s, t)


def coch_contributes_beyond_completeness(profile: DegreeProfile, s, t) -> bool:
    if profile.unknown_min is None or s == 0 or not profile.base_degrees:
        return False
    min_known = profile.slot_degrees[0] if profile.slot_degrees else profile.unknown_min
    least_word = (s - 1) * min_known + profile.unknown_min
    return max(profile.base_degrees) - least_word >= t


def trusted_flags(profile: DegreeProfile, cutoff: int, window, direction="chain"):
    """Trust flags per total degree in the window.

    For chains the cutoff truncation is a subcomplex, so homology at t is
    exact unless an excluded word could contribute at t or t+1.  For
    cochains the truncation is a quotient complex and the adjacent degree
    is t-1.  Words excluded by the bar cutoff and words missing from an
    incomplete (truncated locally finite) basis both count as excluded:
    a truncated polynomial algebra has honestly different low cochain
    degrees than its locally finite ideal, and those degrees are flagged.
    """
    lo, hi = window
    step = 1 if direction == "chain" else -1
    min_slot = profile.slot_degrees[0] if profile.slot_degrees else (profile.unknown_min or 1)
    flags = {}
    for t in range(lo, hi + 1):
        bad = False
        for tt in (t, t + step):
            # words excluded by the bar cutoff
            s = cutoff + 1
            while not bad:
                if direction == "chain":
                    if profile.min_total(s) > tt:
                        break
                    if profile.contributes(s, tt):
                        bad = True
                else:
                    if not profile.base_degrees or \
                            max(profile.base_degrees) - s * min_slot < tt:
                        break
                    if coch_contributes(profile, s, tt):
                        bad = True
                s += 1
            # words excluded by an incomplete algebra basis, at any bar degree
            if not bad:
                for s2 in range(1, cutoff + 1):
                    if direction == "chain":
                        if profile.contributes_beyond_completeness(s2, tt):
                            bad = True
                            break
                    else:
                        if coch_contributes_beyond_completeness(profile, s2, tt):
                            bad = True
                            break
            if bad:
                break
        flags[t] = not bad
    return flags


class RealizedComplex:
    """A chain-complex window whose basis is a list of structured words."""

    def __init__(self, field, words_by_degree, word_label, diff_op, window,
                 trusted, meta=None):
        self.field = field
        self.window = (int(window[0]), int(window[1]))
        lo, hi = self.window
        self.words = []
        basis = []
        for t in sorted(words_by_degree):
            for w in words_by_degree[t]:
                self.words.append(w)
                basis.append((word_label(w), t))
        self.space = GradedSpace(basis)
        self.lookup = {w: i for i, w in enumerate(self.words)}
        self.trusted = trusted
        self.meta = meta or {}
        entries = []
        for gidx, w in enumerate(self.words):
            t = self.space.degrees[gidx]
            if t - 1 < lo:
                continue
            for w2, c in diff_op(w, t).items():
                tgt = self.lookup.get(w2)
                if tgt is None:
                    continue
                entries.append((gidx, tgt, c))
        self.diff = GradedMap.from_entries(self.space, self.space, -1, field, entries)
        self.ccw = ChainComplexWindow(self.space, self.diff, self.window,
                                      trusted=self.trusted, field=field)

    def vector_of_word(self, w):
        return {self.lookup[w]: self.field.one}

    def check_d2(self):
        self.ccw.check_d2()

    def betti(self, include_untrusted=True):
        return self.ccw.betti(include_untrusted=include_untrusted)

    def homology_basis(self, t):
        dim, reps = self.ccw.homology_at(t)
        return reps

    def degree_of(self, gidx):
        return self.space.degrees[gidx]


def operator_matrix(src: RealizedComplex, tgt: RealizedComplex, op, shift) -> GradedMap:
    """Assemble the GradedMap of a word-level operator between realizations.

    op(word, degree) returns {target_word: coeff}; target words missing from
    the target window are dropped (callers must pick windows so that trusted
    degrees are unaffected)."""
    entries = []
    for gidx, w in enumerate(src.words):
        t = src.space.degrees[gidx]
        if t + shift < tgt.window[0] or t + shift > tgt.window[1]:
            continue
        for w2, c in op(w, t).items():
            j = tgt.lookup.get(w2)
            if j is not None:
                entries.append((gidx, j, c))
    return GradedMap.from_entries(src.space, tgt.space, shift, src.field, entries)


def reduce_against(field, echelon_rows, vec):
    """Reduce vec against {lead: vector} echelon rows; returns residual."""
    v = dict(vec)
    while v:
        lead = min(v)
        row = echelon_rows.get(lead)
        if row is None:
            return v
        factor = field.div(v[lead], row[lead])
        for k, w in row.items():
            s = field.sub(v.get(k, field.zero), field.mul(factor, w))
            if field.is_zero(s):
                v.pop(k, None)
            else:
                v[k] = s
    return v
