"""Normalized Hochschild chain and cochain complexes with the operator
suite: b, the Connes operator B, cup, the Gerstenhaber bracket, cap, the
contraction i_a, the Lie derivative L_a = [B, i_a], and the calculus
relation checker.

Chain conventions.  A chain m[a_1|...|a_n] in M (x) Abar^{(x)n} has total
degree |m| + n + sum|a_i|.  The differential is the Moore sum of the
cyclic-bar face maps (the wrap-around face carries the internal-degree
Koszul sign of rotating a_n to the front) plus (-1)^n times the internal
tensor differential.  B is the normalized operator s . N built from the
signed cyclic rotation; with these choices b^2 = 0, B^2 = 0 and
bB + Bb = 0 hold exactly, not merely up to homotopy.

Cochain conventions.  A cochain is a map Abar^{(x)n} -> M stored in total
degree |value| - (n + |word|); the differential is the Hom-complex
differential over the bar resolution.  The cup product is evaluation
through the bar diagonal, strictly associative and unital; the bracket is
the brace-insertion commutator with shifted-degree Koszul signs; cap
evaluates the cochain on the leading slots and multiplies onto the
coefficient, normalized so that (z . f) . g = z . (f cup g) on the nose.
"""
from .algebra import DgAlgebra, DgModule, self_bimodule
from .bar import (HomologyBases, _enumerate_slot_words, _word_internal,
                  _slot_profile, _demerge_table, _reverse_diff, _require_side)
from .vec import add_into, scale
from .wordcx import DegreeProfile, RealizedComplex, trusted_flags


class CoefficientsNotSelf(Exception):
    pass


class WindowOverflow(Exception):
    pass


class HomologyClass:
    """A cycle's class: degree, representative vector over its complex."""

    def __init__(self, complex_window, kind, degree, vector):
        self.complex = complex_window
        self.kind = kind
        self.degree = degree
        self.vector = vector

    def words(self):
        rz = self.complex.realized
        return {rz.words[g]: c for g, c in self.vector.items()}

    def __repr__(self):
        return f"HomologyClass({self.kind}, degree {self.degree})"


class HochschildChainWindow:
    """CH_*(A, M) = M (x) Abar^{(x)n}, realized in a window."""

    def __init__(self, a: DgAlgebra, m: DgModule, bar_cutoff, window):
        _require_side(m, "bi")
        self.a, self.m = a, m
        self.cutoff = bar_cutoff
        self.window = (int(window[0]), int(window[1]))
        lo, hi = self.window
        f = a.field
        slot_degs, unknown = _slot_profile(a)
        self.profile = DegreeProfile(sorted(set(m.space.degrees)), slot_degs, unknown)
        self.trusted = trusted_flags(self.profile, bar_cutoff, self.window, "chain")
        words_by_degree = {}
        for s in range(bar_cutoff + 1):
            for mi in range(len(m.space)):
                room = hi + 1 - m.degree(mi)
                if room < s:
                    continue
                for w in _enumerate_slot_words(a, s, room):
                    t = m.degree(mi) + s + _word_internal(a, w)
                    if lo - 1 <= t <= hi + 1:
                        words_by_degree.setdefault(t, []).append((mi, w))
        ids_m, ids_a = m.space.ids, a.space.ids

        def label(word):
            mi, w = word
            return f"{ids_m[mi]}[{'|'.join(ids_a[i] for i in w)}]"

        self.realized = RealizedComplex(
            f, words_by_degree, label, self._b_word, (lo - 1, hi + 1),
            trusted=self.trusted, meta={"kind": "hochschild-chain", "cutoff": bar_cutoff})

    def _b_word(self, word, t):
        a, m = self.a, self.m
        f = a.field
        mi, w = word
        s = len(w)
        out = {}
        neg = f.neg(f.one)

        def sgn(k):
            return f.one if k % 2 == 0 else neg

        if s > 0:
            for m2, c in m.act_right(mi, w[0]).items():
                add_into(f, out, {(m2, w[1:]): c})
            for i in range(1, s):
                prod = a.project_abar(a.mul_basis(w[i - 1], w[i]))
                for k, c in prod.items():
                    add_into(f, out, {(mi, w[:i - 1] + (k,) + w[i + 1:]): f.mul(sgn(i), c)})
            # wrap face: rotate a_s to the front with its Koszul sign
            rot = (m.degree(mi) + _word_internal(a, w[:-1])) * a.degree(w[-1])
            coeff = f.mul(sgn(s), sgn(rot))
            for m2, c in m.act_left(w[-1], mi).items():
                add_into(f, out, {(m2, w[:-1]): f.mul(coeff, c)})
        gs = sgn(s)
        for m2, c in m.diff_vec({mi: f.one}).items():
            add_into(f, out, {(m2, w): f.mul(gs, c)})
        pref = m.degree(mi)
        for j in range(s):
            coeff = f.mul(gs, sgn(pref))
            for u, c in a.project_abar(a.diff_basis(w[j])).items():
                add_into(f, out, {(mi, w[:j] + (u,) + w[j + 1:]): f.mul(coeff, c)})
            pref += a.degree(w[j])
        return out

    def connes_b_word(self, word, t):
        """B = s . N on the normalized complex; requires M = A.

        Every output word carries all letters of the input in bar slots, so
        the whole sum dies when the input coefficient is the unit; otherwise
        each of the n + 1 cyclic terms survives with the sign accumulated
        from t(c_0[c_1|...|c_m]) = (-1)^m (-1)^{|c_m|(|c_0|+...+|c_{m-1}|)}
        c_m[c_0|...|c_{m-1}]."""
        if self.m.space is not self.a.space:
            raise CoefficientsNotSelf("Connes B needs coefficients in A itself")
        a = self.a
        f = a.field
        mi, w = word
        if mi == a.unit_index:
            return {}
        out = {}
        coef, slots = mi, w
        sign = f.one
        for i in range(len(w) + 1):
            add_into(f, out, {(a.unit_index, (coef,) + slots): sign})
            if i == len(w):
                break
            last = slots[-1]
            parity = len(slots) + a.degree(last) * (a.degree(coef) + _word_internal(a, slots[:-1]))
            if parity % 2 == 1:
                sign = f.neg(sign)
            coef, slots = last, (coef,) + slots[:-1]
        return out

    def betti(self, include_untrusted=False, threads=1):
        lo, hi = self.window
        rows = self.realized.ccw.betti(include_untrusted=include_untrusted,
                                       threads=threads)
        return [row for row in rows if lo <= row.degree <= hi]


class HochschildCochainWindow:
    """CH^*(A, M) = maps Abar^{(x)n} -> M, realized on cochain words."""

    def __init__(self, a: DgAlgebra, m: DgModule, bar_cutoff, window):
        _require_side(m, "bi")
        self.a, self.m = a, m
        self.cutoff = bar_cutoff
        self.window = (int(window[0]), int(window[1]))
        lo, hi = self.window
        f = a.field
        slot_degs, unknown = _slot_profile(a)
        self.profile = DegreeProfile(sorted(set(m.space.degrees)), slot_degs, unknown)
        self.trusted = trusted_flags(self.profile, bar_cutoff, self.window, "cochain")
        self._demerge = _demerge_table(a)
        self._rev_diff = _reverse_diff(a)
        words_by_degree = {}
        for s in range(bar_cutoff + 1):
            for mi in range(len(m.space)):
                budget = m.degree(mi) - (lo - 1)
                if budget < s:
                    continue
                for w in _enumerate_slot_words(a, s, budget):
                    t = m.degree(mi) - (s + _word_internal(a, w))
                    if lo - 1 <= t <= hi + 1:
                        words_by_degree.setdefault(t, []).append((w, mi))
        ids_m, ids_a = m.space.ids, a.space.ids

        def label(word):
            w, mi = word
            return f"<[{'|'.join(ids_a[i] for i in w)}] -> {ids_m[mi]}>"

        self.realized = RealizedComplex(
            f, words_by_degree, label, self._delta_word, (lo - 1, hi + 1),
            trusted=self.trusted, meta={"kind": "hochschild-cochain", "cutoff": bar_cutoff})

    def _delta_word(self, word, t):
        a, m = self.a, self.m
        f = a.field
        w, mi = word
        s = len(w)
        out = {}
        neg = f.neg(f.one)

        def sgn(k):
            return f.one if k % 2 == 0 else neg

        mo = f.mul(neg, sgn(t))
        # (T1) left-coefficient face
        for x in a.abar_indices:
            lin = sgn(t * a.degree(x))
            for m2, c in m.act_left(x, mi).items():
                add_into(f, out, {((x,) + w, m2): f.mul(f.mul(mo, lin), c)})
        # (T2) interior merges
        for j in range(s):
            for (u, v, c) in self._demerge.get(w[j], ()):
                w2 = w[:j] + (u, v) + w[j + 1:]
                add_into(f, out, {(w2, mi): f.mul(f.mul(mo, sgn(j + 1)), c)})
        # (T3) right-coefficient face
        for x in a.abar_indices:
            coeff = f.mul(mo, sgn(s + 1))
            for m2, c in m.act_right(mi, x).items():
                add_into(f, out, {(w + (x,), m2): f.mul(coeff, c)})
        # (T4) internal precomposition
        isign = f.mul(mo, sgn(s))
        pref = 0
        for j in range(s):
            coeff = f.mul(isign, sgn(pref))
            for (u, c) in self._rev_diff.get(w[j], ()):
                add_into(f, out, {(w[:j] + (u,) + w[j + 1:], mi): f.mul(coeff, c)})
            pref += a.degree(w[j])
        # (T5) postcomposition with d_M
        for m2, c in m.diff_vec({mi: f.one}).items():
            add_into(f, out, {(w, m2): c})
        return out

    def betti(self, include_untrusted=False, threads=1):
        lo, hi = self.window
        rows = self.realized.ccw.betti(include_untrusted=include_untrusted,
                                       threads=threads)
        return [row for row in rows if lo <= row.degree <= hi]


def hh_homology(a, m, cutoff, window, include_untrusted=False, threads=1):
    cx = HochschildChainWindow(a, m, cutoff, window)
    cx.realized.check_d2()
    return cx.betti(include_untrusted=include_untrusted, threads=threads), cx


def hh_cohomology(a, m, cutoff, window, include_untrusted=False, threads=1):
    cx = HochschildCochainWindow(a, m, cutoff, window)
    cx.realized.check_d2()
    return cx.betti(include_untrusted=include_untrusted, threads=threads), cx


# -- chain-level operator formulas ----------------------------------------

def connes_b_map(chains: HochschildChainWindow):
    """The normalized Connes operator as a GradedMap of shift +1."""
    from .wordcx import operator_matrix
    return operator_matrix(chains.realized, chains.realized,
                           chains.connes_b_word, +1)


def _sgn_of(field, parity):
    return field.one if parity % 2 == 0 else field.neg(field.one)


def cup_words(a: DgAlgebra, fvec: dict, deg_g, gvec: dict) -> dict:
    """Chain-level cup product of cochain vectors (self coefficients).

    (f cup g)(w1 w2) = (-1)^{|g| deg(w1)} f(w1) g(w2) with deg(w1) the total
    shifted degree of the consumed word."""
    f = a.field
    out = {}
    for (w1, t1), c1 in fvec.items():
        w1deg = len(w1) + _word_internal(a, w1)
        sign = _sgn_of(f, deg_g * w1deg)
        for (w2, t2), c2 in gvec.items():
            prod = a.mul_basis(t1, t2)
            coeff = f.mul(sign, f.mul(c1, c2))
            for tgt, c in prod.items():
                add_into(f, out, {(w1 + w2, tgt): f.mul(coeff, c)})
    return out


def cap_words(a: DgAlgebra, zvec: dict, deg_f, fvec: dict) -> dict:
    """Chain-level cap z . f: evaluate f on the leading slots, multiply onto
    the coefficient.  The (-1)^{|f|(|f|-1)/2} gauge makes cap a strict right
    action over the cup product."""
    f = a.field
    eps = _sgn_of(f, (deg_f * (deg_f - 1)) // 2)
    out = {}
    for (mi, w), cz in zvec.items():
        for (wf, tgt), cf in fvec.items():
            p = len(wf)
            if len(w) < p or w[:p] != wf:
                continue
            sign = f.mul(eps, _sgn_of(f, deg_f * a.degree(mi)))
            coeff = f.mul(sign, f.mul(cz, cf))
            for m2, c in a.mul_basis(mi, tgt).items():
                add_into(f, out, {(m2, w[p:]): f.mul(coeff, c)})
    return out


def circle_words(a: DgAlgebra, fvec: dict, deg_f, gvec: dict, deg_g) -> dict:
    """Brace insertion f . g = sum_i f(1,...,g,...,1) with shifted-degree
    Koszul signs (slot i carries degree |a_i| + 1, g carries |g| + 1)."""
    f = a.field
    out = {}
    for (wf, tf), cf in fvec.items():
        prefix = 0
        for i in range(len(wf)):
            sign = _sgn_of(f, (deg_g + 1) * prefix)
            for (wg, tg), cg in gvec.items():
                if tg != a.unit_index and wf[i] == tg:
                    w2 = wf[:i] + wg + wf[i + 1:]
                    add_into(f, out, {(w2, tf): f.mul(sign, f.mul(cf, cg))})
            prefix += a.degree(wf[i]) + 1
    return out


def bracket_words(a: DgAlgebra, fvec: dict, deg_f, gvec: dict, deg_g) -> dict:
    """Gerstenhaber bracket [f, g] = f.g - (-1)^{(|f|+1)(|g|+1)} g.f."""
    f = a.field
    out = circle_words(a, fvec, deg_f, gvec, deg_g)
    swap = circle_words(a, gvec, deg_g, fvec, deg_f)
    sign = f.neg(_sgn_of(f, (deg_f + 1) * (deg_g + 1)))
    add_into(f, out, swap, sign)
    return out


def unit_cochain(a: DgAlgebra) -> dict:
    """The arity-0 cochain with value 1."""
    return {((), a.unit_index): a.field.one}


# -- homology-level operations ---------------------------------------------

class HochschildOps:
    """Homology-level operator algebra on HH_* and HH^* of (A, A).

    Builds both realized complexes, homology bases over the window, and
    exposes cup/bracket/cap/i/L as maps of homology coordinates.
    """

    def __init__(self, a: DgAlgebra, cutoff, chain_window, cochain_window=None,
                 check=True):
        self.a = a
        self.m = self_bimodule(a)
        self.chains = HochschildChainWindow(a, self.m, cutoff, chain_window)
        if cochain_window is None:
            lo, hi = chain_window
            cochain_window = (-hi, max(a.space.degrees_present()) if a.space.degrees_present() else 0)
        self.cochains = HochschildCochainWindow(a, self.m, cutoff, cochain_window)
        if check:
            self.chains.realized.check_d2()
            self.cochains.realized.check_d2()
        self._h_chain = None
        self._h_coch = None
        self.B = connes_b_map(self.chains)

    @property
    def h_chain(self):
        if self._h_chain is None:
            lo, hi = self.chains.window
            self._h_chain = HomologyBases(self.chains.realized, range(lo, hi + 1))
        return self._h_chain

    @property
    def h_coch(self):
        if self._h_coch is None:
            clo, chi = self.cochains.window
            self._h_coch = HomologyBases(self.cochains.realized, range(clo, chi + 1))
        return self._h_coch

    # vector plumbing ------------------------------------------------------
    def _coch_words(self, vec):
        rz = self.cochains.realized
        return {rz.words[g]: c for g, c in vec.items()}

    def _coch_gidx(self, words):
        rz = self.cochains.realized
        out = {}
        for w, c in words.items():
            g = rz.lookup.get(w)
            if g is None:
                raise WindowOverflow(f"cochain word leaves the window: {w}")
            out[g] = c
        return out

    def _chain_words(self, vec):
        rz = self.chains.realized
        return {rz.words[g]: c for g, c in vec.items()}

    def _chain_gidx(self, words):
        rz = self.chains.realized
        out = {}
        for w, c in words.items():
            g = rz.lookup.get(w)
            if g is None:
                raise WindowOverflow(f"chain word leaves the window: {w}")
            out[g] = c
        return out

    def cochain_class(self, t, i) -> HomologyClass:
        rep = self.h_coch.reps[t][i]
        return HomologyClass(self.cochains, "cochain", t, dict(rep))

    def chain_class(self, t, i) -> HomologyClass:
        rep = self.h_chain.reps[t][i]
        return HomologyClass(self.chains, "chain", t, dict(rep))

    def unit_class(self) -> HomologyClass:
        vec = self._coch_gidx(unit_cochain(self.a))
        return HomologyClass(self.cochains, "cochain", 0, vec)

    # chain-level ops reduced to homology -----------------------------------
    def cup(self, fc: HomologyClass, gc: HomologyClass) -> HomologyClass:
        t = fc.degree + gc.degree
        if t not in self.h_coch.reps:
            raise WindowOverflow(f"cup lands at degree {t}, outside the window")
        words = cup_words(self.a, self._coch_words(fc.vector), gc.degree,
                          self._coch_words(gc.vector))
        vec = self._coch_gidx(words)
        coords = self.h_coch.reduce(t, vec)
        return HomologyClass(self.cochains, "cochain", t,
                             self.h_coch.class_vector(t, coords))

    def cup_coords(self, fc, gc):
        words = cup_words(self.a, self._coch_words(fc.vector), gc.degree,
                          self._coch_words(gc.vector))
        return self.h_coch.reduce(fc.degree + gc.degree, self._coch_gidx(words))

    def bracket(self, fc: HomologyClass, gc: HomologyClass) -> HomologyClass:
        t = fc.degree + gc.degree + 1
        if t not in self.h_coch.reps:
            raise WindowOverflow(f"bracket lands at degree {t}, outside the window")
        words = bracket_words(self.a, self._coch_words(fc.vector), fc.degree,
                              self._coch_words(gc.vector), gc.degree)
        vec = self._coch_gidx(words)
        coords = self.h_coch.reduce(t, vec)
        return HomologyClass(self.cochains, "cochain", t,
                             self.h_coch.class_vector(t, coords))

    def cap(self, zc: HomologyClass, fc: HomologyClass) -> HomologyClass:
        t = zc.degree + fc.degree
        if t not in self.h_chain.reps:
            raise WindowOverflow(f"cap lands at degree {t}, outside the window")
        words = cap_words(self.a, self._chain_words(zc.vector), fc.degree,
                          self._coch_words(fc.vector))
        vec = self._chain_gidx(words)
        coords = self.h_chain.reduce(t, vec)
        return HomologyClass(self.chains, "chain", t,
                             self.h_chain.class_vector(t, coords))

    def iota_apply(self, fc: HomologyClass, zc: HomologyClass) -> HomologyClass:
        """i_f(z) = (-1)^{|f||z|} z . f."""
        out = self.cap(zc, fc)
        if (fc.degree * zc.degree) % 2 == 1:
            out.vector = scale(self.a.field, out.vector, self.a.field.neg(self.a.field.one))
        return out

    def b_on_class(self, zc: HomologyClass) -> HomologyClass:
        vec = self.B.apply(zc.vector)
        t = zc.degree + 1
        if t not in self.h_chain.reps:
            raise WindowOverflow(f"B lands at degree {t}, outside the window")
        coords = self.h_chain.reduce(t, vec)
        return HomologyClass(self.chains, "chain", t,
                             self.h_chain.class_vector(t, coords))

    # operator matrices on homology -----------------------------------------
    def iota_matrix(self, fc: HomologyClass, t):
        """Matrix of i_f: HH_t -> HH_{t+|f|} in the homology bases."""
        cols = {}
        for j in range(self.h_chain.dim(t)):
            z = self.chain_class(t, j)
            img = self.iota_apply(fc, z)
            cols[j] = self.h_chain.reduce(img.degree, img.vector)
        return cols

    def b_matrix(self, t):
        cols = {}
        for j in range(self.h_chain.dim(t)):
            z = self.chain_class(t, j)
            img = self.b_on_class(z)
            cols[j] = self.h_chain.reduce(t + 1, img.vector)
        return cols

    def lie_matrix(self, fc: HomologyClass, t):
        """L_f = B i_f - (-1)^{|f|} i_f B on homology, as columns at degree t."""
        f = self.a.field
        sign = _sgn_of(f, fc.degree)
        cols = {}
        for j in range(self.h_chain.dim(t)):
            z = self.chain_class(t, j)
            first = self.b_on_class(self.iota_apply(fc, z))
            second = self.iota_apply(fc, self.b_on_class(z))
            out = dict(first.vector)
            add_into(f, out, second.vector, f.neg(sign))
            cols[j] = self.h_chain.reduce(t + fc.degree + 1, out)
        return cols

    def classes_in_cohomological_range(self, max_cohom_degree, trusted_only=True):
        """All cochain homology basis classes with -degree <= max_cohom_degree."""
        out = []
        clo, chi = self.cochains.window
        for t in range(chi, clo - 1, -1):
            if -t > max_cohom_degree:
                continue
            if trusted_only and not self.cochains.trusted.get(t, False):
                continue
            for i in range(self.h_coch.dim(t)):
                out.append(self.cochain_class(t, i))
        return out


def verify_gerstenhaber(ops: HochschildOps, max_cohom_degree):
    """Homology-level Gerstenhaber suite: graded commutativity of cup,
    antisymmetry and Jacobi for the bracket, and the Poisson rule.
    Returns a list of failures with witnesses."""
    f = ops.a.field
    failures = []
    classes = ops.classes_in_cohomological_range(max_cohom_degree)

    def sgn(k):
        return f.one if k % 2 == 0 else f.neg(f.one)

    checked = {"comm": 0, "antisym": 0, "jacobi": 0, "poisson": 0}
    for a_ in classes:
        for b_ in classes:
            try:
                cup_ab = ops.cup(a_, b_)
                cup_ba = ops.cup(b_, a_)
            except WindowOverflow:
                cup_ab = None
            if cup_ab is not None:
                want = scale(f, cup_ba.vector, sgn(a_.degree * b_.degree))
                diffv = dict(cup_ab.vector)
                add_into(f, diffv, want, f.neg(f.one))
                checked["comm"] += 1
                if diffv:
                    failures.append(("cup-commutativity", a_.degree, b_.degree))
            try:
                br_ab = ops.bracket(a_, b_)
                br_ba = ops.bracket(b_, a_)
            except WindowOverflow:
                continue
            want = scale(f, br_ba.vector,
                         f.neg(sgn((a_.degree + 1) * (b_.degree + 1))))
            diffv = dict(br_ab.vector)
            add_into(f, diffv, want, f.neg(f.one))
            checked["antisym"] += 1
            if diffv:
                failures.append(("bracket-antisymmetry", a_.degree, b_.degree))
    for a_ in classes:
        for b_ in classes:
            for c_ in classes:
                # Jacobi in Leibniz form: [[a,b],c] = [a,[b,c]] -
                # (-1)^{(|a|+1)(|b|+1)} [b,[a,c]]
                try:
                    lhs = ops.bracket(ops.bracket(a_, b_), c_).vector
                    t1 = ops.bracket(a_, ops.bracket(b_, c_)).vector
                    t2 = ops.bracket(b_, ops.bracket(a_, c_)).vector
                except WindowOverflow:
                    lhs = None
                if lhs is not None:
                    rhs = dict(t1)
                    add_into(f, rhs, t2,
                             f.neg(sgn((a_.degree + 1) * (b_.degree + 1))))
                    diffv = dict(lhs)
                    add_into(f, diffv, rhs, f.neg(f.one))
                    checked["jacobi"] += 1
                    if diffv:
                        failures.append(("jacobi", a_.degree, b_.degree, c_.degree))
                # Poisson: [a, b cup c] = [a,b] cup c + (-1)^{(|a|+1)|b|} b cup [a,c]
                try:
                    lhs = ops.bracket(a_, ops.cup(b_, c_)).vector
                    rhs = dict(ops.cup(ops.bracket(a_, b_), c_).vector)
                    add_into(f, rhs, ops.cup(b_, ops.bracket(a_, c_)).vector,
                             sgn((a_.degree + 1) * b_.degree))
                except WindowOverflow:
                    continue
                diffv = dict(lhs)
                add_into(f, diffv, rhs, f.neg(f.one))
                checked["poisson"] += 1
                if diffv:
                    failures.append(("poisson", a_.degree, b_.degree, c_.degree))
    return failures, checked


def _cols_equal(field, cols1, cols2):
    keys = set(cols1) | set(cols2)
    for k in keys:
        u = cols1.get(k, {})
        v = cols2.get(k, {})
        if set(u) != set(v):
            return False
        for i in u:
            if not field.is_zero(field.sub(u[i], v[i])):
                return False
    return True


def verify_calculus(ops: HochschildOps, max_cohom_degree, chain_degrees=None):
    """Check i_{[a,b]} = (-1)^{|a|+1}[L_a, i_b] and
    L_{a cup b} = L_a i_b + (-1)^{|a|} i_a L_b on homology, over all class
    pairs in the window; returns a report of failures with witnesses."""
    f = ops.a.field
    failures = []
    classes = ops.classes_in_cohomological_range(max_cohom_degree)
    lo, hi = ops.chains.window
    if chain_degrees is None:
        chain_degrees = [t for t in range(lo, hi + 1) if ops.chains.trusted.get(t)]

    def compose(colsA, colsB, deg_shift_b, t):
        # (A . B) at degree t: B: t -> t+shift_b then A
        out = {}
        for j, col in colsB.items():
            acc = {}
            for i, c in col.items():
                add_into(f, acc, {k: f.mul(c, v) for k, v in colsA.get(i, {}).items()})
            out[j] = acc
        return out

    for ac in classes:
        for bc in classes:
            try:
                br = ops.bracket(ac, bc)
                cupped = ops.cup(ac, bc)
            except WindowOverflow:
                continue
            for t in chain_degrees:
                tb = t + bc.degree
                ta = t + ac.degree
                tboth = t + ac.degree + bc.degree
                needed = [t, tb, ta, tboth, tboth + 1, tb + 1, ta + 1, t + 1,
                          t + br.degree, t + cupped.degree + 1]
                if any(not (lo <= d <= hi) or not ops.chains.trusted.get(d, False)
                       for d in needed):
                    continue
                try:
                    i_br = ops.iota_matrix(br, t)
                    L_a_after = ops.lie_matrix(ac, tb)
                    i_b_first = ops.iota_matrix(bc, t)
                    i_b_after = ops.iota_matrix(bc, t + ac.degree + 1)
                    L_a_first = ops.lie_matrix(ac, t)
                    i_a_after = ops.iota_matrix(ac, tb + 1)
                    L_cup = ops.lie_matrix(cupped, t)
                    L_b_first = ops.lie_matrix(bc, t)
                    i_a_on = ops.iota_matrix(ac, tb + 1)
                except WindowOverflow:
                    continue
                # i_{[a,b]} = (-1)^{|a|+1} (L_a i_b - (-1)^{(|a|+1)|b|} i_b L_a)
                lhs = i_br
                term1 = compose(L_a_after, i_b_first, bc.degree, t)
                term2 = compose(i_b_after, L_a_first, ac.degree + 1, t)
                rhs = {}
                s1 = _sgn_of(f, ac.degree + 1)
                s2 = f.neg(f.mul(s1, _sgn_of(f, (ac.degree + 1) * bc.degree)))
                for j in set(term1) | set(term2):
                    acc = {}
                    add_into(f, acc, term1.get(j, {}), s1)
                    add_into(f, acc, term2.get(j, {}), s2)
                    if acc:
                        rhs[j] = acc
                if not _cols_equal(f, {j: c for j, c in lhs.items() if c},
                                   {j: c for j, c in rhs.items() if c}):
                    failures.append(("iota-bracket", ac.degree, bc.degree, t))
                # L_{a cup b} = L_a i_b + (-1)^{|a|} i_a L_b
                lhs2 = L_cup
                termA = compose(L_a_after, i_b_first, bc.degree, t)
                termB = compose(i_a_on, L_b_first, bc.degree + 1, t)
                rhs2 = {}
                for j in set(termA) | set(termB):
                    acc = {}
                    add_into(f, acc, termA.get(j, {}))
                    add_into(f, acc, termB.get(j, {}), _sgn_of(f, ac.degree))
                    if acc:
                        rhs2[j] = acc
                if not _cols_equal(f, {j: c for j, c in lhs2.items() if c},
                                   {j: c for j, c in rhs2.items() if c}):
                    failures.append(("lie-cup", ac.degree, bc.degree, t))
    return failures
