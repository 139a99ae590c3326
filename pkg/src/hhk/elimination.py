"""Exact elimination: rank, solve, kernel bases, homology of a two-map composite.

Over Q the elimination is fraction-free: rows are cleared to integers and
every update is an integer cross-multiplication followed by a gcd
normalization, which bounds intermediate growth Bareiss-style.  Over F_p
arithmetic is modular.  Pivoting is deterministic (columns left to right,
lowest live row first), so kernel and homology representatives are
reproducible across runs.
"""
from fractions import Fraction
from math import gcd

from .fields import QQ
from .sparse import SparseMatrix


class CompositeNonzero(Exception):
    """d_out . d_in != 0 where a chain-complex composite was required."""


def _integerize(row: dict) -> dict:
    """Scale a Fraction row to integers (positive leading denominator lcm)."""
    den = 1
    for v in row.values():
        den = den * v.denominator // gcd(den, v.denominator)
    out = {}
    for j, v in row.items():
        w = v.numerator * (den // v.denominator)
        if w:
            out[j] = w
    return out


def _gcd_normalize(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g <= 1:
        return row
    return {j: v // g for j, v in row.items()}


def _echelon_q(rows):
    """Fraction-free echelon over Q.  Mutates nothing; returns (pivots, rows).

    pivots is a list of (row_position, col) in elimination order; the
    returned rows are integer dicts, echelonized.
    """
    work = [_integerize(r) for r in rows]
    live = list(range(len(work)))
    pivots = []
    used = [False] * len(work)
    cols = sorted({j for r in work for j in r})
    for c in cols:
        prow = None
        for i in live:
            if not used[i] and c in work[i]:
                prow = i
                break
        if prow is None:
            continue
        used[prow] = True
        pivots.append((prow, c))
        pv = work[prow][c]
        prow_row = work[prow]
        for i in live:
            if i == prow or used[i] or c not in work[i]:
                continue
            ri = work[i]
            f = ri[c]
            new = {}
            for j in ri.keys() | prow_row.keys():
                w = pv * ri.get(j, 0) - f * prow_row.get(j, 0)
                if w:
                    new[j] = w
            work[i] = _gcd_normalize(new)
    return pivots, work


def _echelon_fp(rows, field):
    p = field.p
    work = [dict(r) for r in rows]
    pivots = []
    used = [False] * len(work)
    cols = sorted({j for r in work for j in r})
    for c in cols:
        prow = None
        for i in range(len(work)):
            if not used[i] and c in work[i]:
                prow = i
                break
        if prow is None:
            continue
        used[prow] = True
        pivots.append((prow, c))
        inv = pow(work[prow][c], p - 2, p)
        work[prow] = {j: (v * inv) % p for j, v in work[prow].items() if v % p}
        prow_row = work[prow]
        for i in range(len(work)):
            if used[i] or c not in work[i]:
                continue
            ri = work[i]
            f = ri[c]
            new = {}
            for j in ri.keys() | prow_row.keys():
                w = (ri.get(j, 0) - f * prow_row.get(j, 0)) % p
                if w:
                    new[j] = w
            work[i] = new
    return pivots, work


def _echelon(rows, field):
    if field.tag == "Q":
        return _echelon_q(rows)
    return _echelon_fp(rows, field)


def _rows_of(m: SparseMatrix):
    rows = [dict() for _ in range(m.rows)]
    for (r, c), v in m.entries.items():
        rows[r][c] = v
    return rows


def rank(m: SparseMatrix) -> int:
    """Rank over the matrix's field."""
    pivots, _ = _echelon(_rows_of(m), m.field)
    return len(pivots)


def solve(m: SparseMatrix, b: dict):
    """Some x with m.x = b, or None if inconsistent.

    b is a sparse column vector {row: value}; free variables are set to
    zero under the fixed pivot order, so the answer is deterministic.
    """
    f = m.field
    ncols = m.cols
    for r in b:
        if not (0 <= r < m.rows):
            raise IndexError(f"b index {r} outside {m.rows}")
    # Augment with column `ncols` carrying b, then echelonize.
    rows = _rows_of(m)
    for r, v in b.items():
        v = f.coerce(v)
        if not f.is_zero(v):
            rows[r][ncols] = v
    pivots, work = _echelon(rows, f)
    piv_cols = {c for _, c in pivots}
    if ncols in piv_cols:
        return None  # a row reduced to (0 ... 0 | nonzero)
    # Back-substitute in reverse pivot order, free variables = 0.
    x = {}
    for prow, c in reversed(pivots):
        row = work[prow]
        rhs = row.get(ncols, 0)
        if f.tag == "Q":
            acc = Fraction(rhs)
            for j, v in row.items():
                if j != c and j != ncols and j in x:
                    acc -= Fraction(v) * x[j]
            val = acc / Fraction(row[c])
        else:
            acc = rhs % f.p
            for j, v in row.items():
                if j != c and j != ncols and j in x:
                    acc = (acc - v * x[j]) % f.p
            val = (acc * pow(row[c], f.p - 2, f.p)) % f.p
        if not f.is_zero(val):
            x[c] = val
        else:
            x.pop(c, None)
    return x


def kernel_basis(m: SparseMatrix):
    """Deterministic basis of {x : m.x = 0}, one vector per free column."""
    f = m.field
    pivots, work = _echelon(_rows_of(m), f)
    piv_cols = {c: prow for prow, c in pivots}
    basis = []
    for j in range(m.cols):
        if j in piv_cols:
            continue
        # x_j = 1, pivot variables back-substituted in reverse order.
        x = {j: f.one}
        for prow, c in reversed(pivots):
            row = work[prow]
            if f.tag == "Q":
                acc = Fraction(0)
                for col, v in row.items():
                    if col != c and col in x:
                        acc -= Fraction(v) * x[col]
                val = acc / Fraction(row[c])
            else:
                acc = 0
                for col, v in row.items():
                    if col != c and col in x:
                        acc = (acc - v * x[col]) % f.p
                val = (acc * pow(row[c], f.p - 2, f.p)) % f.p
            if not f.is_zero(val):
                x[c] = val
        basis.append(x)
    return basis


class Echelon:
    """Incremental echelon with combination tracking.

    insert(v, label) adds a vector; reduce(v) returns (residual, combo)
    with v = residual + sum(combo[label] * original vector for label).
    Leading index = smallest support index.
    """

    def __init__(self, field):
        self.field = field
        self.rows = {}  # lead index -> (vector, combo)

    def reduce(self, v: dict):
        f = self.field
        v = {k: w for k, w in v.items() if not f.is_zero(w)}
        combo = {}
        while v:
            lead = min(v)
            if lead not in self.rows:
                break
            evec, ecombo = self.rows[lead]
            factor = f.div(v[lead], evec[lead])
            for k, w in evec.items():
                s = f.sub(v.get(k, f.zero), f.mul(factor, w))
                if f.is_zero(s):
                    v.pop(k, None)
                else:
                    v[k] = s
            for lbl, w in ecombo.items():
                s = f.add(combo.get(lbl, f.zero), f.mul(factor, w))
                if f.is_zero(s):
                    combo.pop(lbl, None)
                else:
                    combo[lbl] = s
        return v, combo

    def insert(self, v: dict, label):
        """Reduce v and insert the residual if nonzero; returns the residual."""
        resid, combo = self.reduce(v)
        if resid:
            lead = min(resid)
            mycombo = {lbl: self.field.neg(w) for lbl, w in combo.items()}
            mycombo[label] = self.field.one
            # resid = v - sum combo*e  =>  combo entry for label itself is 1
            self.rows[lead] = (resid, mycombo)
        return resid

    def contains(self, v: dict) -> bool:
        resid, _ = self.reduce(v)
        return not resid


def homology_dims(d_in: SparseMatrix, d_out: SparseMatrix):
    """Homology at the middle of  .. --d_in--> C --d_out--> ..

    Returns (dim, basis) where the basis vectors span a complement of
    image(d_in) inside kernel(d_out), chosen by the fixed pivot order.
    Raises CompositeNonzero unless d_out . d_in = 0 exactly.
    """
    if d_in.cols and d_out.rows is not None:
        if d_out.cols != d_in.rows:
            raise ValueError("middle dimensions disagree")
        if not d_out.mul(d_in).is_zero():
            raise CompositeNonzero("d_out . d_in != 0")
    f = d_out.field
    kern = kernel_basis(d_out)
    ech = Echelon(f)
    img_rank = 0
    for j in range(d_in.cols):
        col = d_in.column(j)
        if ech.insert(col, ("img", j)):
            img_rank += 1
    reps = []
    for i, v in enumerate(kern):
        if ech.insert(dict(v), ("ker", i)):
            reps.append(v)
    dim = len(reps)
    assert dim == len(kern) - img_rank, "rank bookkeeping broken"
    return dim, reps
