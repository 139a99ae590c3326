"""Graded vector spaces, graded maps as per-degree sparse blocks, and
chain-complex windows.

Grading is homological (differentials have degree -1) and internal:
cohomological objects are stored in nonpositive degrees and re-displayed
by reports.  Basis ids are strings namespaced by the constructor that
created them, so any matrix entry can be traced to its source.
"""
from .fields import Field, same_field
from .sparse import SparseMatrix
from .elimination import homology_dims, CompositeNonzero


class GradedSpace:
    """Finite ordered basis of (id, degree) pairs; per-degree order is fixed."""

    def __init__(self, basis):
        self.ids = []
        self.degrees = []
        self.index = {}
        self.by_degree = {}
        self._local = {}
        for bid, deg in basis:
            if bid in self.index:
                raise ValueError(f"duplicate basis id {bid!r}")
            self.index[bid] = len(self.ids)
            self.ids.append(bid)
            self.degrees.append(deg)
            block = self.by_degree.setdefault(deg, [])
            self._local[len(self.ids) - 1] = len(block)
            block.append(len(self.ids) - 1)

    def __len__(self):
        return len(self.ids)

    def dim_at(self, deg) -> int:
        return len(self.by_degree.get(deg, ()))

    def degrees_present(self):
        return sorted(self.by_degree)

    def local_index(self, gidx: int) -> int:
        """Position of a global basis index within its degree block."""
        return self._local[gidx]

    def global_index(self, deg, lidx) -> int:
        return self.by_degree[deg][lidx]

    def vector_blocks(self, vec: dict):
        """Split a global sparse vector {gidx: val} into {deg: {lidx: val}}."""
        out = {}
        for g, v in vec.items():
            out.setdefault(self.degrees[g], {})[self._local[g]] = v
        return out

    def __repr__(self):
        return f"GradedSpace(dim {len(self.ids)}, degrees {self.degrees_present()})"


def tensor(u: GradedSpace, v: GradedSpace) -> GradedSpace:
    """Tensor product; basis pairs ordered lexicographically (u-major)."""
    basis = []
    for i, ui in enumerate(u.ids):
        for j, vj in enumerate(v.ids):
            basis.append((f"{ui}⊗{vj}", u.degrees[i] + v.degrees[j]))
    return GradedSpace(basis)


class GradedMap:
    """A degree-homogeneous linear map stored as per-degree sparse blocks.

    The block at degree n is a matrix source_n -> target_{n+shift} in the
    per-degree local bases.
    """

    def __init__(self, source: GradedSpace, target: GradedSpace, shift: int,
                 blocks=None, field: Field = None):
        self.source = source
        self.target = target
        self.shift = shift
        self.field = field
        self.blocks = dict(blocks or {})
        for d, m in self.blocks.items():
            if m.rows != target.dim_at(d + shift) or m.cols != source.dim_at(d):
                raise ValueError(f"block at degree {d} has wrong shape")

    def block(self, deg) -> SparseMatrix:
        if deg in self.blocks:
            return self.blocks[deg]
        return SparseMatrix.zero(self.target.dim_at(deg + self.shift),
                                 self.source.dim_at(deg), self.field)

    @classmethod
    def from_entries(cls, source, target, shift, field, entries):
        """entries: iterable of (src_gidx, tgt_gidx, value)."""
        blocks = {}
        for s, t, v in entries:
            d = source.degrees[s]
            if target.degrees[t] != d + shift:
                raise ValueError("entry violates homogeneity")
            blocks.setdefault(d, {})[(target.local_index(t), source.local_index(s))] = v
        mats = {}
        for d, ent in blocks.items():
            mats[d] = SparseMatrix(target.dim_at(d + shift), source.dim_at(d), field, ent)
        return cls(source, target, shift, mats, field)

    @classmethod
    def identity(cls, space, field):
        blocks = {d: SparseMatrix.identity(space.dim_at(d), field)
                  for d in space.degrees_present()}
        return cls(space, space, 0, blocks, field)

    def compose(self, other: "GradedMap") -> "GradedMap":
        """self . other (apply other first)."""
        if other.target is not self.source and other.target.ids != self.source.ids:
            raise ValueError("composition mismatch")
        f = same_field(self.field, other.field)
        blocks = {}
        for d in other.blocks:
            m = self.block(d + other.shift).mul(other.blocks[d])
            if not m.is_zero():
                blocks[d] = m
        return GradedMap(other.source, self.target, self.shift + other.shift, blocks, f)

    def add(self, other: "GradedMap") -> "GradedMap":
        if self.shift != other.shift:
            raise ValueError("cannot add maps of different shifts")
        blocks = dict(self.blocks)
        for d, m in other.blocks.items():
            s = blocks[d].add(m) if d in blocks else m
            if s.is_zero():
                blocks.pop(d, None)
            else:
                blocks[d] = s
        return GradedMap(self.source, self.target, self.shift, blocks, self.field)

    def scale(self, c) -> "GradedMap":
        return GradedMap(self.source, self.target, self.shift,
                         {d: m.scale(c) for d, m in self.blocks.items()}, self.field)

    def sub(self, other):
        return self.add(other.scale(self.field.neg(self.field.one)))

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.blocks.values())

    def equals(self, other) -> bool:
        return self.shift == other.shift and self.sub(other).is_zero()

    def apply(self, vec: dict) -> dict:
        """Apply to a global sparse vector {gidx: value}."""
        f = self.field
        out = {}
        for g, x in vec.items():
            d = self.source.degrees[g]
            col = self.source.local_index(g)
            blk = self.blocks.get(d)
            if blk is None:
                continue
            tgt_list = self.target.by_degree.get(d + self.shift, ())
            for (r, c), v in blk.entries.items():
                if c != col:
                    continue
                tg = tgt_list[r]
                s = f.add(out.get(tg, f.zero), f.mul(v, x))
                if f.is_zero(s):
                    out.pop(tg, None)
                else:
                    out[tg] = s
        return out

    def __repr__(self):
        return f"GradedMap(shift {self.shift}, blocks at {sorted(self.blocks)})"


def tensor_map(fmap: GradedMap, gmap: GradedMap, tsource=None, ttarget=None) -> GradedMap:
    """f (x) g with the Koszul sign (-1)^{|g| |x|} on x (x) y."""
    field = same_field(fmap.field, gmap.field)
    tsource = tsource or tensor(fmap.source, gmap.source)
    ttarget = ttarget or tensor(fmap.target, gmap.target)
    shift = fmap.shift + gmap.shift
    sign_flip = gmap.shift % 2 == 1
    entries = []
    nsg = len(gmap.source.ids)
    ntg = len(gmap.target.ids)
    fent = [(s, t, v) for d in sorted(fmap.blocks)
            for (r, c), v in fmap.blocks[d].entries.items()
            for s, t in [(fmap.source.global_index(d, c), fmap.target.global_index(d + fmap.shift, r))]]
    gent = [(s, t, v) for d in sorted(gmap.blocks)
            for (r, c), v in gmap.blocks[d].entries.items()
            for s, t in [(gmap.source.global_index(d, c), gmap.target.global_index(d + gmap.shift, r))]]
    for fs, ft, fv in fent:
        xdeg = fmap.source.degrees[fs]
        sign = field.one
        if sign_flip and xdeg % 2 == 1:
            sign = field.neg(field.one)
        for gs, gt, gv in gent:
            entries.append((fs * nsg + gs, ft * ntg + gt, field.mul(sign, field.mul(fv, gv))))
    return GradedMap.from_entries(tsource, ttarget, shift, field, entries)


def koszul_sign_permutation(sigma, degrees, field):
    """Sign of permuting homogeneous factors by sigma (i-th goes to sigma(i)-th).

    The sign is (-1)^{sum over inverted pairs of deg_i * deg_j}.
    """
    n = len(sigma)
    sign = 1
    for i in range(n):
        for j in range(i + 1, n):
            if sigma[i] > sigma[j] and degrees[i] % 2 == 1 and degrees[j] % 2 == 1:
                sign = -sign
    return field.one if sign == 1 else field.neg(field.one)


def tensor_many(factors):
    space = factors[0]
    for fac in factors[1:]:
        space = tensor(space, fac)
    return space


def twist(sigma, factors, field) -> GradedMap:
    """The twist map permuting tensor factors with composite Koszul signs.

    sigma is a tuple with sigma[i] = target slot of source factor i
    (0-based).  Satisfies twist(rho) . twist(sigma) = twist(rho . sigma).
    """
    n = len(sigma)
    if sorted(sigma) != list(range(n)):
        raise ValueError("not a permutation")
    source = tensor_many(factors)
    tfactors = [None] * n
    for i, s in enumerate(sigma):
        tfactors[s] = factors[i]
    target = tensor_many(tfactors)
    dims = [len(f.ids) for f in factors]
    entries = []
    # enumerate all basis tuples
    def rec(i, idxs):
        if i == n:
            degs = [factors[k].degrees[idxs[k]] for k in range(n)]
            sign = koszul_sign_permutation(sigma, degs, field)
            sidx = 0
            for k in range(n):
                sidx = sidx * dims[k] + idxs[k]
            tidxs = [None] * n
            for k in range(n):
                tidxs[sigma[k]] = idxs[k]
            tdims = [len(tfactors[k].ids) for k in range(n)]
            tidx = 0
            for k in range(n):
                tidx = tidx * tdims[k] + tidxs[k]
            entries.append((sidx, tidx, sign))
            return
        for x in range(dims[i]):
            rec(i + 1, idxs + [x])
    rec(0, [])
    return GradedMap.from_entries(source, target, 0, field, entries)


class BettiRow:
    __slots__ = ("degree", "dim", "trusted", "representatives")

    def __init__(self, degree, dim, trusted, representatives):
        self.degree = degree
        self.dim = dim
        self.trusted = trusted
        self.representatives = representatives

    def __repr__(self):
        flag = "" if self.trusted else " (untrusted)"
        return f"H_{self.degree} = {self.dim}{flag}"


class ChainComplexWindow:
    """A finite slab of a chain complex: a graded space, a differential of
    shift -1, explicit window bounds, and per-degree trust flags.

    A degree is trusted only when every cycle and boundary affecting its
    homology lies inside the window (the stable-range rule of the complex
    builder decides this; by default every interior degree is trusted).
    """

    def __init__(self, space: GradedSpace, differential: GradedMap,
                 window, trusted=None, field=None):
        self.space = space
        self.differential = differential
        if differential.shift != -1:
            raise ValueError("differential must have shift -1")
        self.window = (int(window[0]), int(window[1]))
        self.field = field or differential.field
        if trusted is None:
            lo, hi = self.window
            trusted = {d: lo < d < hi for d in range(lo, hi + 1)}
        self.trusted = trusted

    def check_d2(self):
        lo, hi = self.window
        d = self.differential
        for deg in range(lo, hi + 1):
            comp = d.block(deg - 1).mul(d.block(deg))
            if not comp.is_zero():
                raise CompositeNonzero(f"d^2 != 0 at degree {deg}")

    def homology_at(self, deg):
        d = self.differential
        return homology_dims(d.block(deg + 1), d.block(deg))

    def betti(self, degrees=None, include_untrusted=True, threads=1):
        """Per-degree homology table; untrusted degrees are flagged, never
        hidden.  Degrees are independent, so they may be computed on a
        thread pool; rows are assembled in degree order regardless of
        completion order."""
        self.check_d2()
        lo, hi = self.window
        if degrees is None:
            degrees = range(lo, hi + 1)
        wanted = []
        for deg in degrees:
            if deg < lo or deg > hi:
                continue
            trusted = bool(self.trusted.get(deg, False))
            if not trusted and not include_untrusted:
                continue
            wanted.append((deg, trusted))
        if threads > 1 and len(wanted) > 1:
            from concurrent.futures import ThreadPoolExecutor
            with ThreadPoolExecutor(max_workers=threads) as pool:
                computed = list(pool.map(lambda dt: self.homology_at(dt[0]), wanted))
        else:
            computed = [self.homology_at(deg) for deg, _ in wanted]
        return [BettiRow(deg, dim, trusted, reps)
                for (deg, trusted), (dim, reps) in zip(wanted, computed)]
