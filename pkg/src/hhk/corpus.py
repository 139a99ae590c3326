"""Built-in corpus: the algebras and simplicial sets every verification
suite runs against.

Each entry is a callable returning either (DgAlgebra, HopfData-or-None)
or a simplicial-set document builder; `emit` serializes to the JSON spec
formats.
"""
from fractions import Fraction
from itertools import permutations
from math import comb

from .fields import QQ, GF
from .graded import GradedSpace
from .algebra import DgAlgebra, HopfData, group_algebra, algebra_to_json


class UnknownCorpusEntry(KeyError):
    pass


def ground_field(field=QQ):
    space = GradedSpace([("1", 0)])
    alg = DgAlgebra("k", field, space, {(0, 0): {0: field.one}}, {0: field.one})
    hopf = HopfData(alg, {0: {(0, 0): field.one}}, {0: field.one},
                    {0: {0: field.one}}, strict=True)
    return alg, hopf


def _cyclic_table(n):
    names = ["e"] + [f"g{i}" if i > 1 else "g" for i in range(1, n)]
    tbl = {}
    for i in range(n):
        for j in range(n):
            tbl[(names[i], names[j])] = names[(i + j) % n]
    return tbl


def _s3_table():
    elems = sorted(permutations(range(3)))
    name = {p: "".join(map(str, p)) for p in elems}
    tbl = {}
    for p in elems:
        for q in elems:
            pq = tuple(p[q[i]] for i in range(3))
            tbl[(name[p], name[q])] = name[pq]
    return tbl


def c2_algebra(field):
    return group_algebra(_cyclic_table(2), field, name="kC2")


def c3_algebra(field):
    return group_algebra(_cyclic_table(3), field, name="kC3")


def s3_algebra(field):
    return group_algebra(_s3_table(), field, name="kS3")


def polynomial_even(field=QQ, gen_degree=2, max_degree=16, name="Q[x]|x|=2"):
    """k[x] with |x| = gen_degree (even), truncated above max_degree.

    The truncation is the quotient by the ideal of degrees beyond
    max_degree, so all identities hold exactly; locality records g_min
    and the completeness bound for the stable-range rule."""
    if gen_degree % 2 != 0 or gen_degree < 1:
        raise ValueError("gen_degree must be a positive even integer")
    imax = max_degree // gen_degree
    space = GradedSpace([("1" if i == 0 else f"x^{i}" if i > 1 else "x", i * gen_degree)
                         for i in range(imax + 1)])
    f = field
    mul = {}
    for i in range(imax + 1):
        for j in range(imax + 1):
            if i + j <= imax:
                mul[(i, j)] = {i + j: f.one}
    alg = DgAlgebra(name, f, space, mul, {0: f.one}, {},
                    ("locallyFinite", gen_degree, imax * gen_degree))
    # primitively generated Hopf structure: Delta(x^n) = sum C(n,k) x^k (x) x^{n-k}
    coproduct = {}
    for i in range(imax + 1):
        tab = {}
        for k in range(i + 1):
            c = f.coerce(comb(i, k))
            if not f.is_zero(c):
                tab[(k, i - k)] = c
        coproduct[i] = tab
    counit = {0: f.one}
    antipode = {i: {i: f.coerce((-1) ** i)} for i in range(imax + 1)
                if not f.is_zero(f.coerce((-1) ** i))}
    hopf = HopfData(alg, coproduct, counit, antipode, strict=True)
    return alg, hopf


def exterior_odd(field=QQ, name="Lambda(x)|x|=1"):
    """The exterior algebra on one degree-1 generator."""
    space = GradedSpace([("1", 0), ("x", 1)])
    f = field
    mul = {(0, 0): {0: f.one}, (0, 1): {1: f.one}, (1, 0): {1: f.one}}
    alg = DgAlgebra(name, f, space, mul, {0: f.one}, {},
                    ("locallyFinite", 1, 1))
    coproduct = {0: {(0, 0): f.one}, 1: {(1, 0): f.one, (0, 1): f.one}}
    counit = {0: f.one}
    antipode = {0: {0: f.one}, 1: {1: f.neg(f.one)}}
    hopf = HopfData(alg, coproduct, counit, antipode, strict=True)
    return alg, hopf


def truncated_poly_deg0(field=QQ, power=2, name=None):
    """k[x]/(x^power) concentrated in degree 0 (no Hopf structure)."""
    name = name or f"k[x]/(x^{power})"
    space = GradedSpace([("1" if i == 0 else f"x^{i}" if i > 1 else "x", 0)
                         for i in range(power)])
    f = field
    mul = {}
    for i in range(power):
        for j in range(power):
            if i + j < power:
                mul[(i, j)] = {i + j: f.one}
            else:
                mul[(i, j)] = {}
    mul = {k: v for k, v in mul.items() if v}
    alg = DgAlgebra(name, f, space, mul, {0: f.one})
    return alg, None


def perturbed_qx2(field=QQ, max_degree=16):
    """Negative-control fixture: qx2 with one corrupted structure constant.

    Dropping x . x^2 keeps every product degree-homogeneous but breaks
    associativity, so the realized complexes build and the differential
    identities fail with witnesses."""
    alg, _ = polynomial_even(field, 2, max_degree, name="Q[x]|x|=2 (perturbed)")
    del alg.mul[(1, 2)]
    return alg, None


_ALGEBRA_BUILDERS = {
    "k": lambda: ground_field(QQ),
    "f2c2": lambda: c2_algebra(GF(2)),
    "qc2": lambda: c2_algebra(QQ),
    "qc3": lambda: c3_algebra(QQ),
    "s3q": lambda: s3_algebra(QQ),
    "qx2": lambda: polynomial_even(QQ, 2, 16),
    "lambda1": lambda: exterior_odd(QQ),
    "kx2trunc": lambda: truncated_poly_deg0(QQ, 2),
    "kx3trunc": lambda: truncated_poly_deg0(QQ, 3),
    "qx2broken": lambda: perturbed_qx2(QQ, 16),
}


def delta_n(n):
    """The n-simplex: nondegenerate faces are vertex subsets."""
    from .simplicial import FiniteSimplicialSet
    simplices = {}
    faces = {}
    subsets = []
    for size in range(1, n + 2):
        for comb in _combinations(range(n + 1), size):
            subsets.append(comb)
    for comb in subsets:
        sid = "".join(map(str, comb))
        simplices[sid] = len(comb) - 1
        if len(comb) > 1:
            for i in range(len(comb)):
                sub = comb[:i] + comb[i + 1:]
                faces[(sid, i)] = ("".join(map(str, sub)), ())
    return FiniteSimplicialSet(f"delta{n}", simplices, faces, n)


def _combinations(pool, size):
    from itertools import combinations as comb
    return list(comb(pool, size))


def circle():
    """Delta^1 / boundary: one vertex, one edge."""
    from .simplicial import FiniteSimplicialSet
    return FiniteSimplicialSet(
        "circle", {"v": 0, "e": 1},
        {("e", 0): ("v", ()), ("e", 1): ("v", ())}, 1)


def boundary_delta2():
    from .simplicial import FiniteSimplicialSet
    d2 = delta_n(2)
    simplices = {s: d for s, d in d2.dims.items() if d <= 1}
    faces = {k: v for k, v in d2.faces.items() if k[0] in simplices}
    return FiniteSimplicialSet("bdelta2", simplices, faces, 1)


def sphere2():
    """Delta^2 / boundary: one vertex and one 2-simplex with degenerate faces."""
    from .simplicial import FiniteSimplicialSet
    return FiniteSimplicialSet(
        "s2", {"v": 0, "T": 2},
        {("T", 0): ("v", (0,)), ("T", 1): ("v", (0,)), ("T", 2): ("v", (0,))}, 2)


def constant_simplicial_group(table, name, levels=3):
    """The constant simplicial group: every level is G, all structure maps
    the identity."""
    from .simplicial import FiniteSimplicialGroup, GroupLevel
    elements = sorted({g for g, _ in table})
    identity = next(e for e in elements
                    if all(table[(e, g)] == g for g in elements))
    inverse = {g: next(h for h in elements if table[(g, h)] == identity)
               for g in elements}
    lvl = lambda: GroupLevel(elements, table, identity, inverse)
    faces = {}
    degens = {}
    for n in range(levels + 1):
        for g in elements:
            for i in range(n + 1):
                if n >= 1:
                    faces[(n, i, g)] = g
                if n < levels:
                    degens[(n, i, g)] = g
    return FiniteSimplicialGroup(name, [lvl() for _ in range(levels + 1)],
                                 faces, degens)


def classifying_z2(levels=3):
    """The bar model of K(Z/2, 1) truncated: level n is (Z/2)^n."""
    from .simplicial import FiniteSimplicialGroup, GroupLevel

    def name(tup):
        return "|".join("g" if t else "e" for t in tup) if tup else "*"

    lvls = []
    for n in range(levels + 1):
        elts = []
        for code in range(2 ** n):
            tup = tuple((code >> k) & 1 for k in range(n))
            elts.append(name(tup))
        mul = {}
        for a in range(2 ** n):
            ta = tuple((a >> k) & 1 for k in range(n))
            for b in range(2 ** n):
                tb = tuple((b >> k) & 1 for k in range(n))
                prod = tuple((x + y) % 2 for x, y in zip(ta, tb))
                mul[(name(ta), name(tb))] = name(prod)
        ident = name(tuple(0 for _ in range(n)))
        inverse = {name(tuple((c >> k) & 1 for k in range(n))):
                   name(tuple((c >> k) & 1 for k in range(n)))
                   for c in range(2 ** n)}
        lvls.append(GroupLevel(elts, mul, ident, inverse))

    faces = {}
    degens = {}
    for n in range(1, levels + 1):
        for code in range(2 ** n):
            tup = tuple((code >> k) & 1 for k in range(n))
            for i in range(n + 1):
                if i == 0:
                    img = tup[1:]
                elif i == n:
                    img = tup[:-1]
                else:
                    img = tup[:i - 1] + ((tup[i - 1] + tup[i]) % 2,) + tup[i + 1:]
                faces[(n, i, name(tup))] = name(img)
    for n in range(levels):
        for code in range(2 ** n):
            tup = tuple((code >> k) & 1 for k in range(n))
            for i in range(n + 1):
                img = tup[:i] + (0,) + tup[i:]
                degens[(n, i, name(tup))] = name(img)
    return FiniteSimplicialGroup("kz2_1", lvls, faces, degens)


_SSET_BUILDERS = {
    "delta0": lambda: delta_n(0),
    "delta1": lambda: delta_n(1),
    "delta2": lambda: delta_n(2),
    "circle": circle,
    "bdelta2": boundary_delta2,
    "s2": sphere2,
}

_SGROUP_BUILDERS = {
    "c2const": lambda: constant_simplicial_group(_cyclic_table(2), "c2const"),
    "s3const": lambda: constant_simplicial_group(_s3_table(), "s3const"),
    "kz2_1": classifying_z2,
}


def sset_names():
    return sorted(_SSET_BUILDERS)


def sgroup_names():
    return sorted(_SGROUP_BUILDERS)


def load_sset(name):
    if name not in _SSET_BUILDERS:
        raise UnknownCorpusEntry(name)
    return _SSET_BUILDERS[name]()


def load_sgroup(name):
    if name not in _SGROUP_BUILDERS:
        raise UnknownCorpusEntry(name)
    return _SGROUP_BUILDERS[name]()


def trivial_over(alg, hopf=None):
    """The trivial module k: counit augmentation when Hopf data exists,
    else the connected-algebra augmentation."""
    from .algebra import trivial_module
    if hopf is not None:
        return trivial_module(alg, augmentation=dict(hopf.counit))
    return trivial_module(alg)


def algebra_names():
    return sorted(_ALGEBRA_BUILDERS)


def load_algebra(name, **kw):
    if name not in _ALGEBRA_BUILDERS:
        raise UnknownCorpusEntry(name)
    if name == "qx2" and "maxdeg" in kw:
        return polynomial_even(QQ, 2, int(kw["maxdeg"]))
    return _ALGEBRA_BUILDERS[name]()


def emit_algebra(name, **kw):
    alg, hopf = load_algebra(name, **kw)
    return algebra_to_json(alg, hopf)
