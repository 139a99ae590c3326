"""Differential graded algebras with explicit bases and structure constants,
Hopf data, one- and two-sided modules, and the adjoint pullback actions.

An algebra is a closed structure-constants table, not a presentation:
the corpus generators emit these tables for k[x], the exterior algebra,
truncated polynomial algebras, and group rings.  Locally finite algebras
must be connected (degree 0 spanned by the unit), which keeps normalized
bar constructions degree-wise finite.
"""
from .fields import Field, field_from_json, field_to_json
from .graded import GradedSpace, GradedMap
from .vec import add_into, scale, equal, coerce


class NotBimodule(Exception):
    pass


class NotAGroup(Exception):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class AlgebraError(ValueError):
    pass


class DgAlgebra:
    """A DGA given by basis, structure constants, unit, and differential.

    mul maps (i, j) -> sparse vector of the product of basis elements i, j;
    diff maps i -> sparse vector of d(basis element i); absent keys mean 0.
    locality is "finite" or ("locallyFinite", g_min, complete_through):
    in the latter case the basis lists every element of degree at most
    complete_through and nothing beyond.
    """

    def __init__(self, name, field: Field, space: GradedSpace, mul, unit,
                 diff=None, locality="finite"):
        self.name = name
        self.field = field
        self.space = space
        self.mul = mul
        self.unit = coerce(field, unit)
        self.diff = diff or {}
        self.locality = locality
        if len(self.unit) != 1:
            raise AlgebraError("unit must be supported on a single basis element")
        self.unit_index = next(iter(self.unit))
        if not field.is_zero(field.sub(self.unit[self.unit_index], field.one)):
            raise AlgebraError("unit coefficient must be 1")
        if space.degrees[self.unit_index] != 0:
            raise AlgebraError("unit must sit in degree 0")
        for i, d in enumerate(space.degrees):
            if d < 0:
                raise AlgebraError(f"negative-degree generator {space.ids[i]!r} rejected")
        self.abar_indices = [i for i in range(len(space)) if i != self.unit_index]
        self._abar_space = None

    # -- basic arithmetic -------------------------------------------------
    def mul_basis(self, i, j) -> dict:
        return self.mul.get((i, j), {})

    def mul_vec(self, u: dict, v: dict) -> dict:
        out = {}
        f = self.field
        for i, a in u.items():
            for j, b in v.items():
                add_into(f, out, self.mul_basis(i, j), f.mul(a, b))
        return out

    def diff_basis(self, i) -> dict:
        return self.diff.get(i, {})

    def diff_vec(self, u: dict) -> dict:
        out = {}
        for i, a in u.items():
            add_into(self.field, out, self.diff_basis(i), a)
        return out

    def diff_map(self) -> GradedMap:
        entries = [(i, j, v) for i, col in self.diff.items() for j, v in col.items()]
        return GradedMap.from_entries(self.space, self.space, -1, self.field, entries)

    def degree(self, i) -> int:
        return self.space.degrees[i]

    def project_abar(self, v: dict) -> dict:
        """Projection A -> A/k.1 along the unit, in ambient coordinates."""
        out = dict(v)
        out.pop(self.unit_index, None)
        return out

    @property
    def g_min(self):
        if self.locality == "finite":
            return None
        return self.locality[1]

    @property
    def complete_through(self):
        """Largest internal degree through which the basis is complete."""
        if self.locality == "finite":
            return None
        return self.locality[2]

    def is_table_algebra(self) -> bool:
        """True when every basis product is 0 or +-(single basis element),
        all degrees are 0, and the differential vanishes: the compiled
        identity kernel handles exactly this shape."""
        if self.diff:
            return False
        if any(d != 0 for d in self.space.degrees):
            return False
        f = self.field
        for vec in self.mul.values():
            if len(vec) > 1:
                return False
            for v in vec.values():
                if not (f.is_zero(f.sub(v, f.one)) or f.is_zero(f.add(v, f.one))):
                    return False
        return True

    def __repr__(self):
        return f"DgAlgebra({self.name!r}, dim {len(self.space)}, {self.field})"


class HopfData:
    """Coproduct, counit and antipode tables for a DGA.

    coproduct: i -> {(j, k): c} meaning Delta(e_i) = sum c e_j (x) e_k;
    counit: i -> scalar; antipode: i -> sparse vector; strict marks an
    exact antipode identity (checked by validate)."""

    def __init__(self, algebra: DgAlgebra, coproduct, counit, antipode, strict: bool):
        self.algebra = algebra
        self.coproduct = coproduct
        self.counit = counit
        self.antipode = antipode
        self.strict = strict

    def coproduct_vec(self, u: dict) -> dict:
        out = {}
        f = self.algebra.field
        for i, a in u.items():
            add_into(f, out, self.coproduct.get(i, {}), a)
        return out

    def counit_vec(self, u: dict):
        f = self.algebra.field
        s = f.zero
        for i, a in u.items():
            s = f.add(s, f.mul(a, self.counit.get(i, f.zero)))
        return s

    def antipode_vec(self, u: dict) -> dict:
        out = {}
        for i, a in u.items():
            add_into(self.algebra.field, out, self.antipode.get(i, {}), a)
        return out

    def antipode_map(self) -> GradedMap:
        entries = [(i, j, v) for i, col in self.antipode.items() for j, v in col.items()]
        return GradedMap.from_entries(self.algebra.space, self.algebra.space, 0,
                                      self.algebra.field, entries)


class DgModule:
    """A module with explicit action tables over a DgAlgebra.

    left: (a_idx, m_idx) -> vector; right: (m_idx, a_idx) -> vector.
    side is "left", "right", or "bi"."""

    def __init__(self, name, over: DgAlgebra, space: GradedSpace, side,
                 left=None, right=None, diff=None):
        self.name = name
        self.over = over
        self.space = space
        self.side = side
        self.left = left or {}
        self.right = right or {}
        self.diff = diff or {}
        if side in ("left", "bi") and left is None:
            raise ValueError("left action table required")
        if side in ("right", "bi") and right is None:
            raise ValueError("right action table required")

    @property
    def field(self):
        return self.over.field

    def act_left(self, a_idx, m_idx) -> dict:
        return self.left.get((a_idx, m_idx), {})

    def act_right(self, m_idx, a_idx) -> dict:
        return self.right.get((m_idx, a_idx), {})

    def act_left_vec(self, avec: dict, mvec: dict) -> dict:
        out = {}
        f = self.field
        for i, a in avec.items():
            for j, m in mvec.items():
                add_into(f, out, self.act_left(i, j), f.mul(a, m))
        return out

    def act_right_vec(self, mvec: dict, avec: dict) -> dict:
        out = {}
        f = self.field
        for j, m in mvec.items():
            for i, a in avec.items():
                add_into(f, out, self.act_right(j, i), f.mul(m, a))
        return out

    def diff_vec(self, mvec: dict) -> dict:
        out = {}
        for i, m in mvec.items():
            add_into(self.field, out, self.diff.get(i, {}), m)
        return out

    def degree(self, i) -> int:
        return self.space.degrees[i]

    def __repr__(self):
        return f"DgModule({self.name!r}, {self.side}, dim {len(self.space)})"


# -- canonical modules ---------------------------------------------------

def self_bimodule(a: DgAlgebra) -> DgModule:
    left = {}
    right = {}
    for (i, j), vec in a.mul.items():
        left[(i, j)] = vec
        right[(i, j)] = vec
    return DgModule(a.name, a, a.space, "bi", left=left, right=right, diff=a.diff)


def trivial_module(a: DgAlgebra, augmentation=None, name="k") -> DgModule:
    """k acted on through an augmentation A -> k.

    augmentation maps basis index -> scalar; the default sends the unit to 1
    and every other basis element to 0, which is the augmentation of a
    connected graded algebra.  Group rings should pass their counit.  The
    map is checked to be an algebra morphism."""
    space = GradedSpace([(name, 0)])
    f = a.field
    if augmentation is None:
        augmentation = {a.unit_index: f.one}
    augmentation = {i: f.coerce(c) for i, c in augmentation.items()
                    if not f.is_zero(f.coerce(c))}

    def eps(vec):
        s = f.zero
        for i, c in vec.items():
            s = f.add(s, f.mul(c, augmentation.get(i, f.zero)))
        return s

    n = len(a.space)
    for i in range(n):
        for j in range(n):
            lhs = eps(a.mul_basis(i, j))
            rhs = f.mul(augmentation.get(i, f.zero), augmentation.get(j, f.zero))
            if not f.is_zero(f.sub(lhs, rhs)):
                raise AlgebraError(f"augmentation is not an algebra map at "
                                   f"({a.space.ids[i]}, {a.space.ids[j]})")
        if not f.is_zero(eps(a.diff_basis(i))):
            raise AlgebraError("augmentation is not a chain map")
    if f.is_zero(f.sub(eps(a.unit), f.one)):
        pass
    else:
        raise AlgebraError("augmentation must send 1 to 1")
    left = {}
    right = {}
    for i, c in augmentation.items():
        left[(i, 0)] = {0: c}
        right[(0, i)] = {0: c}
    return DgModule(name, a, space, "bi", left=left, right=right, diff={})


# -- constructions -------------------------------------------------------

def opposite(a: DgAlgebra) -> DgAlgebra:
    """Koszul-signed opposite algebra."""
    f = a.field
    mul = {}
    for (i, j), vec in a.mul.items():
        sgn = f.one
        if a.degree(i) % 2 == 1 and a.degree(j) % 2 == 1:
            sgn = f.neg(f.one)
        out = scale(f, vec, sgn)
        if out:
            mul[(j, i)] = out
    space = GradedSpace(list(zip(a.space.ids, a.space.degrees)))
    return DgAlgebra(a.name + "^op", f, space, mul, dict(a.unit), dict(a.diff), a.locality)


def enveloping(a: DgAlgebra) -> DgAlgebra:
    """A^e = A (x) A^op with the Koszul-signed product."""
    f = a.field
    aop = opposite(a)
    n = len(a.space)
    basis = []
    for i in range(n):
        for j in range(n):
            basis.append((f"{a.space.ids[i]}⊗{aop.space.ids[j]}",
                          a.degree(i) + a.degree(j)))
    space = GradedSpace(basis)
    mul = {}
    for (x, y) in ((p, q) for p in range(n) for q in range(n)):
        for (u, v) in ((p, q) for p in range(n) for q in range(n)):
            # (x (x) y) (u (x) v) = (-1)^{|y||u|} xu (x) (y *op v)
            xu = a.mul_basis(x, u)
            yv = aop.mul_basis(y, v)
            if not xu or not yv:
                continue
            sgn = f.one
            if a.degree(y) % 2 == 1 and a.degree(u) % 2 == 1:
                sgn = f.neg(f.one)
            out = {}
            for p, c1 in xu.items():
                for q, c2 in yv.items():
                    c = f.mul(sgn, f.mul(c1, c2))
                    k = p * n + q
                    s = f.add(out.get(k, f.zero), c)
                    if f.is_zero(s):
                        out.pop(k, None)
                    else:
                        out[k] = s
            if out:
                mul[(x * n + y, u * n + v)] = out
    unit = {a.unit_index * n + a.unit_index: f.one}
    diff = {}
    for i in range(n):
        for j in range(n):
            col = {}
            for p, c in a.diff_basis(i).items():
                add_into(f, col, {p * n + j: c})
            sgn = f.neg(f.one) if a.degree(i) % 2 == 1 else f.one
            for q, c in a.diff_basis(j).items():
                add_into(f, col, {i * n + q: f.mul(sgn, c)})
            if col:
                diff[i * n + j] = col
    locality = a.locality
    if locality != "finite":
        locality = ("locallyFinite", a.locality[1], a.locality[2])
    return DgAlgebra(a.name + "^e", f, space, mul, unit, diff, locality)


def env_index(a: DgAlgebra, i, j) -> int:
    return i * len(a.space) + j


def bimodule_to_left_env(m: DgModule, env: DgAlgebra) -> DgModule:
    """(x (x) y) . v = (-1)^{|y||v|} x v y."""
    if m.side != "bi":
        raise NotBimodule(f"{m.name} is not a bimodule")
    a = m.over
    f = a.field
    n = len(a.space)
    left = {}
    for e in range(len(env.space)):
        x, y = divmod(e, n)
        for v in range(len(m.space)):
            sgn = f.one
            if a.degree(y) % 2 == 1 and m.degree(v) % 2 == 1:
                sgn = f.neg(f.one)
            out = m.act_right_vec(m.act_left_vec({x: f.one}, {v: f.one}), {y: f.one})
            out = scale(f, out, sgn)
            if out:
                left[(e, v)] = out
    return DgModule(m.name + "|le", env, m.space, "left", left=left, diff=m.diff)


def bimodule_to_right_env(m: DgModule, env: DgAlgebra) -> DgModule:
    """v . (x (x) y) = (-1)^{|y|(|x| + |v|)} y v x (the associative choice)."""
    if m.side != "bi":
        raise NotBimodule(f"{m.name} is not a bimodule")
    a = m.over
    f = a.field
    n = len(a.space)
    right = {}
    for e in range(len(env.space)):
        x, y = divmod(e, n)
        for v in range(len(m.space)):
            sgn = f.one
            if a.degree(y) % 2 == 1 and (a.degree(x) + m.degree(v)) % 2 == 1:
                sgn = f.neg(f.one)
            out = m.act_right_vec(m.act_left_vec({y: f.one}, {v: f.one}), {x: f.one})
            out = scale(f, out, sgn)
            if out:
                right[(v, e)] = out
    return DgModule(m.name + "|re", env, m.space, "right", right=right, diff=m.diff)


def _iterate_sweedler(h: HopfData, vec: dict):
    """List of (left_idx, right_idx, coeff) triples of Delta applied to vec."""
    f = h.algebra.field
    out = {}
    for i, c in vec.items():
        for (j, k), w in h.coproduct.get(i, {}).items():
            key = (j, k)
            s = f.add(out.get(key, f.zero), f.mul(c, w))
            if f.is_zero(s):
                out.pop(key, None)
            else:
                out[key] = s
    return [(j, k, c) for (j, k), c in out.items()]


def ad_pullback(m: DgModule, eps: int, h: HopfData) -> DgModule:
    """Left module pulled back along ad_eps = (id (x) S) tau^eps Delta.

    For group algebras this is the conjugation action g.m = g m g^{-1}."""
    if m.side != "bi":
        raise NotBimodule(f"{m.name} is not a bimodule")
    a = m.over
    if h.algebra is not a:
        raise ValueError("Hopf data belongs to a different algebra")
    f = a.field
    left = {}
    for i in range(len(a.space)):
        terms = _iterate_sweedler(h, {i: f.one})
        for v in range(len(m.space)):
            out = {}
            for (j, k, c) in terms:
                if eps == 1:
                    # tau swaps the Sweedler legs with a Koszul sign
                    if a.degree(j) % 2 == 1 and a.degree(k) % 2 == 1:
                        c = f.neg(c)
                    j, k = k, j
                sk = h.antipode.get(k, {})
                # (j (x) S(k)) acting on v via the left A^e structure:
                # (x (x) y).v = (-1)^{|y||v|} x v y
                for y, cy in sk.items():
                    sgn = f.one
                    if a.degree(y) % 2 == 1 and m.degree(v) % 2 == 1:
                        sgn = f.neg(f.one)
                    piece = m.act_right_vec(m.act_left_vec({j: f.one}, {v: f.one}), {y: f.one})
                    add_into(f, out, piece, f.mul(f.mul(c, cy), sgn))
            if out:
                left[(i, v)] = out
    return DgModule(f"ad{eps}*{m.name}", a, m.space, "left", left=left, diff=m.diff)


def ad_pullback_right(m: DgModule, eps: int, h: HopfData) -> DgModule:
    """Right-module counterpart: v.a = v . ad_eps(a) via the right A^e structure."""
    if m.side != "bi":
        raise NotBimodule(f"{m.name} is not a bimodule")
    a = m.over
    f = a.field
    right = {}
    for i in range(len(a.space)):
        terms = _iterate_sweedler(h, {i: f.one})
        for v in range(len(m.space)):
            out = {}
            for (j, k, c) in terms:
                if eps == 1:
                    if a.degree(j) % 2 == 1 and a.degree(k) % 2 == 1:
                        c = f.neg(c)
                    j, k = k, j
                sk = h.antipode.get(k, {})
                # v.(x (x) y) = (-1)^{|y|(|x|+|v|)} y v x
                for y, cy in sk.items():
                    sgn = f.one
                    if a.degree(y) % 2 == 1 and (a.degree(j) + m.degree(v)) % 2 == 1:
                        sgn = f.neg(f.one)
                    piece = m.act_right_vec(m.act_left_vec({y: f.one}, {v: f.one}), {j: f.one})
                    add_into(f, out, piece, f.mul(f.mul(c, cy), sgn))
            if out:
                right[(v, i)] = out
    return DgModule(f"{m.name}*ad{eps}", a, m.space, "right", right=right, diff=m.diff)


def algebra_generators(a: DgAlgebra):
    """A small set of basis indices generating A as a unital algebra.

    Greedy: extend the span of products of chosen generators until it is
    everything; used to cut equivariance certificates down to generators."""
    from .elimination import Echelon
    f = a.field
    ech = Echelon(f)
    ech.insert(dict(a.unit), "1")
    spanning = [dict(a.unit)]
    gens = []

    def close():
        changed = True
        while changed:
            changed = False
            current = list(spanning)
            for u in current:
                for v in current:
                    prod = a.mul_vec(u, v)
                    if prod and ech.insert(dict(prod), ("p", len(spanning))):
                        spanning.append(prod)
                        changed = True

    close()
    for i in range(len(a.space)):
        vec = {i: f.one}
        if ech.insert(dict(vec), ("g", i)):
            gens.append(i)
            spanning.append(vec)
            close()
    return gens


def ad_env_right(a: DgAlgebra, env: DgAlgebra, h: HopfData, eps: int) -> DgModule:
    """A^e as a right A-module along ad_eps: m.a = m (ad_eps a) in A^e."""
    f = a.field
    n = len(a.space)
    right = {}
    for i in range(len(a.space)):
        terms = _iterate_sweedler(h, {i: f.one})
        for e in range(len(env.space)):
            out = {}
            for (j, k, c) in terms:
                if eps == 1:
                    if a.degree(j) % 2 == 1 and a.degree(k) % 2 == 1:
                        c = f.neg(c)
                    j, k = k, j
                for y, cy in h.antipode.get(k, {}).items():
                    add_into(f, out, env.mul_basis(e, j * n + y), f.mul(c, cy))
            if out:
                right[(e, i)] = out
    return DgModule(f"A^e|ad{eps}r", a, env.space, "right", right=right, diff=env.diff)


def ad_env_left(a: DgAlgebra, env: DgAlgebra, h: HopfData, eps: int) -> DgModule:
    """A^e as a left A-module along ad_eps: a.m = (ad_eps a) m in A^e."""
    f = a.field
    n = len(a.space)
    left = {}
    for i in range(len(a.space)):
        terms = _iterate_sweedler(h, {i: f.one})
        for e in range(len(env.space)):
            out = {}
            for (j, k, c) in terms:
                if eps == 1:
                    if a.degree(j) % 2 == 1 and a.degree(k) % 2 == 1:
                        c = f.neg(c)
                    j, k = k, j
                for y, cy in h.antipode.get(k, {}).items():
                    add_into(f, out, env.mul_basis(j * n + y, e), f.mul(c, cy))
            if out:
                left[(i, e)] = out
    return DgModule(f"A^e|ad{eps}l", a, env.space, "left", left=left, diff=env.diff)


def group_algebra(table, field: Field, name=None):
    """Group ring kG with its standard strict Hopf structure.

    table is a dict {(g, h): gh} over element names (or a list of lists
    with table[0] the identity row ordering).  Raises NotAGroup with a
    witness on failure."""
    if isinstance(table, list):
        names = table[0]
        tbl = {}
        for i, g in enumerate(names):
            for j, h in enumerate(names):
                tbl[(g, h)] = table[1][i][j]
        table = tbl
        elements = list(names)
    else:
        elements = sorted({g for g, _ in table} | {h for _, h in table})
    for g in elements:
        for h in elements:
            if (g, h) not in table or table[(g, h)] not in elements:
                raise NotAGroup(f"product {g}.{h} missing or outside the set",
                                witness=(g, h))
    identity = None
    for e in elements:
        if all(table[(e, g)] == g and table[(g, e)] == g for g in elements):
            identity = e
            break
    if identity is None:
        raise NotAGroup("no two-sided identity", witness=None)
    for g in elements:
        for h in elements:
            for k in elements:
                if table[(table[(g, h)], k)] != table[(g, table[(h, k)])]:
                    raise NotAGroup("associativity fails", witness=(g, h, k))
    inverse = {}
    for g in elements:
        inv = [h for h in elements if table[(g, h)] == identity and table[(h, g)] == identity]
        if not inv:
            raise NotAGroup(f"{g} has no inverse", witness=(g,))
        inverse[g] = inv[0]

    name = name or f"k[{'|'.join(elements)}]"
    space = GradedSpace([(g, 0) for g in elements])
    idx = {g: i for i, g in enumerate(elements)}
    f = field
    mul = {(idx[g], idx[h]): {idx[table[(g, h)]]: f.one}
           for g in elements for h in elements}
    unit = {idx[identity]: f.one}
    alg = DgAlgebra(name, f, space, mul, unit, {}, "finite")
    coproduct = {idx[g]: {(idx[g], idx[g]): f.one} for g in elements}
    counit = {idx[g]: f.one for g in elements}
    antipode = {idx[g]: {idx[inverse[g]]: f.one} for g in elements}
    hopf = HopfData(alg, coproduct, counit, antipode, strict=True)
    return alg, hopf


# -- validation ----------------------------------------------------------

class ValidationIssue:
    def __init__(self, kind, witness, detail=""):
        self.kind = kind
        self.witness = witness
        self.detail = detail

    def to_json(self):
        return {"kind": self.kind, "witness": repr(self.witness), "detail": self.detail}

    def __repr__(self):
        return f"[{self.kind}] witness={self.witness} {self.detail}"


class ValidationReport:
    def __init__(self, name):
        self.name = name
        self.issues = []

    def fail(self, kind, witness, detail=""):
        self.issues.append(ValidationIssue(kind, witness, detail))

    @property
    def ok(self):
        return not self.issues

    def to_json(self):
        return {"name": self.name, "ok": self.ok,
                "issues": [i.to_json() for i in self.issues]}

    def __repr__(self):
        status = "PASS" if self.ok else "FAIL"
        lines = [f"validate {self.name}: {status}"]
        lines += [f"  {i}" for i in self.issues]
        return "\n".join(lines)


def validate(a: DgAlgebra, hopf: HopfData = None, max_degree=None) -> ValidationReport:
    """Check all algebra (and optional Hopf) axioms, reporting witnesses.

    For locally finite algebras the checks run through max_degree
    (default: the degree through which the basis is complete)."""
    rep = ValidationReport(a.name)
    f = a.field
    n = len(a.space)
    if max_degree is None:
        max_degree = a.complete_through if a.complete_through is not None else max(
            a.space.degrees_present(), default=0) * 3 + 1

    if a.locality != "finite":
        deg0 = a.space.by_degree.get(0, [])
        if deg0 != [a.unit_index]:
            rep.fail("connectivity", tuple(a.space.ids[i] for i in deg0),
                     "locally finite algebra must have degree 0 spanned by the unit")
        gmin = a.g_min
        for i in range(n):
            if i != a.unit_index and a.degree(i) < gmin:
                rep.fail("gMin", a.space.ids[i], f"degree below gMin={gmin}")

    # unit law
    for i in range(n):
        li = a.mul_vec(a.unit, {i: f.one})
        ri = a.mul_vec({i: f.one}, a.unit)
        if not equal(f, li, {i: f.one}):
            rep.fail("unit-law", a.space.ids[i], "1.a != a")
        if not equal(f, ri, {i: f.one}):
            rep.fail("unit-law", a.space.ids[i], "a.1 != a")

    # mul degree-preserving
    for (i, j), vec in a.mul.items():
        dexp = a.degree(i) + a.degree(j)
        for k in vec:
            if a.degree(k) != dexp:
                rep.fail("mul-degree", (a.space.ids[i], a.space.ids[j]),
                         f"lands in degree {a.degree(k)} != {dexp}")

    # associativity within the window
    for i in range(n):
        for j in range(n):
            if a.degree(i) + a.degree(j) > max_degree:
                continue
            ij = a.mul_basis(i, j)
            for k in range(n):
                if a.degree(i) + a.degree(j) + a.degree(k) > max_degree:
                    continue
                lhs = a.mul_vec(ij, {k: f.one})
                rhs = a.mul_vec({i: f.one}, a.mul_basis(j, k))
                if not equal(f, lhs, rhs):
                    rep.fail("associativity",
                             (a.space.ids[i], a.space.ids[j], a.space.ids[k]))

    # differential: degree -1, d^2 = 0, Leibniz
    for i, col in a.diff.items():
        for j in col:
            if a.degree(j) != a.degree(i) - 1:
                rep.fail("diff-degree", a.space.ids[i])
    for i in range(n):
        if a.diff_vec(a.diff_basis(i)):
            rep.fail("d-squared", a.space.ids[i])
    if a.diff_vec(a.unit):
        rep.fail("d-unit", "1", "d(1) != 0")
    for i in range(n):
        for j in range(n):
            if a.degree(i) + a.degree(j) > max_degree:
                continue
            lhs = a.diff_vec(a.mul_basis(i, j))
            rhs = a.mul_vec(a.diff_basis(i), {j: f.one})
            sgn = f.neg(f.one) if a.degree(i) % 2 == 1 else f.one
            add_into(f, rhs, a.mul_vec({i: f.one}, a.diff_basis(j)), sgn)
            if not equal(f, lhs, rhs):
                rep.fail("leibniz", (a.space.ids[i], a.space.ids[j]))

    if hopf is not None:
        _validate_hopf(a, hopf, rep, max_degree)
    return rep


def _validate_hopf(a: DgAlgebra, h: HopfData, rep: ValidationReport, max_degree):
    f = a.field
    n = len(a.space)

    def cop(i):
        return h.coproduct.get(i, {})

    # coassociativity and counit
    for i in range(n):
        lhs = {}
        rhs = {}
        for (j, k), c in cop(i).items():
            for (p, q), c2 in cop(j).items():
                key = (p, q, k)
                s = f.add(lhs.get(key, f.zero), f.mul(c, c2))
                if f.is_zero(s):
                    lhs.pop(key, None)
                else:
                    lhs[key] = s
            for (p, q), c2 in cop(k).items():
                key = (j, p, q)
                s = f.add(rhs.get(key, f.zero), f.mul(c, c2))
                if f.is_zero(s):
                    rhs.pop(key, None)
                else:
                    rhs[key] = s
        if lhs != rhs:
            rep.fail("coassociativity", a.space.ids[i])
        left_counit = {}
        right_counit = {}
        for (j, k), c in cop(i).items():
            add_into(f, left_counit, {k: f.mul(c, h.counit.get(j, f.zero))})
            add_into(f, right_counit, {j: f.mul(c, h.counit.get(k, f.zero))})
        if not equal(f, left_counit, {i: f.one}) or not equal(f, right_counit, {i: f.one}):
            rep.fail("counit", a.space.ids[i])

    # Delta and counit are algebra morphisms
    for x in range(n):
        for y in range(n):
            if a.degree(x) + a.degree(y) > max_degree:
                continue
            # Delta(xy) versus Delta(x).Delta(y) with the middle Koszul swap
            rhs = {}
            for (j1, k1), c1 in cop(x).items():
                for (j2, k2), c2 in cop(y).items():
                    sgn = f.one
                    if a.degree(k1) % 2 == 1 and a.degree(j2) % 2 == 1:
                        sgn = f.neg(f.one)
                    prod_l = a.mul_basis(j1, j2)
                    prod_r = a.mul_basis(k1, k2)
                    for p, cl in prod_l.items():
                        for q, cr in prod_r.items():
                            key = (p, q)
                            c = f.mul(f.mul(c1, c2), f.mul(sgn, f.mul(cl, cr)))
                            s = f.add(rhs.get(key, f.zero), c)
                            if f.is_zero(s):
                                rhs.pop(key, None)
                            else:
                                rhs[key] = s
            lhs_tab = {}
            for i, c in a.mul_basis(x, y).items():
                for (j, k), w in cop(i).items():
                    key = (j, k)
                    s = f.add(lhs_tab.get(key, f.zero), f.mul(c, w))
                    if f.is_zero(s):
                        lhs_tab.pop(key, None)
                    else:
                        lhs_tab[key] = s
            if lhs_tab != rhs:
                rep.fail("coproduct-not-algebra-morphism", (a.space.ids[x], a.space.ids[y]))
            eps_prod = f.mul(h.counit.get(x, f.zero), h.counit.get(y, f.zero))
            eps_of_prod = h.counit_vec(a.mul_basis(x, y))
            if not f.is_zero(f.sub(eps_prod, eps_of_prod)):
                rep.fail("counit-not-algebra-morphism", (a.space.ids[x], a.space.ids[y]))

    # antipode: anti-automorphism, S^2 = id
    for x in range(n):
        for y in range(n):
            if a.degree(x) + a.degree(y) > max_degree:
                continue
            lhs = h.antipode_vec(a.mul_basis(x, y))
            sgn = f.one
            if a.degree(x) % 2 == 1 and a.degree(y) % 2 == 1:
                sgn = f.neg(f.one)
            rhs = scale(f, a.mul_vec(h.antipode_vec({y: f.one}), h.antipode_vec({x: f.one})), sgn)
            if not equal(f, lhs, rhs):
                rep.fail("antipode-anti-automorphism", (a.space.ids[x], a.space.ids[y]))
    for x in range(n):
        if not equal(f, h.antipode_vec(h.antipode_vec({x: f.one})), {x: f.one}):
            rep.fail("antipode-involution", a.space.ids[x])

    # strict antipode identity mu(id (x) S)Delta = eta eps = mu(S (x) id)Delta
    if h.strict:
        for i in range(n):
            lhs1 = {}
            lhs2 = {}
            for (j, k), c in cop(i).items():
                add_into(f, lhs1, a.mul_vec({j: f.one}, h.antipode_vec({k: f.one})), c)
                add_into(f, lhs2, a.mul_vec(h.antipode_vec({j: f.one}), {k: f.one}), c)
            target = scale(f, a.unit, h.counit.get(i, f.zero))
            if not equal(f, lhs1, target):
                rep.fail("strict-antipode", a.space.ids[i], "mu(id(x)S)Delta != eta.eps")
            if not equal(f, lhs2, target):
                rep.fail("strict-antipode", a.space.ids[i], "mu(S(x)id)Delta != eta.eps")


# -- JSON ----------------------------------------------------------------

_ALGEBRA_KEYS = {"name", "field", "basis", "unit", "mul", "diff", "hopf", "locality"}
_HOPF_KEYS = {"coproduct", "counit", "antipode", "strict"}


def _vec_from_json(field, items, index):
    out = {}
    for it in items:
        add_into(field, out, {index[it["id"]]: field.coerce(it["c"])})
    return out


def algebra_from_json(doc):
    """Parse the algebra spec file format; rejects unknown keys."""
    unknown = set(doc) - _ALGEBRA_KEYS
    if unknown:
        raise AlgebraError(f"unknown keys in algebra spec: {sorted(unknown)}")
    field = field_from_json(doc["field"])
    basis = [(b["id"], int(b["degree"])) for b in doc["basis"]]
    space = GradedSpace(basis)
    index = space.index
    unit = _vec_from_json(field, doc["unit"], index)
    mul = {}
    for entry in doc.get("mul", []):
        key = (index[entry["l"]], index[entry["r"]])
        vec = _vec_from_json(field, entry["out"], index)
        if vec:
            mul[key] = vec
    diff = {}
    for entry in doc.get("diff", []):
        vec = _vec_from_json(field, entry["out"], index)
        if vec:
            diff[index[entry["of"]]] = vec
    loc = doc.get("locality", "finite")
    if loc == "finite":
        locality = "finite"
    else:
        lf = loc["locallyFinite"]
        complete = lf.get("completeThrough")
        if complete is None:
            complete = max((int(b["degree"]) for b in doc["basis"]), default=0)
        locality = ("locallyFinite", int(lf["gMin"]), int(complete))
    alg = DgAlgebra(doc["name"], field, space, mul, unit, diff, locality)
    hopf = None
    if "hopf" in doc:
        hdoc = doc["hopf"]
        unknown = set(hdoc) - _HOPF_KEYS
        if unknown:
            raise AlgebraError(f"unknown keys in hopf spec: {sorted(unknown)}")
        coproduct = {}
        for entry in hdoc.get("coproduct", []):
            i = index[entry["of"]]
            tab = {}
            for t in entry["out"]:
                key = (index[t["l"]], index[t["r"]])
                c = field.coerce(t["c"])
                if not field.is_zero(c):
                    tab[key] = c
            coproduct[i] = tab
        counit = {index[e["of"]]: field.coerce(e["c"]) for e in hdoc.get("counit", [])}
        antipode = {}
        for entry in hdoc.get("antipode", []):
            antipode[index[entry["of"]]] = _vec_from_json(field, entry["out"], index)
        hopf = HopfData(alg, coproduct, counit, antipode, bool(hdoc["strict"]))
    return alg, hopf


def _vec_to_json(field, vec, ids):
    return [{"id": ids[i], "c": field.to_str(v)} for i, v in sorted(vec.items())]


def algebra_to_json(a: DgAlgebra, hopf: HopfData = None):
    ids = a.space.ids
    f = a.field
    doc = {
        "name": a.name,
        "field": field_to_json(f),
        "basis": [{"id": ids[i], "degree": a.space.degrees[i]} for i in range(len(ids))],
        "unit": _vec_to_json(f, a.unit, ids),
        "mul": [{"l": ids[i], "r": ids[j], "out": _vec_to_json(f, vec, ids)}
                for (i, j), vec in sorted(a.mul.items())],
        "diff": [{"of": ids[i], "out": _vec_to_json(f, vec, ids)}
                 for i, vec in sorted(a.diff.items())],
    }
    if a.locality == "finite":
        doc["locality"] = "finite"
    else:
        doc["locality"] = {"locallyFinite": {"gMin": a.locality[1],
                                             "completeThrough": a.locality[2]}}
    if hopf is not None:
        doc["hopf"] = {
            "coproduct": [{"of": ids[i],
                           "out": [{"l": ids[j], "r": ids[k], "c": f.to_str(c)}
                                   for (j, k), c in sorted(tab.items())]}
                          for i, tab in sorted(hopf.coproduct.items())],
            "counit": [{"of": ids[i], "c": f.to_str(c)}
                       for i, c in sorted(hopf.counit.items())],
            "antipode": [{"of": ids[i], "out": _vec_to_json(f, vec, ids)}
                         for i, vec in sorted(hopf.antipode.items())],
            "strict": hopf.strict,
        }
    return doc
