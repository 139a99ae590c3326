import pytest

from hhk.corpus import load_algebra
from hhk.hochschild import HochschildOps
from hhk.bv import (find_duality_class, duality_D_class, kappa_class,
                    kappa_matrix, verify_bv, UntrustedDegree)
from hhk.vec import equal, add_into


import functools


@functools.lru_cache(maxsize=None)
def qx2_ops():
    alg, _ = load_algebra("qx2")
    return HochschildOps(alg, 8, (0, 12), (-6, 12))


@functools.lru_cache(maxsize=None)
def qx2_dc():
    return find_duality_class(qx2_ops(), 3)


def test_ground_field_duality():
    alg, _ = load_algebra("k")
    ops = HochschildOps(alg, 2, (0, 2), (-1, 1))
    dc = find_duality_class(ops, 0)
    assert dc is not None
    # D is the identity: D(1) = z = the unit chain class
    one = ops.unit_class()
    d1 = duality_D_class(ops, dc.z, one)
    assert equal(ops.a.field, d1.vector, dc.z.vector)


def test_qx2_duality_class_exists():
    dc = qx2_dc()
    assert dc is not None
    assert dc.degree == 3
    assert all(v["bijective"] for v in dc.certificate["cap_iso"].values())
    # B(z) = 0 in homology (candidates come from ker B)
    ops = qx2_ops()
    bz = ops.b_on_class(dc.z)
    assert not bz.vector


def test_f2c2_no_duality_class():
    alg, _ = load_algebra("f2c2")
    ops = HochschildOps(alg, 6, (0, 5), (-5, 0))
    assert find_duality_class(ops, 3) is None


def test_untrusted_degree_raises():
    ops = qx2_ops()
    with pytest.raises(UntrustedDegree):
        find_duality_class(ops, 13)


def test_duality_D_unit_and_linearity():
    ops = qx2_ops()
    dc = qx2_dc()
    f = ops.a.field
    one = ops.unit_class()
    d1 = duality_D_class(ops, dc.z, one)
    assert equal(f, d1.vector, dc.z.vector)
    # linearity on a two-dimensional probe: D(f + g) = D(f) + D(g)
    c2 = ops.cochain_class(2, 0)
    c2b = ops.cochain_class(2, 0)
    summed = dict(c2.vector)
    add_into(f, summed, c2b.vector)
    from hhk.hochschild import HomologyClass
    csum = HomologyClass(ops.cochains, "cochain", 2, summed)
    lhs = duality_D_class(ops, dc.z, csum).vector
    rhs = dict(duality_D_class(ops, dc.z, c2).vector)
    add_into(f, rhs, duality_D_class(ops, dc.z, c2b).vector)
    assert equal(f, lhs, rhs)


def test_kappa_unit_and_squared():
    ops = qx2_ops()
    dc = qx2_dc()
    one = ops.unit_class()
    k1 = kappa_class(ops, dc, one)
    assert not k1.vector
    # kappa^2 = 0 wherever three consecutive degrees are trusted
    from hhk.hochschild import WindowOverflow
    f = ops.a.field
    for t in range(0, 10):
        if not all(ops.cochains.trusted.get(x) for x in (t, t + 1, t + 2)):
            continue
        try:
            m1 = kappa_matrix(ops, dc, t)
            m2 = kappa_matrix(ops, dc, t + 1)
        except WindowOverflow:
            continue
        for j, col in m1.items():
            acc = {}
            for i, c in col.items():
                add_into(f, acc, {k: f.mul(c, v) for k, v in m2.get(i, {}).items()})
            assert not acc, t


def test_flagship_bv_identity():
    ops = qx2_ops()
    dc = qx2_dc()
    rep = verify_bv(ops, dc, max_cohom_degree=4)
    assert rep.ok, rep.failures[:4]
    checked = [c for c in rep.checks if c["name"].startswith("bracket-identity@")]
    assert len(checked) >= 9


def test_negative_control_reports_witness():
    algb, _ = load_algebra("qx2broken")
    opsb = HochschildOps(algb, 6, (0, 8), (-4, 8), check=False)
    rep = verify_bv(opsb, None, 3)
    assert not rep.ok
    assert rep.failures and rep.failures[0]["witness"]
