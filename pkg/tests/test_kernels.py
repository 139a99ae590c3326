import pytest

from hhk.corpus import load_algebra
from hhk.identities import identity_suite, _tables, _as_arrays
from hhk._kernels import speed_py

try:
    from hhk._kernels import _speed
    HAVE_COMPILED = True
except ImportError:
    HAVE_COMPILED = False


def test_identity_suite_table_algebras():
    for name in ("f2c2", "qc2", "qc3", "kx2trunc", "kx3trunc"):
        alg, hopf = load_algebra(name)
        rep = identity_suite(alg, hopf, 5, (0, 6))
        assert rep["ok"], rep
        assert rep["backend"] in ("compiled", "pure")


def test_identity_suite_matrix_path():
    for name in ("qx2", "lambda1"):
        alg, hopf = load_algebra(name)
        rep = identity_suite(alg, hopf, 5, (0, 8))
        assert rep["ok"], rep
        assert rep["backend"] == "matrix"


def test_pure_kernel_negative_control():
    alg, _ = load_algebra("qc3")
    mi, mc = _tables(alg)
    mi2 = list(mi)
    mi2[1 * 3 + 2] = -1  # delete one product: associativity breaks
    ok, wit = speed_py.check_table_hochschild(3, alg.unit_index, mi2, mc, 4, 0)
    assert not ok and wit[0] == "b2"


@pytest.mark.skipif(not HAVE_COMPILED, reason="compiled kernel not built")
def test_compiled_matches_pure():
    for name in ("qc3", "s3q", "f2c2"):
        alg, hopf = load_algebra(name)
        dim = len(alg.space)
        modulus = 0 if alg.field.tag == "Q" else alg.field.p
        mi, mc = _tables(alg)
        cutoff = 4 if dim > 3 else 6
        r1 = speed_py.check_table_hochschild(dim, alg.unit_index, mi, mc,
                                             cutoff, modulus)
        r2 = _speed.check_table_hochschild(dim, alg.unit_index, _as_arrays(mi),
                                           _as_arrays(mc), cutoff, modulus)
        assert r1 == r2 == (True, None)
        aug = [1] * dim  # group counit
        b1 = speed_py.check_table_bar_d2(dim, alg.unit_index, mi, mc, aug,
                                         cutoff, modulus)
        b2 = _speed.check_table_bar_d2(dim, alg.unit_index, _as_arrays(mi),
                                       _as_arrays(mc), _as_arrays(aug),
                                       cutoff, modulus)
        assert b1 == b2 == (True, None)


@pytest.mark.skipif(not HAVE_COMPILED, reason="compiled kernel not built")
def test_compiled_negative_witness_matches_pure():
    alg, _ = load_algebra("qc3")
    mi, mc = _tables(alg)
    mi2 = list(mi)
    mi2[1 * 3 + 2] = -1
    r1 = speed_py.check_table_hochschild(3, alg.unit_index, mi2, mc, 4, 0)
    r2 = _speed.check_table_hochschild(3, alg.unit_index, _as_arrays(mi2),
                                       _as_arrays(mc), 4, 0)
    assert r1 == r2
    assert not r1[0]


def test_kernel_matches_matrix_path():
    # the kernel's verdicts agree with the realized-matrix identities on a
    # case small enough for both
    from hhk.algebra import self_bimodule
    from hhk.hochschild import HochschildChainWindow, connes_b_map
    alg, hopf = load_algebra("qc2")
    rep = identity_suite(alg, hopf, 4, (0, 5))
    assert rep["ok"]
    chains = HochschildChainWindow(alg, self_bimodule(alg), 4, (0, 5))
    chains.realized.check_d2()
    B = connes_b_map(chains)
    for t in range(0, 4):
        assert B.block(t + 1).mul(B.block(t)).is_zero()
