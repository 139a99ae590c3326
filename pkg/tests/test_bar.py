import pytest

from hhk.fields import QQ, GF
from hhk.algebra import trivial_module, self_bimodule
from hhk.bar import bar_complex, tor, ext, group_homology, group_cohomology, SideMismatch
from hhk.corpus import load_algebra, trivial_over, polynomial_even


def triv(name):
    alg, hopf = load_algebra(name)
    return alg, hopf, trivial_over(alg, hopf)


def betti_dict(rows):
    return {r.degree: r.dim for r in rows}


def test_bar_dims_f2c2():
    # B(k, kC2, k) over F_2: one word per bar degree 0..5
    alg, hopf, k = triv("f2c2")
    cx = bar_complex(k, alg, k, 5, (0, 5))
    dims = [cx.realized.space.dim_at(s) for s in range(6)]
    assert dims == [1, 1, 1, 1, 1, 1]


def test_bar_degree_zero_is_m_tensor_n():
    alg, hopf = load_algebra("qc2")
    A = self_bimodule(alg)
    cx = bar_complex(A, alg, A, 2, (0, 2))
    # bar degree 0 component in degree 0 = A (x) A, dimension 4
    words = [w for w in cx.realized.words if len(w[1]) == 0]
    assert len(words) == 4


def test_bar_d2_qx2():
    alg, hopf = polynomial_even(QQ, 2, 16)
    k = trivial_over(alg, hopf)
    cx = bar_complex(k, alg, k, 6, (0, 12))
    cx.check_d2()  # exact matrix identity


def test_bar_d2_lambda1_and_s3():
    for name in ("lambda1", "s3q", "kx3trunc"):
        alg, hopf = load_algebra(name)
        k = trivial_over(alg, hopf) if hopf else trivial_module(alg)
        cx = bar_complex(k, alg, k, 4, (0, 6))
        cx.check_d2()


def test_side_mismatch():
    alg, hopf = load_algebra("qc2")
    k = trivial_over(alg, hopf)
    left_only = trivial_over(alg, hopf)
    left_only.side = "left"
    with pytest.raises(SideMismatch):
        bar_complex(left_only, alg, k, 2, (0, 2))


def test_tor_qc2_maschke():
    # Tor^{QC2}(Q, Q): dim 1 in degree 0, zero in trusted degrees 1..4
    alg, hopf, k = triv("qc2")
    rows, _ = tor(k, alg, k, 5, (0, 5))
    got = betti_dict(rows)
    assert got[0] == 1
    for d in range(1, 5):
        assert got.get(d, 0) == 0, d
    # degree 5 is untrusted at cutoff 5 and must not appear by default
    assert 5 not in got


def test_tor_f2c2_polynomial():
    # Tor^{F2C2}(F2, F2): dim 1 in every trusted degree
    alg, hopf, k = triv("f2c2")
    rows, _ = tor(k, alg, k, 6, (0, 5))
    got = betti_dict(rows)
    assert got == {d: 1 for d in range(6)}


def test_tor_qx2_sphere_shadow():
    # Tor^{Q[x]}(Q, Q) with |x| = 2: dim 1 in total degrees 0 and 3 only
    alg, hopf = polynomial_even(QQ, 2, 24)
    k = trivial_over(alg, hopf)
    rows, _ = tor(k, alg, k, 8, (0, 12))
    got = betti_dict(rows)
    for d in range(13):
        assert got.get(d, 0) == (1 if d in (0, 3) else 0), d
    # the window is fully trusted here
    assert all(r.trusted for r in rows)


def test_trust_rule_soundness_cutoffs():
    # trusted degrees of the cutoff-5 run agree with the cutoff-8 run
    alg, hopf, k = triv("f2c2")
    rows5, _ = tor(k, alg, k, 5, (0, 8))
    rows8, _ = tor(k, alg, k, 8, (0, 8))
    got5 = {r.degree: r.dim for r in rows5}
    got8 = {r.degree: r.dim for r in rows8}
    for d, v in got5.items():
        assert got8[d] == v
    # cutoff 5 trusts exactly degrees <= 4 here
    assert set(got5) == set(range(5))


def test_ext_group_degree_zero():
    # Ext_{kG}(k, k) in degree 0 is k for any corpus group
    for name in ("qc2", "qc3", "s3q", "f2c2"):
        alg, hopf, k = triv(name)
        rows, _ = ext(k, k, alg, 4, (-4, 0))
        got = betti_dict(rows)
        assert got[0] == 1


def test_ext_f2c2_all_degrees():
    alg, hopf, k = triv("f2c2")
    rows, _ = ext(k, k, alg, 6, (-5, 0))
    got = betti_dict(rows)
    assert got == {-d: 1 for d in range(6)}


def test_ext_qc2_maschke():
    alg, hopf, k = triv("qc2")
    rows, _ = ext(k, k, alg, 5, (-4, 0))
    got = betti_dict(rows)
    assert got[0] == 1
    assert all(got.get(-d, 0) == 0 for d in range(1, 5))


def test_group_homology_c2_f2():
    alg, hopf = load_algebra("f2c2")
    k = trivial_over(alg, hopf)
    rows, _ = group_homology(alg, hopf, k, 6, (0, 5))
    assert betti_dict(rows) == {d: 1 for d in range(6)}


def test_group_homology_conjugation_s3():
    # H_0(G; kG^conj) = coinvariants: dimension = number of conjugacy classes
    from hhk.algebra import ad_pullback_right
    alg, hopf = load_algebra("s3q")
    conj = ad_pullback_right(self_bimodule(alg), 0, hopf)
    rows, _ = group_homology(alg, hopf, conj, 3, (0, 2))
    got = betti_dict(rows)
    assert got[0] == 3
    # Maschke: higher group homology vanishes over Q
    assert got.get(1, 0) == 0


def test_group_cohomology_invariants_s3():
    # H^0(G; kG^conj) = invariants = center, dimension 3 for S3
    from hhk.algebra import ad_pullback
    alg, hopf = load_algebra("s3q")
    conj = ad_pullback(self_bimodule(alg), 0, hopf)
    rows, _ = group_cohomology(alg, hopf, conj, 3, (-2, 0))
    got = betti_dict(rows)
    assert got[0] == 3
    assert got.get(-1, 0) == 0


def test_group_cohomology_c2_f2():
    alg, hopf = load_algebra("f2c2")
    k = trivial_over(alg, hopf)
    rows, _ = group_cohomology(alg, hopf, k, 6, (-5, 0))
    assert betti_dict(rows) == {-d: 1 for d in range(6)}
