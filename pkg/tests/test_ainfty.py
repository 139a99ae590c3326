from hhk.fields import QQ, GF
from hhk.algebra import self_bimodule, validate
from hhk.corpus import load_algebra, polynomial_even, trivial_over
from hhk.ainfty import (AInftyFamily, from_dga, from_module, strict_morphism,
                        verify_ainfty_algebra, verify_ainfty_module,
                        verify_ainfty_morphism, solve_next_level,
                        induced_bar_map, certify_chain_map,
                        fixture_n3_algebra, fixture_n2_morphism,
                        fixture_n3_module)


def test_embedded_dga_passes():
    for name in ("qc2", "lambda1", "kx3trunc"):
        alg, _ = load_algebra(name)
        fam = from_dga(alg, 4)
        rep = verify_ainfty_algebra(fam, 6)
        assert rep.ok, rep
    alg, _ = polynomial_even(QQ, 2, 10)
    rep = verify_ainfty_algebra(from_dga(alg, 3), 8)
    assert rep.ok, rep


def test_embedded_module_passes():
    alg, hopf = load_algebra("qc2")
    k = trivial_over(alg, hopf)
    fam = from_module(k, 4)
    rep = verify_ainfty_module(fam, 4)
    assert rep.ok, rep
    sb = self_bimodule(alg)
    rep = verify_ainfty_module(from_module(sb, 4), 4)
    assert rep.ok, rep


def test_strict_morphism_passes_and_identity_qiso():
    alg, hopf = load_algebra("qc2")
    sb = self_bimodule(alg)
    ident = {i: {i: QQ.one} for i in range(len(alg.space))}
    fam = strict_morphism(ident, sb, sb, 4)
    rep = verify_ainfty_morphism(fam, 4)
    assert rep.ok, rep
    assert rep.extra["f1_quasi_iso"] is True


def test_perturbed_m2_fails_at_n3():
    alg = fixture_n3_algebra(QQ)
    # the perturbed product is a chain map (n = 2 passes) but fails n = 3
    fam = from_dga(alg, 4)
    rep = verify_ainfty_algebra(fam, 12)
    assert not rep.ok
    levels = {fail[0] for fail in rep.failures}
    assert levels == {3}
    wit = rep.first_failure()
    assert wit[1] == (1, 1, 1)  # the (x, x, x) triple


def test_solve_m3_repairs_n3():
    alg = fixture_n3_algebra(QQ)
    fam = from_dga(alg, 4)
    fixed = solve_next_level(fam, 3, 12)
    assert fixed is not None
    rep = verify_ainfty_algebra(AInftyFamily("algebra", fixed.maps, 3,
                                             algebra=alg), 12)
    assert rep.ok, rep


def test_broken_module_fails_then_m3_repairs():
    alg, mod = fixture_n3_module(QQ)
    assert validate(alg).ok
    fam = from_module(mod, 4)
    rep = verify_ainfty_module(fam, 10)
    assert not rep.ok
    assert {fail[0] for fail in rep.failures} == {3}
    fixed = solve_next_level(fam, 3, 10)
    assert fixed is not None
    rep2 = verify_ainfty_module(fixed, 10)
    # only levels <= 3 are repaired; level 4 instances involve the new m3
    rep3 = verify_ainfty_module(AInftyFamily("module", fixed.maps, 3,
                                             algebra=alg, target=mod), 10)
    rep3_fails = [w for w in rep3.failures]
    assert not rep3_fails, rep3_fails[:3]


def test_morphism_fails_linearity_then_f2_repairs():
    alg, L, M, fam = fixture_n2_morphism(QQ)
    rep = verify_ainfty_morphism(fam, 6)
    assert not rep.ok
    assert {fail[0] for fail in rep.failures} == {2}
    fixed = solve_next_level(fam, 2, 6)
    assert fixed is not None
    rep2 = verify_ainfty_morphism(AInftyFamily("morphism", fixed.maps, 2,
                                               algebra=alg, source=L, target=M), 6)
    assert rep2.ok, rep2.failures[:3]


def test_induced_bar_map_identity():
    alg, hopf = load_algebra("qc2")
    sb = self_bimodule(alg)
    ident = {i: {i: QQ.one} for i in range(len(alg.space))}
    fam = strict_morphism(ident, sb, sb, 3)
    src, tgt, gm = induced_bar_map(fam, 3, (0, 3))
    assert certify_chain_map(src, tgt, gm)
    lo, hi = src.window
    from hhk.graded import GradedMap
    ident_map = GradedMap.identity(src.realized.space, QQ)
    for t in range(lo, hi + 1):
        assert gm.block(t).sub(ident_map.block(t)).is_zero()


def test_induced_bar_map_f2_corrected_transports_tor():
    alg, L, M, fam = fixture_n2_morphism(QQ)
    fixed = solve_next_level(fam, 2, 6)
    fixed.cutoff = 3
    src, tgt, gm = induced_bar_map(fixed, 3, (0, 4), max_degree=6)
    assert certify_chain_map(src, tgt, gm)
    # f1 here is a quasi-isomorphism (diagonal with nonzero entries)
    rep = verify_ainfty_morphism(fixed, 6)
    assert rep.extra["f1_quasi_iso"] is True
    # the induced map on Tor Betti tables is bijective over trusted degrees
    from hhk.bar import HomologyBases, tor
    from hhk.elimination import rank as _rank
    from hhk.sparse import SparseMatrix
    from hhk.vec import add_into
    hb_src = HomologyBases(src.realized, range(0, 4))
    hb_tgt = HomologyBases(tgt.realized, range(0, 4))
    for t in range(0, 4):
        if not src.trusted.get(t):
            continue
        ds, dt = hb_src.dim(t), hb_tgt.dim(t)
        assert ds == dt
        if ds == 0:
            continue
        ent = {}
        for j in range(ds):
            img = gm.apply(hb_src.reps[t][j])
            coords = hb_tgt.reduce(t, img)
            for i, c in coords.items():
                ent[(i, j)] = c
        assert _rank(SparseMatrix(dt, ds, QQ, ent, _skip_check=True)) == ds, t
