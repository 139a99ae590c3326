"""Acceptance suite: every criterion at its stated tolerance (exact
arithmetic throughout), one pass/fail line per criterion.

Run with `pytest tests/test_acceptance.py -s` to see the lines; each
criterion also asserts, so the suite is red if any criterion fails.
"""
import io
import contextlib
import json
import time

import pytest

from hhk import reports
from hhk.fields import QQ, GF
from hhk.corpus import (load_algebra, load_sset, load_sgroup, trivial_over)
from hhk.algebra import (self_bimodule, trivial_module, ad_pullback,
                         ad_pullback_right)

CRIT1_ALGEBRAS = ("f2c2", "qc2", "qc3", "s3q", "qx2", "lambda1",
                  "kx2trunc", "kx3trunc")
SSET_NAMES = ("delta0", "delta1", "delta2", "circle", "bdelta2", "s2")

_state = {}


def _line(num, ok, text, elapsed, budget):
    status = "PASS" if ok else "FAIL"
    print(f"[criterion {num}] {status}  {text}  ({elapsed:.1f}s, budget {budget}s)")


# -- criterion computations (pure functions returning JSON docs) ------------

def run_criterion_1():
    from hhk.identities import identity_suite
    out = {}
    for name in CRIT1_ALGEBRAS:
        alg, hopf = load_algebra(name)
        rep = identity_suite(alg, hopf, 8, (0, 10))
        out[name] = rep
    return out


def run_criterion_2():
    from hhk.simplicial import (product, aw_map, ez_map, swap_map,
                                SimplicialMap, product_map)
    from hhk.graded import tensor, GradedMap, twist, tensor_map
    from hhk.elimination import Echelon
    from hhk.vec import add_into
    field = QQ
    out = {"aw_ez": True, "ez_aw_homology": True, "naturality": True,
           "tau": True}
    sets = {n: load_sset(n) for n in SSET_NAMES}
    chains = {n: s.normalized_chains(field) for n, s in sets.items()}
    for nx, x in sets.items():
        for ny, y in sets.items():
            cap = min(3, x.dim_cutoff + y.dim_cutoff)
            prod = product(x, y, dim_cap=max(cap, x.dim_cutoff + y.dim_cutoff))
            aw = aw_map(x, y, prod, field)
            ez = ez_map(x, y, prod, field)
            txy = tensor(chains[nx].space, chains[ny].space)
            ident = GradedMap.identity(txy, field)
            comp = aw.compose(ez)
            for t in range(0, cap + 1):
                if not comp.block(t).sub(ident.block(t)).is_zero():
                    out["aw_ez"] = False
            # EZ.AW on homology of the full product
            cxy = prod.normalized_chains(field)
            comp2 = ez.compose(aw)
            for t in range(0, prod.dim_cutoff + 1):
                dim, reps = cxy.homology_at(t)
                if dim == 0:
                    continue
                ech = Echelon(field)
                blk = cxy.differential.block(t + 1)
                for j in range(blk.cols):
                    col = blk.column(j)
                    if col:
                        ech.insert({cxy.space.global_index(t, r): v
                                    for r, v in col.items()}, ("b", j))
                greps = [{cxy.space.global_index(t, li): v for li, v in r.items()}
                         for r in reps]
                for i, r in enumerate(greps):
                    ech.insert(dict(r), ("h", i))
                for r in greps:
                    dv = dict(comp2.apply(r))
                    add_into(field, dv, r, field.neg(field.one))
                    resid, _ = ech.reduce(dv)
                    if resid:
                        out["ez_aw_homology"] = False
            # tau-compatibility
            pyx = product(y, x, dim_cap=x.dim_cutoff + y.dim_cutoff)
            tmap = swap_map(x, y, prod, pyx)
            tau = twist((1, 0), [chains[nx].space, chains[ny].space], field)
            if not tmap.chain_map(field).compose(ez).equals(
                    ez_map(y, x, pyx, field).compose(tau)):
                out["tau"] = False
    # naturality with the corpus maps
    d1, d0, s1 = sets["delta1"], sets["delta0"], sets["circle"]
    collapse = SimplicialMap(d1, d0, {"0": ("0", ()), "1": ("0", ()),
                                      "01": ("0", (0,))})
    quot = SimplicialMap(d1, s1, {"0": ("v", ()), "1": ("v", ()),
                                  "01": ("e", ())})
    for fm, gm in ((collapse, quot), (quot, collapse), (quot, quot)):
        px = product(fm.source, gm.source)
        py = product(fm.target, gm.target)
        fg = product_map(fm, gm, px, py)
        lhs = fg.chain_map(field).compose(ez_map(fm.source, gm.source, px, field))
        rhs = ez_map(fm.target, gm.target, py, field).compose(
            tensor_map(fm.chain_map(field), gm.chain_map(field)))
        if not lhs.equals(rhs):
            out["naturality"] = False
    return out


def run_criterion_3():
    from hhk.bar import gamma_phi
    out = {}
    for name in ("qc2", "s3q"):
        alg, hopf = load_algebra(name)
        for variant in ("L0", "R1", "L1", "R0"):
            pair, rep = gamma_phi(alg, hopf, variant, 4)
            out[f"{name}:{variant}"] = rep
    return out


def run_criterion_4():
    from hhk.bar import lambda_iso
    alg, hopf = load_algebra("f2c2")
    m = self_bimodule(alg)
    li, rep_h = lambda_iso(alg, hopf, m, "homology", 6, (0, 4))
    li2, rep_c = lambda_iso(alg, hopf, m, "cohomology", 6, (0, 4), (-4, 0))
    return {"homology": {"chain_map": rep_h["chain_map"],
                         "degrees": {str(t): v for t, v in rep_h["degrees"].items()}},
            "cohomology": {"chain_map": rep_c["chain_map"],
                           "degrees": {str(t): v for t, v in rep_c["degrees"].items()}}}


def run_criterion_5():
    from hhk.hochschild import HochschildOps, verify_calculus, verify_gerstenhaber
    out = {}
    for name, cutoff, cw, xw in (("f2c2", 6, (0, 5), (-5, 0)),
                                 ("qx2", 8, (0, 12), (-6, 12))):
        alg, _ = load_algebra(name)
        ops = HochschildOps(alg, cutoff, cw, xw)
        gfails, checked = verify_gerstenhaber(ops, 4)
        cfails = verify_calculus(ops, 4)
        out[name] = {"gerstenhaber_failures": [list(w) for w in gfails],
                     "checked": checked,
                     "calculus_failures": [list(w) for w in cfails]}
    return out


def run_criterion_6():
    from hhk.hochschild import HochschildOps
    from hhk.bv import find_duality_class, verify_bv
    alg, _ = load_algebra("qx2")
    ops = HochschildOps(alg, 8, (0, 12), (-6, 12))
    dc = find_duality_class(ops, 3)
    if dc is None:
        return {"found": False}
    bz = ops.b_on_class(dc.z)
    rep = verify_bv(ops, dc, max_cohom_degree=4)
    bracket_pairs = sum(1 for c in rep.checks
                        if c["name"].startswith("bracket-identity@"))
    return {"found": True,
            "B_z_vanishes": not bz.vector,
            "cap_iso": {str(t): v for t, v in sorted(dc.certificate["cap_iso"].items())},
            "bv_ok": rep.ok,
            "bracket_pairs_checked": bracket_pairs,
            "failures": rep.failures}


def run_criterion_7():
    from hhk.bar import TensorSquareComplex, ev_class, HomologyBases
    alg, hopf = load_algebra("qx2")
    aug = dict(hopf.counit)
    square = TensorSquareComplex(alg, aug, 8, (0, 12))
    square.realized.check_d2()
    hb = HomologyBases(square.realized, [3])
    z = dict(hb.reps[3][0])
    out = {}
    sb = self_bimodule(alg)
    cases = {"k": trivial_module(alg, augmentation=aug),
             "A": sb,
             "Ad(A)": ad_pullback_right(sb, 0, hopf)}
    for ename, emod in cases.items():
        mats, rep = ev_class(alg, aug, z, 3, emod, 8, (-6, 9), square)
        out[ename] = rep.to_json()
    return out


def run_criterion_8():
    from hhk import ainfty as ai
    out = {}
    # embedded strict structures pass
    for name in ("qc2", "lambda1", "kx3trunc"):
        alg, hopf = load_algebra(name)
        out[f"embed:{name}"] = ai.verify_ainfty_algebra(
            ai.from_dga(alg, 4), 6).ok
    alg, hopf = load_algebra("qc2")
    k = trivial_over(alg, hopf)
    out["embed:module"] = ai.verify_ainfty_module(ai.from_module(k, 4), 4).ok
    ident = {i: {i: QQ.one} for i in range(len(alg.space))}
    sb = self_bimodule(alg)
    morf = ai.strict_morphism(ident, sb, sb, 4)
    rep = ai.verify_ainfty_morphism(morf, 4)
    out["embed:morphism"] = rep.ok and rep.extra["f1_quasi_iso"]

    # negative controls fail at the documented level, then repair
    algf = ai.fixture_n3_algebra(QQ)
    fam = ai.from_dga(algf, 4)
    rep = ai.verify_ainfty_algebra(fam, 12)
    out["n3algebra:fails_at_3"] = (not rep.ok and
                                   {w[0] for w in rep.failures} == {3} and
                                   rep.first_failure()[1] == (1, 1, 1))
    fixed = ai.solve_next_level(fam, 3, 12)
    out["n3algebra:repaired"] = fixed is not None and ai.verify_ainfty_algebra(
        ai.AInftyFamily("algebra", fixed.maps, 3, algebra=algf), 12).ok

    algm, mod = ai.fixture_n3_module(QQ)
    famm = ai.from_module(mod, 4)
    repm = ai.verify_ainfty_module(famm, 10)
    out["n3module:fails_at_3"] = (not repm.ok and
                                  {w[0] for w in repm.failures} == {3})
    fixedm = ai.solve_next_level(famm, 3, 10)
    out["n3module:repaired"] = fixedm is not None and ai.verify_ainfty_module(
        ai.AInftyFamily("module", fixedm.maps, 3, algebra=algm, target=mod),
        10).ok

    algx, L, M, famx = ai.fixture_n2_morphism(QQ)
    repx = ai.verify_ainfty_morphism(famx, 6)
    out["n2morphism:fails_at_2"] = (not repx.ok and
                                    {w[0] for w in repx.failures} == {2})
    fixedx = ai.solve_next_level(famx, 2, 6)
    out["n2morphism:repaired"] = fixedx is not None and ai.verify_ainfty_morphism(
        ai.AInftyFamily("morphism", fixedx.maps, 2, algebra=algx,
                        source=L, target=M), 6).ok

    # induced bar map: exact chain-map certificate and bijective Tor transport
    fixedx.cutoff = 3
    src, tgt, gm = ai.induced_bar_map(fixedx, 3, (0, 4), max_degree=6)
    out["induced:chain_map"] = ai.certify_chain_map(src, tgt, gm)
    from hhk.bar import HomologyBases
    from hhk.elimination import rank as _rank
    from hhk.sparse import SparseMatrix
    hb_src = HomologyBases(src.realized, range(0, 4))
    hb_tgt = HomologyBases(tgt.realized, range(0, 4))
    transport_ok = True
    for t in range(0, 4):
        if not src.trusted.get(t):
            continue
        ds, dt = hb_src.dim(t), hb_tgt.dim(t)
        if ds != dt:
            transport_ok = False
            continue
        if ds == 0:
            continue
        ent = {}
        for j in range(ds):
            img = gm.apply(hb_src.reps[t][j])
            for i, c in hb_tgt.reduce(t, img).items():
                ent[(i, j)] = c
        if _rank(SparseMatrix(dt, ds, QQ, ent, _skip_check=True)) != ds:
            transport_ok = False
    out["induced:tor_transport_bijective"] = transport_ok
    return out


_RUNNERS = {1: run_criterion_1, 2: run_criterion_2, 3: run_criterion_3,
            4: run_criterion_4, 5: run_criterion_5, 6: run_criterion_6,
            7: run_criterion_7, 8: run_criterion_8}


def _get(num):
    if num not in _state:
        t0 = time.time()
        doc = _RUNNERS[num]()
        _state[num] = (doc, time.time() - t0)
    return _state[num]


def test_criterion_1_exact_differential_identities():
    doc, dt = _get(1)
    ok = all(rep["ok"] for rep in doc.values())
    _line(1, ok, "b2=0, B2=0, bB+Bb=0, bar d2=0 for all 8 corpus algebras "
          "(cutoff 8, window <= 10)", dt, 60 * len(CRIT1_ALGEBRAS))
    for name, rep in doc.items():
        assert rep["ok"], (name, rep)


def test_criterion_2_aw_ez():
    doc, dt = _get(2)
    ok = all(doc.values())
    _line(2, ok, "AW.EZ = id, EZ.AW = id on homology, naturality, "
          "tau-compatibility for all corpus pairs through dim 3", dt, 10)
    assert ok, doc


def test_criterion_3_hopf_bar_isomorphisms():
    doc, dt = _get(3)
    ok = all(all(rep.values()) for rep in doc.values())
    _line(3, ok, "all four gamma/phi variants mutually inverse, chain maps, "
          "A^e-equivariant for kC2 and kS3 at cutoff 4", dt, 30)
    assert ok, {k: v for k, v in doc.items() if not all(v.values())}


def test_criterion_4_hh_vs_adjoint_group_homology():
    doc, dt = _get(4)
    ok = True
    for side in ("homology", "cohomology"):
        rep = doc[side]
        ok = ok and rep["chain_map"]
        for t in range(5):
            key = str(t) if side == "homology" else str(-t)
            entry = rep["degrees"][key]
            ok = ok and entry["dim_src"] == entry["dim_tgt"] == 2
            ok = ok and entry["bijective"]
    _line(4, ok, "HH_n(F2C2) = H_n(C2; Ad) = 2 for n = 0..4, bases "
          "transported bijectively by Lambda, both directions", dt, 30)
    assert ok, doc


def test_criterion_5_gerstenhaber_suite():
    doc, dt = _get(5)
    ok = all(not rep["gerstenhaber_failures"] and not rep["calculus_failures"]
             for rep in doc.values())
    _line(5, ok, "cup commutativity, bracket antisymmetry/Jacobi/Poisson, "
          "calculus relations for f2c2 and qx2 (degree <= 4)", dt, 120)
    assert ok, doc


def test_criterion_6_flagship_bv():
    doc, dt = _get(6)
    ok = (doc.get("found") and doc["B_z_vanishes"] and doc["bv_ok"]
          and all(v["bijective"] for v in doc["cap_iso"].values())
          and doc["bracket_pairs_checked"] >= 9)
    _line(6, ok, "qx2 duality class in HH_3, cap bijective, kappa(1)=0, "
          "kappa^2=0, bracket identity vs combinatorial bracket", dt, 300)
    assert ok, doc


def test_criterion_7_derived_duality_evaluation():
    doc, dt = _get(7)
    ok = all(rep["is_isomorphism"] for rep in doc.values())
    nontrivial = sum(1 for rep in (doc["k"], doc["Ad(A)"])
                     for v in rep["degrees"].values() if v["dim_src"] > 0)
    ok = ok and nontrivial >= 2
    _line(7, ok, "ev_z: Ext(k,E) -> Tor(E,k) shifted by 3 bijective on "
          "trusted degrees for E in {k, A, Ad(A)}", dt, 60)
    assert ok, doc


def test_criterion_8_ainfty_checker():
    doc, dt = _get(8)
    ok = all(bool(v) for v in doc.values())
    _line(8, ok, "embedded structures pass; fixtures fail at documented "
          "levels; solves repair n=2 and n=3; induced bar map certified", dt, 30)
    assert ok, {k: v for k, v in doc.items() if not v}


def test_criterion_9_determinism():
    t0 = time.time()
    # (a) criteria 1-8 rerun: byte-identical canonical JSON
    ok = True
    for num in range(1, 9):
        first, _ = _get(num)
        second = _RUNNERS[num]()
        if reports.canonical_json(first) != reports.canonical_json(second):
            ok = False
    # (b) CLI reports across runs and thread counts
    from hhk.cli import main as cli_main

    def run(argv):
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            code = cli_main(argv)
        return code, buf.getvalue()

    commands = [
        ["compute", "hh", "--algebra", "f2c2", "--cutoff", "6", "--window", "0:4"],
        ["compute", "tor", "--left", "k", "--right", "k", "--algebra", "qx2",
         "--window", "0:12", "--cutoff", "8"],
        ["verify", "bv", "--algebra", "qx2", "--dimension", "3",
         "--window", "-6:12", "--cutoff", "8"],
    ]
    for cmd in commands:
        _, out1 = run(cmd + ["--threads", "1"])
        _, out8 = run(cmd + ["--threads", "8"])
        _, out1b = run(cmd + ["--threads", "1"])
        d1, d8 = json.loads(out1), json.loads(out8)
        if d1["results"] != d8["results"] or out1 != out1b:
            ok = False
    _line(9, ok, "criteria 1-8 and CLI reports byte-identical across runs "
          "and thread counts", time.time() - t0, 600)
    assert ok
