"""Command-line front end: corpus generation, computation commands, and
verification suites with structured reports.

Exit codes: 0 pass, 1 verification failure, 2 bad input, 3 a window
containing untrusted degrees was requested without --untrusted.
"""
import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import corpus, reports
from .algebra import (algebra_from_json, self_bimodule, trivial_module,
                      ad_pullback, ad_pullback_right, validate)
from .fields import QQ


class BadInput(Exception):
    pass


def _threads(args):
    n = getattr(args, "threads", None)
    if n is None:
        n = int(os.environ.get("HHK_THREADS", "1"))
    return max(1, n)


def par_map(fn, items, nthreads):
    """Deterministic parallel map: results are ordered by input position
    regardless of completion order."""
    if nthreads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=nthreads) as pool:
        return list(pool.map(fn, items))


def load_algebra_arg(spec):
    """An algebra spec: a JSON file path or a corpus name."""
    if os.path.exists(spec):
        with open(spec, "rb") as fh:
            raw = fh.read()
        doc = json.loads(raw)
        alg, hopf = algebra_from_json(doc)
        return alg, hopf, {"name": alg.name, "sha256": reports.sha256_of(raw)}
    try:
        alg, hopf = corpus.load_algebra(spec)
    except corpus.UnknownCorpusEntry:
        raise BadInput(f"no such algebra file or corpus entry: {spec}")
    doc = corpus.emit_algebra(spec)
    return alg, hopf, {"name": alg.name,
                       "sha256": reports.input_hash_of_doc(doc)}


def load_sset_arg(spec):
    from .simplicial import sset_from_json, sset_to_json
    if os.path.exists(spec):
        with open(spec, "rb") as fh:
            raw = fh.read()
        x = sset_from_json(json.loads(raw))
        return x, {"name": x.name, "sha256": reports.sha256_of(raw)}
    try:
        x = corpus.load_sset(spec)
    except corpus.UnknownCorpusEntry:
        raise BadInput(f"no such simplicial file or corpus entry: {spec}")
    return x, {"name": x.name,
               "sha256": reports.input_hash_of_doc(sset_to_json(x))}


def load_group_arg(spec):
    from .simplicial import group_from_json, group_to_json
    if os.path.exists(spec):
        with open(spec, "rb") as fh:
            raw = fh.read()
        g = group_from_json(json.loads(raw))
        return g, {"name": g.name, "sha256": reports.sha256_of(raw)}
    try:
        g = corpus.load_sgroup(spec)
    except corpus.UnknownCorpusEntry:
        raise BadInput(f"no such simplicial group: {spec}")
    return g, {"name": g.name,
               "sha256": reports.input_hash_of_doc(group_to_json(g))}


def module_arg(which, alg, hopf):
    """Named coefficient modules: k, self, ad."""
    if which == "k":
        aug = dict(hopf.counit) if hopf is not None else None
        return trivial_module(alg, augmentation=aug)
    if which == "self":
        return self_bimodule(alg)
    if which in ("ad", "ad0"):
        if hopf is None:
            raise BadInput("ad coefficients need Hopf data")
        return ad_pullback(self_bimodule(alg), 0, hopf)
    if which == "ad-right":
        if hopf is None:
            raise BadInput("ad coefficients need Hopf data")
        return ad_pullback_right(self_bimodule(alg), 0, hopf)
    raise BadInput(f"unknown module spec {which!r} (use k, self, ad)")


def parse_window(text, default):
    if text is None:
        return default
    try:
        lo, hi = text.split(":")
        return (int(lo), int(hi))
    except ValueError:
        raise BadInput(f"bad window {text!r}; expected LO:HI")


def _emit(args, doc):
    out = reports.format_report(doc, args.format)
    sys.stdout.write(out)


def _betti_results(rows_cx, window, include_untrusted, display="homology",
                   include_reps=False, nthreads=1):
    rows, cx = rows_cx
    table = reports.betti_rows_json(rows, display=display)
    untrusted = [t for t in range(window[0], window[1] + 1)
                 if not cx.trusted.get(t, False)]
    return table, untrusted


def cmd_compute(args):
    alg, hopf, inhash = load_algebra_arg(args.algebra)
    cutoff = args.cutoff
    kind = args.kind
    nthreads = _threads(args)
    from .bar import tor, ext, group_homology, group_cohomology
    from .hochschild import hh_homology, hh_cohomology
    display = "homology"
    if kind == "tor":
        window = parse_window(args.window, (0, cutoff))
        left = module_arg(args.left, alg, hopf)
        right = module_arg(args.right, alg, hopf)
        rows, cx = tor(left, alg, right, cutoff, window,
                       include_untrusted=args.untrusted, threads=nthreads)
    elif kind == "ext":
        window = parse_window(args.window, (-cutoff, 0))
        left = module_arg(args.left, alg, hopf)
        right = module_arg(args.right, alg, hopf)
        rows, cx = ext(left, right, alg, cutoff, window,
                       include_untrusted=args.untrusted, threads=nthreads)
        display = "cohomology"
    elif kind == "hh":
        window = parse_window(args.window, (0, cutoff))
        m = module_arg(args.coefficients, alg, hopf)
        rows, cx = hh_homology(alg, m, cutoff, window,
                               include_untrusted=args.untrusted, threads=nthreads)
    elif kind == "hhcoh":
        window = parse_window(args.window, (-cutoff, 0))
        m = module_arg(args.coefficients, alg, hopf)
        rows, cx = hh_cohomology(alg, m, cutoff, window,
                                 include_untrusted=args.untrusted, threads=nthreads)
        display = "cohomology"
    elif kind == "group-homology":
        if hopf is None:
            raise BadInput("group homology needs a Hopf algebra (group ring)")
        window = parse_window(args.window, (0, cutoff))
        m = module_arg(args.coefficients, alg, hopf)
        if m.side == "left":
            m = module_arg("ad-right", alg, hopf) if args.coefficients in ("ad", "ad0") else m
        rows, cx = group_homology(alg, hopf, m, cutoff, window,
                                  include_untrusted=args.untrusted, threads=nthreads)
    elif kind == "group-cohomology":
        if hopf is None:
            raise BadInput("group cohomology needs a Hopf algebra (group ring)")
        window = parse_window(args.window, (-cutoff, 0))
        m = module_arg(args.coefficients, alg, hopf)
        rows, cx = group_cohomology(alg, hopf, m, cutoff, window,
                                    include_untrusted=args.untrusted, threads=nthreads)
        display = "cohomology"
    else:
        raise BadInput(f"unknown computation {kind!r}")

    table, untrusted = _betti_results((rows, cx), window, args.untrusted,
                                      display, nthreads=nthreads)
    results = {"betti": table}
    if untrusted:
        results["untrusted_degrees"] = sorted(
            t if display == "homology" else -t for t in untrusted)
    doc = reports.build_report(
        command=["compute", kind], inputs={"algebra": inhash},
        parameters={"cutoff": cutoff, "window": list(window),
                    "untrusted": bool(args.untrusted),
                    "threads": nthreads},
        results=results,
        stats=_collect_stats() if args.stats else None)
    _emit(args, doc)
    if untrusted and not args.untrusted:
        return 3
    return 0


def _verify_algebra(args, alg, hopf):
    rep = validate(alg, hopf if args.kind == "hopf" or hopf else None)
    if args.kind == "hopf" and hopf is None:
        raise BadInput("algebra has no Hopf data")
    return rep.ok, rep.to_json()


def cmd_verify(args):
    kind = args.kind
    results = {}
    ok = True
    inputs = {}
    params = {"threads": _threads(args)}

    if kind in ("algebra", "hopf"):
        alg, hopf, inhash = load_algebra_arg(args.algebra)
        inputs["algebra"] = inhash
        ok, results = _verify_algebra(args, alg, hopf)

    elif kind == "identities":
        alg, hopf, inhash = load_algebra_arg(args.algebra)
        inputs["algebra"] = inhash
        window = parse_window(args.window, (0, args.cutoff + 2))
        from .identities import identity_suite
        rep = identity_suite(alg, hopf, args.cutoff, window)
        ok = rep["ok"]
        results = rep
        params.update({"cutoff": args.cutoff, "window": list(window)})

    elif kind in ("calculus", "gerstenhaber"):
        alg, hopf, inhash = load_algebra_arg(args.algebra)
        inputs["algebra"] = inhash
        window = parse_window(args.window, (0, args.cutoff))
        cwindow = parse_window(args.cochain_window, (-args.cutoff, window[1]))
        from .hochschild import HochschildOps, verify_calculus, verify_gerstenhaber
        ops = HochschildOps(alg, args.cutoff, window, cwindow)
        if kind == "calculus":
            fails = verify_calculus(ops, args.degree_bound)
            results = {"failures": [list(w) for w in fails]}
            ok = not fails
        else:
            fails, checked = verify_gerstenhaber(ops, args.degree_bound)
            results = {"failures": [list(w) for w in fails], "checked": checked}
            ok = not fails
        params.update({"cutoff": args.cutoff, "window": list(window),
                       "cochainWindow": list(cwindow),
                       "degreeBound": args.degree_bound})

    elif kind == "bv":
        alg, hopf, inhash = load_algebra_arg(args.algebra)
        inputs["algebra"] = inhash
        window = parse_window(args.window, (-args.cutoff, args.cutoff + 4))
        chain_window = (max(0, window[0]), window[1])
        from .hochschild import HochschildOps
        from .bv import find_duality_class, verify_bv, UntrustedDegree
        ops = HochschildOps(alg, args.cutoff, chain_window, window, check=False)
        dc = None
        try:
            dc = find_duality_class(ops, args.dimension,
                                    search_coeffs=range(-args.search_bound,
                                                        args.search_bound + 1))
        except UntrustedDegree as e:
            results["duality_class"] = {"found": False, "error": str(e)}
        except Exception as e:
            results["duality_class"] = {"found": False, "error": str(e)}
        if dc is None:
            results.setdefault("duality_class", {"found": False})
            rep = verify_bv(ops, None, args.degree_bound)
            results["identities"] = rep.to_json()
            ok = False
        else:
            results["duality_class"] = {
                "found": True, "degree": dc.degree,
                "candidate": dc.candidate_index,
                "all_certified": dc.all_certified,
                "cap_iso": {str(t): v for t, v in sorted(dc.certificate["cap_iso"].items())}}
            rep = verify_bv(ops, dc, args.degree_bound)
            results["identities"] = rep.to_json()
            ok = rep.ok
        params.update({"cutoff": args.cutoff, "window": list(window),
                       "dimension": args.dimension,
                       "searchBound": args.search_bound,
                       "degreeBound": args.degree_bound})

    elif kind == "ez-aw":
        x, hx = load_sset_arg(args.x)
        y, hy = load_sset_arg(args.y)
        inputs["x"], inputs["y"] = hx, hy
        results, ok = _verify_ez_aw(x, y, args.dim_cap)
        params["dimCap"] = args.dim_cap

    elif kind == "antipode":
        g, hg = load_group_arg(args.group)
        inputs["group"] = hg
        from .simplicial import chain_hopf, verify_antipode_homotopy
        field = QQ if args.field == "Q" else __import__(
            "hhk.fields", fromlist=["GF"]).GF(int(args.field))
        alg, hopf = chain_hopf(g, field)
        rep = verify_antipode_homotopy(alg, hopf)
        results = {k: (v if isinstance(v, bool) else repr(v))
                   for k, v in rep.items()}
        ok = all(v for k, v in rep.items()
                 if isinstance(v, bool) and k != "strict")

    elif kind == "ainfty":
        ok, results, inputs = _verify_ainfty(args)
        params.update({"maxDegree": args.degree_bound})

    elif kind == "lambda":
        alg, hopf, inhash = load_algebra_arg(args.algebra)
        inputs["algebra"] = inhash
        if hopf is None:
            raise BadInput("lambda needs Hopf data")
        from .bar import lambda_iso
        window = parse_window(args.window, (0, args.cutoff - 2))
        m = self_bimodule(alg)
        direction = args.direction
        li, rep = lambda_iso(alg, hopf, m, direction, args.cutoff, window,
                             (-window[1], 0) if direction == "cohomology" else None)
        results = {"chain_map": rep["chain_map"],
                   "degrees": {str(t): v for t, v in sorted(rep["degrees"].items())}}
        ok = rep["chain_map"] and all(v["bijective"] for v in rep["degrees"].values())
        params.update({"cutoff": args.cutoff, "window": list(window),
                       "direction": direction})

    elif kind == "gamma-phi":
        alg, hopf, inhash = load_algebra_arg(args.algebra)
        inputs["algebra"] = inhash
        from .bar import gamma_phi
        variants = [args.variant] if args.variant else ["L0", "R1", "L1", "R0"]
        results = {}
        for v in variants:
            pair, rep = gamma_phi(alg, hopf, v, args.cutoff)
            results[v] = rep
            ok = ok and all(rep.values())
        params["cutoff"] = args.cutoff

    else:
        raise BadInput(f"unknown verification {kind!r}")

    doc = reports.build_report(command=["verify", kind], inputs=inputs,
                               parameters=params, results=results,
                               verdict="PASS" if ok else "FAIL",
                               stats=_collect_stats() if args.stats else None)
    _emit(args, doc)
    return 0 if ok else 1


def _verify_ez_aw(x, y, dim_cap):
    from .simplicial import product, aw_map, ez_map, swap_map
    from .graded import tensor, GradedMap, twist
    from .elimination import Echelon
    from .vec import add_into
    field = QQ
    prod = product(x, y, dim_cap=dim_cap)
    aw = aw_map(x, y, prod, field)
    ez = ez_map(x, y, prod, field)
    cx = x.normalized_chains(field)
    cy = y.normalized_chains(field)
    txy = tensor(cx.space, cy.space)
    ident = GradedMap.identity(txy, field)
    comp = aw.compose(ez)
    aw_ez_ok = all(comp.block(t).sub(ident.block(t)).is_zero()
                   for t in range(0, dim_cap + 1)
                   if comp.block(t).cols == ident.block(t).cols)
    # EZ . AW induces the identity on homology of C(X x Y)
    cxy = prod.normalized_chains(field)
    comp2 = ez.compose(aw)
    hom_ok = True
    for t in range(0, prod.dim_cutoff + 1):
        dim, reps = cxy.homology_at(t)
        if dim == 0:
            continue
        ech = Echelon(field)
        blk = cxy.differential.block(t + 1)
        for j in range(blk.cols):
            col = blk.column(j)
            if col:
                ech.insert({cxy.space.global_index(t, r): v for r, v in col.items()},
                           ("b", j))
        greps = [{cxy.space.global_index(t, li): v for li, v in r.items()}
                 for r in reps]
        for i, r in enumerate(greps):
            ech.insert(dict(r), ("h", i))
        for r in greps:
            img = comp2.apply(r)
            dv = dict(img)
            add_into(field, dv, r, field.neg(field.one))
            resid, _ = ech.reduce(dv)
            if resid:
                hom_ok = False
    # tau-compatibility through the swap
    pyx = product(y, x, dim_cap=dim_cap)
    t_map = swap_map(x, y, prod, pyx)
    ez_yx = ez_map(y, x, pyx, field)
    tau = twist((1, 0), [cx.space, cy.space], field)
    tau_ok = t_map.chain_map(field).compose(ez).equals(ez_yx.compose(tau))
    results = {"aw_ez_identity": aw_ez_ok,
               "ez_aw_identity_on_homology": hom_ok,
               "tau_compatibility": tau_ok}
    return results, all(results.values())


def _verify_ainfty(args):
    from . import ainfty as ai
    inputs = {}
    results = {}
    ok = True
    if args.fixture:
        fx = args.fixture
        inputs["fixture"] = {"name": fx}
        if fx == "n3algebra":
            alg = ai.fixture_n3_algebra(QQ)
            fam = ai.from_dga(alg, 4)
            rep = ai.verify_ainfty_algebra(fam, args.degree_bound)
            results["before"] = rep.to_json()
            expected_fail = (not rep.ok and
                             {w[0] for w in rep.failures} == {3})
            fixed = ai.solve_next_level(fam, 3, args.degree_bound)
            repaired = False
            if fixed is not None:
                rep2 = ai.verify_ainfty_algebra(
                    ai.AInftyFamily("algebra", fixed.maps, 3, algebra=alg),
                    args.degree_bound)
                repaired = rep2.ok
                results["after"] = rep2.to_json()
            ok = expected_fail and repaired
        elif fx == "n3module":
            alg, mod = ai.fixture_n3_module(QQ)
            fam = ai.from_module(mod, 4)
            rep = ai.verify_ainfty_module(fam, args.degree_bound)
            results["before"] = rep.to_json()
            expected_fail = not rep.ok and {w[0] for w in rep.failures} == {3}
            fixed = ai.solve_next_level(fam, 3, args.degree_bound)
            repaired = False
            if fixed is not None:
                rep2 = ai.verify_ainfty_module(
                    ai.AInftyFamily("module", fixed.maps, 3, algebra=alg,
                                    target=mod), args.degree_bound)
                repaired = rep2.ok
                results["after"] = rep2.to_json()
            ok = expected_fail and repaired
        elif fx == "n2morphism":
            alg, L, M, fam = ai.fixture_n2_morphism(QQ)
            rep = ai.verify_ainfty_morphism(fam, args.degree_bound)
            results["before"] = rep.to_json()
            expected_fail = not rep.ok and {w[0] for w in rep.failures} == {2}
            fixed = ai.solve_next_level(fam, 2, args.degree_bound)
            repaired = False
            if fixed is not None:
                rep2 = ai.verify_ainfty_morphism(
                    ai.AInftyFamily("morphism", fixed.maps, 2, algebra=alg,
                                    source=L, target=M), args.degree_bound)
                repaired = rep2.ok
                results["after"] = rep2.to_json()
                fixed.cutoff = 3
                src, tgt, gm = ai.induced_bar_map(fixed, 3, (0, 4),
                                                  max_degree=args.degree_bound)
                results["induced_bar_chain_map"] = ai.certify_chain_map(src, tgt, gm)
                repaired = repaired and results["induced_bar_chain_map"]
            ok = expected_fail and repaired
        else:
            raise BadInput(f"unknown fixture {fx!r}")
    elif args.embed:
        alg, hopf, inhash = load_algebra_arg(args.embed)
        inputs["algebra"] = inhash
        fam = ai.from_dga(alg, args.arity_cutoff)
        rep = ai.verify_ainfty_algebra(fam, args.degree_bound)
        results = rep.to_json()
        ok = rep.ok
    elif args.file:
        with open(args.file, "rb") as fh:
            raw = fh.read()
        inputs["family"] = {"sha256": reports.sha256_of(raw)}
        fam = ai.ainfty_from_json(json.loads(raw))
        verifier = {"algebra": ai.verify_ainfty_algebra,
                    "module": ai.verify_ainfty_module,
                    "morphism": ai.verify_ainfty_morphism}[fam.kind]
        rep = verifier(fam, args.degree_bound)
        results = rep.to_json()
        ok = rep.ok
        if args.solve is not None:
            fixed = ai.solve_next_level(fam, args.solve, args.degree_bound)
            results["solved_level"] = args.solve if fixed is not None else None
            if fixed is not None:
                rep2 = verifier(ai.AInftyFamily(fam.kind, fixed.maps, args.solve,
                                                algebra=fam.algebra,
                                                source=fam.source,
                                                target=fam.target),
                                args.degree_bound)
                results["after_solve"] = rep2.to_json()
                ok = rep2.ok
    else:
        raise BadInput("verify ainfty needs --fixture, --embed, or --file")
    return ok, results, inputs


def cmd_corpus(args):
    if args.action == "list":
        doc = {"algebras": corpus.algebra_names(),
               "simplicialSets": corpus.sset_names(),
               "simplicialGroups": corpus.sgroup_names()}
        sys.stdout.write(reports.canonical_json(doc))
        return 0
    name = args.name
    if name is None:
        raise BadInput("corpus emit needs a name")
    kw = {}
    if args.maxdeg is not None:
        kw["maxdeg"] = args.maxdeg
    if name in corpus.algebra_names():
        doc = corpus.emit_algebra(name, **kw)
    elif name in corpus.sset_names():
        from .simplicial import sset_to_json
        doc = sset_to_json(corpus.load_sset(name))
    elif name in corpus.sgroup_names():
        from .simplicial import group_to_json
        doc = group_to_json(corpus.load_sgroup(name))
    else:
        raise BadInput(f"unknown corpus entry {name!r}")
    text = reports.canonical_json(doc)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="hhk",
                                description="exact Hochschild/bar/BV engine")
    sub = p.add_subparsers(dest="cmd", required=True)

    def common(sp):
        sp.add_argument("--format", choices=["json", "csv", "table"],
                        default="json")
        sp.add_argument("--threads", type=int, default=None)
        sp.add_argument("--untrusted", action="store_true")
        sp.add_argument("--stats", action="store_true",
                        help="attach wall-clock and peak-memory stats "
                             "(breaks byte-for-byte determinism)")

    pc = sub.add_parser("compute", help="Betti tables")
    pc.add_argument("kind", choices=["tor", "ext", "hh", "hhcoh",
                                     "group-homology", "group-cohomology"])
    pc.add_argument("--algebra", required=True)
    pc.add_argument("--left", default="k")
    pc.add_argument("--right", default="k")
    pc.add_argument("--coefficients", default="self")
    pc.add_argument("--cutoff", type=int, default=6)
    pc.add_argument("--window", default=None)
    common(pc)
    pc.set_defaults(fn=cmd_compute)

    pv = sub.add_parser("verify", help="verification suites")
    pv.add_argument("kind", choices=["algebra", "hopf", "identities",
                                     "calculus", "gerstenhaber", "bv",
                                     "ez-aw", "antipode", "ainfty",
                                     "lambda", "gamma-phi"])
    pv.add_argument("--algebra")
    pv.add_argument("--cutoff", type=int, default=6)
    pv.add_argument("--window", default=None)
    pv.add_argument("--cochain-window", dest="cochain_window", default=None)
    pv.add_argument("--dimension", type=int, default=3)
    pv.add_argument("--search-bound", dest="search_bound", type=int, default=2)
    pv.add_argument("--degree-bound", dest="degree_bound", type=int, default=4)
    pv.add_argument("--x")
    pv.add_argument("--y")
    pv.add_argument("--dim-cap", dest="dim_cap", type=int, default=3)
    pv.add_argument("--group")
    pv.add_argument("--field", default="Q")
    pv.add_argument("--fixture")
    pv.add_argument("--embed")
    pv.add_argument("--file")
    pv.add_argument("--solve", type=int, default=None)
    pv.add_argument("--arity-cutoff", dest="arity_cutoff", type=int, default=4)
    pv.add_argument("--variant")
    pv.add_argument("--direction", choices=["homology", "cohomology"],
                    default="homology")
    common(pv)
    pv.set_defaults(fn=cmd_verify)

    pk = sub.add_parser("corpus", help="list or emit corpus spec files")
    pk.add_argument("action", choices=["list", "emit"])
    pk.add_argument("name", nargs="?")
    pk.add_argument("--maxdeg", type=int, default=None)
    pk.add_argument("--out", default=None)
    pk.set_defaults(fn=cmd_corpus)
    return p


def _collect_stats():
    import resource
    import time as _time
    ru = resource.getrusage(resource.RUSAGE_SELF)
    return {"wallClock": _time.time(), "peakRssKb": ru.ru_maxrss}


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    # merge "--window -6:12" into "--window=-6:12" so argparse accepts
    # negative window bounds
    merged = []
    i = 0
    while i < len(argv):
        a = argv[i]
        if a in ("--window", "--cochain-window") and i + 1 < len(argv) \
                and argv[i + 1].startswith("-") and ":" in argv[i + 1]:
            merged.append(f"{a}={argv[i + 1]}")
            i += 2
        else:
            merged.append(a)
            i += 1
    parser = build_parser()
    args = parser.parse_args(merged)
    try:
        return args.fn(args)
    except BadInput as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except FileNotFoundError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
