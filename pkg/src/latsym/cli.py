"""Command-line interface.

    latsym <command> --input FILE|DIR [--sites 1,2,3] [--pair u,v]
                     [--format text|data|latex] [--seed N] [--tol-ges X] ...

Exit codes: 0 success, 1 a self-check failed, 2 input error,
3 precondition error, 4 numerical-quality error. A directory given as
``--input`` is processed in batch, one report per file, by at most
LATSYM_THREADS worker processes.
"""
from __future__ import annotations

import argparse
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .degeneracy import analyze_degeneracy
from .errors import InputError, LatsymError, PreconditionError
from .ges import DEFAULT_TOL, Tolerances, build_ges, cospectral_partition, noncommuting_ges_pair
from .graphio import digest, format_graph, load_plan, parse_graph, parse_value, save_graph
from .groups import Permutation
from .multiplets import ExtensionPlan, extend_with_site, find_multiplets, verify_extension
from .reduction import evaluate, isospectral_reduce, neumann_truncation, nonlinear_spectrum, reduce_via_charpoly
from .render import FORMATS, latex_matrix, render
from .symmetry import (
    MAX_GLOBAL_SITES,
    cyclic_orbit_sets,
    latent_permutation_group,
    local_power_commute,
    symbolic_commute,
)

COMMANDS = ("reduce", "latent", "degeneracy", "ges", "multiplets", "extend", "verify")
GRAPH_SUFFIXES = (".graph", ".txt", ".lsg")


def parse_int_list(text: str, what: str) -> list[int]:
    try:
        vals = [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError as exc:
        raise InputError(f"{what} must be comma-separated integers, got {text!r}") from exc
    if not vals:
        raise InputError(f"{what} is empty")
    return vals


def _sites(args, doc, required: bool = True):
    if args.sites is None:
        if required:
            raise InputError(f"command '{args.command}' needs --sites")
        return None
    return parse_int_list(args.sites, "--sites")


def _pair(args) -> tuple[int, int]:
    if args.pair is None:
        raise InputError("command 'ges' needs --pair u,v")
    p = parse_int_list(args.pair, "--pair")
    if len(p) != 2:
        raise InputError("--pair needs exactly two sites")
    return p[0], p[1]


def tolerances(args) -> Tolerances:
    return Tolerances(
        cluster=args.tol_cluster, basis=args.tol_basis, ges=args.tol_ges, commute=args.tol_commute
    )


def _matrix_strings(r) -> list[list[str]]:
    return [[str(r[i, j]) for j in range(r.size)] for i in range(r.size)]


# commands ------------------------------------------------------------------

def cmd_reduce(args, doc) -> dict:
    h = doc.hamiltonian
    sites = _sites(args, doc)
    r = isospectral_reduce(h, sites)
    r2 = reduce_via_charpoly(h, sites)
    ns = nonlinear_spectrum(r, h)
    res = {
        "sites": list(r.sites),
        "poles": str(r.poles),
        "entries": _matrix_strings(r),
        "in_w_pi": r.in_w_pi(),
        "constant": r.is_constant(),
        "det_reduced_numerator": str(ns.cleared),
        "multiplicity_structure": [{"factor": str(f), "mult": m} for f, m in ns.structure],
        "spectra_coincide": ns.coincides,
        "shared_factor": str(ns.shared_factor),
    }
    if args.at is not None:
        lam = parse_value(args.at, "--at: ")
        res["evaluated_at"] = str(lam)
        res["evaluated"] = evaluate(r, lam).tolist()
        if args.neumann is not None:
            res["neumann_order"] = args.neumann
            res["neumann_partial_sum"] = neumann_truncation(h, sites, args.neumann, lam).tolist()
    cert = {
        "two_routes_agree": r == r2,
        "w_pi": r.in_w_pi(),
        "schur_identity": ns.schur_identity,
        "reduced_det_divides_char": ns.divides_char,
    }
    latex = {"R_S": latex_matrix([[r[i, j].to_str(latex=True) for j in range(r.size)] for i in range(r.size)])}
    return {"results": res, "certificates": cert, "latex": latex}


def cmd_latent(args, doc) -> dict:
    h = doc.hamiltonian
    sites = _sites(args, doc)
    g = latent_permutation_group(h, sites)
    r = isospectral_reduce(h, sites)
    agree = all(symbolic_commute(r, p) == local_power_commute(h, sites, p) for p in g.generators)
    res = {
        "sites": list(g.points),
        "order": g.order,
        "tag": str(g.tag),
        "generators": [g.site_images(p) for p in g.generators],
        "generator_cycles": [p.cycle_str(g.points) for p in g.generators],
    }
    cert = {"max_k_checked": h.rows - 1, "closed": g.is_closed(), "generators_commute_symbolically": agree}
    return {"results": res, "certificates": cert}


def cmd_degeneracy(args, doc) -> dict:
    rep = analyze_degeneracy(doc.hamiltonian, _sites(args, doc))
    data = rep.to_data()
    cert = {"verdict": rep.verdict, "vacuous": rep.vacuous, "dimension_count": sum(r.dim * r.mult for r in rep.irreps)}
    return {"results": data, "certificates": cert, "_failed": not rep.passed}


def _ges_latex(q) -> str:
    return latex_matrix([[f"{round(x, 6) + 0.0:.6f}" for x in row] for row in q])


def cmd_ges(args, doc) -> dict:
    h = doc.hamiltonian
    tol = tolerances(args)
    if not h.is_symmetric():
        raise PreconditionError("GES needs a real symmetric Hamiltonian; this input is not symmetric")
    u, v = _pair(args)
    g = build_ges(h, u, v, tol)
    res = g.to_data(args.digits)
    out = {"results": res, "certificates": {"residuals_within_tolerance": True}, "latex": {"Q": _ges_latex(g.q)}}
    if args.sites is not None:
        pair = noncommuting_ges_pair(h, _sites(args, doc), tol)
        out["results"]["noncommuting_pair"] = {
            "cyclic_order": list(pair.cyclic_order),
            "pairs": [list(pair.first.pair), list(pair.second.pair)],
            "commutator_max_norm": pair.commutator_norm,
            "singlet_diagonal": pair.singlet_diagonal,
        }
    return out


def cmd_multiplets(args, doc) -> dict:
    h = doc.hamiltonian
    sites = _sites(args, doc)
    found = find_multiplets(h, sites, max_size=args.max_size)
    res = {
        "sites": sites,
        "max_size": args.max_size,
        "multiplets": [{"sites": list(m.sites), "minimal": m.minimal, "constants": list(m.constants)} for m in found],
    }
    return {"results": res, "certificates": {"max_k_checked": h.rows - 1}}


def cmd_extend(args, doc) -> dict:
    h = doc.hamiltonian
    sites = _sites(args, doc)
    if args.plan is None:
        raise InputError("command 'extend' needs --plan FILE")
    plan = load_plan(args.plan)
    h2 = extend_with_site(h, sites, plan)
    ver = verify_extension(h, h2, sites)
    res = {"sites": sites, "new_size": h2.rows, "plan": [{"sites": list(s), "coupling": g} for s, g in plan.multiplets],
           "onsite": plan.onsite, **ver.to_data()}
    if args.output:
        save_graph(h2, args.output)
        res["written"] = str(args.output)
    else:
        res["graph"] = format_graph(h2).splitlines()
    return {"results": res, "certificates": {"rank_one_shift": ver.rank_one, "latent_group_preserved": ver.group_preserved},
            "_failed": not ver.ok}


def _default_sites(h) -> list[int]:
    if h.rows <= MAX_GLOBAL_SITES:
        orbits = cyclic_orbit_sets(h)
        if orbits:
            return list(max(orbits, key=len))
    return [1]


def cmd_verify(args, doc) -> dict:
    h = doc.hamiltonian
    rng = random.Random(args.seed)
    checks: list[dict] = []

    def check(name, ok, **detail):
        checks.append({"check": name, "ok": bool(ok), **detail})

    again = parse_graph(format_graph(h, doc.hermitian or None))
    check("format round-trip", again.hamiltonian == h)
    sites = _sites(args, doc, required=False) or _default_sites(h)
    r = isospectral_reduce(h, sites)
    check("reduction routes agree", r == reduce_via_charpoly(h, sites), sites=sites)
    check("entries in W_pi", r.in_w_pi())
    ns = nonlinear_spectrum(r, h)
    check("Schur determinant identity", ns.schur_identity)
    g = latent_permutation_group(h, sites)
    m = len(sites)
    probes = list(g.generators)
    if m >= 2:
        probes.append(Permutation.from_cycles(m, [(0, 1)]))
        probes.append(Permutation(rng.sample(range(m), m)))
    eq5 = all(symbolic_commute(r, p) == local_power_commute(h, sites, p) for p in probes)
    check("commutation equivalence", eq5, probes=len(probes))
    check("latent group closed", g.is_closed(), order=g.order, tag=str(g.tag))
    rep = analyze_degeneracy(h, sites)
    check("degeneracy bounds", rep.passed, vacuous=rep.vacuous)
    part = cospectral_partition(h)
    pw = h.powers(h.rows - 1)
    brute = all(
        part.same_class(a, b) == all(p[a - 1, a - 1] == p[b - 1, b - 1] for p in pw)
        for a in range(1, h.rows + 1) for b in range(1, h.rows + 1)
    )
    check("cospectral partition", brute, classes=[list(c) for c in part.classes])
    if h.is_symmetric():
        tol = tolerances(args)
        pairs = [(c[0], x) for c in part.classes for x in c[1:]][: args.max_pairs]
        worst = 0.0
        for u, v in pairs:
            q = build_ges(h, u, v, tol)
            worst = max(worst, max(q.residuals.values()))
        check("GES residuals", True, pairs=len(pairs), worst_residual=worst)
    elif args.pair is not None:
        raise PreconditionError("GES requested for a non-symmetric Hamiltonian")
    if len(sites) < h.rows and h.rows - len(sites) <= 16:
        found = [x for x in find_multiplets(h, sites, max_size=min(3, h.rows - len(sites))) if x.minimal][:3]
        ok = True
        for mlt in found:
            h2 = extend_with_site(h, sites, ExtensionPlan([(mlt.sites, 1)], 0))
            ok = ok and verify_extension(h, h2, sites).ok
        check("multiplet extensions", ok, multiplets=[list(x.sites) for x in found])
    failed = [c["check"] for c in checks if not c["ok"]]
    return {"results": {"sites": sites, "checks": checks}, "certificates": {"all_passed": not failed, "failed": failed},
            "_failed": bool(failed)}


HANDLERS = {
    "reduce": cmd_reduce,
    "latent": cmd_latent,
    "degeneracy": cmd_degeneracy,
    "ges": cmd_ges,
    "multiplets": cmd_multiplets,
    "extend": cmd_extend,
    "verify": cmd_verify,
}


# driver --------------------------------------------------------------------

def parameters(args) -> dict:
    p = {"sites": args.sites, "pair": args.pair, "seed": args.seed, "tolerances": tolerances(args).to_data()}
    if args.command == "multiplets":
        p["max_size"] = args.max_size
    if args.command == "reduce" and args.at is not None:
        p["at"] = args.at
        p["neumann"] = args.neumann
    if args.command == "extend":
        p["plan"] = args.plan
    return p


def run_one(args, path: Path) -> tuple[int, str, dict]:
    """Run one command on one file; returns (exit code, rendered report, raw report)."""
    t0 = time.perf_counter()
    report = {"command": args.command, "input": str(path)}
    try:
        try:
            text = path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise InputError(f"cannot read {path}: {exc}") from exc
        report["input_digest"] = digest(text)
        report["parameters"] = parameters(args)
        doc = parse_graph(text, str(path))
        out = HANDLERS[args.command](args, doc)
        failed = out.pop("_failed", False)
        report.update(out)
        code = 1 if failed else 0
    except LatsymError as exc:
        report["error"] = {"type": type(exc).__name__, "message": str(exc), "exit_code": exc.exit_code}
        if getattr(exc, "residuals", None):
            report["error"]["residuals"] = exc.residuals
        code = exc.exit_code
    if args.timings:
        report["timings"] = {"total_seconds": round(time.perf_counter() - t0, 6)}
    return code, render(report, args.format), report


def _batch_files(d: Path) -> list[Path]:
    files = sorted(p for p in d.iterdir() if p.is_file() and p.suffix in GRAPH_SUFFIXES)
    if not files:
        raise InputError(f"no graph files ({', '.join(GRAPH_SUFFIXES)}) in {d}")
    return files


def worker_count(n_jobs: int) -> int:
    env = os.environ.get("LATSYM_THREADS")
    cap = os.cpu_count() or 1
    if env:
        try:
            cap = max(1, int(env))
        except ValueError as exc:
            raise InputError(f"LATSYM_THREADS must be an integer, got {env!r}") from exc
    return max(1, min(cap, n_jobs))


def _job(payload):
    args, path = payload
    code, text, _ = run_one(args, Path(path))
    return code, text


def run_batch(args, d: Path) -> int:
    files = _batch_files(d)
    workers = worker_count(len(files))
    jobs = [(args, str(p)) for p in files]
    if workers == 1:
        results = [_job(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_job, jobs))
    ext = {"text": "txt", "data": "json", "latex": "tex"}[args.format]
    worst = 0
    for p, (code, text) in zip(files, results):
        if args.output_dir:
            od = Path(args.output_dir)
            od.mkdir(parents=True, exist_ok=True)
            (od / f"{p.stem}.{args.command}.{ext}").write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
        worst = max(worst, code)
    return worst


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="latsym", description="Isospectral reductions and latent symmetries of exact Hamiltonians.")
    ap.add_argument("--version", action="version", version=f"latsym {__version__}")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--input", required=True, help="graph document, or a directory for batch mode")
    ap.add_argument("--sites", help="comma-separated 1-based site list S")
    ap.add_argument("--pair", help="cospectral pair u,v for 'ges'")
    ap.add_argument("--format", choices=FORMATS, default="text")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--tol-ges", type=float, default=DEFAULT_TOL.ges)
    ap.add_argument("--tol-basis", type=float, default=DEFAULT_TOL.basis)
    ap.add_argument("--tol-cluster", type=float, default=DEFAULT_TOL.cluster)
    ap.add_argument("--tol-commute", type=float, default=DEFAULT_TOL.commute)
    ap.add_argument("--max-size", type=int, default=4, help="largest multiplet searched")
    ap.add_argument("--max-pairs", type=int, default=6, help="GES pairs constructed by 'verify'")
    ap.add_argument("--plan", help="extension plan file for 'extend'")
    ap.add_argument("--output", help="write the extended graph here ('extend')")
    ap.add_argument("--output-dir", help="batch mode: one report file per input")
    ap.add_argument("--at", help="evaluate R_S at this exact λ ('reduce')")
    ap.add_argument("--neumann", type=int, help="with --at: Neumann partial sum of this order")
    ap.add_argument("--digits", type=int, default=12, help="decimals printed for floating matrices")
    ap.add_argument("--timings", action="store_true", help="append wall-clock timings to reports")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    path = Path(args.input)
    try:
        if path.is_dir():
            return run_batch(args, path)
        if not path.exists():
            raise InputError(f"no such file: {path}")
    except LatsymError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    code, text, report = run_one(args, path)
    sys.stdout.write(text)
    if "error" in report:
        print(f"error: {report['error']['message']}", file=sys.stderr)
    return code


FIXTURES = ("fig1", "ring", "path", "decorated-ring", "pendant-polygon", "latent-dihedral", "asymmetric-d3")


def fixture_main(argv=None) -> int:
    """``latsym-fixture NAME``: write one of the standard test systems."""
    from . import fixtures

    ap = argparse.ArgumentParser(prog="latsym-fixture", description="Write a standard test system as a graph document.")
    ap.add_argument("name", choices=FIXTURES)
    ap.add_argument("--params", default="1,2,3,0,5", help="fig1: h1,h2,h3,v1,v2 (exact values)")
    ap.add_argument("--n", type=int, default=3, help="ring / path / polygon size")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--steps", type=int, default=2)
    ap.add_argument("--output", help="file to write (default: stdout)")
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if args.name == "fig1":
            vals = [parse_value(t, "--params: ") for t in args.params.split(",")]
            if len(vals) != 5:
                raise InputError("fig1 needs five parameters h1,h2,h3,v1,v2")
            h = fixtures.fig1(*vals)
        elif args.name == "ring":
            h = fixtures.ring(args.n)
        elif args.name == "path":
            h = fixtures.path(args.n)
        elif args.name == "decorated-ring":
            h = fixtures.decorated_ring(args.n)
        elif args.name == "pendant-polygon":
            h = fixtures.pendant_polygon(args.n)
        elif args.name == "latent-dihedral":
            h = fixtures.latent_dihedral(args.n, seed=args.seed, steps=args.steps)
        else:
            h = fixtures.asymmetric_latent_d3(seed=args.seed, steps=args.steps)
    except LatsymError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    text = format_graph(h)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

