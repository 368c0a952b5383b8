"""Command-line interface.

Every subcommand prints one JSON object on stdout. Exit codes:
0 success (including negative answers such as "not k-colourable"),
1 a requested verification failed, 2 bad input, 3 a size or search budget ran out.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import secrets
import sys
import time
from datetime import datetime, timezone
from pathlib import Path
from typing import Sequence

from hypercolor import __version__, chroma, fileio, geometry, geomfam, lift, pointsets, render, tiling
from hypercolor.errors import ConsistencyError, HypercolorError, InputError, ResourceError
from hypercolor.geometry import NormSpec
from hypercolor.hypergraph import Hypergraph, complete_graph, fano_plane, uniformity, unit_distance_graph

log = logging.getLogger("hypercolor")

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


class VerificationFailed(Exception):
    def __init__(self, result: dict):
        super().__init__(result.get("error", "verification failed"))
        self.result = result


def _emit(result: dict) -> None:
    sys.stdout.write(json.dumps(result, sort_keys=True) + "\n")


def _norm(args) -> NormSpec:
    return NormSpec.parse(args.norm)


def _solver_kw(args) -> dict:
    return {"node_budget": args.node_budget, "threads": args.threads}


def _maybe_manifest(args, inputs, outputs, **kw) -> str | None:
    if not getattr(args, "manifest", None):
        return None
    m = fileio.build_manifest(args.argv, inputs, outputs, **kw)
    fileio.write_json(args.manifest, m)
    return args.manifest


_COMBINATORIAL = re.compile(r"^(complete)\((\d+)\)$|^(fano)$")


def build_named(name: str, norm: NormSpec, tol: float) -> Hypergraph:
    m = _COMBINATORIAL.match(name.strip().lower())
    if m:
        return complete_graph(int(m.group(2))) if m.group(1) else fano_plane()
    return unit_distance_graph(pointsets.builtin_pointsets(name), norm, tol)


# -- subcommands -------------------------------------------------------------

def cmd_build(args) -> dict:
    H = build_named(args.name, _norm(args), args.tol)
    res = {"n": H.n, "edges": len(H.edges), "d": H.dimension}
    if args.out:
        if args.format == "dimacs":
            Path(args.out).write_text(fileio.dimacs(H))
        else:
            fileio.write_hypergraph(args.out, H)
        res["out"] = args.out
        _maybe_manifest(args, [], [args.out])
    else:
        res["hypergraph"] = fileio.hypergraph_to_mapping(H)
    return res


def cmd_chi(args) -> dict:
    H = fileio.read_hypergraph(args.input)
    r = chroma.chromatic_number(H, symmetry_breaking=not args.no_symmetry, **_solver_kw(args))
    if args.out:
        fileio.write_coloring(args.out, r.witness)
    stats = {"nodes": r.stats.nodes, "calls": [{"k": c["k"], "nodes": c["nodes"]} for c in r.stats.calls]}
    _maybe_manifest(
        args, [args.input], [args.out] if args.out else [], solver=stats,
        verdicts={"chi": r.k}, timing={"wall_seconds": r.stats.seconds},
    )
    return {"chi": r.k, "witness": list(r.witness.colors), "nodes": r.stats.nodes}


def cmd_kcolor(args) -> dict:
    H = fileio.read_hypergraph(args.input)
    stats = chroma.SolverStats()
    phi = chroma.is_k_colorable(H, args.k, symmetry_breaking=not args.no_symmetry, stats=stats, **_solver_kw(args))
    res = {"k": args.k, "colorable": phi is not None, "nodes": stats.nodes}
    if phi is not None:
        res["witness"] = list(phi.colors)
        if args.out:
            fileio.write_coloring(args.out, phi)
    return res


def cmd_check(args) -> dict:
    H = fileio.read_hypergraph(args.input)
    phi = fileio.read_coloring(args.coloring)
    chk = chroma.is_proper(H, phi)
    res = {"proper": chk.ok, "colors_used": phi.used()}
    if not chk.ok:
        res["monochromatic_edge"] = list(chk.edge)
        res["ok"] = False
        res["error"] = "coloring is not proper"
        raise VerificationFailed(res)
    return res


def cmd_lift(args) -> dict:
    H = fileio.read_hypergraph(args.input)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    t0 = time.perf_counter()
    base = chroma.chromatic_number(H, **_solver_kw(args))
    k = base.k
    if args.k is not None:
        if args.verify and args.k != k:
            raise ConsistencyError(f"supplied k = {args.k} but chi(H) = {k}")
        k = args.k
    solver = {"source_nodes": base.stats.nodes}
    try:
        chain = lift.iterated_lift(H, args.target_m, edge_cap=args.edge_cap, k=k)
        partial = False
    except ResourceError as exc:
        chain = exc.partial or []
        partial = True
        err = str(exc)
    files = [fileio.write_hypergraph(out / "stage_0.json", H)]
    stages = [{"stage": 0, "m": uniformity(H), "n": H.n, "edges": len(H.edges), "chi": base.k}]
    verified = True
    for i, res in enumerate(chain, 1):
        files.append(fileio.write_hypergraph(out / f"stage_{i}.json", res.lifted))
        st = {
            "stage": i,
            "m": uniformity(res.lifted),
            "n": res.lifted.n,
            "edges": len(res.lifted.edges),
            "expected_edges": res.expected_edges,
        }
        if args.verify:
            r = chroma.chromatic_number(res.lifted, **_solver_kw(args))
            st["chi"] = r.k
            solver[f"stage_{i}_nodes"] = r.stats.nodes
            verified &= r.k == base.k
        verified &= st["edges"] == st["expected_edges"]
        stages.append(st)
    verdicts = {"k": k, "chi_source": base.k, "stages": stages, "partial": partial}
    if args.verify:
        verdicts["chi_preserved"] = verified
    wall = time.perf_counter() - t0
    manifest = fileio.build_manifest(
        args.argv, [args.input], files, solver=solver, verdicts=verdicts,
        timing={"generated_at": datetime.now(timezone.utc).isoformat(), "wall_seconds": wall},
        relative_to=out,
    )
    fileio.write_json(out / "manifest.json", manifest)
    res = {"k": k, "stages": stages, "out": str(out), "manifest": str(out / "manifest.json")}
    if args.verify:
        res["chi_preserved"] = verified
    if partial:
        res.update(ok=False, error=err, partial=True)
        raise ResourceError(err, partial=res)
    if args.verify and not verified:
        res.update(ok=False, error="chromatic number not preserved")
        raise VerificationFailed(res)
    return res


def cmd_instantiate(args) -> dict:
    M = fileio.read_gonset(args.gons)
    F = fileio.read_pointset(args.points)
    H = geomfam.instantiate(M, F, _norm(args), args.mode, args.tol)
    return _hypergraph_result(args, H)


def _hypergraph_result(args, H: Hypergraph, **extra) -> dict:
    res = {"n": H.n, "edges": len(H.edges), **extra}
    if args.chi:
        res["chi"] = chroma.chromatic_number(H, **_solver_kw(args)).k
    if args.out:
        fileio.write_hypergraph(args.out, H)
        res["out"] = args.out
    else:
        res["hypergraph"] = fileio.hypergraph_to_mapping(H)
    return res


def cmd_gm(args) -> dict:
    P = fileio.read_pointset(args.points)
    H = geomfam.gm_hypergraph(P, _norm(args), args.m, args.tol)
    return _hypergraph_result(args, H)


def cmd_augment_t(args) -> dict:
    H0 = fileio.read_hypergraph(args.input)
    rep = geomfam.augment_chain(H0, args.t, node_budget=args.node_budget)
    Ht = rep.hypergraphs[-1]
    res = {"n": Ht.n, "edges": len(Ht.edges), "chi_chain": list(rep.chi), "non_increasing": rep.non_increasing}
    if args.out:
        fileio.write_hypergraph(args.out, Ht)
        res["out"] = args.out
    if not rep.non_increasing:
        res.update(ok=False, error="chromatic numbers increased along the chain")
        raise VerificationFailed(res)
    return res


def cmd_augment_gons(args) -> dict:
    M = fileio.read_gonset(args.gons)
    if args.s:
        S = fileio.read_gonset(args.s)
    else:
        S = geomfam.GonSet((), M.m + 1, M.d)
    F = fileio.read_pointset(args.points)
    out = geomfam.augment_gons(S, M, F, args.tol)
    res = {"m": out.m, "d": out.d, "gons": len(out)}
    if args.out:
        fileio.write_gonset(args.out, out)
        res["out"] = args.out
    else:
        res["gonset"] = fileio.gonset_to_mapping(out)
    return res


def cmd_witness(args) -> dict:
    M = fileio.read_gonset(args.gons)
    seed = args.seed if args.seed is not None else secrets.randbits(31)
    w = geomfam.witness_search(
        M, args.target_k, args.strategy, args.budget, seed,
        max_points=args.max_points, node_budget=args.node_budget or 10**6, tol=args.tol,
    )
    if w is None:
        res = {"found": False, "seed": seed, "ok": False, "error": "budget exhausted without a witness"}
        raise ResourceError(res["error"], partial=res)
    res = {
        "found": True,
        "seed": seed,
        "source": w.source,
        "points": [list(p) for p in w.points],
        "edges": len(w.hypergraph.edges),
        "certificate": {"infeasible_k": args.target_k - 1, "nodes": w.nodes},
    }
    if args.out:
        fileio.write_pointset(args.out, w.points)
        res["out"] = args.out
        _maybe_manifest(args, [args.gons], [args.out], seed=seed, verdicts={"found": True})
    return res


def _tiling(args) -> tiling.PeriodicColoring:
    pc = tiling.tiling_params(_norm(args), args.d, args.safety, args.forbidden)
    if args.eps is not None or args.m is not None:
        pc = tiling.PeriodicColoring(pc.norm, pc.d, args.eps or pc.eps, args.m or pc.m, pc.forbidden)
    return pc


def cmd_tile(args) -> dict:
    pc = _tiling(args)
    res = {"norm": pc.norm.name, "d": pc.d, "eps": pc.eps, "m": pc.m, "colors": pc.n_colors, "valid": pc.is_valid()}
    if args.svg:
        render.write_svg(args.svg, render.tiling_svg(pc))
        res["svg"] = args.svg
    return res


def cmd_verify_tiling(args) -> dict:
    pc = _tiling(args)
    seed = args.seed if args.seed is not None else secrets.randbits(31)
    rep = tiling.verify_forbids(pc, args.samples, seed, workers=args.threads)
    res = rep.as_dict()
    if rep.violations:
        res.update(ok=False, error=f"{rep.violations} monochromatic pairs at distance {pc.forbidden:g}")
        raise VerificationFailed(res)
    return res


def cmd_congruent(args) -> dict:
    X = fileio.read_pointset(args.a)
    Y = fileio.read_pointset(args.b)
    if args.mode == geomfam.EUCLIDEAN:
        f = geometry.congruent_euclidean(X, Y, args.tol)
    else:
        f = geometry.congruent_translation(X, Y, args.tol)
    return {"congruent": f is not None, "bijection": f}


def cmd_render(args) -> dict:
    if args.input:
        H = fileio.read_hypergraph(args.input)
        phi = fileio.read_coloring(args.coloring) if args.coloring else None
        text = render.hypergraph_svg(H, phi)
    else:
        text = render.tiling_svg(_tiling(args))
    render.write_svg(args.out, text)
    return {"out": args.out, "bytes": len(text.encode())}


# -- parser ------------------------------------------------------------------

def _add_solver(p: argparse.ArgumentParser) -> None:
    p.add_argument("--node-budget", type=int, default=None, help=f"search node cap (default ${chroma.BUDGET_ENV} or 1e9)")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--no-symmetry", action="store_true", help="disable colour symmetry breaking")


def _add_tiling(p: argparse.ArgumentParser) -> None:
    p.add_argument("--norm", default="l2", help="l1, l2, l3, ..., linf")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--eps", type=float)
    p.add_argument("--m", type=int)
    p.add_argument("--safety", type=float, default=tiling.DEFAULT_SAFETY)
    p.add_argument("--forbidden", type=float, default=1.0, help="distance to forbid")


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hypercolor", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        p.set_defaults(fn=fn)
        p.add_argument("--manifest", help="write a run manifest here")
        return p

    p = add("build", cmd_build, help="build a named hypergraph")
    p.add_argument("--name", required=True, help=f"{', '.join(pointsets.NAMES)}, complete(n) or fano")
    p.add_argument("--norm", default="l2")
    p.add_argument("--tol", type=float, default=geometry.DEFAULT_TOL)
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "dimacs"), default="json")

    p = add("chi", cmd_chi, help="exact chromatic number")
    p.add_argument("--input", required=True)
    p.add_argument("--out", help="write the witness coloring here")
    _add_solver(p)

    p = add("kcolor", cmd_kcolor, help="decide k-colourability")
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out")
    _add_solver(p)

    p = add("check", cmd_check, help="check that a coloring is proper")
    p.add_argument("--input", required=True)
    p.add_argument("--coloring", required=True)

    p = add("lift", cmd_lift, help="raise uniformity to --target-m")
    p.add_argument("--input", required=True)
    p.add_argument("--target-m", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--k", type=int, help="number of translates (default: chi of the input)")
    p.add_argument("--verify", action="store_true", help="recompute chi at every stage")
    p.add_argument("--edge-cap", type=int, default=lift.DEFAULT_EDGE_CAP)
    _add_solver(p)

    p = add("instantiate", cmd_instantiate, help="edges congruent to gons of M inside F")
    p.add_argument("--gons", required=True)
    p.add_argument("--points", required=True)
    p.add_argument("--mode", choices=geomfam.MODES, default=geomfam.EUCLIDEAN)
    p.add_argument("--norm", default="l2")
    p.add_argument("--tol", type=float, default=geometry.DEFAULT_TOL)
    p.add_argument("--chi", action="store_true", help="also report the chromatic number")
    p.add_argument("--out")
    _add_solver(p)

    p = add("gm", cmd_gm, help="m-sets containing a unit pair")
    p.add_argument("--points", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--norm", default="l2")
    p.add_argument("--tol", type=float, default=geometry.DEFAULT_TOL)
    p.add_argument("--chi", action="store_true")
    p.add_argument("--out")
    _add_solver(p)

    p = add("augment-t", cmd_augment_t, help="grow every edge by t outside vertices")
    p.add_argument("--input", required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--out")
    _add_solver(p)

    p = add("augment-gons", cmd_augment_gons, help="S_j plus X|{z} for X in M, z in F_j")
    p.add_argument("--gons", required=True, help="M")
    p.add_argument("--points", required=True, help="F_j")
    p.add_argument("--s", help="existing S_j (default empty)")
    p.add_argument("--tol", type=float, default=geometry.DEFAULT_TOL)
    p.add_argument("--out")

    p = add("witness", cmd_witness, help="search for a finite window needing target-k colours")
    p.add_argument("--gons", required=True)
    p.add_argument("--target-k", type=int, required=True)
    p.add_argument("--strategy", choices=geomfam.STRATEGIES, default="library")
    p.add_argument("--budget", type=int, default=50)
    p.add_argument("--seed", type=int)
    p.add_argument("--max-points", type=int, default=40)
    p.add_argument("--tol", type=float, default=geometry.DEFAULT_TOL)
    p.add_argument("--out")
    _add_solver(p)

    p = add("tile", cmd_tile, help="periodic colouring parameters (and SVG)")
    _add_tiling(p)
    p.add_argument("--svg")

    p = add("verify-tiling", cmd_verify_tiling, help="sample unit pairs and count clashes")
    _add_tiling(p)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int)
    p.add_argument("--threads", type=int, default=1)

    p = add("congruent", cmd_congruent, help="test two point sets for congruence")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--mode", choices=geomfam.MODES, default=geomfam.EUCLIDEAN)
    p.add_argument("--tol", type=float, default=geometry.DEFAULT_TOL)

    p = add("render", cmd_render, help="SVG of a planar hypergraph or tiling")
    p.add_argument("--input", help="hypergraph file (omit to draw a tiling)")
    p.add_argument("--coloring")
    p.add_argument("--out", required=True)
    _add_tiling(p)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = make_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    args.argv = argv
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    base = {"command": args.command}
    try:
        res = args.fn(args)
    except VerificationFailed as exc:
        _emit({**base, "ok": False, **exc.result})
        return EXIT_FAILED
    except ConsistencyError as exc:
        _emit({**base, "ok": False, "error": str(exc)})
        return EXIT_FAILED
    except ResourceError as exc:
        extra = exc.partial if isinstance(exc.partial, dict) else {}
        _emit({**base, **extra, "ok": False, "error": str(exc)})
        return EXIT_RESOURCE
    except (InputError, HypercolorError, ValueError) as exc:
        _emit({**base, "ok": False, "error": str(exc)})
        return EXIT_INPUT
    _emit({**base, "ok": True, **res})
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
