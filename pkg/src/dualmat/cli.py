"""Command-line front end.

Exit codes: 0 success or affirmative verdict, 1 negative verdict,
2 inconclusive, 3 input error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import corpus
from .complex import ComplexError, complex_to_dict, homology_check, link_graph, local_connectivity_profile, parse_complex
from .embedding import (
    EMBEDDABLE,
    INCONCLUSIVE,
    NOT_EMBEDDABLE,
    DualGraph,
    RotationError,
    RotationSystem,
    UnsupportedComplex,
    decide_embeddability,
    decide_whitney,
    validate_certificate,
)
from .matroid import Matroid, MatroidSizeError, connectivity, dual_matroid, is_local, link_dual_matroid
from .obstructions import MAX_N, generate_An, verify_An_facts
from .realize import realize_graph
from .regular_rep import IntegerMatrix, is_regular_representation, is_totally_unimodular
from .splitting import edge_split_complex, lazy_split_complex, split_complex, vertical_split

EXIT_OK, EXIT_NEGATIVE, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 3
STATUS_EXIT = {EMBEDDABLE: EXIT_OK, NOT_EMBEDDABLE: EXIT_NEGATIVE, INCONCLUSIVE: EXIT_INCONCLUSIVE}


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


# -- output ---------------------------------------------------------------------------

def dumps(value) -> str:
    """Canonical JSON: sorted keys, stable layout."""
    return json.dumps(value, sort_keys=True, indent=1)


def write_atomic(path: Path, text: str | bytes) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    data = text.encode() if isinstance(text, str) else text
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
    return path


def _emit(value, out: str | None = None) -> None:
    text = dumps(value) + "\n"
    if out:
        write_atomic(Path(out), text)
    else:
        sys.stdout.write(text)


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed syntax: {exc}") from exc


def _load_complex(path: str):
    try:
        return parse_complex(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


# -- generators -----------------------------------------------------------------------

GENERATORS = ("an", "grid", "cone-k5", "cone", "tetrahedron", "octahedron", "appendix-a", "torus", "two-discs")


def _dims(text: str) -> tuple[int, int, int]:
    try:
        dims = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"bad --dims {text!r}") from None
    if len(dims) != 3:
        raise InputError("--dims needs three comma-separated integers")
    return dims


def generate(name: str, args) -> object:
    if name == "an":
        if args.n is None:
            raise InputError("gen an needs --n")
        return generate_An(args.n, args.mode)
    if name == "grid":
        g = corpus.grid(*_dims(args.dims))
        if args.pair:
            parts = args.pair.split(",")
            if len(parts) != 2 or any(p not in g._edge for p in parts):
                raise InputError(f"--pair must name two grid edges, got {args.pair!r}")
            g = corpus.identify_edge_pair(g, *parts)
        return g
    if name in ("cone-k5", "cone"):
        return corpus.cone_over_complete_graph(5 if name == "cone-k5" else args.k)
    table = {
        "tetrahedron": corpus.tetrahedron,
        "octahedron": corpus.octahedron,
        "appendix-a": corpus.lazy_split_example,
        "torus": corpus.torus,
        "two-discs": corpus.two_discs_at_edge,
    }
    return table[name]()


def manifest(c) -> dict:
    return {
        "vertices": len(c.vertices),
        "edges": len(c.edges),
        "faces": len(c.faces),
        "simplicial": c.simplicial_flag,
    }


# -- subcommands ----------------------------------------------------------------------

def cmd_dual_matroid(args) -> int:
    c = _load_complex(args.file)
    _emit(dual_matroid(c, args.field).to_dict())
    return EXIT_OK


def cmd_link(args) -> int:
    c = _load_complex(args.file)
    lg = link_graph(c, args.vertex)
    m = link_dual_matroid(c, args.vertex)
    out = {
        "vertex": lg.owner,
        "nodes": list(lg.nodes),
        "links": [{"corner": list(k), "ends": [a, b]} for k, a, b in lg.links],
        "matroid": m.to_dict(),
    }
    try:
        out["connectivity"] = connectivity(m)
    except MatroidSizeError as exc:
        out["connectivity"] = {"skipped": str(exc)}
    _emit(out)
    if args.report:
        from .plotting import plot_link_graph
        plot_link_graph(out, Path(args.report) / f"link_{args.vertex}.png")
    return EXIT_OK


def _parse_order(text: str) -> list[tuple[str, str]]:
    order = []
    for item in filter(None, (x.strip() for x in text.split(","))):
        if "@" not in item:
            raise InputError(f"lazy order entries look like edge@vertex, got {item!r}")
        e, v = item.rsplit("@", 1)
        order.append((e, v))
    return order


def cmd_split(args) -> int:
    c = _load_complex(args.file)
    if args.vertical:
        res = vertical_split(c)
    elif args.edge:
        import random
        res = edge_split_complex(c, random.Random(args.seed) if args.seed is not None else None)
    elif args.lazy is not None:
        res = lazy_split_complex(c, _parse_order(args.lazy))
    else:
        res = split_complex(c)
    out = res.to_dict()
    out["complex"] = complex_to_dict(res.complex)
    out["counts"] = manifest(res.complex)
    _emit(out, args.output)
    return EXIT_OK


def cmd_check(args) -> int:
    c = _load_complex(args.file)
    if args.what == "local":
        out = is_local(c)
        ok = out["local"]
    elif args.what == "nullhomologous":
        out = homology_check(c)
        ok = out["nullhomologous"]
    elif args.what == "g3c":
        out = connectivity(dual_matroid(c))
        ok = out["globally_3connected"]
    else:
        out = local_connectivity_profile(c)
        ok = out["locally_connected"]
    out = {"check": args.what, "result": ok, **out}
    _emit(out)
    return EXIT_OK if ok else EXIT_NEGATIVE


def _write_certificate(verdict, out_dir: Path | None, report_dir: Path | None) -> dict:
    paths = {}
    if out_dir is not None:
        if verdict.rotation is not None:
            paths["rotation"] = str(write_atomic(out_dir / "rotation.json", dumps(verdict.rotation.to_dict()) + "\n"))
        if verdict.dual_graph is not None:
            paths["dual_graph"] = str(write_atomic(out_dir / "dual_graph.json", dumps(verdict.dual_graph.to_dict()) + "\n"))
        if verdict.witness is not None:
            paths["witness"] = str(write_atomic(out_dir / "witness.json", dumps(verdict.witness) + "\n"))
    if report_dir is not None:
        write_atomic(report_dir / "verdict.json", dumps(verdict.to_dict()) + "\n")
        if verdict.dual_graph is not None:
            from .plotting import plot_dual_graph
            p = plot_dual_graph(verdict.dual_graph.to_dict(), report_dir / "dual_graph.png",
                                f"dual graph ({verdict.status})")
            paths["figure"] = str(p)
    return paths


def cmd_embed(args) -> int:
    c = _load_complex(args.file)
    decide = decide_whitney if args.whitney else decide_embeddability
    verdict = decide(c, simply_connected_asserted=args.assert_simply_connected)
    out_dir = Path(args.out) if args.out else None
    report_dir = Path(args.report) if args.report else None
    out = verdict.to_dict()
    paths = _write_certificate(verdict, out_dir, report_dir)
    if paths:
        out["certificate_paths"] = paths
    _emit(out)
    return STATUS_EXIT[verdict.status]


def cmd_validate(args) -> int:
    c = _load_complex(args.file)
    try:
        rot = RotationSystem.from_dict(_read_json(args.rotation))
        dual = DualGraph.from_dict(_read_json(args.dual_graph)) if args.dual_graph else None
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed certificate: {exc}") from exc
    out = validate_certificate(c, rot, dual)
    _emit(out)
    return EXIT_OK if out["valid"] else EXIT_NEGATIVE


def cmd_gen(args) -> int:
    c = generate(args.name, args)
    if args.output:
        write_atomic(Path(args.output), dumps(complex_to_dict(c)) + "\n")
        _emit({"generator": args.name, "file": args.output, **manifest(c)})
    else:
        _emit(complex_to_dict(c))
    return EXIT_OK


def cmd_verify(args) -> int:
    report = verify_An_facts(args.n)
    if args.report:
        from .plotting import plot_fact_checks
        d = Path(args.report)
        write_atomic(d / f"an_facts_n{args.n}.json", dumps(report) + "\n")
        plot_fact_checks(report, d / f"an_facts_n{args.n}.png")
    _emit(report)
    return EXIT_OK if report["all_pass"] else EXIT_NEGATIVE


def cmd_regular_rep(args) -> int:
    try:
        a = IntegerMatrix.from_dict(_read_json(args.matrix))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed matrix JSON: {exc}") from exc
    rep = is_regular_representation(a)
    out = {"regular": rep["regular"], "failure": rep["failure"]}
    if rep["matroid"] is not None:
        out["matroid"] = rep["matroid"].to_dict()
    if rep["regular"]:
        out["circuit_vectors"] = rep["circuit_vectors"]
        out["primes_checked"] = rep["primes_checked"]
    try:
        out["totally_unimodular"] = is_totally_unimodular(a)
    except MatroidSizeError as exc:
        out["totally_unimodular"] = None
        out["tu_skipped"] = str(exc)
    _emit(out)
    return EXIT_OK if rep["regular"] else EXIT_NEGATIVE


def cmd_realize(args) -> int:
    try:
        m = Matroid.from_dict(_read_json(args.matroid))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed matroid JSON: {exc}") from exc
    found = realize_graph(m, "all" if args.all else "first")
    _emit({"graphic": bool(found), "realizations": [g.to_dict() for g in found]})
    return EXIT_OK if found else EXIT_NEGATIVE


# -- the edge-pair scan -----------------------------------------------------------------

def scan_pair(dims: tuple[int, int, int], e1: str, e2: str) -> dict:
    base = corpus.grid(*dims)
    c = corpus.identify_edge_pair(base, e1, e2)
    start = time.perf_counter()
    hat = split_complex(c).complex
    # the split undid the identification exactly, so the result is the contractible grid again
    undone = manifest(hat)["vertices"] == len(base.vertices) and len(hat.edges) == len(base.edges)
    try:
        v = decide_embeddability(c, simply_connected_asserted=undone)
        row = {"status": v.status, "reason": v.reason}
        if v.status == NOT_EMBEDDABLE and v.witness is not None:
            row["witness"] = v.witness
    except (UnsupportedComplex, MatroidSizeError, RotationError) as exc:
        row = {"status": INCONCLUSIVE, "reason": f"{type(exc).__name__}: {exc}"}
    row.update({"pair": [e1, e2], "split_undoes_identification": undone,
                "seconds": round(time.perf_counter() - start, 3)})
    return row


def _scan_pair_star(job):
    return scan_pair(*job)


def run_scan(dims, jobs: int = 1, limit: int | None = None) -> dict:
    base = corpus.grid(*dims)
    base_verdict = decide_embeddability(base, simply_connected_asserted=True)
    pairs = corpus.grid_edge_pairs(base)
    if limit is not None:
        pairs = pairs[:limit]
    work = [(dims, e1, e2) for e1, e2 in pairs]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            rows = list(pool.map(_scan_pair_star, work, chunksize=4))
    else:
        rows = [_scan_pair_star(w) for w in work]
    counts = {s: sum(r["status"] == s for r in rows) for s in (EMBEDDABLE, NOT_EMBEDDABLE, INCONCLUSIVE)}
    return {
        "dims": list(dims),
        "base_status": base_verdict.status,
        "pairs_scanned": len(rows),
        "counts": counts,
        "not_embeddable_pairs": [r["pair"] for r in rows if r["status"] == NOT_EMBEDDABLE],
        "rows": rows,
    }


def cmd_scan(args) -> int:
    dims = _dims(args.dims)
    report = run_scan(dims, args.jobs, args.limit)
    if args.report:
        from .plotting import plot_scan
        d = Path(args.report)
        write_atomic(d / "scan.json", dumps(report) + "\n")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["edge1", "edge2", "status", "reason", "split_undoes_identification", "seconds"])
        for r in report["rows"]:
            w.writerow([*r["pair"], r["status"], r["reason"], r["split_undoes_identification"], r["seconds"]])
        write_atomic(d / "scan.csv", buf.getvalue())
        plot_scan(report["rows"], d / "scan.png", f"edge-pair identifications of the {'x'.join(map(str, dims))} grid")
    summary = {k: v for k, v in report.items() if k != "rows"}
    _emit(summary)
    return EXIT_OK if report["base_status"] == EMBEDDABLE and report["not_embeddable_pairs"] else EXIT_NEGATIVE


# -- parser -------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dualmat", description="Dual matroids of 2-complexes and embeddability in 3-space.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("dual-matroid", help="dual matroid of a complex")
    s.add_argument("file")
    s.add_argument("--field", type=int, default=3, help="3 (default), another prime, or 0 for Q")
    s.set_defaults(func=cmd_dual_matroid)

    s = sub.add_parser("link", help="link graph and its dual matroid at a vertex")
    s.add_argument("file")
    s.add_argument("--vertex", required=True)
    s.add_argument("--report", metavar="DIR")
    s.set_defaults(func=cmd_link)

    s = sub.add_parser("split", help="split complexes")
    s.add_argument("file")
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--vertical", action="store_true")
    mode.add_argument("--edge", action="store_true")
    mode.add_argument("--full", action="store_true", help="edge splits then vertical splits (default)")
    mode.add_argument("--lazy", metavar="ORDER", help='comma list of edge@vertex, may be ""')
    s.add_argument("--seed", type=int, help="shuffle the edge order (edge splitting)")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_split)

    s = sub.add_parser("check", help="structural checks")
    s.add_argument("file")
    s.add_argument("--what", required=True, choices=["local", "nullhomologous", "g3c", "locally-connected"])
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("embed", help="decide embeddability in 3-space")
    s.add_argument("file")
    s.add_argument("--assert-simply-connected", action="store_true")
    s.add_argument("--whitney", action="store_true", help="only the graphic-matroid test on the complex itself")
    s.add_argument("--out", metavar="DIR", help="write rotation/dual graph/witness JSON here")
    s.add_argument("--report", metavar="DIR", help="write the verdict and a figure here")
    s.set_defaults(func=cmd_embed)

    s = sub.add_parser("validate", help="re-check a certificate from its files")
    s.add_argument("file")
    s.add_argument("--rotation", required=True)
    s.add_argument("--dual-graph")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("gen", help="corpus generators")
    s.add_argument("name", choices=GENERATORS)
    s.add_argument("--n", type=int)
    s.add_argument("--mode", choices=corpus.AN_MODES, default="adjusted")
    s.add_argument("--dims", default="4,2,1")
    s.add_argument("--pair", help="grid only: two edge ids to identify, e.g. z110,z310")
    s.add_argument("--k", type=int, default=5, help="cone over K_k")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("verify", help="machine-check the obstruction family")
    s.add_argument("family", choices=["an"])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--report", metavar="DIR")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("regular-rep", help="regular representation and total unimodularity")
    s.add_argument("matrix")
    s.set_defaults(func=cmd_regular_rep)

    s = sub.add_parser("realize", help="graph realizations of a matroid")
    s.add_argument("matroid")
    s.add_argument("--all", action="store_true")
    s.set_defaults(func=cmd_realize)

    s = sub.add_parser("scan", help="identify pairs of parallel grid edges and decide each")
    s.add_argument("--dims", default="4,2,1")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--limit", type=int, help="scan only the first pairs")
    s.add_argument("--report", metavar="DIR")
    s.set_defaults(func=cmd_scan)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "n", None) is not None and args.command == "verify" and not 3 <= args.n <= MAX_N:
        print(f"dualmat: error: --n must lie in 3..{MAX_N}", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (InputError, ComplexError, RotationError) as exc:
        print(f"dualmat: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except MatroidSizeError as exc:
        print(f"dualmat: size guard: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except ValueError as exc:
        print(f"dualmat: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
