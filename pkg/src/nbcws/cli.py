"""Command-line interface.

Exit codes: 0 success, 1 negative verdict, 2 input error, 3 disagreement
between the classical checker and the dense oracle.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from . import __version__
from .clique import Budget, build_clique_graph, search, write_dimacs
from .cws import CWSCode, check_code, classical_rep
from .errors import (
    InvalidSpec,
    NotRealizable,
    OracleDisagreement,
    ResourceLimitError,
    SpecParseError,
)
from .fileio import read_code, read_spec, write_code, write_spec
from .kernels import BACKEND
from .pauli import parse_literal, to_literal
from .stabilizer import StabilizerSpec, canonicalize, validate
from .structure import gcd_pattern_scan, group_extension, scalar_closure

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_DISAGREE = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _sha256(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _valid_spec(path: str) -> StabilizerSpec:
    spec = read_spec(_read(path))
    report = validate(spec)
    if not report.valid:
        raise InputError(f"{path}: invalid stabilizer spec: {report.summary()}")
    return spec


def _vec(s: Sequence[int]) -> str:
    return " ".join(map(str, s))


def _emit(args: argparse.Namespace, payload: dict[str, Any], lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args: argparse.Namespace) -> int:
    spec = read_spec(_read(args.spec))
    rep = validate(spec)
    lines = [f"valid: {'yes' if rep.valid else 'no'}", rep.summary()]
    if rep.noncommuting_pairs:
        i, j = rep.noncommuting_pairs[0]
        lines.append(f"non-commuting generators g{i}, g{j}")
    payload = {
        "valid": rep.valid,
        "commuting": rep.commuting,
        "group_order": rep.group_order,
        "expected_order": rep.expected_order,
        "phase_clean": rep.phase_clean,
        "m_range_ok": rep.m_range_ok,
        "noncommuting_pairs": [list(p) for p in rep.noncommuting_pairs],
    }
    _emit(args, payload, lines)
    return EXIT_OK if rep.valid else EXIT_FAIL


def cmd_syndrome(args: argparse.Namespace) -> int:
    spec = read_spec(_read(args.spec))
    try:
        E = parse_literal(args.error, spec.d, spec.n)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    s = classical_rep(spec, E)
    _emit(args, {"error": to_literal(E), "syndrome": list(s)}, [_vec(s)])
    return EXIT_OK


def cmd_canonicalize(args: argparse.Namespace) -> int:
    spec = _valid_spec(args.spec)
    cf = canonicalize(spec, args.delta)
    text = write_spec(cf.spec)
    if args.out:
        Path(args.out).write_text(text)
    lines = [
        f"canonical_rank {cf.canonical_rank}",
        f"invariant_factors {_vec(cf.invariant_factors)}" if cf.invariant_factors else "invariant_factors",
        f"low_weight_elements {len(cf.low_weight)}",
    ]
    lines += [f"transform {_vec(row)}" for row in cf.transform]
    if not args.out:
        lines.append(text.rstrip("\n"))
    payload = {
        "canonical_rank": cf.canonical_rank,
        "invariant_factors": list(cf.invariant_factors),
        "low_weight_elements": [
            {"operator": str(g.resolved), "exponents": list(g.exponents)} for g in cf.low_weight
        ],
        "transform": [list(r) for r in cf.transform],
        "spec": text,
    }
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    code = read_code(_read(args.code))
    spec = code.spec
    rep = validate(spec)
    if not rep.valid:
        raise InputError(f"invalid stabilizer spec: {rep.summary()}")
    delta = args.delta if args.delta is not None else code.delta
    problems = CWSCode(spec, code.codewords, delta).problems()
    if problems:
        raise InputError("; ".join(problems))
    verdict = check_code(spec, code, delta)
    lines = [f"verdict: {'pass' if verdict.ok else 'fail'} (delta={delta}, K={code.K})"]
    for v in verdict.classical_violations:
        err = f" = Cl({to_literal(v.error)})" if v.error is not None else " (repeated codeword)"
        lines.append(f"classical: c{v.j} - c{v.i} = {_vec(v.difference)}{err}")
    for v in verdict.degeneracy_violations:
        lines.append(
            f"degeneracy: {to_literal(v.error)} (exponents {_vec(v.exponents)}) pairs to {v.value} with c{v.codeword}"
        )
    payload: dict[str, Any] = {
        "delta": delta,
        "K": code.K,
        "verdict": verdict.ok,
        "classical_violations": [
            {"i": v.i, "j": v.j, "difference": list(v.difference), "error": to_literal(v.error) if v.error else None}
            for v in verdict.classical_violations
        ],
        "degeneracy_violations": [
            {"error": to_literal(v.error), "exponents": list(v.exponents), "codeword": v.codeword, "value": v.value}
            for v in verdict.degeneracy_violations
        ],
    }
    status = EXIT_OK if verdict.ok else EXIT_FAIL
    if args.oracle:
        from .oracle import kl_check

        kl = kl_check(spec, code, delta, keep_entries=False)
        lines.append(f"oracle: {kl.summary()}")
        for w in kl.witnesses[:5]:
            lines.append(f"oracle witness: {to_literal(w.error)} entry ({w.i},{w.j}) = {w.value:.6g}")
        payload["oracle"] = {
            "verdict": kl.verdict,
            "degenerate": kl.degenerate,
            "orthonormal": kl.orthonormal,
            "errors_checked": kl.errors_checked,
        }
        if kl.verdict != verdict.ok:
            lines.append("DISAGREEMENT between classical checker and oracle")
            status = EXIT_DISAGREE
    _emit(args, payload, lines)
    return status


def _budget(args: argparse.Namespace) -> Budget:
    nodes = None if args.budget < 0 else args.budget
    return Budget(max_nodes=nodes, max_seconds=args.time_limit)


def _run_search(spec: StabilizerSpec, args: argparse.Namespace):
    oracle = False if args.no_oracle else None
    return search(spec, args.delta, _budget(args), anchor=not args.no_anchor, workers=args.workers, oracle=oracle)


def cmd_search(args: argparse.Namespace) -> int:
    spec = _valid_spec(args.spec)
    res = _run_search(spec, args)
    code = CWSCode(spec, res.code.codewords, args.delta)
    text = write_code(code)
    out = Path(args.out) if args.out else None
    if out:
        out.write_text(text)
    summary = {
        "K": code.K,
        "optimal": res.clique.optimal,
        "nodes_explored": res.clique.nodes_explored,
        "vertices": res.n_vertices,
        "edges": res.n_edges,
        "canonical_rank": res.canonical_code.canonical_rank,
        "oracle": None if res.oracle is None else res.oracle.verdict,
        "code_sha256": hashlib.sha256(text.encode()).hexdigest(),
    }
    manifest = {
        "tool": "nbcws",
        "version": __version__,
        "command": "search",
        "inputs": {"spec": {"path": args.spec, "sha256": _sha256(args.spec)}},
        "parameters": {
            "delta": args.delta,
            "budget_nodes": args.budget,
            "time_limit": args.time_limit,
            "anchor": not args.no_anchor,
            "workers": args.workers,
            "oracle": not args.no_oracle,
        },
        "seed": None,
        "result": summary,
    }
    manifest_path = Path(args.manifest) if args.manifest else (out.with_name(out.name + ".manifest.json") if out else None)
    if manifest_path:
        manifest_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    print(f"wall_time {res.clique.wall_time:.3f}s backend {BACKEND}", file=sys.stderr)
    lines = [f"K {code.K}", f"optimal {'yes' if res.clique.optimal else 'no'}", f"nodes {res.clique.nodes_explored}"]
    if not out:
        lines.append(text.rstrip("\n"))
    _emit(args, {**summary, "wall_time": res.clique.wall_time, "codewords": [list(c) for c in code.codewords]}, lines)
    return EXIT_OK


def cmd_scan_gcd(args: argparse.Namespace) -> int:
    spec = _valid_spec(args.spec)
    hits = gcd_pattern_scan(spec, args.delta)
    lines = [
        f"error {to_literal(w.error)} syndrome {_vec(w.syndrome)} m {w.m_value} vu_gcd {w.vu_gcd}" for w in hits
    ] or ["no witnesses"]
    payload = {
        "witnesses": [
            {"error": to_literal(w.error), "syndrome": list(w.syndrome), "m": w.m_value, "vu_gcd": w.vu_gcd}
            for w in hits
        ]
    }
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_export_graph(args: argparse.Namespace) -> int:
    spec = _valid_spec(args.spec)
    G = build_clique_graph(spec, args.delta)
    comment = f"CWS clique graph d={spec.d} n={spec.n} delta={args.delta} canonical_rank={G.canonical_rank}"
    if args.out:
        with open(args.out, "w") as fh:
            write_dimacs(G.graph, fh, comment)
    else:
        write_dimacs(G.graph, sys.stdout, comment)
    print(f"vertices {G.n_vertices} edges {G.graph.edge_count}", file=sys.stderr)
    return EXIT_OK


def cmd_closure(args: argparse.Namespace) -> int:
    code = read_code(_read(args.code))
    spec = code.spec
    if not validate(spec).valid:
        raise InputError("invalid stabilizer spec")
    delta = args.delta if args.delta is not None else code.delta
    if args.mode == "scalar":
        if code.K != 2:
            raise InputError("scalar closure needs a two-codeword code")
        res = scalar_closure(spec, code, delta)
    else:
        if not args.new:
            raise InputError("--new is required for group mode")
        try:
            new = [int(t) for t in args.new.split()]
        except ValueError:
            raise InputError(f"bad codeword {args.new!r}") from None
        if len(new) != spec.m:
            raise InputError(f"--new needs {spec.m} entries")
        try:
            res = group_extension(spec, code, new, delta)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    lines = [f"closure: {'pass' if res.ok else 'fail'} (K={len(res.code)}, base {'ok' if res.base_ok else 'not ok'})"]
    lines += [f"witness q={w.q} j={w.j} syndrome {_vec(w.syndrome)} = Cl({to_literal(w.error)})" for w in res.witnesses]
    payload = {
        "ok": res.ok,
        "base_ok": res.base_ok,
        "seed_ok": res.seed_ok,
        "codewords": [list(c) for c in res.code],
        "witnesses": [
            {"q": w.q, "j": w.j, "syndrome": list(w.syndrome), "error": to_literal(w.error)} for w in res.witnesses
        ],
    }
    _emit(args, payload, lines)
    return EXIT_OK if res.ok else EXIT_FAIL


def cmd_batch(args: argparse.Namespace) -> int:
    rows = []
    status = EXIT_OK
    for path in args.specs:
        try:
            spec = _valid_spec(path)
            res = _run_search(spec, args)
            rows.append({"spec": path, "K": res.code.K, "optimal": res.clique.optimal, "error": None})
        except (InputError, SpecParseError, InvalidSpec, ResourceLimitError) as exc:
            rows.append({"spec": path, "K": None, "optimal": None, "error": str(exc)})
            status = EXIT_INPUT
    lines = [
        f"{r['spec']} K {r['K']} optimal {'yes' if r['optimal'] else 'no'}" if r["error"] is None else f"{r['spec']} error {r['error']}"
        for r in rows
    ]
    _emit(args, {"runs": rows}, lines)
    return status


# ---------------------------------------------------------------------------
# parser


def _search_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--budget", type=int, default=100_000, help="node limit (-1 for none; default 100000)")
    p.add_argument("--time-limit", type=float, default=None, help="wall-clock limit in seconds")
    p.add_argument("--no-anchor", action="store_true", help="do not fix the zero codeword in the clique")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-oracle", action="store_true", help="skip the dense re-verification")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nbcws", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"nbcws {__version__}")
    parser.add_argument("--json", action="store_true", help="structured JSON output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a stabilizer spec")
    p.add_argument("spec")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("syndrome", help="classical representation of an error")
    p.add_argument("spec")
    p.add_argument("--error", required=True, help="e.g. 'Z1 Z5 X1^2 X5^2' (0-indexed qudits)")
    p.set_defaults(func=cmd_syndrome)

    p = sub.add_parser("canonicalize", help="canonical generating set for a distance")
    p.add_argument("spec")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_canonicalize)

    p = sub.add_parser("verify", help="check a code file")
    p.add_argument("code")
    p.add_argument("--delta", type=int, default=None, help="defaults to the file's delta")
    p.add_argument("--oracle", action="store_true", help="also run the dense Knill-Laflamme check")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="maximum-clique code search on one spec")
    p.add_argument("spec")
    _search_options(p)
    p.add_argument("--out", help="code file to write")
    p.add_argument("--manifest", help="manifest path (default: <out>.manifest.json)")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("scan-gcd", help="GCD pattern witnesses")
    p.add_argument("spec")
    p.add_argument("--delta", type=int, required=True)
    p.set_defaults(func=cmd_scan_gcd)

    p = sub.add_parser("export-graph", help="write the clique graph")
    p.add_argument("spec")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--format", choices=["dimacs"], default="dimacs")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_graph)

    p = sub.add_parser("closure", help="scalar closure or group extension of a code")
    p.add_argument("code")
    p.add_argument("--mode", choices=["scalar", "group"], required=True)
    p.add_argument("--new", help="codeword to adjoin in group mode, e.g. '1 1 1 0 1 1 1'")
    p.add_argument("--delta", type=int, default=None)
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("batch", help="search over several spec files")
    p.add_argument("specs", nargs="+")
    _search_options(p)
    p.set_defaults(func=cmd_batch)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except OracleDisagreement as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DISAGREE
    except (InputError, SpecParseError, InvalidSpec, NotRealizable, ResourceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
