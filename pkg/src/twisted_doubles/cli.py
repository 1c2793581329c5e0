"""Command-line front end.

Subcommands: validate, tga, double, simples, dualpair, oracle.  Inputs are
the line-oriented files documented in io.py; output is one canonical JSON
report on stdout (and optionally a file via --json).

Exit codes: 0 success, 1 validation failure, 2 parse or cross-reference
error, 3 computation error.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import io as tio
from .cocycles import alpha_regular_classes, validate_cocycle
from .double import (
    GeneralizedDouble,
    decompose_blocks,
    double_center_basis,
    stabilizer_subalgebra_iso,
)
from .dual_pair import NotProjectiveError, build_set_cocycle, double_action, dual_pair_decompose
from .modules import IllConditionedError, classify_double_simples, classify_simples
from .monomial import associativity_witness
from .oracles import (
    oracle_associativity,
    oracle_center_dim,
    oracle_regular_class_count,
    oracle_simple_count,
)
from .twisted_algebra import TwistedGroupAlgebra, center_basis, is_semisimple

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_PARSE = 2
EXIT_COMPUTE = 3


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="twisted-doubles",
        description="Twisted group algebras, generalized doubles and dual pairs.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp, family=False):
        sp.add_argument("--group", required=True, help="group table file")
        sp.add_argument("--gset", help="right G-set file")
        if family:
            sp.add_argument("--family", required=True, help="stable family file")
        else:
            sp.add_argument("--cocycle", required=True, help="cocycle file")
        sp.add_argument("--tolerance", type=float, default=1e-9)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--json", help="also write the report to this path")
        sp.add_argument("--timing", action="store_true", help="include wall time (breaks byte determinism)")

    add_common(sub.add_parser("validate", help="check the cocycle axioms exhaustively"))
    add_common(sub.add_parser("tga", help="twisted group algebra report"))
    add_common(sub.add_parser("double", help="generalized double report"))
    add_common(sub.add_parser("simples", help="classify simple modules"))
    add_common(sub.add_parser("dualpair", help="dual-pair decomposition report"), family=True)
    orc = sub.add_parser("oracle", help="independent brute-force cross-checks")
    orc.add_argument("target", choices=["center", "associativity", "regular-classes", "simple-count"])
    add_common(orc)
    return p


def _load(args, family=False) -> tio.Workspace:
    return tio.Workspace.load(
        group=args.group,
        gset=args.gset,
        cocycle=None if family else args.cocycle,
        family=args.family if family else None,
    )


def _emit(args, report: tio.Report, started: float) -> None:
    if args.timing:
        report.timing_ms = (time.perf_counter() - started) * 1000.0
    text = report.to_json()
    print(text)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(text + "\n")


def _scalar_or_set(ws: tio.Workspace):
    if ws.set_cocycle is not None:
        return ws.set_cocycle
    if ws.cocycle is not None:
        return ws.cocycle
    raise tio.CrossRefError("no cocycle loaded")


def cmd_validate(args) -> int:
    started = time.perf_counter()
    ws = _load(args)
    alpha = _scalar_or_set(ws)
    report_obj = validate_cocycle(alpha)
    results = {"valid": report_obj.ok}
    if not report_obj.ok:
        results["violation"] = {"kind": report_obj.kind, "where": list(report_obj.where or ())}
    report = tio.Report(
        command="validate", inputs=ws.digests, results=results, seed=args.seed, backend="exact"
    )
    _emit(args, report, started)
    return EXIT_OK if report_obj.ok else EXIT_INVALID


def cmd_tga(args) -> int:
    started = time.perf_counter()
    ws = _load(args)
    if ws.cocycle is None:
        raise tio.CrossRefError("tga needs a scalar cocycle")
    check = validate_cocycle(ws.cocycle)
    if not check.ok:
        raise tio.CrossRefError(f"invalid cocycle: {check.describe()}")
    A = TwistedGroupAlgebra(ws.group, ws.cocycle)
    zs = center_basis(A)
    rep, _ = classify_simples(A, tolerance=args.tolerance, seed=args.seed)
    results = {
        "dim": A.dim,
        "regular_class_count": len(alpha_regular_classes(ws.cocycle)),
        "center_dim": len(zs),
        "semisimple": is_semisimple(A),
        "simple_dims": list(rep.blocks[0].local_dims),
    }
    report = tio.Report(
        command="tga",
        inputs=ws.digests,
        results=results,
        seed=args.seed,
        backend="exact+numeric",
        tolerance=args.tolerance,
    )
    _emit(args, report, started)
    return EXIT_OK


def cmd_double(args) -> int:
    started = time.perf_counter()
    ws = _load(args)
    if ws.set_cocycle is None:
        raise tio.CrossRefError("double needs a set cocycle and a G-set")
    check = validate_cocycle(ws.set_cocycle)
    if not check.ok:
        raise tio.CrossRefError(f"invalid cocycle: {check.describe()}")
    D = GeneralizedDouble(ws.group, ws.gset, ws.set_cocycle)
    witness = associativity_witness(D)
    if witness is not None:
        raise tio.CrossRefError(f"double product is not associative at {witness}")
    center = double_center_basis(D)
    srep, _ = classify_double_simples(D, tolerance=args.tolerance, seed=args.seed)
    orbits = []
    for block, simples in zip(decompose_blocks(D).orbits, srep.blocks):
        orbits.append(
            {
                "rep": block.representative,
                "stabilizer_order": len(block.stabilizer),
                "block_dim": len(block.basis_indices),
                "center_dim": len(
                    alpha_regular_classes(
                        stabilizer_subalgebra_iso(D, block.representative).algebra.cocycle
                    )
                ),
                "simple_dims": list(simples.induced_dims),
            }
        )
    results = {
        "dim": D.dim,
        "orbits": orbits,
        "total_center_dim": len(center.elements),
        "zlt_path": center.path,
    }
    report = tio.Report(
        command="double",
        inputs=ws.digests,
        results=results,
        seed=args.seed,
        backend="exact+numeric",
        tolerance=args.tolerance,
        warnings=list(center.warnings),
    )
    _emit(args, report, started)
    return EXIT_OK


def cmd_simples(args) -> int:
    started = time.perf_counter()
    ws = _load(args)
    if ws.set_cocycle is not None:
        D = GeneralizedDouble(ws.group, ws.gset, ws.set_cocycle)
        rep, _ = classify_double_simples(D, tolerance=args.tolerance, seed=args.seed)
    elif ws.cocycle is not None:
        A = TwistedGroupAlgebra(ws.group, ws.cocycle)
        rep, _ = classify_simples(A, tolerance=args.tolerance, seed=args.seed)
    else:
        raise tio.CrossRefError("no cocycle loaded")
    results = {
        "algebra_dim": rep.algebra_dim,
        "blocks": [
            {
                "orbit_rep": b.orbit_representative,
                "orbit_size": b.orbit_size,
                "stabilizer_order": b.stabilizer_order,
                "local_dims": list(b.local_dims),
                "induced_dims": list(b.induced_dims),
            }
            for b in rep.blocks
        ],
        "square_sum": rep.square_sum,
        "accounting_ok": rep.accounting_ok,
    }
    report = tio.Report(
        command="simples",
        inputs=ws.digests,
        results=results,
        seed=args.seed,
        backend="numeric",
        tolerance=args.tolerance,
    )
    _emit(args, report, started)
    return EXIT_OK


def cmd_dualpair(args) -> int:
    started = time.perf_counter()
    ws = _load(args, family=True)
    F = ws.family
    sc = build_set_cocycle(F, tolerance=args.tolerance)
    D = GeneralizedDouble(F.group, F.gset, sc)
    rep = dual_pair_decompose(F, D, tolerance=args.tolerance, seed=args.seed)
    results = {
        "total_dim": rep.total_dim,
        "entries": [
            {
                "orbit_rep": e.orbit_representative,
                "simple_index": e.simple_index,
                "simple_dim": e.simple_dim,
                "multiplicity_dim": e.multiplicity_dim,
                "commutant_irreducible": e.commutant_irreducible,
                "multiplicity_by_level": list(e.multiplicity_by_level),
            }
            for e in rep.entries
        ],
        "pairwise_inequivalent": [list(row) for row in rep.pairwise_inequivalent],
        "accounting_ok": rep.accounting_ok,
        "commutant_dim": rep.commutant_dim,
        "commutant_dim_matches": rep.commutant_dim_matches,
        "absent_simples": list(rep.absent),
        "cocycle_conductor": sc.n,
    }
    report = tio.Report(
        command="dualpair",
        inputs=ws.digests,
        results=results,
        seed=args.seed,
        backend=F.backend,
        tolerance=args.tolerance,
        warnings=list(rep.warnings),
    )
    _emit(args, report, started)
    return EXIT_OK


def cmd_oracle(args) -> int:
    started = time.perf_counter()
    ws = _load(args)
    alpha = _scalar_or_set(ws)
    if ws.set_cocycle is not None:
        kind, exps, gset = "double", ws.set_cocycle.exps, ws.gset
        conductor = ws.set_cocycle.n
    else:
        kind, exps, gset = "tga", ws.cocycle.exps, None
        conductor = ws.cocycle.n
    results: dict = {"target": args.target, "kind": kind}
    if args.target == "associativity":
        witness = oracle_associativity(kind, ws.group, conductor, exps, gset)
        results["associative"] = witness is None
        if witness is not None:
            results["witness"] = list(witness)
    elif args.target == "center":
        results["center_dim"] = oracle_center_dim(kind, ws.group, conductor, exps, gset)
    elif args.target == "regular-classes":
        if kind != "tga":
            raise tio.CrossRefError("regular-classes oracle needs a scalar cocycle")
        results["regular_class_count"] = oracle_regular_class_count(ws.group, conductor, exps)
    elif args.target == "simple-count":
        results["simple_count"] = oracle_simple_count(kind, ws.group, conductor, exps, gset)
    report = tio.Report(
        command="oracle",
        inputs=ws.digests,
        results=results,
        seed=args.seed,
        backend="numeric",
        tolerance=args.tolerance,
    )
    _emit(args, report, started)
    return EXIT_OK


_HANDLERS = {
    "validate": cmd_validate,
    "tga": cmd_tga,
    "double": cmd_double,
    "simples": cmd_simples,
    "dualpair": cmd_dualpair,
    "oracle": cmd_oracle,
}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (tio.ParseError, tio.CrossRefError, FileNotFoundError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARSE
    except (IllConditionedError, NotProjectiveError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
