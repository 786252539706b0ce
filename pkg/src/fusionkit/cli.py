"""Command-line interface.

Subcommands:

    gen su2 --level K [-o FILE]            write a built-in model as JSON
    gen cyclic --order N [--q Q] [-o FILE]
    gen named --name ID [-o FILE]
    check FILE                              fusion axioms + modular relations
    modular FILE [--print Y,S,T,c]          modular data summary / matrices
    invariants FILE [--out DIR] [--jobs J]  enumerate modular invariants
    classify ZFILE RINGFILE                 flags and counts for one invariant
    decompose ALGFILE                       simple block profile
    verify-induction CERTFILE               full certificate report

Global flags (per subcommand): --tol EPS (default 1e-9, env FUSIONKIT_TOL),
--seed N, --format text|json|csv.  Exit codes: 0 all checks pass, 1 checks
failed, 2 usage or I/O error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import serialize
from .algebras import decompose_semisimple, validate_based_algebra
from .catalog import ModelSpec, build_model
from .errors import (FusionKitError, NondegeneracyRequired, SchemaError,
                     StructureError, TwistError, VanishingZError)
from .induction import full_report
from .invariants import classify_invariant, search_invariants
from .modular import (check_partial_verlinde, is_nondegenerate,
                      modular_matrices, sl2z_relations, validate_twists)
from .numerics import default_tolerance, scaled_tol
from .rings import validate_fusion_ring


def _fmt_complex(z: complex) -> str:
    return f"{z.real:.12g}{z.imag:+.12g}j"


def _complex_matrix(M: np.ndarray) -> list[list[list[float]]]:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(M, dtype=complex)]


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _write_or_print(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def cmd_gen(args) -> int:
    if args.family == "su2":
        if args.level is None:
            raise SchemaError("gen su2 requires --level")
        spec = ModelSpec("su2", level=args.level)
    elif args.family == "cyclic":
        if args.order is None:
            raise SchemaError("gen cyclic requires --order")
        spec = ModelSpec("cyclic", order=args.order, q=args.q)
    else:
        if args.name is None:
            raise SchemaError("gen named requires --name")
        spec = ModelSpec("named", name=args.name)
    ring, twists = build_model(spec)
    _write_or_print(args.output, serialize.dumps(serialize.ring_to_dict(ring, twists)))
    return 0


def cmd_check(args) -> int:
    ring, twists = serialize.parse_ring(args.file)
    report = validate_fusion_ring(ring)
    failed = not report.ok
    lines = [f"labels: {ring.size}", f"axioms: {'ok' if report.ok else 'VIOLATED'}"]
    lines.extend(f"  {v}" for v in report.violations)
    if twists is not None:
        try:
            validate_twists(ring, twists)
            lines.append("twists: ok")
        except TwistError as exc:
            lines.append(f"twists: VIOLATED ({exc})")
            failed = True
        if not failed:
            try:
                md = modular_matrices(ring, twists, tol=args.tol)
            except VanishingZError:
                lines.append("modular: z = 0, relations skipped")
                md = None
            if md is not None:
                pv = check_partial_verlinde(md, tol=args.tol)
                lines.append(f"partial modular algebra: {pv}")
                failed = failed or not pv.passed
                nd = is_nondegenerate(ring, twists, md=md, tol=args.tol)
                if nd.nondegenerate:
                    sl = sl2z_relations(md, tol=args.tol)
                    lines.append(f"non-degenerate; full modular algebra: {sl}")
                    failed = failed or not sl.passed
                else:
                    lines.append(f"degenerate braiding; witness labels {nd.witnesses}")
    _emit("\n".join(lines))
    return 1 if failed else 0


def cmd_modular(args) -> int:
    ring, twists = serialize.parse_ring(args.file)
    if twists is None:
        raise SchemaError(f"{args.file}: twist data is required for modular data")
    md = modular_matrices(ring, twists, tol=args.tol)
    nd = is_nondegenerate(ring, twists, md=md, tol=args.tol)
    wanted = [p.strip() for p in (args.print or "").split(",") if p.strip()]
    if args.format == "json":
        obj = {
            "labels": list(ring.labels),
            "z": [md.z.real, md.z.imag],
            "central_charge": serialize.format_rational(md.c),
            "global_index": md.w,
            "nondegenerate": nd.nondegenerate,
            "dimensions": [float(x) for x in md.d],
        }
        for name in wanted:
            if name in ("Y", "S", "T"):
                obj[name] = _complex_matrix(getattr(md, name))
            elif name == "c":
                pass  # always present as central_charge
            else:
                raise SchemaError(f"unknown --print item {name!r}")
        _emit(serialize.dumps(obj))
        return 0
    lines = [
        f"labels: {ring.size}",
        f"z = {_fmt_complex(md.z)}  |z|^2 = {abs(md.z)**2:.12g}",
        f"central charge c = {md.c} (mod 8)",
        f"global index w = {md.w:.12g}",
        f"braiding: {'non-degenerate' if nd.nondegenerate else f'degenerate, witnesses {nd.witnesses}'}",
    ]
    for name in wanted:
        if name == "c":
            continue
        if name not in ("Y", "S", "T"):
            raise SchemaError(f"unknown --print item {name!r}")
        M = getattr(md, name)
        lines.append(f"{name}:")
        lines.extend("  " + "  ".join(_fmt_complex(z) for z in row) for row in M)
    _emit("\n".join(lines))
    return 0


def cmd_invariants(args) -> int:
    ring, twists = serialize.parse_ring(args.file)
    if twists is None:
        raise SchemaError(f"{args.file}: twist data is required for the invariant search")
    md = modular_matrices(ring, twists, tol=args.tol)
    found = search_invariants(md, tol=args.tol, jobs=args.jobs)
    dicts = [serialize.invariant_to_dict(mm, labels=list(ring.labels)) for mm in found]
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        for i, obj in enumerate(dicts):
            (outdir / f"invariant_{i:03d}.json").write_text(serialize.dumps(obj),
                                                            encoding="utf-8")
    if args.format == "json":
        _emit(serialize.dumps({"count": len(found), "invariants": dicts}))
    elif args.format == "csv":
        blocks = [serialize.z_matrix_to_csv(mm.Z, list(ring.labels)) for mm in found]
        sys.stdout.write("\n".join(blocks))
    else:
        lines = [f"{len(found)} modular invariant(s)"]
        for i, mm in enumerate(found):
            tr_z, tr_zzt = mm.counts
            tags = [t for t, on in (("identity", mm.is_identity),
                                    ("permutation", mm.is_permutation),
                                    ("symmetric", mm.is_symmetric)) if on]
            tags.append(f"type_one={mm.type_one}")
            lines.append(f"[{i}] trZ={tr_z} trZZt={tr_zzt} "
                         f"|SZ-ZS|={mm.residual_s:.2e} {' '.join(tags)}")
            lines.extend("    " + " ".join(str(int(v)) for v in row) for row in mm.Z)
        _emit("\n".join(lines))
    return 0


def cmd_classify(args) -> int:
    Z = serialize.z_matrix_from_dict(serialize.load_json(args.zfile), where=str(args.zfile))
    ring, twists = serialize.parse_ring(args.ringfile)
    if twists is None:
        raise SchemaError(f"{args.ringfile}: twist data is required")
    md = modular_matrices(ring, twists, tol=args.tol)
    if Z.shape[0] != ring.size:
        raise SchemaError(f"invariant size {Z.shape[0]} does not match ring size {ring.size}")
    mm = classify_invariant(Z, md, tol=args.tol)
    obj = serialize.invariant_to_dict(mm, labels=list(ring.labels))
    if args.format == "json":
        _emit(serialize.dumps(obj))
    elif args.format == "csv":
        sys.stdout.write(serialize.z_matrix_to_csv(Z, list(ring.labels)))
    else:
        tr_z, tr_zzt = mm.counts
        _emit("\n".join([
            f"is_identity: {mm.is_identity}",
            f"is_permutation: {mm.is_permutation}",
            f"is_symmetric: {mm.is_symmetric}",
            f"type_one: {mm.type_one}",
            f"counts: trZ={tr_z} trZZt={tr_zzt}",
            f"residuals: |SZ-ZS|={mm.residual_s:.3e} |TZ-ZT|={mm.residual_t:.3e}",
        ]))
    limit = scaled_tol(args.tol, ring.size)
    return 0 if mm.residual_s <= limit and mm.residual_t <= limit else 1


def cmd_decompose(args) -> int:
    alg = serialize.algebra_from_dict(serialize.load_json(args.file), where=str(args.file))
    report = validate_based_algebra(alg)
    if not report.ok:
        _emit(f"algebra axioms violated:\n{report}")
        return 1
    profile = decompose_semisimple(alg, seed=args.seed)
    if args.format == "json":
        _emit(serialize.dumps(serialize.profile_to_dict(profile)))
    else:
        _emit(f"blocks: {' '.join(str(s) for s in profile.sizes)} "
              f"(dimension {profile.dimension})")
    return 0


def cmd_verify_induction(args) -> int:
    cert = serialize.certificate_from_dict(serialize.load_json(args.file))
    report = full_report(cert, tol=args.tol)
    if args.format == "json":
        obj = {"passed": report.passed,
               "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail}
                          for c in report.checks]}
        _emit(serialize.dumps(obj))
    else:
        _emit(str(report))
    return 0 if report.passed else 1


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None,
                        help="global tolerance (default 1e-9 or FUSIONKIT_TOL)")
    common.add_argument("--seed", type=int, default=0, help="randomized-algorithm seed")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")

    p = argparse.ArgumentParser(prog="fusionkit", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="write a built-in model")
    g.add_argument("family", choices=("su2", "cyclic", "named"))
    g.add_argument("--level", type=int, help="su2 level k >= 1")
    g.add_argument("--order", type=int, help="cyclic group order n >= 1")
    g.add_argument("--q", type=int, default=0, help="cyclic quadratic parameter")
    g.add_argument("--name", help="named model id (trivial|fibonacci|ising)")
    g.add_argument("-o", "--output", help="output file (default stdout)")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", parents=[common], help="fusion axioms + modular relations")
    c.add_argument("file")
    c.set_defaults(func=cmd_check)

    m = sub.add_parser("modular", parents=[common], help="modular data for a ring file")
    m.add_argument("file")
    m.add_argument("--print", dest="print", default="",
                   help="comma list of blocks to print: Y,S,T,c")
    m.set_defaults(func=cmd_modular)

    i = sub.add_parser("invariants", parents=[common],
                       help="enumerate modular invariant mass matrices")
    i.add_argument("file")
    i.add_argument("--out", help="directory for per-invariant JSON files")
    i.add_argument("--jobs", type=int, default=1, help="parallel enumeration workers")
    i.set_defaults(func=cmd_invariants)

    cl = sub.add_parser("classify", parents=[common], help="classify one invariant")
    cl.add_argument("zfile")
    cl.add_argument("ringfile")
    cl.set_defaults(func=cmd_classify)

    d = sub.add_parser("decompose", parents=[common],
                       help="simple block profile of a based algebra")
    d.add_argument("file")
    d.set_defaults(func=cmd_decompose)

    v = sub.add_parser("verify-induction", parents=[common],
                       help="verify an induction certificate")
    v.add_argument("file")
    v.set_defaults(func=cmd_verify_induction)
    return p


def main(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return int(code) if isinstance(code, int) else 2
    if args.tol is None:
        try:
            args.tol = default_tolerance()
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    try:
        return args.func(args)
    except (SchemaError, StructureError, TwistError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (VanishingZError, NondegeneracyRequired) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    except FusionKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
