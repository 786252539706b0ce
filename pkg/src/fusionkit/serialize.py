"""JSON file formats and CSV export.

Twist exponents are serialized as exact rational strings ("0", "3/16"), never
floats, so T-sparsity decisions survive a round trip.  All writers emit a
canonical form (sorted keys where the data is a set, fixed field order,
two-space indent, trailing newline) so serialize . parse is the identity on
bytes as well as on values.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np

from .algebras import BasedAlgebra, BlockProfile
from .errors import SchemaError, StructureError
from .induction import InductionCertificate
from .invariants import MassMatrix, invariant_counts
from .modular import TwistData
from .rings import FusionRing


# ---------------------------------------------------------------- rationals

def format_rational(x: Fraction) -> str:
    return str(x)  # "0", "1/2", "3/16"


def parse_rational(text: str, where: str) -> Fraction:
    if not isinstance(text, str):
        raise SchemaError(f"{where}: twist must be a rational string, got {text!r}")
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise SchemaError(f"{where}: {text!r} is not a rational p/q") from None
    if not 0 <= value < 1:
        raise SchemaError(f"{where}: twist {text!r} must lie in [0, 1)")
    if format_rational(value) != text.strip():
        raise SchemaError(f"{where}: twist {text!r} is not in lowest terms")
    return value


# -------------------------------------------------------------------- rings

def ring_to_dict(ring: FusionRing, twists: TwistData | None = None) -> dict:
    obj: dict[str, Any] = {
        "labels": list(ring.labels),
        "unit": ring.unit,
        "dual": list(ring.dual),
        "fusion": [[a, b, c, m] for (a, b, c, m) in ring.entries()],
    }
    if twists is not None:
        obj["twists"] = [format_rational(h) for h in twists.h]
    return obj


def ring_from_dict(obj: Any, where: str = "ring") -> tuple[FusionRing, TwistData | None]:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected a JSON object")
    for key in ("labels", "unit", "dual", "fusion"):
        if key not in obj:
            raise SchemaError(f"{where}: missing field {key!r}")
    labels = obj["labels"]
    if (not isinstance(labels, list) or not labels
            or not all(isinstance(x, str) for x in labels)):
        raise SchemaError(f"{where}.labels: expected a non-empty array of strings")
    fusion = obj["fusion"]
    if not isinstance(fusion, list):
        raise SchemaError(f"{where}.fusion: expected an array of [l, m, n, mult]")
    entries = []
    seen = set()
    for i, item in enumerate(fusion):
        if (not isinstance(item, list) or len(item) != 4
                or not all(isinstance(x, int) for x in item)):
            raise SchemaError(f"{where}.fusion[{i}]: expected [l, m, n, mult] of integers")
        key = tuple(item[:3])
        if key in seen:
            raise SchemaError(f"{where}.fusion[{i}]: duplicate key {key}")
        seen.add(key)
        if item[3] <= 0:
            raise SchemaError(f"{where}.fusion[{i}]: multiplicity must be positive")
        entries.append(tuple(item))
    try:
        ring = FusionRing(labels, obj["unit"], obj["dual"], entries)
    except StructureError as exc:
        raise SchemaError(f"{where}: {exc}") from None

    twists = None
    if "twists" in obj and obj["twists"] is not None:
        raw = obj["twists"]
        if not isinstance(raw, list) or len(raw) != len(labels):
            raise SchemaError(f"{where}.twists: expected one rational string per label")
        twists = TwistData(tuple(parse_rational(t, f"{where}.twists[{i}]")
                                 for i, t in enumerate(raw)))
    return ring, twists


# --------------------------------------------------------------- invariants

def invariant_to_dict(mm: MassMatrix, labels: list[str] | None = None) -> dict:
    Z = mm.Z
    tr_z, tr_zzt = invariant_counts(Z)
    obj: dict[str, Any] = {
        "size": int(Z.shape[0]),
        "entries": [[int(i), int(j), int(Z[i, j])]
                    for i in range(Z.shape[0]) for j in range(Z.shape[1]) if Z[i, j]],
        "flags": {
            "is_identity": mm.is_identity,
            "is_permutation": mm.is_permutation,
            "is_symmetric": mm.is_symmetric,
            "type_one": mm.type_one,
        },
        "residuals": {"s_commutator": mm.residual_s, "t_commutator": mm.residual_t},
        "counts": {"trZ": tr_z, "trZZt": tr_zzt},
    }
    if labels is not None:
        obj["labels"] = list(labels)
    if mm.gram_rows is not None:
        obj["gram_rows"] = [list(r) for r in mm.gram_rows]
    return obj


def z_matrix_from_dict(obj: Any, where: str = "invariant") -> np.ndarray:
    if not isinstance(obj, dict) or "size" not in obj or "entries" not in obj:
        raise SchemaError(f"{where}: expected an object with 'size' and 'entries'")
    n = obj["size"]
    if not isinstance(n, int) or n <= 0:
        raise SchemaError(f"{where}.size: expected a positive integer")
    Z = np.zeros((n, n), dtype=np.int64)
    for i, item in enumerate(obj["entries"]):
        if (not isinstance(item, list) or len(item) != 3
                or not all(isinstance(x, int) for x in item)):
            raise SchemaError(f"{where}.entries[{i}]: expected [l, m, value]")
        l, m, v = item
        if not (0 <= l < n and 0 <= m < n):
            raise SchemaError(f"{where}.entries[{i}]: index out of range")
        if v < 0:
            raise SchemaError(f"{where}.entries[{i}]: negative entry")
        Z[l, m] = v
    return Z


def z_matrix_to_csv(Z: np.ndarray, labels: list[str]) -> str:
    """CSV with a header row of labels; one row of the mass matrix per line."""
    lines = ["," + ",".join(labels)]
    for i, row in enumerate(np.asarray(Z)):
        lines.append(labels[i] + "," + ",".join(str(int(v)) for v in row))
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------- algebras

def algebra_to_dict(alg: BasedAlgebra) -> dict:
    obj: dict[str, Any] = {
        "labels": list(alg.labels),
        "unit": alg.unit,
        "dual": list(alg.dual),
        "structure": [[a, b, c, m] for (a, b, c, m) in alg.entries()],
    }
    if alg.dims is not None:
        obj["dims"] = list(alg.dims)
    return obj


def algebra_from_dict(obj: Any, where: str = "algebra") -> BasedAlgebra:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected a JSON object")
    for key in ("labels", "dual", "structure"):
        if key not in obj:
            raise SchemaError(f"{where}: missing field {key!r}")
    entries = []
    seen = set()
    for i, item in enumerate(obj["structure"]):
        if (not isinstance(item, list) or len(item) != 4
                or not all(isinstance(x, int) for x in item)):
            raise SchemaError(f"{where}.structure[{i}]: expected [b, b', b'', mult]")
        key = tuple(item[:3])
        if key in seen:
            raise SchemaError(f"{where}.structure[{i}]: duplicate key {key}")
        seen.add(key)
        entries.append(tuple(item))
    try:
        return BasedAlgebra(obj["labels"], obj.get("unit"), obj["dual"], entries,
                            dims=obj.get("dims"))
    except StructureError as exc:
        raise SchemaError(f"{where}: {exc}") from None


def profile_to_dict(profile: BlockProfile) -> dict:
    return {"blocks": list(profile.sizes), "dimension": profile.dimension}


# ------------------------------------------------------------- certificates

def certificate_from_dict(obj: Any) -> InductionCertificate:
    if not isinstance(obj, dict):
        raise SchemaError("certificate: expected a JSON object")
    for key in ("nn", "mm", "aplus", "aminus"):
        if key not in obj:
            raise SchemaError(f"certificate: missing field {key!r}")
    ring, twists = ring_from_dict(obj["nn"], "certificate.nn")
    if twists is None:
        raise SchemaError("certificate.nn: twist data is required")
    mm = algebra_from_dict(obj["mm"], "certificate.mm")
    for key in ("aplus", "aminus"):
        mat = obj[key]
        if (not isinstance(mat, list)
                or not all(isinstance(row, list) and all(isinstance(x, int) for x in row)
                           for row in mat)):
            raise SchemaError(f"certificate.{key}: expected a matrix of integers")
    try:
        return InductionCertificate(ring, twists, mm, obj["aplus"], obj["aminus"],
                                    theta=obj.get("theta"), nm_count=obj.get("nm_count"))
    except StructureError as exc:
        raise SchemaError(f"certificate: {exc}") from None


def certificate_to_dict(cert: InductionCertificate) -> dict:
    obj: dict[str, Any] = {
        "nn": ring_to_dict(cert.ring, cert.twists),
        "mm": algebra_to_dict(cert.mm),
        "aplus": [[int(x) for x in row] for row in cert.aplus],
        "aminus": [[int(x) for x in row] for row in cert.aminus],
    }
    if cert.theta is not None:
        obj["theta"] = list(cert.theta)
    if cert.nm_count is not None:
        obj["nm_count"] = cert.nm_count
    return obj


# --------------------------------------------------------------------- I/O

def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


def load_json(path: str | Path) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None


def parse_ring(path: str | Path) -> tuple[FusionRing, TwistData | None]:
    return ring_from_dict(load_json(path), where=str(path))


def write_ring(path: str | Path, ring: FusionRing, twists: TwistData | None = None) -> None:
    Path(path).write_text(dumps(ring_to_dict(ring, twists)), encoding="utf-8")
