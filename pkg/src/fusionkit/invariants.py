"""Enumeration and classification of modular invariant mass matrices.

A mass matrix is a non-negative integer matrix Z with Z[0,0] = 1 commuting
with S and T.  T-commutation is an exact sparsity statement: Z can only be
supported where twist exponents coincide.  S-commutation is a linear
condition, so the search runs in two stages:

1. an orthonormal real basis of { X supported on the twist mask : SX = XS }
   (the commutant restricted to the mask), and
2. enumeration of integer points in that span, driven by pivot cells chosen
   at large d_l d_m so the global-index bounds Z[l,m] <= w / (d_l d_m) stay
   small, with the budget sum_{l,m} d_l d_m Z[l,m] = w as acceptance filter.

A raw depth-first search over the mask cells is kept as the small-instance
oracle (`brute_force_invariants`).
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import NondegeneracyRequired, NumericError, RankAmbiguityError
from .modular import ModularData, TwistData, is_nondegenerate
from .numerics import max_abs, readonly, scaled_tol
from .rings import DimensionVector

INT_TOL = 1e-6  # acceptance tolerance for reconstructed entries
_CHUNK = 1 << 16


@dataclass(frozen=True)
class MassMatrix:
    """One modular invariant with its residuals and classification flags.

    ``type_one`` is tri-state ("yes" / "no" / "unknown"); when "yes",
    ``gram_rows`` holds a non-negative integer matrix B with Z = B^t B whose
    column at the unit label is a standard basis vector.
    """

    Z: np.ndarray
    residual_s: float
    residual_t: float
    is_identity: bool
    is_permutation: bool
    is_symmetric: bool
    type_one: str
    gram_rows: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "Z", readonly(np.asarray(self.Z, dtype=np.int64)))

    @property
    def counts(self) -> tuple[int, int]:
        return invariant_counts(self.Z)

    @property
    def size(self) -> int:
        return self.Z.shape[0]


def twist_sparsity(twists: TwistData) -> np.ndarray:
    """mask[l,m] = True iff h_l = h_m as exact rationals."""
    n = len(twists)
    mask = np.zeros((n, n), dtype=bool)
    for l in range(n):
        for m in range(n):
            mask[l, m] = twists.h[l] == twists.h[m]
    return readonly(mask)


def commutant_basis(S: np.ndarray, mask: np.ndarray,
                    tol: float | None = None) -> np.ndarray:
    """Orthonormal real basis of { X supported on mask : SX = XS }.

    The commutator is linearized over the masked cells and the nullspace
    read off an SVD.  Singular values within a decade of the rank cutoff
    raise RankAmbiguityError rather than guessing.
    """
    S = np.asarray(S, dtype=complex)
    n = S.shape[0]
    cells = [(i, j) for i in range(n) for j in range(n) if mask[i, j]]
    cols = []
    for (i, j) in cells:
        E = np.zeros((n, n))
        E[i, j] = 1.0
        comm = S @ E - E @ S
        cols.append(np.concatenate([comm.real.ravel(), comm.imag.ravel()]))
    A = np.column_stack(cols)
    _, svals, Vt = np.linalg.svd(A, full_matrices=True)
    cutoff = scaled_tol(tol, n)
    ambiguous = [s for s in svals if cutoff / 10.0 < s < cutoff * 10.0]
    if ambiguous:
        raise RankAmbiguityError(
            f"singular values {ambiguous} within a decade of cutoff {cutoff:.1e}; "
            "raise precision or adjust the tolerance")
    null_idx = [i for i in range(len(cells))
                if i >= len(svals) or svals[i] <= cutoff]
    if not null_idx:
        raise NumericError("commutant is empty; the identity should always be present")
    basis = np.zeros((len(null_idx), n, n))
    for k, idx in enumerate(null_idx):
        vec = Vt[idx]
        for val, (i, j) in zip(vec, cells):
            basis[k, i, j] = val
    return readonly(basis)


def invariant_counts(Z: np.ndarray) -> tuple[int, int]:
    """(tr Z, tr Z Z^t): predicted numbers of N-M and M-M sectors."""
    Z = np.asarray(Z, dtype=np.int64)
    return int(np.trace(Z)), int(np.sum(Z * Z))


def classify_invariant(Z: np.ndarray, md: ModularData | None = None, *,
                       node_budget: int = 1_000_000,
                       tol: float | None = None) -> MassMatrix:
    """Attach flags to a mass matrix: identity / permutation / symmetry, and
    the type-I decision via bounded search for a Gram factorization Z = B^t B
    over non-negative integer rows."""
    Z = np.asarray(Z, dtype=np.int64)
    n = Z.shape[0]
    if md is not None:
        residual_s = max_abs(md.S @ Z - Z @ md.S)
        residual_t = max_abs(md.T @ Z - Z @ md.T)
    else:
        residual_s = residual_t = float("nan")
    is_identity = bool(np.array_equal(Z, np.eye(n, dtype=np.int64)))
    is_permutation = bool(
        np.all((Z == 0) | (Z == 1))
        and np.all(Z.sum(axis=0) == 1) and np.all(Z.sum(axis=1) == 1))
    is_symmetric = bool(np.array_equal(Z, Z.T))
    if not is_symmetric:
        type_one, rows = "no", None  # B^t B is always symmetric
    else:
        type_one, rows = _gram_factorization(Z, node_budget)
    return MassMatrix(Z=Z, residual_s=residual_s, residual_t=residual_t,
                      is_identity=is_identity, is_permutation=is_permutation,
                      is_symmetric=is_symmetric, type_one=type_one, gram_rows=rows)


class _BudgetHit(Exception):
    pass


def _gram_factorization(Z: np.ndarray, node_budget: int):
    """Backtracking search for non-negative integer rows b with
    sum_i b_i^t b_i = Z.  Rows are anchored at the first label whose diagonal
    residual is still positive, which also forces the unit column of B to be
    a standard basis vector when Z[0,0] = 1."""
    n = Z.shape[0]
    budget = node_budget

    def rec(R: np.ndarray, rows: list[tuple[int, ...]], prev: tuple[int, ...] | None):
        nonlocal budget
        if not R.any():
            return tuple(rows)
        diag = np.diagonal(R)
        lead_candidates = np.nonzero(diag)[0]
        if lead_candidates.size == 0:
            return None  # off-diagonal residue can never be produced
        lead = int(lead_candidates[0])
        prev_b = prev if prev is not None and prev[lead] and not any(prev[:lead]) else None

        row = [0] * n

        def fill(pos: int):
            nonlocal budget
            budget -= 1
            if budget < 0:
                raise _BudgetHit
            if pos == n:
                b = np.array(row, dtype=np.int64)
                if prev_b is not None and tuple(row) > prev_b:
                    return None
                R2 = R - np.outer(b, b)
                if np.any(R2 < 0):
                    return None
                return rec(R2, rows + [tuple(row)], tuple(row))
            if pos < lead:
                return fill(pos + 1)
            if pos == lead:
                top = math.isqrt(int(R[lead, lead]))
                lo = 1
            else:
                top = min(math.isqrt(int(R[pos, pos])), int(R[lead, pos]) // row[lead])
                lo = 0
            for v in range(top, lo - 1, -1):
                row[pos] = v
                found = fill(pos + 1)
                if found is not None:
                    return found
            row[pos] = 0
            return None

        return fill(0)

    try:
        rows = rec(Z.astype(np.int64), [], None)
    except _BudgetHit:
        return "unknown", None
    if rows is None:
        return "no", None
    return "yes", rows


def _pivot_cells(basis: np.ndarray, cells: list[tuple[int, int]],
                 dd: np.ndarray) -> list[int]:
    """Greedy choice of m independent cells, preferring large d_l d_m so the
    per-pivot enumeration bounds stay small."""
    m = basis.shape[0]
    order = sorted(range(len(cells)), key=lambda i: (-dd[cells[i]], cells[i]))
    chosen: list[int] = []
    Q: np.ndarray | None = None
    for idx in order:
        col = basis[:, cells[idx][0], cells[idx][1]]
        if Q is None:
            res = col
        else:
            res = col - Q @ (Q.T @ col)
        nrm = np.linalg.norm(res)
        if nrm > 1e-9 * (np.linalg.norm(col) + 1.0):
            chosen.append(idx)
            q = res / nrm
            Q = q[:, None] if Q is None else np.column_stack([Q, q])
            if len(chosen) == m:
                break
    if len(chosen) != m:
        raise NumericError("could not find an invertible pivot set for the commutant")
    return chosen


def _filter_chunk(start: int, stop: int, sizes: tuple[int, ...], W: np.ndarray,
                  ddpiv: np.ndarray, dd_flat: np.ndarray, w: float,
                  unit_flat: int, int_tol: float) -> list[bytes]:
    """Scan one slab of pivot assignments; return accepted rounded matrices.

    Top-level function so multiprocessing can pickle it.
    """
    out: list[bytes] = []
    for lo in range(start, stop, _CHUNK):
        hi = min(lo + _CHUNK, stop)
        idx = np.arange(lo, hi, dtype=np.int64)
        V = np.column_stack(np.unravel_index(idx, sizes)).astype(float)
        keep = V @ ddpiv <= w + 1.0
        V = V[keep]
        if V.shape[0] == 0:
            continue
        X = V @ W
        R = np.rint(X)
        good = (np.max(np.abs(X - R), axis=1) <= int_tol)
        good &= np.all(R >= 0.0, axis=1)
        good &= R[:, unit_flat] == 1.0
        good &= np.abs(R @ dd_flat - w) <= 1e-6 * w
        for row in R[good]:
            out.append(row.astype(np.int64).tobytes())
    return out


def search_invariants(md: ModularData, dims: DimensionVector | None = None, *,
                      tol: float | None = None, int_tol: float = INT_TOL,
                      jobs: int = 1, node_budget: int = 1_000_000,
                      with_flags: bool = True) -> list[MassMatrix]:
    """Complete list of modular invariant mass matrices for non-degenerate
    modular data, identity first, the rest in lexicographic order of their
    flattened entries.

    The constraint set is transpose-stable, so Z and Z^t both appear whenever
    they differ; asymmetric invariants are visible via ``is_symmetric``.
    """
    report = is_nondegenerate(md.ring, md.twists, md=md, tol=tol)
    if not report.nondegenerate:
        raise NondegeneracyRequired(
            f"braiding is degenerate (witness label {report.witness}); "
            "modular invariants are only classified for non-degenerate data")
    d = dims.d if dims is not None else md.d
    w = float(dims.w) if dims is not None else md.w
    n = md.size
    mask = twist_sparsity(md.twists)
    basis = commutant_basis(md.S, mask, tol)
    m = basis.shape[0]
    cells = [(i, j) for i in range(n) for j in range(n) if mask[i, j]]
    dd = np.outer(d, d)

    pivot_idx = _pivot_cells(basis, cells, dd)
    pivots = [cells[i] for i in pivot_idx]
    P = np.column_stack([basis[:, i, j] for (i, j) in pivots])  # m x m
    W = np.linalg.solve(P, basis.reshape(m, n * n))  # pivot values -> flat matrix

    ddpiv = np.array([dd[p] for p in pivots])
    bounds = [int(w / dd[p] + 1e-9) for p in pivots]
    sizes = tuple(b + 1 for b in bounds)
    total = 1
    for s in sizes:
        total *= s
    if total > 200_000_000:
        raise NumericError(f"pivot enumeration space too large ({total} points)")

    unit_flat = md.ring.unit * n + md.ring.unit
    dd_flat = dd.ravel()
    args = (sizes, W, ddpiv, dd_flat, w, unit_flat, int_tol)

    if jobs > 1 and total > jobs:
        step = -(-total // jobs)
        ranges = [(s, min(s + step, total)) for s in range(0, total, step)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_filter_chunk,
                                    [r[0] for r in ranges], [r[1] for r in ranges],
                                    *[[a] * len(ranges) for a in args]))
        raw = [b for chunk in results for b in chunk]
    else:
        raw = _filter_chunk(0, total, *args)

    seen: dict[bytes, np.ndarray] = {}
    for b in raw:
        if b not in seen:
            seen[b] = np.frombuffer(b, dtype=np.int64).reshape(n, n)

    eps = scaled_tol(tol, n)
    accepted: list[np.ndarray] = []
    for Z in seen.values():
        if np.any(Z[~mask] != 0):
            continue  # exact T-pattern re-check
        if max_abs(md.S @ Z - Z @ md.S) > eps:
            continue  # numeric S re-check on the rounded matrix
        accepted.append(Z)

    accepted.sort(key=lambda Z: (not bool(np.array_equal(Z, np.eye(n, dtype=np.int64))),
                                 tuple(Z.ravel())))
    if not accepted or not np.array_equal(accepted[0], np.eye(n, dtype=np.int64)):
        raise NumericError("identity invariant missing from search output")

    if not with_flags:
        return [classify_invariant(Z, md, node_budget=0, tol=tol) for Z in accepted]
    return [classify_invariant(Z, md, node_budget=node_budget, tol=tol)
            for Z in accepted]


def brute_force_invariants(md: ModularData, dims: DimensionVector | None = None, *,
                           tol: float | None = None,
                           int_tol: float = INT_TOL) -> list[np.ndarray]:
    """Reference depth-first search over the twist mask with the
    sum_{l,m} d_l d_m Z[l,m] = w budget; the small-instance oracle for
    :func:`search_invariants`."""
    report = is_nondegenerate(md.ring, md.twists, md=md, tol=tol)
    if not report.nondegenerate:
        raise NondegeneracyRequired("brute-force search needs non-degenerate data")
    d = dims.d if dims is not None else md.d
    w = float(dims.w) if dims is not None else md.w
    n = md.size
    unit = md.ring.unit
    mask = twist_sparsity(md.twists)
    dd = np.outer(d, d)
    cells = [(i, j) for i in range(n) for j in range(n)
             if mask[i, j] and (i, j) != (unit, unit)]
    cells.sort(key=lambda c: (-dd[c], c))
    coeff = [float(dd[c]) for c in cells]
    delta = 1e-6 * w
    suffix_max = [0.0] * (len(cells) + 1)
    for i in range(len(cells) - 1, -1, -1):
        suffix_max[i] = suffix_max[i + 1] + math.floor(w / coeff[i] + 1e-9) * coeff[i]

    Z = np.zeros((n, n), dtype=np.int64)
    Z[unit, unit] = 1
    out: list[np.ndarray] = []
    eps = scaled_tol(tol, n)
    S = md.S

    def rec(i: int, remaining: float):
        if remaining < -delta or remaining > suffix_max[i] + delta:
            return
        if i == len(cells):
            if abs(remaining) <= delta and max_abs(S @ Z - Z @ S) <= eps:
                out.append(Z.copy())
            return
        c = coeff[i]
        cell = cells[i]
        if i == len(cells) - 1:
            v = int(round(remaining / c))
            if v >= 0 and abs(remaining - v * c) <= delta:
                Z[cell] = v
                rec(i + 1, remaining - v * c)
                Z[cell] = 0
            return
        top = int((remaining + delta) / c)
        for v in range(top + 1):
            Z[cell] = v
            rec(i + 1, remaining - v * c)
        Z[cell] = 0

    rec(0, w - float(dd[unit, unit]))
    out.sort(key=lambda M: (not bool(np.array_equal(M, np.eye(n, dtype=np.int64))),
                            tuple(M.ravel())))
    return out
