"""Semisimple based algebras given by non-negative integer structure constants.

The main operation splits such an algebra into simple matrix blocks: the
center is computed as the nullspace of the commutator constraints, a random
self-adjoint central element is drawn and its spectrum in the left regular
representation is clustered; each eigenvalue cluster of size s belongs to one
simple block of size sqrt(s).  Conjugate pairs of blocks carry
complex-conjugate scalars, so the random draw must use complex coefficients:
real ones provably cannot separate a block from its conjugate.

The block profile is what pairs with a mass matrix: the multiset of nonzero
Z entries must equal the multiset of block sizes, and the algebra is
commutative exactly when all blocks are 1x1, i.e. when Z is 0/1-valued.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

import numpy as np

from .errors import NumericError, StructureError
from .numerics import readonly
from .rings import ValidationReport, Violation

_RANK_RTOL = 1e-7  # singular-value threshold, relative to the largest


class BasedAlgebra:
    """Finite-dimensional algebra with a distinguished basis.

    Structure constants N[b,b']^{b''} are non-negative integers; the
    involution is a basis permutation acting as an anti-automorphism.  The
    unit index is optional because natural examples (a full matrix algebra in
    its matrix-unit basis) have a unit that is not a basis element.
    """

    __slots__ = ("labels", "unit", "dual", "structure", "dims", "_lmats")

    def __init__(self, labels, unit, dual, structure, dims=None):
        labels = tuple(str(x) for x in labels)
        if not labels:
            raise StructureError("basis must be non-empty")
        if len(set(labels)) != len(labels):
            raise StructureError("basis labels must be unique")
        n = len(labels)
        if unit is not None and (not isinstance(unit, (int, np.integer)) or not 0 <= unit < n):
            raise StructureError(f"unit index {unit!r} out of range")
        dual = tuple(int(x) for x in dual)
        if len(dual) != n or any(not 0 <= x < n for x in dual):
            raise StructureError("involution must list one in-range index per basis element")

        if isinstance(structure, Mapping):
            items: Iterable = ((k[0], k[1], k[2], v) for k, v in structure.items())
        else:
            items = structure
        table: dict[tuple[int, int, int], int] = {}
        for entry in items:
            try:
                a, b, c, mult = (int(x) for x in entry)
            except (TypeError, ValueError):
                raise StructureError(f"structure entry {entry!r} is not (b, b', b'', mult)") from None
            if not (0 <= a < n and 0 <= b < n and 0 <= c < n):
                raise StructureError(f"structure entry index out of range: {(a, b, c)}")
            if mult < 0:
                raise StructureError(f"negative structure constant at {(a, b, c)}")
            if (a, b, c) in table:
                raise StructureError(f"duplicate structure key {(a, b, c)}")
            if mult:
                table[(a, b, c)] = mult

        if dims is not None:
            dims = tuple(float(x) for x in dims)
            if len(dims) != n or any(x <= 0 for x in dims):
                raise StructureError("dimension vector must be per-basis positive")

        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "unit", None if unit is None else int(unit))
        object.__setattr__(self, "dual", dual)
        object.__setattr__(self, "structure", MappingProxyType(table))
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "_lmats", None)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("BasedAlgebra is immutable")

    @property
    def size(self) -> int:
        return len(self.labels)

    def mult(self, a: int, b: int, c: int) -> int:
        return self.structure.get((a, b, c), 0)

    def entries(self) -> tuple[tuple[int, int, int, int], ...]:
        return tuple((a, b, c, m) for (a, b, c), m in sorted(self.structure.items()))

    def left_regular(self) -> np.ndarray:
        """Stacked left-multiplication matrices L[b][d,g] = N[b,g]^d."""
        cached = object.__getattribute__(self, "_lmats")
        if cached is None:
            n = self.size
            L = np.zeros((n, n, n))
            for (a, b, c), m in self.structure.items():
                L[a, c, b] = m
            cached = readonly(L)
            object.__setattr__(self, "_lmats", cached)
        return cached

    @classmethod
    def from_group_table(cls, table, labels=None, dims=None) -> "BasedAlgebra":
        """Group algebra from a multiplication table table[i][j] = index of g_i g_j."""
        table = [list(row) for row in table]
        n = len(table)
        if labels is None:
            labels = [f"g{i}" for i in range(n)]
        unit = None
        for e in range(n):
            if all(table[e][x] == x and table[x][e] == x for x in range(n)):
                unit = e
                break
        if unit is None:
            raise StructureError("multiplication table has no unit element")
        dual = [0] * n
        for g in range(n):
            inv = [h for h in range(n) if table[g][h] == unit]
            if len(inv) != 1:
                raise StructureError(f"element {g} does not have a unique inverse")
            dual[g] = inv[0]
        structure = {(i, j, table[i][j]): 1 for i in range(n) for j in range(n)}
        return cls(labels, unit, dual, structure, dims=dims)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BasedAlgebra):
            return NotImplemented
        return (self.labels == other.labels and self.unit == other.unit
                and self.dual == other.dual
                and dict(self.structure) == dict(other.structure)
                and self.dims == other.dims)

    def __repr__(self) -> str:
        return f"BasedAlgebra({self.size} basis elements)"


@dataclass(frozen=True)
class BlockProfile:
    """Simple block sizes, sorted descending; sum of squares is the dimension."""

    sizes: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(sorted((int(s) for s in self.sizes), reverse=True)))

    @property
    def dimension(self) -> int:
        return sum(s * s for s in self.sizes)

    @property
    def all_ones(self) -> bool:
        return all(s == 1 for s in self.sizes)


def validate_based_algebra(alg: BasedAlgebra) -> ValidationReport:
    """Unit axiom (when a unit index is given), associativity, the involution
    anti-automorphism law, and multiplicativity of the dimension vector when
    one is attached."""
    n = alg.size
    out: list[Violation] = []
    if alg.unit is not None:
        e = alg.unit
        for b in range(n):
            for c in range(n):
                want = 1 if b == c else 0
                if alg.mult(e, b, c) != want:
                    out.append(Violation("unit", (e, b, c),
                                         f"N[unit,{b}]^{c} = {alg.mult(e, b, c)}, expected {want}"))
                if alg.mult(b, e, c) != want:
                    out.append(Violation("unit", (b, e, c),
                                         f"N[{b},unit]^{c} = {alg.mult(b, e, c)}, expected {want}"))

    dual = alg.dual
    for a in range(n):
        if dual[dual[a]] != a:
            out.append(Violation("involution", (a,), "involution is not self-inverse"))
    for (a, b, c), m in sorted(alg.structure.items()):
        mirrored = alg.mult(dual[b], dual[a], dual[c])
        if mirrored != m:
            out.append(Violation("involution", (a, b, c),
                                 f"N[{a},{b}]^{c} = {m} but N[{dual[b]},{dual[a]}]^{dual[c]} = {mirrored}"))

    L = alg.left_regular()
    for a in range(n):
        for b in range(n):
            lhs = L[a] @ L[b]
            rhs = np.zeros((n, n))
            for c in range(n):
                m = alg.mult(a, b, c)
                if m:
                    rhs += m * L[c]
            if not np.array_equal(lhs, rhs):
                i, j = next(zip(*np.nonzero(lhs != rhs)))
                out.append(Violation("associativity", (a, b, int(j), int(i)),
                                     "product of basis elements is not associative"))

    if alg.dims is not None:
        d = np.array(alg.dims)
        got = np.zeros((n, n))
        for (a, b, c), m in alg.structure.items():
            got[a, b] += m * d[c]
        bad = np.argwhere(np.abs(got - np.outer(d, d)) > 1e-6 * max(1.0, float(np.max(d)) ** 2))
        for a, b in bad:
            out.append(Violation("dimension", (int(a), int(b)),
                                 f"sum_c N[{a},{b}]^c d_c != d_{a} d_{b}"))
    return ValidationReport(tuple(out))


def decompose_semisimple(alg: BasedAlgebra, *, seed: int = 0,
                         max_draws: int = 8) -> BlockProfile:
    """Simple block sizes of a semisimple based algebra.

    Draws up to ``max_draws`` random self-adjoint central elements (fresh
    randomness per draw, reproducible via ``seed``); a draw is accepted when
    its regular-representation spectrum splits into exactly as many
    well-separated clusters as the center has dimensions and every cluster
    size is a perfect square.  Non-square cluster sizes mean the input is not
    semisimple as expected.
    """
    n = alg.size
    L = alg.left_regular()
    # center: coefficient vectors c with sum_b c_b (N[b,g]^d - N[g,b]^d) = 0
    constraints = np.zeros((n * n, n))
    for (a, b, c), m in alg.structure.items():
        constraints[b * n + c, a] += m
        constraints[a * n + c, b] -= m
    _, svals, Vt = np.linalg.svd(constraints, full_matrices=True)
    cutoff = _RANK_RTOL * (svals[0] if svals.size and svals[0] > 0 else 1.0)
    center = [Vt[i] for i in range(n) if i >= len(svals) or svals[i] <= cutoff]
    r = len(center)
    if r == 0:
        raise NumericError("center is empty; input is not a unital based algebra")
    basis = np.array(center)  # r x n, real

    rng = np.random.default_rng(seed)
    dual = list(alg.dual)
    last_sizes: list[int] | None = None
    for _ in range(max_draws):
        coeff = (rng.standard_normal(r) + 1j * rng.standard_normal(r)) @ basis
        coeff = 0.5 * (coeff + np.conj(coeff[dual]))  # self-adjoint part
        if np.max(np.abs(coeff)) < 1e-12:
            continue
        zmat = np.tensordot(coeff, L, axes=1)
        eigs = np.linalg.eigvals(zmat)
        scale = float(np.max(np.abs(eigs))) + 1.0
        clusters = _cluster(eigs, 1e-7 * scale)
        means = [np.mean(c) for c in clusters]
        sep = min((abs(a - b) for i, a in enumerate(means) for b in means[i + 1:]),
                  default=np.inf)
        if len(clusters) != r or sep < 1e-5 * scale:
            continue  # eigenvalue collision; retry with fresh randomness
        sizes = [len(c) for c in clusters]
        last_sizes = sizes
        roots = [math.isqrt(s) for s in sizes]
        if any(q * q != s for q, s in zip(roots, sizes)):
            raise NumericError(
                f"eigenvalue multiplicities {sorted(sizes)} are not perfect squares; "
                "algebra is not semisimple as expected")
        return BlockProfile(tuple(roots))
    raise NumericError(
        f"central spectrum did not split into {r} clusters after {max_draws} draws"
        + (f" (last multiplicities {sorted(last_sizes)})" if last_sizes else "")
        + "; algebra may not be semisimple")


def _cluster(values: np.ndarray, tol: float) -> list[list[complex]]:
    """Greedy clustering of complex values by distance; order-insensitive for
    well-separated spectra."""
    todo = sorted(values, key=lambda z: (round(z.real / tol) if tol > 0 else z.real, z.imag))
    clusters: list[list[complex]] = []
    for z in todo:
        for cl in clusters:
            if abs(z - cl[0]) <= tol:
                cl.append(z)
                break
        else:
            clusters.append([z])
    return clusters


def verify_dimension_theorem(Z: np.ndarray, profile: BlockProfile) -> bool:
    """True iff the multiset of nonzero Z entries equals the block profile."""
    Z = np.asarray(Z, dtype=np.int64)
    entries = Counter(int(v) for v in Z.ravel() if v != 0)
    return entries == Counter(profile.sizes)


def is_commutative(alg: BasedAlgebra) -> bool:
    """Exact symmetry N[b,b']^{b''} = N[b',b]^{b''} of the structure constants."""
    return all(m == alg.mult(b, a, c) for (a, b, c), m in alg.structure.items())
