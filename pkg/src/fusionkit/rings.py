"""Finite fusion rings: sector axioms, quantum dimensions, regular representation.

A fusion ring is a finite label set with a distinguished unit, a conjugation
(dual) involution and non-negative integer structure constants N[a,b]^c.  The
axioms checked here are the unit law, conjugation symmetry (the unit appears
exactly once, in a x abar), Frobenius reciprocity and associativity of the
product.  Quantum dimensions are the unique strictly positive simultaneous
eigenvector of the fusion matrices, computed as Perron-Frobenius data.
"""
from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

import numpy as np

from .errors import NumericError, StructureError
from .numerics import readonly


@dataclass(frozen=True)
class Violation:
    """One failed axiom instance, with the witnessing index tuple."""

    axiom: str
    where: tuple[int, ...]
    detail: str

    def __str__(self) -> str:
        return f"{self.axiom} at {self.where}: {self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def axioms(self) -> tuple[str, ...]:
        return tuple(sorted({v.axiom for v in self.violations}))

    def __str__(self) -> str:
        if self.ok:
            return "valid"
        return "\n".join(str(v) for v in self.violations)


class FusionRing:
    """Immutable fusion-ring data.

    Parameters
    ----------
    labels : sequence of str
        Opaque label ids; position in the sequence is the label index.
    unit : int
        Index of the unit label.
    dual : sequence of int
        Conjugation map as a list of label indices.
    fusion : mapping (a, b, c) -> int, or iterable of (a, b, c, mult)
        Sparse structure constants; zero entries may be omitted.

    The constructor performs *structural* validation only (index ranges,
    integrality, non-negativity) and raises ``StructureError`` on failure.
    Axioms are checked by :func:`validate_fusion_ring`, which collects all
    violations instead of failing fast.
    """

    __slots__ = ("labels", "unit", "dual", "fusion", "_nmats")

    def __init__(self, labels, unit, dual, fusion):
        labels = tuple(str(x) for x in labels)
        if not labels:
            raise StructureError("label set must be non-empty")
        if len(set(labels)) != len(labels):
            raise StructureError("label ids must be unique")
        n = len(labels)
        if not isinstance(unit, (int, np.integer)) or not 0 <= unit < n:
            raise StructureError(f"unit index {unit!r} out of range for {n} labels")
        dual = tuple(int(x) for x in dual)
        if len(dual) != n or any(not 0 <= x < n for x in dual):
            raise StructureError("dual map must list one in-range index per label")

        if isinstance(fusion, Mapping):
            items: Iterable = ((k[0], k[1], k[2], v) for k, v in fusion.items())
        else:
            items = fusion
        table: dict[tuple[int, int, int], int] = {}
        for entry in items:
            try:
                a, b, c, mult = entry
            except (TypeError, ValueError):
                raise StructureError(f"fusion entry {entry!r} is not (a, b, c, mult)") from None
            if not all(isinstance(x, (int, np.integer)) for x in (a, b, c, mult)):
                raise StructureError(f"fusion entry {entry!r} must be all integers")
            a, b, c, mult = int(a), int(b), int(c), int(mult)
            if not (0 <= a < n and 0 <= b < n and 0 <= c < n):
                raise StructureError(f"fusion entry index out of range: {(a, b, c)}")
            if mult < 0:
                raise StructureError(f"negative multiplicity at {(a, b, c)}: {mult}")
            if (a, b, c) in table:
                raise StructureError(f"duplicate fusion key {(a, b, c)}")
            if mult:
                table[(a, b, c)] = mult

        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "unit", int(unit))
        object.__setattr__(self, "dual", dual)
        object.__setattr__(self, "fusion", MappingProxyType(table))
        object.__setattr__(self, "_nmats", None)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("FusionRing is immutable")

    @property
    def size(self) -> int:
        return len(self.labels)

    def mult(self, a: int, b: int, c: int) -> int:
        """N[a,b]^c, the multiplicity of c inside a x b."""
        return self.fusion.get((a, b, c), 0)

    def entries(self) -> tuple[tuple[int, int, int, int], ...]:
        """Sparse table in canonical sorted order."""
        return tuple((a, b, c, m) for (a, b, c), m in sorted(self.fusion.items()))

    def fusion_matrix(self, mu: int) -> np.ndarray:
        """(N_mu)[lam, nu] = N[lam, mu]^nu."""
        return self.fusion_matrices()[mu]

    def fusion_matrices(self) -> tuple[np.ndarray, ...]:
        cached = object.__getattribute__(self, "_nmats")
        if cached is None:
            n = self.size
            mats = [np.zeros((n, n), dtype=np.int64) for _ in range(n)]
            for (a, b, c), m in self.fusion.items():
                mats[b][a, c] = m
            cached = tuple(readonly(m) for m in mats)
            object.__setattr__(self, "_nmats", cached)
        return cached

    def conjugation_matrix(self) -> np.ndarray:
        C = np.zeros((self.size, self.size), dtype=np.int64)
        for lam, lbar in enumerate(self.dual):
            C[lam, lbar] = 1
        return readonly(C)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FusionRing):
            return NotImplemented
        return (self.labels == other.labels and self.unit == other.unit
                and self.dual == other.dual and dict(self.fusion) == dict(other.fusion))

    def __hash__(self):
        return hash((self.labels, self.unit, self.dual, self.entries()))

    def __repr__(self) -> str:
        return f"FusionRing({len(self.labels)} labels, unit={self.labels[self.unit]!r})"


@dataclass(frozen=True)
class DimensionVector:
    """Quantum dimensions d (d[unit] = 1) and the global index w = sum d^2."""

    d: np.ndarray
    w: float
    residual: float

    def __post_init__(self):
        object.__setattr__(self, "d", readonly(np.asarray(self.d, dtype=float)))


def validate_fusion_ring(ring: FusionRing) -> ValidationReport:
    """Check every fusion-ring axiom, collecting all violations.

    Axiom names used in the report: ``involution``, ``unit``, ``conjugate``,
    ``frobenius``, ``associativity``.
    """
    n = ring.size
    unit = ring.unit
    dual = ring.dual
    out: list[Violation] = []

    if dual[unit] != unit:
        out.append(Violation("involution", (unit,), "dual(unit) != unit"))
    for lam in range(n):
        if dual[dual[lam]] != lam:
            out.append(Violation("involution", (lam,), f"dual(dual({lam})) = {dual[dual[lam]]}"))

    for mu in range(n):
        for nu in range(n):
            want = 1 if mu == nu else 0
            got = ring.mult(unit, mu, nu)
            if got != want:
                out.append(Violation("unit", (unit, mu, nu), f"N[0,{mu}]^{nu} = {got}, expected {want}"))
            got = ring.mult(mu, unit, nu)
            if got != want:
                out.append(Violation("unit", (mu, unit, nu), f"N[{mu},0]^{nu} = {got}, expected {want}"))

    for lam in range(n):
        for mu in range(n):
            want = 1 if mu == dual[lam] else 0
            got = ring.mult(lam, mu, unit)
            if got != want:
                out.append(Violation(
                    "conjugate", (lam, mu),
                    f"N[{lam},{mu}]^unit = {got}, expected {want}"))

    for (a, b, c) in _all_triples(ring):
        n_abc = ring.mult(a, b, c)
        left = ring.mult(dual[a], c, b)
        right = ring.mult(c, dual[b], a)
        if not n_abc == left == right:
            out.append(Violation(
                "frobenius", (a, b, c),
                f"N[{a},{b}]^{c} = {n_abc}, N[{dual[a]},{c}]^{b} = {left}, "
                f"N[{c},{dual[b]}]^{a} = {right}"))

    # associativity, in regular-representation form: N_rho N_sigma must equal
    # sum_mu N[rho,sigma]^mu N_mu, entrywise at (lam, nu)
    mats = ring.fusion_matrices()
    for rho in range(n):
        for sigma in range(n):
            lhs = mats[rho] @ mats[sigma]
            rhs = np.zeros_like(lhs)
            for mu in range(n):
                m = ring.mult(rho, sigma, mu)
                if m:
                    rhs += m * mats[mu]
            if not np.array_equal(lhs, rhs):
                for lam, nu in zip(*np.nonzero(lhs != rhs)):
                    out.append(Violation(
                        "associativity", (int(lam), rho, sigma, int(nu)),
                        f"sum_mu N[{lam},mu]^{nu} N[{rho},{sigma}]^mu = {int(lhs[lam, nu])}, "
                        f"sum_tau N[{lam},{rho}]^tau N[tau,{sigma}]^{nu} = {int(rhs[lam, nu])}"))

    return ValidationReport(tuple(out))


def _all_triples(ring: FusionRing):
    n = ring.size
    for a in range(n):
        for b in range(n):
            for c in range(n):
                yield (a, b, c)


def quantum_dimensions(ring: FusionRing, *, tol: float = 1e-12,
                       max_iter: int = 100_000) -> DimensionVector:
    """Perron-Frobenius dimensions of a valid fusion ring.

    Power iteration on sum_mu N_mu (primitive for the connected rings handled
    here), normalized so d[unit] = 1, with the eigenvector refined until
    successive iterates agree to ``tol``.  The multiplicativity residual
    max |sum_nu N[l,m]^nu d_nu - d_l d_m| is returned alongside.
    """
    n = ring.size
    A = np.zeros((n, n), dtype=float)
    for m in ring.fusion_matrices():
        A += m
    v = np.full(n, 1.0 / np.sqrt(n))
    for _ in range(max_iter):
        w = A @ v
        nrm = np.linalg.norm(w)
        if nrm == 0.0:
            raise NumericError("fusion matrices have a zero total column; ring disconnected?")
        w /= nrm
        if np.max(np.abs(w - v)) < tol:
            v = w
            break
        v = w
    else:
        raise NumericError(f"power iteration did not converge in {max_iter} steps")
    # one Rayleigh-refined sweep to polish the eigenvector
    lam = float(v @ (A @ v))
    v = A @ v / lam
    if v[ring.unit] <= 0:
        raise NumericError("Perron vector has non-positive unit component")
    d = v / v[ring.unit]
    if np.any(d <= 0):
        raise NumericError("Perron vector is not strictly positive")

    target = np.outer(d, d)
    got = np.zeros((n, n))
    for (a, b, c), m in ring.fusion.items():
        got[a, b] += m * d[c]
    residual = float(np.max(np.abs(got - target)))
    limit = 1e-8 * max(1.0, float(np.max(d)) ** 2)
    if residual > limit:
        raise NumericError(f"dimension residual {residual:.3e} exceeds {limit:.3e}")
    return DimensionVector(d=d, w=float(np.dot(d, d)), residual=residual)


def fusion_matrices(ring: FusionRing) -> list[np.ndarray]:
    """The regular representation [(N_mu)_{lam,nu}] = N[lam,mu]^nu for each mu."""
    return list(ring.fusion_matrices())
