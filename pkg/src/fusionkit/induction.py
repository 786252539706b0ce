"""Verification of induction certificates against sector-level identities.

A certificate pairs a braided fusion ring (the "base" or N-N system) with a
candidate extended sector algebra (the "M-M" system) and two non-negative
integer branching matrices A+ and A- whose (l, beta) entries say how often
the extended sector [beta] occurs in the induced image of the base label l
for each braiding chirality.  Certificates are verified, never constructed:
building the branching data genuinely requires operator-level input that
this package does not model.  The verifiable consequences are:

* unit row: both inductions send the base unit to the extended unit;
* dimension preservation: sum_beta A[l,beta] d_beta = d_l;
* homomorphism: with v_l = sum_beta A[l,beta] [beta], the exact integer
  identity v_l v_m = sum_nu N[l,m]^nu v_nu holds per chirality;
* the mass matrix Z[l,m] = sum_beta A+[l,beta] A-[m,beta] has Z[0,0] = 1 and
  commutes with S and T of the base;
* the generating identity
  sum_{l,m} d_l d_m v+_l v-_m = w sum_beta d_beta [beta]
  (requires a non-degenerate base), which also forces every extended sector
  to occur in some mixed product;
* tr Z counts the intermediate sectors and tr Z Z^t the extended ones;
* when a branching vector of the induced unit object theta is supplied,
  sum_beta A[l,beta] A[m,beta] <= sum_nu theta_nu N[nu l]^m.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebras import BasedAlgebra, validate_based_algebra
from .errors import CertificateError, NondegeneracyRequired, StructureError
from .invariants import twist_sparsity
from .modular import ModularData, TwistData, is_nondegenerate, modular_matrices
from .numerics import max_abs, readonly, scaled_tol
from .rings import FusionRing, quantum_dimensions

DIM_TOL = 1e-6
GEN_TOL = 1e-6


class InductionCertificate:
    """Immutable bundle: base ring + twists, extended algebra with dimension
    vector, branching matrices per chirality, optional theta branching and a
    declared intermediate-sector count."""

    __slots__ = ("ring", "twists", "mm", "aplus", "aminus", "theta", "nm_count")

    def __init__(self, ring: FusionRing, twists: TwistData, mm: BasedAlgebra,
                 aplus, aminus, theta=None, nm_count=None):
        aplus = np.asarray(aplus, dtype=np.int64)
        aminus = np.asarray(aminus, dtype=np.int64)
        shape = (ring.size, mm.size)
        if aplus.shape != shape or aminus.shape != shape:
            raise StructureError(
                f"branching matrices must be {shape}, got {aplus.shape} and {aminus.shape}")
        if np.any(aplus < 0) or np.any(aminus < 0):
            raise StructureError("branching multiplicities must be non-negative")
        if mm.dims is None:
            raise StructureError("extended algebra needs a dimension vector")
        if mm.unit is None:
            raise StructureError("extended algebra needs a unit basis element")
        if theta is not None:
            theta = tuple(int(x) for x in theta)
            if len(theta) != ring.size or any(x < 0 for x in theta):
                raise StructureError("theta branching must be per-base-label non-negative")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "twists", twists)
        object.__setattr__(self, "mm", mm)
        object.__setattr__(self, "aplus", readonly(aplus))
        object.__setattr__(self, "aminus", readonly(aminus))
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "nm_count", None if nm_count is None else int(nm_count))

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("InductionCertificate is immutable")

    def branching(self, sign: str) -> np.ndarray:
        if sign == "+":
            return self.aplus
        if sign == "-":
            return self.aminus
        raise StructureError(f"sign must be '+' or '-', got {sign!r}")


@dataclass(frozen=True)
class HomomorphismReport:
    sign: str
    passed: bool
    violation: tuple[int, int, int, int, int] | None  # (l, m, beta, got, expected)

    def __str__(self) -> str:
        if self.passed:
            return f"homomorphism[{self.sign}]: pass"
        l, m, b, got, want = self.violation
        return (f"homomorphism[{self.sign}]: coefficient of [{b}] in v_{l} v_{m} "
                f"is {got}, expected {want}")


@dataclass(frozen=True)
class GeneratingReport:
    passed: bool
    max_residual: float  # worst |coefficient - w d_beta| / w
    uncovered: tuple[int, ...]  # extended sectors missing from every mixed product


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class CertificateReport:
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.checks if not c.passed)

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __str__(self) -> str:
        return "\n".join(f"{'pass' if c.passed else 'FAIL'} {c.name}: {c.detail}"
                         for c in self.checks)


def _mm_tensor(mm: BasedAlgebra) -> np.ndarray:
    n = mm.size
    t = np.zeros((n, n, n), dtype=np.int64)
    for (a, b, c), m in mm.structure.items():
        t[a, b, c] = m
    return t


def _nn_tensor(ring: FusionRing) -> np.ndarray:
    n = ring.size
    t = np.zeros((n, n, n), dtype=np.int64)
    for (a, b, c), m in ring.fusion.items():
        t[a, b, c] = m
    return t


def verify_homomorphism(cert: InductionCertificate, sign: str) -> HomomorphismReport:
    """Exact integer check of v_l v_m = sum_nu N[l,m]^nu v_nu for one chirality."""
    A = cert.branching(sign)
    got = np.einsum("lb,mc,bcd->lmd", A, A, _mm_tensor(cert.mm))
    want = np.einsum("lmn,nd->lmd", _nn_tensor(cert.ring), A)
    if np.array_equal(got, want):
        return HomomorphismReport(sign=sign, passed=True, violation=None)
    l, m, b = (int(x) for x in np.argwhere(got != want)[0])
    return HomomorphismReport(sign=sign, passed=False,
                              violation=(l, m, b, int(got[l, m, b]), int(want[l, m, b])))


def compute_Z_from_branching(cert: InductionCertificate) -> np.ndarray:
    """Z[l,m] = sum_beta A+[l,beta] A-[m,beta]; the unit entry must be 1."""
    Z = cert.aplus @ cert.aminus.T
    unit = cert.ring.unit
    if Z[unit, unit] != 1:
        raise CertificateError(
            f"Z[0,0] = {int(Z[unit, unit])} != 1: the two inductions share more "
            "than the vacuum at the unit label")
    return Z


def verify_generating(cert: InductionCertificate, *,
                      md: ModularData | None = None,
                      tol: float = GEN_TOL) -> GeneratingReport:
    """Check sum_{l,m} d_l d_m v+_l v-_m = w sum_beta d_beta [beta].

    Raises NondegeneracyRequired on a degenerate base braiding, where the
    identity genuinely fails in general.
    """
    if md is None:
        md = modular_matrices(cert.ring, cert.twists)
    if not is_nondegenerate(cert.ring, cert.twists, md=md):
        raise NondegeneracyRequired("generating identity requires a non-degenerate base")
    d = md.d
    dm = np.array(cert.mm.dims)
    mixed = np.einsum("lb,mc,bcd->lmd", cert.aplus, cert.aminus, _mm_tensor(cert.mm))
    lhs = np.einsum("l,m,lmd->d", d, d, mixed)
    residual = float(np.max(np.abs(lhs - md.w * dm))) / md.w
    uncovered = tuple(int(b) for b in range(cert.mm.size)
                      if not np.any(mixed[:, :, b] > 0))
    return GeneratingReport(passed=(residual <= tol and not uncovered),
                            max_residual=residual, uncovered=uncovered)


def full_report(cert: InductionCertificate, *,
                tol: float | None = None) -> CertificateReport:
    """Run every certificate check independently and aggregate the verdicts.

    Check names: structure, unit_row, dimension, homomorphism_plus,
    homomorphism_minus, z_matrix, modular_invariance, nondegeneracy,
    generating, counts, and theta_bound when theta data is present.
    """
    checks: list[CheckResult] = []
    ring, mm = cert.ring, cert.mm

    mm_report = validate_based_algebra(mm)
    checks.append(CheckResult("structure", mm_report.ok,
                              "extended algebra axioms hold" if mm_report.ok
                              else f"extended algebra invalid: {mm_report.axioms()}"))

    e_nn, e_mm = ring.unit, mm.unit
    unit_ok = True
    for name, A in (("A+", cert.aplus), ("A-", cert.aminus)):
        row = A[e_nn]
        if row[e_mm] != 1 or row.sum() != 1:
            unit_ok = False
    checks.append(CheckResult("unit_row", unit_ok,
                              "unit label induces the extended unit once" if unit_ok
                              else "unit row is not the standard basis vector at the extended unit"))

    dims_nn = quantum_dimensions(ring)
    d = dims_nn.d
    dm = np.array(mm.dims)
    worst = max(max_abs(cert.aplus @ dm - d), max_abs(cert.aminus @ dm - d))
    dim_ok = worst <= DIM_TOL * max(1.0, float(np.max(d)))
    checks.append(CheckResult("dimension", dim_ok,
                              f"max |A d_mm - d_nn| = {worst:.2e}"))

    for sign, name in (("+", "homomorphism_plus"), ("-", "homomorphism_minus")):
        rep = verify_homomorphism(cert, sign)
        checks.append(CheckResult(name, rep.passed, str(rep)))

    Z = cert.aplus @ cert.aminus.T
    z00 = int(Z[e_nn, e_nn])
    checks.append(CheckResult("z_matrix", z00 == 1, f"Z[0,0] = {z00}"))

    md = None
    try:
        md = modular_matrices(ring, cert.twists, dims=dims_nn, tol=tol)
    except Exception as exc:  # vanishing z or twist trouble
        checks.append(CheckResult("modular_invariance", False, f"no modular data: {exc}"))
    if md is not None:
        mask = twist_sparsity(cert.twists)
        t_ok = not np.any(Z[~mask])
        s_res = max_abs(md.S @ Z - Z @ md.S)
        inv_ok = t_ok and s_res <= scaled_tol(tol, ring.size)
        checks.append(CheckResult(
            "modular_invariance", inv_ok,
            f"T-pattern {'exact' if t_ok else 'violated'}, |SZ-ZS| = {s_res:.2e}"))

    nd = md is not None and bool(is_nondegenerate(ring, cert.twists, md=md, tol=tol))
    checks.append(CheckResult("nondegeneracy", nd,
                              "base braiding non-degenerate" if nd
                              else "base braiding degenerate"))
    if nd:
        gen = verify_generating(cert, md=md)
        checks.append(CheckResult(
            "generating", gen.passed,
            f"residual {gen.max_residual:.2e}"
            + (f", uncovered sectors {gen.uncovered}" if gen.uncovered else "")))
    else:
        checks.append(CheckResult("generating", False,
                                  "skipped: NondegeneracyRequired"))

    tr_z = int(np.trace(Z))
    tr_zzt = int(np.sum(Z * Z))
    counts_ok = tr_zzt == mm.size
    detail = f"tr Z = {tr_z}, tr Z Z^t = {tr_zzt} vs {mm.size} extended sectors"
    if cert.nm_count is not None:
        counts_ok = counts_ok and tr_z == cert.nm_count
        detail += f"; declared intermediate count {cert.nm_count}"
    checks.append(CheckResult("counts", counts_ok, detail))

    if cert.theta is not None:
        theta = np.array(cert.theta, dtype=np.int64)
        bound = np.einsum("n,nlm->lm", theta, _nn_tensor(ring))
        ok = True
        detail = "sector-count bound <A_l, A_m> <= <theta l, m> holds"
        for name, A in (("+", cert.aplus), ("-", cert.aminus)):
            gram = A @ A.T
            if np.any(gram > bound):
                l, m = (int(x) for x in np.argwhere(gram > bound)[0])
                ok = False
                detail = (f"<A{name}_{l}, A{name}_{m}> = {int(gram[l, m])} exceeds "
                          f"<theta {l}, {m}> = {int(bound[l, m])}")
                break
        checks.append(CheckResult("theta_bound", ok, detail))

    return CertificateReport(tuple(checks))


def trivial_certificate(ring: FusionRing, twists: TwistData,
                        nm_count: int | None = None) -> InductionCertificate:
    """Both inductions are the identity on the base system (mm = base ring)."""
    dims = quantum_dimensions(ring)
    mm = BasedAlgebra(ring.labels, ring.unit, ring.dual, dict(ring.fusion),
                      dims=tuple(float(x) for x in dims.d))
    eye = np.eye(ring.size, dtype=np.int64)
    return InductionCertificate(ring, twists, mm, eye, eye, nm_count=nm_count)


def conjugation_certificate(ring: FusionRing, twists: TwistData,
                            nm_count: int | None = None) -> InductionCertificate:
    """A+ = identity, A- = the conjugation permutation; a valid certificate
    for commutative base systems, with mass matrix Z = C."""
    dims = quantum_dimensions(ring)
    mm = BasedAlgebra(ring.labels, ring.unit, ring.dual, dict(ring.fusion),
                      dims=tuple(float(x) for x in dims.d))
    eye = np.eye(ring.size, dtype=np.int64)
    return InductionCertificate(ring, twists, mm, eye, ring.conjugation_matrix(),
                                nm_count=nm_count)
