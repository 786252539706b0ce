"""Modular data of a braided fusion ring: Y, S, T, central charge, degeneracy.

Given twist exponents h with w_l = e^{2 pi i h_l}, the key objects are

    Y[m,n]  = sum_l (w_m w_n / w_l) N[m,n]^l d_l
    z       = sum_l d_l^2 w_l            (Gauss sum; must be nonzero)
    c       = 4 arg(z) / pi  (mod 8)
    S       = Y / |z|
    T       = e^{-pi i c / 12} diag(w_l)

S and T always obey the partial relations TSTST = S, CTC = T, CSC = S,
T*T = 1.  The braiding is non-degenerate exactly when the weight vectors
y^l = Y[l,:] of the non-unit labels are orthogonal to y^0; then S is unitary,
(ST)^3 = S^2 = C, |z|^2 = w, and S diagonalizes the fusion rules.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

import numpy as np

from .errors import NumericError, TwistError, VanishingZError, VerlindeError
from .numerics import (max_abs, mod1, phase_vector, readonly, scaled_tol,
                       unit_phase)
from .rings import DimensionVector, FusionRing, quantum_dimensions


@dataclass(frozen=True)
class TwistData:
    """Exact rational twist exponents, canonicalized into [0, 1)."""

    h: tuple[Fraction, ...]

    @classmethod
    def of(cls, values) -> "TwistData":
        return cls(tuple(mod1(Fraction(v)) for v in values))

    def __post_init__(self):
        object.__setattr__(self, "h", tuple(mod1(Fraction(v)) for v in self.h))

    def phases(self) -> np.ndarray:
        return phase_vector(self.h)

    def __len__(self) -> int:
        return len(self.h)


def validate_twists(ring: FusionRing, twists: TwistData) -> None:
    """Raise TwistError unless h[unit] = 0 and h is conjugation-symmetric."""
    if len(twists) != ring.size:
        raise TwistError(f"{len(twists)} twist exponents for {ring.size} labels")
    if twists.h[ring.unit] != 0:
        raise TwistError(f"unit twist must vanish, got {twists.h[ring.unit]}")
    for lam, lbar in enumerate(ring.dual):
        if twists.h[lam] != twists.h[lbar]:
            raise TwistError(
                f"twist not conjugation-symmetric: h[{lam}] = {twists.h[lam]} "
                f"but h[{lbar}] = {twists.h[lbar]}")


@dataclass(frozen=True)
class ModularData:
    """Y, S, T and friends for one braided fusion ring.

    ``t_exponents`` holds the diagonal of T as exact rationals
    t_l = h_l - c/24 (mod 1), so phase equality stays decidable.
    """

    ring: FusionRing
    twists: TwistData
    d: np.ndarray
    w: float
    Y: np.ndarray
    S: np.ndarray
    T: np.ndarray
    t_exponents: tuple[Fraction, ...]
    z: complex
    c: Fraction
    C: np.ndarray

    def __post_init__(self):
        for name in ("d", "Y", "S", "T", "C"):
            object.__setattr__(self, name, readonly(np.asarray(getattr(self, name))))

    @property
    def size(self) -> int:
        return self.ring.size


@dataclass(frozen=True)
class ResidualReport:
    """Max-norm residuals of a family of matrix identities."""

    residuals: Mapping[str, float]
    tol: float

    @property
    def passed(self) -> bool:
        return all(r <= self.tol for r in self.residuals.values())

    @property
    def worst(self) -> float:
        return max(self.residuals.values(), default=0.0)

    def __str__(self) -> str:
        body = ", ".join(f"{k}: {v:.3e}" for k, v in self.residuals.items())
        status = "pass" if self.passed else "FAIL"
        return f"[{status} @ tol {self.tol:.1e}] {body}"


@dataclass(frozen=True)
class DegeneracyReport:
    """Outcome of the non-degeneracy test, with degenerate witness labels."""

    nondegenerate: bool
    witnesses: tuple[int, ...]
    max_cross: float  # largest |<y^l, y^0>| / w over l != 0

    def __bool__(self) -> bool:
        return self.nondegenerate

    @property
    def witness(self) -> int | None:
        return self.witnesses[0] if self.witnesses else None


@dataclass(frozen=True)
class MonodromySpectra:
    """Exact monodromy eigenvalue exponents per label pair.

    ``pairs[(m, n)]`` lists h_l - h_m - h_n (mod 1) once per fusion channel,
    i.e. with multiplicity N[m,n]^l; the eigenvalue itself is
    e^{2 pi i (h_l - h_m - h_n)}.  A label is degenerate when all its
    exponents against every partner vanish.
    """

    pairs: Mapping[tuple[int, int], tuple[Fraction, ...]]
    degenerate_labels: tuple[int, ...]

    def eigenvalues(self, m: int, n: int) -> tuple[complex, ...]:
        return tuple(unit_phase(t) for t in self.pairs[(m, n)])


def y_matrix(ring: FusionRing, twists: TwistData, *,
             dims: DimensionVector | None = None) -> np.ndarray:
    """Y[m,n] = sum_l (w_m w_n / w_l) N[m,n]^l d_l from exact twist exponents."""
    validate_twists(ring, twists)
    d = (dims or quantum_dimensions(ring)).d
    n = ring.size
    h = twists.h
    Y = np.zeros((n, n), dtype=complex)
    for (a, b, c), m in ring.fusion.items():
        Y[a, b] += unit_phase(h[a] + h[b] - h[c]) * (m * d[c])
    return Y


def _central_charge(z: complex, twists: TwistData, tol: float) -> Fraction:
    """Snap 4 arg(z)/pi to an exact rational representative in [0, 8).

    The twists are roots of unity, so for the models handled here z has a
    rational argument in units of pi/4; the denominator is bounded in terms
    of the common twist denominator.
    """
    c_float = (4.0 / math.pi) * math.atan2(z.imag, z.real) % 8.0
    den = 1
    for t in twists.h:
        den = den * t.denominator // math.gcd(den, t.denominator)
    limit = max(240, 24 * den)
    cand = Fraction(c_float).limit_denominator(limit)
    cand = Fraction(cand.numerator % (8 * cand.denominator), cand.denominator)
    # verify against the unit phase rather than against the float estimate
    expected = unit_phase(Fraction(cand, 8))
    actual = z / abs(z)
    if abs(expected - actual) > max(tol, 1e-8):
        raise NumericError(
            f"central charge 4 arg(z)/pi = {c_float!r} not resolved as a rational "
            f"with denominator <= {limit}")
    return cand


def modular_matrices(ring: FusionRing, twists: TwistData, *,
                     dims: DimensionVector | None = None,
                     tol: float | None = None) -> ModularData:
    """Assemble the full modular data; raises VanishingZError when z = 0."""
    dims = dims or quantum_dimensions(ring)
    d = dims.d
    Y = y_matrix(ring, twists, dims=dims)
    omega = twists.phases()
    z = complex(np.sum(d * d * omega))
    eps = scaled_tol(tol, ring.size)
    if abs(z) <= eps * dims.w:
        raise VanishingZError(f"|z| = {abs(z):.3e} vanishes; S undefined")
    c = _central_charge(z, twists, eps)
    t_exps = tuple(mod1(h - Fraction(c, 24)) for h in twists.h)
    T = np.diag(phase_vector(t_exps))
    S = Y / abs(z)
    return ModularData(ring=ring, twists=twists, d=d, w=dims.w, Y=Y, S=S, T=T,
                       t_exponents=t_exps, z=z, c=c, C=ring.conjugation_matrix())


def check_partial_verlinde(md: ModularData, tol: float | None = None) -> ResidualReport:
    """Residuals of TSTST = S, CTC = T, CSC = S, T*T = 1."""
    S, T, C = md.S, md.T, md.C
    eye = np.eye(md.size)
    res = {
        "TSTST-S": max_abs(T @ S @ T @ S @ T - S),
        "CTC-T": max_abs(C @ T @ C - T),
        "CSC-S": max_abs(C @ S @ C - S),
        "T*T-1": max_abs(T.conj().T @ T - eye),
    }
    return ResidualReport(res, scaled_tol(tol, md.size))


def is_nondegenerate(ring: FusionRing, twists: TwistData, *,
                     md: ModularData | None = None,
                     tol: float | None = None) -> DegeneracyReport:
    """Test <y^l, y^0> = delta_{l,0} w; degenerate labels are the witnesses.

    Needs only Y, d and w, so it also covers models with a vanishing Gauss
    sum.  A label l is degenerate exactly when y^l stays parallel to y^0.
    Equivalent characterizations (S unitary; |z|^2 = w; trivial monodromy of
    the witness against everything) are exercised by the test suite.
    """
    if md is not None:
        Y, d, w = md.Y, md.d, md.w
    else:
        dims = quantum_dimensions(ring)
        Y, d, w = y_matrix(ring, twists, dims=dims), dims.d, dims.w
    n = ring.size
    gram0 = Y.conj() @ d  # <y^l, y^0> for each l
    eps = scaled_tol(tol, n)
    bad = tuple(int(l) for l in range(n)
                if l != ring.unit and abs(gram0[l]) > eps * w)
    cross = max((abs(gram0[l]) / w for l in range(n) if l != ring.unit),
                default=0.0)
    return DegeneracyReport(nondegenerate=not bad, witnesses=bad, max_cross=cross)


def verlinde_fusion(md: ModularData, *, tol: float = 1e-6) -> tuple[np.ndarray, float]:
    """Recover the fusion tensor from S via the Verlinde formula.

    Returns the rounded integer tensor and the worst pre-rounding deviation.
    Raises VerlindeError when the deviation exceeds ``tol``, an entry rounds
    negative, or the result disagrees with the ring's own tensor.
    """
    S = md.S
    weights = 1.0 / S[md.ring.unit, :]
    raw = np.einsum("lr,mr,nr,r->lmn", S, S, S.conj(), weights)
    if max_abs(raw.imag) > tol:
        raise VerlindeError(f"Verlinde sum has imaginary part {max_abs(raw.imag):.3e}")
    rounded = np.rint(raw.real).astype(np.int64)
    deviation = float(np.max(np.abs(raw.real - rounded)))
    if deviation > tol:
        raise VerlindeError(f"Verlinde sum is {deviation:.3e} from integers")
    if np.any(rounded < 0):
        raise VerlindeError("Verlinde sum produced a negative multiplicity")
    n = md.size
    ring_tensor = np.zeros((n, n, n), dtype=np.int64)
    for (a, b, c), m in md.ring.fusion.items():
        ring_tensor[a, b, c] = m
    if not np.array_equal(rounded, ring_tensor):
        raise VerlindeError("Verlinde tensor disagrees with the ring's fusion tensor")
    return rounded, deviation


def sl2z_relations(md: ModularData, tol: float | None = None) -> ResidualReport:
    """Residuals of the full modular algebra, valid iff non-degenerate."""
    S, T, C = md.S, md.T, md.C
    eye = np.eye(md.size)
    ST = S @ T
    res = {
        "S*S-1": max_abs(S.conj().T @ S - eye),
        "(ST)^3-S^2": max_abs(ST @ ST @ ST - S @ S),
        "S^2-C": max_abs(S @ S - C),
        "CTC-T": max_abs(C @ T @ C - T),
    }
    return ResidualReport(res, scaled_tol(tol, md.size))


def monodromy_spectra(ring: FusionRing, twists: TwistData) -> MonodromySpectra:
    """Monodromy eigenvalue exponents h_l - h_m - h_n per channel, exactly."""
    validate_twists(ring, twists)
    n = ring.size
    h = twists.h
    pairs: dict[tuple[int, int], list[Fraction]] = {(m, nn): [] for m in range(n) for nn in range(n)}
    for (a, b, c), mult in ring.fusion.items():
        t = mod1(h[c] - h[a] - h[b])
        pairs[(a, b)].extend([t] * mult)
    frozen = {k: tuple(sorted(v)) for k, v in pairs.items()}
    degenerate = tuple(
        m for m in range(n)
        if all(t == 0 for nn in range(n) for t in frozen[(m, nn)]))
    # the unit label always has trivial monodromy; report only true witnesses
    degenerate = tuple(m for m in degenerate if m != ring.unit)
    return MonodromySpectra(pairs=frozen, degenerate_labels=degenerate)


def weight_vectors(md: ModularData) -> np.ndarray:
    """Rows are y^l with components y^l_m = Y[l,m]."""
    return md.Y


def statistics_characters(md: ModularData) -> np.ndarray:
    """chi[l, m] = Y[l,m] / d_l; the N_m-eigenvalue of the weight vector y^l."""
    return md.Y / md.d[:, None]
