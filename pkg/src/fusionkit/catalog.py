"""Built-in braided fusion-ring fixtures.

Families:

* ``su2_level(k)`` -- the level-k SU(2) WZW ring on labels a = 0..k with
  truncated Clebsch-Gordan fusion and twist exponents a(a+2)/(4(k+2)).
* ``cyclic_model(n, q)`` -- pointed Z_n fusion with the quadratic twist
  q j^2 / (2n).  No validity or non-degeneracy claim is made for every (n, q):
  for odd n the exponents are conjugation-symmetric only when q is even, and
  callers probe degeneracy themselves (q = 0 gives the fully degenerate case).
* ``named_model(name)`` -- trivial, fibonacci, ising.

All constructors are pure; the registry drives both the CLI ``gen`` command
and the test corpus.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import StructureError
from .modular import TwistData
from .rings import FusionRing


@dataclass(frozen=True)
class ModelSpec:
    """Address of a built-in model."""

    family: str  # su2 | cyclic | named
    level: int | None = None
    order: int | None = None
    q: int | None = None
    name: str | None = None


def su2_level(k: int) -> tuple[FusionRing, TwistData]:
    """SU(2)_k data: labels 0..k, self-dual, N[a,b]^c = 1 on the truncated
    Clebsch-Gordan range, h_a = a(a+2)/(4(k+2))."""
    if k < 1:
        raise StructureError(f"level must be >= 1, got {k}")
    labels = [str(a) for a in range(k + 1)]
    fusion = {}
    for a in range(k + 1):
        for b in range(k + 1):
            top = min(a + b, 2 * k - a - b)
            for c in range(abs(a - b), top + 1, 2):
                fusion[(a, b, c)] = 1
    ring = FusionRing(labels, 0, list(range(k + 1)), fusion)
    twists = TwistData.of(Fraction(a * (a + 2), 4 * (k + 2)) for a in range(k + 1))
    return ring, twists


def su2_s_closed_form(k: int) -> np.ndarray:
    """Independent S-matrix oracle: S[a,b] = sqrt(2/(k+2)) sin(pi (a+1)(b+1)/(k+2))."""
    if k < 1:
        raise StructureError(f"level must be >= 1, got {k}")
    n = k + 2
    S = np.zeros((k + 1, k + 1), dtype=complex)
    for a in range(k + 1):
        for b in range(k + 1):
            S[a, b] = math.sqrt(2.0 / n) * math.sin(math.pi * (a + 1) * (b + 1) / n)
    return S


def cyclic_model(n: int, q: int = 0) -> tuple[FusionRing, TwistData]:
    """Z_n fusion (addition mod n), dual j -> -j, h_j = q j^2 / (2n) mod 1."""
    if n < 1:
        raise StructureError(f"order must be >= 1, got {n}")
    labels = [str(j) for j in range(n)]
    fusion = {(a, b, (a + b) % n): 1 for a in range(n) for b in range(n)}
    ring = FusionRing(labels, 0, [(-j) % n for j in range(n)], fusion)
    twists = TwistData.of(Fraction(q * j * j, 2 * n) for j in range(n))
    return ring, twists


def named_model(name: str) -> tuple[FusionRing, TwistData]:
    """Small named fixtures: trivial, fibonacci, ising."""
    if name == "trivial":
        return cyclic_model(1, 0)
    if name == "fibonacci":
        labels = ["0", "tau"]
        fusion = {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1,
                  (1, 1, 0): 1, (1, 1, 1): 1}
        ring = FusionRing(labels, 0, [0, 1], fusion)
        return ring, TwistData.of([Fraction(0), Fraction(2, 5)])
    if name == "ising":
        labels = ["0", "sigma", "psi"]
        fusion = {(0, 0, 0): 1, (0, 1, 1): 1, (0, 2, 2): 1,
                  (1, 0, 1): 1, (2, 0, 2): 1,
                  (1, 1, 0): 1, (1, 1, 2): 1,
                  (1, 2, 1): 1, (2, 1, 1): 1,
                  (2, 2, 0): 1}
        ring = FusionRing(labels, 0, [0, 1, 2], fusion)
        return ring, TwistData.of([Fraction(0), Fraction(1, 16), Fraction(1, 2)])
    raise StructureError(f"unknown named model {name!r}")


def build_model(spec: ModelSpec) -> tuple[FusionRing, TwistData]:
    if spec.family == "su2":
        if spec.level is None:
            raise StructureError("su2 model needs a level")
        return su2_level(spec.level)
    if spec.family == "cyclic":
        if spec.order is None:
            raise StructureError("cyclic model needs an order")
        return cyclic_model(spec.order, spec.q or 0)
    if spec.family == "named":
        if spec.name is None:
            raise StructureError("named model needs a name")
        return named_model(spec.name)
    raise StructureError(f"unknown model family {spec.family!r}")


# model corpus used by tests and the documentation; every entry has valid
# twist data (cyclic models with odd order appear only with even q)
CATALOG: dict[str, ModelSpec] = {
    **{f"su2_{k}": ModelSpec("su2", level=k) for k in range(1, 17)},
    "trivial": ModelSpec("named", name="trivial"),
    "fibonacci": ModelSpec("named", name="fibonacci"),
    "ising": ModelSpec("named", name="ising"),
    "semion": ModelSpec("cyclic", order=2, q=1),
    "fermion": ModelSpec("cyclic", order=2, q=2),
    "rep_z2": ModelSpec("cyclic", order=2, q=0),
    "rep_z3": ModelSpec("cyclic", order=3, q=0),
    "rep_z4": ModelSpec("cyclic", order=4, q=0),
    "rep_z5": ModelSpec("cyclic", order=5, q=0),
    "rep_z6": ModelSpec("cyclic", order=6, q=0),
    "cyclic_3_2": ModelSpec("cyclic", order=3, q=2),
    "cyclic_4_1": ModelSpec("cyclic", order=4, q=1),
    "cyclic_4_2": ModelSpec("cyclic", order=4, q=2),
}


def catalog_models():
    """Yield (name, ring, twists) for every catalog entry."""
    for name, spec in CATALOG.items():
        ring, twists = build_model(spec)
        yield name, ring, twists
