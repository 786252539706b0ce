"""Shared test oracles: brute-force axiom checking, classical group tables
with their character degrees, and closed-form expected invariants for the
SU(2) series (identity, D-type blocks/permutations, exceptional blocks).

Everything here is deliberately independent of the package internals: the
checkers iterate definitions directly and the expected matrices come from
the classical classification data, not from the search code under test.
"""
from __future__ import annotations

import itertools

import numpy as np


# ------------------------------------------------------- axiom brute force

def brute_force_axioms(n, unit, dual, mult):
    """Iterate every index tuple of every fusion-ring axiom.

    ``mult`` is a callable (a, b, c) -> int.  Returns the set of violated
    axiom names, using the same names as the library's validator.
    """
    bad = set()
    if dual[unit] != unit or any(dual[dual[a]] != a for a in range(n)):
        bad.add("involution")
    for m in range(n):
        for c in range(n):
            want = 1 if m == c else 0
            if mult(unit, m, c) != want or mult(m, unit, c) != want:
                bad.add("unit")
    for a in range(n):
        for b in range(n):
            if mult(a, b, unit) != (1 if b == dual[a] else 0):
                bad.add("conjugate")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                v = mult(a, b, c)
                if v != mult(dual[a], c, b) or v != mult(c, dual[b], a):
                    bad.add("frobenius")
    for lam in range(n):
        for rho in range(n):
            for sig in range(n):
                for nu in range(n):
                    lhs = sum(mult(lam, mu, nu) * mult(rho, sig, mu) for mu in range(n))
                    rhs = sum(mult(lam, rho, tau) * mult(tau, sig, nu) for tau in range(n))
                    if lhs != rhs:
                        bad.add("associativity")
    return bad


# ------------------------------------------------------------ group tables

def cyclic_table(n):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def dihedral_table(m):
    """Order 2m: indices 0..m-1 are rotations r^i, m..2m-1 are reflections s r^i."""
    def mul(x, y):
        xi, xs = x % m, x >= m
        yi, ys = y % m, y >= m
        if not xs and not ys:
            return (xi + yi) % m
        if not xs and ys:
            return m + (yi - xi) % m
        if xs and not ys:
            return m + (xi + yi) % m
        return (yi - xi) % m
    return [[mul(x, y) for y in range(2 * m)] for x in range(2 * m)]


def symmetric_table(n):
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    def compose(p, q):
        return tuple(p[q[x]] for x in range(n))
    return [[index[compose(p, q)] for q in perms] for p in perms]


def alternating_table():
    perms = [p for p in itertools.permutations(range(4)) if _parity(p) == 0]
    index = {p: i for i, p in enumerate(perms)}
    def compose(p, q):
        return tuple(p[q[x]] for x in range(4))
    return [[index[compose(p, q)] for q in perms] for p in perms]


def _parity(p):
    inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return inv % 2


def quaternion_table():
    """Q8 on {1, -1, i, -i, j, -j, k, -k} encoded as (sign, axis)."""
    names = [(1, "1"), (-1, "1"), (1, "i"), (-1, "i"),
             (1, "j"), (-1, "j"), (1, "k"), (-1, "k")]
    mul_axis = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("j", "1"): (1, "j"), ("k", "1"): (1, "k"),
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    }
    index = {x: i for i, x in enumerate(names)}
    def mul(x, y):
        sx, ax = names[x]
        sy, ay = names[y]
        s, a = mul_axis[(ax, ay)]
        return index[(sx * sy * s, a)]
    return [[mul(x, y) for y in range(8)] for x in range(8)]


def product_table(t1, t2):
    n1, n2 = len(t1), len(t2)
    def enc(a, b):
        return a * n2 + b
    return [[enc(t1[x1][y1], t2[x2][y2]) for y1 in range(n1) for y2 in range(n2)]
            for x1 in range(n1) for x2 in range(n2)]


# classical character degree multisets (sorted descending)
GROUP_FIXTURES = {
    "z1": (cyclic_table(1), (1,)),
    "z2": (cyclic_table(2), (1, 1)),
    "z3": (cyclic_table(3), (1, 1, 1)),
    "z4": (cyclic_table(4), (1, 1, 1, 1)),
    "z5": (cyclic_table(5), (1,) * 5),
    "z6": (cyclic_table(6), (1,) * 6),
    "z8": (cyclic_table(8), (1,) * 8),
    "s3": (symmetric_table(3), (2, 1, 1)),
    "d4": (dihedral_table(4), (2, 1, 1, 1, 1)),
    "d5": (dihedral_table(5), (2, 2, 1, 1)),
    "d6": (dihedral_table(6), (2, 2, 1, 1, 1, 1)),
    "q8": (quaternion_table(), (2, 1, 1, 1, 1)),
    "a4": (alternating_table(), (3, 1, 1, 1)),
    "s4": (symmetric_table(4), (3, 3, 2, 1, 1)),
    "z2xz2": (product_table(cyclic_table(2), cyclic_table(2)), (1,) * 4),
    "z2xs3": (product_table(cyclic_table(2), symmetric_table(3)), (2, 2, 1, 1, 1, 1)),
    "z3xz4": (product_table(cyclic_table(3), cyclic_table(4)), (1,) * 12),
}


def permute_table(table, perm):
    """Relabel a multiplication table by the permutation old -> new."""
    n = len(table)
    inv = [0] * n
    for old, new in enumerate(perm):
        inv[new] = old
    return [[perm[table[inv[x]][inv[y]]] for y in range(n)] for x in range(n)]


# ------------------------------------------- expected SU(2) invariants

def expected_su2_invariants(k):
    """The classification list for level k <= 16 as integer matrices:
    the diagonal invariant for every k, a D-type invariant for even k >= 4
    (block-diagonal when k = 0 mod 4, a permutation when k = 2 mod 4), and
    the exceptional block invariants at k = 10 and 16."""
    n = k + 1
    out = [np.eye(n, dtype=np.int64)]
    if k % 4 == 0 and k >= 4:
        Z = np.zeros((n, n), dtype=np.int64)
        for a in range(0, k // 2, 2):
            for x in (a, k - a):
                for y in (a, k - a):
                    Z[x, y] = 1
        Z[k // 2, k // 2] = 2
        out.append(Z)
    elif k % 4 == 2 and k >= 6:
        Z = np.zeros((n, n), dtype=np.int64)
        for a in range(0, n, 2):
            Z[a, a] = 1
        for a in range(1, n, 2):
            Z[a, k - a] = 1
        out.append(Z)
    if k == 10:
        Z = np.zeros((n, n), dtype=np.int64)
        for block in ((0, 6), (3, 7), (4, 10)):
            for x in block:
                for y in block:
                    Z[x, y] = 1
        out.append(Z)
    if k == 16:
        Z = np.zeros((n, n), dtype=np.int64)
        for block in ((0, 16), (4, 12), (6, 10)):
            for x in block:
                for y in block:
                    Z[x, y] = 1
        Z[8, 8] = 1
        for x in (2, 14):
            Z[x, 8] = 1
            Z[8, x] = 1
        out.append(Z)
    return out
