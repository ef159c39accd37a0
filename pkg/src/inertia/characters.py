"""Exact character tables by the Dixon–Schneider method, and Galois structure.

Central characters ω_χ(C_i) = |C_i| χ(g_i) / χ(1) are the joint eigenvectors
of the class-sum multiplication matrices.  Working mod a prime ℓ ≡ 1 mod
exp(G), each χ(g) mod ℓ is known, and since ρ(g) has eigenvalues in μ_m the
eigenvalue multiplicities (small integers) come out of a DFT mod ℓ; they
then rebuild χ(g) exactly in Q(ζ_exp).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

import numpy as np
from sympy import isprime, primitive_root

from .cyclotomic import Cyclotomic
from .groups import ConjClass, FiniteGroup, class_index, conjugacy_classes, power_class_map
from .modp import FpMatrix, SplittingError, common_eigenvectors
from .tuples import rational_classes

DEFAULT_ORDER_CAP = 2000
PRIME_SEARCH_BOUND = 10**7


class CharacterError(RuntimeError):
    pass


@dataclass
class CharacterTable:
    group: FiniteGroup
    classes: list[ConjClass]
    rows: list[list[Cyclotomic]]
    conductor: int
    prime: int

    @property
    def degrees(self):
        return [int(r[0].to_rational()) for r in self.rows]

    def to_json(self):
        return {"conductor": self.conductor,
                "class_representatives": [c.representative for c in self.classes],
                "class_sizes": [c.size for c in self.classes],
                "degrees": self.degrees,
                "rows": [[v.to_json() for v in r] for r in self.rows]}


def structure_constants(G):
    """a[i][j][k] = #{x in C_i : x^-1 g_k in C_j}."""
    classes = conjugacy_classes(G)
    idx = class_index(G)
    k = len(classes)
    a = np.zeros((k, k, k), dtype=np.int64)
    everything = np.arange(G.order)
    inv_all = G.inv
    for kk, c in enumerate(classes):
        rest = idx[[G.mul(int(inv_all[x]), c.representative) for x in everything]]
        np.add.at(a, (idx, rest, kk), 1)
    return a


def admissible_primes(exponent, order, start=None):
    """Primes ℓ ≡ 1 mod exponent with ℓ > 2√|G|, in increasing order."""
    bound = 2 * isqrt(order) + 1
    ell = (start or bound) + 1
    ell += (1 - ell) % exponent
    while ell < PRIME_SEARCH_BOUND:
        if isprime(ell):
            yield ell
        ell += exponent
    raise CharacterError(f"no admissible prime below {PRIME_SEARCH_BOUND}")


def _row_key(row):
    # degree first, then values in descending coefficient order (trivial first)
    return (row[0].to_rational(), tuple(tuple(-c for c in v.coeffs) for v in row))


def character_table(G, cap=DEFAULT_ORDER_CAP):
    cached = getattr(G, "_char_table", None)
    if cached is not None:
        return cached
    if G.order > cap:
        raise CharacterError(f"group order {G.order} exceeds cap {cap}")
    classes = conjugacy_classes(G)
    k = len(classes)
    e = G.exponent
    if k == 1:
        T = CharacterTable(G, classes, [[Cyclotomic.rational(1, e)]], e, 0)
        G._char_table = T
        return T
    a = structure_constants(G)
    last = None
    for ell in admissible_primes(e, G.order):
        try:
            T = _table_mod(G, classes, a, ell)
            G._char_table = T
            return T
        except SplittingError as exc:
            last = exc
    raise CharacterError(f"eigenspace splitting failed: {last}")


def _table_mod(G, classes, a, ell):
    k = len(classes)
    e = G.exponent
    sizes = [c.size for c in classes]
    idx = class_index(G)
    inv_class = [int(idx[G.inv[c.representative]]) for c in classes]
    mats = [FpMatrix(a[i].tolist(), ell) for i in range(1, k)]
    vecs = common_eigenvectors(mats)
    if len(vecs) != k:
        raise SplittingError("wrong number of joint eigenvectors")
    z = pow(int(primitive_root(ell)), (ell - 1) // e, ell)
    rows = []
    for w in vecs:
        # normalised on the identity class, so w = ω
        S = sum(w[i] * w[inv_class[i]] * pow(sizes[i], -1, ell) for i in range(k)) % ell
        if not S:
            raise SplittingError("degenerate central character")
        d2 = G.order * pow(S, -1, ell) % ell
        d = next((d for d in range(1, isqrt(G.order) + 1) if d * d % ell == d2), None)
        if d is None:
            raise SplittingError("no integral degree")
        chi_mod = [d * w[i] * pow(sizes[i], -1, ell) % ell for i in range(k)]
        rows.append(_lift_row(G, classes, idx, chi_mod, d, e, z, ell))
    rows.sort(key=_row_key)
    return CharacterTable(G, classes, rows, e, ell)


def _lift_row(G, classes, idx, chi_mod, d, e, z, ell):
    out = []
    for c in classes:
        g = c.representative
        m = int(G.element_orders[g])
        zm = pow(z, e // m, ell)
        vals = [chi_mod[int(idx[G.power(g, j)])] for j in range(m)]
        inv_m = pow(m, -1, ell)
        mult = {}
        for r in range(m):
            s = sum(v * pow(zm, (-j * r) % m, ell) for j, v in enumerate(vals)) * inv_m % ell
            if s > d:
                raise SplittingError("eigenvalue multiplicity out of range")
            if s:
                mult[r * (e // m)] = s
        if sum(mult.values()) != d:
            raise SplittingError("multiplicities do not sum to the degree")
        out.append(Cyclotomic.from_exponents(e, mult))
    return out


def inner_product(T, r1, r2):
    G = T.group
    total = Cyclotomic.rational(0, T.conductor)
    for c, x, y in zip(T.classes, r1, r2):
        total = total + x * y.conjugate() * c.size
    return total / G.order


def orthogonality(T):
    """Exact row and column orthogonality, plus Σ d² = |G|."""
    n = len(T.rows)
    rows_ok = all(inner_product(T, T.rows[i], T.rows[j]) == int(i == j)
                  for i in range(n) for j in range(n))
    cols_ok = True
    for a, ca in enumerate(T.classes):
        for b in range(len(T.classes)):
            s = sum((r[a] * r[b].conjugate() for r in T.rows),
                    Cyclotomic.rational(0, T.conductor))
            want = T.group.order // ca.size if a == b else 0
            cols_ok &= s == want
    degrees_ok = sum(d * d for d in T.degrees) == T.group.order
    return {"rows": rows_ok, "columns": cols_ok, "degrees": degrees_ok,
            "ok": rows_ok and cols_ok and degrees_ok}


def _units(N):
    return [k for k in range(1, max(N, 2)) if gcd(k, N) == 1]


def galois_orbits_of_rows(T):
    where = {tuple(r): i for i, r in enumerate(T.rows)}
    parent = list(range(len(T.rows)))

    def find(i):
        while parent[i] != i:
            i = parent[i]
        return i

    for k in _units(T.conductor):
        for i, r in enumerate(T.rows):
            j = where[tuple(v.galois(k) for v in r)]
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    orbits = {}
    for i in range(len(T.rows)):
        orbits.setdefault(find(i), []).append(i)
    orbits = sorted(orbits.values())
    return {"orbits": orbits, "rational_rows": sum(len(o) == 1 for o in orbits)}


def artin_check(G):
    """Galois orbits of rows against rational classes, plus χ(g^k) = σ_k χ(g)."""
    T = character_table(G)
    for k in _units(T.conductor):
        pm = power_class_map(G, k)
        for r_i, row in enumerate(T.rows):
            for c_i, v in enumerate(row):
                if row[pm[c_i]] != v.galois(k):
                    return {"ok": False, "certificate": {"row": r_i, "class": c_i, "k": k}}
    n_orbits = len(galois_orbits_of_rows(T)["orbits"])
    n_rational = len(rational_classes(G))
    ok = n_orbits == n_rational
    out = {"ok": ok, "row_orbits": n_orbits, "rational_classes": n_rational}
    if not ok:
        out["certificate"] = {"row_orbits": n_orbits, "rational_classes": n_rational}
    return out
