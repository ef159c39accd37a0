"""Linear algebra over a prime field F_ℓ, for the modular character method."""

from __future__ import annotations

from math import isqrt

import numpy as np
from sympy import isprime


class SplittingError(RuntimeError):
    """Joint eigenspaces did not split into lines; try another prime."""


class FpMatrix:
    def __init__(self, rows, modulus):
        if not isprime(modulus):
            raise ValueError(f"modulus {modulus} is not prime")
        self.modulus = modulus
        self.rows = [[int(v) % modulus for v in r] for r in rows]

    @property
    def n(self):
        return len(self.rows)

    def apply(self, v):
        ell = self.modulus
        return [sum(a * b for a, b in zip(row, v)) % ell for row in self.rows]


def nullspace_mod(rows, ncols, ell):
    """Basis of the right kernel of ``rows`` over F_ℓ (reduced echelon)."""
    A = [[v % ell for v in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, ell)
        A[r] = [v * inv % ell for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(a - f * b) % ell for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    basis = []
    for f in (c for c in range(ncols) if c not in pivots):
        v = [0] * ncols
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = -A[i][f] % ell
        basis.append(v)
    return basis


def _normalize(v, ell):
    lead = next(x for x in v if x)
    inv = pow(lead, -1, ell)
    return [x * inv % ell for x in v]


def _restrict(M, basis, ell):
    """Matrix of M on span(basis) (assumed invariant), in that basis.

    Returned so that column j holds the coordinates of M·basis[j].
    """
    k = len(basis)
    n = len(basis[0])
    images = [M.apply(b) for b in basis]
    # solve Σ_i c_i basis[i] = image, all images at once
    aug = [[basis[i][r] for i in range(k)] + [img[r] for img in images]
           for r in range(n)]
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, n) if aug[i][c]), None)
        if piv is None:
            raise SplittingError("basis is not independent")
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][c], -1, ell)
        aug[r] = [v * inv % ell for v in aug[r]]
        for i in range(n):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(a - f * b) % ell for a, b in zip(aug[i], aug[r])]
        r += 1
    return [[aug[i][k + j] for j in range(k)] for i in range(k)]


def charpoly_mod(R, ell):
    """Characteristic polynomial of a square matrix over F_ℓ, low degree first.

    Hessenberg reduction by similarity, then the usual recurrence.
    """
    n = len(R)
    H = [[v % ell for v in r] for r in R]
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if H[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            H[piv], H[j + 1] = H[j + 1], H[piv]
            for r in H:
                r[piv], r[j + 1] = r[j + 1], r[piv]
        inv = pow(H[j + 1][j], -1, ell)
        for r in range(j + 2, n):
            u = H[r][j] * inv % ell
            if not u:
                continue
            H[r] = [(a - u * b) % ell for a, b in zip(H[r], H[j + 1])]
            for row in H:
                row[j + 1] = (row[j + 1] + u * row[r]) % ell
    polys = [[1]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        # (x - h) * prev
        cur = [0] + prev[:]
        for i, c in enumerate(prev):
            cur[i] = (cur[i] - H[m - 1][m - 1] * c) % ell
        prod = 1
        for i in range(1, m):
            prod = prod * H[m - i][m - i - 1] % ell
            coef = H[m - 1 - i][m - 1] * prod % ell
            if coef:
                for t, c in enumerate(polys[m - 1 - i]):
                    cur[t] = (cur[t] - coef * c) % ell
        polys.append(cur)
    return polys[n]


def roots_mod(poly, ell):
    """All roots in F_ℓ of a polynomial given low degree first."""
    xs = np.arange(ell, dtype=object if ell > 3 * 10**9 else np.int64)
    acc = np.zeros(ell, dtype=xs.dtype)
    for c in reversed(poly):
        acc = (acc * xs + c) % ell
    return np.flatnonzero(acc == 0).tolist()


def _eigen_split(M, basis, ell):
    """Split span(basis) into eigenspaces of M; returns list of bases."""
    if len(basis) == 1:
        return [basis]
    R = _restrict(M, basis, ell)
    k = len(basis)
    pieces = []
    total = 0
    for lam in roots_mod(charpoly_mod(R, ell), ell):
        shifted = [[(R[i][j] - (lam if i == j else 0)) % ell for j in range(k)]
                   for i in range(k)]
        null = nullspace_mod(shifted, k, ell)
        if not null:
            continue
        sub = [[sum(c * basis[i][r] for i, c in enumerate(vec)) % ell
                for r in range(len(basis[0]))] for vec in null]
        pieces.append(sub)
        total += len(null)
        if total == k:
            break
    if total != k:
        # not diagonalisable over F_ℓ
        raise SplittingError("matrix does not split over this prime")
    return pieces


def common_eigenvectors(mats, modulus=None):
    """Joint eigenvectors of pairwise commuting matrices over F_ℓ.

    Each is normalised to have first nonzero coordinate 1; output sorted.
    Raises :class:`SplittingError` when some joint eigenspace has dimension
    above one.
    """
    if not mats:
        raise SplittingError("no matrices given")
    ell = modulus or mats[0].modulus
    n = mats[0].n
    spaces = [[[int(i == j) for j in range(n)] for i in range(n)]]
    for M in mats:
        new = []
        for sp in spaces:
            new.extend(_eigen_split(M, sp, ell))
        spaces = new
        if all(len(sp) == 1 for sp in spaces):
            break
    if any(len(sp) != 1 for sp in spaces):
        raise SplittingError("a joint eigenspace has dimension > 1")
    return sorted(_normalize(sp[0], ell) for sp in spaces)


def discrete_log(base, value, modulus, order=None):
    """e with base^e ≡ value (mod ℓ), 0 <= e < order; baby-step giant-step."""
    if order is None:
        order = multiplicative_order(base, modulus)
    value %= modulus
    m = isqrt(order - 1) + 1 if order > 1 else 1
    baby = {}
    x = 1
    for j in range(m):
        baby.setdefault(x, j)
        x = x * base % modulus
    giant = pow(base, -m, modulus)
    y = value
    for i in range(m + 1):
        if y in baby:
            e = i * m + baby[y]
            if e < order:
                return e
        y = y * giant % modulus
    raise ValueError(f"{value} is not a power of {base} mod {modulus}")


def multiplicative_order(a, ell):
    a %= ell
    if a == 0:
        raise ValueError("zero has no multiplicative order")
    k, x = 1, a
    while x != 1:
        x = x * a % ell
        k += 1
    return k
