"""Exact integer and rational linear algebra.

Matrices come in two shapes: dense lists of rows, and a sparse
``{(row, col): value}`` mapping plus explicit dimensions (boundary matrices
are stored this way).  Everything is Python ints or Fractions.
"""

from __future__ import annotations

from fractions import Fraction


class IntMatrix:
    """Sparse integer matrix."""

    def __init__(self, nrows, ncols, entries=None):
        self.nrows = nrows
        self.ncols = ncols
        self.entries = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise IndexError(f"entry {(r, c)} outside {nrows}x{ncols}")
            if v:
                self.entries[(r, c)] = int(v)

    @classmethod
    def from_dense(cls, rows):
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        ent = {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v}
        return cls(nrows, ncols, ent)

    def to_dense(self):
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def matmul(self, other):
        by_row = {}
        for (k, c), v in other.entries.items():
            by_row.setdefault(k, []).append((c, v))
        out = {}
        for (r, k), v in self.entries.items():
            for c, w in by_row.get(k, ()):
                out[(r, c)] = out.get((r, c), 0) + v * w
        return IntMatrix(self.nrows, other.ncols, out)

    def is_zero(self):
        return not self.entries


def _as_intmatrix(M):
    if isinstance(M, IntMatrix):
        return M
    return IntMatrix.from_dense(M)


def _to_rowdicts(M):
    rows, cols = {}, {}
    for (r, c), v in M.entries.items():
        rows.setdefault(r, {})[c] = v
        cols.setdefault(c, set()).add(r)
    return rows, cols


def _eliminate(rows, cols, accept, inverse):
    """Greedy sparse elimination; returns number of pivots taken.

    Columns are tried sparsest first, and within the first width that holds
    a usable entry the pivot of least Markowitz cost wins.
    """
    count = 0
    while cols:
        best = _best_pivot(rows, cols, accept)
        if best is None:
            break
        _pivot_out_fast(rows, cols, best[0], best[1], inverse)
        count += 1
    return count


def _best_pivot(rows, cols, accept):
    best, best_cost, width = None, None, None
    for w, c in sorted((len(rs), c) for c, rs in cols.items()):
        if best is not None and w != width:
            break
        for r in cols[c]:
            if not accept(rows[r][c]):
                continue
            cost = (w - 1) * (len(rows[r]) - 1)
            if best_cost is None or cost < best_cost:
                best, best_cost, width = (r, c), cost, w
                if cost == 0:
                    return best
    return best


def _pivot_out_fast(rows, cols, r, c, inverse):
    prow = rows.pop(r)
    for c2 in prow:
        cols[c2].discard(r)
    others = cols.pop(c)
    pinv = inverse(prow[c])
    for r2 in others:
        row2 = rows[r2]
        f = row2.pop(c) * pinv
        for c2, v in prow.items():
            if c2 == c:
                continue
            nv = row2.get(c2, 0) - f * v
            if nv:
                if c2 not in row2:
                    cols[c2].add(r2)
                row2[c2] = nv
            elif c2 in row2:
                del row2[c2]
                cols[c2].discard(r2)
        if not row2:
            del rows[r2]
    for c2 in prow:
        if c2 != c and c2 in cols and not cols[c2]:
            del cols[c2]


def _dense_snf(A):
    """Smith divisors of a dense integer matrix (nonzero ones only)."""
    A = [list(r) for r in A if any(r)]
    divisors = []
    while A:
        ncols = len(A[0])
        # bring an entry of minimal absolute value to (0, 0)
        best = None
        for i, row in enumerate(A):
            for j, v in enumerate(row):
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        A[0], A[i] = A[i], A[0]
        for row in A:
            row[0], row[j] = row[j], row[0]
        while True:
            p = A[0][0]
            moved = False
            for i in range(1, len(A)):
                if A[i][0]:
                    q = A[i][0] // p
                    if q:
                        A[i] = [a - q * b for a, b in zip(A[i], A[0])]
                    if A[i][0]:
                        A[0], A[i] = A[i], A[0]
                        moved = True
                        break
            if moved:
                continue
            for j in range(1, ncols):
                if A[0][j]:
                    q = A[0][j] // p
                    if q:
                        for row in A:
                            row[j] -= q * row[0]
                    if A[0][j]:
                        for row in A:
                            row[0], row[j] = row[j], row[0]
                        moved = True
                        break
            if moved:
                continue
            # pivot must divide everything left, otherwise fold a row in
            bad = next((i for i in range(1, len(A))
                        if any(v % p for v in A[i][1:])), None)
            if bad is None:
                break
            A[0] = [a + b for a, b in zip(A[0], A[bad])]
        divisors.append(abs(A[0][0]))
        A = [row[1:] for row in A[1:]]
        A = [r for r in A if any(r)]
    return sorted(divisors)


def smith_normal_form(M):
    """Nonzero Smith divisors d1 | d2 | ... of an integer matrix."""
    M = _as_intmatrix(M)
    rows, cols = _to_rowdicts(M)
    units = _eliminate(rows, cols, lambda v: v in (1, -1), lambda v: v)
    if not rows:
        return [1] * units
    cl = sorted(cols)
    pos = {c: k for k, c in enumerate(cl)}
    dense = []
    for r in sorted(rows):
        row = [0] * len(cl)
        for c, v in rows[r].items():
            row[pos[c]] = v
        dense.append(row)
    return [1] * units + _dense_snf(dense)


def rational_rank(M):
    """Rank over Q."""
    M = _as_intmatrix(M)
    rows, cols = _to_rowdicts(M)
    rows = {r: {c: Fraction(v) for c, v in d.items()} for r, d in rows.items()}
    return _eliminate(rows, cols, lambda v: v != 0, lambda v: 1 / v)


def rank_dense(rows):
    """Rank over Q of a dense matrix of ints/Fractions."""
    ent = {}
    for i, r in enumerate(rows):
        for j, v in enumerate(r):
            if v:
                ent[(i, j)] = Fraction(v)
    rws, cols = {}, {}
    for (r, c), v in ent.items():
        rws.setdefault(r, {})[c] = v
        cols.setdefault(c, set()).add(r)
    return _eliminate(rws, cols, lambda v: v != 0, lambda v: 1 / v)


def rref(rows):
    """Reduced row echelon form over Q; returns (matrix, pivot columns).

    Pivots are chosen as the first nonzero entry scanning row-major.
    """
    A = [[Fraction(v) for v in r] for r in rows]
    if not A:
        return A, []
    ncols = len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [v * inv for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A, pivots


def kernel_basis(rows, ncols=None):
    """Basis of {x : M x = 0} as lists of Fractions."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -R[i][f]
        basis.append(v)
    return basis


def solve(rows, rhs):
    """One solution x of M x = rhs over Q, or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    R, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = R[i][ncols]
    return x
