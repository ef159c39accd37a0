"""The simplicial inertia stack of [*/G], the nerve quotient BG/G, and
their homology.

Simplices are stored by canonical key (lex-minimal representative tuple) and
only nondegenerate ones are kept, so chains are the normalized complex.
Faces use the bar formulas: drop the first entry, merge adjacent entries,
drop the last entry.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .groups import CapExceeded
from .linalg import (IntMatrix, kernel_basis, rank_dense, rational_rank,
                     smith_normal_form, solve)
from .tuples import Limits, canonicalize, enumerate_levels

DEFAULT_MAX_DEGREE = 4


@dataclass
class SimplicialSetModel:
    """Nondegenerate simplices of a simplicial set up to degree ``cap + 1``."""

    name: str
    cap: int
    simplices: list[list[tuple]]
    face: Callable[[tuple, int], tuple] = field(repr=False)
    is_degenerate: Callable[[tuple], bool] = field(repr=False)
    raw_face: Callable[[tuple, int], tuple] | None = field(default=None, repr=False)
    canon: Callable[[tuple], tuple] | None = field(default=None, repr=False)

    def counts(self):
        return [len(s) for s in self.simplices]

    def faces_of(self, key, n):
        return [self.face(key, i) for i in range(n + 1)]


@dataclass
class ChainComplexZ:
    """Free chain complex: ``boundaries[n]`` maps C_n -> C_(n-1)."""

    dims: list[int]
    boundaries: dict[int, IntMatrix]

    def boundary(self, n):
        if n in self.boundaries:
            return self.boundaries[n]
        rows = self.dims[n - 1] if 0 < n <= len(self.dims) else 0
        cols = self.dims[n] if 0 <= n < len(self.dims) else 0
        return IntMatrix(rows, cols)

    def check_square_zero(self):
        for n in range(2, len(self.dims)):
            if not self.boundary(n - 1).matmul(self.boundary(n)).is_zero():
                raise AssertionError(f"boundary squared nonzero at degree {n}")
        return True


@dataclass
class HomologyGroup:
    degree: int
    betti: int
    torsion: list[int]

    def to_json(self):
        return {"degree": self.degree, "betti": self.betti, "torsion": self.torsion}


@dataclass
class HomologyResult:
    ring: str
    groups: list[HomologyGroup]

    def betti(self):
        return [g.betti for g in self.groups]

    def torsion(self):
        return [g.torsion for g in self.groups]

    def to_json(self):
        return [g.to_json() for g in self.groups]

    def __getitem__(self, n):
        return self.groups[n]


def bar_face(G, tup, i):
    """i-th bar face of a tuple of group elements (raw, not canonicalized)."""
    n = len(tup)
    if i == 0:
        return tup[1:]
    if i == n:
        return tup[:-1]
    return tup[:i - 1] + (G.mul(tup[i - 1], tup[i]),) + tup[i + 1:]


def _bar_model(G, name, cap, levels):
    def canon(t):
        return canonicalize(G, t)[0]

    def face(t, i):
        return canon(bar_face(G, t, i))

    return SimplicialSetModel(
        name=name, cap=cap,
        simplices=[[rep for rep, _ in lvl] for lvl in levels],
        face=face,
        is_degenerate=lambda t: 0 in t,
        raw_face=lambda t, i: bar_face(G, t, i),
        canon=canon,
    )


def inertia_nerve(G, p=None, cap=DEFAULT_MAX_DEGREE, limits=Limits()):
    """n-simplices = classes of commuting n-tuples (p-local if ``p``)."""
    levels = enumerate_levels(G, cap + 1, p, nondegenerate=True, limits=limits)
    label = "inertia" if p is None else f"inertia_p{p}"
    return _bar_model(G, label, cap, levels)


def full_nerve_quotient(G, cap=DEFAULT_MAX_DEGREE, limits=Limits()):
    """n-simplices = orbits of G acting by conjugation on all of G^n."""
    estimate = max(G.order - 1, 1) ** (cap + 1) // G.order
    if estimate > limits.tuple_cap:
        raise CapExceeded(f"about {estimate} simplices in degree {cap + 1} "
                          f"exceeds cap {limits.tuple_cap}", 0)
    levels = enumerate_levels(G, cap + 1, commuting=False, nondegenerate=True,
                              limits=limits)
    return _bar_model(G, "full", cap, levels)


def check_simplicial_identities(S):
    """d_i d_j = d_(j-1) d_i for i < j on every stored simplex."""
    for n, level in enumerate(S.simplices):
        for x in level:
            for j in range(n + 1):
                for i in range(j):
                    a = S.canon(S.raw_face(S.raw_face(x, j), i))
                    b = S.canon(S.raw_face(S.raw_face(x, i), j - 1))
                    if a != b:
                        return False
    return True


def normalized_chains(S):
    """Normalized chain complex: free on nondegenerate simplices."""
    index = [{k: i for i, k in enumerate(level)} for level in S.simplices]
    dims = [len(level) for level in S.simplices]
    boundaries = {}
    for n in range(1, len(S.simplices)):
        ent = {}
        for c, x in enumerate(S.simplices[n]):
            for i in range(n + 1):
                f = S.face(x, i)
                if S.is_degenerate(f):
                    continue
                r = index[n - 1][f]
                ent[(r, c)] = ent.get((r, c), 0) + (-1) ** i
        boundaries[n] = IntMatrix(dims[n - 1], dims[n], ent)
    return ChainComplexZ(dims, boundaries)


def homology(C, ring="Z", max_degree=None):
    """Betti numbers and torsion in degrees 0..max_degree.

    Needs the boundary out of degree ``max_degree + 1``.
    """
    if ring not in ("Z", "Q"):
        raise ValueError(f"unknown coefficient ring {ring!r}")
    top = len(C.dims) - 2 if max_degree is None else max_degree
    if top + 1 >= len(C.dims):
        raise ValueError("chain complex too short for requested degree")
    ranks, divisors = {}, {}
    for n in range(1, top + 2):
        M = C.boundary(n)
        if ring == "Z":
            divisors[n] = smith_normal_form(M)
            ranks[n] = len(divisors[n])
        else:
            ranks[n] = rational_rank(M)
    groups = []
    for n in range(top + 1):
        betti = C.dims[n] - ranks.get(n, 0) - ranks[n + 1]
        torsion = [d for d in divisors.get(n + 1, []) if d > 1] if ring == "Z" else []
        groups.append(HomologyGroup(n, betti, torsion))
    return HomologyResult(ring, groups)


def nerve_homology(G, nerve="inertia", p=None, max_degree=DEFAULT_MAX_DEGREE,
                   ring="Z", limits=Limits()):
    if nerve == "inertia":
        S = inertia_nerve(G, p, max_degree, limits)
    elif nerve == "full":
        if p is not None:
            raise ValueError("the full nerve has no p-local variant")
        S = full_nerve_quotient(G, max_degree, limits)
    else:
        raise ValueError(f"unknown nerve {nerve!r}")
    return homology(normalized_chains(S), ring, max_degree)


# ---- comparison map -------------------------------------------------------

def _dense(M):
    return M.to_dense()


def _homology_basis(d_n, d_n1, dim):
    """Cycle representatives of a basis of H_n over Q, plus boundary columns."""
    rows = _dense(d_n) if d_n.nrows else []
    cycles = kernel_basis(rows, dim) if rows else [
        [Fraction(int(i == j)) for i in range(dim)] for j in range(dim)]
    bcols = [list(col) for col in zip(*_dense(d_n1))] if d_n1.ncols and dim else []
    base_rank = rank_dense(bcols) if bcols else 0
    chosen = []
    current = list(bcols)
    rank = base_rank
    for z in cycles:
        trial = current + [z]
        r = rank_dense(trial)
        if r > rank:
            chosen.append(z)
            current = trial
            rank = r
    return chosen, bcols


def comparison_homology_map(G, cap=2, ring="Q", limits=Limits()):
    """Map induced on homology by commuting-tuple classes -> all-tuple classes.

    Returns per degree the matrix (columns = basis of H_n(inertia), rows =
    basis of H_n(full)) over Q, an ``iso`` flag over Q, and for ``ring="Z"``
    the integral homology of both nerves and of the pair.
    """
    A = inertia_nerve(G, None, cap, limits)
    B = full_nerve_quotient(G, cap, limits)
    CA, CB = normalized_chains(A), normalized_chains(B)
    pos = [{k: i for i, k in enumerate(level)} for level in B.simplices]
    incl = [[pos[n][k] for k in level] for n, level in enumerate(A.simplices)]
    out = []
    for n in range(cap + 1):
        hA, _ = _homology_basis(CA.boundary(n), CA.boundary(n + 1), CA.dims[n])
        hB, bB = _homology_basis(CB.boundary(n), CB.boundary(n + 1), CB.dims[n])
        cols = []
        for z in hA:
            img = [Fraction(0)] * CB.dims[n]
            for i, v in enumerate(z):
                if v:
                    img[incl[n][i]] = v
            basis = hB + bB
            if not basis:
                cols.append([])
                continue
            mat = [list(r) for r in zip(*basis)]
            x = solve(mat, img)
            if x is None:
                raise AssertionError("image of a cycle is not a cycle")
            cols.append(x[:len(hB)])
        matrix = [[cols[j][i] for j in range(len(hA))] for i in range(len(hB))]
        r = rank_dense(matrix) if matrix and hA else 0
        out.append({"degree": n, "dim_inertia": len(hA), "dim_full": len(hB),
                    "matrix": matrix, "iso": r == len(hA) == len(hB)})
    result = {"ring": ring, "degrees": out}
    if ring == "Z":
        result["inertia"] = homology(CA, "Z", cap).to_json()
        result["full"] = homology(CB, "Z", cap).to_json()
        rel = relative_homology(CA, CB, incl, cap)
        result["relative"] = rel.to_json()
        for d in out:
            n = d["degree"]
            # vanishing of H_n and H_(n+1) of the pair forces an isomorphism
            d["iso_Z_sufficient"] = (rel[n].betti == 0 and not rel[n].torsion
                                     and _rel_vanishes(CA, CB, incl, n + 1))
    return result


def _quotient_complex(CA, CB, incl):
    """B/A for a subcomplex spanned by a subset of the basis."""
    keep = []
    for n in range(len(CB.dims)):
        inA = set(incl[n]) if n < len(incl) else set()
        keep.append([i for i in range(CB.dims[n]) if i not in inA])
    newpos = [{old: new for new, old in enumerate(k)} for k in keep]
    bnd = {}
    for n in range(1, len(CB.dims)):
        ent = {}
        for (r, c), v in CB.boundary(n).entries.items():
            if c in newpos[n] and r in newpos[n - 1]:
                ent[(newpos[n - 1][r], newpos[n][c])] = v
        bnd[n] = IntMatrix(len(keep[n - 1]), len(keep[n]), ent)
    return ChainComplexZ([len(k) for k in keep], bnd)


def relative_homology(CA, CB, incl, cap):
    return homology(_quotient_complex(CA, CB, incl), "Z", cap)


def _rel_vanishes(CA, CB, incl, n):
    Q = _quotient_complex(CA, CB, incl)
    if n >= len(Q.dims):
        return False
    if n + 1 >= len(Q.dims):
        # no boundary out of degree n+1 stored; only a zero group is certain
        return Q.dims[n] == 0
    res = homology(Q, "Z", n)
    return res[n].betti == 0 and not res[n].torsion
