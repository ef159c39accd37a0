"""Finite groups acting on finite simplicial complexes.

All fixed-point and quotient work happens on the barycentric subdivision,
whose simplices are flags σ0 < σ1 < ... of simplices of X.  A group element
maps a flag to a flag of the same dimensions, so the action preserves the
vertex order and any flag it stabilizes it fixes pointwise.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path

import numpy as np

from .groups import FiniteGroup, GroupError, load_group
from .linalg import IntMatrix, kernel_basis, rank_dense, rational_rank
from .simplicial import ChainComplexZ, HomologyResult, bar_face, homology
from .tuples import Limits, enumerate_levels, tuple_classes


class GComplexError(ValueError):
    pass


class QuotientMismatch(AssertionError):
    """The invariants route and the quotient route disagree."""


@dataclass
class GComplex:
    group: FiniteGroup
    vertex_count: int
    maximal_simplices: list[tuple[int, ...]]
    generator_vertex_maps: list[tuple[int, ...]]
    simplices: list[tuple[int, ...]] = field(init=False)
    vertex_action: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        V = self.vertex_count
        faces = set()
        for s in self.maximal_simplices:
            s = tuple(sorted(set(s)))
            if not s:
                raise GComplexError("empty maximal simplex")
            if s[0] < 0 or s[-1] >= V:
                raise GComplexError(f"vertex index out of range in {list(s)}")
            for k in range(1, len(s) + 1):
                faces.update(combinations(s, k))
        self.simplices = sorted(faces, key=lambda t: (len(t), t))
        simplex_set = set(self.simplices)
        G = self.group
        if len(self.generator_vertex_maps) != len(G.generator_indices):
            raise GComplexError(
                f"{len(self.generator_vertex_maps)} vertex maps for "
                f"{len(G.generator_indices)} group generators")
        gens = []
        for m in self.generator_vertex_maps:
            m = tuple(int(v) for v in m)
            if sorted(m) != list(range(V)):
                raise GComplexError(f"vertex map {list(m)} is not a bijection")
            for s in self.simplices:
                if tuple(sorted(m[v] for v in s)) not in simplex_set:
                    raise GComplexError(f"vertex map {list(m)} is not simplicial")
            gens.append(np.array(m, dtype=np.int64))
        act = np.full((G.order, V), -1, dtype=np.int64)
        act[0] = np.arange(V)
        queue = [0]
        for x in queue:
            for s, m in zip(G.generator_indices, gens):
                y = G.mul(x, s)
                img = act[x][m]
                if act[y][0] < 0:
                    act[y] = img
                    queue.append(y)
                elif not np.array_equal(act[y], img):
                    raise GComplexError("vertex maps do not respect the group relations")
        if len(queue) != G.order:
            raise GComplexError("group generators do not reach every element")
        self.vertex_action = act


def load_gcomplex(source, group=None):
    """Read a G-complex from a path or dict; ``group`` overrides the file's."""
    base = Path(".")
    if isinstance(source, (str, Path)):
        path = Path(source)
        try:
            data = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise GComplexError(f"cannot read complex file {source}: {exc}") from exc
        base = path.parent
    else:
        data = source
    for key in ("vertices", "maximal_simplices", "generator_vertex_maps"):
        if key not in data:
            raise GComplexError(f"complex file lacks {key!r}")
    if group is None:
        spec = data.get("group")
        if spec is None:
            raise GComplexError("complex file lacks 'group'")
        if isinstance(spec, str):
            spec = base / spec
        try:
            group = load_group(spec)
        except GroupError as exc:
            raise GComplexError(str(exc)) from exc
    return GComplex(group, int(data["vertices"]),
                    [tuple(s) for s in data["maximal_simplices"]],
                    [tuple(m) for m in data["generator_vertex_maps"]])


@dataclass
class SubdividedModel:
    """Barycentric subdivision: vertices are simplex ids of X, simplices are flags."""

    X: GComplex
    flags: list[tuple[int, ...]]
    simplex_action: np.ndarray = field(repr=False)
    below: list[set[int]] = field(repr=False)

    @classmethod
    def of(cls, X):
        sid = {s: i for i, s in enumerate(X.simplices)}
        G = X.group
        act = np.empty((G.order, len(X.simplices)), dtype=np.int64)
        for h in range(G.order):
            m = X.vertex_action[h]
            for i, s in enumerate(X.simplices):
                act[h, i] = sid[tuple(sorted(int(m[v]) for v in s))]
        sets = [set(s) for s in X.simplices]
        below = [{j for j in range(len(sets)) if j != i and sets[j] < sets[i]}
                 for i in range(len(sets))]
        flags = []

        def grow(flag):
            flags.append(tuple(flag))
            top = flag[-1]
            for j in range(len(sets)):
                if top in below[j]:
                    grow(flag + [j])

        for i in range(len(sets)):
            grow([i])
        flags.sort(key=lambda f: (len(f), f))
        return cls(X, flags, act, below)

    def invariant_simplices(self, tup):
        ids = np.arange(self.simplex_action.shape[1])
        ok = np.ones(len(ids), dtype=bool)
        for g in tup:
            ok &= self.simplex_action[g] == ids
        return set(np.flatnonzero(ok).tolist())

    def stabilizer_masks(self):
        ids = np.arange(self.simplex_action.shape[1])
        return (self.simplex_action == ids[None, :]).T


def fixed_subcomplex(model, tup):
    """Flags of Sd X all of whose vertices are invariant under every g_i."""
    inv = model.invariant_simplices(tup)
    return [f for f in model.flags if all(s in inv for s in f)]


def euler_characteristic(flags):
    return sum((-1) ** (len(f) - 1) for f in flags)


# ---- quotients -------------------------------------------------------------

@dataclass
class OrderedAction:
    """Ordered simplicial complex with a group acting on vertex labels."""

    simplices: list[tuple]
    act: dict  # h -> {vertex: vertex}
    members: list[int]

    def image(self, h, s):
        return tuple(self.act[h][v] for v in s)

    def is_regular(self):
        """Every element maps simplices order-preservingly and fixes
        pointwise any simplex it stabilizes."""
        sset = set(self.simplices)
        for h in self.members:
            for s in self.simplices:
                img = self.image(h, s)
                if img not in sset:
                    return False
                if set(img) == set(s) and img != s:
                    return False
        return True

    def subdivide(self):
        """Barycentric subdivision with the induced (regular) action."""
        sid = {s: i for i, s in enumerate(self.simplices)}
        sets = [set(s) for s in self.simplices]
        order = sorted(range(len(sets)), key=lambda i: (len(sets[i]), self.simplices[i]))
        flags = []

        def grow(flag):
            flags.append(tuple(flag))
            top = sets[flag[-1]]
            for j in order:
                if top < sets[j]:
                    grow(flag + [j])

        for i in order:
            grow([i])
        act = {}
        for h in self.members:
            act[h] = {i: sid[tuple(sorted(self.act[h][v] for v in s))]
                      for i, s in enumerate(self.simplices)}
        return OrderedAction(sorted(flags, key=lambda f: (len(f), f)), act, self.members)


def _by_dim(simplices):
    out = {}
    for s in simplices:
        out.setdefault(len(s) - 1, []).append(s)
    top = max(out) if out else -1
    return [sorted(out.get(d, [])) for d in range(top + 1)]


def _chain_complex(levels):
    index = [{s: i for i, s in enumerate(lv)} for lv in levels]
    bnd = {}
    for n in range(1, len(levels)):
        ent = {}
        for c, s in enumerate(levels[n]):
            for i in range(len(s)):
                r = index[n - 1][s[:i] + s[i + 1:]]
                ent[(r, c)] = ent.get((r, c), 0) + (-1) ** i
        bnd[n] = IntMatrix(len(levels[n - 1]), len(levels[n]), ent)
    return ChainComplexZ([len(lv) for lv in levels], bnd)


def _betti_q(C):
    if not C.dims:
        return []
    C = ChainComplexZ(C.dims + [0], C.boundaries)
    return homology(C, "Q", len(C.dims) - 2).betti()


def invariant_betti(oa):
    """dim H_n(Y; Q)^H through the averaging projector on cycles."""
    levels = _by_dim(oa.simplices)
    C = _chain_complex(levels)
    out = []
    for n, lv in enumerate(levels):
        dim = len(lv)
        idx = {s: i for i, s in enumerate(lv)}
        dn = C.boundary(n).to_dense() if n > 0 else []
        cycles = kernel_basis(dn, dim) if n > 0 else [
            [Fraction(int(i == j)) for i in range(dim)] for j in range(dim)]
        up = C.boundary(n + 1) if n + 1 < len(levels) else IntMatrix(dim, 0)
        bcols = [list(col) for col in zip(*up.to_dense())] if up.ncols else []
        projected = []
        for z in cycles:
            v = [Fraction(0)] * dim
            for h in oa.members:
                for i, c in enumerate(z):
                    if c:
                        v[idx[oa.image(h, lv[i])]] += c
            projected.append(v)
        rb = rank_dense(bcols) if bcols else 0
        rall = rank_dense(bcols + projected) if (bcols or projected) else 0
        out.append(rall - rb)
    return out


def orbit_betti(oa):
    """Betti numbers of the quotient Δ-complex of H-orbits of simplices."""
    canon = {}
    reps = []
    for s in oa.simplices:
        if s in canon:
            continue
        orbit = {oa.image(h, s) for h in oa.members}
        r = min(orbit)
        for t in orbit:
            canon[t] = r
        reps.append(r)
    levels = _by_dim(reps)
    index = [{s: i for i, s in enumerate(lv)} for lv in levels]
    bnd = {}
    for n in range(1, len(levels)):
        ent = {}
        for c, s in enumerate(levels[n]):
            for i in range(len(s)):
                r = index[n - 1][canon[s[:i] + s[i + 1:]]]
                ent[(r, c)] = ent.get((r, c), 0) + (-1) ** i
        bnd[n] = IntMatrix(len(levels[n - 1]), len(levels[n]), ent)
    return _betti_q(ChainComplexZ([len(lv) for lv in levels], bnd))


def quotient_homology(model, flags, members):
    """Rational Betti numbers of |Y|/H computed by two independent routes.

    ``flags`` is a subcomplex of the subdivision, ``members`` the elements
    of H.  Returns ``(invariants_route, quotient_route)``; raises
    :class:`QuotientMismatch` if they differ.
    """
    members = list(members)
    if not flags:
        return [], []
    act = {h: {i: int(model.simplex_action[h, i]) for i in range(model.simplex_action.shape[1])}
           for h in members}
    oa = OrderedAction(list(flags), act, members)
    if not oa.is_regular():
        oa = oa.subdivide()
    a = invariant_betti(oa)
    b = orbit_betti(oa)
    if a != b:
        raise QuotientMismatch(f"invariants route {a} != quotient route {b}")
    return a, b


def quotient_betti(model, flags, members):
    return quotient_homology(model, flags, members)[0]


# ---- sectors ----------------------------------------------------------------

@dataclass
class SectorRow:
    representative: tuple[int, ...]
    centralizer_order: int
    empty: bool
    betti: list[int]
    euler: int

    def to_json(self):
        return {"representative": list(self.representative),
                "centralizer_order": self.centralizer_order,
                "empty": self.empty, "betti": self.betti, "euler": self.euler}


@dataclass
class SectorTable:
    level: int
    rows: list[SectorRow]

    @property
    def total_rank(self):
        return sum(sum(r.betti) for r in self.rows)

    @property
    def total_euler(self):
        return sum(r.euler for r in self.rows)

    def to_json(self):
        return {"level": self.level, "rows": [r.to_json() for r in self.rows],
                "total_rank": self.total_rank, "total_euler": self.total_euler}


def sector_table(X, n, limits=Limits(), model=None):
    """One row per class of commuting n-tuples: Betti numbers of X^T / C(T)."""
    model = model or SubdividedModel.of(X)
    G = X.group
    top = max(len(s) for s in X.simplices)

    def row(cls):
        Y = fixed_subcomplex(model, cls.representative)
        if not Y:
            return SectorRow(cls.representative, cls.centralizer.order, True, [], 0)
        betti = quotient_betti(model, Y, cls.centralizer.members)
        betti += [0] * (top - len(betti))
        euler = sum((-1) ** i * b for i, b in enumerate(betti))
        return SectorRow(cls.representative, cls.centralizer.order, False, betti, euler)

    classes = tuple_classes(G, n, limits=limits).classes
    if limits.threads > 1 and len(classes) > 1:
        with ThreadPoolExecutor(max_workers=limits.threads) as pool:
            rows = list(pool.map(row, classes))
    else:
        rows = [row(c) for c in classes]
    return SectorTable(n, rows)


def euler_consistency(X, model=None):
    """Σ_[g] χ(X^g/C(g)) against (1/|G|) Σ_{gh=hg} χ(X^<g,h>)."""
    model = model or SubdividedModel.of(X)
    G = X.group
    lhs = sector_table(X, 1, model=model).total_euler
    total = 0
    for g in range(G.order):
        for h in np.flatnonzero(G.commute_mask(g)).tolist():
            total += euler_characteristic(fixed_subcomplex(model, (g, h)))
    rhs = Fraction(total, G.order)
    return {"ok": lhs == rhs, "sector_side": Fraction(lhs), "pair_side": rhs}


# ---- total homology of the simplicial inertia stack ---------------------------

def _weak_chains(model, length):
    """Weakly increasing chains x_0 <= ... <= x_(length-1) of simplex ids."""
    k = model.simplex_action.shape[1]
    above = [[j for j in range(k) if j == i or i in model.below[j]] for i in range(k)]
    out = []

    def grow(chain):
        if len(chain) == length:
            out.append(tuple(chain))
            return
        for j in above[chain[-1]]:
            grow(chain + [j])

    for i in range(k):
        grow([i])
    return out


class _DiagonalCanon:
    """Lex-min over h of (h·x, h T h^-1) for chains x and tuples T."""

    def __init__(self, model, G):
        self.act = model.simplex_action
        self.G = G

    def __call__(self, x, T):
        cands = np.arange(self.G.order)
        xs = []
        for s in x:
            vals = self.act[cands, s]
            m = vals.min()
            cands = cands[vals == m]
            xs.append(int(m))
        ts = []
        for t in T:
            vals = self.G.conj_column(t)[cands]
            m = vals.min()
            cands = cands[vals == m]
            ts.append(int(m))
        return tuple(xs), tuple(ts)


def _diag_degenerate(x, T):
    return any(T[j] == 0 and x[j] == x[j + 1] for j in range(len(T)))


def diagonal_simplices(X, n, model=None, limits=Limits()):
    """Canonical nondegenerate n-simplices of the diagonal, mod G."""
    model = model or SubdividedModel.of(X)
    G = X.group
    canon = _DiagonalCanon(model, G)
    stab = model.stabilizer_masks()
    seen = set()
    out = []
    for x in _weak_chains(model, n + 1):
        cx, _ = canon(x, ())
        if cx in seen:
            continue
        seen.add(cx)
        S = np.ones(G.order, dtype=bool)
        for s in cx:
            S &= stab[s]
        levels = enumerate_levels(G, n, start_mask=S, limits=limits)
        for T, _ in levels[n]:
            if not _diag_degenerate(cx, T):
                out.append((cx, T))
    out.sort()
    return out


def diagonal_chain_complex(X, top, model=None, limits=Limits()):
    model = model or SubdividedModel.of(X)
    G = X.group
    canon = _DiagonalCanon(model, G)
    levels = [diagonal_simplices(X, n, model, limits) for n in range(top + 1)]
    index = [{s: i for i, s in enumerate(lv)} for lv in levels]
    bnd = {}
    for n in range(1, top + 1):
        ent = {}
        for c, (x, T) in enumerate(levels[n]):
            for i in range(n + 1):
                fx = x[:i] + x[i + 1:]
                fT = bar_face(G, T, i)
                if _diag_degenerate(fx, fT):
                    continue
                r = index[n - 1][canon(fx, fT)]
                ent[(r, c)] = ent.get((r, c), 0) + (-1) ** i
        bnd[n] = IntMatrix(len(levels[n - 1]), len(levels[n]), ent)
    return ChainComplexZ([len(lv) for lv in levels], bnd)


def total_inertia_homology(X, max_degree=2, limits=Limits()) -> HomologyResult:
    """Rational homology of the diagonal of the bisimplicial inertia model."""
    C = diagonal_chain_complex(X, max_degree + 1, limits=limits)
    return homology(C, "Q", max_degree)


def level_euler_from_diagonal(X, n, model=None):
    """χ of the level-n space ∐ X^T/C(T), counted as G-orbits of
    (commuting n-tuple T, strict flag x with T ⊂ Stab(x))."""
    model = model or SubdividedModel.of(X)
    G = X.group
    canon = _DiagonalCanon(model, G)
    stab = model.stabilizer_masks()
    seen = set()
    chi = 0
    for flag in model.flags:
        cx, _ = canon(flag, ())
        if cx in seen:
            continue
        seen.add(cx)
        S = np.ones(G.order, dtype=bool)
        for s in cx:
            S &= stab[s]
        count = len(enumerate_levels(G, n, start_mask=S)[n])
        chi += (-1) ** (len(cx) - 1) * count
    return chi
