"""Exact linear representations and their ages (degree-shifting numbers).

For g of order m with ρ(g) having eigenvalue exp(2πik/m) with multiplicity
m_k, age(g) = Σ m_k k/m.  Multiplicities come from the trace alone via
m_k = (1/m) Σ_j χ(g^j) ζ_m^(-jk), so no eigen-decomposition is needed.

Tuple ages follow the flag V ⊇ V^(g1) ⊇ V^(g1,g2) ⊇ ...: step i is the age
of g_i on V^(g1..g_(i-1)), whose trace data is tr(ρ(g_i^j) P) with P the
averaging projector of the group generated by the prefix.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import lcm
from pathlib import Path

import numpy as np

from .cyclotomic import Cyclotomic, imag_unit, sqrt2, sqrt5
from .groups import (FiniteGroup, GroupError, conjugacy_classes, generated_subgroup,
                     load_group)
from .zoo import Quad

AGE_NORMALIZATION = "sum of eigenvalue exponents k/m in [0,1) (standard age)"


class RepresentationError(ValueError):
    pass


def _matmul(A, B, N):
    n, k, m = len(A), len(B), len(B[0])
    zero = Cyclotomic.rational(0, N)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = zero
            for t in range(k):
                if A[i][t] and B[t][j]:
                    acc = acc + A[i][t] * B[t][j]
            row.append(acc)
        out.append(row)
    return out


def _key(M):
    return tuple(tuple(v.coeffs for v in r) for r in M)


@dataclass
class ExactRep:
    group: FiniteGroup
    dimension: int
    conductor: int
    generator_matrices: list = field(repr=False)
    name: str = "rho"
    matrices: list = field(init=False, repr=False)
    traces: list = field(init=False, repr=False)

    def __post_init__(self):
        G, N, d = self.group, self.conductor, self.dimension
        if len(self.generator_matrices) != len(G.generator_indices):
            raise RepresentationError(
                f"{len(self.generator_matrices)} matrices for "
                f"{len(G.generator_indices)} group generators")
        gens = []
        for M in self.generator_matrices:
            if len(M) != d or any(len(r) != d for r in M):
                raise RepresentationError(f"matrix is not {d}x{d}")
            gens.append([[v.embed(N) if v.N != N else v for v in r] for r in M])
        ident = [[Cyclotomic.rational(int(i == j), N) for j in range(d)] for i in range(d)]
        mats = [None] * G.order
        mats[0] = ident
        queue = [0]
        # BFS over all elements; a revisit must reproduce the stored matrix
        for x in queue:
            for s, M in zip(G.generator_indices, gens):
                y = G.mul(x, s)
                img = _matmul(mats[x], M, N)
                if mats[y] is None:
                    mats[y] = img
                    queue.append(y)
                elif _key(mats[y]) != _key(img):
                    raise RepresentationError("matrices violate the group relations")
        if len(queue) != G.order:
            raise RepresentationError("generators do not reach every element")
        self.matrices = mats
        zero = Cyclotomic.rational(0, N)
        self.traces = [sum((M[i][i] for i in range(d)), zero) for M in mats]

    def to_json(self):
        return {"name": self.name, "dimension": self.dimension,
                "conductor": self.conductor,
                "generator_matrices": [[[list(map(_frac_pair, v.coeffs)) for v in r]
                                        for r in M] for M in self.generator_matrices]}


def _frac_pair(c):
    return [c.numerator, c.denominator]


def _entry(obj, N):
    if isinstance(obj, int):
        return Cyclotomic.rational(obj, N)
    if isinstance(obj, dict) and "num" in obj:
        return Cyclotomic.rational(Fraction(obj["num"], obj["den"]), N)
    if not isinstance(obj, list) or len(obj) > N:
        raise RepresentationError(f"bad matrix entry {obj!r}")
    coeffs = {}
    for a, c in enumerate(obj):
        if isinstance(c, list):
            c = Fraction(int(c[0]), int(c[1]))
        coeffs[a] = Fraction(c)
    return Cyclotomic.from_exponents(N, coeffs)


def load_rep(source, group=None):
    """Representation JSON: dimension, conductor, generator_matrices, optional group."""
    base = Path(".")
    if isinstance(source, (str, Path)):
        path = Path(source)
        try:
            data = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise RepresentationError(f"cannot read representation file {source}: {exc}") from exc
        base = path.parent
        name = path.stem
    else:
        data = source
        name = data.get("name", "rho")
    for key in ("dimension", "conductor", "generator_matrices"):
        if key not in data:
            raise RepresentationError(f"representation file lacks {key!r}")
    if group is None:
        spec = data.get("group")
        if spec is None:
            raise RepresentationError("no group given for the representation")
        if isinstance(spec, str):
            spec = base / spec
        try:
            group = load_group(spec)
        except GroupError as exc:
            raise RepresentationError(str(exc)) from exc
    N = int(data["conductor"])
    if N < 1:
        raise RepresentationError("conductor must be positive")
    mats = [[[_entry(v, N) for v in r] for r in M] for M in data["generator_matrices"]]
    return ExactRep(group, int(data["dimension"]), N, mats, name=name)


# ---- built-in representations ----------------------------------------------

def _quad_to_cyc(q: Quad, N):
    if not q.b:
        return Cyclotomic.rational(q.a, N)
    root = {2: sqrt2, 5: sqrt5}[q.d](N)
    return Cyclotomic.rational(q.a, N) + root * Cyclotomic.rational(q.b, N)


def _quaternion_matrix(q, N):
    i = imag_unit(N)
    a, b, c, d = (_quad_to_cyc(x, N) for x in (q.w, q.x, q.y, q.z))
    return [[a + i * b, c + i * d], [-c + i * d, a - i * b]]


def binary_polyhedral_rep(G):
    """Defining 2-dim representation in SU(2) of a quaternion-built group."""
    N = G.exponent
    mats = [_quaternion_matrix(G.labels[g], N) for g in G.generator_indices]
    return ExactRep(G, 2, N, mats, name=f"{G.name}:natural")


def binary_dihedral_rep(G, n):
    """a -> diag(ζ_2n, ζ_2n^-1), b -> [[0,-1],[1,0]]."""
    N = lcm(2 * n, 4)
    z = Cyclotomic.zeta(2 * n).embed(N)
    zero, one = Cyclotomic.rational(0, N), Cyclotomic.rational(1, N)
    a = [[z, zero], [zero, z.inverse()]]
    b = [[zero, -one], [one, zero]]
    return ExactRep(G, 2, N, [a, b], name=f"{G.name}:natural")


def dihedral_rep(G, n):
    """r -> diag(ζ_n, ζ_n^-1), s -> [[0,1],[1,0]]."""
    N = n if n > 2 else 2
    z = Cyclotomic.zeta(n).embed(N) if n > 1 else Cyclotomic.rational(1, N)
    zero, one = Cyclotomic.rational(0, N), Cyclotomic.rational(1, N)
    r = [[z, zero], [zero, z.inverse()]]
    s = [[zero, one], [one, zero]]
    return ExactRep(G, 2, N, [r, s], name=f"{G.name}:natural")


def permutation_rep(G):
    """Permutation matrices e_i -> e_σ(i) of a permutation group."""
    if G.perms is None:
        raise RepresentationError(f"{G.name} has no permutation action")
    d = G.perms.shape[1]
    mats = []
    for g in G.generator_indices:
        p = G.perms[g]
        mats.append([[Cyclotomic.rational(int(p[j] == i)) for j in range(d)]
                     for i in range(d)])
    return ExactRep(G, d, 1, mats, name=f"{G.name}:permutation")


def standard_rep_s3(G):
    """2-dim reflection representation on the sum-zero plane, basis e0-e1, e1-e2."""
    if G.perms is None or G.perms.shape[1] != 3 or G.order != 6:
        raise RepresentationError("needs S_3 acting on 3 points")
    basis = [np.array([1, -1, 0]), np.array([0, 1, -1])]
    mats = []
    for g in G.generator_indices:
        p = G.perms[g]
        cols = []
        for v in basis:
            w = np.zeros(3, dtype=np.int64)
            w[p] = v  # e_i -> e_p(i)
            # w = x(e0-e1) + y(e1-e2): x = w0, y = -w2
            cols.append((int(w[0]), -int(w[2])))
        mats.append([[Cyclotomic.rational(cols[j][i]) for j in range(2)] for i in range(2)])
    return ExactRep(G, 2, 1, mats, name="sym:3:standard")


def cyclic_rep(G, k=1):
    """1-dim representation of a cyclic group sending its generator to ζ_n^k."""
    n = G.order
    if len(G.generator_indices) != 1 or int(G.element_orders[G.generator_indices[0]]) != n:
        raise RepresentationError("needs a cyclic group with one generator")
    return ExactRep(G, 1, n, [[[Cyclotomic.zeta(n, k)]]], name=f"{G.name}:zeta^{k}")


def builtin_reps(G):
    """Every built-in representation applicable to a zoo group."""
    name = G.name
    out = []
    if name in ("binary_tetrahedral", "binary_octahedral", "binary_icosahedral"):
        out.append(binary_polyhedral_rep(G))
    elif name.startswith("binary_dihedral:"):
        out.append(binary_dihedral_rep(G, int(name.split(":")[1])))
    elif name.startswith("quaternion_generalized:"):
        out.append(binary_dihedral_rep(G, 2 ** (int(name.split(":")[1]) - 2)))
    elif name.startswith("dihedral:"):
        out.append(dihedral_rep(G, int(name.split(":")[1])))
    elif name.startswith("cyclic:") and G.order > 1:
        out.append(cyclic_rep(G, 1))
    if name == "sym:3":
        out.append(standard_rep_s3(G))
    if G.perms is not None:
        out.append(permutation_rep(G))
    return out


def default_rep(G):
    reps = builtin_reps(G)
    if not reps:
        raise RepresentationError(f"no built-in representation for {G.name}")
    return reps[0]


# ---- ages ---------------------------------------------------------------------

def _multiplicities(trace_of_power, m, N, d):
    """m_k from the traces tr(A^j), j = 0..m-1, of an operator with A^m = 1."""
    L = lcm(N, m)
    mult = []
    for k in range(m):
        acc = Cyclotomic.rational(0, L)
        for j in range(m):
            acc = acc + trace_of_power(j) * Cyclotomic.zeta(L, (-j * k * (L // m)) % L)
        acc = acc / m
        if not acc.is_rational():
            raise RepresentationError("eigenvalue multiplicity is not rational")
        q = acc.to_rational()
        if q.denominator != 1 or q < 0:
            raise RepresentationError(f"eigenvalue multiplicity {q} is not a natural number")
        mult.append(int(q))
    if sum(mult) > d:
        raise RepresentationError("multiplicities exceed the dimension")
    return mult


def eigen_multiplicities(rho, g):
    G = rho.group
    m = int(G.element_orders[g])
    mult = _multiplicities(lambda j: rho.traces[G.power(g, j)], m, rho.conductor,
                           rho.dimension)
    if sum(mult) != rho.dimension:
        raise RepresentationError("multiplicities do not sum to the dimension")
    return mult


def age(rho, g):
    rho.group.check_index(g)
    mult = eigen_multiplicities(rho, g)
    m = len(mult)
    return sum((Fraction(k * c, m) for k, c in enumerate(mult)), Fraction(0))


def fixed_dimension(rho, g):
    return eigen_multiplicities(rho, g)[0]


def age_table(rho):
    rows = []
    for c in conjugacy_classes(rho.group):
        g = c.representative
        rows.append({"representative": g, "order": int(rho.group.element_orders[g]),
                     "age": age(rho, g), "fixed_dimension": fixed_dimension(rho, g)})
    return rows


def tuple_age_flag(rho, tup):
    """Flag-sum age of a commuting tuple; returns total, steps and flag dims."""
    G = rho.group
    for a in tup:
        G.check_index(a)
    for a in tup:
        for b in tup:
            if G.mul(a, b) != G.mul(b, a):
                raise ValueError("tuple entries do not commute")
    d = rho.dimension
    steps = []
    dims = [d]
    prefix = []
    for g in tup:
        H = generated_subgroup(G, prefix).members if prefix else (0,)
        h_count = len(H)

        def tr(j, g=g, H=H):
            gj = G.power(g, j)
            total = sum((rho.traces[G.mul(gj, h)] for h in H),
                        Cyclotomic.rational(0, rho.conductor))
            return total / h_count

        sub_dim = dims[-1]
        m = int(G.element_orders[g])
        mult = _multiplicities(tr, m, rho.conductor, d)
        if sum(mult) != sub_dim:
            raise RepresentationError("flag step multiplicities are inconsistent")
        steps.append(sum((Fraction(k * c, m) for k, c in enumerate(mult)), Fraction(0)))
        dims.append(mult[0])
        prefix.append(g)
    return {"total": sum(steps, Fraction(0)), "steps": steps, "flag_dimensions": dims}


def tuple_age_all_orders(rho, tup):
    """Flag ages for every ordering of the tuple; reports order-invariance."""
    seen = {}
    for perm in permutations(range(len(tup))):
        t = tuple(tup[i] for i in perm)
        if t not in seen:
            seen[t] = tuple_age_flag(rho, t)["total"]
    totals = sorted(set(seen.values()))
    return {"orders": [{"tuple": list(t), "total": v} for t, v in sorted(seen.items())],
            "order_invariant": len(totals) == 1}


def age_conjugacy_invariance_check(rho, target):
    """Ages agree on a conjugacy class (int rep) or a tuple class (tuple rep)."""
    G = rho.group
    if isinstance(target, int):
        base = age(rho, target)
        for x in np.unique(G.conj_column(target)).tolist():
            a = age(rho, x)
            if a != base:
                return {"ok": False, "witness": {"element": x, "age": a, "expected": base}}
        return {"ok": True, "age": base}
    tup = tuple(target)
    base = tuple_age_flag(rho, tup)["total"]
    for h in range(G.order):
        t = tuple(G.conj(h, g) for g in tup)
        a = tuple_age_flag(rho, t)["total"]
        if a != base:
            return {"ok": False, "witness": {"tuple": list(t), "age": a, "expected": base}}
    return {"ok": True, "age": base}
