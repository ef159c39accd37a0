"""Commuting tuples and their conjugacy classes.

The classes at level n are grown from those at level n-1: a class with
canonical representative T and centralizer C(T) has one child per
C(T)-conjugacy class of elements of C(T).  Appending the smallest member
of such a class to a lex-minimal T gives a lex-minimal tuple again, so
representatives come out canonical without searching the whole orbit.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import reduce
from math import gcd

import numpy as np
from sympy import primitive_root

from .groups import (CapExceeded, Subgroup, conjugacy_classes, power_class_map,
                     p_part_decomposition, subgroup_classes)

DEFAULT_TUPLE_CAP = 10**6


@dataclass(frozen=True)
class Limits:
    tuple_cap: int = DEFAULT_TUPLE_CAP
    time_limit: float | None = None
    threads: int = 1

    def deadline(self):
        return None if self.time_limit is None else time.monotonic() + self.time_limit


@dataclass(frozen=True)
class TupleClass:
    representative: tuple[int, ...]
    orbit_size: int
    centralizer: Subgroup = field(repr=False)


@dataclass
class InertiaLevel:
    n: int
    prime_filter: int | None
    classes: list[TupleClass]

    def __len__(self):
        return len(self.classes)

    def representatives(self):
        return [c.representative for c in self.classes]


def canonicalize(G, tup, candidates=None):
    """Lex-minimal member of the simultaneous conjugation orbit of ``tup``.

    Returns ``(canonical, h_set)`` where ``h_set`` holds every h achieving it.
    """
    cands = np.arange(G.order) if candidates is None else np.asarray(candidates)
    out = []
    for t in tup:
        vals = G.conj_column(t)[cands]
        m = vals.min()
        cands = cands[vals == m]
        out.append(int(m))
    return tuple(out), cands


def _check_deadline(deadline, partial):
    if deadline is not None and time.monotonic() > deadline:
        raise CapExceeded("time limit exceeded", partial)


def _children(G, rep, cmask, allowed, commuting):
    """Orbit representatives one level up from ``rep``."""
    members = np.flatnonzero(cmask)
    pool = cmask & allowed if commuting else allowed
    seen = np.zeros(G.order, dtype=bool)
    out = []
    for g in np.flatnonzero(pool).tolist():
        if seen[g]:
            continue
        seen[G.conj_column(g)[members]] = True
        out.append((rep + (g,), cmask & G.commute_mask(g)))
    return out


def enumerate_levels(G, n, p=None, *, commuting=True, nondegenerate=False,
                     start_mask=None, limits=Limits()):
    """Orbit representatives of (commuting) tuples for levels 0..n.

    ``commuting=False`` gives all tuples in G^k (the full nerve quotient);
    ``nondegenerate=True`` drops tuples containing the identity.
    ``start_mask`` restricts everything to a subgroup S, giving S-orbits of
    tuples in S.  Returns a list of lists of ``(rep, centralizer_mask)``.
    """
    allowed = np.ones(G.order, dtype=bool) if p is None else G.p_element_mask(p)
    if nondegenerate:
        allowed = allowed.copy()
        allowed[0] = False
    root = np.ones(G.order, dtype=bool) if start_mask is None else np.asarray(start_mask)
    if start_mask is not None:
        allowed = allowed & root
    deadline = limits.deadline()
    levels = [[((), root)]]
    for k in range(1, n + 1):
        prev = levels[-1]
        work = lambda item: _children(G, item[0], item[1], allowed, commuting)
        level = []
        if limits.threads > 1 and len(prev) > 1:
            with ThreadPoolExecutor(max_workers=limits.threads) as pool:
                # map preserves input order, so output stays sorted
                for kids in pool.map(work, prev):
                    level.extend(kids)
                    _check_size(level, limits, deadline)
        else:
            for item in prev:
                level.extend(work(item))
                _check_size(level, limits, deadline)
        levels.append(level)
    return levels


def _check_size(level, limits, deadline):
    if len(level) > limits.tuple_cap:
        raise CapExceeded(f"class count exceeds cap {limits.tuple_cap}", len(level))
    _check_deadline(deadline, len(level))


def _to_level(G, n, p, items):
    classes = []
    for rep, mask in items:
        cent = Subgroup(G, tuple(np.flatnonzero(mask).tolist()))
        classes.append(TupleClass(rep, G.order // cent.order, cent))
    return InertiaLevel(n, p, classes)


def tuple_classes(G, n, p=None, limits=Limits()):
    """Conjugacy classes of commuting n-tuples (p-local when ``p`` given)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    levels = enumerate_levels(G, n, p, limits=limits)
    return _to_level(G, n, p, levels[n])


def count_commuting_tuples(G, n, p=None):
    """|Hom(Z^n, G)| (or with Z_p) by centralizer-chain backtracking."""
    if n < 0:
        raise ValueError("n must be >= 0")
    start = np.ones(G.order, dtype=bool) if p is None else G.p_element_mask(p)
    memo = {}

    def count(k, mask):
        if k == 0:
            return 1
        if k == 1:
            return int(mask.sum())
        key = (k, mask.tobytes())
        if key in memo:
            return memo[key]
        total = 0
        for g in np.flatnonzero(mask).tolist():
            total += count(k - 1, mask & G.commute_mask(g))
        memo[key] = total
        return total

    return count(n, start)


def iter_commuting_tuples(G, n, p=None, mask=None):
    """Every commuting n-tuple, in lexicographic order."""
    start = np.ones(G.order, dtype=bool) if p is None else G.p_element_mask(p)
    if mask is not None:
        start = start & mask

    def rec(prefix, m):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for g in np.flatnonzero(m).tolist():
            prefix.append(g)
            yield from rec(prefix, m & G.commute_mask(g))
            prefix.pop()

    yield from rec([], start)


def recursion_check(G, n, limits=Limits()):
    """Compare three counts of level-n classes.

    ``direct`` enumerates, ``iterated`` sums class numbers of centralizers of
    level-(n-1) classes, ``burnside`` is |Hom(Z^(n+1), G)| / |G|.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    direct = len(tuple_classes(G, n, limits=limits))
    lower = tuple_classes(G, n - 1, limits=limits)
    iterated = sum(len(subgroup_classes(G, c.centralizer)) for c in lower.classes)
    burnside, rem = divmod(count_commuting_tuples(G, n + 1), G.order)
    ok = direct == iterated == burnside and rem == 0
    return {"ok": ok, "direct": direct, "iterated": iterated, "burnside": burnside}


def hkr_rank(G, n, p, limits=Limits()):
    """|Hom(Z_p^n, G)/G|."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return len(tuple_classes(G, n, p, limits=limits))


def fiber_product_check(G, n):
    """Check Hom(Z^n, G) against families of p-local tuples, one per prime.

    A commuting tuple splits coordinatewise into its p-parts; the families
    that arise are exactly the p-local tuples that commute across primes.
    Also reports the naive product of p-local class counts.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    primes = G.primes
    parts = [p_part_decomposition(G, g) for g in range(G.order)]

    images = set()
    total = 0
    inverse_ok = True
    for tup in iter_commuting_tuples(G, n):
        total += 1
        fam = tuple(tuple(parts[g].get(p, 0) for g in tup) for p in primes)
        images.add(fam)
        back = tuple(reduce(G.mul, (fam[i][j] for i in range(len(primes))), 0)
                     for j in range(n))
        inverse_ok &= back == tup
    images_valid = all(_valid_family(G, fam, primes) for fam in images)

    def families(i, mask):
        if i == len(primes):
            return 1
        c = 0
        for t in iter_commuting_tuples(G, n, primes[i], mask):
            m = mask.copy()
            for g in t:
                m &= G.commute_mask(g)
            c += families(i + 1, m)
        return c

    n_families = families(0, np.ones(G.order, dtype=bool))
    bijection = (len(images) == total == n_families and images_valid and inverse_ok)
    local = {p: hkr_rank(G, n, p) for p in primes}
    naive = 1
    for v in local.values():
        naive *= v
    direct = len(tuple_classes(G, n))
    return {
        "bijection": bijection,
        "tuples": total,
        "families": n_families,
        "local_class_counts": local,
        "naive_class_product": naive,
        "direct_class_count": direct,
    }


def _valid_family(G, fam, primes):
    flat = [g for t in fam for g in t]
    for t, p in zip(fam, primes):
        if not all(G.is_p_element(g, p) for g in t):
            return False
    return all(G.mul(a, b) == G.mul(b, a) for a in flat for b in flat)


def p_exponent(G, p):
    """Largest p-power order of an element of G."""
    best = 1
    for o in set(G.element_orders.tolist()):
        q = 1
        while o % p == 0:
            o //= p
            q *= p
        best = max(best, q)
    return best


def unit_generators(q, p):
    """Generators of (Z/q)^× for q a power of p."""
    if q <= 2:
        return []
    if p == 2:
        return [q - 1] if q == 4 else [q - 1, 5]
    return [int(primitive_root(q))]


def gl_generators(n, q, p):
    """Elementary transvections and diag(u, 1, ..., 1) for GL_n(Z/q)."""
    mats = []
    for i in range(n):
        for j in range(n):
            if i != j:
                a = [[int(r == c) for c in range(n)] for r in range(n)]
                a[i][j] = 1
                mats.append(a)
    for u in unit_generators(q, p):
        a = [[int(r == c) for c in range(n)] for r in range(n)]
        a[0][0] = u
        mats.append(a)
    return mats


def act_matrix(G, mat, tup):
    """(g_1..g_n) -> (∏_j g_j^a_1j, ..., ∏_j g_j^a_nj) for commuting entries."""
    out = []
    for row in mat:
        x = 0
        for a, g in zip(row, tup):
            x = G.mul(x, G.power(g, a))
        out.append(x)
    return tuple(out)


def gl_orbits(G, n, p, matrices=None, limits=Limits()):
    """Orbits of GL_n(Z/p^e) on p-local tuple classes, as lists of class indices.

    ``matrices`` overrides the generating set (e.g. just the identity).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    level = tuple_classes(G, n, p, limits=limits)
    reps = level.representatives()
    where = {r: i for i, r in enumerate(reps)}
    q = p_exponent(G, p)
    mats = gl_generators(n, q, p) if matrices is None else matrices
    parent = list(range(len(reps)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, rep in enumerate(reps):
        for m in mats:
            j = where[canonicalize(G, act_matrix(G, m, rep))[0]]
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups = {}
    for i in range(len(reps)):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def rational_classes(G):
    """Orbits of [g] -> [g^k], k a unit mod |G|, as lists of class indices."""
    k_count = len(conjugacy_classes(G))
    parent = list(range(k_count))
    units = [k for k in range(1, max(G.order, 2)) if gcd(k, G.order) == 1]
    for k in units:
        for i, j in enumerate(power_class_map(G, k)):
            a, b = _root(parent, i), _root(parent, j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups = {}
    for i in range(k_count):
        groups.setdefault(_root(parent, i), []).append(i)
    return sorted(groups.values())


def _root(parent, i):
    while parent[i] != i:
        i = parent[i]
    return i
