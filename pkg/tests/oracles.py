"""Brute-force oracles.

These touch a group only through its multiplication and inverse, loop over
everything, and share no code with the optimised paths in ``inertia``.  Exact
ranks come from sympy's DomainMatrix.
"""

from __future__ import annotations

import cmath
import itertools
from collections import Counter
from fractions import Fraction
from math import gcd

import numpy as np
from sympy import QQ, ZZ, Matrix
from sympy.matrices.normalforms import smith_normal_form
from sympy.polys.matrices import DomainMatrix


def plain_table(G):
    return [[G.mul(a, b) for b in range(G.order)] for a in range(G.order)]


def _inverse(t):
    n = len(t)
    return [next(b for b in range(n) if t[a][b] == 0) for a in range(n)]


def _conj(t, inv, h, g):
    return t[t[h][g]][inv[h]]


def _order(t, g):
    k, x = 1, g
    while x != 0:
        x = t[x][g]
        k += 1
    return k


def _is_p_power(m, p):
    while m % p == 0:
        m //= p
    return m == 1


def commuting_tuples(G, n, p=None, t=None):
    t = t or plain_table(G)
    elems = [g for g in range(G.order) if p is None or _is_p_power(_order(t, g), p)]
    out = []

    def rec(prefix):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for g in elems:
            if all(t[g][a] == t[a][g] for a in prefix):
                rec(prefix + [g])

    rec([])
    return out


def orbit_partition(G, tuples, t=None):
    """Orbits of simultaneous conjugation as frozensets."""
    t = t or plain_table(G)
    inv = _inverse(t)
    seen = set()
    orbits = []
    for tup in tuples:
        if tup in seen:
            continue
        orb = frozenset(tuple(_conj(t, inv, h, g) for g in tup) for h in range(G.order))
        seen |= orb
        orbits.append(orb)
    return orbits


def tuple_class_count(G, n, p=None):
    t = plain_table(G)
    return len(orbit_partition(G, commuting_tuples(G, n, p, t), t))


def commuting_count(G, n, p=None):
    return len(commuting_tuples(G, n, p))


def conjugacy_class_sizes(G):
    t = plain_table(G)
    return sorted(len(o) for o in orbit_partition(G, [(g,) for g in range(G.order)], t))


def abelian_order_profile(G):
    """Multiset of element orders of G/[G,G], from cosets of the commutator subgroup."""
    t = plain_table(G)
    inv = _inverse(t)
    comm = {t[t[a][b]][t[inv[a]][inv[b]]] for a in range(G.order) for b in range(G.order)}
    N = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for c in comm:
            y = t[x][c]
            if y not in N:
                N.add(y)
                frontier.append(y)
    coset = {}
    cosets = []
    for g in range(G.order):
        if g in coset:
            continue
        c = frozenset(t[g][n] for n in N)
        for x in c:
            coset[x] = len(cosets)
        cosets.append(c)
    rep = [min(c) for c in cosets]
    orders = []
    for i, r in enumerate(rep):
        k, x = 1, r
        while coset[x] != coset[0]:
            x = t[x][r]
            k += 1
        orders.append(k)
    return Counter(orders)


def order_profile_of_invariants(divisors):
    """Element-order multiset of Z/d1 × Z/d2 × ...."""
    orders = Counter()
    for vec in itertools.product(*[range(d) for d in divisors]):
        o = 1
        for a, d in zip(vec, divisors):
            k = d // gcd(a, d)
            o = o * k // gcd(o, k)
        orders[o] += 1
    return orders or Counter({1: 1})


def gl_orbit_count(G, n, p):
    """Orbits on p-local tuple classes of all of GL_n(Z/q), by brute force."""
    t = plain_table(G)
    q = 1
    for g in range(G.order):
        o = _order(t, g)
        if _is_p_power(o, p):
            q = max(q, o)
    tuples = commuting_tuples(G, n, p, t)
    index = {tup: i for i, tup in enumerate(tuples)}
    parent = list(range(len(tuples)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(a, b):
        a, b = find(a), find(b)
        if a != b:
            parent[b] = a

    def power(g, k):
        x = 0
        for _ in range(k % q):
            x = t[x][g]
        return x

    mats = []
    for entries in itertools.product(range(q), repeat=n * n):
        A = Matrix(n, n, list(entries))
        if gcd(int(A.det()) % q, q) == 1:
            mats.append([list(entries[r * n:(r + 1) * n]) for r in range(n)])
    inv = _inverse(t)
    for tup in tuples:
        i = index[tup]
        for A in mats:
            img = []
            for row in A:
                x = 0
                for a, g in zip(row, tup):
                    x = t[x][power(g, a)]
                img.append(x)
            union(i, index[tuple(img)])
        for h in range(G.order):
            union(i, index[tuple(_conj(t, inv, h, g) for g in tup)])
    return len({find(i) for i in range(len(tuples))})


def rank_q(rows, ncols):
    if not rows or not ncols:
        return 0
    return DomainMatrix([[QQ(int(v)) for v in r] for r in rows], (len(rows), ncols), QQ).rank()


def smith_divisors(rows):
    """Nonzero invariant factors via sympy."""
    if not rows or not rows[0]:
        return []
    D = smith_normal_form(Matrix(rows), domain=ZZ)
    out = [abs(int(D[i, i])) for i in range(min(D.shape)) if D[i, i] != 0]
    return sorted(out)


def orbit_chain_betti(levels, face, act, members, degenerate):
    """Rational Betti numbers of (normalized chains on raw simplices)/G.

    ``levels[n]`` lists every nondegenerate raw n-simplex; orbits are
    frozensets; the top level is used only for boundaries.
    """
    orbit_of = []
    orbits = []
    for lv in levels:
        where, obs = {}, []
        for s in lv:
            if s in where:
                continue
            orb = frozenset(act(h, s) for h in members)
            for x in orb:
                where[x] = len(obs)
            obs.append(orb)
        orbit_of.append(where)
        orbits.append(obs)
    mats = {}
    for n in range(1, len(levels)):
        rows = [[0] * len(orbits[n]) for _ in orbits[n - 1]]
        for c, orb in enumerate(orbits[n]):
            s = min(orb)
            for i in range(n + 1):
                f = face(s, i)
                if degenerate(f):
                    continue
                rows[orbit_of[n - 1][f]][c] += (-1) ** i
        mats[n] = rows
    betti = []
    for n in range(len(levels) - 1):
        r_in = rank_q(mats[n], len(orbits[n])) if n > 0 else 0
        r_out = rank_q(mats[n + 1], len(orbits[n + 1]))
        betti.append(len(orbits[n]) - r_in - r_out)
    return betti


def bar_face(t, tup, i):
    n = len(tup)
    if i == 0:
        return tup[1:]
    if i == n:
        return tup[:-1]
    return tup[:i - 1] + (t[tup[i - 1]][tup[i]],) + tup[i + 1:]


def inertia_nerve_betti(G, top):
    """H_0..H_top of the inertia nerve over Q, from raw commuting tuples."""
    t = plain_table(G)
    inv = _inverse(t)
    levels = [[s for s in commuting_tuples(G, n, None, t) if 0 not in s]
              for n in range(top + 2)]
    return orbit_chain_betti(
        levels, lambda s, i: bar_face(t, s, i),
        lambda h, s: tuple(_conj(t, inv, h, g) for g in s), range(G.order),
        lambda s: 0 in s)


def diagonal_betti(X, top):
    """Rational homology of the inertia diagonal of a G-complex, by brute force.

    Simplices are (x_0 <= ... <= x_n; g_1..g_n) with x a weak chain of
    simplices (as vertex frozensets) and g_i commuting, each fixing every x_j.
    """
    G = X.group
    t = plain_table(G)
    inv = _inverse(t)
    vact = [list(map(int, X.vertex_action[h])) for h in range(G.order)]
    simplices = [frozenset(s) for s in X.simplices]

    def img(h, s):
        return frozenset(vact[h][v] for v in s)

    def chains(length):
        out = []

        def rec(ch):
            if len(ch) == length:
                out.append(tuple(ch))
                return
            for s in simplices:
                if ch[-1] <= s:
                    rec(ch + [s])

        for s in simplices:
            rec([s])
        return out

    def degenerate(simp):
        x, T = simp
        return any(T[j] == 0 and x[j] == x[j + 1] for j in range(len(T)))

    levels = []
    for n in range(top + 2):
        lv = []
        for x in chains(n + 1):
            stab = [h for h in range(G.order) if all(img(h, s) == s for s in x)]
            for T in itertools.product(stab, repeat=n):
                if all(t[a][b] == t[b][a] for a in T for b in T):
                    if not degenerate((x, T)):
                        lv.append((x, T))
        levels.append(lv)

    def face(simp, i):
        x, T = simp
        return (x[:i] + x[i + 1:], bar_face(t, T, i))

    def act(h, simp):
        x, T = simp
        return (tuple(img(h, s) for s in x), tuple(_conj(t, inv, h, g) for g in T))

    return orbit_chain_betti(levels, face, act, range(G.order), degenerate)


def fixed_euler(X, elements):
    """χ of the fixed set of a set of elements: Σ over invariant simplices of
    (-1)^(number of vertex orbits - 1)."""
    vact = [list(map(int, X.vertex_action[h])) for h in elements]
    total = 0
    for s in X.simplices:
        if not all(frozenset(m[v] for v in s) == frozenset(s) for m in vact):
            continue
        parent = {v: v for v in s}

        def find(v):
            while parent[v] != v:
                v = parent[v]
            return v

        for m in vact:
            for v in s:
                a, b = find(v), find(m[v])
                if a != b:
                    parent[a] = b
        k = len({find(v) for v in s})
        total += (-1) ** (k - 1)
    return total


def pair_side_euler(X):
    G = X.group
    t = plain_table(G)
    total = 0
    for g in range(G.order):
        for h in range(G.order):
            if t[g][h] == t[h][g]:
                total += fixed_euler(X, [g, h])
    return Fraction(total, G.order)


def numeric_character_table(G, seed=0):
    """Complex character table by Burnside's method, in floating point.

    Rows are returned as lists of complex numbers on the classes in order of
    smallest member.
    """
    t = plain_table(G)
    inv = _inverse(t)
    orbs = orbit_partition(G, [(g,) for g in range(G.order)], t)
    classes = sorted((sorted(x[0] for x in o) for o in orbs), key=lambda c: c[0])
    k = len(classes)
    cls = {}
    for i, c in enumerate(classes):
        for x in c:
            cls[x] = i
    reps = [c[0] for c in classes]
    a = np.zeros((k, k, k))
    for kk, r in enumerate(reps):
        for x in range(G.order):
            a[cls[x], cls[t[inv[x]][r]], kk] += 1
    rng = np.random.default_rng(seed)
    M = sum(rng.normal() * a[i] for i in range(k))
    _, vecs = np.linalg.eig(M)
    sizes = np.array([len(c) for c in classes], dtype=float)
    invc = [cls[inv[r]] for r in reps]
    rows = []
    for j in range(k):
        w = vecs[:, j] / vecs[0, j]
        S = sum(w[i] * w[invc[i]] / sizes[i] for i in range(k))
        d = cmath.sqrt(G.order / S).real
        rows.append([d * w[i] / sizes[i] for i in range(k)])
    return rows
