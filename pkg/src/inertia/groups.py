"""Finite groups as dense element indices.

Every group is enumerated once, identity first, and from then on an element
is just an integer in ``range(order)``.  Small groups carry a full Cayley
table (numpy); larger permutation groups keep their permutation images and
multiply by composition.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from pathlib import Path

import numpy as np
from sympy import factorint

from .linalg import smith_normal_form

DEFAULT_ORDER_CAP = 20000
TABLE_LIMIT = 4096


class GroupError(ValueError):
    """Invalid group description."""


class CapExceeded(RuntimeError):
    """A configured size cap or time limit was hit.

    ``partial`` carries whatever progress count was reached.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


def closure(generators, mul, identity, cap=DEFAULT_ORDER_CAP):
    """BFS closure of hashable ``generators`` under right multiplication.

    Returns ``(elements, index, right, parent)``: ``elements[0]`` is the
    identity, the order is BFS over generators in listed order,
    ``right[k][i]`` is the index of ``elements[i] * generators[k]`` and
    ``parent[i] = (j, k)`` records ``elements[i] = elements[j] * generators[k]``.
    """
    elements = [identity]
    index = {identity: 0}
    right = [[] for _ in generators]
    parent = [None]
    i = 0
    while i < len(elements):
        x = elements[i]
        for k, s in enumerate(generators):
            y = mul(x, s)
            j = index.get(y)
            if j is None:
                if len(elements) >= cap:
                    raise GroupError(f"closure exceeds order cap {cap}")
                j = index[y] = len(elements)
                elements.append(y)
                parent.append((i, k))
            right[k].append(j)
        i += 1
    return elements, index, right, parent


def _table_from_tree(n, right, parent):
    """Full Cayley table from right-multiplication by generators.

    x·y = (x·y') s when y = y' s, so each column is a gather of an earlier one.
    """
    table = np.empty((n, n), dtype=np.int32)
    table[:, 0] = np.arange(n)
    rights = [np.asarray(r, dtype=np.int32) for r in right]
    for y in range(1, n):
        j, k = parent[y]
        table[:, y] = rights[k][table[:, j]]
    return table


@dataclass(frozen=True)
class ConjClass:
    representative: int
    members: tuple[int, ...]
    centralizer_order: int

    @property
    def size(self):
        return len(self.members)


@dataclass(frozen=True)
class Subgroup:
    parent: "FiniteGroup" = field(repr=False, compare=False)
    members: tuple[int, ...]

    @property
    def order(self):
        return len(self.members)

    @cached_property
    def mask(self):
        m = np.zeros(self.parent.order, dtype=bool)
        m[list(self.members)] = True
        return m

    def __contains__(self, g):
        return bool(self.mask[g])


class FiniteGroup:
    """A finite group on indices ``0..order-1`` with 0 the identity.

    Build through :func:`from_closure`, :func:`from_permutations` or
    :func:`from_cayley` rather than directly.
    """

    def __init__(self, name, order, inv, generator_indices, table=None,
                 perms=None, labels=None):
        if table is None and perms is None:
            raise GroupError("need a Cayley table or permutation images")
        self.name = name
        self.order = int(order)
        self.inv = np.asarray(inv, dtype=np.int64)
        self.generator_indices = [int(g) for g in generator_indices]
        self.table = table
        self.perms = perms
        self.labels = labels
        if perms is not None:
            self._perm_index = {p.tobytes(): i for i, p in enumerate(perms)}

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def __len__(self):
        return self.order

    @property
    def identity(self):
        return 0

    def mul(self, a, b):
        if self.table is not None:
            return int(self.table[a, b])
        return self._perm_index[self.perms[a][self.perms[b]].tobytes()]

    def power(self, g, k):
        k %= int(self.element_orders[g])
        result, base = 0, g
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def conj(self, h, g):
        """h g h^-1"""
        return self.mul(self.mul(h, g), int(self.inv[h]))

    def check_index(self, g):
        if not 0 <= g < self.order:
            raise IndexError(f"element {g} out of range for order {self.order}")

    @cached_property
    def is_abelian(self):
        if self.table is not None:
            return bool(np.array_equal(self.table, self.table.T))
        gens = self.generator_indices
        return all(self.mul(a, b) == self.mul(b, a) for a in gens for b in gens)

    @cached_property
    def element_orders(self):
        orders = np.zeros(self.order, dtype=np.int64)
        orders[0] = 1
        for g in range(1, self.order):
            if orders[g]:
                continue
            # walk the cyclic subgroup once and fill every power
            powers = [g]
            x = g
            while x != 0:
                x = self.mul(x, g)
                powers.append(x)
            m = len(powers)
            for k, y in enumerate(powers, start=1):
                if not orders[y]:
                    orders[y] = m // gcd(k, m)
        return orders

    @cached_property
    def exponent(self):
        e = 1
        for o in set(self.element_orders.tolist()):
            e = e * o // gcd(e, o)
        return e

    @cached_property
    def primes(self):
        return sorted(factorint(self.order))

    def is_p_element(self, g, p):
        o = int(self.element_orders[g])
        while o % p == 0:
            o //= p
        return o == 1

    def p_element_mask(self, p):
        mask = np.zeros(self.order, dtype=bool)
        for g in range(self.order):
            mask[g] = self.is_p_element(g, p)
        return mask

    @cached_property
    def commute_matrix(self):
        """Boolean matrix ``[a, b] = (ab == ba)`` (table mode only)."""
        if self.table is None:
            raise GroupError("commute matrix needs a Cayley table")
        return self.table == self.table.T

    def commute_mask(self, g):
        if self.table is not None:
            return self.commute_matrix[g]
        p = self.perms
        # h∘g versus g∘h for every h at once
        return np.all(p[:, p[g]] == p[g][p], axis=1)

    @cached_property
    def conj_table(self):
        """``conj_table[h, g] = h g h^-1`` (table mode only)."""
        if self.table is None:
            raise GroupError("conjugation table needs a Cayley table")
        t = self.table
        return t[t, self.inv[:, None]]

    def conj_column(self, g):
        """Array over h of h g h^-1."""
        if self.table is not None:
            return self.conj_table[:, g]
        p = self.perms
        inner = p[g][p[self.inv]]
        out = np.take_along_axis(p, inner, axis=1)
        return np.array([self._perm_index[row.tobytes()] for row in out])

    def serialize(self):
        """Canonical JSON-able description, used for cache keys and ``zoo emit``."""
        if self.perms is not None:
            gens = [self.perms[g].tolist() for g in self.generator_indices]
            return {"name": self.name, "degree": int(self.perms.shape[1]),
                    "generators": gens}
        return {"name": self.name, "cayley": self.table.tolist(),
                "generators": self.generator_indices}


def _finish(name, n, right, parent, gen_indices, perms=None, labels=None):
    if perms is not None and n > TABLE_LIMIT:
        inv = np.empty(n, dtype=np.int64)
        index = {p.tobytes(): i for i, p in enumerate(perms)}
        for i, p in enumerate(perms):
            q = np.empty_like(p)
            q[p] = np.arange(len(p))
            inv[i] = index[q.tobytes()]
        return FiniteGroup(name, n, inv, gen_indices, perms=perms, labels=labels)
    table = _table_from_tree(n, right, parent)
    inv = np.argmax(table == 0, axis=1)
    return FiniteGroup(name, n, inv, gen_indices, table=table, perms=perms,
                       labels=labels)


def from_closure(name, generators, mul, identity, cap=DEFAULT_ORDER_CAP):
    """Group generated by hashable objects under ``mul``."""
    elements, index, right, parent = closure(generators, mul, identity, cap)
    gen_indices = [index[s] for s in generators]
    return _finish(name, len(elements), right, parent, gen_indices, labels=elements)


def compose(p, q):
    """(p∘q)(x) = p(q(x)) on tuples."""
    return tuple(p[i] for i in q)


def from_permutations(name, degree, generators, cap=DEFAULT_ORDER_CAP):
    gens = []
    for g in generators:
        g = tuple(int(x) for x in g)
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise GroupError(f"not a permutation of {degree} points: {list(g)}")
        gens.append(g)
    identity = tuple(range(degree))
    elements, index, right, parent = closure(gens, compose, identity, cap)
    perms = np.array(elements, dtype=np.int64).reshape(len(elements), degree)
    gen_indices = [index[s] for s in gens]
    return _finish(name, len(elements), right, parent, gen_indices, perms=perms)


def from_cayley(name, table, generators=None):
    t = np.asarray(table, dtype=np.int64)
    n = t.shape[0] if t.ndim == 2 else 0
    if t.ndim != 2 or t.shape != (n, n) or n == 0:
        raise GroupError("Cayley table must be a non-empty square array")
    if t.min() < 0 or t.max() >= n:
        raise GroupError("Cayley table entries out of range")
    ar = np.arange(n)
    if not (np.array_equal(t[0], ar) and np.array_equal(t[:, 0], ar)):
        raise GroupError("element 0 is not a two-sided identity")
    for row in t:
        if len(set(row.tolist())) != n:
            raise GroupError("Cayley table rows are not permutations")
    if not (t == 0).any(axis=1).all():
        raise GroupError("some element has no inverse")
    # (ab)c == a(bc) for all triples, vectorised over (a, b)
    for c in range(n):
        if not np.array_equal(t[t[:, :, None], c][:, :, 0], t[:, t[:, c]]):
            raise GroupError("Cayley table is not associative")
    table = t.astype(np.int32)
    inv = np.argmax(table == 0, axis=1)
    if generators is None:
        generators = _greedy_generators(table)
    return FiniteGroup(name, n, inv, [int(g) for g in generators], table=table)


def _greedy_generators(table):
    n = table.shape[0]
    gens = []
    have = np.zeros(n, dtype=bool)
    have[0] = True
    for g in range(n):
        if have[g]:
            continue
        gens.append(g)
        have[:] = False
        have[0] = True
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for s in gens:
                y = int(table[x, s])
                if not have[y]:
                    have[y] = True
                    queue.append(y)
    return gens


def load_group(spec, cap=DEFAULT_ORDER_CAP):
    """Build a group from a dict, a JSON path, or a JSON string."""
    if isinstance(spec, (str, Path)):
        text = Path(spec).read_text() if Path(spec).exists() else str(spec)
        try:
            spec = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GroupError(f"cannot parse group description: {exc}") from exc
    if not isinstance(spec, dict):
        raise GroupError("group description must be a JSON object")
    name = spec.get("name", "G")
    if "cayley" in spec:
        return from_cayley(name, spec["cayley"], spec.get("generators"))
    if "generators" in spec:
        degree = spec.get("degree")
        if degree is None:
            gens = spec["generators"]
            degree = len(gens[0]) if gens else 0
        return from_permutations(name, int(degree), spec["generators"], cap)
    raise GroupError("group description needs 'cayley' or 'generators'")


def conjugacy_classes(G):
    """Conjugacy classes sorted by representative (= smallest member)."""
    return _classes_cached(G)


def _classes_cached(G):
    cached = getattr(G, "_classes", None)
    if cached is None:
        cached = _compute_classes(G, np.arange(G.order))
        G._classes = cached
    return cached


def _compute_classes(G, members):
    """Classes of the subgroup on ``members`` (sorted index array)."""
    seen = set()
    out = []
    n = len(members)
    for g in members.tolist():
        if g in seen:
            continue
        orbit = np.unique(G.conj_column(g)[members]).tolist()
        seen.update(orbit)
        out.append(ConjClass(g, tuple(orbit), n // len(orbit)))
    return out


def class_index(G):
    """Array mapping each element to the position of its class."""
    cached = getattr(G, "_class_index", None)
    if cached is None:
        cached = np.empty(G.order, dtype=np.int64)
        for i, c in enumerate(conjugacy_classes(G)):
            cached[list(c.members)] = i
        G._class_index = cached
    return cached


def subgroup_classes(G, H):
    """Conjugacy classes of the subgroup ``H`` under its own conjugation."""
    return _compute_classes(G, np.asarray(H.members))


def centralizer(G, elements):
    mask = np.ones(G.order, dtype=bool)
    for g in elements:
        G.check_index(g)
        mask &= G.commute_mask(g)
    return Subgroup(G, tuple(np.flatnonzero(mask).tolist()))


def generated_subgroup(G, elements):
    members = {0}
    queue = deque([0])
    gens = [int(g) for g in elements]
    while queue:
        x = queue.popleft()
        for s in gens:
            y = G.mul(x, s)
            if y not in members:
                members.add(y)
                queue.append(y)
    return Subgroup(G, tuple(sorted(members)))


def commutator_subgroup(G):
    comms = set()
    for a in range(G.order):
        for b in G.generator_indices:
            comms.add(G.mul(G.mul(a, b), G.mul(int(G.inv[a]), int(G.inv[b]))))
    # the subgroup generated by all [a, s] is normal and equals [G, G]
    return generated_subgroup(G, sorted(comms))


def abelianization(G):
    """Invariant factors d1 | d2 | ... of G/[G,G]; [] when perfect."""
    N = commutator_subgroup(G)
    nmask = N.mask
    gens = list(G.generator_indices)
    r = len(gens)
    if r == 0:
        return []
    # cosets of N, each labelled by an exponent vector along a spanning tree
    coset_of = np.full(G.order, -1, dtype=np.int64)
    reps, vecs = [], []

    def mark(x, c):
        for n in np.flatnonzero(nmask).tolist():
            coset_of[G.mul(x, n)] = c

    mark(0, 0)
    reps.append(0)
    vecs.append([0] * r)
    queue = deque([0])
    relations = []
    while queue:
        c = queue.popleft()
        x = reps[c]
        for i, s in enumerate(gens):
            y = G.mul(x, s)
            step = list(vecs[c])
            step[i] += 1
            d = int(coset_of[y])
            if d < 0:
                d = len(reps)
                mark(y, d)
                reps.append(y)
                vecs.append(step)
                queue.append(d)
            else:
                relations.append([a - b for a, b in zip(step, vecs[d])])
    relations = [v for v in relations if any(v)]
    if not relations:
        return []
    divisors = smith_normal_form(relations)
    return [d for d in divisors if d > 1]


def p_part_decomposition(G, g):
    """``{p: g_p}`` with g_p a power of g of p-power order, product = g."""
    m = int(G.element_orders[g])
    parts = {}
    for p, k in sorted(factorint(m).items()):
        q = p ** k
        rest = m // q
        # exponent ≡ 1 mod q, ≡ 0 mod rest
        e = rest * pow(rest, -1, q) % m
        parts[p] = G.power(g, e)
    return parts


def power_class_map(G, k):
    """Permutation ``perm[i] = j`` with [g_i^k] = class j."""
    if gcd(k, G.order) != 1:
        raise ValueError(f"k={k} is not coprime to |G|={G.order}")
    idx = class_index(G)
    return [int(idx[G.power(c.representative, k)]) for c in conjugacy_classes(G)]
