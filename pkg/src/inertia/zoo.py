"""Named groups: symmetric, alternating, cyclic, dihedral, the finite
subgroups of SL_2(C) and a few products.

Binary polyhedral groups are closed up from exact unit quaternions whose
coordinates live in Q(√2) or Q(√5); no floating point is involved.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from sympy import isprime

from .groups import GroupError, from_closure, from_permutations


@dataclass(frozen=True)
class Quad:
    """a + b√d with rational a, b."""

    a: Fraction
    b: Fraction = Fraction(0)
    d: int = 1

    def _coerce(self, o):
        if isinstance(o, Quad):
            if o.b and self.b and o.d != self.d:
                raise ValueError("mixed quadratic fields")
            return o
        return Quad(Fraction(o), Fraction(0), self.d)

    def __add__(self, o):
        o = self._coerce(o)
        d = self.d if self.b else o.d
        return Quad(self.a + o.a, self.b + o.b, d)

    def __neg__(self):
        return Quad(-self.a, -self.b, self.d)

    def __sub__(self, o):
        return self + (-self._coerce(o))

    def __mul__(self, o):
        o = self._coerce(o)
        d = self.d if self.b else o.d
        return Quad(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d)

    def key(self):
        # canonical hashable form; b = 0 forgets d
        return (self.a, self.b, self.d if self.b else 1)

    def __hash__(self):
        return hash(self.key())

    def __eq__(self, o):
        return isinstance(o, Quad) and self.key() == o.key()


def _q(a, b=0, d=1):
    return Quad(Fraction(a), Fraction(b), d)


@dataclass(frozen=True)
class Quaternion:
    w: Quad
    x: Quad
    y: Quad
    z: Quad

    def __mul__(self, o):
        a1, b1, c1, d1 = self.w, self.x, self.y, self.z
        a2, b2, c2, d2 = o.w, o.x, o.y, o.z
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )


def quat(w, x, y, z):
    conv = [c if isinstance(c, Quad) else _q(c) for c in (w, x, y, z)]
    return Quaternion(*conv)


Q_ONE = quat(1, 0, 0, 0)
HALF = Fraction(1, 2)


def binary_polyhedral_generators(name):
    """Generating unit quaternions for the three exceptional groups."""
    omega = quat(HALF, HALF, HALF, HALF)
    if name == "binary_tetrahedral":
        return [quat(0, 1, 0, 0), omega]
    if name == "binary_octahedral":
        r = _q(0, HALF, 2)  # 1/√2
        return [quat(r, r, 0, 0), omega]
    if name == "binary_icosahedral":
        # (φ + φ^-1 i + j)/2 with φ = (1+√5)/2, φ^-1 = (√5-1)/2
        phi = _q(Fraction(1, 4), Fraction(1, 4), 5)
        phi_inv = _q(Fraction(-1, 4), Fraction(1, 4), 5)
        return [omega, quat(phi, phi_inv, HALF, 0)]
    raise GroupError(f"unknown binary polyhedral group {name!r}")


def _cyclic_gen(n):
    return tuple((i + 1) % n for i in range(n))


def sym(n):
    if n < 1:
        raise GroupError("sym needs n >= 1")
    gens = [] if n < 2 else [tuple([1, 0] + list(range(2, n))), _cyclic_gen(n)]
    return from_permutations(f"sym:{n}", n, gens)


def alt(n):
    if n < 1:
        raise GroupError("alt needs n >= 1")
    if n < 3:
        return from_permutations(f"alt:{n}", n, [])
    three = tuple([1, 2, 0] + list(range(3, n)))
    if n == 3:
        return from_permutations("alt:3", 3, [three])
    if n % 2:
        long = _cyclic_gen(n)
    else:
        long = tuple([0] + [(i % (n - 1)) + 1 for i in range(1, n)])
    return from_permutations(f"alt:{n}", n, [three, long])


def cyclic(n):
    if n < 1:
        raise GroupError("cyclic needs n >= 1")
    gens = [] if n == 1 else [1]
    return from_closure(f"cyclic:{n}", gens, lambda a, b: (a + b) % n, 0)


def dihedral(n):
    """Order 2n: rotations r^k and reflections r^k s."""
    if n < 1:
        raise GroupError("dihedral needs n >= 1")

    def mul(x, y):
        k1, s1 = x
        k2, s2 = y
        return ((k1 + (-k2 if s1 else k2)) % n, s1 ^ s2)

    return from_closure(f"dihedral:{n}", [(1 % n, 0), (0, 1)], mul, (0, 0))


def binary_dihedral(n):
    """Dicyclic group of order 4n: a^k b^e with a^2n = 1, b^2 = a^n, bab^-1 = a^-1."""
    if n < 2:
        raise GroupError("binary_dihedral needs n >= 2")
    m = 2 * n

    def mul(x, y):
        k1, e1 = x
        k2, e2 = y
        k2 = -k2 if e1 else k2
        k = k1 + k2 + (n if e1 and e2 else 0)
        return (k % m, e1 ^ e2)

    return from_closure(f"binary_dihedral:{n}", [(1, 0), (0, 1)], mul, (0, 0))


def quaternion_generalized(k):
    """Generalised quaternion group of order 2^k (k >= 3)."""
    if k < 3:
        raise GroupError("quaternion_generalized needs k >= 3")
    G = binary_dihedral(2 ** (k - 2))
    G.name = f"quaternion_generalized:{k}"
    return G


def binary_polyhedral(name):
    gens = binary_polyhedral_generators(name)
    return from_closure(name, gens, lambda a, b: a * b, Q_ONE)


def heisenberg_p(p):
    """Upper unitriangular 3x3 matrices over F_p (order p^3)."""
    if not isprime(p):
        raise GroupError("heisenberg_p needs a prime")

    def mul(u, v):
        return ((u[0] + v[0]) % p, (u[1] + v[1]) % p, (u[2] + v[2] + u[0] * v[1]) % p)

    return from_closure(f"heisenberg_p:{p}", [(1, 0, 0), (0, 1, 0)], mul, (0, 0, 0))


def direct_product(A, B):
    gens = [(g, 0) for g in A.generator_indices] + [(0, h) for h in B.generator_indices]

    def mul(x, y):
        return (A.mul(x[0], y[0]), B.mul(x[1], y[1]))

    return from_closure(f"direct_product:{A.name}+{B.name}", gens, mul, (0, 0))


NAMES = ["sym", "alt", "cyclic", "dihedral", "quaternion_generalized",
         "binary_dihedral", "binary_tetrahedral", "binary_octahedral",
         "binary_icosahedral", "direct_product", "heisenberg_p"]


def zoo(name, *params):
    """Build a named group; ``zoo("sym", 4)``."""
    simple = {"sym": sym, "alt": alt, "cyclic": cyclic, "dihedral": dihedral,
              "quaternion_generalized": quaternion_generalized,
              "binary_dihedral": binary_dihedral, "heisenberg_p": heisenberg_p}
    if name in simple:
        if len(params) != 1:
            raise GroupError(f"{name} takes one integer parameter")
        return simple[name](int(params[0]))
    if name.startswith("binary_") and name in NAMES:
        if params:
            raise GroupError(f"{name} takes no parameters")
        return binary_polyhedral(name)
    if name == "direct_product":
        if len(params) != 2:
            raise GroupError("direct_product takes two groups")
        A, B = (p if hasattr(p, "mul") else parse_zoo(p) for p in params)
        return direct_product(A, B)
    raise GroupError(f"unknown zoo group {name!r}")


def parse_zoo(text):
    """Parse ``sym:4``, ``binary_icosahedral`` or
    ``direct_product:cyclic:2+cyclic:3``."""
    name, _, rest = text.partition(":")
    if name == "direct_product":
        parts = rest.split("+")
        if len(parts) != 2:
            raise GroupError("direct_product:A+B expects exactly two factors")
        return zoo(name, *parts)
    params = [p for p in rest.split(",") if p] if rest else []
    try:
        params = [int(p) for p in params]
    except ValueError as exc:
        raise GroupError(f"bad zoo parameters in {text!r}") from exc
    return zoo(name, *params)


def standard_zoo(max_order=None):
    """A fixed list of zoo groups used by the test and acceptance suites."""
    specs = ["sym:1", "sym:2", "sym:3", "sym:4", "sym:5",
             "alt:4", "alt:5",
             "cyclic:1", "cyclic:2", "cyclic:3", "cyclic:4", "cyclic:5", "cyclic:6",
             "cyclic:7", "cyclic:8", "cyclic:9", "cyclic:10", "cyclic:11", "cyclic:12",
             "dihedral:3", "dihedral:4", "dihedral:5", "dihedral:6", "dihedral:8",
             "quaternion_generalized:3", "quaternion_generalized:4",
             "binary_dihedral:3", "binary_dihedral:5",
             "binary_tetrahedral", "binary_octahedral", "binary_icosahedral",
             "heisenberg_p:2", "heisenberg_p:3", "heisenberg_p:5",
             "direct_product:cyclic:2+cyclic:2", "direct_product:cyclic:2+sym:3",
             "direct_product:sym:3+sym:3", "direct_product:cyclic:3+alt:4"]
    out = []
    for s in specs:
        G = parse_zoo(s)
        if max_order is None or G.order <= max_order:
            out.append(G)
    return out


__all__ = ["zoo", "parse_zoo", "standard_zoo", "NAMES", "Quaternion", "Quad",
           "binary_polyhedral_generators"]
