"""Exact arithmetic in cyclotomic fields Q(ζ_N).

A value is a rational coefficient vector in the power basis
1, ζ, ..., ζ^(φ(N)-1), always reduced modulo Φ_N so equal numbers have
identical coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from sympy import cyclotomic_poly, symbols, totient

_x = symbols("x")


@lru_cache(maxsize=None)
def _reduction_table(N):
    """Reduced coefficient vectors of ζ^a for 0 <= a < 2φ(N)."""
    phi = int(totient(N))
    poly = [int(c) for c in reversed(cyclotomic_poly(N, _x, polys=True).all_coeffs())]
    table = []
    for a in range(max(2 * phi, N)):
        if a < phi:
            v = [0] * phi
            v[a] = 1
        else:
            prev = table[a - 1]
            # ζ^a = ζ · ζ^(a-1); shift up and replace ζ^phi by -Σ c_i ζ^i
            top = prev[-1]
            v = [0] + prev[:-1]
            if top:
                v = [vi - top * ci for vi, ci in zip(v, poly[:phi])]
        table.append(v)
    return phi, table


def _reduce(N, full):
    """Reduce a dict/sequence indexed by exponent mod N."""
    phi, table = _reduction_table(N)
    out = [Fraction(0)] * phi
    items = full.items() if isinstance(full, dict) else enumerate(full)
    for a, c in items:
        if not c:
            continue
        for i, t in enumerate(table[a % N]):
            if t:
                out[i] += c * t
    return tuple(out)


class Cyclotomic:
    __slots__ = ("N", "coeffs", "_hash")

    def __init__(self, N, coeffs):
        self.N = int(N)
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        self._hash = None

    @classmethod
    def from_exponents(cls, N, exps):
        """Σ c ζ_N^a for a mapping ``{a: c}`` or a sequence."""
        return cls(N, _reduce(N, exps))

    @classmethod
    def rational(cls, q, N=1):
        phi, _ = _reduction_table(N)
        return cls(N, (Fraction(q),) + (Fraction(0),) * (phi - 1))

    @classmethod
    def zeta(cls, N, k=1):
        return cls.from_exponents(N, {k % N: 1})

    @property
    def phi(self):
        return len(self.coeffs)

    def embed(self, M):
        """Same number inside Q(ζ_M); needs N | M."""
        if M == self.N:
            return self
        if M % self.N:
            raise ValueError(f"cannot embed conductor {self.N} into {M}")
        step = M // self.N
        return Cyclotomic.from_exponents(
            M, {a * step: c for a, c in enumerate(self.coeffs) if c})

    def _lift(self, other):
        if isinstance(other, Cyclotomic):
            if other.N == self.N:
                return self, other
            L = self.N * other.N // gcd(self.N, other.N)
            return self.embed(L), other.embed(L)
        if isinstance(other, (int, Fraction)):
            return self, Cyclotomic.rational(other, self.N)
        return NotImplemented

    def __add__(self, other):
        pair = self._lift(other)
        if pair is NotImplemented:
            return pair
        a, b = pair
        return Cyclotomic(a.N, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.N, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.N, [c * other for c in self.coeffs])
        pair = self._lift(other)
        if pair is NotImplemented:
            return pair
        a, b = pair
        prod = {}
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    prod[i + j] = prod.get(i + j, 0) + x * y
        return Cyclotomic.from_exponents(a.N, prod)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.N, [c / other for c in self.coeffs])
        return self * other.inverse()

    def inverse(self):
        # x^-1 = (product of the other conjugates) / norm
        others = Cyclotomic.rational(1, self.N)
        for k in range(2, self.N + 1):
            if gcd(k, self.N) == 1 and k % self.N != 1:
                others = others * self.galois(k)
        n = (self * others).to_rational()
        if n == 0:
            raise ZeroDivisionError("cyclotomic zero")
        return others / n

    def galois(self, k):
        """σ_k : ζ -> ζ^k."""
        if gcd(k, self.N) != 1:
            raise ValueError(f"k={k} not coprime to conductor {self.N}")
        return Cyclotomic.from_exponents(
            self.N, {a * k % self.N: c for a, c in enumerate(self.coeffs) if c})

    def conjugate(self):
        return self.galois(-1)

    def norm_to_rational(self):
        out = Cyclotomic.rational(1, self.N)
        for k in range(1, self.N + 1):
            if gcd(k, self.N) == 1:
                out = out * self.galois(k)
        return out.to_rational()

    def is_rational(self):
        return not any(self.coeffs[1:])

    def to_rational(self):
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def is_zero(self):
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        if other.N == self.N:
            return self.coeffs == other.coeffs
        a, b = self._lift(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self._hash is None:
            # hash on the minimal field so embedded copies collide
            if self.is_rational():
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash((self.N, self.coeffs))
        return self._hash

    def sort_key(self):
        return (self.N, self.coeffs)

    def to_complex(self):
        import cmath
        z = cmath.exp(2j * cmath.pi / self.N)
        return sum(float(c) * z ** a for a, c in enumerate(self.coeffs))

    def to_json(self):
        if self.is_rational():
            q = self.coeffs[0]
            return {"num": q.numerator, "den": q.denominator}
        return {"conductor": self.N,
                "coeffs": [[c.numerator, c.denominator] for c in self.coeffs]}

    def __repr__(self):
        if self.is_rational():
            return f"Cyclotomic({self.coeffs[0]})"
        terms = [f"{c}*z{self.N}^{a}" for a, c in enumerate(self.coeffs) if c]
        return "Cyclotomic(" + " + ".join(terms) + ")"


def from_json(obj, N=None):
    """Inverse of :meth:`Cyclotomic.to_json`; also accepts a bare int."""
    if isinstance(obj, int):
        return Cyclotomic.rational(obj, N or 1)
    if "num" in obj:
        return Cyclotomic.rational(Fraction(obj["num"], obj["den"]), N or 1)
    return Cyclotomic.from_exponents(
        obj["conductor"], [Fraction(n, d) for n, d in obj["coeffs"]])


def sqrt2(N=8):
    """√2 = ζ_8 + ζ_8^-1, embedded in conductor N (8 | N)."""
    return Cyclotomic.from_exponents(8, {1: 1, 7: 1}).embed(N)


def sqrt5(N=5):
    """√5 = 1 + 2(ζ_5 + ζ_5^-1), embedded in conductor N (5 | N)."""
    return Cyclotomic.from_exponents(5, {0: 1, 1: 2, 4: 2}).embed(N)


def imag_unit(N=4):
    return Cyclotomic.zeta(4).embed(N)
