from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import oracles
from inertia.cyclotomic import Cyclotomic, from_json, imag_unit, sqrt2, sqrt5
from inertia.linalg import (IntMatrix, kernel_basis, rank_dense, rational_rank,
                            smith_normal_form, solve)
from inertia.modp import (FpMatrix, SplittingError, charpoly_mod, common_eigenvectors,
                          discrete_log, multiplicative_order, nullspace_mod, roots_mod)

small = st.integers(-6, 6)


def matrices(max_rows=6, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices())
def test_snf_matches_sympy(rows):
    assert smith_normal_form(rows) == oracles.smith_divisors(rows)


@given(matrices(8, 8))
def test_rank_matches_sympy(rows):
    want = oracles.rank_q(rows, len(rows[0]))
    assert rational_rank(rows) == want == rank_dense(rows)


@given(matrices())
def test_snf_divisibility_chain(rows):
    d = smith_normal_form(rows)
    assert all(b % a == 0 for a, b in zip(d, d[1:]))
    assert len(d) == rational_rank(rows)


def test_snf_examples():
    assert smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
    assert smith_normal_form([[0, 0], [0, 0]]) == []
    assert smith_normal_form(IntMatrix(0, 3)) == []
    assert smith_normal_form([[2, 0], [0, 3]]) == [1, 6]


@given(matrices(5, 7))
def test_kernel_and_solve(rows):
    ncols = len(rows[0])
    K = kernel_basis(rows, ncols)
    assert len(K) == ncols - rational_rank(rows)
    for v in K:
        assert all(sum(a * x for a, x in zip(r, v)) == 0 for r in rows)
    x0 = [Fraction(i + 1) for i in range(ncols)]
    rhs = [sum(a * x for a, x in zip(r, x0)) for r in rows]
    x = solve(rows, rhs)
    assert [sum(a * v for a, v in zip(r, x)) for r in rows] == rhs


def test_solve_inconsistent():
    assert solve([[1, 1], [2, 2]], [1, 3]) is None


def test_intmatrix_ops():
    A = IntMatrix.from_dense([[1, 2], [0, 1]])
    B = IntMatrix.from_dense([[1, -2], [0, 1]])
    assert A.matmul(B).to_dense() == [[1, 0], [0, 1]]
    with pytest.raises(IndexError):
        IntMatrix(1, 1, {(2, 0): 1})


# ---- cyclotomics --------------------------------------------------------------

conductors = st.sampled_from([1, 3, 4, 5, 8, 12, 15])


def cyc(N):
    return st.dictionaries(st.integers(0, N - 1), st.integers(-3, 3), max_size=4).map(
        lambda d: Cyclotomic.from_exponents(N, d))


@given(conductors.flatmap(lambda N: st.tuples(cyc(N), cyc(N), cyc(N))))
def test_field_axioms(t):
    a, b, c = t
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    if not b.is_zero():
        assert (a / b) * b == a
    assert a.conjugate().conjugate() == a


@given(conductors.flatmap(lambda N: st.tuples(st.just(N), cyc(N))), st.integers(1, 60))
def test_galois_is_a_field_map(t, k):
    N, a = t
    from math import gcd
    if gcd(k, N) != 1:
        with pytest.raises(ValueError):
            a.galois(k)
        return
    b = a * a + Cyclotomic.rational(3, N)
    assert b.galois(k) == a.galois(k) * a.galois(k) + 3
    if not a.is_zero():
        assert a.norm_to_rational() != 0


@given(conductors.flatmap(cyc))
def test_complex_embedding_and_json(a):
    z = a.to_complex()
    assert abs((a * a).to_complex() - z * z) < 1e-9
    assert from_json(a.to_json(), a.N) == a


def test_cyclotomic_identities():
    assert sqrt2(8) * sqrt2(8) == 2
    assert sqrt5(5) * sqrt5(5) == 5
    assert imag_unit(12) * imag_unit(12) == -1
    z3 = Cyclotomic.zeta(3)
    assert z3 + z3 * z3 + 1 == 0
    assert Cyclotomic.zeta(3).embed(12) == z3
    assert Cyclotomic.zeta(4) != Cyclotomic.zeta(4, 3)
    assert hash(Cyclotomic.rational(2, 5)) == hash(Cyclotomic.rational(2, 7))
    with pytest.raises(ValueError):
        Cyclotomic.zeta(4).embed(6)


# ---- mod p --------------------------------------------------------------------

def test_discrete_log_and_order():
    assert multiplicative_order(3, 7) == 6
    for v in range(1, 61):
        e = discrete_log(2, v, 61)
        assert pow(2, e, 61) == v
    with pytest.raises(ValueError):
        discrete_log(4, 3, 7)


def test_charpoly_and_roots():
    R = [[2, 1], [0, 3]]
    cp = charpoly_mod(R, 7)
    assert cp == [6, 2, 1]  # x^2 - 5x + 6
    assert roots_mod(cp, 7) == [2, 3]


def test_nullspace_and_eigenvectors():
    assert nullspace_mod([[1, 1], [2, 2]], 2, 5) == [[4, 1]]
    M = FpMatrix([[0, 1], [1, 0]], 7)
    assert common_eigenvectors([M]) == [[1, 1], [1, 6]]
    with pytest.raises(SplittingError):
        common_eigenvectors([FpMatrix([[1, 0], [0, 1]], 7)])
    with pytest.raises(ValueError):
        FpMatrix([[1]], 8)
