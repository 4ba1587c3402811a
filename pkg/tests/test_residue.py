import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simplebraces.residue import (
    Modulus,
    Poly,
    ResidueError,
    RowVector,
    SquareMatrix,
    companion,
    f_matrix,
    factorize,
    hyperbolic_form,
    is_prime,
    matrix_order,
    q_poly,
)

Z2, Z3, Z4 = Modulus(2, 1), Modulus(3, 1), Modulus(2, 2)
SMALL_PRIMES = [2, 3, 5, 7]


def poly(coeffs, mod):
    return Poly(tuple(coeffs), mod)


@pytest.mark.parametrize("p,n,mod,expected", [
    (2, 1, Z3, [1, 1]),
    (3, 1, Z2, [1, 1, 1]),
    (2, 2, Z3, [1, 0, 1]),
])
def test_q_poly_examples(p, n, mod, expected):
    assert q_poly(p, n, mod) == poly(expected, mod)


@pytest.mark.parametrize("coeffs,mod,rows", [
    ([1, 1], Z3, [[2]]),
    ([1, 1, 1], Z2, [[0, 1], [1, 1]]),
    ([1, 0, 1], Z3, [[0, 2], [1, 0]]),
])
def test_companion_examples(coeffs, mod, rows):
    C = companion(poly(coeffs, mod))
    assert C.tolist() == rows
    assert poly(coeffs, mod).evaluate(C) == SquareMatrix.zeros(C.size, mod)


def test_companion_rejects_non_monic():
    with pytest.raises(ResidueError):
        companion(poly([1, 2], Z3))


def test_matrix_order_examples():
    assert matrix_order(companion(poly([1, 1], Z3))) == 2
    assert matrix_order(companion(poly([1, 1, 1], Z2))) == 3
    assert matrix_order(SquareMatrix.identity(3, Z4)) == 1
    with pytest.raises(ResidueError):
        matrix_order(SquareMatrix.from_rows([[2, 0], [0, 1]], Z4))


def test_hyperbolic_form_examples():
    assert hyperbolic_form(1, Z3).tolist() == [[0, 1], [1, 0]]
    J = hyperbolic_form(2, Z2)
    assert J.tolist() == [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]
    u, v = RowVector((1, 2), Z3), RowVector((2, 1), Z3)
    assert int(hyperbolic_form(1, Z3).bilinear(u, v)) == 2


def test_f_matrix_examples():
    assert f_matrix(SquareMatrix.from_rows([[2]], Z3)).tolist() == [[2, 0], [0, 2]]
    C = SquareMatrix.from_rows([[0, 1], [1, 1]], Z2)
    assert C.inverse().tolist() == [[1, 1], [1, 0]]
    F = f_matrix(C)
    assert F.tolist() == [[0, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 1], [0, 0, 1, 0]]
    with pytest.raises(ResidueError):
        f_matrix(SquareMatrix.from_rows([[2]], Z4))


def test_modulus_guards():
    with pytest.raises(ResidueError):
        Modulus(4, 1)
    with pytest.raises(ResidueError):
        Modulus(2, 31)
    assert Modulus(2, 30).value == 2**30


def test_factorize_and_primality():
    assert factorize(864) == {2: 5, 3: 3}
    assert [k for k in range(30) if is_prime(k)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


prime_powers = st.tuples(st.sampled_from(SMALL_PRIMES), st.integers(1, 2))


def coprime_target(p):
    return Modulus(next(r for r in SMALL_PRIMES if r != p), 1)


@given(prime_powers, st.integers(1, 2))
def test_q_poly_telescopes(pn, k):
    # (x^(p^(n-1)) - 1) q(x) = x^(p^n) - 1 over any target ring
    p, n = pn
    R = Modulus(next(r for r in SMALL_PRIMES if r != p), k)
    q = q_poly(p, n, R)
    assert q.degree == p**n - p ** (n - 1)
    lhs = (Poly.monomial(p ** (n - 1), R) - Poly.monomial(0, R)) * q
    assert lhs == Poly.monomial(p**n, R) - Poly.monomial(0, R)


@settings(max_examples=25, deadline=None)
@given(prime_powers)
def test_companion_order_and_orthogonality(pn):
    p, n = pn
    R = coprime_target(p)
    C = companion(q_poly(p, n, R))
    assert matrix_order(C) == p**n
    F, J = f_matrix(C), hyperbolic_form(C.size, R)
    assert F @ J @ F.transpose() == J


@pytest.mark.parametrize("p,n,r", [(2, 1, 3), (3, 1, 2), (2, 2, 3), (5, 1, 2), (2, 1, 5)])
def test_root_minus_identity_is_bijective(p, n, r):
    # brute force: v -> v (F^(p^(n-1)) - I) hits every vector of the module
    R = Modulus(r, 1)
    F = f_matrix(companion(q_poly(p, n, R)))
    M = F ** (p ** (n - 1)) - SquareMatrix.identity(F.size, R)
    images = {(RowVector(v, R) @ M).entries for v in itertools.product(range(r), repeat=F.size)}
    assert len(images) == r**F.size
    assert M.is_invertible()


matrices = st.integers(1, 3).flatmap(
    lambda d: st.lists(st.lists(st.integers(0, 8), min_size=d, max_size=d), min_size=d, max_size=d))


@given(matrices)
def test_inverse_round_trip(rows):
    M = SquareMatrix.from_rows(rows, Modulus(3, 2))
    if M.is_invertible():
        assert (M @ M.inverse()).is_identity()
        assert (M.inverse() @ M).is_identity()
        assert (M ** -2) @ (M ** 2) == SquareMatrix.identity(M.size, M.modulus)
    else:
        with pytest.raises(ResidueError):
            M.inverse()


@given(matrices, matrices)
def test_transpose_reverses_products(a, b):
    if len(a) != len(b):
        return
    A, B = SquareMatrix.from_rows(a, Z4), SquareMatrix.from_rows(b, Z4)
    assert (A @ B).transpose() == B.transpose() @ A.transpose()
