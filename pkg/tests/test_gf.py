import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rrcodes.gf import (
    NEG_INF,
    DimensionMismatch,
    FieldMismatch,
    MatrixGF,
    NotPrime,
    Poly,
    TooLarge,
    field_new,
    field_of_order,
    poly_linear_power,
    poly_mul,
    rank,
    rref,
    stack_rank,
)

SMALL_ORDERS = [2, 3, 4, 5, 7, 8, 9]


def _clmul(a, b):
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def _prime_poly_mulmod(a, b, p, modulus):
    """Multiply digit-encoded elements as polynomials and reduce, from scratch."""
    m = len(modulus) - 1
    da = [(a // p**i) % p for i in range(m)]
    db = [(b // p**i) % p for i in range(m)]
    prod = [0] * (2 * m)
    for i, j in itertools.product(range(m), repeat=2):
        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p
    for d in range(2 * m - 1, m - 1, -1):
        f = prod[d]
        if f:
            for i, c in enumerate(modulus):
                prod[d - m + i] = (prod[d - m + i] - f * c) % p
    return sum(prod[i] * p**i for i in range(m))


def test_prime_field():
    f = field_new(2, 1)
    assert f.q == 2
    assert f.mul(1, 1) == 1
    assert f.add(1, 1) == 0


def test_gf16_modulus_is_smallest_irreducible():
    # brute force: a degree-4 polynomial is reducible iff it is a product of
    # two polynomials of positive degree
    products = {_clmul(a, b) for a in range(2, 16) for b in range(2, 16)}
    irreducible = [v for v in range(16, 32) if v not in products]
    assert irreducible[0] == 0b10011  # x^4 + x + 1
    f = field_new(2, 4)
    assert sum(c << i for i, c in enumerate(f.modulus)) == irreducible[0]


def test_not_prime():
    with pytest.raises(NotPrime):
        field_new(4, 1)
    with pytest.raises(NotPrime):
        field_of_order(6)


def test_too_large():
    with pytest.raises(TooLarge):
        field_new(2, 17)
    with pytest.raises(TooLarge):
        field_new(257, 2)


def test_field_of_order():
    assert field_of_order(9) == field_new(3, 2)
    assert field_of_order(9).modulus == (1, 0, 1)  # x^2 + 1


@pytest.mark.parametrize("q", [4, 8, 9, 16, 27])
def test_multiplication_matches_polynomial_reduction(q):
    f = field_of_order(q)
    for a in range(q):
        for b in range(q):
            assert f.mul(a, b) == _prime_poly_mulmod(a, b, f.p, f.modulus)


@pytest.mark.parametrize("q", SMALL_ORDERS)
def test_field_axioms_exhaustive(q):
    f = field_of_order(q)
    E = range(q)
    for a in E:
        assert f.add(a, 0) == a and f.mul(a, 1) == a
        assert f.add(a, f.neg(a)) == 0
        if a:
            assert f.mul(a, f.inv(a)) == 1
    for a, b, c in itertools.product(E, repeat=3):
        assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
        assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


def test_field_axioms_sampled_gf16():
    f = field_new(2, 4)
    rng = np.random.default_rng(7)
    for a, b, c in rng.integers(0, 16, size=(10_000, 3)):
        a, b, c = int(a), int(b), int(c)
        assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
        assert f.add(a, b) == f.add(b, a)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 13, 16])
def test_frobenius(q):
    f = field_of_order(q)
    for a in range(q):
        acc = 1
        for _ in range(q):
            acc = f.mul(acc, a)
        assert acc == a


def test_table_kernel_args_agree_with_scalar_ops():
    f = field_new(3, 2)
    at, mt, nt, it = f.kernel_args
    for a in range(9):
        assert nt[a] == f.neg(a)
        if a:
            assert it[a] == f.inv(a)
        for b in range(9):
            assert at[a, b] == f.add(a, b)
            assert mt[a, b] == f.mul(a, b)


# -- polynomials --

def test_poly_examples():
    f2, f5 = field_new(2), field_new(5)
    x1 = Poly(f2, (1, 1))
    assert (x1 * x1).coeffs == (1, 0, 1)
    assert (x1 * Poly(f2, ())).is_zero()
    a = Poly(f5, (f5.neg(1), 1))
    b = Poly(f5, (f5.neg(2), 1))
    assert poly_mul(a, b).coeffs == (2, 2, 1)  # x^2 + 2x + 2


def test_zero_degree_sentinel():
    f = field_new(3)
    assert Poly(f, ()).degree == NEG_INF
    assert Poly(f, (0, 0)).degree == NEG_INF
    assert Poly(f, (2,)).degree == 0


def test_poly_field_mismatch():
    with pytest.raises(FieldMismatch):
        Poly(field_new(2), (1, 1)) * Poly(field_new(3), (1, 1))


def test_linear_power_examples():
    assert poly_linear_power(field_new(2), 0, 0).coeffs == (1,)
    assert poly_linear_power(field_new(2), 0, 3).coeffs == (0, 0, 0, 1)
    assert poly_linear_power(field_new(3), 1, 2).coeffs == (1, 1, 1)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 4, 5, 9]), st.integers(0, 8), st.data())
def test_linear_power_roots(q, e, data):
    f = field_of_order(q)
    a = data.draw(st.integers(0, q - 1))
    p = poly_linear_power(f, a, e)
    assert p.degree == e
    if e >= 1:
        assert p(a) == 0


def _poly(f, draw_coeffs):
    return Poly(f, tuple(draw_coeffs))


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([2, 3, 4, 5]), st.data())
def test_poly_mul_degree_and_distributivity(q, data):
    f = field_of_order(q)
    coeffs = st.lists(st.integers(0, q - 1), max_size=6)
    a, b, c = (_poly(f, data.draw(coeffs)) for _ in range(3))
    if not a.is_zero() and not b.is_zero():
        assert (a * b).degree == a.degree + b.degree
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


# -- matrices --

def _random_matrix(rng, f, rows, cols):
    return MatrixGF(f, rng.integers(0, f.q, size=(rows, cols)))


def _span_size(mat: MatrixGF) -> int:
    """Number of distinct vectors in the row span, by enumeration (q = 2)."""
    vecs = set()
    for coeffs in itertools.product(range(2), repeat=mat.rows):
        v = np.zeros(mat.cols, dtype=np.int64)
        for c, row in zip(coeffs, mat.data):
            if c:
                v ^= row
        vecs.add(v.tobytes())
    return len(vecs)


def test_rref_examples():
    f = field_new(2)
    eye = MatrixGF.identity(f, 3)
    assert rref(eye) == (eye, 3)
    z = MatrixGF.zeros(f, 2, 4)
    assert rref(z) == (z, 0)
    m = MatrixGF(f, [[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    assert rref(m)[1] == 2


def test_stack_rank_examples():
    f = field_new(2)
    rng = np.random.default_rng(1)
    m = _random_matrix(rng, f, 4, 6)
    assert stack_rank(m, m) == rank(m)
    assert stack_rank(m, MatrixGF.zeros(f, 3, 6)) == rank(m)
    a = MatrixGF(f, np.eye(7, dtype=np.int64)[:2])
    b = MatrixGF(f, np.eye(7, dtype=np.int64)[2:5])
    assert stack_rank(a, b) == 5


def test_stack_rank_errors():
    f = field_new(2)
    with pytest.raises(DimensionMismatch):
        stack_rank(MatrixGF.zeros(f, 1, 3), MatrixGF.zeros(f, 1, 4))
    with pytest.raises(FieldMismatch):
        stack_rank(MatrixGF.zeros(f, 1, 3), MatrixGF.zeros(field_new(3), 1, 3))


def test_rank_matches_span_enumeration():
    f = field_new(2)
    rng = np.random.default_rng(3)
    for _ in range(200):
        m = _random_matrix(rng, f, int(rng.integers(1, 7)), int(rng.integers(1, 8)))
        assert 2 ** rank(m) == _span_size(m)


def test_rref_is_canonical():
    # two different generating sets of the same space share one RREF
    f = field_new(5)
    rng = np.random.default_rng(11)
    for _ in range(100):
        m = _random_matrix(rng, f, 3, 6)
        mix = _random_matrix(rng, f, 3, 3)
        if rank(mix) < 3:
            continue
        prod = np.zeros((3, 6), dtype=np.int64)
        for i in range(3):
            for j in range(3):
                for c in range(6):
                    prod[i, c] = f.add(prod[i, c], f.mul(int(mix.data[i, j]), int(m.data[j, c])))
        assert rref(MatrixGF(f, prod))[0] == rref(m)[0]


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_rref_properties_random(q):
    f = field_of_order(q)
    rng = np.random.default_rng(q)
    for _ in range(300):
        r, c = int(rng.integers(0, 7)), int(rng.integers(1, 8))
        m = _random_matrix(rng, f, r, c)
        red, rk = rref(m)
        assert rk <= min(r, c)
        assert rref(red) == (red, rk)
        assert stack_rank(m, red) == rk
        other = _random_matrix(rng, f, int(rng.integers(0, 5)), c)
        both = stack_rank(m, other)
        assert max(rk, rank(other)) <= both <= rk + rank(other)
