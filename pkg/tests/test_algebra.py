"""Fields, monomials, polynomials and linear algebra mod p."""

import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from biratkit.errors import DivisionByZero, ExponentOverflow, FieldMismatch, RingMismatch
from biratkit.field import QQ, FieldSpec, Scalar, is_prime
from biratkit.linalg import Matrix, _rref_blocked, _rref_dense, inverse, kernel, rank, row_reduce
from biratkit.monomial import GREVLEX, LEX, MonomialOrder, Packer, mono_divides, monomials_of_degree
from biratkit.polynomial import NUMPY_MUL_THRESHOLD, PolynomialRing, format_polynomial, poly_substitute

from conftest import P, random_poly, ring


# fields -------------------------------------------------------------------------

def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(70001) and is_prime(16411) and not is_prime(70003 * 3)


def test_field_rejects_composite():
    with pytest.raises(ValueError):
        FieldSpec(10)


def test_fraction_conversion_mod_p():
    K = FieldSpec(7)
    assert K.convert(Fraction(1, 3)) == 5
    with pytest.raises(DivisionByZero):
        K.convert(Fraction(1, 7))


def test_scalar_field_mismatch():
    with pytest.raises(FieldMismatch):
        Scalar.of(FieldSpec(5), 1) + Scalar.of(FieldSpec(7), 1)


@given(st.integers(1, P - 1))
def test_inverse_mod_p(a):
    K = FieldSpec(P)
    assert K.mul(a, K.inv(a)) == 1


def test_qq_inverse():
    assert QQ.inv(Fraction(-2, 3)) == Fraction(-3, 2)
    with pytest.raises(DivisionByZero):
        QQ.inv(Fraction(0))


# monomials ----------------------------------------------------------------------

def test_monomials_of_degree_count():
    # C(n + d - 1, d)
    assert len(monomials_of_degree(3, 2)) == 6
    assert len(monomials_of_degree(7, 3)) == 84


def test_grevlex_tiebreak():
    # x0*x2 < x1^2 in grevlex, opposite in lex
    assert GREVLEX.compare((1, 0, 1), (0, 2, 0)) < 0
    assert LEX.compare((1, 0, 1), (0, 2, 0)) > 0


def test_unknown_order():
    with pytest.raises(ValueError):
        MonomialOrder("deglex")


@pytest.mark.parametrize("order", [GREVLEX, LEX, MonomialOrder("block", 2), MonomialOrder("bigraded", 2)])
@given(st.lists(st.tuples(*[st.integers(0, 6)] * 4), min_size=2, max_size=8))
def test_packer_preserves_order_and_products(order, mons):
    pk = Packer(4, (1, 1, 1, 1), order)
    for a in mons:
        assert pk.unpack(pk.pack(a)) == a
        for b in mons:
            assert (pk.pack(a) < pk.pack(b)) == (order.compare(a, b) < 0)
            prod = tuple(x + y for x, y in zip(a, b))
            assert pk.pack(a) + pk.pack(b) - pk.one == pk.pack(prod)
            assert pk.divides(pk.xpack(a), pk.xpack(b)) == mono_divides(a, b)


# polynomials --------------------------------------------------------------------

def naive_product(f, g):
    K = f.ring.field
    out = {}
    for m1, c1 in f.terms.items():
        for m2, c2 in g.terms.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            out[m] = K.add(out.get(m, K.zero()), K.mul(c1, c2))
    return f.ring.from_dict(out)


def test_fast_product_matches_naive():
    R = ring(6)
    rng = random.Random(3)
    f = random_poly(R, 4, rng, 0.8)
    g = random_poly(R, 3, rng, 0.8)
    assert len(f) * len(g) >= NUMPY_MUL_THRESHOLD
    assert f * g == naive_product(f, g)


@given(st.integers(0, 10**6), st.sampled_from([2, 31, 70001, 2147483629]))
def test_product_ring_axioms(seed, p):
    R = ring(3, p)
    rng = random.Random(seed)
    f, g, h = (random_poly(R, d, rng) for d in (1, 2, 2))
    assert f * g == g * f
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f * g == naive_product(f, g)


def test_qq_arithmetic():
    R = PolynomialRing(QQ, ["a", "b"])
    a, b = R.gens()
    f = a * Fraction(1, 2) - b
    assert format_polynomial(f * f) == "1/4*a^2 - a*b + b^2"


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        ring(2).var(0) + ring(3).var(0)


def test_exponent_overflow():
    R = ring(1)
    x = R.var(0)
    with pytest.raises(ExponentOverflow):
        x ** 40000


@given(st.integers(0, 10**6))
def test_substitution_is_a_ring_map(seed):
    rng = random.Random(seed)
    R, S = ring(3), ring(4, name="t")
    images = [random_poly(S, 2, rng) for _ in range(3)]
    f, g = random_poly(R, 2, rng), random_poly(R, 3, rng)
    assert poly_substitute(f * g, images) == poly_substitute(f, images) * poly_substitute(g, images)
    assert poly_substitute(f + g, images) == poly_substitute(f, images) + poly_substitute(g, images)
    # agrees with point evaluation
    pt = [rng.randrange(P) for _ in range(4)]
    vals = [h.evaluate(pt) for h in images]
    assert poly_substitute(f, images).evaluate(pt) == f.evaluate(vals)


def test_derivative_euler():
    # sum x_i df/dx_i = deg(f) f for forms
    R = ring(4)
    f = random_poly(R, 3, random.Random(1))
    euler = sum((R.var(i) * f.derivative(i) for i in range(4)), R.zero())
    assert euler == f * 3


def test_format_zero_and_constants():
    R = ring(2)
    assert format_polynomial(R.zero()) == "0"
    assert format_polynomial(R.constant(-1)) == str(P - 1)


# linear algebra -----------------------------------------------------------------

def test_rank_and_kernel_small():
    K = FieldSpec(7)
    M = Matrix(K, [[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert rank(M) == 2
    ker = kernel(M)
    assert len(ker) == 1
    assert M.apply(ker[0]) == [0, 0, 0]


def test_matrix_inverse():
    K = FieldSpec(P)
    M = Matrix(K, [[2, 1], [1, 1]])
    Minv = inverse(M)
    assert [Minv.apply(col) for col in ([2, 1], [1, 1])] == [[1, 0], [0, 1]]
    with pytest.raises(ValueError):
        inverse(Matrix(K, [[1, 2], [2, 4]]))


def test_qq_row_reduce():
    M = Matrix(QQ, [[Fraction(1, 2), 1], [1, 2]])
    _, rk, ker = row_reduce(M)
    assert rk == 1 and ker == [[Fraction(-2), Fraction(1)]]


@pytest.mark.parametrize("shape,rank_", [((700, 300), 300), ((600, 900), 250), ((550, 550), 549)])
def test_blocked_rref_matches_dense(shape, rank_):
    gen = np.random.default_rng(7)
    rows, cols = shape
    A = (gen.integers(0, P, (rows, rank_)) @ gen.integers(0, P, (rank_, cols)) % P) if rank_ < min(shape) \
        else gen.integers(0, P, shape)
    A = A.astype(np.int64) % P
    Rd, pd = _rref_dense(A.copy(), P)
    Rb, pb = _rref_blocked(A.copy(), P)
    assert pd == pb
    assert len(pd) == min(rank_, cols)
    assert np.array_equal(Rd[: len(pd)] % P, Rb[: len(pb)] % P)


@given(st.integers(0, 10**6), st.integers(1, 12), st.integers(1, 12))
def test_kernel_property(seed, r, c):
    rng = random.Random(seed)
    K = FieldSpec(31)
    M = Matrix(K, [[rng.randrange(31) for _ in range(c)] for _ in range(r)])
    _, rk, ker = row_reduce(M)
    assert rk + len(ker) == c
    for v in ker:
        assert not any(M.apply(v))
