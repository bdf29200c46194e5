import functools

import pytest
import sympy
from gmpy2 import mpq
from hypothesis import given, strategies as st

from qtoda.errors import DivisionByZero
from qtoda.scalar import (I, OMEGA, SQRT2, SQRT3, Matrix, coords, field, field_inv, from_coords, kernel, real_imag,
                          rref_vectors, solve_linear, solve_sparse)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
elements = st.lists(st.one_of(st.just(0), rationals), min_size=8, max_size=8).map(
    lambda c: from_coords([mpq(x.numerator, x.denominator) if x else 0 for x in c]))


@functools.lru_cache(maxsize=None)
def oracle():
    """sympy's own number field and the images of our eight basis vectors in it."""
    K = sympy.QQ.algebraic_field(sympy.sqrt(2), sympy.sqrt(3), sympy.sqrt(-3))
    w = sympy.Rational(-1, 2) + sympy.sqrt(-3) / 2
    roots = [sympy.Integer(1), sympy.sqrt(2), sympy.sqrt(3), sympy.sqrt(6)]
    return K, [K.from_sympy(b) for b in roots + [b * w for b in roots]]


def image(x):
    K, basis = oracle()
    out = K.zero
    for c, b in zip(coords(x), basis):
        if c:
            out += K.convert(sympy.Rational(int(c.numerator), int(c.denominator))) * b
    return out


@given(elements, elements)
def test_product_matches_sympy(x, y):
    assert image(x * y) == image(x) * image(y)
    assert image(x + y) == image(x) + image(y)


@given(elements)
def test_inverse_matches_sympy(x):
    if x == 0:
        with pytest.raises(DivisionByZero):
            field_inv(x)
        return
    assert x * (1 / x) == 1
    K, _ = oracle()
    assert image(1 / x) == K.one / image(x)


@given(elements, elements, elements)
def test_field_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x - y == -(y - x)


def test_named_constants():
    assert SQRT2 * SQRT2 == 2 and SQRT3 * SQRT3 == 3
    assert OMEGA ** 3 == 1 and OMEGA ** 2 + OMEGA + 1 == 0
    assert I * I == -1
    K, _ = oracle()
    assert image(I) == K.from_sympy(sympy.I)


def test_rationals_are_demoted():
    x = SQRT2 * SQRT2
    assert field(x) == mpq(2)
    assert type(field(x)) is type(mpq(2))


@given(elements, elements)
def test_real_imag_split(x, y):
    z = x + I * y
    re, im = real_imag(z)
    assert re + I * im == z


def test_matrix_inverse_round_trip():
    A = Matrix.from_rows([[1, SQRT2, 0], [OMEGA, 1, SQRT3], [0, 2, 1]])
    assert A @ A.inverse() == Matrix.identity(3)
    assert A.rank() == 3


@given(st.lists(st.lists(st.one_of(st.just(0), elements), min_size=3, max_size=3), min_size=1, max_size=4),
       st.lists(elements, min_size=3, max_size=3))
def test_solver_round_trip(rows, x):
    A = Matrix.from_rows(rows)
    b = A.matvec(x)
    sol = solve_linear(A, b)
    assert A.matvec(sol.particular) == b
    assert sol.kernel_dim == 3 - A.rank()
    for k in sol.kernel:
        assert all(v == 0 for v in A.matvec(k))


def test_inconsistent_system():
    kind, *_ = solve_sparse([{0: 1}, {0: 1}], [1, 2], 1)
    assert kind == "empty"


def test_kernel_of_singular():
    A = Matrix.from_rows([[1, 2], [2, 4]])
    (k,) = kernel(A)
    assert A.matvec(k) == [0, 0]


def test_rref_respects_order():
    vecs = [{"a": 1, "b": 1}, {"b": 1}]
    basis, pivots = rref_vectors(vecs, ["b", "a"])
    assert pivots[0] == "b"
    assert len(basis) == 2
