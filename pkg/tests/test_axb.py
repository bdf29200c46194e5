import pytest
from hypothesis import given, strategies as st

from qtoda.axb import AxB, bracket, build_axb, laplacian
from qtoda.envelope import is_even, symbol
from qtoda.errors import AlgebraMismatch, NotDominant
from qtoda.rootsys import DominantChoice, build_root_system
from qtoda.scalar import Matrix

G2 = build_root_system("G2")


@pytest.mark.parametrize("tag,kind", [("A1", "long"), ("B3", "short"), ("C3", "long"), ("G2", "short"),
                                      ("F4", "short"), ("E6", "long")])
def test_laplacian_even_with_gram_symbol(tag, kind):
    system = build_root_system(tag)
    b = build_axb(system, kind)
    om = laplacian(b)
    assert is_even(om)
    assert symbol(om) == system.coords_to_h(system.gram_form())


def test_weights_are_simple_roots_and_minus_beta():
    b = build_axb(G2, "short")
    m = b.choice.marks
    for j in range(2):
        assert b.weights[j + 1] == tuple(1 if k == j else 0 for k in range(2))
    assert b.weights[0] == tuple(-x for x in m)


@given(st.lists(st.integers(-2, 2), min_size=9, max_size=9))
def test_laplacian_is_basis_independent(entries):
    b = build_axb(build_root_system("A2"), "long")
    n = b.dim_a + b.nu
    M = [[0] * n for _ in range(n)]
    for i in range(n):
        M[i][i] = 1
    # unitriangular mixing keeps the basis invertible
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            if k < len(entries):
                M[i][j] = entries[k]
                k += 1
    assert Matrix.from_rows(M).rank() == n
    assert laplacian(b, basis=M) == laplacian(b)


def test_bracket_antisymmetric_and_abelian_parts():
    b = build_axb(G2, "long")
    z1 = [1, 0, 1, 0, 2]
    z2 = [0, 3, 0, 1, 0]
    assert bracket(b, z1, z2) == [-v for v in bracket(b, z2, z1)]
    assert all(v == 0 for v in bracket(b, [1, 1, 0, 0, 0], [2, 0, 0, 0, 0]))
    assert all(v == 0 for v in bracket(b, [0, 0, 1, 1, 0], [0, 0, 0, 1, 1]))


def test_rejects_non_dominant_beta():
    with pytest.raises(NotDominant):
        build_axb(G2, DominantChoice("long", (-1, 0), (1, 0)))


def test_rejects_noncommuting_action():
    with pytest.raises(AlgebraMismatch):
        AxB(2, ["X0", "X1"], [[[1, 1], [0, 0]], [[0, 0], [1, 0]]])
