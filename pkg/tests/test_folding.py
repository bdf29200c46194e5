import functools

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from qtoda.axb import bracket, laplacian
from qtoda.envelope import Element, commutator, is_even
from qtoda.errors import UnsupportedType
from qtoda.folding import (FOLDING_CASES, build_folding, direct_sum_check, displayed_nu_laplacian,
                           differences_in_complement, embed, fixed_subalgebra, fold_pipeline, ideal_meets_fixed,
                           laplacian_multiple, multiplicativity_defect, nu_project, nu_bracket_counterexample,
                           symbol_compatibility)
from qtoda.scalar import Matrix


@functools.lru_cache(maxsize=None)
def fixed(case):
    return fixed_subalgebra(build_folding(case))


def element_of(b, max_deg=3):
    term = st.tuples(st.lists(st.integers(0, 2), min_size=b.nu, max_size=b.nu),
                     st.lists(st.integers(0, 1), min_size=b.dim_a, max_size=b.dim_a),
                     st.integers(-3, 3))
    return st.lists(term, min_size=1, max_size=3).map(
        lambda ts: Element.from_terms(b.nu, b.dim_a, [(x, h, mpq(c)) for x, h, c in ts
                                                      if sum(x) + sum(h) <= max_deg]))


def test_unknown_case_rejected():
    with pytest.raises(UnsupportedType):
        build_folding("E8E8")


@pytest.mark.parametrize("case,order", [("E7F4", 2), ("E6G2", 3)])
def test_automorphism_of_finite_order(case, order):
    f = build_folding(case)
    assert f.order == order
    M = f.matrix()
    P = Matrix.identity(M.rows)
    for _ in range(order):
        P = P @ M
    assert P == Matrix.identity(M.rows)
    assert f.apply_element(laplacian(f.parent)) == laplacian(f.parent)


@pytest.mark.parametrize("case", FOLDING_CASES)
def test_tau_preserves_random_brackets(case):
    f = build_folding(case)
    b = f.parent
    dim = b.dim_a + b.nu

    @given(st.lists(st.integers(-2, 2), min_size=dim, max_size=dim),
           st.lists(st.integers(-2, 2), min_size=dim, max_size=dim))
    def check(z1, z2):
        assert f.apply(bracket(b, z1, z2)) == bracket(b, f.apply(z1), f.apply(z2))

    check()


@pytest.mark.parametrize("case", FOLDING_CASES)
def test_laplacian_folds_with_constant_one(case):
    fd = fixed(case)
    c, nu_om, om_p = laplacian_multiple(fd)
    assert c == 1
    assert nu_om == displayed_nu_laplacian(fd) == om_p


@pytest.mark.parametrize("case", FOLDING_CASES)
def test_fixed_rank_and_type(case):
    fd = fixed(case)
    assert fd.algebra.system.type_tag == {"E7F4": "F4", "E6G2": "G2"}[case]
    assert fd.algebra.choice.kind == "short"


@pytest.mark.parametrize("case", FOLDING_CASES)
def test_embedding_is_a_section_and_tau_fixed(case):
    fd = fixed(case)
    bp = fd.algebra
    f = fd.folding

    @given(element_of(bp))
    def check(p):
        e = embed(fd, p)
        assert nu_project(fd, e) == p
        assert f.apply_element(e) == e

    check()


@pytest.mark.parametrize("case", FOLDING_CASES)
def test_embedding_is_a_lie_map(case):
    fd = fixed(case)
    bp = fd.algebra
    gens = [bp.h(j) for j in range(bp.dim_a)] + [bp.x(a) for a in range(bp.nu)]
    b = fd.folding.parent
    for g in gens:
        for h in gens:
            assert embed(fd, commutator(bp, g, h)) == commutator(b, embed(fd, g), embed(fd, h))


@pytest.mark.parametrize("case", FOLDING_CASES)
def test_symbol_compatibility_random(case):
    fd = fixed(case)
    b = fd.folding.parent

    @given(element_of(b, 4))
    def check(p):
        assert symbol_compatibility(fd, p).passed
        if is_even(p):
            assert is_even(nu_project(fd, p))

    check()


def test_nu_bracket_counterexample_e7():
    cert = nu_bracket_counterexample(fixed("E7F4"))
    assert cert.passed


def test_orbit_differences_e6():
    assert differences_in_complement(fixed("E6G2")).passed


@pytest.mark.parametrize("case,meet", [("E7F4", 3), ("E6G2", 2)])
def test_left_ideal_meets_fixed_part(case, meet):
    fd = fixed(case)
    assert ideal_meets_fixed(fd).passed
    cert = direct_sum_check(fd, 2)
    assert cert.passed
    assert cert.scalars["intersection_degree_1"] == 0
    assert cert.scalars["intersection_degree_2"] == meet


def test_projection_not_multiplicative_on_invariants():
    fd = fixed("E7F4")
    bp = fd.algebra
    idx = bp.u_labels.index
    expected = (bp.x(idx("X'0"), 2) + bp.x(idx("X'1"), 2) + bp.x(idx("X'3"), 2)).scale(8)
    assert multiplicativity_defect(fd) == expected
    fd6 = fixed("E6G2")
    bp6 = fd6.algebra
    idx6 = bp6.u_labels.index
    expected6 = (bp6.x(idx6("X'0"), 2) + bp6.x(idx6("X'2"), 2)).scale(mpq(32, 3))
    assert multiplicativity_defect(fd6) == expected6


@pytest.mark.parametrize("case", FOLDING_CASES)
def test_pipeline_passes(case):
    report = fold_pipeline(case, direct_sum_degree=1)
    assert report.certificate.passed, report.certificate.failed_checks()
    assert report.c == 1
