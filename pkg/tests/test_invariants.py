import pytest
import sympy
from gmpy2 import mpq

from qtoda.errors import DegenerateJacobian, NotExpressible, NotInvariant
from qtoda.invariants import (GeneratorSet, check_fundamental, e6_invariants, e7_invariants,
                              evaluate_in, express_in_generators, f4_restricted_form, g2_restricted_form,
                              generator_of_degree, generator_set, is_invariant, non_proportionality_check,
                              restrict_to_fixed)
from qtoda.poly import Poly
from qtoda.rootsys import build_root_system, folding_restriction


def to_sympy(p, xs):
    return sum((sympy.Rational(int(c.numerator), int(c.denominator)) * sympy.Mul(*[x ** k for x, k in zip(xs, e)])
                for e, c in p.terms.items()), sympy.Integer(0))


@pytest.mark.parametrize("tag", ["A2", "B2", "G2", "A3", "B3", "C3", "D4"])
def test_jacobian_is_multiple_of_root_product(tag):
    # classical: for fundamental invariants the Jacobian is c * prod of positive roots, c != 0
    system = build_root_system(tag)
    r = system.rank
    t = sympy.symbols(f"t1:{r + 1}")
    hp = generator_set(system).h_polys(system)
    jac = sympy.Matrix([[sympy.diff(to_sympy(p, t), v) for v in t] for p in hp]).det()
    G = system.simple_gram
    roots = []
    for a in system.positive_roots:
        c = system.expand(a)
        roots.append(sum(sympy.Rational(str(sum(c[k] * G[k][i] for k in range(r)))) * t[i] for i in range(r)))
    ratio = sympy.cancel(jac / sympy.Mul(*roots))
    assert ratio.is_number and ratio != 0


@pytest.mark.parametrize("tag", ["A1", "A4", "B4", "C4", "D4", "D5", "G2", "F4"])
def test_generator_sets_are_fundamental(tag):
    system = build_root_system(tag)
    cert = check_fundamental(generator_set(system), system)
    assert cert.passed


def test_e7_generators_invariant():
    system = build_root_system("E7")
    for p in e7_invariants([2, 6]).polys:
        assert is_invariant(system, p)


@pytest.mark.parametrize("tag,factor", [("A3", 1), ("F4", 6), ("E6", 12)])
def test_quadratic_generator_is_multiple_of_gram(tag, factor):
    # compared on a itself: for A_r the ambient forms differ off the sum-zero hyperplane
    system = build_root_system(tag)
    (p2,) = generator_set(system, [2]).h_polys(system)
    assert p2 == system.coords_to_h(system.gram_form()).scale(factor)


def test_dependent_set_is_rejected():
    system = build_root_system("G2")
    u1 = system.gram_form()
    with pytest.raises(DegenerateJacobian):
        check_fundamental(GeneratorSet("G2", [u1, u1 ** 3], [2, 6]), system)


def test_non_invariant_is_rejected():
    system = build_root_system("A2")
    x = Poly.var(system.ambient_dim, 0)
    with pytest.raises(NotInvariant):
        check_fundamental(GeneratorSet("A2", [system.gram_form(), x ** 3], [2, 3]), system)


def test_express_square_of_gram():
    system = build_root_system("B3")
    gs = generator_set(system)
    target = generator_of_degree(system, 2) ** 2 + gs.polys[1].scale(mpq(3))
    f = express_in_generators(target, gs)
    assert evaluate_in(f, gs.polys) == target
    with pytest.raises(NotExpressible):
        express_in_generators(Poly.var(system.ambient_dim, 0) ** 4, gs)


def test_restricted_forms():
    e7 = folding_restriction("E7F4")
    gs = e7_invariants([2, 6, 8, 12])
    for p, k in zip(gs.polys, gs.degrees):
        assert restrict_to_fixed(p, e7) == f4_restricted_form(k)
    e6 = folding_restriction("E6G2")
    for p, k in zip(e6_invariants([2, 6]).polys, (2, 6)):
        assert restrict_to_fixed(p, e6) == g2_restricted_form(k)


def test_non_proportionality_ratios():
    cert = non_proportionality_check()
    assert cert.passed
    assert [mpq(v["ratio"]) for v in cert.scalars["ratios"]] == [mpq(1, 2), mpq(27, 66)]


def test_e6_degree_five_invariant():
    system = build_root_system("E6")
    (v5,) = e6_invariants([5]).polys
    assert is_invariant(system, v5)
    assert v5.is_homogeneous() and v5.degree() == 5
