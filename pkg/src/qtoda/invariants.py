"""Fundamental Weyl-invariant polynomials.

Polynomials live in the ambient coordinates of a root system (see
:mod:`qtoda.rootsys`).  Generator sets record the normalization used for each
member so certificates are self-describing.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations, product
from typing import Sequence

from gmpy2 import mpq

from .certificate import Certificate
from .errors import DegenerateJacobian, NotExpressible, NotInvariant
from .poly import Poly, monomials_up_to, power_sum
from .rootsys import RootSystem, parse_type, table_entry
from .scalar import SQRT2, SQRT6, Matrix, field, solve_linear


@dataclass
class GeneratorSet:
    type_tag: str
    polys: list            # Poly in ambient coordinates
    degrees: list
    names: list = dc_field(default_factory=list)
    normalization: str = ""

    def __post_init__(self):
        if not self.names:
            self.names = [f"u{i + 1}" for i in range(len(self.polys))]

    def with_gram_u1(self, system: RootSystem) -> "GeneratorSet":
        """Same set with the quadratic member replaced by the gram form."""
        polys = list(self.polys)
        k = self.degrees.index(2)
        polys[k] = system.gram_form()
        note = self.normalization + "; u1 replaced by the gram form"
        return GeneratorSet(self.type_tag, polys, list(self.degrees), list(self.names), note)

    def h_polys(self, system: RootSystem) -> list:
        return [system.coords_to_h(p) for p in self.polys]

    def to_json(self) -> dict:
        return {"type": self.type_tag, "degrees": self.degrees, "names": self.names,
                "normalization": self.normalization,
                "polys": [p.to_json() for p in self.polys]}


def _pm_forms(n: int, i: int, j: int, base: Sequence) -> list[tuple]:
    """base +- x_i +- x_j over the four sign choices (1-based indices)."""
    out = []
    for si, sj in product((1, -1), repeat=2):
        v = list(base)
        v[i - 1] = v[i - 1] + si
        v[j - 1] = v[j - 1] + sj
        out.append(tuple(v))
    return out


def _form(n: int, **coeffs) -> tuple:
    v = [mpq(0)] * n
    for key, c in coeffs.items():
        v[int(key[1:]) - 1] = field(c)
    return tuple(v)


# -- E7 -----------------------------------------------------------------------

E7_TRIPLES = [(1, 2, 7), (1, 3, 6), (1, 4, 5), (2, 3, 5), (2, 4, 6), (3, 4, 7), (5, 6, 7)]
E7_DEGREES = [2, 6, 8, 10, 12, 14, 18]


def e7_forms() -> list[tuple]:
    """The 28 linear forms e_a +- e_b +- e_c over the seven triples."""
    forms = []
    for a, b, c in E7_TRIPLES:
        forms.extend(_pm_forms(7, b, c, _form(7, **{f"x{a}": 1})))
    return forms


def e7_invariants(degrees: Sequence[int] = E7_DEGREES) -> GeneratorSet:
    forms = e7_forms()
    polys = [power_sum(forms, k, 7) for k in degrees]
    return GeneratorSet("E7", polys, list(degrees), [f"v{k}" for k in degrees],
                        "v_k = sum of k-th powers of the 28 forms")


# -- E6 -----------------------------------------------------------------------

E6_DEGREES = [2, 5, 6, 8, 9, 12]


def e6_forms() -> list[tuple]:
    """The 27 weights of the minuscule representation in the E6 coordinates."""
    r23 = SQRT6 / 3          # sqrt(2/3)
    r16 = SQRT6 / 6          # 1/sqrt(6)
    s = SQRT2 / 2            # sqrt(3)/sqrt(6)
    forms = [
        _form(6, x6=2 * r23),
        _form(6, x5=SQRT2, x6=-r23),
        _form(6, x5=-SQRT2, x6=-r23),
    ]
    forms += _pm_forms(6, 3, 4, _form(6, x6=-r23))
    forms += _pm_forms(6, 1, 2, _form(6, x6=-r23))
    forms += _pm_forms(6, 2, 4, _form(6, x5=s, x6=r16))
    forms += _pm_forms(6, 1, 3, _form(6, x5=s, x6=r16))
    forms += _pm_forms(6, 2, 3, _form(6, x5=-s, x6=r16))
    # this family is -(sqrt3 x5 - x6)/sqrt6; the "+ x6" variant is not a weight
    forms += _pm_forms(6, 1, 4, _form(6, x5=-s, x6=r16))
    return forms


def e6_invariants(degrees: Sequence[int] = E6_DEGREES) -> GeneratorSet:
    forms = e6_forms()
    polys = [power_sum(forms, k, 6) for k in degrees]
    return GeneratorSet("E6", polys, list(degrees), [f"v{k}" for k in degrees],
                        "v_k = sum of k-th powers of the 27 minuscule weights")


# -- other types ---------------------------------------------------------------

def _elementary(n: int, k: int) -> Poly:
    total = Poly.zero(n)
    for idx in combinations(range(n), k):
        e = [0] * n
        for i in idx:
            e[i] = 1
        total = total + Poly(n, {tuple(e): 1})
    return total


def _coordinate_power_sum(n: int, k: int) -> Poly:
    return sum((Poly.var(n, i) ** k for i in range(n)), Poly.zero(n))


def _short_roots(system: RootSystem) -> list[tuple]:
    short = system.root_lengths[0]
    return [a for a in system.positive_roots if system.inner(a, a) == short]


def generator_set(system: RootSystem, degrees: Sequence[int] | None = None) -> GeneratorSet:
    """A fundamental generator set for the type of ``system``.

    A_r: p_2..p_{r+1}; B_r, C_r: p_2, p_4, ..., p_2r; D_r: p_2, ..., p_{2r-2}
    and x_1...x_r; F4, G2: power sums over the short roots; E6, E7: the
    minuscule-orbit power sums; E8: power sums over all roots.
    ``degrees`` selects a subset (by degree, first match for repeats).
    """
    fam, r = parse_type(system.type_tag)
    table_degrees, _, _ = table_entry(fam, r)
    n = system.ambient_dim
    polys, names = [], []
    for k in table_degrees:
        if degrees is not None and k not in degrees:
            polys.append(None)
            names.append(None)
            continue
        if fam in "ABC":
            polys.append(_coordinate_power_sum(n, k))
            names.append(f"p{k}")
        elif fam == "D":
            if k == r and len(polys) == r - 1:
                polys.append(_elementary(n, n))
                names.append("e_top")
            else:
                polys.append(_coordinate_power_sum(n, k))
                names.append(f"p{k}")
        elif fam in "FG":
            polys.append(power_sum(_short_roots(system), k, n))
            names.append(f"s{k}")
        elif (fam, r) == ("E", 7):
            polys.append(power_sum(e7_forms(), k, n))
            names.append(f"v{k}")
        elif (fam, r) == ("E", 6):
            polys.append(power_sum(e6_forms(), k, n))
            names.append(f"v{k}")
        else:
            polys.append(power_sum(system.positive_roots, k, n))
            names.append(f"r{k}")
    keep = [i for i, p in enumerate(polys) if p is not None]
    if degrees is not None:
        # first match for repeated degrees (D4 has two of degree 4)
        chosen, seen = [], set()
        for i in keep:
            if table_degrees[i] in degrees and table_degrees[i] not in seen:
                chosen.append(i)
                seen.add(table_degrees[i])
        keep = chosen
    return GeneratorSet(system.type_tag, [polys[i] for i in keep], [table_degrees[i] for i in keep],
                        [names[i] for i in keep], _NORMALIZATION[fam])


_NORMALIZATION = {
    "A": "power sums of coordinates, restricted to the sum-zero hyperplane",
    "B": "even power sums of coordinates",
    "C": "even power sums of coordinates",
    "D": "even power sums of coordinates and the product of coordinates",
    "E": "power sums over a Weyl orbit",
    "F": "power sums over short roots",
    "G": "power sums over short roots",
}


def generator_of_degree(system: RootSystem, degree: int, gram_u1: bool = True) -> Poly:
    """The generator of the given degree; degree 2 is the gram form by default."""
    if degree == 2 and gram_u1:
        return system.gram_form()
    gs = generator_set(system, [degree])
    if not gs.polys:
        raise NotExpressible(f"{system.type_tag} has no fundamental invariant of degree {degree}")
    return gs.polys[0]


# -- checks ---------------------------------------------------------------------

def is_invariant(system: RootSystem, p: Poly) -> bool:
    return all(system.reflect_poly(i, p) == p for i in range(1, system.rank + 1))


def jacobian_determinant(h_polys: Sequence[Poly], point: Sequence):
    r = len(h_polys)
    rows = [[p.derivative(j).evaluate(point) for j in range(r)] for p in h_polys]
    M = Matrix.from_rows(rows)
    return M.rank() == r, rows


SAMPLE_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)


def check_fundamental(genset: GeneratorSet, system: RootSystem) -> Certificate:
    """Invariance, degree table, and a nonzero Jacobian at a sample point."""
    r = system.rank
    cert = Certificate("fundamental_generators",
                       inputs={"type": genset.type_tag, "system": system.type_tag,
                               "degrees": genset.degrees, "names": genset.names,
                               "normalization": genset.normalization})
    if len(genset.polys) != r:
        raise DegenerateJacobian(f"need {r} generators, got {len(genset.polys)}")
    for gi, p in enumerate(genset.polys):
        for i in range(1, r + 1):
            if system.reflect_poly(i, p) != p:
                raise NotInvariant(gi + 1, i)
    cert.record("invariance", True, reflections=r, generators=len(genset.polys))
    fam, rank = parse_type(system.type_tag)
    table_degrees, _, _ = table_entry(fam, rank)
    cert.record("degrees", sorted(genset.degrees) == sorted(table_degrees),
                degrees=genset.degrees, table=table_degrees)
    hp = genset.h_polys(system)
    # sample points are sum_j p_j H_j in a; an H-polynomial is evaluated at
    # the simple-root coordinates of that vector, q = Ginv^T p
    ginv = system.simple_gram_inverse
    points = [list(range(1, r + 1)), list(SAMPLE_PRIMES[:r])]
    for pt in points:
        q = [sum((pt[j] * ginv[j][i] for j in range(r)), mpq(0)) for i in range(r)]
        ok, rows = jacobian_determinant(hp, q)
        if ok:
            cert.record("jacobian", True, point=pt)
            return cert
        cert.checks.append({"name": "jacobian", "ok": False, "point": pt, "retry": True})
    raise DegenerateJacobian(f"Jacobian vanishes at sample points {points}")


def express_in_generators(target: Poly, genset: GeneratorSet) -> Poly:
    """Polynomial f in rank-many variables with f(generators) = target.

    The target and generators must be homogeneous polynomials in the same
    variables; y_i has weight deg(generator i).
    """
    if not target.is_homogeneous():
        raise NotExpressible("target is not homogeneous")
    d = target.degree()
    degs = list(genset.degrees)
    m = len(degs)
    if target.is_zero():
        return Poly.zero(m)
    exps = [e for e in monomials_up_to(m, d // min(degs))
            if sum(k * w for k, w in zip(e, degs)) == d]
    if not exps:
        raise NotExpressible(f"no monomial in the generators has degree {d}")
    cache: dict = {}

    def gpow(i, k):
        key = (i, k)
        if key not in cache:
            cache[key] = genset.polys[i] ** k
        return cache[key]

    columns = []
    for e in exps:
        val = Poly.constant(target.nvars, 1)
        for i, k in enumerate(e):
            if k:
                val = val * gpow(i, k)
        columns.append(val)
    keys = sorted({t for c in columns for t in c.terms} | set(target.terms))
    A = Matrix.from_rows([[c.coefficient(t) for c in columns] for t in keys])
    sol = solve_linear(A, [target.coefficient(t) for t in keys])
    if sol.kind == "empty":
        raise NotExpressible("target is not a polynomial in the generators")
    return Poly(m, {e: c for e, c in zip(exps, sol.particular) if c != 0})


def evaluate_in(f: Poly, values: Sequence[Poly]) -> Poly:
    """f(values) for polynomials ``values``."""
    return f.substitute(list(values), values[0].nvars)


def proportionality_ratios(p: Poly, q: Poly, points: Sequence[Sequence]) -> list:
    """p(pt)/q(pt) at each point (None where q vanishes)."""
    out = []
    for pt in points:
        qv = q.evaluate(pt)
        out.append(None if qv == 0 else p.evaluate(pt) / qv)
    return out


# -- restriction to the fixed subspace ---------------------------------------------

def restrict_to_fixed(poly: Poly, restriction) -> Poly:
    """Restrict a polynomial on a to the fixed subspace a' (its coordinates)."""
    return restriction.restrict_poly(poly)


def f4_restricted_form(k: int) -> Poly:
    """2 * sum_{i<j} (e_i - e_j)^k + (e_i + e_j)^k on R^4."""
    forms = []
    for i, j in combinations(range(1, 5), 2):
        forms.append(_form(4, **{f"x{i}": 1, f"x{j}": -1}))
        forms.append(_form(4, **{f"x{i}": 1, f"x{j}": 1}))
    return power_sum(forms, k, 4).scale(2)


def g2_restricted_form(k: int) -> Poly:
    """6 * [(x1 - x4)^k + (2 x1)^k + (x1 + x4)^k] in the coordinates (x1, x4) of a'."""
    forms = [(1, -1), (2, 0), (1, 1)]
    return power_sum(forms, k, 2).scale(6)


def non_proportionality_check() -> Certificate:
    """nu(v6) is not a multiple of nu(v2)^3 on the G2 fixed space."""
    from .rootsys import folding_restriction

    res = folding_restriction("E6G2")
    gs = e6_invariants([2, 6])
    nu2, nu6 = (restrict_to_fixed(p, res) for p in gs.polys)
    cert = Certificate("non_proportionality", inputs={"folding": "E6G2", "generators": ["v2", "v6"]})
    cert.record("nu(v2) display", nu2 == g2_restricted_form(2))
    cert.record("nu(v6) display", nu6 == g2_restricted_form(6))
    # (nu(v2)/12)^3 = (3 x1^2 + x4^2)^3 against nu(v6)/6
    cube = (nu2.scale(mpq(1, 12))) ** 3
    six = nu6.scale(mpq(1, 6))
    values = []
    for pt in ((0, 1), (1, 0)):
        lhs, rhs = cube.evaluate(pt), six.evaluate(pt)
        values.append({"point": list(pt), "lhs": str(lhs), "rhs": str(rhs), "ratio": str(lhs / rhs)})
    r1 = cube.evaluate((0, 1)) / six.evaluate((0, 1))
    r2 = cube.evaluate((1, 0)) / six.evaluate((1, 0))
    cert.record("ratio at (0,1)", r1 == mpq(1, 2), value=str(r1))
    cert.record("ratio at (1,0)", r2 == mpq(27, 66), value=str(r2), unreduced="27/66")
    cert.record("ratios differ", r1 != r2)
    cert.scalars["ratios"] = values
    # control: nu(v2)^3 against itself has one ratio everywhere
    control = proportionality_ratios(nu2 ** 3, nu2 ** 3, [(0, 1), (1, 0), (1, 1)])
    cert.record("control", all(c == 1 for c in control))
    return cert
