"""Commuting even elements of U(b): the quantum Toda integrals.

Given a W-invariant u of degree d, :func:`solve_conserved` finds an even
element of degree d whose symbol has top part u and which commutes with the
Laplacian.  The search space is the span of the even PBW monomials
X^{2K} H^J of degree <= d; the commutator with the Laplacian is linear in the
coefficients, so this is one exact sparse linear solve.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from math import comb
from typing import Sequence

from gmpy2 import mpq

from .axb import AxB, laplacian
from .certificate import Certificate
from .envelope import Element, commutator, is_even, multiply, symbol
from .errors import DegreeTooLarge, NoSolution
from .invariants import GeneratorSet, express_in_generators
from .poly import Poly, monomials_up_to
from .scalar import rref_vectors, solve_sparse

DEFAULT_CAP = 20000
_ZERO = mpq(0)


def ansatz_cap(cap: int | None = None) -> int:
    if cap is not None:
        return int(cap)
    env = os.environ.get("TODA_CAP")
    return int(env) if env else DEFAULT_CAP


def ansatz_dimension(nx: int, nh: int, d: int) -> int:
    """Number of even monomials X^{2K} H^J with 2|K| + |J| <= d."""
    return sum(comb(a + nx - 1, nx - 1) * comb(d - 2 * a + nh, nh) for a in range(d // 2 + 1))


def ansatz_basis(nx: int, nh: int, d: int) -> list[tuple]:
    """Even monomials as (x_exps, h_exps), in canonical order."""
    out = []
    for a in range(d // 2 + 1):
        for k in monomials_up_to(nx, a, exact=True):
            xe = tuple(2 * v for v in k)
            for he in monomials_up_to(nh, d - 2 * a):
                out.append((xe, he))
    out.sort(key=_mono_key)
    return out


def _mono_key(m):
    xe, he = m
    return (sum(xe) + sum(he), xe + he)


def _symbol_order_key(m):
    # pure-H monomials first, higher degree first, then lexicographic
    xe, he = m
    return (any(xe), -(sum(xe) + sum(he)), xe + he)


# -- commutator with the Laplacian --------------------------------------------

def _laplacian_parts(b: AxB, omega: Element):
    """Split a Laplacian-like element into (H-polynomial, {X-key: coefficient})."""
    zero = (0,) * b.nu
    hpart = omega.parts.get(zero, Poly.zero(b.dim_a))
    xparts = {}
    for k, p in omega.parts.items():
        if k == zero:
            continue
        if any(p.terms.keys() - {(0,) * b.dim_a}):
            return None
        xparts[k] = p.coefficient((0,) * b.dim_a)
    return hpart, xparts


def bracket_with(b: AxB, monomial: tuple, omega: Element, split=None) -> Element:
    """[X^K H^J, omega] for a diagonal algebra.

    Uses P(H) X^B = X^B P(H + lambda_B).  When omega = u(H) + sum c_B X^B this
    is X^K (H^J u(H) - u(H + lambda_K) H^J) + sum_B c_B X^{K+B} (H+lambda_B)^J - H^J.
    """
    xe, he = monomial
    nh = b.dim_a
    if split is None:
        split = _laplacian_parts(b, omega)
    if split is None or not b.diagonal:
        m = Element.monomial(b.nu, nh, xe, he)
        return commutator(b, m, omega)
    hpart, xparts = split
    P = Poly(nh, {he: 1})
    out: dict = {}
    lam = b.weight_of(xe)
    first = P * hpart - hpart.shift(lam) * P
    if first.terms:
        out[xe] = first
    for B, c in xparts.items():
        diff = (P.shift(b.weight_of(B)) - P).scale(c)
        if diff.terms:
            key = tuple(x + y for x, y in zip(xe, B))
            cur = out.get(key)
            out[key] = diff if cur is None else cur + diff
    return Element(b.nu, nh, out)


# -- results --------------------------------------------------------------------

@dataclass
class SolveResult:
    element: Element
    degree: int
    ansatz_dim: int
    kernel_dim: int              # free directions of the affine solution set
    homogeneous_kernel_dim: int  # kernel elements with zero symbol
    target: Poly

    @property
    def unique(self) -> bool:
        return self.homogeneous_kernel_dim == 0


def _element_from_vector(b: AxB, basis: Sequence, vec: dict, extra: Element | None = None) -> Element:
    terms = [(basis[j][0], basis[j][1], c) for j, c in vec.items() if c != 0]
    out = Element.from_terms(b.nu, b.dim_a, terms)
    return out + extra if extra is not None else out


def _assemble(b: AxB, omega: Element, columns: Sequence[tuple]):
    split = _laplacian_parts(b, omega) if b.diagonal else None
    rows: dict = {}
    for j, m in enumerate(columns):
        c = bracket_with(b, m, omega, split)
        for xe, he, v in c.terms():
            rows.setdefault((xe, he), {})[j] = v
    return rows


def canonical_kernel(kernel: list[dict], basis: Sequence) -> tuple[list[dict], list]:
    """RREF of kernel vectors, pivoting on pure-H columns (high degree first)."""
    order = sorted(range(len(basis)), key=lambda j: _symbol_order_key(basis[j]))
    return rref_vectors(kernel, order)


def reduce_modulo(vec: dict, reduced_kernel: list[dict], pivots: list) -> dict:
    out = dict(vec)
    for kv, p in zip(reduced_kernel, pivots):
        c = out.get(p)
        if c:
            for j, v in kv.items():
                nv = out.get(j, _ZERO) - c * v
                if nv == 0:
                    out.pop(j, None)
                else:
                    out[j] = nv
    return out


def solve_conserved(b: AxB, u: Poly, omega: Element | None = None, cap: int | None = None) -> SolveResult:
    """The even element with top symbol ``u`` (H-basis polynomial) commuting with omega.

    Lower-order freedom (adding commuting elements of smaller degree) is
    fixed by reducing against the canonical kernel basis, which sets to zero
    the coefficients of the pivot pure-H monomials.
    """
    if not u.is_homogeneous() or u.is_zero():
        raise NoSolution("target symbol must be a nonzero homogeneous polynomial")
    d = u.degree()
    dim = ansatz_dimension(b.nu, b.dim_a, d)
    limit = ansatz_cap(cap)
    if dim > limit:
        raise DegreeTooLarge(dim, limit)
    if omega is None:
        omega = laplacian(b)
    basis = ansatz_basis(b.nu, b.dim_a, d)
    zero_x = (0,) * b.nu
    fixed = {(zero_x, e): c for e, c in u.terms.items()}
    unknowns = [m for m in basis if not (m[0] == zero_x and sum(m[1]) == d)]
    target = Element.from_terms(b.nu, b.dim_a, [(k[0], k[1], c) for k, c in fixed.items()])
    rhs_elem = -_bracket_element(b, target, omega)
    rows = _assemble(b, omega, unknowns)
    rhs_terms = rhs_elem.term_dict()
    keys = list(rows.keys() | rhs_terms.keys())
    kind, part, kern, _ = solve_sparse([rows.get(k, {}) for k in keys],
                                       [rhs_terms.get(k, _ZERO) for k in keys], len(unknowns))
    if kind == "empty":
        raise NoSolution(f"no even element of degree {d} with the requested symbol commutes with omega")
    reduced, pivots = canonical_kernel(kern, unknowns)
    part = reduce_modulo(part, reduced, pivots)
    element = _element_from_vector(b, unknowns, part, target)
    symbol_rank = len(rref_vectors(
        [{j: v for j, v in kv.items() if unknowns[j][0] == zero_x} for kv in kern],
        list(range(len(unknowns))))[0])
    return SolveResult(element, d, len(unknowns), len(kern), len(kern) - symbol_rank, u)


def _bracket_element(b: AxB, p: Element, omega: Element) -> Element:
    split = _laplacian_parts(b, omega) if b.diagonal else None
    out = Element.zero(b.nu, b.dim_a)
    for xe, he, c in p.terms():
        out = out + bracket_with(b, (xe, he), omega, split).scale(c)
    return out


def normalize(b: AxB, element: Element, omega: Element | None = None, cap: int | None = None) -> Element:
    """Canonical representative of element + (commuting lower-order elements).

    Recomputes the kernel of [., omega] on the ansatz of degree deg(element),
    excluding the top pure-H monomials, and reduces ``element`` against it.
    """
    d = element.degree()
    if omega is None:
        omega = laplacian(b)
    dim = ansatz_dimension(b.nu, b.dim_a, d)
    limit = ansatz_cap(cap)
    if dim > limit:
        raise DegreeTooLarge(dim, limit)
    basis = ansatz_basis(b.nu, b.dim_a, d)
    zero_x = (0,) * b.nu
    unknowns = [m for m in basis if not (m[0] == zero_x and sum(m[1]) == d)]
    index = {m: j for j, m in enumerate(unknowns)}
    rows = _assemble(b, omega, unknowns)
    keys = list(rows.keys())
    _, _, kern, _ = solve_sparse([rows[k] for k in keys], [_ZERO] * len(keys), len(unknowns))
    reduced, pivots = canonical_kernel(kern, unknowns)
    vec, top = {}, []
    for xe, he, c in element.terms():
        j = index.get((xe, he))
        if j is None:
            top.append((xe, he, c))
        else:
            vec[j] = c
    vec = reduce_modulo(vec, reduced, pivots)
    return _element_from_vector(b, unknowns, vec, Element.from_terms(b.nu, b.dim_a, top))


# -- centralizer ---------------------------------------------------------------------

@dataclass
class Centralizer:
    degree: int
    basis: list                 # Elements spanning the commuting even elements
    zero_symbol_dim: int        # basis elements whose symbol vanishes (after reduction)
    symbol_rank: int


def centralizer_even(b: AxB, omega: Element | None = None, d: int = 2, cap: int | None = None) -> Centralizer:
    """All even elements of degree <= d commuting with omega."""
    if omega is None:
        omega = laplacian(b)
    dim = ansatz_dimension(b.nu, b.dim_a, d)
    limit = ansatz_cap(cap)
    if dim > limit:
        raise DegreeTooLarge(dim, limit)
    basis = ansatz_basis(b.nu, b.dim_a, d)
    rows = _assemble(b, omega, basis)
    keys = list(rows.keys())
    _, _, kern, _ = solve_sparse([rows[k] for k in keys], [_ZERO] * len(keys), len(basis))
    reduced, _ = canonical_kernel(kern, basis)
    zero_x = (0,) * b.nu
    sym_rank = len(rref_vectors([{j: v for j, v in kv.items() if basis[j][0] == zero_x} for kv in kern],
                                list(range(len(basis))))[0])
    elems = [_element_from_vector(b, basis, kv) for kv in reduced]
    return Centralizer(d, elems, len(kern) - sym_rank, sym_rank)


def invariant_monomial_count(degrees: Sequence[int], d: int) -> int:
    """Number of monomials in generators of the given degrees with weight <= d."""
    m = len(degrees)
    count = 0
    for e in monomials_up_to(m, d // min(degrees)):
        if sum(k * w for k, w in zip(e, degrees)) <= d:
            count += 1
    return count


# -- families --------------------------------------------------------------------------

def verify_family(b: AxB, elements: Sequence[Element], names: Sequence[str] | None = None,
                  marks_sum: int | None = None) -> Certificate:
    """All pairwise commutators, plus evenness and the degree-bound shortcut."""
    names = list(names) if names else [f"Omega{i + 1}" for i in range(len(elements))]
    if marks_sum is None and b.choice is not None:
        marks_sum = b.choice.marks_sum
    cert = Certificate("pairwise_commutativity", inputs={"algebra": b.name, "elements": names})
    for name, e in zip(names, elements):
        cert.witnesses[name] = e.to_json()
        cert.record(f"{name}:even", is_even(e))
    for i in range(len(elements)):
        for j in range(i + 1, len(elements)):
            c = commutator(b, elements[i], elements[j])
            key = f"[{names[i]},{names[j]}]"
            cert.residuals[key] = c.to_json()
            cert.record(key, c.is_zero())
            if marks_sum is not None:
                bound = elements[i].degree() + elements[j].degree() - 1
                cert.checks.append({"name": f"{key}:degree_bound", "ok": True, "asserted": False,
                                    "symbol_zero": symbol(c).is_zero(), "bound": bound,
                                    "below_threshold": bound < 2 + 2 * marks_sum})
    return cert


def change_generators(b: AxB, solved: Sequence[tuple], new_gens: GeneratorSet,
                      solved_set: GeneratorSet) -> list[tuple]:
    """Omega'_j = f_j(Omega_1, ...) where u'_j = f_j(u_1, ...).

    ``solved`` pairs each generator of ``solved_set`` (same order) with its
    element; polynomials are compared in the coordinates of ``solved_set``.
    """
    elems = [e for _, e in solved]
    out = []
    for p in new_gens.polys:
        f = express_in_generators(p, solved_set)
        total = Element.zero(b.nu, b.dim_a)
        for exps, c in f.terms.items():
            term = Element.scalar(b.nu, b.dim_a, c)
            for e, k in zip(elems, exps):
                for _ in range(k):
                    term = multiply(b, term, e)
            total = total + term
        out.append((p, total))
    return out
