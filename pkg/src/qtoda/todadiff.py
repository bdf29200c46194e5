"""Differential operators on the torus: exponentials e^lambda and derivatives.

An operator is a finite sum of e^lambda P(d_1, ..., d_r, K) with the
exponential on the left; d_j is the derivative along H_j (the basis of a dual
to the simple roots) and K is a central parameter carried as an extra
polynomial variable.  Weights live in half the root lattice; they are stored
doubled, as integer simple-root coordinates, so lambda(H_j) = c_j / 2.

The only commutation rule is d_j e^lambda = e^lambda (d_j + lambda(H_j)), so
products follow the same pattern as the diagonal ax+b algebras.
"""

from __future__ import annotations

from typing import Sequence

from gmpy2 import mpq

from .axb import AxB, build_axb
from .envelope import Element
from .errors import NotInDictionaryDomain
from .poly import Poly
from .rootsys import RootSystem, marks
from .scalar import I, SQRT2, field, real_imag

_ZERO = mpq(0)
_HALF = mpq(1, 2)


def killing_normalized(system: RootSystem) -> RootSystem:
    """Same roots with the metric scaled so that long roots have squared length 2."""
    longest = max(system.root_lengths)
    s = mpq(2) / longest
    gram = [[v * s for v in row] for row in system.cov_gram]
    return RootSystem(system.simple_roots, gram, type_tag=system.type_tag, coord_names=system.coord_names)


class DiffOp:
    """Sum of e^(c/2) P(d, K), keyed by the doubled weight c."""

    __slots__ = ("rank", "parts")

    def __init__(self, rank: int, parts: dict | None = None):
        self.rank = rank
        self.parts = {}
        for c, p in (parts or {}).items():
            if p.terms:
                self.parts[tuple(int(x) for x in c)] = p

    @property
    def nvars(self) -> int:
        return self.rank + 1   # derivatives then K

    @classmethod
    def zero(cls, rank):
        return cls(rank)

    @classmethod
    def scalar(cls, rank, c):
        return cls(rank, {(0,) * rank: Poly.constant(rank + 1, c)})

    @classmethod
    def K(cls, rank):
        return cls(rank, {(0,) * rank: Poly.var(rank + 1, rank)})

    @classmethod
    def d(cls, rank, j):
        return cls(rank, {(0,) * rank: Poly.var(rank + 1, j)})

    @classmethod
    def exp(cls, doubled: Sequence[int], coeff=1):
        rank = len(doubled)
        return cls(rank, {tuple(doubled): Poly.constant(rank + 1, coeff)})

    def __eq__(self, other):
        return isinstance(other, DiffOp) and self.rank == other.rank and self.parts == other.parts

    def __hash__(self):
        return hash(frozenset((c, p) for c, p in self.parts.items()))

    def __add__(self, other):
        if not isinstance(other, DiffOp):
            other = DiffOp.scalar(self.rank, other)
        parts = dict(self.parts)
        for c, p in other.parts.items():
            parts[c] = parts[c] + p if c in parts else p
        return DiffOp(self.rank, parts)

    __radd__ = __add__

    def __neg__(self):
        return DiffOp(self.rank, {c: -p for c, p in self.parts.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        return DiffOp(self.rank, {c: p.scale(s) for c, p in self.parts.items()})

    def __mul__(self, other):
        if not isinstance(other, DiffOp):
            return self.scale(other)
        # (e^a P(d)) (e^b Q(d)) = e^(a+b) P(d + b(H)) Q(d)
        out: dict = {}
        for cb, Q in other.parts.items():
            shift = [mpq(x, 2) for x in cb] + [_ZERO]
            for ca, P in self.parts.items():
                key = tuple(x + y for x, y in zip(ca, cb))
                prod = P.shift(shift) * Q
                out[key] = out[key] + prod if key in out else prod
        return DiffOp(self.rank, out)

    def __rmul__(self, other):
        return self.scale(other)

    def drop_exponentials(self) -> "DiffOp":
        zero = (0,) * self.rank
        return DiffOp(self.rank, {zero: self.parts[zero]} if zero in self.parts else {})

    def terms(self):
        for c, p in self.parts.items():
            for e, v in p.terms.items():
                yield c, e, v

    def to_text(self) -> str:
        if not self.parts:
            return "0"
        names = [f"d{j + 1}" for j in range(self.rank)] + ["K"]
        out = []
        for c in sorted(self.parts):
            w = " + ".join(_weight_text(mpq(x, 2), i) for i, x in enumerate(c) if x).replace("+ -", "- ") or "0"
            out.append(f"e^({w})*[{self.parts[c].to_text(names)}]")
        return " + ".join(out)

    def __repr__(self):
        return f"DiffOp({self.to_text()})"


def _weight_text(coef, i: int) -> str:
    name = f"a{i + 1}"
    if coef == 1:
        return name
    if coef == -1:
        return "-" + name
    return f"{coef}*{name}"


def laplace_operator(system: RootSystem) -> DiffOp:
    """sum <alpha_i, alpha_j> d_i d_j, the flat Laplacian in the H basis."""
    r = system.rank
    g = system.simple_gram
    terms = {}
    for i in range(r):
        for j in range(r):
            if g[i][j] != 0:
                e = [0] * (r + 1)
                e[i] += 1
                e[j] += 1
                terms[tuple(e)] = terms.get(tuple(e), _ZERO) + g[i][j]
    return DiffOp(r, {(0,) * r: Poly(r + 1, terms)})


def build_M(system: RootSystem) -> DiffOp:
    """M = Laplacian/2 - K e^(-theta) - sum_i e^(alpha_i), Killing normalized."""
    ks = killing_normalized(system)
    r = ks.rank
    theta = ks.dominant("long").beta
    m = marks(ks, theta)
    out = laplace_operator(ks).scale(_HALF)
    out = out - DiffOp.exp([-2 * x for x in m]) * DiffOp.K(r)
    for i in range(r):
        out = out - DiffOp.exp([2 if k == i else 0 for k in range(r)])
    return out


def conjugate_by_exp(D: DiffOp, doubled: Sequence[int]) -> DiffOp:
    """e^lambda D e^(-lambda): every derivative d_j becomes d_j - lambda(H_j)."""
    shift = [mpq(-x, 2) for x in doubled] + [_ZERO]
    return DiffOp(D.rank, {c: p.shift(shift) for c, p in D.parts.items()})


def rho_doubled(system: RootSystem) -> tuple:
    return tuple(int(2 * x) for x in system.rho_coords)


def rho_norm2(system: RootSystem):
    ks = killing_normalized(system)
    rc = ks.rho_coords
    g = ks.simple_gram
    return sum((rc[i] * g[i][j] * rc[j] for i in range(ks.rank) for j in range(ks.rank)), _ZERO)


def character_products(system: RootSystem) -> list[DiffOp]:
    """chi_i^+ chi_i^- for i = 0..r: -K for the affine node and -1 otherwise."""
    r = system.rank
    return [-DiffOp.K(r)] + [DiffOp.scalar(r, -1) for _ in range(r)]


def build_D(system: RootSystem) -> DiffOp:
    """sum d^2 + 2 d_{h_rho} + 2 sum_{i=0..r} chi_i^+ chi_i^- e^(alpha_i)."""
    ks = killing_normalized(system)
    r = ks.rank
    out = laplace_operator(ks)
    rc = ks.rho_coords
    g = ks.simple_gram
    for j in range(r):
        # d_{h_rho} = sum_j <alpha_j, rho> d_j
        coef = sum((g[j][i] * rc[i] for i in range(r)), _ZERO)
        if coef != 0:
            out = out + DiffOp.d(r, j).scale(2 * coef)
    theta = ks.dominant("long").beta
    m = marks(ks, theta)
    chi = character_products(ks)
    out = out + (chi[0] * DiffOp.exp([-2 * x for x in m])).scale(2)
    for i in range(r):
        out = out + (chi[i + 1] * DiffOp.exp([2 if k == i else 0 for k in range(r)])).scale(2)
    return out


def conjugation_identity(system: RootSystem) -> tuple[bool, DiffOp, DiffOp]:
    """M against (e^rho D e^-rho + <rho, rho>)/2."""
    M = build_M(system)
    D = build_D(system)
    rhs = (conjugate_by_exp(D, rho_doubled(system)) + rho_norm2(system)).scale(_HALF)
    return M == rhs, M, rhs


# -- the dictionary into U(b) ----------------------------------------------------

DICTIONARY_SCALAR = I * SQRT2 * mpq(1, 4)   # sqrt(-1) / (2 sqrt 2)


def uea_algebra(system: RootSystem) -> AxB:
    """The ax+b algebra of the highest root, with the Killing-normalized metric."""
    return build_axb(killing_normalized(system), "long")


def to_uea(D: DiffOp, b: AxB, require_even: bool = True) -> Element:
    """Image under e^(alpha_i/2) -> c X_i, sqrt(K) e^(-theta/2) -> c X_0, d_j -> H_j/2.

    A term K^k e^lambda is read as (sqrt(K) e^(-theta/2))^(2k) times a product of
    e^(alpha_i/2); the exponents must be nonnegative (and even unless
    ``require_even`` is off).
    """
    r = b.dim_a
    if D.rank != r or not b.diagonal or b.choice is None:
        raise NotInDictionaryDomain("operator and algebra do not match")
    m = b.choice.marks
    halves = [Poly.linear([_HALF if k == j else _ZERO for k in range(r)]) for j in range(r)]
    terms = []
    for c, p in D.parts.items():
        for e, v in p.terms.items():
            k = e[r]
            n0 = 2 * k
            n = [c[i] + n0 * m[i] for i in range(r)]
            xe = (n0, *n)
            if any(x < 0 for x in xe):
                raise NotInDictionaryDomain(f"weight {c} with K^{k} needs a negative exponent")
            if require_even and any(x % 2 for x in xe):
                raise NotInDictionaryDomain(f"weight {c} with K^{k} is odd in a half-exponential")
            coef = field(v) * DICTIONARY_SCALAR ** sum(xe)
            hp = Poly(r, {e[:r]: 1}).substitute(halves, r)
            for he, hv in hp.terms.items():
                terms.append((xe, he, coef * hv))
    return Element.from_terms(b.nu, r, terms)


def dictionary_generators(b: AxB) -> tuple[list[Element], list[Element]]:
    """Images of the half-exponentials (c X_0..c X_r) and of the derivatives (H_j/2)."""
    xs = [b.x(a).scale(DICTIONARY_SCALAR) for a in range(b.nu)]
    hs = [b.h(j).scale(_HALF) for j in range(b.dim_a)]
    return xs, hs


def realform_split(p: Element) -> tuple[Element, Element]:
    """(real part, imaginary part) with p = real + i * imag."""
    return (p.map_coefficients(lambda c: real_imag(c)[0]),
            p.map_coefficients(lambda c: real_imag(c)[1]))
