"""Arithmetic in the enveloping algebra U(b) of an ax+b algebra.

Elements are stored in PBW normal form with all X's to the left of all H's:
a dict mapping an X-exponent tuple to a polynomial in the H's.  Since u is
abelian, X-monomials commute among themselves; the only rewriting needed is
moving H-polynomials to the right past X-monomials.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from gmpy2 import mpq

from .errors import AlgebraMismatch
from .poly import Poly, monomial_text
from .scalar import field, format_scalar, from_json, to_json

_ZERO = mpq(0)
_ONE = mpq(1)


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _poly_iadd(target: dict, key, p: Poly, nh: int):
    cur = target.get(key)
    if cur is None:
        target[key] = p
    else:
        s = cur + p
        if s.terms:
            target[key] = s
        else:
            del target[key]


class Element:
    """Member of U(b) in PBW normal form: sum of X^K * P_K(H)."""

    __slots__ = ("nx", "nh", "parts")

    def __init__(self, nx: int, nh: int, parts: dict | None = None):
        self.nx = nx
        self.nh = nh
        self.parts: dict = {}
        if parts:
            for k, p in parts.items():
                if p.terms:
                    self.parts[tuple(k)] = p

    # -- constructors
    @classmethod
    def zero(cls, nx, nh):
        return cls(nx, nh)

    @classmethod
    def scalar(cls, nx, nh, c):
        return cls(nx, nh, {(0,) * nx: Poly.constant(nh, c)})

    @classmethod
    def x(cls, nx, nh, i, power=1):
        e = [0] * nx
        e[i] = power
        return cls(nx, nh, {tuple(e): Poly.constant(nh, 1)})

    @classmethod
    def h(cls, nx, nh, j):
        return cls(nx, nh, {(0,) * nx: Poly.var(nh, j)})

    @classmethod
    def from_h_poly(cls, nx, p: Poly):
        return cls(nx, p.nvars, {(0,) * nx: p})

    @classmethod
    def from_terms(cls, nx, nh, terms) -> "Element":
        """Build from (x_exps, h_exps, coefficient) triples or a dict."""
        if isinstance(terms, dict):
            terms = [(k[0], k[1], v) for k, v in terms.items()]
        parts: dict = {}
        for xe, he, c in terms:
            c = field(c)
            if c == 0:
                continue
            p = parts.setdefault(tuple(xe), {})
            he = tuple(he)
            p[he] = p.get(he, _ZERO) + c
        return cls(nx, nh, {k: Poly(nh, v) for k, v in parts.items()})

    @classmethod
    def monomial(cls, nx, nh, xe, he, c=1):
        return cls.from_terms(nx, nh, [(xe, he, c)])

    # -- protocol
    def terms(self) -> Iterable:
        for xe, p in self.parts.items():
            for he, c in p.terms.items():
                yield xe, he, c

    def term_dict(self) -> dict:
        return {(xe, he): c for xe, he, c in self.terms()}

    def num_terms(self) -> int:
        return sum(len(p.terms) for p in self.parts.values())

    def is_zero(self) -> bool:
        return not self.parts

    def __bool__(self):
        return bool(self.parts)

    def _check(self, other: "Element"):
        if self.nx != other.nx or self.nh != other.nh:
            raise AlgebraMismatch("elements belong to different algebras")

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.nx == other.nx and self.nh == other.nh and self.parts == other.parts
        if other == 0:
            return not self.parts
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.term_dict().items()))

    def __add__(self, other):
        if not isinstance(other, Element):
            other = Element.scalar(self.nx, self.nh, other)
        self._check(other)
        parts = dict(self.parts)
        for k, p in other.parts.items():
            _poly_iadd(parts, k, p, self.nh)
        return Element._raw(self.nx, self.nh, parts)

    __radd__ = __add__

    def __neg__(self):
        return Element._raw(self.nx, self.nh, {k: -p for k, p in self.parts.items()})

    def __sub__(self, other):
        if not isinstance(other, Element):
            other = Element.scalar(self.nx, self.nh, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Element":
        c = field(c)
        if c == 0:
            return Element.zero(self.nx, self.nh)
        return Element._raw(self.nx, self.nh, {k: p.scale(c) for k, p in self.parts.items()})

    @classmethod
    def _raw(cls, nx, nh, parts):
        obj = cls.__new__(cls)
        obj.nx, obj.nh, obj.parts = nx, nh, parts
        return obj

    # -- structure
    def degree(self) -> int:
        return max((sum(xe) + sum(he) for xe, he, _ in self.terms()), default=-1)

    def homogeneous_part(self, d: int) -> "Element":
        return Element.from_terms(self.nx, self.nh,
                                  [(xe, he, c) for xe, he, c in self.terms() if sum(xe) + sum(he) == d])

    def truncate(self, d: int) -> "Element":
        return Element.from_terms(self.nx, self.nh,
                                  [(xe, he, c) for xe, he, c in self.terms() if sum(xe) + sum(he) <= d])

    def map_coefficients(self, fn) -> "Element":
        return Element.from_terms(self.nx, self.nh, [(xe, he, fn(c)) for xe, he, c in self.terms()])

    def sorted_terms(self) -> list:
        return sorted(self.terms(), key=lambda t: (sum(t[0]) + sum(t[1]), t[0] + t[1]))

    def to_text(self, x_names: Sequence[str] | None = None, h_names: Sequence[str] | None = None) -> str:
        if not self.parts:
            return "0"
        x_names = x_names or [f"X{i}" for i in range(self.nx)]
        h_names = h_names or [f"H{j + 1}" for j in range(self.nh)]
        out = []
        for xe, he, c in reversed(self.sorted_terms()):
            mono = monomial_text(tuple(xe) + tuple(he), list(x_names) + list(h_names))
            coef = format_scalar(c)
            out.append(f"({coef})" if mono == "1" else f"({coef})*{mono}")
        return " + ".join(out)

    def __repr__(self):
        return f"Element({self.to_text()})"

    def to_json(self) -> list:
        return [[list(xe), list(he), to_json(c)] for xe, he, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, nx, nh, data) -> "Element":
        return cls.from_terms(nx, nh, [(xe, he, from_json(c)) for xe, he, c in data])


# -- multiplication ---------------------------------------------------------

def _check_algebra(b, *elems):
    for e in elems:
        if e.nx != b.nu or e.nh != b.dim_a:
            raise AlgebraMismatch(
                f"element over ({e.nx} X, {e.nh} H) does not belong to algebra ({b.nu} X, {b.dim_a} H)")


def _mul_diagonal(b, p: Element, q: Element, max_degree=None) -> Element:
    # (X^A P(H)) (X^B Q(H)) = X^(A+B) P(H + lambda_B) Q(H)
    out: dict = {}
    weight = b.weight_of
    for B, Q in q.parts.items():
        lam = weight(B)
        for A, P in p.parts.items():
            prod = P.shift(lam) * Q
            if max_degree is not None:
                cap = max_degree - sum(A) - sum(B)
                prod = Poly._raw(prod.nvars, {e: c for e, c in prod.terms.items() if sum(e) <= cap})
            if prod.terms:
                _poly_iadd(out, _add(A, B), prod, b.dim_a)
    return Element._raw(b.nu, b.dim_a, out)


def _left_mul_h(b, j: int, e: Element) -> Element:
    """H_j * e for a general (not necessarily diagonal) action."""
    out: dict = {}
    var = Poly.var(b.dim_a, j)
    act = b.action_sparse[j]  # list over a of [(b_index, coefficient)]
    for K, P in e.parts.items():
        _poly_iadd(out, K, P * var, b.dim_a)
        for a, ka in enumerate(K):
            if not ka:
                continue
            for bi, coef in act[a]:
                nk = list(K)
                nk[a] -= 1
                nk[bi] += 1
                _poly_iadd(out, tuple(nk), P.scale(coef * ka), b.dim_a)
    return Element._raw(b.nu, b.dim_a, out)


def _mul_general(b, p: Element, q: Element, max_degree=None) -> Element:
    # H-monomials act on q one generator at a time (derivation rule)
    cache: dict = {(0,) * b.dim_a: q}

    def h_times_q(c):
        got = cache.get(c)
        if got is None:
            j = next(i for i, k in enumerate(c) if k)
            prev = list(c)
            prev[j] -= 1
            got = _left_mul_h(b, j, h_times_q(tuple(prev)))
            cache[c] = got
        return got

    out = Element.zero(b.nu, b.dim_a)
    for A, P in p.parts.items():
        acc: dict = {}
        for c, coef in P.terms.items():
            e = h_times_q(c)
            for K, Q in e.parts.items():
                _poly_iadd(acc, _add(A, K), Q.scale(coef), b.dim_a)
        out = out + Element._raw(b.nu, b.dim_a, acc)
    if max_degree is not None:
        out = out.truncate(max_degree)
    return out


def multiply(b, p: Element, q: Element, max_degree: int | None = None) -> Element:
    """PBW normal form of p*q in U(b); optionally drop terms above ``max_degree``."""
    _check_algebra(b, p, q)
    if b.diagonal:
        return _mul_diagonal(b, p, q, max_degree)
    return _mul_general(b, p, q, max_degree)


def multiply_by_derivation(b, p: Element, q: Element) -> Element:
    """Product computed with the generic derivation rule, whatever the action."""
    _check_algebra(b, p, q)
    return _mul_general(b, p, q)


def commutator(b, p: Element, q: Element) -> Element:
    return multiply(b, p, q) - multiply(b, q, p)


def power(b, p: Element, n: int) -> Element:
    result = Element.scalar(p.nx, p.nh, 1)
    for _ in range(n):
        result = multiply(b, result, p)
    return result


def symbol(p: Element) -> Poly:
    """Image under the homomorphism U(b) -> Sym(a) killing every X."""
    return p.parts.get((0,) * p.nx, Poly.zero(p.nh)).copy()


def is_even(p: Element) -> bool:
    return all(k % 2 == 0 for xe in p.parts for k in xe)


def weyl_reflect(system, i: int, p: Poly) -> Poly:
    """Simple reflection s_i on a polynomial in ambient coordinates."""
    return system.reflect_poly(i, p)
