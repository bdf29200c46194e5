"""Sparse commutative polynomials over K.

Used for Sym(a) (the symbol side) and for invariant-theory computations.
"""

from __future__ import annotations

from math import comb
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

from .scalar import field, format_scalar, to_json, from_json

_ZERO = mpq(0)
_ONE = mpq(1)


def _add_exps(a, b):
    return tuple(x + y for x, y in zip(a, b))


def monomial_key(exps):
    """Canonical monomial order: total degree, then lexicographic."""
    return (sum(exps), exps)


class Poly:
    """Polynomial in ``nvars`` commuting variables: dict exponent tuple -> scalar."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping | None = None):
        self.nvars = nvars
        self.terms: dict = {}
        if terms:
            for e, c in terms.items():
                if c != 0:
                    e = tuple(e)
                    if len(e) != nvars:
                        raise ValueError("exponent length mismatch")
                    self.terms[e] = field(c)

    @classmethod
    def _raw(cls, nvars, terms):
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        return obj

    # -- constructors
    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "Poly":
        c = field(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c != 0 else {})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): _ONE})

    @classmethod
    def linear(cls, coeffs: Sequence, const=0) -> "Poly":
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            c = field(c)
            if c != 0:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = c
        const = field(const)
        if const != 0:
            terms[(0,) * n] = const
        return cls._raw(n, terms)

    # -- basic protocol
    def copy(self) -> "Poly":
        return type(self)._raw(self.nvars, dict(self.terms))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __len__(self):
        return len(self.terms)

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different rings")
            return other
        return Poly.constant(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            v = terms.get(e)
            if v is None:
                terms[e] = c
            else:
                v = v + c
                if v == 0:
                    del terms[e]
                else:
                    terms[e] = v
        return type(self)._raw(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Poly":
        c = field(c)
        if c == 0:
            return type(self)._raw(self.nvars, {})
        return type(self)._raw(self.nvars, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        if other.nvars != self.nvars:
            raise ValueError("polynomials live in different rings")
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exps(e1, e2)
                v = terms.get(e)
                terms[e] = c1 * c2 if v is None else v + c1 * c2
        return type(self)._raw(self.nvars, {e: v for e, v in terms.items() if v != 0})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        result = Poly.constant(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return type(self)._raw(self.nvars, result.terms)

    # -- structure
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def homogeneous_part(self, d: int) -> "Poly":
        return type(self)._raw(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def top_part(self) -> "Poly":
        return self.homogeneous_part(self.degree())

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def coefficient(self, exps) -> object:
        return self.terms.get(tuple(exps), _ZERO)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: monomial_key(t[0]))

    def derivative(self, i: int) -> "Poly":
        terms = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = list(e)
                ne[i] = k - 1
                terms[tuple(ne)] = c * k
        return type(self)._raw(self.nvars, terms)

    def evaluate(self, point: Sequence):
        point = [field(p) for p in point]
        total = _ZERO
        powers = [dict() for _ in range(self.nvars)]
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    pw = powers[i].get(k)
                    if pw is None:
                        pw = point[i] ** k
                        powers[i][k] = pw
                    v = v * pw
            total = total + v
        return total

    # -- substitutions
    def substitute(self, images: Sequence["Poly | None"], nvars: int | None = None) -> "Poly":
        """Replace variable i by ``images[i]`` (``None`` keeps the variable).

        All images must live in the same ring (``nvars`` variables; defaults
        to this polynomial's ring when every image is ``None``).
        """
        if nvars is None:
            nvars = next((p.nvars for p in images if p is not None), self.nvars)
        moved = [i for i, p in enumerate(images) if p is not None]
        kept = [i for i, p in enumerate(images) if p is None]
        if kept and nvars != self.nvars:
            raise ValueError("cannot keep variables when changing rings")
        # group by the exponents of the moved variables
        groups: dict = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i in moved)
            rest = list(e) if kept else None
            if kept:
                for i in moved:
                    rest[i] = 0
                rest = tuple(rest)
            else:
                rest = (0,) * nvars
            g = groups.setdefault(key, {})
            g[rest] = g.get(rest, _ZERO) + c
        cache: list[dict] = [dict() for _ in moved]

        def power(slot, k):
            got = cache[slot].get(k)
            if got is None:
                got = images[moved[slot]] ** k
                cache[slot][k] = got
            return got

        prod_cache: dict = {}

        def product(key):
            got = prod_cache.get(key)
            if got is None:
                if not key:
                    got = Poly.constant(nvars, 1)
                else:
                    head = product(key[:-1])
                    k = key[-1]
                    got = head * power(len(key) - 1, k) if k else head
                prod_cache[key] = got
            return got

        out: dict = {}
        for key, rest in groups.items():
            img = product(key)
            for re, rc in rest.items():
                if rc == 0:
                    continue
                for e, c in img.terms.items():
                    ne = _add_exps(e, re)
                    v = out.get(ne)
                    out[ne] = rc * c if v is None else v + rc * c
        return type(self)._raw(nvars, {e: v for e, v in out.items() if v != 0})

    def linear_change(self, matrix: Sequence[Sequence], nvars: int | None = None) -> "Poly":
        """Substitute x_i -> sum_j matrix[i][j] y_j."""
        n = nvars if nvars is not None else len(matrix[0])
        images = [Poly.linear(row) if len(row) == n else None for row in matrix]
        return self.substitute(images, n)

    def shift(self, vec: Sequence) -> "Poly":
        """P(x + vec) for a constant vector."""
        vec = [field(v) for v in vec]
        if not any(v != 0 for v in vec):
            return self.copy()
        out: dict = {}
        binom_rows: dict = {}
        for e, c in self.terms.items():
            partial = {(): c}
            for i, k in enumerate(e):
                v = vec[i]
                if k == 0 or v == 0:
                    partial = {pe + (k,): pc for pe, pc in partial.items()}
                    continue
                row = binom_rows.get((i, k))
                if row is None:
                    row = [(j, comb(k, j) * v ** (k - j)) for j in range(k + 1)]
                    binom_rows[(i, k)] = row
                nxt = {}
                for pe, pc in partial.items():
                    for j, bc in row:
                        nxt[pe + (j,)] = pc * bc
                partial = nxt
            for pe, pc in partial.items():
                val = out.get(pe)
                out[pe] = pc if val is None else val + pc
        return type(self)._raw(self.nvars, {e: v for e, v in out.items() if v != 0})

    # -- presentation
    def to_text(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda t: monomial_key(t[0]), reverse=True):
            mono = monomial_text(e, names)
            coef = format_scalar(c)
            parts.append(f"({coef})*{mono}" if mono != "1" else f"({coef})")
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly({self.to_text()})"

    def to_json(self) -> list:
        return [[list(e), to_json(c)] for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, nvars: int, data: Iterable) -> "Poly":
        return cls(nvars, {tuple(e): from_json(c) for e, c in data})


def monomial_text(exps: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for name, k in zip(names, exps):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts) if parts else "1"


def power_sum(forms: Iterable[Sequence], k: int, nvars: int) -> Poly:
    """Sum over linear forms L of L^k."""
    total = Poly.zero(nvars)
    for f in forms:
        total = total + Poly.linear(f) ** k
    return total


def monomials_up_to(nvars: int, degree: int, exact: bool = False) -> list[tuple]:
    """All exponent tuples of total degree <= degree (== degree if exact)."""
    if nvars == 0:
        return [()] if (degree == 0 or not exact) else []
    out = []

    def rec(prefix, left, slots):
        if slots == 1:
            if exact:
                out.append(prefix + (left,))
            else:
                out.extend(prefix + (k,) for k in range(left + 1))
            return
        for k in range(left + 1):
            rec(prefix + (k,), left - k, slots - 1)

    rec((), degree, nvars)
    return out
