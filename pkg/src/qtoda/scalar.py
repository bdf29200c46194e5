"""Exact scalars: rationals and the number field K = Q(sqrt2, sqrt3, omega).

Rational values are carried as ``gmpy2.mpq``.  Elements of K that are not
rational are carried as :class:`FieldElem`; every arithmetic result that
happens to be rational is demoted back to ``mpq``, so a given value has
exactly one representation and rational-only workloads never pay for the
eight-coordinate arithmetic.

The module also holds the exact linear solver used throughout the package
(sparse Gauss-Jordan elimination over K).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

from gmpy2 import mpq

from .errors import DivisionByZero

Q = mpq

BASIS_LABELS = ("1", "√2", "√3", "√6", "ω", "√2ω", "√3ω", "√6ω")

_ZERO = mpq(0)
_ONE = mpq(1)


# --- arithmetic in the real subfield F = Q(sqrt2, sqrt3), coordinates (1, √2, √3, √6)

def _fmul(x, y):
    p1, q1, r1, s1 = x
    p2, q2, r2, s2 = y
    return (
        p1 * p2 + 2 * q1 * q2 + 3 * r1 * r2 + 6 * s1 * s2,
        p1 * q2 + q1 * p2 + 3 * (r1 * s2 + s1 * r2),
        p1 * r2 + r1 * p2 + 2 * (q1 * s2 + s1 * q2),
        p1 * s2 + s1 * p2 + q1 * r2 + r1 * q2,
    )


def _fadd(x, y):
    return (x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3])


def _fsub(x, y):
    return (x[0] - y[0], x[1] - y[1], x[2] - y[2], x[3] - y[3])


def _finv(x):
    # x = u + v*sqrt3 with u, v in Q(sqrt2); 1/x = (u - v sqrt3) / (u^2 - 3 v^2)
    p, q, r, s = x
    u0, u1, v0, v1 = p, q, r, s
    n0 = u0 * u0 + 2 * u1 * u1 - 3 * (v0 * v0 + 2 * v1 * v1)
    n1 = 2 * u0 * u1 - 6 * v0 * v1
    d = n0 * n0 - 2 * n1 * n1
    if d == 0:
        raise DivisionByZero("division by zero in K")
    i0, i1 = n0 / d, -n1 / d
    conj = (u0, u1, -v0, -v1)
    return _fmul(conj, (i0, i1, _ZERO, _ZERO))


_F0 = (_ZERO, _ZERO, _ZERO, _ZERO)

RATIONAL_TYPES = (int, type(_ONE), Fraction)


class FieldElem:
    """A non-rational element of K in the basis {1, √2, √3, √6} x {1, ω}.

    Use :func:`field` (or arithmetic on the exported constants) to build
    values; the constructor does not demote rational inputs.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable):
        c = tuple(mpq(v) for v in coeffs)
        if len(c) != 8:
            raise ValueError("FieldElem needs 8 coordinates")
        self.c = c

    # -- construction helpers
    @staticmethod
    def _make(c):
        if not any(c[1:]):
            return c[0]
        obj = FieldElem.__new__(FieldElem)
        obj.c = c
        return obj

    @property
    def coeffs(self) -> tuple:
        return self.c

    def _pair(self):
        return self.c[:4], self.c[4:]

    # -- arithmetic
    def __add__(self, other):
        if isinstance(other, FieldElem):
            return FieldElem._make(tuple(a + b for a, b in zip(self.c, other.c)))
        if isinstance(other, RATIONAL_TYPES):
            c = list(self.c)
            c[0] = c[0] + mpq(other)
            return FieldElem._make(tuple(c))
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        obj = FieldElem.__new__(FieldElem)
        obj.c = tuple(-a for a in self.c)
        return obj

    def __sub__(self, other):
        if isinstance(other, FieldElem):
            return FieldElem._make(tuple(a - b for a, b in zip(self.c, other.c)))
        if isinstance(other, RATIONAL_TYPES):
            c = list(self.c)
            c[0] = c[0] - mpq(other)
            return FieldElem._make(tuple(c))
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, FieldElem):
            a1, b1 = self._pair()
            a2, b2 = other._pair()
            a1a2 = _fmul(a1, a2)
            b1b2 = _fmul(b1, b2)
            cross = _fadd(_fmul(a1, b2), _fmul(b1, a2))
            return FieldElem._make(_fsub(a1a2, b1b2) + _fsub(cross, b1b2))
        if isinstance(other, RATIONAL_TYPES):
            if other == 0:
                return _ZERO
            other = mpq(other)
            obj = FieldElem.__new__(FieldElem)
            obj.c = tuple(a * other for a in self.c)
            return obj
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self):
        a, b = self._pair()
        # 1/(a + b w) = (a - b - b w) / (a^2 - a b + b^2)
        norm = _fadd(_fsub(_fmul(a, a), _fmul(a, b)), _fmul(b, b))
        ninv = _finv(norm)
        num_a = _fsub(a, b)
        num_b = tuple(-v for v in b)
        return FieldElem._make(_fmul(num_a, ninv) + _fmul(num_b, ninv))

    def __truediv__(self, other):
        return self * field_inv(other)

    def __rtruediv__(self, other):
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return field_inv(self) ** (-n)
        result = _ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparisons
    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.c == other.c
        if isinstance(other, RATIONAL_TYPES):
            return False  # canonical form: a FieldElem is never rational
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __bool__(self):
        return True

    def __repr__(self):
        return f"FieldElem({format_scalar(self)})"

    def __str__(self):
        return format_scalar(self)


def field(value) -> "mpq | FieldElem":
    """Coerce ``value`` to the canonical scalar representation."""
    if isinstance(value, FieldElem):
        return FieldElem._make(value.c)
    if isinstance(value, str):
        return mpq(value)
    if isinstance(value, (list, tuple)):
        return FieldElem._make(tuple(mpq(v) for v in value))
    return mpq(value)


def coords(value) -> tuple:
    """The 8 rational coordinates of a scalar."""
    if isinstance(value, FieldElem):
        return value.c
    return (mpq(value),) + (_ZERO,) * 7


def from_coords(c: Sequence) -> "mpq | FieldElem":
    return FieldElem._make(tuple(mpq(v) for v in c))


def is_rational(value) -> bool:
    return not isinstance(value, FieldElem)


def field_mul(a, b):
    return a * b


def field_inv(a):
    if isinstance(a, FieldElem):
        return a.inverse()
    if a == 0:
        raise DivisionByZero("division by zero")
    return _ONE / mpq(a)


def field_div(a, b):
    return a * field_inv(b)


SQRT2 = FieldElem._make((_ZERO, _ONE, _ZERO, _ZERO, _ZERO, _ZERO, _ZERO, _ZERO))
SQRT3 = FieldElem._make((_ZERO, _ZERO, _ONE, _ZERO, _ZERO, _ZERO, _ZERO, _ZERO))
SQRT6 = FieldElem._make((_ZERO, _ZERO, _ZERO, _ONE, _ZERO, _ZERO, _ZERO, _ZERO))
OMEGA = FieldElem._make((_ZERO, _ZERO, _ZERO, _ZERO, _ONE, _ZERO, _ZERO, _ZERO))
# i = (2ω + 1)/√3
I = (2 * OMEGA + 1) * field_inv(SQRT3)


def real_imag(value):
    """Split a scalar as re + i*im with re, im in the real subfield Q(√2, √3)."""
    if not isinstance(value, FieldElem):
        return value, _ZERO
    a, b = value._pair()
    # a + b w = (a - b/2) + i (b sqrt3 / 2)
    half = mpq(1, 2)
    re = FieldElem._make(tuple(x - y * half for x, y in zip(a, b)) + _F0)
    im = FieldElem._make(_fmul(b, (_ZERO, _ZERO, half, _ZERO)) + _F0)
    return re, im


def format_scalar(value) -> str:
    if not isinstance(value, FieldElem):
        return str(mpq(value))
    parts = []
    for coef, label in zip(value.c, BASIS_LABELS):
        if coef == 0:
            continue
        if label == "1":
            parts.append(str(coef))
        elif coef == 1:
            parts.append(label)
        elif coef == -1:
            parts.append("-" + label)
        else:
            parts.append(f"{coef}*{label}")
    return " + ".join(parts).replace("+ -", "- ")


def to_json(value) -> list:
    """JSON form: 8 strings "p/q" in the fixed basis order."""
    return [f"{c.numerator}/{c.denominator}" for c in coords(value)]


def from_json(data) -> "mpq | FieldElem":
    if isinstance(data, (int, str)):
        return mpq(data)
    return from_coords([mpq(s) for s in data])


# --- linear algebra --------------------------------------------------------


class Matrix:
    """Matrix over K.

    Entries are kept row-sparse (one dict per row), which is what the
    elimination works on; :attr:`entries` gives the dense grid.
    """

    def __init__(self, rows: int, cols: int, data=None):
        self.rows = rows
        self.cols = cols
        self._rows: list[dict[int, object]] = [dict() for _ in range(rows)]
        if data is not None:
            if len(data) != rows:
                raise ValueError("row count mismatch")
            for i, row in enumerate(data):
                if len(row) != cols:
                    raise ValueError("column count mismatch")
                for j, v in enumerate(row):
                    if v != 0:
                        self._rows[i][j] = field(v)

    @classmethod
    def from_rows(cls, data) -> "Matrix":
        data = [list(r) for r in data]
        return cls(len(data), len(data[0]) if data else 0, data)

    @classmethod
    def from_sparse(cls, rows: Sequence[dict], cols: int) -> "Matrix":
        m = cls(len(rows), cols)
        for i, r in enumerate(rows):
            m._rows[i] = {j: v for j, v in r.items() if v != 0}
        return m

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        m = cls(n, n)
        for i in range(n):
            m._rows[i][i] = _ONE
        return m

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols)

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i].get(j, _ZERO)

    def __setitem__(self, ij, value):
        i, j = ij
        value = field(value)
        if value == 0:
            self._rows[i].pop(j, None)
        else:
            self._rows[i][j] = value

    @property
    def entries(self) -> list[list]:
        return [[r.get(j, _ZERO) for j in range(self.cols)] for r in self._rows]

    def sparse_rows(self) -> list[dict]:
        return [dict(r) for r in self._rows]

    def matvec(self, x: Sequence) -> list:
        out = []
        for r in self._rows:
            s = _ZERO
            for j, v in r.items():
                if x[j] != 0:
                    s = s + v * x[j]
            out.append(s)
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = Matrix(self.rows, other.cols)
        for i, r in enumerate(self._rows):
            acc: dict[int, object] = {}
            for k, v in r.items():
                for j, w in other._rows[k].items():
                    acc[j] = acc.get(j, _ZERO) + v * w
            out._rows[i] = {j: v for j, v in acc.items() if v != 0}
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self._rows == other._rows
        )

    def transpose(self) -> "Matrix":
        out = Matrix(self.cols, self.rows)
        for i, r in enumerate(self._rows):
            for j, v in r.items():
                out._rows[j][i] = v
        return out

    def rank(self) -> int:
        return len(_eliminate([dict(r) for r in self._rows], self.cols).pivots)

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("not square")
        n = self.rows
        rows = []
        for i, r in enumerate(self._rows):
            row = dict(r)
            row[n + i] = _ONE
            rows.append(row)
        ech = _eliminate(rows, n)
        if len(ech.pivots) != n:
            raise DivisionByZero("singular matrix")
        inv = Matrix(n, n)
        for col, ridx in ech.pivots:
            inv._rows[col] = {j - n: v for j, v in ech.rows[ridx].items() if j >= n}
        return inv

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols})"


@dataclass
class _Echelon:
    rows: list
    pivots: list  # (column, row index), in pivot order
    active: set = dc_field(default_factory=set)


def _eliminate(rows: list[dict], ncols: int, order: Sequence[int] | None = None) -> _Echelon:
    """Sparse Gauss-Jordan elimination, in place.

    Columns are visited in ``order`` (default 0..ncols-1); the pivot row for
    a column is the remaining row with the fewest entries, lowest index on a
    tie.  Entries at indices >= ncols (right-hand sides) are carried along
    but never pivoted on.  The result is fully reduced: each pivot column is
    zero outside its pivot row and the pivot entry is 1.
    """
    colmap: dict[int, set] = {}
    for i, r in enumerate(rows):
        for j in r:
            colmap.setdefault(j, set()).add(i)
    remaining = set(range(len(rows)))
    pivots = []
    for c in order if order is not None else range(ncols):
        holders = colmap.get(c)
        if not holders:
            continue
        cands = [i for i in holders if i in remaining]
        if not cands:
            continue
        p = min(cands, key=lambda i: (len(rows[i]), i))
        remaining.discard(p)
        prow = rows[p]
        inv = field_inv(prow[c])
        if inv != 1:
            for j in prow:
                prow[j] = prow[j] * inv
        pitems = list(prow.items())
        for i in list(holders):
            if i == p:
                continue
            row = rows[i]
            f = row[c]
            for j, v in pitems:
                if j in row:
                    nv = row[j] - f * v
                    if nv == 0:
                        del row[j]
                        colmap[j].discard(i)
                    else:
                        row[j] = nv
                else:
                    row[j] = -f * v
                    colmap.setdefault(j, set()).add(i)
        holders.intersection_update((p,))
        pivots.append((c, p))
    return _Echelon(rows, pivots, remaining)


@dataclass
class LinearSolution:
    """Solution set of A x = b.

    ``kind`` is "unique", "affine" or "empty".  ``particular`` sets every
    free variable to zero; ``kernel`` has one vector per free column, in
    column order, with a 1 in that column.
    """

    kind: str
    particular: list | None
    kernel: list[list]
    pivot_columns: list[int]

    @property
    def kernel_dim(self) -> int:
        return len(self.kernel)

    def contains(self, A: Matrix, b: Sequence, x: Sequence) -> bool:
        return [v - w for v, w in zip(A.matvec(x), b)] == [0] * len(b)


def solve_sparse(rows: Sequence[dict], rhs: Sequence, ncols: int,
                 order: Sequence[int] | None = None, want_kernel: bool = True):
    """Solve a sparse system; rows are dicts column -> scalar.

    Returns (kind, particular as dict, kernel as list of dicts, pivot columns).
    """
    work = []
    for r, b in zip(rows, rhs):
        row = {j: field(v) for j, v in r.items() if v != 0}
        if b != 0:
            row[ncols] = field(b)
        work.append(row)
    ech = _eliminate(work, ncols, order)
    for i in ech.active:
        if work[i]:
            # only a right-hand side entry can survive in a non-pivot row
            return "empty", None, [], [c for c, _ in ech.pivots]
    pivot_of = {c: p for c, p in ech.pivots}
    particular = {}
    for c, p in ech.pivots:
        v = work[p].get(ncols)
        if v is not None:
            particular[c] = v
    kernel = []
    if want_kernel:
        free = [c for c in (order if order is not None else range(ncols)) if c not in pivot_of]
        free_set = set(free)
        # column -> pivot rows mentioning it
        mentions: dict[int, list] = {}
        for c, p in ech.pivots:
            for j, v in work[p].items():
                if j in free_set:
                    mentions.setdefault(j, []).append((c, v))
        for f in free:
            vec = {f: _ONE}
            for c, v in mentions.get(f, ()):
                vec[c] = -v
            kernel.append(vec)
    kind = "unique" if len(pivot_of) == ncols else "affine"
    return kind, particular, kernel, [c for c, _ in ech.pivots]


def solve_linear(A: Matrix, b: Sequence) -> LinearSolution:
    """Exact solution set of ``A x = b`` over K."""
    if len(b) != A.rows:
        raise ValueError("right-hand side length does not match matrix rows")
    kind, part, kern, pivots = solve_sparse(A.sparse_rows(), list(b), A.cols)
    if kind == "empty":
        return LinearSolution("empty", None, [], pivots)
    n = A.cols
    particular = [part.get(j, _ZERO) for j in range(n)]
    kernel = [[v.get(j, _ZERO) for j in range(n)] for v in kern]
    return LinearSolution(kind, particular, kernel, pivots)


def kernel(A: Matrix) -> list[list]:
    return solve_linear(A, [_ZERO] * A.rows).kernel


def rref_vectors(vectors: Sequence[dict], order: Sequence) -> tuple[list[dict], list]:
    """Reduced row echelon form of sparse vectors keyed by arbitrary labels.

    ``order`` lists every label in pivot priority.  Returns the nonzero
    reduced vectors and their pivot labels.
    """
    index = {lab: k for k, lab in enumerate(order)}
    rows = [{index[lab]: v for lab, v in vec.items() if v != 0} for vec in vectors]
    ech = _eliminate(rows, len(order))
    out, piv = [], []
    for c, p in ech.pivots:
        out.append({order[j]: v for j, v in rows[p].items()})
        piv.append(order[c])
    return out, piv
