"""The solvable "ax+b" Lie algebra b = a + u attached to an extended diagram.

``a`` is abelian of dimension r with basis H_1..H_r dual to the simple roots;
``u`` is abelian with basis X_0..X_r.  The action of a on u is stored as one
matrix per H_j: ``action[j][b][a]`` is the coefficient of X_b in [H_j, X_a].
Diagonal algebras (the ones built from a dominant root) also carry the
weights alpha_a(H_j).
"""

from __future__ import annotations


from typing import Sequence

from gmpy2 import mpq

from .envelope import Element, multiply
from .errors import AlgebraMismatch, NotDominant
from .poly import Poly
from .rootsys import DominantChoice, RootSystem, marks
from .scalar import Matrix, field

_ZERO = mpq(0)


class AxB:
    """Structure data of b = a + u."""

    def __init__(self, dim_a: int, u_labels: Sequence[str], action: Sequence[Sequence[Sequence]],
                 gram_h: Sequence[Sequence] | None = None, gram_u: Sequence[Sequence] | None = None,
                 h_labels: Sequence[str] | None = None, system: RootSystem | None = None,
                 choice: DominantChoice | None = None, name: str = ""):
        self.dim_a = dim_a
        self.u_labels = list(u_labels)
        self.nu = len(self.u_labels)
        self.h_labels = list(h_labels) if h_labels else [f"H{j + 1}" for j in range(dim_a)]
        self.action = [[[field(v) for v in row] for row in m] for m in action]
        if len(self.action) != dim_a:
            raise AlgebraMismatch("need one action matrix per basis vector of a")
        for m in self.action:
            if len(m) != self.nu or any(len(row) != self.nu for row in m):
                raise AlgebraMismatch("action matrices must be square of size dim u")
        mats = [Matrix.from_rows(m) for m in self.action]
        for i in range(dim_a):
            for j in range(i + 1, dim_a):
                if mats[i] @ mats[j] != mats[j] @ mats[i]:
                    raise AlgebraMismatch("action matrices do not commute, so a is not abelian")
        self.gram_h = [[field(v) for v in row] for row in gram_h] if gram_h is not None else None
        n = self.nu
        self.gram_u = ([[field(v) for v in row] for row in gram_u] if gram_u is not None
                       else [[mpq(1) if i == j else _ZERO for j in range(n)] for i in range(n)])
        self.system = system
        self.choice = choice
        self.name = name
        self.diagonal = all(self.action[j][b][a] == 0 for j in range(dim_a)
                            for a in range(n) for b in range(n) if a != b)
        # per H_j, per source X_a: nonzero (target, coefficient) pairs
        self.action_sparse = [[[(bi, m[bi][a]) for bi in range(n) if m[bi][a] != 0] for a in range(n)]
                              for m in self.action]
        self.weights = ([tuple(self.action[j][a][a] for j in range(dim_a)) for a in range(n)]
                        if self.diagonal else None)
        self._weight_cache: dict = {}

    # weight of an X-monomial: lambda_K(H_j) = sum_a K_a alpha_a(H_j)
    def weight_of(self, K: Sequence[int]) -> tuple:
        got = self._weight_cache.get(K)
        if got is None:
            acc = [_ZERO] * self.dim_a
            for a, k in enumerate(K):
                if k:
                    w = self.weights[a]
                    for j in range(self.dim_a):
                        acc[j] = acc[j] + k * w[j]
            got = tuple(acc)
            self._weight_cache[K] = got
        return got

    @property
    def alpha_list(self) -> list[tuple]:
        """Covectors alpha_0..alpha_r as values on H_1..H_r (diagonal case)."""
        return list(self.weights) if self.diagonal else None

    @property
    def gram_alpha(self) -> list[list]:
        """<alpha_i, alpha_j> for the simple roots (inverse of the H gram)."""
        return Matrix.from_rows(self.gram_h).inverse().entries

    # -- elements
    def x(self, i, power=1) -> Element:
        return Element.x(self.nu, self.dim_a, i, power)

    def h(self, j) -> Element:
        return Element.h(self.nu, self.dim_a, j)

    def one(self) -> Element:
        return Element.scalar(self.nu, self.dim_a, 1)

    def zero(self) -> Element:
        return Element.zero(self.nu, self.dim_a)

    def scalar(self, c) -> Element:
        return Element.scalar(self.nu, self.dim_a, c)

    def from_h_poly(self, p: Poly) -> Element:
        return Element.from_h_poly(self.nu, p)

    def mul(self, *elems) -> Element:
        out = elems[0]
        for e in elems[1:]:
            out = multiply(self, out, e)
        return out

    def vector_element(self, vec: Sequence) -> Element:
        """Degree-one element from coordinates (H_1..H_r, X_0..X_{nu-1})."""
        r = self.dim_a
        out = self.zero()
        for j in range(r):
            if vec[j] != 0:
                out = out + self.h(j).scale(vec[j])
        for a in range(self.nu):
            if vec[r + a] != 0:
                out = out + self.x(a).scale(vec[r + a])
        return out

    def text(self, p: Element) -> str:
        return p.to_text(self.u_labels, self.h_labels)

    def __repr__(self):
        return f"AxB({self.name or 'custom'}, dim a={self.dim_a}, dim u={self.nu})"


def build_axb(system: RootSystem, choice: DominantChoice | str = "long",
              u_labels: Sequence[str] | None = None, name: str | None = None) -> AxB:
    """Diagonal ax+b algebra with eigen-covectors alpha_1..alpha_r and alpha_0 = -beta."""
    if isinstance(choice, str):
        choice = system.dominant(choice)
    if not system.is_dominant(choice.beta):
        raise NotDominant(f"beta = {choice.beta} is not dominant")
    m = marks(system, choice.beta)
    if any(k < 1 for k in m):
        raise NotDominant("beta must have all marks >= 1")
    r = system.rank
    n = r + 1
    action = []
    for j in range(r):
        mat = [[_ZERO] * n for _ in range(n)]
        mat[0][0] = mpq(-m[j])
        mat[j + 1][j + 1] = mpq(1)
        action.append(mat)
    labels = list(u_labels) if u_labels else [f"X{i}" for i in range(n)]
    return AxB(r, labels, action, gram_h=system.simple_gram_inverse, system=system,
               choice=choice, name=name or f"{system.type_tag}-{choice.kind}")


def bracket(b: AxB, z1: Sequence, z2: Sequence) -> list:
    """Lie bracket of two vectors given in coordinates (H_1..H_r, X_0..)."""
    r, n = b.dim_a, b.nu
    out = [_ZERO] * (r + n)

    def act(hpart, upart, sign):
        for j in range(r):
            if hpart[j] == 0:
                continue
            for a in range(n):
                if upart[a] == 0:
                    continue
                for bi, coef in b.action_sparse[j][a]:
                    out[r + bi] = out[r + bi] + sign * hpart[j] * upart[a] * coef

    # [h1 + x1, h2 + x2] = h1.x2 - h2.x1
    act(z1[:r], z2[r:], 1)
    act(z2[:r], z1[r:], -1)
    return [field(v) for v in out]


def laplacian(b: AxB, basis: Sequence[Sequence] | None = None) -> Element:
    """sum <alpha_i, alpha_j> H_i H_j + sum X_a^2, or the Casimir of any basis of b.

    With ``basis`` (coordinate vectors in (H, X) order spanning b) the element
    is sum_kl (M^-1)_kl Z_k Z_l where M is the gram of the basis; it does not
    depend on the basis.
    """
    r, n = b.dim_a, b.nu
    if basis is None:
        g = b.gram_alpha
        terms = {}
        for i in range(r):
            for j in range(r):
                if g[i][j] != 0:
                    e = [0] * r
                    e[i] += 1
                    e[j] += 1
                    terms[tuple(e)] = terms.get(tuple(e), _ZERO) + g[i][j]
        ginv = Matrix.from_rows(b.gram_u).inverse().entries
        out = b.from_h_poly(Poly(r, terms))
        for a in range(n):
            for c in range(n):
                if ginv[a][c] != 0:
                    out = out + multiply(b, b.x(a), b.x(c)).scale(ginv[a][c])
        return out
    full = _metric_b(b)
    vecs = [[field(v) for v in z] for z in basis]
    M = [[_bil(full, u, v) for v in vecs] for u in vecs]
    Minv = Matrix.from_rows(M).inverse().entries
    elems = [b.vector_element(z) for z in vecs]
    out = b.zero()
    for k in range(len(vecs)):
        for l in range(len(vecs)):
            if Minv[k][l] != 0:
                out = out + multiply(b, elems[k], elems[l]).scale(Minv[k][l])
    return out


def _metric_b(b: AxB) -> list[list]:
    r, n = b.dim_a, b.nu
    full = [[_ZERO] * (r + n) for _ in range(r + n)]
    for i in range(r):
        for j in range(r):
            full[i][j] = b.gram_h[i][j]
    for a in range(n):
        for c in range(n):
            full[r + a][r + c] = b.gram_u[a][c]
    return full


def _bil(g, u, v):
    total = _ZERO
    for i, x in enumerate(u):
        if x == 0:
            continue
        for j, y in enumerate(v):
            if y != 0 and g[i][j] != 0:
                total = total + x * g[i][j] * y
    return total
