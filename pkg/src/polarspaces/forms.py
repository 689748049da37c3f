"""Reflexive forms, quadratic forms and the catalog on V ⊕ V*.

Catalog forms use the basis order (e_0, ..., e_{n-1}, η_0, ..., η_{n-1}): the
first n coordinates are V, the last n are V*.  Quadratic forms are kept as an
upper triangular coefficient matrix; the bilinearization is always derived.
"""
import json

import numpy as np

from . import linalg as la
from .errors import (InvariantViolation, NoInvolution, NotAQuotientSituation,
                     WrongCharacteristic)

ALTERNATING = "alternating"
QUADRATIC = "quadratic"
HERMITIAN = "hermitian"
KINDS = (ALTERNATING, QUADRATIC, HERMITIAN)


class Form:
    def __init__(self, kind, field, matrix, name=None, dual_n=None):
        if kind not in KINDS:
            raise InvariantViolation(f"unknown form kind {kind!r}")
        self.kind = kind
        self.field = field
        self.matrix = tuple(tuple(int(x) for x in row) for row in matrix)
        self.n = len(self.matrix)
        self.name = name or f"{kind}{self.n}"
        # dimension of V when the form is a catalog form on V ⊕ V*
        self.dual_n = dual_n
        self._validate()
        F = field
        if kind == QUADRATIC:
            n = self.n
            B = [[0] * n for _ in range(n)]
            for i in range(n):
                for j in range(n):
                    if i == j:
                        B[i][i] = F.add(self.matrix[i][i], self.matrix[i][i])
                    elif i < j:
                        B[i][j] = self.matrix[i][j]
                    else:
                        B[i][j] = self.matrix[j][i]
            self.gram = tuple(tuple(r) for r in B)
        else:
            self.gram = self.matrix
        self.gram_np = np.array(self.gram, dtype=np.int64).reshape(self.n, self.n)

    def _validate(self):
        F, M, n = self.field, self.matrix, len(self.matrix)
        if any(len(r) != n for r in M):
            raise InvariantViolation("form matrix must be square")
        if any(not 0 <= x < F.q for r in M for x in r):
            raise InvariantViolation("matrix entries must be field element codes")
        if self.kind == ALTERNATING:
            for i in range(n):
                if M[i][i]:
                    raise InvariantViolation("alternating form with nonzero diagonal")
                for j in range(n):
                    if M[i][j] != F.neg(M[j][i]):
                        raise InvariantViolation("alternating Gram matrix is not skew")
        elif self.kind == HERMITIAN:
            if not F.has_involution:
                raise NoInvolution(f"hermitian forms need an involution; {F} has none")
            for i in range(n):
                for j in range(n):
                    if M[i][j] != F.sigma(M[j][i]):
                        raise InvariantViolation("hermitian Gram matrix is not σ-symmetric")
        else:
            for i in range(n):
                for j in range(i):
                    if M[i][j]:
                        raise InvariantViolation("quadratic coefficient matrix must be upper triangular")

    def __repr__(self):
        return f"Form({self.name}, {self.field}, n={self.n})"

    def __eq__(self, other):
        return (isinstance(other, Form) and other.kind == self.kind
                and other.field is self.field and other.matrix == self.matrix)

    def __hash__(self):
        return hash((self.kind, self.field.q, self.matrix))

    # evaluation on raw vectors
    def functional(self, u):
        """The row w with B(u, x) = w·x (σ applied to u for hermitian forms)."""
        F = self.field
        if self.kind == HERMITIAN:
            u = [F.sigma(x) for x in u]
        add, mul = F.add_t, F.mul_t
        w = [0] * self.n
        for j, x in enumerate(u):
            if x:
                mx = mul[x]
                row = self.gram[j]
                w = [add[a][mx[b]] for a, b in zip(w, row)]
        return tuple(w)

    def bilinear(self, u, v):
        return la.dot(self.field, self.functional(u), v)

    def value(self, v):
        """q(v) for quadratic forms, h(v,v) for hermitian, 0 for alternating."""
        F = self.field
        if self.kind == ALTERNATING:
            return 0
        if self.kind == HERMITIAN:
            return self.bilinear(v, v)
        add, mul = F.add_t, F.mul_t
        s = 0
        for i, x in enumerate(v):
            if not x:
                continue
            row = self.matrix[i]
            for j in range(i, self.n):
                y = v[j]
                if y and row[j]:
                    s = add[s][mul[row[j]][mul[x][y]]]
        return s

    def is_singular(self, v):
        return self.value(v) == 0

    def values_np(self, P):
        """Vectorised value() over the rows of an int array."""
        F = self.field
        N = P.shape[0]
        acc = np.zeros(N, dtype=np.int64)
        if self.kind == ALTERNATING:
            return acc
        if self.kind == HERMITIAN:
            S = F.SIGMA[P]
            for i in range(self.n):
                for j in range(self.n):
                    g = self.gram[i][j]
                    if g:
                        acc = F.ADD[acc, F.MUL[S[:, i], F.MUL[g, P[:, j]]]]
            return acc
        for i in range(self.n):
            for j in range(i, self.n):
                c = self.matrix[i][j]
                if c:
                    acc = F.ADD[acc, F.MUL[c, F.MUL[P[:, i], P[:, j]]]]
        return acc

    def functionals_np(self, P):
        """Row i = functional(P[i]) for every row of P."""
        F = self.field
        X = F.SIGMA[P] if self.kind == HERMITIAN else P
        W = np.zeros_like(P)
        for j in range(self.n):
            for k in range(self.n):
                g = self.gram[j][k]
                if g:
                    W[:, k] = F.ADD[W[:, k], F.MUL[g, X[:, j]]]
        return W

    def orth(self, S):
        """B-orthogonal subspace of S (a Subspace or a list of vectors)."""
        rows = S.rows if isinstance(S, la.Subspace) else S
        return la.kernel_of_functionals(self.field, self.n, [self.functional(r) for r in rows])

    def radical(self):
        return radical(self)

    def is_totally_singular(self, S):
        rows = S.rows if isinstance(S, la.Subspace) else list(S)
        if any(self.bilinear(u, v) for u in rows for v in rows):
            return False
        return all(self.is_singular(r) for r in rows)

    def singular_points(self):
        """All singular projective points as normalised tuples, in canonical order."""
        P = la.projective_points_array(self.field, self.n)
        P = P[self.values_np(P) == 0]
        return [tuple(int(x) for x in row) for row in P]

    def restrict(self, basis, name=None):
        """Form induced on span(basis), in the coordinates of the given basis."""
        F = self.field
        m = len(basis)
        if self.kind == QUADRATIC:
            Q = [[0] * m for _ in range(m)]
            for i in range(m):
                Q[i][i] = self.value(basis[i])
                for j in range(i + 1, m):
                    Q[i][j] = self.bilinear(basis[i], basis[j])
            return Form(QUADRATIC, F, Q, name=name)
        G = [[self.bilinear(basis[i], basis[j]) for j in range(m)] for i in range(m)]
        return Form(self.kind, F, G, name=name)

    def to_json(self):
        return {"kind": self.kind, "field": self.field.spec(), "matrix": [list(r) for r in self.matrix]}


# catalog ------------------------------------------------------------------

def canonical_symplectic(F, n):
    """f(a⊕α, b⊕β) = β(a) − α(b), so f(e_i, η_j) = δ_ij and f(η_j, e_i) = −δ_ij."""
    if n < 1:
        raise InvariantViolation("need n >= 1")
    G = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        G[i][n + i] = 1
        G[n + i][i] = F.neg(1)
    return Form(ALTERNATING, F, G, name=f"sp({n},{F.q})", dual_n=n)


def canonical_hyperbolic(F, n):
    """q(a⊕α) = α(a); its bilinearization is f_q(a⊕α, b⊕β) = α(b) + β(a)."""
    if n < 1:
        raise InvariantViolation("need n >= 1")
    Q = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        Q[i][n + i] = 1
    return Form(QUADRATIC, F, Q, name=f"qplus({n},{F.q})", dual_n=n)


def canonical_hermitian(F, n):
    """h(a⊕α, b⊕β) = α(b) + β(a)^σ.

    With V* made a right space through α·t = t^σ α, the coordinate vector
    (x, y) stands for Σ e_i x_i ⊕ Σ y_i^σ η_i, and h becomes σ(u)ᵀ G v with
    G = [[0, I], [I, 0]].
    """
    if n < 1:
        raise InvariantViolation("need n >= 1")
    if not F.has_involution:
        raise NoInvolution(f"{F} has no involutory automorphism")
    G = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        G[i][n + i] = 1
        G[n + i][i] = 1
    return Form(HERMITIAN, F, G, name=f"herm({n},{F.q})", dual_n=n)


def _entry(F, x):
    if isinstance(x, (list, tuple)):
        return F.from_coeffs(x)
    x = int(x)
    if F.k == 1:
        return x % F.p
    if not 0 <= x < F.q:
        raise InvariantViolation(f"entry {x} is not an element code of {F}")
    return x


def custom_form(kind, F, matrix, name=None):
    M = [[_entry(F, x) for x in row] for row in matrix]
    return Form(kind, F, M, name=name or "custom")


def parabolic(F, name=None):
    """Q(4,q): x0² + x1x2 + x3x4."""
    Q = [[0] * 5 for _ in range(5)]
    Q[0][0] = 1
    Q[1][2] = 1
    Q[3][4] = 1
    return Form(QUADRATIC, F, Q, name=name or f"parabolic({F.q})")


def form_from_json(data, cap=None):
    from .gf import parse_field
    if isinstance(data, str):
        data = json.loads(data)
    F = parse_field(data["field"]) if cap is None else parse_field(data["field"], cap)
    return custom_form(data["kind"], F, data["matrix"], name=data.get("name"))


def radical(form):
    """Kernel of the bilinearization (left and right radicals agree for reflexive forms)."""
    return la.kernel_of_functionals(form.field, form.n, list(form.gram))


class MinimalQuotient:
    """The quotient of a quadratic form by its (anisotropic) bilinearization radical."""

    def __init__(self, source, target, qmap):
        self.source = source
        self.target = target
        self.map = qmap

    def point(self, v):
        return la.normalize(self.source.field, self.map(v))

    def __iter__(self):
        return iter((self.target, self.map))


def minimal_embedding_quotient(form):
    F = form.field
    R = radical(form)
    qmap = la.quotient_map(R)
    if R.is_zero():
        return MinimalQuotient(form, form, qmap)
    if form.kind != QUADRATIC:
        raise NotAQuotientSituation("a reflexive form with nonzero radical has a degenerate polar space")
    for p in R.points():
        if form.value(p) == 0:
            raise NotAQuotientSituation(f"radical vector {p} is singular: degenerate polar space")
    # q is anisotropic on R; in odd characteristic that forces R = 0, so here B is alternating
    m = qmap.target_dim
    lifts = [qmap.lift(la.unit(m, i)) for i in range(m)]
    G = [[form.bilinear(lifts[i], lifts[j]) for j in range(m)] for i in range(m)]
    target = Form(ALTERNATING, F, G, name=f"{form.name}/rad")
    return MinimalQuotient(form, target, qmap)


class UniversalLift:
    """q(x⊕ξ⊕t) = ξ(x) + t² on V ⊕ V* ⊕ F, with x⊕ξ ↦ x⊕ξ⊕sqrt(ξ(x))."""

    def __init__(self, F, n):
        if F.p != 2:
            raise WrongCharacteristic("the lift needs characteristic 2")
        self.field = F
        self.n = n
        Q = [[0] * (2 * n + 1) for _ in range(2 * n + 1)]
        for i in range(n):
            Q[i][n + i] = 1
        Q[2 * n][2 * n] = 1
        self.form = Form(QUADRATIC, F, Q, name=f"lift({n},{F.q})")
        self.base = canonical_symplectic(F, n)

    def __call__(self, v):
        F, n = self.field, self.n
        t = la.dot(F, v[:n], v[n:2 * n])
        return tuple(v) + (F.sqrt(t),)

    def __iter__(self):
        return iter((self.form, self))


def char2_universal_lift(F, n):
    return UniversalLift(F, n)
