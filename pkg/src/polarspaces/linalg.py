"""Exact subspace algebra over F^n.

Vectors are tuples of raw field codes (ints in range(q)); a Subspace keeps its
reduced row echelon basis, which is canonical, so equality and hashing are
structural.
"""
from .errors import DimensionMismatch, NotContained


def _reduce_against(F, v, rows, pivots):
    """Subtract multiples of echelon rows to clear v at every pivot column."""
    add, mul, neg = F.add_t, F.mul_t, F.neg_t
    v = list(v)
    for r, c in zip(rows, pivots):
        a = v[c]
        if a:
            na = neg[a]
            v = [add[x][mul[na][y]] for x, y in zip(v, r)]
    return v


def rref(F, vectors, n):
    """Reduced row echelon form of the span of vectors; returns (rows, pivots)."""
    add, mul, neg, inv = F.add_t, F.mul_t, F.neg_t, F.inv_t
    rows, pivots = [], []
    for v in vectors:
        if len(v) != n:
            raise DimensionMismatch(f"vector of length {len(v)} in F^{n}")
        v = _reduce_against(F, v, rows, pivots)
        c = next((i for i, x in enumerate(v) if x), None)
        if c is None:
            continue
        s = inv[v[c]]
        v = [mul[s][x] for x in v]
        # clear the new pivot column in the old rows
        for i, r in enumerate(rows):
            a = r[c]
            if a:
                na = neg[a]
                rows[i] = [add[x][mul[na][y]] for x, y in zip(r, v)]
        pos = 0
        while pos < len(pivots) and pivots[pos] < c:
            pos += 1
        rows.insert(pos, v)
        pivots.insert(pos, c)
    return [tuple(r) for r in rows], pivots


def normalize(F, v):
    """Projective representative with first nonzero coordinate 1 (None for 0)."""
    for x in v:
        if x:
            s = F.inv_t[x]
            m = F.mul_t[s]
            return tuple(m[y] for y in v)
    return None


def vec_add(F, u, v):
    add = F.add_t
    return tuple(add[x][y] for x, y in zip(u, v))


def vec_scale(F, c, v):
    m = F.mul_t[c]
    return tuple(m[x] for x in v)


def vec_sub(F, u, v):
    sub = F.sub_t
    return tuple(sub[x][y] for x, y in zip(u, v))


def dot(F, u, v):
    add, mul = F.add_t, F.mul_t
    s = 0
    for x, y in zip(u, v):
        if x and y:
            s = add[s][mul[x][y]]
    return s


def unit(n, i, one=1):
    return tuple(one if j == i else 0 for j in range(n))


class Subspace:
    __slots__ = ("field", "n", "rows", "pivots", "_hash")

    def __init__(self, field, n, rows, pivots=None):
        # rows must already be reduced echelon; use span() otherwise
        self.field = field
        self.n = n
        self.rows = tuple(rows)
        self.pivots = tuple(pivots) if pivots is not None else tuple(
            next(i for i, x in enumerate(r) if x) for r in self.rows)
        self._hash = None

    @property
    def dim(self):
        return len(self.rows)

    def __len__(self):
        return len(self.rows)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and other.field is self.field
                and other.n == self.n and other.rows == self.rows)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.q, self.n, self.rows))
        return self._hash

    def __repr__(self):
        return f"Subspace(dim={self.dim}, n={self.n}, rows={list(self.rows)})"

    def _check(self, other):
        if other.field is not self.field or other.n != self.n:
            raise DimensionMismatch("subspaces live in different ambient spaces")

    def reduce(self, v):
        return tuple(_reduce_against(self.field, v, self.rows, self.pivots))

    def __contains__(self, v):
        if len(v) != self.n:
            raise DimensionMismatch(f"vector of length {len(v)} in F^{self.n}")
        return not any(self.reduce(v))

    def __le__(self, other):
        self._check(other)
        return all(r in other for r in self.rows)

    def __add__(self, other):
        self._check(other)
        return span(self.field, self.n, list(self.rows) + list(other.rows))

    def __and__(self, other):
        return meet(self, other)

    def is_zero(self):
        return not self.rows

    def is_full(self):
        return self.dim == self.n

    def vectors(self):
        """Every vector of the subspace (q^dim of them)."""
        F = self.field
        out = [tuple([0] * self.n)]
        for r in self.rows:
            out = [vec_add(F, v, vec_scale(F, c, r)) for v in out for c in range(F.q)]
        return out

    def points(self):
        """Projective points of the subspace as normalized tuples."""
        F = self.field
        pts = []
        d = self.dim
        for lead in range(d):
            partial = [self.rows[lead]]
            for r in self.rows[lead + 1:]:
                partial = [vec_add(F, v, vec_scale(F, c, r)) for v in partial for c in range(F.q)]
            pts.extend(normalize(F, v) for v in partial)
        return pts

    def to_json(self):
        return [list(r) for r in self.rows]


def span(F, n, vectors):
    rows, pivots = rref(F, vectors, n)
    return Subspace(F, n, rows, pivots)


def zero(F, n):
    return Subspace(F, n, (), ())


def full(F, n):
    return span(F, n, [unit(n, i) for i in range(n)])


def coordinate_subspace(F, n, indices):
    return span(F, n, [unit(n, i) for i in indices])


def subspace_from_json(F, n, rows):
    return span(F, n, [tuple(r) for r in rows])


def meet(A, B):
    """Zassenhaus: reduce [[a, a], [b, 0]]; rows with zero left half span A ∩ B."""
    A._check(B)
    F, n = A.field, A.n
    if A.is_zero() or B.is_zero():
        return zero(F, n)
    zeros = (0,) * n
    stacked = [tuple(a) + tuple(a) for a in A.rows] + [tuple(b) + zeros for b in B.rows]
    rows, pivots = rref(F, stacked, 2 * n)
    inter = [r[n:] for r, c in zip(rows, pivots) if c >= n]
    return span(F, n, inter)


def complement(A, within):
    """Deterministic complement of A inside within.

    Greedy: standard basis vectors e_0, e_1, ... that lie in within and are
    independent of what has been collected so far, then the rows of within.
    """
    A._check(within)
    if not A <= within:
        raise NotContained("complement(A, W) needs A inside W")
    F, n = A.field, A.n
    rows, pivots = list(A.rows), list(A.pivots)
    chosen = []
    candidates = [unit(n, i) for i in range(n)]
    candidates = [e for e in candidates if e in within] + list(within.rows)
    for v in candidates:
        if len(rows) == within.dim:
            break
        w = _reduce_against(F, v, rows, pivots)
        if any(w):
            chosen.append(v)
            rows, pivots = rref(F, rows + [v], n)
            rows = list(rows)
    return span(F, n, chosen)


def kernel_of_functionals(F, n, functionals):
    """Solution space of sum_j r_j x_j = 0 for each row r (a list or a Subspace)."""
    if isinstance(functionals, Subspace):
        functionals = functionals.rows
    rows, pivots = rref(F, list(functionals), n)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    neg = F.neg_t
    for j in free:
        v = [0] * n
        v[j] = 1
        for r, c in zip(rows, pivots):
            v[c] = neg[r[j]]
        basis.append(tuple(v))
    return span(F, n, basis)


def rank(F, n, vectors):
    return len(rref(F, vectors, n)[0])


class QuotientMap:
    """F^n -> F^n / A realised on the non-pivot coordinates of A's echelon basis."""

    def __init__(self, A):
        self.kernel = A
        self.field = A.field
        self.n = A.n
        self.free = tuple(j for j in range(A.n) if j not in A.pivots)

    @property
    def target_dim(self):
        return len(self.free)

    def __call__(self, v):
        w = self.kernel.reduce(v)
        return tuple(w[j] for j in self.free)

    def image(self, S):
        return span(self.field, self.target_dim, [self(r) for r in S.rows])

    def lift(self, w):
        """A preimage of w (placing w on the free coordinates)."""
        v = [0] * self.n
        for j, x in zip(self.free, w):
            v[j] = x
        return tuple(v)

    def matrix(self):
        # column j = image of e_j; returned as rows of the target
        cols = [self(unit(self.n, j)) for j in range(self.n)]
        return [tuple(c[i] for c in cols) for i in range(self.target_dim)]


def quotient_map(A):
    return QuotientMap(A)


def projection(F, n, S, coords):
    """Image of S under the coordinate projection keeping coords and zeroing the rest."""
    keep = set(coords)
    vecs = [tuple(x if i in keep else 0 for i, x in enumerate(r)) for r in S.rows]
    return span(F, n, vecs)


def projective_points_array(F, n):
    """All normalized nonzero vectors of F^n as an (N, n) int array.

    Order: by position of the leading 1, then lexicographically in the tail
    (first tail coordinate most significant).
    """
    import numpy as np
    q = F.q
    blocks = []
    for lead in range(n):
        m = n - lead - 1
        tail = np.indices((q,) * m).reshape(m, -1).T if m else np.zeros((1, 0), dtype=np.int64)
        block = np.zeros((tail.shape[0], n), dtype=np.int64)
        block[:, lead] = 1
        block[:, lead + 1:] = tail
        blocks.append(block)
    if not blocks:
        return np.zeros((0, 0), dtype=np.int64)
    return np.concatenate(blocks, axis=0)
