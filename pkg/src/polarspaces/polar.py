"""Polar spaces as point-line geometries on the singular points of a form.

Points are indexed once, and point sets are plain Python ints used as bitmasks
(bit i set <=> point i in the set).  Every singular subspace is determined by
its point set, so masks double as canonical keys for singular subspaces.
"""
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg as la
from .errors import (DegenerateInput, InvariantViolation, NotASubspace,
                     NotOpposite, NotSubGenerator, TooLarge)
from .forms import QUADRATIC, radical

DEFAULT_CAP_POINTS = 2000


def bits(mask):
    """Indices of the set bits, increasing."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest(mask):
    return (mask & -mask).bit_length() - 1


def popcount(mask):
    return mask.bit_count()


def mask_of_indices(indices):
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def n_points(q, d):
    """Number of projective points of a d-dimensional vector space."""
    return (q ** d - 1) // (q - 1)


class PolarSpace:
    def __init__(self, form, cap_points=DEFAULT_CAP_POINTS, allow_degenerate=False, name=None):
        self.form = form
        self.field = form.field
        self.q = form.field.q
        self.n = form.n
        self.name = name or form.name
        pts = form.singular_points()
        if len(pts) > cap_points:
            raise TooLarge(f"{len(pts)} points exceed the cap of {cap_points}")
        self.points = pts
        self.N = len(pts)
        self.index = {p: i for i, p in enumerate(pts)}
        self.all = (1 << self.N) - 1
        self.perp_masks = self._perp_masks()
        self.degenerate = (self.N == 0) or any(m == self.all for m in self.perp_masks)
        if self.degenerate and not allow_degenerate:
            raise DegenerateInput(f"{self.name}: some point is collinear with every point")
        self._lines = {}
        self._spans = {}

    def __repr__(self):
        return f"PolarSpace({self.name}, points={self.N})"

    def _perp_masks(self):
        if self.N == 0:
            return []
        F = self.field
        P = np.array(self.points, dtype=np.int64).reshape(self.N, self.n)
        W = self.form.functionals_np(P)
        masks = []
        block = 256
        for s in range(0, self.N, block):
            Wb = W[s:s + block]
            acc = np.zeros((Wb.shape[0], self.N), dtype=np.int64)
            for k in range(self.n):
                acc = F.ADD[acc, F.MUL[Wb[:, k][:, None], P[:, k][None, :]]]
            packed = np.packbits(acc == 0, axis=1, bitorder="little")
            masks.extend(int.from_bytes(row.tobytes(), "little") for row in packed)
        return masks

    # points and masks
    def vec(self, i):
        return self.points[i]

    def idx(self, v):
        """Index of the point represented by the (not necessarily normalised) vector v."""
        return self.index[la.normalize(self.field, v)]

    def mask(self, indices):
        return mask_of_indices(indices)

    def indices(self, mask):
        return list(bits(mask))

    def vectors(self, mask):
        return [self.points[i] for i in bits(mask)]

    def size(self, mask):
        return popcount(mask)

    # perp calculus
    def perp(self, X):
        """Points collinear with every point of X; perp of the empty set is everything."""
        pm = self.perp_masks
        out = self.all
        for i in bits(X):
            out &= pm[i]
            if not out:
                break
        return out

    def collinear(self, i, j):
        return (self.perp_masks[i] >> j) & 1 == 1

    def is_singular_set(self, X):
        pm = self.perp_masks
        return all(pm[i] & X == X for i in bits(X))

    def line(self, i, j):
        """Points of the singular line through collinear points i != j."""
        key = (i, j) if i < j else (j, i)
        m = self._lines.get(key)
        if m is not None:
            return m
        if i == j or not self.collinear(i, j):
            raise NotOpposite(f"points {i} and {j} do not span a singular line")
        F = self.field
        u, v = self.points[i], self.points[j]
        m = (1 << i) | (1 << j)
        for t in range(1, F.q):
            m |= 1 << self.index[la.normalize(F, la.vec_add(F, u, la.vec_scale(F, t, v)))]
        on = list(bits(m))
        for a in on:
            for b in on:
                if a < b:
                    self._lines[(a, b)] = m
        return m

    def join(self, X, p):
        """<X, p> for a singular X and a point p in X^⊥."""
        if (X >> p) & 1:
            return X
        out = X | (1 << p)
        for z in bits(X):
            out |= self.line(p, z)
        return out

    def singular_span(self, X):
        """Smallest singular subspace containing the pairwise collinear set X."""
        out = 0
        for p in bits(X):
            if not (out >> p) & 1:
                out = self.join(out, p)
        return out

    def closure(self, X):
        """Subspace of the geometry generated by X (line closure to a fixpoint)."""
        result = X
        done = 0
        queue = list(bits(X))
        pm = self.perp_masks
        while queue:
            x = queue.pop()
            coll = pm[x] & done
            for y in bits(coll):
                if y == x:
                    continue
                L = self.line(x, y)
                new = L & ~result
                if new:
                    result |= new
                    queue.extend(bits(new))
            done |= 1 << x
        return result

    def is_subspace(self, X):
        return self.closure(X) == X

    def hyperbolic_line(self, a, b):
        if self.collinear(a, b):
            raise NotOpposite(f"points {a} and {b} are collinear")
        return self.perp(self.perp_masks[a] & self.perp_masks[b])

    def are_opposite(self, X, Y):
        return (self.perp(X) & Y) == 0 and (self.perp(Y) & X) == 0

    def opposite_point_pairs(self):
        pm = self.perp_masks
        out = []
        for a in range(self.N):
            for b in bits(~pm[a] & self.all & ~((1 << (a + 1)) - 1)):
                out.append((a, b))
        return out

    # linear algebra bridge
    def span(self, X):
        """Vector span of the points of X (cached by mask)."""
        S = self._spans.get(X)
        if S is not None:
            return S
        F, n = self.field, self.n
        rows, pivots = [], []
        for i in bits(X):
            v = la._reduce_against(F, self.points[i], rows, pivots)
            if any(v):
                rows, pivots = la.rref(F, rows + [self.points[i]], n)
                rows = list(rows)
                if len(rows) == n:
                    break
        S = la.Subspace(F, n, rows, pivots)
        self._spans[X] = S
        return S

    def mask_of(self, S):
        """Points of the space inside the vector subspace S."""
        if S.is_zero():
            return 0
        if S.is_full():
            return self.all
        F = self.field
        ann = la.kernel_of_functionals(F, self.n, S.rows)
        P = np.array(self.points, dtype=np.int64).reshape(self.N, self.n)
        ok = np.ones(self.N, dtype=bool)
        for a in ann.rows:
            acc = np.zeros(self.N, dtype=np.int64)
            for k, c in enumerate(a):
                if c:
                    acc = F.ADD[acc, F.MUL[c, P[:, k]]]
            ok &= acc == 0
        packed = np.packbits(ok, bitorder="little")
        return int.from_bytes(packed.tobytes(), "little")

    def rank_of(self, X):
        """Vector dimension of a singular subspace given by its points."""
        c = popcount(X)
        d = 0
        while n_points(self.q, d) < c:
            d += 1
        if n_points(self.q, d) != c:
            raise NotASubspace("point count is not that of a projective subspace")
        return d

    # singular subspaces
    @cached_property
    def singular_by_rank(self):
        """All singular subspaces, grouped by rank; rank 0 holds the empty set."""
        levels = [[0]]
        perp = self.perp
        while True:
            nxt = set()
            for X in levels[-1]:
                cand = perp(X) & ~X
                while cand:
                    p = lowest(cand)
                    Y = self.join(X, p)
                    nxt.add(Y)
                    cand &= ~Y
            if not nxt:
                break
            levels.append(sorted(nxt, key=lambda m: tuple(bits(m))))
        # at finite rank every maximal singular subspace has the same dimension
        for level in levels[:-1]:
            for X in level:
                if perp(X) == X:
                    raise InvariantViolation(f"maximal singular subspace of deficient rank in {self.name}")
        return levels

    @property
    def rank(self):
        return len(self.singular_by_rank) - 1

    @property
    def generators(self):
        return self.singular_by_rank[-1]

    @property
    def subgenerators(self):
        return self.singular_by_rank[-2] if self.rank >= 1 else []

    @cached_property
    def generator_index(self):
        return {M: i for i, M in enumerate(self.generators)}

    @cached_property
    def lines(self):
        return self.singular_by_rank[2] if self.rank >= 2 else []

    def generators_containing(self, X):
        return [M for M in self.generators if M & X == X]

    def is_generator(self, X):
        return X in self.generator_index

    def hyperplanes(self, M):
        """Hyperplanes of a singular subspace M (as point masks)."""
        S = self.span(M)
        if S.dim == 0:
            return []
        F = self.field
        pts = list(bits(M))
        # coordinates in an echelon basis are the entries at the pivot columns
        coords = {i: [self.points[i][c] for c in S.pivots] for i in pts}
        out = []
        for c in la.projective_points_array(F, S.dim).tolist():
            out.append(mask_of_indices(i for i in pts if la.dot(F, c, coords[i]) == 0))
        return sorted(out, key=lambda m: tuple(bits(m)))

    def classify_subgenerator(self, N):
        if self.rank == 0 or self.rank_of_safe(N) != self.rank - 1 or not self.is_singular_set(N):
            raise NotSubGenerator("not a hyperplane of a generator")
        gens = self.generators_containing(N)
        if not gens:
            raise NotSubGenerator("not contained in any generator")
        c = len(gens)
        return SubGeneratorClass.of(c)

    def rank_of_safe(self, X):
        try:
            return self.rank_of(X)
        except NotASubspace:
            return -1

    def subgenerator_histogram(self):
        hist = {}
        for N in self.subgenerators:
            k = self.classify_subgenerator(N).label()
            hist[k] = hist.get(k, 0) + 1
        return dict(sorted(hist.items()))

    def census(self):
        return {
            "space": self.name,
            "field": self.field.spec(),
            "ambient_dim": self.n,
            "points": self.N,
            "lines": len(self.lines),
            "rank": self.rank,
            "generators": len(self.generators),
            "subgenerator_classes": self.subgenerator_histogram(),
        }


@dataclass(frozen=True)
class SubGeneratorClass:
    kind: str
    count: int

    @staticmethod
    def of(count):
        if count == 1:
            return SubGeneratorClass("Deep", 1)
        if count == 2:
            return SubGeneratorClass("Hyperbolic", 2)
        return SubGeneratorClass("Thick", count)

    def label(self):
        return self.kind if self.kind != "Thick" else f"Thick({self.count})"


def polar_space(form, **kw):
    return PolarSpace(form, **kw)


def perp(S, X):
    return S.perp(X)


def hyperbolic_line(S, a, b):
    return S.hyperbolic_line(a, b)


def enumerate_generators(S):
    return list(S.generators)


def are_opposite(S, X, Y):
    return S.are_opposite(X, Y)


def classify_subgenerator(S, N, check_easy=True):
    cls = S.classify_subgenerator(N)
    if check_easy and cls.kind == "Hyperbolic":
        # a generator with a hyperbolic sub-generator has no thick sub-generators
        for M in S.generators_containing(N):
            for H in S.hyperplanes(M):
                if len(S.generators_containing(H)) > 2:
                    raise InvariantViolation("hyperbolic and thick sub-generators in one generator")
    return cls


# stars ----------------------------------------------------------------------

@dataclass
class Star:
    base: PolarSpace
    X: int
    form: object
    geometry: PolarSpace
    tag: str
    case: object

    @property
    def points(self):
        return self.geometry.N

    @property
    def rank(self):
        return self.geometry.rank if self.geometry.N else 0


STAR_CASES = {
    1: "hyperbolic quadric Q+(3,q)",
    2: "parabolic quadric Q(4,q)",
    3: "rank 2 quadric in dimension >= 6",
    4: "cone over a rank 1 quadric",
    5: "two lines meeting at a point",
    6: "one line",
}


def star(S, X):
    """Residual geometry of the singular subspace X, realised on X^⊥/X."""
    form = S.form
    Xs = S.span(X)
    Xperp = form.orth(Xs)
    Y = la.complement(Xs, Xperp)
    f = form.restrict(list(Y.rows), name=f"star({S.name})")
    G = PolarSpace(f, allow_degenerate=True, name=f.name)
    tag, case = _classify_star(f, G)
    return Star(S, X, f, G, tag, case)


def _classify_star(f, G):
    if f.n == 0 or G.N == 0:
        return "empty", None
    r = G.rank
    if f.kind != QUADRATIC:
        return (f"{f.kind} rank {r}" + (" degenerate" if G.degenerate else "")), None
    rad = radical(f)
    singular_rad = [p for p in rad.points() if f.value(p) == 0]
    vertex = la.span(f.field, f.n, singular_rad) if singular_rad else la.zero(f.field, f.n)
    if r != 2:
        return f"quadric rank {r}", None
    if vertex.is_zero():
        if f.n == 4:
            return STAR_CASES[1], 1
        if f.n == 5:
            return STAR_CASES[2], 2
        return STAR_CASES[3], 3
    # degenerate: look at the base quadric on a complement of the vertex
    base = f.restrict(list(la.complement(vertex, la.full(f.field, f.n)).rows))
    base_pts = len(base.singular_points())
    if vertex.dim == 1 and base_pts == 2:
        return STAR_CASES[5], 5
    if vertex.dim == 1 and base_pts > 2:
        return STAR_CASES[4], 4
    if vertex.dim == 2 and base_pts == 0:
        return STAR_CASES[6], 6
    return "degenerate quadric", None


# rosettes ---------------------------------------------------------------------

def is_rosette(S, X):
    """X = ∪ X_i with X_i ⊇ K as a hyperplane, X_i^⊥ ∩ X_j = K for i != j, |I| > 1."""
    if not S.is_subspace(X):
        raise NotASubspace("is_rosette needs a line-closed point set")
    K = X & S.perp(X)
    if not S.is_singular_set(K) or S.singular_span(K) != K:
        return False
    rest = X & ~K
    parts = []
    while rest:
        x = lowest(rest)
        Xi = S.join(K, x)
        if Xi & X != Xi:
            return False
        parts.append(Xi)
        rest &= ~Xi
    if len(parts) < 2:
        return False
    for i, A in enumerate(parts):
        pa = S.perp(A)
        for j, B in enumerate(parts):
            if i != j and (pa & B) != K:
                return False
    return True


@dataclass
class LiftReport:
    n: int
    points: int
    lift_points: int
    bijective: bool
    collinearity: bool
    closure_is_slice: bool
    proper: bool

    @property
    def ok(self):
        return (self.points == self.lift_points and self.bijective and self.collinearity
                and self.closure_is_slice and self.proper)


def lift_report(F, n):
    """Compare S_f with the singular points of the char-2 lift ξ(x) + t²."""
    from .forms import UniversalLift
    L = UniversalLift(F, n)
    S = PolarSpace(L.base)
    T = PolarSpace(L.form)
    img = [T.index[la.normalize(F, L(p))] for p in S.points]
    bij = len(set(img)) == S.N == T.N
    coll = all(S.collinear(i, j) == T.collinear(img[i], img[j])
               for i in range(S.N) for j in range(i + 1, S.N))
    Vm = S.mask(i for i, p in enumerate(S.points) if not any(p[n:]))
    Vs = S.mask(i for i, p in enumerate(S.points) if not any(p[:n]))
    gen = S.closure(Vm | Vs)
    slice_ = S.mask(i for i, p in enumerate(S.points) if T.points[img[i]][2 * n] == 0)
    return LiftReport(n, S.N, T.N, bij, coll, gen == slice_, gen != S.all)
