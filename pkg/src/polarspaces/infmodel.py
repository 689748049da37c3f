"""A finitely supported model of V ⊕ V* over a countable basis.

A vector is a ⊕ α with a = Σ t_i e_i (finite) and α = Σ s_j η_j + τ·𝟙, where
η_j is the dual basis functional and 𝟙 is the all-ones functional (𝟙(e_i) = 1
for every i).  The tail τ is the one functional outside V' = ⟨η_j⟩ that we can
represent; it is enough to see that V ⊕ V' is a proper part of V ⊕ V*.

Infinite subspaces are described by patterns (V, V', U', U, U_{0,1}, ...).
Statements about them are certified on finite windows of indices.  Indices
outside a window can be merged into one fresh index (for membership) or
permuted onto fresh indices (for orthogonality) without changing the answer;
that is why one or two fresh index pairs are always added.
"""
import random
from dataclasses import dataclass, field as dc_field

from . import linalg as la
from .errors import FieldMismatch, InvariantViolation, UnsupportedPattern, WrongKind, WrongCharacteristic
from .forms import QUADRATIC, Form
from .polar import PolarSpace, n_points


# vectors ----------------------------------------------------------------------

class SparseVector:
    __slots__ = ("field", "v", "f", "tail")

    def __init__(self, field, v=None, f=None, tail=0):
        self.field = field
        self.v = {int(i): int(c) for i, c in (v or {}).items() if c}
        self.f = {int(j): int(c) for j, c in (f or {}).items() if c}
        self.tail = int(tail)

    @property
    def support(self):
        """(I, J): indices carrying nonzero V and V' coordinates."""
        return frozenset(self.v), frozenset(self.f)

    def indices(self):
        return set(self.v) | set(self.f)

    def in_vprime_universe(self):
        return self.tail == 0

    def is_zero(self):
        return not self.v and not self.f and not self.tail

    def _check(self, other):
        if other.field is not self.field:
            raise FieldMismatch("vectors over different fields")

    def __add__(self, other):
        self._check(other)
        F = self.field
        v = dict(self.v)
        for i, c in other.v.items():
            v[i] = F.add(v.get(i, 0), c)
        f = dict(self.f)
        for j, c in other.f.items():
            f[j] = F.add(f.get(j, 0), c)
        return SparseVector(F, v, f, F.add(self.tail, other.tail))

    def scale(self, c):
        F = self.field
        return SparseVector(F, {i: F.mul(c, x) for i, x in self.v.items()},
                            {j: F.mul(c, x) for j, x in self.f.items()}, F.mul(c, self.tail))

    def __neg__(self):
        return self.scale(self.field.neg(1))

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return (isinstance(other, SparseVector) and other.field is self.field
                and self.v == other.v and self.f == other.f and self.tail == other.tail)

    def __hash__(self):
        return hash((tuple(sorted(self.v.items())), tuple(sorted(self.f.items())), self.tail))

    def __repr__(self):
        parts = [f"{c}·e{i}" for i, c in sorted(self.v.items())]
        parts += [f"{c}·η{j}" for j, c in sorted(self.f.items())]
        if self.tail:
            parts.append(f"{self.tail}·𝟙")
        return "SparseVector(" + (" + ".join(parts) or "0") + ")"

    def to_json(self):
        return {"v": {str(i): c for i, c in sorted(self.v.items())},
                "f": {str(j): c for j, c in sorted(self.f.items())}, "tail": self.tail}


def zero(F):
    return SparseVector(F)


def e(F, i):
    return SparseVector(F, {i: 1})


def eta(F, j):
    return SparseVector(F, f={j: 1})


def ones(F):
    """The all-ones functional 𝟙."""
    return SparseVector(F, tail=1)


def u(F, i):
    return SparseVector(F, {i: 1}, {i: 1})


def u_pair(F, i, j):
    return u(F, i) + u(F, j)


def vector_from_json(F, d):
    return SparseVector(F, {int(k): v for k, v in d.get("v", {}).items()},
                        {int(k): v for k, v in d.get("f", {}).items()}, d.get("tail", 0))


# forms --------------------------------------------------------------------------

F_KIND = "f"
Q_KIND = "q"
QPRIME_KIND = "qprime"


class InfForm:
    """kind f: f(a⊕α, b⊕β) = β(a) − α(b); kind q: q(a⊕α) = α(a) with f_q = α(b) + β(a); qprime: q on V ⊕ V'."""

    def __init__(self, kind, field):
        if kind not in (F_KIND, Q_KIND, QPRIME_KIND):
            raise WrongKind(f"unknown form kind {kind!r}")
        self.kind = kind
        self.field = field

    def __repr__(self):
        return f"InfForm({self.kind}, {self.field})"


def _apply(F, x, a):
    """α(a) for the functional part of x and the V-part of a."""
    s = 0
    for i, t in a.v.items():
        c = x.f.get(i, 0)
        if x.tail:
            c = F.add(c, x.tail)
        if c:
            s = F.add(s, F.mul(c, t))
    return s


def _universe_check(form, *vs):
    for x in vs:
        if x.field is not form.field:
            raise FieldMismatch("vector and form over different fields")
        if form.kind == QPRIME_KIND and x.tail:
            raise WrongKind("vector outside V ⊕ V'")


def eval_form(form, x, y):
    """The bilinear form of the given kind (f, f_q or f')."""
    _universe_check(form, x, y)
    F = form.field
    if form.kind == F_KIND:
        return F.sub(_apply(F, y, x), _apply(F, x, y))
    return F.add(_apply(F, x, y), _apply(F, y, x))


def eval_quadratic(form, x):
    _universe_check(form, x)
    if form.kind == F_KIND:
        raise WrongKind("alternating form has no quadratic part")
    return _apply(form.field, x, x)


# patterns -------------------------------------------------------------------------

PATTERN_KINDS = ("V", "V0", "Vprime", "Vstar", "Uprime", "U", "U01", "Esempio2", "FiniteSpan", "Sum")


@dataclass(frozen=True)
class PatternSubspace:
    kind: str
    field: object
    exclude: frozenset = frozenset()
    vectors: tuple = ()
    parts: tuple = ()

    def __post_init__(self):
        if self.kind not in PATTERN_KINDS:
            raise UnsupportedPattern(f"unknown pattern {self.kind!r}")

    def __repr__(self):
        if self.kind == "Sum":
            return "Sum(" + ", ".join(map(repr, self.parts)) + ")"
        if self.kind == "FiniteSpan":
            return f"FiniteSpan({len(self.vectors)} vectors)"
        extra = f" without {sorted(self.exclude)}" if self.exclude else ""
        return f"{self.kind}{extra}"

    def indices(self):
        """Indices that the description itself refers to."""
        out = set(self.exclude)
        for x in self.vectors:
            out |= x.indices()
        for p in self.parts:
            out |= p.indices()
        return out

    def uses_tail(self):
        if self.kind == "Vstar":
            return True
        return any(x.tail for x in self.vectors) or any(p.uses_tail() for p in self.parts)

    def generators_in(self, window):
        """Generators whose support lies inside the (pair-closed) window."""
        F = self.field
        w = sorted(i for i in window if i not in self.exclude)
        k = self.kind
        if k == "V":
            return [e(F, i) for i in w]
        if k == "Vprime":
            return [eta(F, i) for i in w]
        if k == "Vstar":
            return [eta(F, i) for i in w] + [ones(F)]
        if k == "Uprime":
            return [u(F, i) for i in w]
        if k in ("U", "U01"):
            return [u(F, w[0]) - u(F, i) for i in w[1:]]
        if k == "V0":
            return [e(F, w[0]) - e(F, i) for i in w[1:]]
        if k == "Esempio2":
            return [esempio2_vector(F, i) for i in w if (i ^ 1) in window]
        if k == "FiniteSpan":
            return list(self.vectors)
        out = []
        for p in self.parts:
            out.extend(p.generators_in(window))
        return out


def pattern(kind, F, exclude=()):
    if kind == "U01":
        exclude = set(exclude) | {0, 1}
    return PatternSubspace(kind, F, frozenset(exclude))


def finite_span(F, vectors):
    return PatternSubspace("FiniteSpan", F, vectors=tuple(vectors))


def pattern_sum(*parts):
    return PatternSubspace("Sum", parts[0].field, parts=tuple(parts))


def esempio2_vector(F, i):
    """e_i ⊕ η_i for the paired functionals: η_{2m+1} = η̂_{2m}, η_{2m} = −η̂_{2m+1}."""
    if i % 2 == 0:
        return SparseVector(F, {i: 1}, {i + 1: F.neg(1)})
    return SparseVector(F, {i: 1}, {i - 1: 1})


# windows ---------------------------------------------------------------------------

def _pair_closed(indices):
    out = set(indices)
    out |= {i ^ 1 for i in out}
    return out


def make_window(*index_sets, fresh_pairs=1):
    base = _pair_closed(set().union({0, 1}, *index_sets))
    start = max(base) + 1
    start += start % 2
    fresh = set(range(start, start + 2 * fresh_pairs))
    return base, fresh


class Coordinates:
    """Dense coordinates e_i, η_i (i in the window) and optionally the tail."""

    def __init__(self, F, window, tail=True):
        self.field = F
        self.window = sorted(window)
        self.pos_e = {i: k for k, i in enumerate(self.window)}
        m = len(self.window)
        self.pos_f = {i: m + k for k, i in enumerate(self.window)}
        self.tail = tail
        self.n = 2 * m + (1 if tail else 0)

    def dense(self, x):
        out = [0] * self.n
        for i, c in x.v.items():
            if i not in self.pos_e:
                raise InvariantViolation(f"index {i} outside the window")
            out[self.pos_e[i]] = c
        for j, c in x.f.items():
            if j not in self.pos_f:
                raise InvariantViolation(f"index {j} outside the window")
            out[self.pos_f[j]] = c
        if x.tail:
            if not self.tail:
                raise InvariantViolation("tail not representable here")
            out[-1] = x.tail
        return tuple(out)

    def sparse(self, row):
        m = len(self.window)
        v = {i: row[k] for k, i in enumerate(self.window)}
        f = {i: row[m + k] for k, i in enumerate(self.window)}
        return SparseVector(self.field, v, f, row[-1] if self.tail else 0)

    def units(self):
        return [self.sparse(la.unit(self.n, k)) for k in range(self.n)]

    def restrict_to(self, window):
        """Coordinate subspace of vectors supported in the sub-window."""
        keep = [self.pos_e[i] for i in window] + [self.pos_f[i] for i in window]
        if self.tail:
            keep.append(self.n - 1)
        return la.coordinate_subspace(self.field, self.n, keep)


def _solve(F, gens, target, n):
    """Coefficients c with Σ c_k gens[k] = target, or None."""
    m = len(gens)
    if m == 0:
        return [] if not any(target) else None
    rows = [tuple(g[r] for g in gens) + (target[r],) for r in range(n)]
    R, piv = la.rref(F, rows, m + 1)
    if m in piv:
        return None
    c = [0] * m
    for r, p in zip(R, piv):
        c[p] = r[m]
    return c


def _combine(F, pairs):
    out = zero(F)
    for c, g in pairs:
        if c:
            out = out + g.scale(c)
    return out


# membership -------------------------------------------------------------------------

@dataclass
class Membership:
    member: bool
    certificate: list = dc_field(default_factory=list)
    residual: object = None

    def __bool__(self):
        return self.member

    def recombine(self, F):
        return _combine(F, self.certificate)


def reduce_membership(x, P):
    """Decide x ∈ P; the certificate is a finite combination Σ c·g of generators of P."""
    F = P.field
    if x.field is not F:
        raise FieldMismatch("vector and pattern over different fields")
    k = P.kind
    ex = P.exclude
    hit_ex = any(i in ex for i in x.indices())
    if k == "V":
        ok = not x.f and not x.tail and not hit_ex
        return _direct(ok, x, [(c, e(F, i)) for i, c in sorted(x.v.items())])
    if k == "Vprime":
        ok = not x.v and not x.tail and not hit_ex
        return _direct(ok, x, [(c, eta(F, j)) for j, c in sorted(x.f.items())])
    if k == "Vstar":
        ok = not x.v and not hit_ex
        return _direct(ok, x, [(c, eta(F, j)) for j, c in sorted(x.f.items())] + [(x.tail, ones(F))])
    if k == "Uprime":
        ok = not x.tail and x.v == x.f and not hit_ex
        return _direct(ok, x, [(c, u(F, i)) for i, c in sorted(x.v.items())])
    if k in ("U", "U01"):
        return _reduce_sum_zero(x, P, lambda i: u(F, i), need_equal=True)
    if k == "V0":
        return _reduce_sum_zero(x, P, lambda i: e(F, i), need_equal=False)
    if k == "Esempio2":
        cert = [(c, esempio2_vector(F, i)) for i, c in sorted(x.v.items())]
        ok = not x.tail and not hit_ex and _combine(F, cert) == x
        return _direct(ok, x, cert)
    return _reduce_window(x, P)


def _direct(ok, x, cert):
    F = x.field
    if not ok:
        return Membership(False, residual=x)
    cert = [(c, g) for c, g in cert if c]
    if _combine(F, cert) != x:
        raise InvariantViolation("membership certificate does not recombine")
    return Membership(True, cert)


def _reduce_sum_zero(x, P, gen, need_equal):
    """Pairwise cancellation: subtract t_i (g_i − g_j) until at most one index is left."""
    F = x.field
    if x.tail or (need_equal and x.v != x.f) or (not need_equal and x.f):
        return Membership(False, residual=x)
    if any(i in P.exclude for i in x.indices()):
        return Membership(False, residual=x)
    cert = []
    rest = x
    while len(rest.v) > 1:
        i, j = sorted(rest.v)[:2]
        t = rest.v[i]
        g = gen(i) - gen(j)
        cert.append((t, g))
        rest = rest - g.scale(t)
    if not rest.is_zero():
        return Membership(False, cert, residual=rest)
    if _combine(F, cert) != x:
        raise InvariantViolation("membership certificate does not recombine")
    return Membership(True, cert)


def _reduce_window(x, P):
    F = P.field
    base, fresh = make_window(x.indices(), P.indices(), fresh_pairs=1)
    window = base | fresh
    C = Coordinates(F, window, tail=True)
    gens = P.generators_in(window)
    c = _solve(F, [C.dense(g) for g in gens], C.dense(x), C.n)
    if c is None:
        return Membership(False, residual=x)
    cert = [(ck, g) for ck, g in zip(c, gens) if ck]
    if _combine(F, cert) != x:
        raise InvariantViolation("membership certificate does not recombine")
    return Membership(True, cert)


def contains(P, x):
    return reduce_membership(x, P).member


# orthogonality -------------------------------------------------------------------------

def perp_test(form, x, P, witness=False):
    """x ⊥ P, tested against the generators of P inside supp(x) ∪ supp(P) plus two fresh index pairs."""
    if P.kind not in PATTERN_KINDS:
        raise UnsupportedPattern(P.kind)
    base, fresh = make_window(x.indices(), P.indices(), fresh_pairs=2)
    for g in P.generators_in(base | fresh):
        if eval_form(form, x, g):
            return (False, g) if witness else False
    return (True, None) if witness else True


def is_totally_singular(form, P, window_size=6):
    """Pairwise orthogonality and singularity of the generators of P on a window with fresh pairs."""
    base, fresh = make_window(range(window_size), P.indices(), fresh_pairs=2)
    gens = P.generators_in(base | fresh)
    for i, g in enumerate(gens):
        if form.kind != F_KIND and eval_quadratic(form, g):
            return False
        for h in gens[i:]:
            if eval_form(form, g, h):
                return False
    return True


def window_perp(form, P, window):
    """{x supported in window : x ⊥ P} as a dense subspace over window ∪ two fresh pairs."""
    F = form.field
    base, fresh = make_window(window, P.indices(), fresh_pairs=2)
    big = base | fresh
    C = Coordinates(F, big, tail=form.kind != QPRIME_KIND)
    units = C.units()
    rows = []
    for g in P.generators_in(big):
        rows.append(tuple(eval_form(form, w, g) for w in units))
    K = la.kernel_of_functionals(F, C.n, rows)
    return C, K & C.restrict_to(base), base


def window_span(C, P, base):
    """P ∩ (vectors supported in base), computed in the coordinates C."""
    S = la.span(C.field, C.n, [C.dense(g) for g in P.generators_in(set(C.window))])
    return S & C.restrict_to(base)


# the S_{q'} example --------------------------------------------------------------------

K_INDEX = 2  # least admissible k > 1


def _need_char2(F):
    """Accept a field or a q' InfForm; return the field."""
    if isinstance(F, InfForm):
        if F.kind != QPRIME_KIND:
            raise WrongKind(f"needs the q' form, got {F.kind}")
        F = F.field
    if F.p != 2:
        raise WrongCharacteristic("the q' example lives in characteristic 2")
    return F


REPRESENTABLE = ("certificates are sound for the representable universe "
                             "(finitely supported vectors plus a constant tail) only")


def q_prime_perp_of_U01(F, window_size=6, samples=50, seed=0):
    """U_{0,1}^⊥ = U_{0,1} + ⟨e0, e1, η0, η1, u_k⟩ with both inclusions certified on a window."""
    F = _need_char2(F)
    form = InfForm(QPRIME_KIND, F)
    U01 = pattern("U01", F)
    extra = finite_span(F, [e(F, 0), e(F, 1), eta(F, 0), eta(F, 1), u(F, K_INDEX)])
    rhs = pattern_sum(U01, extra)
    # ⊇ : every generator of the right side is orthogonal to U_{0,1}
    for g in extra.vectors:
        if not perp_test(form, g, U01):
            raise InvariantViolation(f"{g} is not orthogonal to U_01")
    if not is_totally_singular(form, U01, window_size):
        raise InvariantViolation("U_01 is not totally singular")
    # ⊆ : the window perp equals the window part of the right side
    C, K, base = window_perp(form, U01, range(window_size))
    R = window_span(C, rhs, base)
    if K != R:
        raise InvariantViolation("window perp of U_01 differs from the claimed span")
    rnd = random.Random(seed)
    for _ in range(samples):
        x = C.sparse(_random_in(F, K, rnd))
        if not reduce_membership(x, rhs).member:
            raise InvariantViolation("perp vector outside the claimed span")
    return rhs


def _random_in(F, S, rnd):
    out = tuple([0] * S.n)
    for r in S.rows:
        out = la.vec_add(F, out, la.vec_scale(F, rnd.randrange(F.q), r))
    return out


@dataclass
class StarReport:
    field: object
    form: Form
    space: PolarSpace
    nucleus_index: int
    points: int
    generators_per_subgenerator: int
    complement: list


def _induced_quadratic(form, basis, name):
    F = form.field
    m = len(basis)
    Q = [[0] * m for _ in range(m)]
    for i in range(m):
        Q[i][i] = eval_quadratic(form, basis[i])
        for j in range(i + 1, m):
            Q[i][j] = eval_form(form, basis[i], basis[j])
    return Form(QUADRATIC, F, Q, name=name)


def star_of_U01(F):
    F = _need_char2(F)
    form = InfForm(QPRIME_KIND, F)
    q_prime_perp_of_U01(F)
    X = [e(F, 0), e(F, 1), eta(F, 0), eta(F, 1), u(F, K_INDEX)]
    # X meets U_{0,1} trivially
    C = Coordinates(F, make_window({K_INDEX})[0] | make_window({K_INDEX})[1], tail=False)
    U01w = la.span(F, C.n, [C.dense(g) for g in pattern("U01", F).generators_in(set(C.window))])
    Xw = la.span(F, C.n, [C.dense(x) for x in X])
    if Xw.dim != 5 or not (Xw & U01w).is_zero():
        raise InvariantViolation("X is not a complement of U_01")
    f = _induced_quadratic(form, X, f"star(U01,{F.q})")
    S = PolarSpace(f, name=f.name)
    rad = f.radical()
    if rad.dim != 1 or rad.rows[0] != la.unit(5, 4):
        raise InvariantViolation("nucleus is not ⟨u_k⟩")
    if S.N != n_points(F.q, 4) or S.rank != 2:
        raise InvariantViolation("star is not a parabolic quadric")
    counts = {len(S.generators_containing(N)) for N in S.subgenerators}
    if counts != {F.q + 1}:
        raise InvariantViolation("unexpected number of generators per sub-generator")
    return StarReport(F, f, S, 4, S.N, F.q + 1, X)


@dataclass
class Fact:
    name: str
    status: str   # certified | paper | annotation
    value: object = None
    detail: str = ""

    def to_json(self):
        d = {"fact": self.name, "status": self.status}
        if self.value is not None:
            d["value"] = self.value if not isinstance(self.value, SparseVector) else self.value.to_json()
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass
class Report:
    title: str
    facts: list
    counts: tuple = None
    pattern: object = None

    @property
    def ok(self):
        return all(f.value is not False for f in self.facts if f.status == "certified")

    def to_json(self):
        d = {"report": self.title, "ok": self.ok, "facts": [f.to_json() for f in self.facts]}
        if self.counts is not None:
            d["counts"] = list(self.counts)
        return d


def hyperbolic_star(F):
    """Star of X = ⟨e_i⟩_{i>1} in S_{q'}: X^⊥ = V + ⟨η0, η1⟩, and the induced quadric on ⟨e0, e1, η0, η1⟩."""
    F = _need_char2(F)
    form = InfForm(QPRIME_KIND, F)
    Xp = pattern("V", F, exclude={0, 1})
    claimed = pattern_sum(pattern("V", F), finite_span(F, [eta(F, 0), eta(F, 1)]))
    C, K, base = window_perp(form, Xp, range(6))
    if K != window_span(C, claimed, base):
        raise InvariantViolation("perp of ⟨e_i⟩_{i>1} differs from V + ⟨η0, η1⟩")
    basis = [e(F, 0), e(F, 1), eta(F, 0), eta(F, 1)]
    f = _induced_quadratic(form, basis, f"star(V01,{F.q})")
    return PolarSpace(f, name=f.name)


def nonregularity_witness(F):
    """Hyperbolic lines of size 2 against a sub-generator lying on |F|+1 generators."""
    F = _need_char2(F)
    facts = []
    grid = hyperbolic_star(F)
    a, b = grid.opposite_point_pairs()[0]
    hline = bin(grid.hyperbolic_line(a, b)).count("1")
    per_sub = {len(grid.generators_containing(N)) for N in grid.subgenerators}
    facts.append(Fact("star of ⟨e_i⟩_{i>1} is a grid Q+(3,q)", "certified",
                      grid.N == (F.q + 1) ** 2 and grid.rank == 2, f"{grid.N} points"))
    facts.append(Fact("hyperplanes of [V] through ⟨e_i⟩_{i>1} are hyperbolic", "certified", per_sub == {2}))
    facts.append(Fact("hyperbolic line size", "certified", hline == 2, str(hline)))
    facts.append(Fact("hyperbolic lines all have size 2 (transitivity)", "paper"))
    st = star_of_U01(F)
    facts.append(Fact("star of [U_01] is Q(4,q) with nucleus [u_k]", "certified", True, f"{st.points} points"))
    facts.append(Fact("generators through each sub-generator ⊇ [U_01]", "certified",
                      st.generators_per_subgenerator == F.q + 1, str(st.generators_per_subgenerator)))
    minimal_impossible = st.generators_per_subgenerator != hline
    facts.append(Fact("generator count differs from hyperbolic line size, ruling out ⊥-minimality",
                      "certified", minimal_impossible,
                      f"{st.generators_per_subgenerator} generators vs hyperbolic line of size {hline}"))
    facts.append(Fact("S_q' is not regular", "certified", minimal_impossible))
    facts.append(Fact("the hyperbolic space with the full dual V* stays regular", "paper"))
    facts.append(Fact("star cases (3) and (4)", "annotation", detail="occurrence in S_q' is not decided"))
    facts.append(Fact("representability", "annotation", detail=REPRESENTABLE))
    return Report("nonregularity of S_q'", facts, counts=(hline, st.generators_per_subgenerator))


# examples of non-complementary generators -------------------------------------------

def _meets_V_trivially(F, P, window_size):
    base, fresh = make_window(range(window_size), P.indices(), fresh_pairs=1)
    C = Coordinates(F, base | fresh)
    W = la.span(F, C.n, [C.dense(g) for g in P.generators_in(base | fresh)])
    V = la.span(F, C.n, [C.dense(g) for g in pattern("V", F).generators_in(base | fresh)])
    return (W & V).is_zero()


def _self_perp_on_window(form, P, universe, window_size):
    """P^⊥ ∩ universe ∩ window = P ∩ window: P is maximal within the representable universe."""
    C, K, base = window_perp(form, P, range(window_size))
    U = window_span(C, universe, base) if universe is not None else C.restrict_to(base)
    return (K & U) == window_span(C, P, base)


def representable_universe(F, kind):
    """V ⊕ (V' + ⟨𝟙⟩) for f and q; V ⊕ V' for q'."""
    if kind == QPRIME_KIND:
        return pattern_sum(pattern("V", F), pattern("Vprime", F))
    return pattern_sum(pattern("V", F), pattern("Vstar", F))


def esempio_generators(which, n_window=6, field=None):
    """W = ⟨e_i ⊕ η_i⟩ (which=1, form f) or its paired variant (which=2, form q), with certified facts."""
    from .gf import make_field
    F = field or make_field(2)
    if which == 1:
        form = InfForm(F_KIND, F)
        W = pattern("Uprime", F)
    elif which == 2:
        form = InfForm(Q_KIND, F)
        W = pattern("Esempio2", F)
    else:
        raise UnsupportedPattern("esempio 1 or 2")
    facts = []
    facts.append(Fact("[W] totally singular", "certified", is_totally_singular(form, W, n_window)))
    universe = representable_universe(F, form.kind)
    facts.append(Fact("[W] maximal in the representable universe", "certified",
                      _self_perp_on_window(form, W, universe, n_window)))
    facts.append(Fact("W ∩ V = 0", "certified", _meets_V_trivially(F, W, n_window)))
    VW = pattern_sum(pattern("V", F), W)
    one_in = reduce_membership(ones(F), VW).member
    facts.append(Fact("𝟙 ∉ V + W, so V + W is a proper subspace", "certified", not one_in))
    facts.append(Fact("representability", "annotation", detail=REPRESENTABLE))
    facts.append(Fact("dim V < dim V*", "annotation", detail="cardinality fact with no finite witness"))
    return Report(f"esempio {which}", facts, pattern=W)


def gs_failure(F):
    """[V'] is a deep sub-generator of S_f (V'^⊥ = V* in the representable universe) and [V'] meets [V] in no perp."""
    form = InfForm(F_KIND, F)
    Vp = pattern("Vprime", F)
    Vs = pattern("Vstar", F)
    C, K, base = window_perp(form, Vp, range(6))
    facts = [Fact("V'^⊥ = V' + ⟨𝟙⟩", "certified", K == window_span(C, Vs, base))]
    facts.append(Fact("V' + ⟨𝟙⟩ is a generator", "certified",
                      _self_perp_on_window(form, Vs, None, 6)))
    facts.append(Fact("[V'] is not a generator (non-maximal singular)", "certified",
                      is_totally_singular(form, Vp) and not contains(Vp, ones(F))))
    Vw = window_span(C, pattern("V", F), base)
    facts.append(Fact("[V']^⊥ ∩ [V] = ∅", "certified", (K & Vw).is_zero()))
    return Report("(GS) fails", facts)


def whole_space_witness(F):
    """x = [𝟙] in M = [V' + ⟨𝟙⟩] with M1 = [V], M2 = [U']: x^⊥ ∩ M1 = V0 and V0^⊥ ∩ M2 = 0."""
    form = InfForm(F_KIND, F)
    V0 = pattern("V0", F)
    Up = pattern("Uprime", F)
    Vpat = pattern("V", F)
    x = ones(F)
    facts = []
    C, K, base = window_perp(form, finite_span(F, [x]), range(6))
    facts.append(Fact("x^⊥ ∩ [V] = [V0]", "certified",
                      (K & window_span(C, Vpat, base)) == window_span(C, V0, base)))
    C, K, base = window_perp(form, V0, range(6))
    facts.append(Fact("[V0]^⊥ ∩ [U'] = ∅", "certified", (K & window_span(C, Up, base)).is_zero()))
    facts.append(Fact("π(x) is the whole generator", "certified", all(f.value for f in facts)))
    return Report("partial duality value M", facts)


def sample_partial_duality(F, m=4):
    """π restricted to the points [η_0], ..., [η_{m-1}], [𝟙] of M = [V' + ⟨𝟙⟩].

    [η_j] ↦ {α : α(e_j) = 0} (recorded by j) and [𝟙] ↦ None (the whole of M).
    """
    form = InfForm(F_KIND, F)
    images = {}
    for j in range(m):
        X1 = pattern_sum(pattern("V", F, exclude={j}))
        C, K, base = window_perp(form, X1, range(m))
        Ku = K & window_span(C, pattern("Uprime", F), base)
        if Ku.dim != 1 or C.sparse(Ku.rows[0]) != u(F, j):
            raise InvariantViolation("unexpected point of M2")
        images[("eta", j)] = ("kernel at", j)
    if not whole_space_witness(F).ok:
        raise InvariantViolation("whole-space witness failed")
    images[("one",)] = None
    return images


def star_condition_failure(F):
    """For the opposite pair ([V], [U']) and N = [V0]: N^⊥ = V + ⟨𝟙⟩ misses [U']."""
    form = InfForm(F_KIND, F)
    V0 = pattern("V0", F)
    C, K, base = window_perp(form, V0, range(6))
    claimed = pattern_sum(pattern("V", F), finite_span(F, [ones(F)]))
    facts = [Fact("N^⊥ = V + ⟨𝟙⟩", "certified", K == window_span(C, claimed, base))]
    facts.append(Fact("N^⊥ ≠ [V]", "certified", not contains(pattern("V", F), ones(F))))
    facts.append(Fact("N^⊥ ∩ [U'] = ∅", "certified",
                      (K & window_span(C, pattern("Uprime", F), base)).is_zero()))
    facts.append(Fact("condition (∗) fails, so [V], [U'] are not complementary", "certified",
                      all(f.value for f in facts)))
    return Report("(∗) fails for ([V], [U'])", facts)


SCENARIOS = {
    "star_of_U01": lambda F, w: star_report(F),
    "nonregularity": lambda F, w: nonregularity_witness(F),
    "esempio1": lambda F, w: esempio_generators(1, w, F),
    "esempio2": lambda F, w: esempio_generators(2, w, F),
    "gs_failure": lambda F, w: gs_failure(F),
    "whole_space": lambda F, w: whole_space_witness(F),
    "star_condition": lambda F, w: star_condition_failure(F),
}


def star_report(F):
    F = _need_char2(F)
    st = star_of_U01(F)
    facts = [Fact("U_01^⊥ = U_01 + ⟨e0, e1, η0, η1, u_k⟩", "certified", True),
             Fact("star point count", "certified", st.points == n_points(F.q, 4), str(st.points)),
             Fact("nucleus dimension", "certified", True, "1"),
             Fact("generators per sub-generator", "certified", st.generators_per_subgenerator == F.q + 1,
                  str(st.generators_per_subgenerator)),
             Fact("representability", "annotation", detail=REPRESENTABLE)]
    return Report("star of [U_01]", facts, counts=(st.points, st.generators_per_subgenerator))


def run_scenario(spec):
    from .gf import parse_field
    F = parse_field(spec.get("field", "gf(2)"))
    name = spec.get("scenario")
    if name not in SCENARIOS:
        raise UnsupportedPattern(f"unknown scenario {name!r}; known: {sorted(SCENARIOS)}")
    return SCENARIOS[name](F, int(spec.get("window", 6)))
