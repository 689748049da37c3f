"""Perp-minimality, regularity, tightness and complement constructions.

Everything works on the bitmask representation of a PolarSpace.  The
hyperbolic-line joins ⟨Z, {a,b}^⊥⊥⟩ are always computed as the union of the
singular subspaces ⟨Z, x⟩ over the points x of the hyperbolic line.
"""
from dataclasses import dataclass, field as dc_field

from . import linalg as la
from .errors import (HyperbolicObstruction, InvariantViolation, NoOppositeExists,
                     NotAGenerator, NotAGeneratorOfPerp, NotASubspace, NotCatalogSpace,
                     NotMinimalEmbedding, NotOpposite, NotPairwiseOpposite, NotSubGenerator)
from .polar import bits, lowest, n_points, popcount

MINIMAL = "Minimal"
NOT_MINIMAL = "NotMinimal"
DEGENERATE = "DegeneratePair"


@dataclass
class Verdict:
    holds: bool
    witness: object = None
    vacuous: bool = False
    detail: str = ""

    def __bool__(self):
        return bool(self.holds)

    def to_json(self):
        d = {"holds": bool(self.holds)}
        if self.vacuous:
            d["vacuous"] = True
        if self.witness is not None:
            d["witness"] = _jsonable(self.witness)
        if self.detail:
            d["detail"] = self.detail
        return d


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    return x


@dataclass
class PerpMinimalityVerdict:
    pair: tuple
    verdict: str
    witness: object = None
    hyperbolic_pair: tuple = None

    @property
    def is_minimal(self):
        return self.verdict != NOT_MINIMAL

    def __bool__(self):
        return self.is_minimal


# hyperbolic-line contexts ------------------------------------------------------

class PairContext:
    """Data attached to an opposite pair (a, b): P = {a,b}^⊥, H = {a,b}^⊥⊥ and the generators of P."""

    def __init__(self, S, a, b):
        if a == b or S.collinear(a, b):
            raise NotOpposite(f"points {a} and {b} are not opposite")
        self.S = S
        self.a, self.b = a, b
        self.P = S.perp_masks[a] & S.perp_masks[b]
        self.H = S.perp(self.P)
        size = n_points(S.q, S.rank - 1)
        seen = set()
        for M in S.generators:
            X = M & self.P
            if popcount(X) == size:
                seen.add(X)
        self.gens = sorted(seen, key=lambda m: tuple(bits(m)))
        self.gen_set = frozenset(self.gens)
        self._rhs = {}

    def join_line(self, Z):
        """⟨Z, {a,b}^⊥⊥⟩ for a singular Z inside P."""
        r = self._rhs.get(Z)
        if r is None:
            S = self.S
            r = 0
            for x in bits(self.H):
                r |= S.join(Z, x)
            self._rhs[Z] = r
        return r


def pair_context(S, a, b):
    cache = S.__dict__.setdefault("_pair_ctx", {})
    key = (a, b) if a < b else (b, a)
    ctx = cache.get(key)
    if ctx is None:
        ctx = PairContext(S, *key)
        cache[key] = ctx
    return ctx


def join_hyperbolic(S, Z, a, b):
    return pair_context(S, a, b).join_line(Z)


def generators_of_perp(S, a, b):
    return list(pair_context(S, a, b).gens)


def check_R2(S, a, b):
    """Every generator containing a generator of {a,b}^⊥ meets {a,b}^⊥⊥."""
    ctx = pair_context(S, a, b)
    size = n_points(S.q, S.rank - 1)
    for M in S.generators:
        if popcount(M & ctx.P) == size and not (M & ctx.H):
            return Verdict(False, witness=M)
    return Verdict(True)


def check_R3_pair(S, a, b, X, Y):
    ctx = pair_context(S, a, b)
    if X not in ctx.gen_set or Y not in ctx.gen_set:
        raise NotAGeneratorOfPerp("X and Y must be generators of {a,b}^⊥")
    return _r3_pair(S, ctx, X, Y)


def _r3_pair(S, ctx, X, Y, perps=None):
    lhs = (perps[X] & perps[Y]) if perps else S.perp(X | Y)
    rhs = ctx.join_line(X & Y)
    if rhs & ~lhs:
        raise InvariantViolation("⟨X∩Y, {a,b}^⊥⊥⟩ is not inside {X,Y}^⊥")
    if lhs == rhs:
        return PerpMinimalityVerdict((X, Y), MINIMAL, hyperbolic_pair=(ctx.a, ctx.b))
    return PerpMinimalityVerdict((X, Y), NOT_MINIMAL, witness=lowest(lhs & ~rhs),
                                 hyperbolic_pair=(ctx.a, ctx.b))


def check_R3(S, a, b):
    """(R3) for one pair: every two generators of {a,b}^⊥ form a ⊥-minimal pair."""
    ctx = pair_context(S, a, b)
    gens = ctx.gens
    perps = {X: S.perp(X) for X in gens}
    for i, X in enumerate(gens):
        for Y in gens[i:]:
            v = _r3_pair(S, ctx, X, Y, perps)
            if not v.is_minimal:
                return Verdict(False, witness=(X, Y, v.witness))
    return Verdict(True)


def r3_matrix(S, a, b):
    """Verdict bits for every ordered pair of generators of {a,b}^⊥."""
    ctx = pair_context(S, a, b)
    gens = ctx.gens
    perps = {X: S.perp(X) for X in gens}
    m = len(gens)
    out = [[None] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            out[i][j] = out[j][i] = _r3_pair(S, ctx, gens[i], gens[j], perps).is_minimal
    return gens, out


def check_R1(S, a, b):
    """(X∪Y)^⊥ = {a,b}^⊥⊥ for opposite generators X, Y of {a,b}^⊥; vacuous when there are none."""
    ctx = pair_context(S, a, b)
    gens = ctx.gens
    perps = {X: S.perp(X) for X in gens}
    found = False
    for i, X in enumerate(gens):
        for Y in gens[i + 1:]:
            if perps[X] & Y or perps[Y] & X:
                continue
            found = True
            lhs = perps[X] & perps[Y]
            if lhs != ctx.H:
                return Verdict(False, witness=(X, Y, lowest(lhs ^ ctx.H)))
    if not found:
        return Verdict(True, vacuous=True, detail="no opposite generators in {a,b}^⊥")
    return Verdict(True)


def pair_is_regular(S, a, b):
    return check_R2(S, a, b).holds


def theorem_suite_RA(S, pairs=None):
    """(R2) and (R3) verdicts agree on every opposite pair (and (R1) too at finite rank)."""
    pairs = S.opposite_point_pairs() if pairs is None else pairs
    mismatches = []
    for a, b in pairs:
        r2 = check_R2(S, a, b).holds
        r3 = check_R3(S, a, b).holds
        r1 = check_R1(S, a, b).holds
        if not (r2 == r3 == r1):
            mismatches.append((a, b, r1, r2, r3))
    return Verdict(not mismatches, witness=mismatches or None,
                   detail=f"{len(pairs)} opposite pairs")


# sub-generator perp-minimality ------------------------------------------------

def _subgen_set(S):
    s = S.__dict__.get("_subgen_set")
    if s is None:
        s = S.__dict__["_subgen_set"] = frozenset(S.subgenerators)
    return s


def first_opposite_pair(S, Y):
    pm = S.perp_masks
    for a in bits(Y):
        rest = Y & ~pm[a]
        if rest:
            return a, lowest(rest)
    return None


def is_perp_minimal_pair(S, N, N2, ab=None):
    """⊥-minimality of a pair of sub-generators, relative to the first (or a given) opposite pair in {N,N'}^⊥."""
    subs = _subgen_set(S)
    if N not in subs or N2 not in subs:
        raise NotSubGenerator("both members must be sub-generators")
    Y = S.perp(N | N2)
    if S.is_singular_set(Y):
        return PerpMinimalityVerdict((N, N2), DEGENERATE)
    if ab is None:
        ab = first_opposite_pair(S, Y)
    elif not (Y >> ab[0]) & 1 or not (Y >> ab[1]) & 1:
        raise NotOpposite("the chosen pair does not lie in {N,N'}^⊥")
    rhs = join_hyperbolic(S, N & N2, *ab)
    if rhs & ~Y:
        raise InvariantViolation("⟨N∩N', {a,b}^⊥⊥⟩ is not inside {N,N'}^⊥")
    if rhs == Y:
        return PerpMinimalityVerdict((N, N2), MINIMAL, hyperbolic_pair=tuple(ab))
    return PerpMinimalityVerdict((N, N2), NOT_MINIMAL, witness=lowest(Y & ~rhs),
                                 hyperbolic_pair=tuple(ab))


def is_perp_minimal(S, N):
    return is_perp_minimal_pair(S, N, N)


def non_minimal_subgenerators(S):
    return [N for N in S.subgenerators if not is_perp_minimal(S, N).is_minimal]


def space_is_regular(S):
    bad = non_minimal_subgenerators(S)
    return Verdict(not bad, witness=bad[0] if bad else None)


def space_is_regular_by_pairs(S):
    for a, b in S.opposite_point_pairs():
        if not check_R2(S, a, b).holds:
            return Verdict(False, witness=(a, b))
    return Verdict(True)


def check_GS(S):
    """X^⊥ ∩ M ≠ ∅ for every non-maximal singular X and every generator M."""
    gens = S.generators
    for level in S.singular_by_rank[:-1]:
        for X in level:
            px = S.perp(X)
            for M in gens:
                if not px & M:
                    return Verdict(False, witness=(X, M))
    return Verdict(True)


# embeddings ---------------------------------------------------------------------

def is_optimally_embeddable(S, X, check=True):
    """⟨X⟩ + ⟨X⟩^⊥ equals (X∩X^⊥)^⊥ in the ambient vector space."""
    if check and not S.is_subspace(X):
        raise NotASubspace("X must be line-closed")
    form = S.form
    sx = S.span(X)
    lhs = sx + form.orth(sx)
    rhs = form.orth(S.span(X & S.perp(X)))
    return lhs == rhs


def are_complementary(S, M1, M2):
    return not (M1 & M2) and S.span(M1 | M2).is_full()


def check_tight(S):
    """Some pair of opposite generators spans the ambient space."""
    if not S.form.radical().is_zero():
        raise NotMinimalEmbedding("the form has a nonzero radical; quotient it first")
    gens = S.generators
    for i, M in enumerate(gens):
        for M2 in gens[i + 1:]:
            if not (M & M2) and S.span(M | M2).is_full():
                return Verdict(True, witness=(M, M2))
    return Verdict(False)


def check_R4(S):
    """An opposite ⊥-minimal sub-generator pair with |{N,N'}^⊥| > 1 and ⟨N,N'⟩ optimally embeddable.

    Opposite pairs with |{N,N'}^⊥| > 1 always lie in some {a,b}^⊥, so scanning
    the generators of every {a,b}^⊥ covers every candidate.
    """
    tried = set()
    for a, b in S.opposite_point_pairs():
        ctx = pair_context(S, a, b)
        gens = ctx.gens
        for i, N in enumerate(gens):
            pn = S.perp(N)
            for N2 in gens[i + 1:]:
                if pn & N2 or (N, N2) in tried:
                    continue
                tried.add((N, N2))
                Y = pn & S.perp(N2)
                if popcount(Y) <= 1:
                    continue
                if not _r3_pair(S, ctx, N, N2).is_minimal:
                    continue
                if is_optimally_embeddable(S, S.closure(N | N2), check=False):
                    return Verdict(True, witness=(N, N2))
    return Verdict(False, detail=f"{len(tried)} opposite pairs examined")


# complements ---------------------------------------------------------------------

@dataclass
class ComplementConstruction:
    W: la.Subspace
    K1: la.Subspace
    K2: la.Subspace
    C: la.Subspace
    C1: la.Subspace
    C2: la.Subspace
    H1: la.Subspace
    H2: la.Subspace
    result: la.Subspace
    mask: int


def _catalog_parts(S):
    n = S.form.dual_n
    if n is None or S.n != 2 * n:
        raise NotCatalogSpace("needs a catalog form on V ⊕ V*")
    F = S.field
    V = la.coordinate_subspace(F, S.n, range(n))
    Vs = la.coordinate_subspace(F, S.n, range(n, 2 * n))
    return n, V, Vs


def _ker_star(S, X, Vs):
    return Vs & S.form.orth(X)


def _ker(S, Xi, V):
    return V & S.form.orth(Xi)


def q1_criterion(S, W):
    """ker*(C1+K1) = K2 and ker(C2+K2) = K1 for a totally singular W."""
    n, V, Vs = _catalog_parts(S)
    d = _decompose(S, W, n, V, Vs)
    return _q1(S, d, V, Vs)


def _decompose(S, W, n, V, Vs):
    F = S.field
    K1 = W & V
    K2 = W & Vs
    C = la.complement(K1 + K2, W)
    C1 = la.projection(F, S.n, C, range(n))
    C2 = la.projection(F, S.n, C, range(n, 2 * n))
    if not (C1 & K1).is_zero() or not (C2 & K2).is_zero():
        raise InvariantViolation("C_i ∩ K_i must be trivial")
    return K1, K2, C, C1, C2


def _q1(S, d, V, Vs):
    K1, K2, C, C1, C2 = d
    return _ker_star(S, C1 + K1, Vs) == K2 and _ker(S, C2 + K2, V) == K1


def construct_complement(S, W):
    """A generator W' with W ∩ W' = 0 and W + W' the whole ambient space."""
    n, V, Vs = _catalog_parts(S)
    if not S.is_generator(W):
        raise NotAGenerator("W must be a generator")
    Wv = S.span(W)
    if Wv.dim != n:
        raise NotAGenerator("generator of unexpected dimension")
    d = _decompose(S, Wv, n, V, Vs)
    if not _q1(S, d, V, Vs):
        raise InvariantViolation("generator criterion fails on W")
    K1, K2, C, C1, C2 = d
    H1 = la.complement(C1 + K1, V)
    H2 = _ker_star(S, H1, Vs)
    Wp = H1 + H2
    if Wp.dim != n or not S.form.is_totally_singular(Wp):
        raise InvariantViolation("H1 ⊕ ker*(H1) is not a generator")
    if not (Wv & Wp).is_zero() or not (Wv + Wp).is_full():
        raise InvariantViolation("constructed subspace is not a complement")
    if not _q1(S, _decompose(S, Wp, n, V, Vs), V, Vs):
        raise InvariantViolation("generator criterion fails on W'")
    mask = S.mask_of(Wp)
    if not S.is_generator(mask):
        raise InvariantViolation("W' is not a generator of the space")
    return ComplementConstruction(Wv, K1, K2, C, C1, C2, H1, H2, Wp, mask)


def opposite_through_point(S, M, p, M_avoid=None, start=None):
    """A generator through p opposite to M (and to M_avoid when given)."""
    if not S.is_generator(M) or (M_avoid is not None and not S.is_generator(M_avoid)):
        raise NotAGenerator("M must be a generator")
    avoid = [M] if M_avoid is None else [M, M_avoid]
    if M_avoid is not None and (M & M_avoid):
        raise NotPairwiseOpposite("M and M' must be opposite")
    if any((X >> p) & 1 for X in avoid):
        raise InvariantViolation("p must lie outside the avoided generators")
    pm = S.perp_masks
    if start is None:
        start = next((G for G in S.generators if not any(G & X for X in avoid)), None)
        if start is None:
            raise NoOppositeExists("no generator is opposite to the given ones")
    M1 = start
    if (M1 >> p) & 1:
        return M1
    M2 = S.join(pm[p] & M1, p)
    hits = [M2 & X for X in avoid]
    if not any(hits):
        return _verified(S, M2, p, avoid)
    if len(avoid) == 1 or all(hits):
        cand = pm[p]
        for h in hits:
            cand &= ~pm[lowest(h)]
        if not cand:
            raise HyperbolicObstruction("no point of p^⊥ avoids the meeting points")
        b = lowest(cand)
    else:
        good = avoid[0] if not hits[0] else avoid[1]
        a = lowest(hits[0] or hits[1])
        X = good & pm[p] & pm[a]
        cand = S.perp(X) & pm[p] & ~pm[a]
        b = next((c for c in bits(cand) if pm[p] & pm[c] & good == X), None)
        if b is None:
            raise HyperbolicObstruction("the star of X is a grid")
    M3 = S.join(pm[b] & M2, b)
    return _verified(S, M3, p, avoid)


def _verified(S, G, p, avoid):
    if not S.is_generator(G) or not (G >> p) & 1 or any(G & X for X in avoid):
        raise InvariantViolation("construction produced an invalid generator")
    return G


def check_AddCompl_star(S, M1, M2):
    """Condition (∗) for (M1, M2) and for (M2, M1).

    For each hyperplane N of M_i: N is ⊥-minimal and, when N^⊥ ≠ M_i, N^⊥ meets
    M_j in one point x_j and N^⊥ = ⟨N, {x_i, x_j}^⊥⊥⟩ for x_i ∈ M_i \\ N.
    """
    if M1 & M2 or not S.are_opposite(M1, M2):
        raise NotOpposite("M1 and M2 must be opposite")
    for Mi, Mj in ((M1, M2), (M2, M1)):
        for N in S.hyperplanes(Mi):
            v = is_perp_minimal(S, N)
            if not v.is_minimal:
                return Verdict(False, witness=("not minimal", N))
            Np = S.perp(N)
            if Np == Mi:
                continue
            xj = Np & Mj
            if popcount(xj) != 1:
                return Verdict(False, witness=("misses", N))
            xi = lowest(Mi & ~N)
            if Np != join_hyperbolic(S, N, xi, lowest(xj)):
                return Verdict(False, witness=("span", N))
    return Verdict(True)


# theorem suites -------------------------------------------------------------------

def theorem_suite_RR4(S):
    """(regular and every non-deep N has an opposite optimally embeddable partner) ⟺ every generator has a complement."""
    regular = space_is_regular(S).holds
    lhs = regular
    if regular:
        subs = S.subgenerators
        for N in subs:
            pn = S.perp(N)
            if S.is_generator(pn):
                continue
            ok = False
            for N2 in subs:
                if pn & N2 or S.perp(N2) & N:
                    continue
                if is_optimally_embeddable(S, S.closure(N | N2), check=False):
                    ok = True
                    break
            if not ok:
                lhs = False
                break
    rhs = True
    for M in S.generators:
        if not any(are_complementary(S, M, M2) for M2 in S.generators):
            rhs = False
            break
    return Verdict(lhs == rhs, witness=(lhs, rhs))


def theorem_suite_defcomm(S, max_pairs=None):
    """For every sub-generator pair, all opposite pairs of {N,N'}^⊥ give the same verdict."""
    subs = S.subgenerators
    pm = S.perp_masks
    checked = 0
    for i, N in enumerate(subs):
        for N2 in subs[i:]:
            Y = S.perp(N | N2)
            verdicts = set()
            for a in bits(Y):
                for b in bits(Y & ~pm[a] & ~((1 << (a + 1)) - 1)):
                    rhs = join_hyperbolic(S, N & N2, a, b)
                    verdicts.add(rhs == Y)
                    if len(verdicts) > 1:
                        return Verdict(False, witness=(N, N2))
            checked += 1
            if max_pairs is not None and checked >= max_pairs:
                return Verdict(True, detail=f"{checked} pairs")
    return Verdict(True, detail=f"{checked} pairs")


def suite_ovvio1(S, pairs=None):
    """One ⊥-minimal pair through N inside {a,b}^⊥ forces {N,N} ⊥-minimal."""
    pairs = S.opposite_point_pairs() if pairs is None else pairs
    for a, b in pairs:
        gens, mat = r3_matrix(S, a, b)
        for i in range(len(gens)):
            if any(mat[i]) and not mat[i][i]:
                return Verdict(False, witness=(a, b, gens[i]))
    return Verdict(True)


def _opposite_subgenerator_pairs(S, limit=None):
    subs = S.subgenerators
    out = []
    for i, N in enumerate(subs):
        pn = S.perp(N)
        for N2 in subs[i + 1:]:
            if not pn & N2 and not S.perp(N2) & N:
                out.append((N, N2))
                if limit is not None and len(out) >= limit:
                    return out
    return out


def suite_RR1_RR2(S, limit=None):
    """Optimally embeddable opposite pairs are never ⊥-degenerate, and minimal ones have minimal members."""
    for N, N2 in _opposite_subgenerator_pairs(S, limit):
        if not is_optimally_embeddable(S, S.closure(N | N2), check=False):
            continue
        v = is_perp_minimal_pair(S, N, N2)
        if v.verdict == DEGENERATE:
            return Verdict(False, witness=("RR2", N, N2))
        if v.is_minimal and not (is_perp_minimal(S, N).is_minimal and is_perp_minimal(S, N2).is_minimal):
            return Verdict(False, witness=("RR1", N, N2))
    return Verdict(True)


def suite_optimal(S, limit=None):
    """⟨Y, Z⟩ for opposite generators has trivial radical and is optimally embeddable; so are {a,b}^⊥ and {a,b}^⊥⊥."""
    gens = S.generators
    count = 0
    for i, Y in enumerate(gens):
        for Z in gens[i + 1:]:
            if Y & Z:
                continue
            X = S.closure(Y | Z)
            if X & S.perp(X) or not is_optimally_embeddable(S, X, check=False):
                return Verdict(False, witness=("opposite", Y, Z))
            count += 1
            if limit is not None and count >= limit:
                break
        if limit is not None and count >= limit:
            break
    for a, b in S.opposite_point_pairs()[:limit]:
        ctx = pair_context(S, a, b)
        for X in (ctx.P, ctx.H):
            if not is_optimally_embeddable(S, X):
                return Verdict(False, witness=("hyperbolic", a, b))
    return Verdict(True)


@dataclass
class RegularityReport:
    space: str
    pairs: list
    regular: bool
    regular_by_pairs: bool
    tight: object
    non_minimal_subgenerators: list = dc_field(default_factory=list)

    def to_json(self):
        return {
            "space": self.space,
            "regular": self.regular,
            "regular_by_pairs": self.regular_by_pairs,
            "tight": self.tight,
            "non_minimal_subgenerators": len(self.non_minimal_subgenerators),
            "pairs": self.pairs,
        }


def regularity_report(S, pair_limit=None):
    pairs = S.opposite_point_pairs()
    if pair_limit is not None:
        pairs = pairs[:pair_limit]
    rows = []
    for a, b in pairs:
        r1 = check_R1(S, a, b)
        rows.append({"a": a, "b": b, "R1": r1.holds, "R1_vacuous": r1.vacuous,
                     "R2": check_R2(S, a, b).holds, "R3": check_R3(S, a, b).holds})
    bad = non_minimal_subgenerators(S)
    by_pairs = all(r["R2"] for r in rows) if pair_limit is None else space_is_regular_by_pairs(S).holds
    if not S.form.radical().is_zero():
        tight = None
    else:
        tight = check_tight(S).holds
    return RegularityReport(S.name, rows, not bad, by_pairs, tight, bad)
