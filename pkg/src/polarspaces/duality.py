"""Partial dualities of a generator induced by two opposite generators, and (3G).

π_{1,2}(X) = ((X^⊥ ∩ M1)^⊥ ∩ M2)^⊥ ∩ M, evaluated pointwise on M.  A value
equal to M itself plays the role of the "whole space" marker.
"""
from dataclasses import dataclass
from enum import Enum

from .errors import DegenerateInput, NotOpposite, NotPairwiseOpposite
from .polar import bits, lowest, n_points, popcount
from .regularity import Verdict, are_complementary, space_is_regular

WHOLE = None


class ThreeG(Enum):
    TRUE = "True"
    FALSE = "False"
    VACUOUS = "Vacuous"

    def __bool__(self):
        return self is not ThreeG.FALSE


class PartialDuality:
    """Map from the points of M to hyperplane masks of M (None stands for all of M)."""

    def __init__(self, M, images, M1=None, M2=None, order="12", q=None, rank=None):
        self.M = M
        self.images = dict(images)
        self.M1, self.M2 = M1, M2
        self.order = order
        self.q = q
        self.rank = rank

    def __call__(self, x):
        return self.images[x]

    def value(self, x):
        """Image as a point set (the whole of M for the marker)."""
        v = self.images[x]
        return self.M if v is WHOLE else v

    def proper_domain(self):
        m = 0
        for x, v in self.images.items():
            if v is not WHOLE:
                m |= 1 << x
        return m

    def __eq__(self, other):
        return isinstance(other, PartialDuality) and self.M == other.M and self.images == other.images

    def to_json(self):
        return {"M": self.M, "order": self.order,
                "images": {str(x): v for x, v in sorted(self.images.items())}}


def _pi_subspace(S, X, A, B, M):
    return S.perp(S.perp(S.perp(X) & A) & B) & M


def build_pi(S, M, M1, M2, order="12"):
    if M & M1 or M & M2 or M1 & M2:
        raise NotPairwiseOpposite("M, M1, M2 must be pairwise opposite generators")
    A, B = (M1, M2) if str(order) == "12" else (M2, M1)
    images = {}
    for x in bits(M):
        v = _pi_subspace(S, 1 << x, A, B, M)
        images[x] = WHOLE if v == M else v
    return PartialDuality(M, images, M1, M2, str(order), S.q, S.rank_of(M))


def pi_of_subspace(S, d, X):
    """The partial duality applied to an arbitrary subspace X of M."""
    A, B = (d.M1, d.M2) if d.order == "12" else (d.M2, d.M1)
    return _pi_subspace(S, X, A, B, d.M)


@dataclass
class DualityClass:
    kind: str
    absolute_points: int
    reflexive: bool
    non_degenerate: bool
    trivial: bool
    injective: bool

    @property
    def is_polarity(self):
        return self.kind == "Polarity"


def classify(S, d):
    pts = list(d.images)
    nondeg = all(d.images[x] is not WHOLE for x in pts)
    trivial = all(d.images[x] is WHOLE for x in pts)
    vals = [d.value(x) for x in pts]
    injective = len(set(vals)) == len(vals)
    reflexive = True
    for i, x in enumerate(pts):
        vx = vals[i]
        for j in range(i + 1, len(pts)):
            y = pts[j]
            if ((vals[j] >> x) & 1) != ((vx >> y) & 1):
                reflexive = False
                break
        if not reflexive:
            break
    absolute = 0
    for x, v in zip(pts, vals):
        if v != d.M and (v >> x) & 1:
            absolute |= 1 << x
    if reflexive and not trivial:
        kind = "Polarity"
    elif trivial:
        kind = "Trivial"
    elif nondeg:
        kind = "NonDegenerate"
    else:
        kind = "DegenerateProper"
    return DualityClass(kind, absolute, reflexive, nondeg, trivial, injective)


def is_partial_duality(S, d):
    """Distinct proper images, bijective on lines onto dual lines, and a subspace as proper domain."""
    dom = d.proper_domain()
    if S.closure(dom) != dom:
        return False
    dimM = S.rank_of(d.M)
    if dimM < 2:
        return True
    codim2 = n_points(S.q, dimM - 2)
    pts = list(bits(dom))
    for i, x in enumerate(pts):
        for y in pts[i + 1:]:
            K = d.images[x] & d.images[y]
            if d.images[x] == d.images[y] or popcount(K) != codim2:
                return False
            seen = set()
            for z in bits(S.line(x, y)):
                v = d.images.get(z)
                if v is WHOLE or v & K != K:
                    return False
                seen.add(v)
            if len(seen) != S.q + 1:
                return False
    return True


def check_polarity_iff_equal(S, M, M1, M2):
    d12 = build_pi(S, M, M1, M2, "12")
    d21 = build_pi(S, M, M1, M2, "21")
    c12, c21 = classify(S, d12), classify(S, d21)
    if not (c12.non_degenerate and c21.non_degenerate):
        raise DegenerateInput("both partial dualities must be non-degenerate")
    eq = d12.images == d21.images
    return c12.is_polarity == eq == c21.is_polarity


def common_opposites(S, M1, M2):
    return [M for M in S.generators if not (M & M1) and not (M & M2)]


def check_3G(S, M1, M2):
    if M1 & M2:
        raise NotOpposite("M1 and M2 must be opposite generators")
    opp = common_opposites(S, M1, M2)
    if not opp:
        return ThreeG.VACUOUS, None, 0
    for M in opp:
        if not classify(S, build_pi(S, M, M1, M2)).is_polarity:
            return ThreeG.FALSE, M, len(opp)
    return ThreeG.TRUE, None, len(opp)


def span_model(S, M1, M2):
    """Points of the space inside the vector span of M1 ∪ M2."""
    return S.mask_of(S.span(M1 | M2))


def is_hyperbolic_generator(S, M):
    cache = S.__dict__.setdefault("_hyp_gen", {})
    r = cache.get(M)
    if r is None:
        r = any(len(S.generators_containing(N)) == 2 for N in S.hyperplanes(M))
        cache[M] = r
    return r


def opposite_generator_pairs(S):
    G = S.generators
    return [(A, B) for i, A in enumerate(G) for B in G[i + 1:] if not A & B]


def theorem_suite_3G(S, pairs=None):
    """regular ⟺ every opposite pair has (3G); plus generation (odd q) and complementarity (regular) forms."""
    pairs = opposite_generator_pairs(S) if pairs is None else pairs
    regular = space_is_regular(S).holds
    odd = S.field.p != 2
    minimal = S.form.radical().is_zero()
    counts = {"pairs": len(pairs), "true": 0, "false": 0, "vacuous": 0, "generation": 0, "complementary": 0}
    all_3g = True
    failing = None
    for M1, M2 in pairs:
        v, wit, n = check_3G(S, M1, M2)
        counts[v.name.lower()] += 1
        if v is ThreeG.FALSE:
            all_3g = False
            if failing is None:
                failing = (M1, M2, wit)
        if v is ThreeG.VACUOUS or is_hyperbolic_generator(S, M1) or is_hyperbolic_generator(S, M2):
            continue
        if odd:
            counts["generation"] += 1
            if bool(v) != (S.closure(M1 | M2) == S.all):
                return Verdict(False, witness=("generation", M1, M2), detail=str(counts))
        if regular and minimal:
            counts["complementary"] += 1
            if bool(v) != are_complementary(S, M1, M2):
                return Verdict(False, witness=("complementary", M1, M2), detail=str(counts))
    if regular != all_3g:
        return Verdict(False, witness=("regularity", failing), detail=str(counts))
    return Verdict(True, witness=failing, detail=str(counts))


def check_triple(S, M, M1, M2):
    """Per-triple invariants; returns the name of the first failing check or None."""
    d12 = build_pi(S, M, M1, M2, "12")
    d21 = build_pi(S, M, M1, M2, "21")
    for d in (d12, d21):
        if not is_partial_duality(S, d):
            return "partial duality"
    c12, c21 = classify(S, d12), classify(S, d21)
    if c12.is_polarity and not (c12.non_degenerate and c12.reflexive):
        return "polarity class"
    if c12.non_degenerate and c21.non_degenerate:
        eq = d12.images == d21.images
        if not (c12.is_polarity == eq == c21.is_polarity):
            return "3G1"
    pm = S.perp_masks
    for x in bits(M):
        v = d12.images[x]
        lhs = v is not WHOLE and (v >> x) & 1 == 1
        rhs = any(S.line(x, y) & M2 for y in bits(pm[x] & M1))
        if lhs != rhs:
            return "3G2"
        if lhs and d21.images[x] != v:
            return "3G2 symmetry"
        w = d21.images[x]
        if v is not WHOLE and w is not WHOLE:
            if pi_of_subspace(S, d21, v) != 1 << x or pi_of_subspace(S, d12, w) != 1 << x:
                return "inverse"
    model = span_model(S, M1, M2)
    if M & model == M and not (d12.images == d21.images and c12.is_polarity):
        return "3G3"
    if S.field.p != 2 and c12.is_polarity and c12.absolute_points and M & model != M:
        return "3G4"
    if not _check_3G0(S, M1, M2):
        return "3G0"
    return None


def _check_3G0(S, M1, M2):
    """Hyperplanes of M1 through a corank-2 X map to X^⊥∩M2 bijectively, or almost all miss M2."""
    r = S.rank_of(M1)
    if r < 2:
        return True
    hyps = S.hyperplanes(M1)
    level = S.singular_by_rank[r - 2]
    for X in level:
        if X & M1 != X:
            continue
        through = [N for N in hyps if N & X == X]
        images = [S.perp(N) & M2 for N in through]
        target = S.perp(X) & M2
        hit = [y for y in images if y]
        if len(hit) == len(through):
            if S.rank_of_safe(target) != 2 or any(popcount(y) != 1 for y in hit):
                return False
            if len(set(hit)) != len(hit) or set(hit) != {1 << i for i in bits(target)}:
                return False
        else:
            if len(hit) > 1 or popcount(target) != len(hit):
                return False
    return True


def suite_triples(S, limit=None):
    count = 0
    for M1, M2 in opposite_generator_pairs(S):
        for M in common_opposites(S, M1, M2):
            bad = check_triple(S, M, M1, M2)
            if bad:
                return Verdict(False, witness=(bad, M, M1, M2), detail=f"{count} triples")
            count += 1
            if limit is not None and count >= limit:
                return Verdict(True, detail=f"{count} triples")
    return Verdict(True, detail=f"{count} triples")


def first_failing_triple(S):
    for M1, M2 in opposite_generator_pairs(S):
        v, M, _ = check_3G(S, M1, M2)
        if v is ThreeG.FALSE:
            return M, M1, M2
    return None
