import random

import pytest
from hypothesis import given, settings, strategies as st

from catalog import brute, space, to_mask
from polarspaces import forms as fm
from polarspaces.errors import DegenerateInput, NotASubspace, NotOpposite, NotSubGenerator, TooLarge
from polarspaces.gf import make_field
from polarspaces.polar import (PolarSpace, are_opposite, bits, classify_subgenerator, enumerate_generators,
                               is_rosette, popcount, star)

SMALL = ["Sp42", "Sp43", "Q+52", "H34", "Q43", "Q+32"]
# name: (points, lines, generators, generator size, hyperbolic line size), brute force
FROZEN = {
    "Sp42": (15, 15, 15, 3, 3),
    "Sp62": (63, 315, 135, 7, 3),
    "Sp43": (40, 40, 40, 4, 4),
    "Q+32": (9, 6, 6, 3, 2),
    "Q+52": (35, 105, 30, 7, 2),
    "Q+53": (130, 520, 80, 13, 2),
    "Q+72": (135, 1575, 270, 15, 2),
    "H34": (45, 27, 27, 5, 3),
    "Q43": (40, 40, 40, 4, 2),
}


@pytest.mark.parametrize("name", SMALL)
def test_points_generators_and_hyperbolic_lines_match_brute_force(name):
    S, B = space(name), brute(name)
    assert set(S.points) == set(B.points)
    gens = {to_mask(S, B, g) for g in B.generators}
    assert gens == set(S.generators)
    for a, b in B.opposite_pairs()[::3]:
        hl = to_mask(S, B, B.hyperbolic_line(a, b))
        assert S.hyperbolic_line(S.index[B.points[a]], S.index[B.points[b]]) == hl


@pytest.mark.parametrize("name", sorted(FROZEN))
def test_frozen_census(name):
    S = space(name)
    pts, lines, gens, gsize, hl = FROZEN[name]
    assert S.N == pts and len(S.lines) == lines and len(S.generators) == gens
    assert {popcount(M) for M in S.generators} == {gsize}
    a, b = S.opposite_point_pairs()[0]
    assert popcount(S.hyperbolic_line(a, b)) == hl


@pytest.mark.parametrize("name", SMALL)
def test_perp_matches_brute_force(name):
    S, B = space(name), brute(name)
    rnd = random.Random(1)
    for _ in range(40):
        idx = rnd.sample(range(B.N), rnd.randint(1, 3))
        assert S.perp(to_mask(S, B, idx)) == to_mask(S, B, B.perp(set(idx)))


def test_perp_examples():
    S = space("Sp42")
    assert all(popcount(S.perp(1 << p)) == 7 for p in range(S.N))
    assert S.perp(S.all) == 0 and S.perp(0) == S.all
    for M in S.generators:
        assert S.perp(M) & M == M


def test_hyperbolic_line_properties():
    for name in ("Sp42", "Q+52", "H34", "Sp43"):
        S = space(name)
        for a, b in S.opposite_point_pairs()[:50]:
            h = S.hyperbolic_line(a, b)
            pts = list(bits(h))
            assert all(not S.collinear(c, d) for c in pts for d in pts if c != d)
            assert all(S.hyperbolic_line(c, d) == h for c in pts for d in pts if c < d)
    S = space("Sp42")
    with pytest.raises(NotOpposite):
        S.hyperbolic_line(0, 0)


def test_generator_examples():
    assert len(enumerate_generators(space("Sp42"))) == 15
    assert len(enumerate_generators(space("Q+52"))) == 30
    assert len(enumerate_generators(space("H34"))) == 27
    S = space("Sp42")
    with pytest.raises(TooLarge):
        PolarSpace(fm.canonical_symplectic(make_field(2), 3), cap_points=10)
    with pytest.raises(DegenerateInput):
        PolarSpace(fm.custom_form("quadratic", make_field(2), [[0, 1, 0], [0, 0, 0], [0, 0, 0]]))
    assert all(S.rank_of(M) == 2 for M in S.generators)


def test_opposition_examples():
    for name in ("Sp42", "Q+52", "H34", "Sp43"):
        S = space(name)
        n = S.form.dual_n
        V = S.mask(i for i, p in enumerate(S.points) if not any(p[n:]))
        Vs = S.mask(i for i, p in enumerate(S.points) if not any(p[:n]))
        assert S.is_generator(V) and S.is_generator(Vs)
        assert are_opposite(S, V, Vs)
        assert not are_opposite(S, V, V)
        M2 = next(M for M in S.generators if M != V and M & V)
        assert not are_opposite(S, V, M2)
        for M in S.generators[:10]:
            for M2 in S.generators[:10]:
                assert are_opposite(S, M, M2) == (M & M2 == 0)


def test_subgenerator_classes():
    S = space("Q+52")
    assert {classify_subgenerator(S, N).label() for N in S.subgenerators} == {"Hyperbolic"}
    S = space("Sp42")
    assert {classify_subgenerator(S, N).label() for N in S.subgenerators} == {"Thick(3)"}
    with pytest.raises(NotSubGenerator):
        classify_subgenerator(S, 0)
    B = brute("Sp42")
    for N in S.subgenerators:
        cnt = sum(1 for g in B.generators if S.index[B.points[next(iter(g))]] is not None
                  and all((to_mask(S, B, g) >> x) & 1 for x in bits(N)))
        assert cnt == len(S.generators_containing(N))


def test_star_examples():
    S = space("Sp62")
    st_ = star(S, 1)
    assert st_.geometry.N == 15 and st_.rank == 2 and st_.form.kind == fm.ALTERNATING
    S = space("Q+52")
    st_ = star(S, 1)
    assert st_.case == 1 and st_.geometry.N == 9
    assert star(S, S.generators[0]).tag == "empty"
    S = space("Q+72")
    assert star(S, S.lines[0]).case == 1
    S = PolarSpace(fm.parabolic(make_field(3)))
    assert star(S, 0).geometry.N == 40


def test_rosette_examples():
    S = space("Q43")
    a, b = S.opposite_point_pairs()[0]
    assert is_rosette(S, S.hyperbolic_line(a, b))
    assert not is_rosette(S, S.generators[0])
    S = space("Sp42")
    a, b = S.opposite_point_pairs()[0]
    assert is_rosette(S, S.perp_masks[a] & S.perp_masks[b])
    # the lines through a point of the quadrangle, pairwise meeting only in that point
    assert is_rosette(S, S.perp_masks[0])
    L = S.lines[0]
    two = 1 << next(bits(L)) | 1 << list(bits(L))[1]
    with pytest.raises(NotASubspace):
        is_rosette(S, two)


@pytest.mark.parametrize("name", ["Sp42", "Q+52", "H34", "Q43", "Sp43"])
def test_one_or_all_axiom(name):
    S = space(name)
    for p in range(S.N):
        for L in S.lines:
            k = popcount(S.perp_masks[p] & L)
            assert k in (1, S.q + 1 if S.form.kind != fm.HERMITIAN else popcount(L))


@pytest.mark.parametrize("name", ["Sp42", "Q+52"])
def test_double_perp_iff_intersection_of_generators(name):
    S = space(name)
    for level in S.singular_by_rank:
        for X in level:
            inter = S.all
            for M in S.generators_containing(X):
                inter &= M
            assert (S.perp(S.perp(X)) == X) == (inter == X)


@pytest.mark.parametrize("name", ["Sp42", "Q+52", "Q43", "H34"])
def test_triple_perp(name):
    S = space(name)
    rnd = random.Random(7)
    for _ in range(200):
        X = 0
        for p in rnd.sample(range(S.N), rnd.randint(1, 4)):
            X |= 1 << p
        assert S.perp(S.perp(S.perp(X))) == S.perp(X)


@pytest.mark.parametrize("name", ["Sp42", "Q+52", "Q43", "H34", "Sp43"])
def test_non_rosette_subspaces_arise_from_their_span(name):
    S = space(name)
    rnd = random.Random(3)
    checked = 0
    for _ in range(150):
        X = S.closure(sum(1 << p for p in rnd.sample(range(S.N), rnd.randint(1, 3))))
        if is_rosette(S, X):
            continue
        checked += 1
        assert S.mask_of(S.span(X)) == X
    assert checked > 20


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(["Sp42", "Q+52", "H34"]), st.data())
def test_perp_is_antitone(name, data):
    S = space(name)
    idx = data.draw(st.lists(st.integers(0, S.N - 1), min_size=1, max_size=4))
    X = sum(1 << i for i in set(idx))
    Y = X | (1 << data.draw(st.integers(0, S.N - 1)))
    assert S.perp(Y) & ~S.perp(X) == 0


def test_census_shape():
    c = space("Q+52").census()
    assert c["points"] == 35 and c["generators"] == 30 and c["rank"] == 3
    assert c["subgenerator_classes"] == {"Hyperbolic": 105}
