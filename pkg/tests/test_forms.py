import itertools

import pytest

import oracles as o
from catalog import BRUTE, F, FORMS
from polarspaces import forms as fm
from polarspaces import linalg as la
from polarspaces.errors import InvariantViolation, NoInvolution, NotAQuotientSituation, WrongCharacteristic
from polarspaces.gf import make_field
from polarspaces.polar import PolarSpace, lift_report


def all_vectors(Fd, n):
    return itertools.product(range(Fd.q), repeat=n)


def sp_count(q, n):
    return (q ** (2 * n) - 1) // (q - 1)


def qplus_count(q, n):
    return (q ** n - 1) * (q ** (n - 1) + 1) // (q - 1)


def herm_count(r, m):
    """H(m-1, r^2): isotropic points of a nondegenerate hermitian form on F_{r^2}^m."""
    return (r ** m - (-1) ** m) * (r ** (m - 1) - (-1) ** (m - 1)) // (r * r - 1)


def test_symplectic_examples():
    f = fm.canonical_symplectic(F(2), 1)
    assert [list(r) for r in f.gram] == [[0, 1], [1, 0]]
    f = fm.canonical_symplectic(F(3), 2)
    assert f.bilinear((1, 0, 0, 0), (0, 0, 1, 0)) == 1
    assert f.bilinear((0, 0, 1, 0), (1, 0, 0, 0)) == F(3).neg(1)
    for Fd in (F(2), F(3)):
        for n in (1, 2, 3):
            g = fm.canonical_symplectic(Fd, n)
            assert all(g.bilinear(v, v) == 0 for v in all_vectors(Fd, 2 * n))


def test_hyperbolic_examples():
    for Fd in (F(2), F(3)):
        q = fm.canonical_hyperbolic(Fd, 1)
        for t, s in itertools.product(range(Fd.q), repeat=2):
            assert q.value((t, s)) == Fd.mul(t, s)
        assert len(q.singular_points()) == 2
    q = fm.canonical_hyperbolic(F(2), 2)
    assert len(q.singular_points()) == 9
    assert q.bilinear((1, 0, 0, 0), (0, 0, 1, 0)) == 1 == q.bilinear((0, 0, 1, 0), (1, 0, 0, 0))


def test_hermitian_examples():
    h = fm.canonical_hermitian(F(4), 2)
    assert len(h.singular_points()) == 45
    # h(a⊕α, b⊕β) = α(b) + β(a)^σ: both slots give η_0(e_0) = 1
    e0, eta0 = (1, 0, 0, 0), (0, 0, 1, 0)
    assert h.bilinear(e0, eta0) == 1
    assert h.bilinear(eta0, e0) == 1
    Fd = F(4)
    fixed = {a for a in range(Fd.q) if Fd.sigma(a) == a}
    assert all(h.bilinear(v, v) in fixed for v in all_vectors(Fd, 4))
    with pytest.raises(NoInvolution):
        fm.canonical_hermitian(F(2), 1)


def test_custom_form_examples():
    Q = fm.custom_form("quadratic", F(3), [[1, 0, 0, 0, 0], [0, 0, 1, 0, 0], [0] * 5, [0, 0, 0, 0, 1], [0] * 5])
    assert len(Q.singular_points()) == 40
    with pytest.raises(InvariantViolation):
        fm.custom_form("alternating", F(3), [[1, 0], [0, 0]])
    with pytest.raises(NoInvolution):
        fm.custom_form("hermitian", F(2), [[0, 1], [1, 0]])
    with pytest.raises(InvariantViolation):
        fm.custom_form("quadratic", F(3), [[0, 0], [1, 0]])


def test_radical_examples():
    for n in (1, 2, 3):
        assert fm.canonical_symplectic(F(2), n).radical().is_zero()
        for q in (2, 3):
            assert fm.canonical_hyperbolic(F(q), n).radical().is_zero()
    R = fm.parabolic(F(2)).radical()
    assert R.dim == 1 and R.rows[0] == (1, 0, 0, 0, 0)
    assert fm.parabolic(F(3)).radical().is_zero()


def test_minimal_quotient_of_parabolic_char2_is_symplectic():
    src = fm.parabolic(F(2))
    mq = fm.minimal_embedding_quotient(src)
    T = mq.target
    assert T.kind == fm.ALTERNATING and T.n == 4 and T.radical().is_zero()
    S = PolarSpace(src, allow_degenerate=True)
    Tsp = PolarSpace(T)
    img = [Tsp.index[mq.point(p)] for p in S.points]
    assert sorted(img) == list(range(15))
    for i, j in itertools.combinations(range(S.N), 2):
        assert S.collinear(i, j) == Tsp.collinear(img[i], img[j])


def test_minimal_quotient_trivial_and_degenerate():
    f = fm.canonical_symplectic(F(3), 2)
    assert fm.minimal_embedding_quotient(f).target is f
    cone = fm.custom_form("quadratic", F(2), [[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    with pytest.raises(NotAQuotientSituation):
        fm.minimal_embedding_quotient(cone)


def test_universal_lift_examples():
    form, pmap = fm.char2_universal_lift(F(2), 2)
    assert form.n == 5 and len(form.singular_points()) == 15
    Sf = PolarSpace(fm.canonical_symplectic(F(2), 2))
    for p in Sf.points:
        v = pmap(p)
        assert form.value(v) == 0
        if la.dot(F(2), p[:2], p[2:]) == 0:
            assert v[-1] == 0
    with pytest.raises(WrongCharacteristic):
        fm.char2_universal_lift(F(3), 2)


def test_universal_lift_quotient_recovers_symplectic():
    for k in (1, 2):
        Fd = make_field(2, k)
        form, _ = fm.char2_universal_lift(Fd, 2)
        T = fm.minimal_embedding_quotient(form).target
        assert T.kind == fm.ALTERNATING
        assert len(PolarSpace(T).points) == sp_count(Fd.q, 2)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_lift_report(n):
    r = lift_report(F(2), n)
    assert r.points == r.lift_points == sp_count(2, n)
    assert r.bijective and r.collinearity and r.closure_is_slice and r.proper


@pytest.mark.parametrize("name", sorted(BRUTE))
def test_forms_match_defining_formulas(name):
    f = FORMS[name]()
    B = BRUTE[name]()
    vs = list(all_vectors(f.field, f.n))
    step = max(1, len(vs) // 400)
    sample = vs[::step]
    for u in sample:
        if f.kind == fm.QUADRATIC:
            assert f.value(u) == B.value(u)
        for v in sample[::7]:
            assert f.bilinear(u, v) == B.bilinear(u, v)
    assert sorted(f.singular_points()) == sorted(p for p in o.proj_points(B.O, f.n) if B.singular(p))


@pytest.mark.parametrize("name", sorted(FORMS))
def test_reflexivity(name):
    f = FORMS[name]()
    pts = list(la.projective_points_array(f.field, f.n).tolist())[:120]
    for u in pts:
        for v in pts:
            assert (f.bilinear(u, v) == 0) == (f.bilinear(v, u) == 0)


def test_scaling_laws():
    for Fd, n in ((F(3), 2), (F(4), 2), (make_field(5), 1)):
        q = fm.canonical_hyperbolic(Fd, n)
        for v in list(all_vectors(Fd, 2 * n))[::3]:
            for lam in range(Fd.q):
                assert q.value(la.vec_scale(Fd, lam, v)) == Fd.mul(Fd.mul(lam, lam), q.value(v))
    Fd = F(4)
    h = fm.canonical_hermitian(Fd, 2)
    for v in list(all_vectors(Fd, 4))[::5]:
        for lam in range(Fd.q):
            w = la.vec_scale(Fd, lam, v)
            assert h.bilinear(w, w) == Fd.mul(Fd.mul(lam, Fd.sigma(lam)), h.bilinear(v, v))


def test_quadratic_bilinearization_identity():
    for f in (fm.parabolic(F(2)), fm.parabolic(F(3)), fm.canonical_hyperbolic(F(4), 2)):
        Fd = f.field
        for u in list(all_vectors(Fd, f.n))[::11]:
            for v in list(all_vectors(Fd, f.n))[::13]:
                lhs = Fd.sub(Fd.sub(f.value(la.vec_add(Fd, u, v)), f.value(u)), f.value(v))
                assert f.bilinear(u, v) == lhs


@pytest.mark.parametrize("q", [2, 3, 4])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_classical_point_counts(q, n):
    Fd = F(q)
    assert len(fm.canonical_symplectic(Fd, n).singular_points()) == sp_count(q, n)
    assert len(fm.canonical_hyperbolic(Fd, n).singular_points()) == qplus_count(q, n)


@pytest.mark.parametrize("r,n", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1), (4, 2)])
def test_hermitian_point_counts(r, n):
    Fd = make_field(*{2: (2, 2), 3: (3, 2), 4: (2, 4)}[r])
    assert len(fm.canonical_hermitian(Fd, n).singular_points()) == herm_count(r, 2 * n)


def test_json_round_trip():
    f = fm.parabolic(F(3))
    assert fm.form_from_json(f.to_json()) == f
