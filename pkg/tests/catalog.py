"""Shared, cached instances of the catalog spaces and their brute-force twins."""
from functools import lru_cache

import oracles as o
from polarspaces import forms as fm
from polarspaces.gf import make_field
from polarspaces.polar import PolarSpace

FIELDS = {2: (2, 1), 3: (3, 1), 4: (2, 2), 9: (3, 2)}


def F(q):
    return make_field(*FIELDS[q])


FORMS = {
    "Sp42": lambda: fm.canonical_symplectic(F(2), 2),
    "Sp62": lambda: fm.canonical_symplectic(F(2), 3),
    "Sp43": lambda: fm.canonical_symplectic(F(3), 2),
    "Q+32": lambda: fm.canonical_hyperbolic(F(2), 2),
    "Q+52": lambda: fm.canonical_hyperbolic(F(2), 3),
    "Q+53": lambda: fm.canonical_hyperbolic(F(3), 3),
    "Q+72": lambda: fm.canonical_hyperbolic(F(2), 4),
    "H34": lambda: fm.canonical_hermitian(F(4), 2),
    "Q43": lambda: fm.parabolic(F(3)),
    "Q42q": lambda: fm.minimal_embedding_quotient(fm.parabolic(F(2))).target,
}

BRUTE = {
    "Sp42": lambda: o.symplectic(o.oracle_of(F(2)), 2),
    "Sp62": lambda: o.symplectic(o.oracle_of(F(2)), 3),
    "Sp43": lambda: o.symplectic(o.oracle_of(F(3)), 2),
    "Q+32": lambda: o.hyperbolic(o.oracle_of(F(2)), 2),
    "Q+52": lambda: o.hyperbolic(o.oracle_of(F(2)), 3),
    "Q+53": lambda: o.hyperbolic(o.oracle_of(F(3)), 3),
    "Q+72": lambda: o.hyperbolic(o.oracle_of(F(2)), 4),
    "H34": lambda: o.hermitian(o.oracle_of(F(4)), 2),
    "Q43": lambda: o.parabolic(o.oracle_of(F(3))),
}


@lru_cache(maxsize=None)
def space(name):
    return PolarSpace(FORMS[name](), name=name)


@lru_cache(maxsize=None)
def brute(name):
    return o.BruteSpace(BRUTE[name]())


def to_mask(S, B, idx):
    """Mask in S of a set of brute-force point indices."""
    m = 0
    for i in idx:
        m |= 1 << S.index[B.points[i]]
    return m
