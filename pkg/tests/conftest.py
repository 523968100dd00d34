import random
from fractions import Fraction

import pytest

from lorhom3.catalog import build_algebra, catalog_get
from lorhom3.exactlin import det
from lorhom3.liealg import LieAlgebra
from lorhom3.metric import InvariantMetric


@pytest.fixture
def heis():
    return build_algebra("heis")


@pytest.fixture
def sol():
    return build_algebra("sol")


@pytest.fixture
def sl2():
    return build_algebra("sl2")


@pytest.fixture
def abelian():
    return build_algebra("abelian")


def entry_pair(name):
    e = catalog_get(name)
    return e.algebra, e.metric


def random_invertible(rng, bound=2, dim=3):
    """Small random invertible rational matrix (columns are new basis vectors)."""
    while True:
        p = [[Fraction(rng.randint(-bound, bound)) for _ in range(dim)]
             for _ in range(dim)]
        if det(p) != 0:
            return p


def random_heis_automorphism(rng):
    """Automorphism of the reference heis presentation: the center scales by
    the determinant of the random action on the complementary plane."""
    while True:
        a, b, c, d = (rng.randint(-3, 3) for _ in range(4))
        lam = a * d - b * c
        if lam != 0:
            break
    s, t = rng.randint(-2, 2), rng.randint(-2, 2)
    return [[Fraction(lam), Fraction(s), Fraction(t)],
            [Fraction(0), Fraction(a), Fraction(c)],
            [Fraction(0), Fraction(b), Fraction(d)]]


def random_sol_automorphism(rng):
    """Automorphism of the reference sol presentation: scale the two
    eigendirections and translate the diagonal generator into the plane."""
    while True:
        a, b = rng.randint(-3, 3), rng.randint(-3, 3)
        if a and b:
            break
    u, v = rng.randint(-2, 2), rng.randint(-2, 2)
    return [[Fraction(a), Fraction(0), Fraction(u)],
            [Fraction(0), Fraction(b), Fraction(v)],
            [Fraction(0), Fraction(0), Fraction(1)]]


def random_lorentz_metric(rng, bound=4):
    while True:
        g = [[Fraction(0)] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(i, 3):
                g[i][j] = g[j][i] = Fraction(rng.randint(-bound, bound))
        m = InvariantMetric(g)
        if m.signature() == (2, 1, 0):
            return m
