import random
from fractions import Fraction

import pytest

from lorhom3 import isotropy as iso
from lorhom3.catalog import build_algebra, catalog_get, model_get
from lorhom3.liealg import conjugate
from lorhom3.metric import InvariantMetric

from conftest import entry_pair, random_invertible, random_lorentz_metric


def test_skew_basis_dimension():
    for gram in ([[1, 0, 0], [0, 1, 0], [0, 0, -1]],
                 [[1, 0, 0], [0, 0, 1], [0, 1, 0]],
                 [[0, 0, 1], [0, 1, 0], [1, 0, 0]]):
        metric = InvariantMetric(gram)
        basis = iso.skew_basis(metric)
        assert len(basis) == 3
        for a in basis:
            assert all(x == 0 for row in iso.skew_residual(a, metric) for x in row)


@pytest.mark.parametrize("name,dim,tag", [
    ("lorentz_sol", 1, iso.IsoType.UNIPOTENT),
    ("lorentz_heisenberg", 1, iso.IsoType.SEMI_SIMPLE),
    ("heis_elliptic", 1, iso.IsoType.ELLIPTIC),
    ("minkowski", 3, iso.IsoType.FULL3),
    ("flat_heis", 3, iso.IsoType.FULL3),
    ("flat_sol", 3, iso.IsoType.FULL3),
    ("anti_de_sitter_killing", 3, iso.IsoType.FULL3),
    ("sl2_right_unipotent", 1, iso.IsoType.UNIPOTENT),
    ("sl2_right_semisimple", 1, iso.IsoType.SEMI_SIMPLE),
])
def test_prolongation_catalog(name, dim, tag):
    algebra, metric = entry_pair(name)
    result = iso.prolongation(algebra, metric)
    assert result.dim == dim
    assert result.type_tag == tag
    assert not result.cap_reached


def test_prolongation_scale_invariance():
    algebra, metric = entry_pair("lorentz_sol")
    base = iso.prolongation(algebra, metric)
    for lam in (Fraction(2), Fraction(5, 3)):
        scaled = iso.prolongation(algebra, metric.scaled(lam))
        assert scaled.dim == base.dim
        assert scaled.basis == base.basis  # literally the same subspace basis


def test_prolongation_generators_annihilate(sol=None):
    algebra, metric = entry_pair("lorentz_heisenberg")
    result = iso.prolongation(algebra, metric)
    a = result.basis[0]
    assert all(x == 0 for row in iso.skew_residual(a, metric) for x in row)


def test_classify_one_param_examples():
    # adapted-frame metric for the unipotent shape
    adapted = InvariantMetric([[0, 0, 1], [0, 1, 0], [1, 0, 0]])
    nilp = [[0, 1, 0], [0, 0, -1], [0, 0, 0]]
    assert iso.classify_one_param(nilp, adapted) == iso.IsoType.UNIPOTENT
    boost_metric = InvariantMetric([[1, 0, 0], [0, 0, 1], [0, 1, 0]])
    boost = [[0, 0, 0], [0, 1, 0], [0, 0, -1]]
    assert iso.classify_one_param(boost, boost_metric) == iso.IsoType.SEMI_SIMPLE
    mink = InvariantMetric([[1, 0, 0], [0, 1, 0], [0, 0, -1]])
    rotation = [[0, -1, 0], [1, 0, 0], [0, 0, 0]]
    assert iso.classify_one_param(rotation, mink) == iso.IsoType.ELLIPTIC
    with pytest.raises(iso.ZeroGenerator):
        iso.classify_one_param([[0] * 3 for _ in range(3)], mink)


def test_classify_one_param_conjugation_invariance():
    rng = random.Random(23)
    mink = InvariantMetric([[1, 0, 0], [0, 1, 0], [0, 0, -1]])
    rotation = [[Fraction(0), Fraction(-1), Fraction(0)],
                [Fraction(1), Fraction(0), Fraction(0)],
                [Fraction(0), Fraction(0), Fraction(0)]]
    from lorhom3.exactlin import inverse, mat_mul
    for _ in range(6):
        p = random_invertible(rng)
        a2 = mat_mul(inverse(p), mat_mul(rotation, p))
        m2 = mink.congruent(p)
        assert iso.classify_one_param(a2, m2) == iso.IsoType.ELLIPTIC


def test_fixed_vector_norms_match_types():
    for name, sign in (("lorentz_sol", 0), ("lorentz_heisenberg", 1),
                       ("heis_elliptic", -1)):
        algebra, metric = entry_pair(name)
        result = iso.prolongation(algebra, metric)
        v = iso.fixed_vector(result.basis[0])
        norm = metric.norm2(v)
        if sign == 0:
            assert norm == 0
        elif sign > 0:
            assert norm > 0
        else:
            assert norm < 0


def test_invariant_lorentz_forms_unipotent_action():
    act = [[Fraction(0), Fraction(1), Fraction(0)],
           [Fraction(0), Fraction(0), Fraction(-1)],
           [Fraction(0), Fraction(0), Fraction(0)]]
    forms = iso.invariant_lorentz_forms(act)
    lorentz = [gram for gram, sig in forms if sig == (2, 1, 0)]
    assert lorentz
    g = InvariantMetric(lorentz[0])
    x = [Fraction(1), Fraction(0), Fraction(0)]
    assert g.norm2(x) == 0
    # the plane spanned by the first two directions is degenerate
    plane = [[g.gram[i][j] for j in (0, 1)] for i in (0, 1)]
    assert plane[0][0] * plane[1][1] - plane[0][1] * plane[1][0] == 0


def test_invariant_lorentz_forms_counts():
    zero = [[Fraction(0)] * 3 for _ in range(3)]
    assert len(iso.invariant_lorentz_forms(zero)) == 6
    diag = [[Fraction(0), Fraction(0), Fraction(0)],
            [Fraction(0), Fraction(1), Fraction(0)],
            [Fraction(0), Fraction(0), Fraction(-1)]]
    assert len(iso.invariant_lorentz_forms(diag)) == 2


def test_degenerate_invariant_planes():
    algebra, metric = entry_pair("lorentz_sol")
    result = iso.prolongation(algebra, metric)
    planes = iso.degenerate_invariant_planes(result, metric)
    assert len(planes) == 1
    u, v = planes[0]
    # the plane is the orthogonal of the fixed null vector: span{X, Z}
    assert u == [1, 0, 0] and v == [0, 1, 0]

    algebra, metric = entry_pair("lorentz_heisenberg")
    result = iso.prolongation(algebra, metric)
    planes = iso.degenerate_invariant_planes(result, metric)
    assert len(planes) == 2
    for u, v in planes:
        assert metric.norm2(v) == 0  # spanned by the fixed vector and a null line


def test_degenerate_planes_need_dim_one():
    algebra, metric = entry_pair("minkowski")
    result = iso.prolongation(algebra, metric)
    with pytest.raises(ValueError):
        iso.degenerate_invariant_planes(result, metric)


def test_nabla_x_values():
    _, alpha = iso.nabla_x_matrix(model_get("lorentz_sol_4d"))
    assert alpha != 0
    _, alpha = iso.nabla_x_matrix(model_get("unipotent_family", c=0, m=1, n=0))
    assert alpha == 0
    _, alpha = iso.nabla_x_matrix(model_get("unipotent_family", c=0, m=0, n=0))
    assert alpha == 0


def test_nabla_x_rejects_semisimple_models():
    with pytest.raises(iso.ModelInvariantViolation):
        iso.nabla_x_matrix(model_get("lorentz_heisenberg_4d"))


def test_model_invariants():
    for name in ("lorentz_sol_4d", "lorentz_heisenberg_4d", "r_x_sol_flat",
                 "r2_x_r2", "product_r_desitter2_4d"):
        model = model_get(name)
        iso.validate_model(model)
        res = model.invariance_residual()
        assert all(x == 0 for row in res for x in row)


def test_transverse_subalgebras_prefer_unimodular():
    model = model_get("lorentz_sol_4d")
    carriers = iso.transverse_subalgebras(model)
    assert carriers and carriers[0].unimodular


def test_prolongation_dims_never_two_on_samples():
    rng = random.Random(17)
    for key in ("heis", "sol", "sl2"):
        base = build_algebra(key)
        for _ in range(3):
            algebra = conjugate(base, random_invertible(rng))
            metric = random_lorentz_metric(rng)
            result = iso.prolongation(algebra, metric)
            assert result.dim in (0, 1, 3)
