import itertools
import random
from fractions import Fraction

import pytest

from lorhom3 import catalog as cat
from lorhom3.exactlin import det, mat_mul, transpose
from lorhom3.liealg import conjugate, is_unimodular, validate
from lorhom3.metric import InvariantMetric, curvature
from lorhom3.isotropy import transverse_subalgebras, validate_model

from conftest import random_heis_automorphism, random_sol_automorphism


def test_catalog_list_is_stable():
    names = cat.catalog_names()
    assert len(names) == 11
    assert names[0] == "minkowski"
    assert "de_sitter_note" in names


def test_unknown_name():
    with pytest.raises(cat.UnknownName):
        cat.catalog_get("bogus")
    with pytest.raises(cat.UnknownName):
        cat.model_get("bogus")


def test_entries_are_wellformed():
    for name in cat.catalog_names():
        entry = cat.catalog_get(name)
        if entry.stub:
            assert entry.algebra is None and entry.metric is None
            continue
        validate(entry.algebra)
        assert entry.metric.is_lorentzian()
        assert entry.metric.determinant() != 0


def test_lorentz_sol_definition():
    entry = cat.catalog_get("lorentz_sol")
    names = entry.algebra.basis_names
    x, z, t = (entry.algebra.basis_vector(names.index(nm)) for nm in ("X", "Z", "T"))
    assert entry.metric.norm2(x) == 0 and entry.metric.norm2(t) == 0
    assert entry.metric.inner(x, t) == 1 and entry.metric.norm2(z) == 1
    assert entry.metric.inner(z, x) == 0 and entry.metric.inner(z, t) == 0


def test_ads_metric_is_killing_form():
    from lorhom3.liealg import killing_form
    entry = cat.catalog_get("anti_de_sitter_killing")
    assert entry.metric.gram == killing_form(entry.algebra)


def test_flat_entries_found_by_bounded_search():
    """The flat sol entry is re-derivable: the exact curvature operator is
    the oracle over a small grid of rational Gram matrices."""
    sol = cat.build_algebra("sol")
    flats = []
    for values in itertools.product((-1, 0, 1), repeat=6):
        g = [[values[0], values[1], values[2]],
             [values[1], values[3], values[4]],
             [values[2], values[4], values[5]]]
        metric = InvariantMetric(g)
        if metric.signature() != (2, 1, 0):
            continue
        if curvature(sol, metric).is_flat():
            flats.append(g)
    target = cat.catalog_get("flat_sol").metric.gram
    assert any(all(Fraction(f[i][j]) == target[i][j]
                   for i in range(3) for j in range(3)) for f in flats)


def test_normalize_heis_trichotomy(heis):
    cases = [
        ([[1, 0, 0], [0, 0, 1], [0, 1, 0]], cat.HeisClass.LORENTZ_HEISENBERG),
        ([[0, 0, 1], [0, 1, 0], [1, 0, 0]], cat.HeisClass.FLAT_NULL_CENTER),
        ([[-1, 0, 0], [0, 1, 0], [0, 0, 1]], cat.HeisClass.ELLIPTIC_RIEMANNIAN),
        ([[-4, 0, 0], [0, 1, 0], [0, 0, 1]], cat.HeisClass.ELLIPTIC_RIEMANNIAN),
    ]
    for gram, want in cases:
        assert cat.normalize_heis(heis, InvariantMetric(gram)).klass == want


def test_normalize_heis_canonical_witness(heis):
    metric = cat.catalog_get("lorentz_heisenberg").metric
    nf = cat.normalize_heis(heis, metric)
    assert nf.klass == cat.HeisClass.LORENTZ_HEISENBERG
    assert nf.scale == 1
    target = metric.congruent(nf.witness).gram
    assert target == [[1, 0, 0], [0, 0, 1], [0, 1, 0]]


def test_normalize_heis_automorphism_invariance(heis):
    rng = random.Random(12)
    base = cat.catalog_get("lorentz_heisenberg").metric
    for _ in range(8):
        p = random_heis_automorphism(rng)
        assert conjugate(heis, p).constants_equal(heis)  # really an automorphism
        moved = base.congruent(p)
        nf = cat.normalize_heis(heis, moved)
        assert nf.klass == cat.HeisClass.LORENTZ_HEISENBERG
        assert nf.witness is not None
        reduced = moved.congruent(nf.witness).gram
        s = nf.scale
        assert reduced == [[s, 0, 0], [0, 0, s], [0, s, 0]]


def test_normalize_heis_irrational_directions_certified_without_witness(heis):
    # center norm positive but the orthogonal plane is diag(1, -2):
    # its null directions have irrational slope
    metric = InvariantMetric([[1, 0, 0], [0, 1, 0], [0, 0, -2]])
    nf = cat.normalize_heis(heis, metric)
    assert nf.klass == cat.HeisClass.LORENTZ_HEISENBERG
    assert nf.witness is None
    assert "irrational" in nf.note


def test_normalize_sol_scaling(sol):
    canon = cat.catalog_get("lorentz_sol").metric
    for lam in (Fraction(1), Fraction(2), Fraction(5), Fraction(1, 3)):
        nf = cat.normalize_sol(sol, canon.scaled(lam))
        assert nf.klass == cat.SolClass.LORENTZ_SOL
        assert nf.witness is not None
        reduced = canon.scaled(lam).congruent(nf.witness).gram
        s = nf.scale
        assert reduced == [[0, 0, s], [0, s, 0], [s, 0, 0]]


def test_normalize_sol_automorphism_invariance(sol):
    rng = random.Random(21)
    canon = cat.catalog_get("lorentz_sol").metric
    for _ in range(8):
        p = random_sol_automorphism(rng)
        assert conjugate(sol, p).constants_equal(sol)
        moved = canon.congruent(p)
        nf = cat.normalize_sol(sol, moved)
        assert nf.klass == cat.SolClass.LORENTZ_SOL
        reduced = moved.congruent(nf.witness).gram
        s = nf.scale
        assert reduced == [[0, 0, s], [0, s, 0], [s, 0, 0]]


def test_normalize_sol_other_classes(sol):
    assert cat.normalize_sol(sol, cat.catalog_get("flat_sol").metric).klass \
        == cat.SolClass.FLAT
    nondeg = InvariantMetric([[1, 0, 0], [0, 1, 0], [0, 0, -1]])
    assert cat.normalize_sol(sol, nondeg).klass == cat.SolClass.OTHER_SOL


def test_normalize_wrong_algebra(heis, sol):
    metric = InvariantMetric([[1, 0, 0], [0, 1, 0], [0, 0, -1]])
    with pytest.raises(cat.NotSol):
        cat.normalize_sol(heis, metric)
    with pytest.raises(cat.NotHeis):
        cat.normalize_heis(sol, metric)


def test_model_names_and_parameters():
    assert set(cat.model_names()) == {
        "lorentz_sol_4d", "lorentz_heisenberg_4d", "r_x_sol_flat", "r2_x_r2",
        "unipotent_family", "product_r_desitter2_4d"}
    with pytest.raises(cat.InvalidParameters):
        cat.model_get("unipotent_family")
    with pytest.raises(cat.InvalidParameters):
        cat.model_get("unipotent_family", c="1/0", m=0, n=0)
    model = cat.model_get("unipotent_family", c="1/2", m=1, n="1/2")
    validate_model(model)


def test_lorentz_sol_4d_invariant_form():
    model = cat.model_get("lorentz_sol_4d")
    # the induced form makes the first quotient direction (X') isotropic
    x = [Fraction(1), Fraction(0), Fraction(0)]
    assert model.induced_metric.norm2(x) == 0
    action = model.quotient_action()
    assert action == [[0, 1, 0], [0, 0, -1], [0, 0, 0]]


def test_lorentz_heisenberg_4d_action():
    model = cat.model_get("lorentz_heisenberg_4d")
    assert model.quotient_action() == [[0, 0, 0], [0, 1, 0], [0, 0, -1]]


def test_product_carrier_is_rederived_by_search():
    model = cat.model_get("product_r_desitter2_4d")
    carriers = transverse_subalgebras(model)
    assert carriers  # the frozen entry's carrier family is reachable
    assert not any(c.unimodular for c in carriers)
    frozen = cat.catalog_get("product_r_desitter2")
    validate(frozen.algebra)
    assert not is_unimodular(frozen.algebra)
    assert frozen.metric.is_lorentzian()


def test_unipotent_family_hints_give_sol_carrier():
    model = cat.model_get("unipotent_family", c=3, m=1, n=18)  # n = 2 c^2
    carriers = transverse_subalgebras(model)
    assert any(c.unimodular for c in carriers)
