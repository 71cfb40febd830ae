import pytest
from hypothesis import given
from hypothesis import strategies as st

from ccalc.char_classes import BundleError, VirtualBundle, equivariant_euler, total_segre
from ccalc.equivariant_poly import EquivClass, LaurentClass
from ccalc.proj_bundle import (
    MonicModel,
    build_projective_model,
    gysin_pushforward,
    normal_data,
    projective_bundle,
    reduce,
    restrict_to_fixed,
)

from conftest import base_classes, genuine_bundles, polynomials, rings


@pytest.fixture
def cp1(point):
    L = VirtualBundle.trivial(point, 1)
    return build_projective_model(L, L)


def test_cp1_model(cp1, point):
    x, y = EquivClass.x(point), EquivClass.y(point)
    assert cp1.relation == x ** 2 + x * y
    assert reduce(x ** 2, cp1) == -(x * y)
    assert reduce(x, cp1) == x
    assert reduce(cp1.relation, cp1) == EquivClass.zero(point)
    assert gysin_pushforward(x ** 2, cp1) == -y
    assert gysin_pushforward(x, cp1) == EquivClass.one(point)
    assert restrict_to_fixed(x, cp1, 1) == -y
    assert restrict_to_fixed(x, cp1, 2) == EquivClass.zero(point)
    for i in (1, 2):
        assert restrict_to_fixed(EquivClass.one(point), cp1, i) == EquivClass.one(point)
        assert restrict_to_fixed(cp1.relation, cp1, i) == EquivClass.zero(point)


def test_cp1_normal_data(cp1, point):
    y = EquivClass.y(point)
    n1, n2 = normal_data(cp1, 1), normal_data(cp1, 2)
    assert n1.euler == -y and n1.inverse == LaurentClass(point, {(0, -1): -point.one()})
    assert n2.euler == y and n2.inverse == LaurentClass(point, {(0, -1): point.one()})
    assert normal_data(cp1, 1) is n1


def test_relation_without_y(cp2):
    V2 = VirtualBundle(2, cp2.element({"1": 1, "h": 1, "h^2": 3}))
    model = build_projective_model(VirtualBundle.trivial(cp2, 0), V2)
    assert model.relation == equivariant_euler(V2, EquivClass.x(cp2))
    assert model.relation.y_exponents() == {0}


def test_single_root_relation(sphere2):
    h = sphere2.monomial("h")
    V1 = VirtualBundle(1, sphere2.one() + h)
    model = build_projective_model(V1, VirtualBundle.trivial(sphere2, 0))
    x, y = EquivClass.x(sphere2), EquivClass.y(sphere2)
    assert model.relation == x + y + EquivClass.const(h)
    # P(V2) needs fibre dimension >= 1 for x_2 to survive reduction
    V2 = VirtualBundle.trivial(sphere2, 2)
    model = build_projective_model(V1, V2)
    assert normal_data(model, 2).euler == x + y + EquivClass.const(h)


def test_normal_leading_term(cp2):
    V1 = VirtualBundle(2, cp2.element({"1": 1, "h": 2}))
    model = build_projective_model(V1, VirtualBundle.trivial(cp2, 1))
    e = normal_data(model, 2).euler
    assert e.coefficient(0, 2) == cp2.one()


def test_pushforward_table_examples(cp2, sphere2):
    model = projective_bundle(VirtualBundle.trivial(cp2, 3))
    x = EquivClass.x(cp2)
    assert gysin_pushforward(x, model) == EquivClass.zero(cp2)
    assert gysin_pushforward(x ** 2, model) == EquivClass.one(cp2)
    h = sphere2.monomial("h")
    model = projective_bundle(VirtualBundle(2, sphere2.one() + h))
    xs = EquivClass.x(sphere2)
    assert gysin_pushforward(xs ** 2, model) == EquivClass.const(-h)


def test_model_errors(point, cp2):
    with pytest.raises(BundleError):
        build_projective_model(VirtualBundle.trivial(point, 0), VirtualBundle.trivial(point, 0))
    with pytest.raises(BundleError):
        build_projective_model(VirtualBundle.trivial(point, -1), VirtualBundle.trivial(point, 2))
    with pytest.raises(BundleError):
        build_projective_model(VirtualBundle(1, cp2.one() + cp2.monomial("h^2")), VirtualBundle.trivial(cp2, 1))
    model = projective_bundle(VirtualBundle.trivial(point, 1))
    with pytest.raises(ValueError):
        restrict_to_fixed(EquivClass.one(point), model, 3)


def test_monic_model_errors(point):
    with pytest.raises(BundleError):
        MonicModel(EquivClass.x(point) * 2, 0)
    with pytest.raises(BundleError):
        MonicModel(EquivClass.zero(point), 0)


def _models(ring):
    @st.composite
    def build(draw):
        a1 = draw(st.integers(0, 3))
        a2 = draw(st.integers(0 if a1 else 1, 3))
        V1 = draw(genuine_bundles(ring, a1, a1))
        V2 = draw(genuine_bundles(ring, a2, a2))
        return build_projective_model(V1, V2)
    return build()


@given(st.data())
def test_reduce_idempotent_and_multiplicative(data):
    ring = data.draw(rings)
    model = data.draw(_models(ring))
    p = data.draw(polynomials(ring, model.rank + 2, 1))
    q = data.draw(polynomials(ring, 2, 1))
    rp = reduce(p, model)
    assert reduce(rp, model) == rp
    assert rp.x_degree() < model.rank
    assert reduce(p * q, model) == reduce(rp * reduce(q, model), model)
    assert reduce(p * model.relation, model) == EquivClass.zero(ring)


@given(st.data())
def test_projection_formula(data):
    ring = data.draw(rings)
    model = data.draw(_models(ring))
    c = data.draw(polynomials(ring, model.rank + 2, 1))
    beta = data.draw(base_classes(ring))
    assert gysin_pushforward(c.mul_base(beta), model) == gysin_pushforward(c, model).mul_base(beta)


@given(st.data())
def test_pushforward_table(data):
    ring = data.draw(rings)
    V = data.draw(genuine_bundles(ring, 1, 4))
    model = projective_bundle(V)
    s = total_segre(V)
    a = V.rank
    for j in range(a + 4):
        want = ring.zero() if j < a - 1 else s.component(2 * (j - a + 1))
        assert gysin_pushforward(EquivClass.x(ring, j), model) == EquivClass.const(want)


@given(st.data())
def test_normal_euler_is_invertible(data):
    ring = data.draw(rings)
    model = data.draw(_models(ring))
    for i in (1, 2):
        locus = model.locus(i)
        if locus.degree:
            nd = normal_data(model, i)
            assert locus.reduce(nd.euler * nd.inverse) == LaurentClass.one(ring)
