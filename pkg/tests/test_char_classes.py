import pytest
from hypothesis import given
from hypothesis import strategies as st

from ccalc.char_classes import (
    BundleError,
    OrientedRealBundle,
    VirtualBundle,
    bundle_difference,
    bundle_sum,
    equivariant_euler,
    euler_expansion,
    generalized_binomial,
    inverse_equivariant_euler,
    total_segre,
    twist_chern,
    twist_segre,
)
from ccalc.checks import brute_force_twisted_segre, root_model
from ccalc.equivariant_poly import EquivClass, LaurentClass

from conftest import genuine_bundles, homogeneous, rings, unit_classes, virtual_bundles


def test_segre_examples(sphere2, cp2):
    h = sphere2.monomial("h")
    assert total_segre(VirtualBundle(1, sphere2.one() + h)) == sphere2.one() - h
    hc = cp2.monomial("h")
    assert total_segre(VirtualBundle(1, cp2.one() + hc)) == cp2.element({"1": 1, "h": -1, "h^2": 1})
    assert total_segre(VirtualBundle.trivial(cp2, 4)) == cp2.one()


def test_whitney_examples(cp2):
    h = cp2.monomial("h")
    V, W = VirtualBundle(1, cp2.one() + h), VirtualBundle(1, cp2.one() - h)
    S = bundle_sum(V, W)
    assert S.rank == 2 and S.total_chern == cp2.one() - cp2.monomial("h^2")
    assert V + VirtualBundle.trivial(cp2) == V
    assert bundle_difference(V, V) == VirtualBundle.trivial(cp2, 0)
    assert (V - W).rank == 0
    assert -V == VirtualBundle(-1, total_segre(V))


@pytest.mark.parametrize("n, k, value", [(-2, 3, -4), (7, 0, 1), (-5, 0, 1), (3, 2, 3), (2, 3, 0), (-1, 4, 1)])
def test_generalized_binomial(n, k, value):
    assert generalized_binomial(n, k) == value


def test_generalized_binomial_negative_k():
    with pytest.raises(ValueError):
        generalized_binomial(3, -1)


def test_bundle_invariants(cp2, sphere2, torus2):
    with pytest.raises(BundleError):
        VirtualBundle(1, cp2.monomial("h"))
    with pytest.raises(BundleError):
        VirtualBundle(1, cp2.one() * 2)
    with pytest.raises(BundleError):
        VirtualBundle(1, torus2.one() + torus2.monomial("u"))
    with pytest.raises(BundleError):
        OrientedRealBundle(-1, sphere2.one())
    with pytest.raises(BundleError):
        OrientedRealBundle(0, sphere2.one() * 2)
    with pytest.raises(BundleError):
        OrientedRealBundle(2, sphere2.one())
    assert OrientedRealBundle.trivial(sphere2, 2).euler == sphere2.zero()
    assert OrientedRealBundle.trivial(sphere2).euler == sphere2.one()


def test_twist_segre_trivial(cp2):
    D = VirtualBundle.trivial(cp2, 0)
    x = EquivClass.x(cp2)
    assert twist_segre(D, 0, x) == EquivClass.one(cp2)
    for j in range(1, 4):
        assert twist_segre(D, j, x) == EquivClass.zero(cp2)


def test_twist_segre_negative_rank_point(point):
    D = VirtualBundle.trivial(point, -1)
    assert twist_segre(D, 1, EquivClass.x(point)) == EquivClass.x(point)


def test_twist_segre_rank_one_cp2(cp2):
    # degree-2 part of (1 + h + x)^-1 is -x - h
    h = cp2.monomial("h")
    D = VirtualBundle(1, cp2.one() + h)
    x = EquivClass.x(cp2)
    expected = -x - EquivClass.const(h)
    assert twist_segre(D, 1, x) == expected
    roots = root_model(1, 2)
    a = roots.monomial("a1")
    xr = EquivClass.x(roots)
    assert brute_force_twisted_segre([a], 1, xr) == -xr - EquivClass.const(a)


def test_twist_segre_rejects_bad_input(cp2):
    D = VirtualBundle.trivial(cp2, 1)
    with pytest.raises(BundleError):
        twist_segre(D, -1, EquivClass.x(cp2))
    with pytest.raises(BundleError):
        twist_segre(D, 1, EquivClass.x(cp2, 2))
    with pytest.raises(BundleError):
        twist_chern(D, -1, EquivClass.x(cp2))


def test_equivariant_euler_examples(cp2, sphere2):
    c1, c2 = cp2.monomial("h", 3), cp2.monomial("h^2", -2)
    V = VirtualBundle(2, cp2.one() + c1 + c2)
    x = EquivClass.x(cp2)
    assert equivariant_euler(V, x) == x ** 2 + x.mul_base(c1) + EquivClass.const(c2)
    assert equivariant_euler(VirtualBundle.trivial(cp2, 0), x) == EquivClass.one(cp2)
    h = sphere2.monomial("h")
    L = VirtualBundle(1, sphere2.one() + h)
    xs, ys = EquivClass.x(sphere2), EquivClass.y(sphere2)
    assert equivariant_euler(L, xs + ys) == xs + ys + EquivClass.const(h)


def test_equivariant_euler_errors(cp2):
    x = EquivClass.x(cp2)
    with pytest.raises(BundleError):
        equivariant_euler(VirtualBundle.trivial(cp2, -1), x)
    with pytest.raises(BundleError):
        equivariant_euler(VirtualBundle(1, cp2.one() + cp2.monomial("h^2")), x)


def test_inverse_euler_examples(point, sphere2):
    assert inverse_equivariant_euler(VirtualBundle.trivial(point, 1)) == LaurentClass(point, {(0, -1): point.one()})
    h = sphere2.monomial("h")
    inv = inverse_equivariant_euler(VirtualBundle(1, sphere2.one() + h))
    assert inv == LaurentClass(sphere2, {(0, -1): sphere2.one(), (0, -2): -h})
    assert inverse_equivariant_euler(VirtualBundle.trivial(point, 1), sign=-1) == LaurentClass(
        point, {(0, -1): -point.one()})


def test_inverse_euler_matches_segre_series(cp2):
    h = cp2.monomial("h")
    V = VirtualBundle(2, cp2.one() + h * 2 + cp2.monomial("h^2"))
    s = total_segre(V)
    expected = LaurentClass(cp2, {(0, -2 - k): s.component(2 * k) for k in range(3)})
    assert inverse_equivariant_euler(V) == expected


def test_inverse_euler_needs_top_degree_for_x_shift(cp2):
    with pytest.raises(BundleError):
        inverse_equivariant_euler(VirtualBundle.trivial(cp2, 1), shift=EquivClass.x(cp2))
    with pytest.raises(BundleError):
        inverse_equivariant_euler(VirtualBundle.trivial(cp2, 1), sign=2)


@given(rings.flatmap(virtual_bundles))
def test_segre_inverts_chern(V):
    assert V.total_chern * total_segre(V) == V.ring.one()
    assert VirtualBundle.from_segre(V.rank, total_segre(V)) == V


@given(rings.flatmap(lambda r: st.tuples(virtual_bundles(r), virtual_bundles(r))))
def test_segre_multiplicative(pair):
    V, W = pair
    assert total_segre(V + W) == total_segre(V) * total_segre(W)


@given(st.data())
def test_twist_by_zero_is_plain_segre(data):
    ring = data.draw(rings)
    D = data.draw(virtual_bundles(ring))
    j = data.draw(st.integers(0, 4))
    assert twist_segre(D, j, EquivClass.zero(ring)) == EquivClass.const(D.segre(j))


@given(st.data())
def test_twist_segre_homogeneous(data):
    ring = data.draw(rings)
    D = data.draw(virtual_bundles(ring))
    j = data.draw(st.integers(0, 4))
    x, y = EquivClass.x(ring), EquivClass.y(ring)
    t = data.draw(st.sampled_from([x, x + y, x - y]))
    assert twist_segre(D, j, t).is_homogeneous(2 * j)


@given(st.data())
def test_twisted_chern_and_segre_are_inverse(data):
    # the total classes of D (x) L_t multiply to 1 up to the base truncation
    ring = data.draw(rings)
    D = data.draw(virtual_bundles(ring))
    t = EquivClass.x(ring)
    top = data.draw(st.integers(0, 4))
    c = sum((twist_chern(D, k, t) for k in range(top + 1)), EquivClass.zero(ring))
    s = sum((twist_segre(D, k, t) for k in range(top + 1)), EquivClass.zero(ring))
    prod = c * s
    for d in range(0, 2 * top + 1, 2):
        assert prod.homogeneous_part(d) == (EquivClass.one(ring) if d == 0 else EquivClass.zero(ring))


@given(st.data())
def test_inverse_euler_times_euler_is_one(data):
    ring = data.draw(rings)
    V = data.draw(genuine_bundles(ring))
    sign = data.draw(st.sampled_from([1, -1]))
    shift = EquivClass.const(data.draw(homogeneous(ring, 2)))
    assert euler_expansion(V, sign, shift) * inverse_equivariant_euler(V, sign, shift) == LaurentClass.one(ring)


@given(st.data())
def test_genuine_bundles_have_degree_bounded_segre_twist(data):
    ring = data.draw(rings)
    rank = data.draw(st.integers(0, 3))
    V = VirtualBundle(rank, data.draw(unit_classes(ring, max_k=rank)))
    assert V.is_genuine()
    assert twist_chern(V, rank + 1, EquivClass.x(ring)) == EquivClass.zero(ring)
