import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hirzebruch_qh.exact_ring import Z
from hirzebruch_qh.hirzebruch_toric import (
    CurveClass,
    build_fan,
    c1_degree,
    classical_reduce,
    divisor_curve_class,
    nonnegative_hilbert_basis,
    pairing_with_class,
    pullback,
    pullback_divisor,
    pushforward_class,
    ray_coordinates,
    relation_holds,
    virtual_dimension,
)


def test_fan_kappa2():
    fan = build_fan(2)
    assert fan.rays == ((1, 0), (-1, 2), (0, 1), (0, -1))
    assert fan.primitive_collections == {frozenset({1, 2}), frozenset({3, 4})}
    assert fan.lattice_basis == ((1, 1, -2, 0), (0, 0, 1, 1))


def test_fan_kappa0():
    assert build_fan(0).rays == ((1, 0), (-1, 0), (0, 1), (0, -1))


def test_negative_kappa_rejected():
    with pytest.raises(ValueError):
        build_fan(-1)


@pytest.mark.parametrize("kappa", range(7))
def test_lattice_basis_are_relations(kappa):
    fan = build_fan(kappa)
    for vec in fan.lattice_basis:
        assert relation_holds(fan, vec)


@pytest.mark.parametrize(
    "kappa, cls, coords",
    [(2, (1, 1), (1, 1, -1, 1)), (4, (1, 2), (1, 1, -2, 2)), (5, (0, 1), (0, 0, 1, 1))],
)
def test_ray_coordinates(kappa, cls, coords):
    assert ray_coordinates(kappa, CurveClass(*cls)) == coords
    assert relation_holds(build_fan(kappa), coords)


@pytest.mark.parametrize("kappa, cls, c1", [(2, (1, 1), 2), (0, (1, 1), 4), (3, (0, 0), 0)])
def test_c1_degree(kappa, cls, c1):
    assert c1_degree(kappa, CurveClass(*cls)) == c1


@pytest.mark.parametrize("kappa, cls, dim", [(2, (0, 1), 8), (5, (0, 0), 4), (2, (1, 1), 8)])
def test_virtual_dimension(kappa, cls, dim):
    assert virtual_dimension(kappa, CurveClass(*cls)) == dim


@pytest.mark.parametrize(
    "k, cls, image", [(1, (1, 1), (1, 0)), (3, (0, 1), (0, 1)), (2, (1, 2), (1, 0))]
)
def test_pushforward(k, cls, image):
    assert pushforward_class(k, CurveClass(*cls)) == CurveClass(*image)


def test_pullback_divisors():
    assert pullback_divisor(1, 4) == Z(4) + Z(1)
    assert pullback_divisor(5, 1) == Z(1)
    assert pullback_divisor(2, 3) == Z(4) - 2 * Z(1)
    assert pullback_divisor(2, 2) == Z(1)
    with pytest.raises(ValueError):
        pullback_divisor(1, 5)


@pytest.mark.parametrize("k", range(4))
def test_pullback_preserves_products_and_point(k):
    # the transfer is a ring isomorphism: it respects products and integration
    for i, j in itertools.product(range(1, 5), repeat=2):
        lhs = pullback(k, Z(i) * Z(j))
        rhs = classical_reduce(0, pullback_divisor(k, i) * pullback_divisor(k, j))
        assert lhs == rhs
    assert pullback(k, Z(1) * Z(4)) == Z(1) * Z(4)


@pytest.mark.parametrize("k", range(4))
def test_transfer_duality_on_basis(k):
    for i in range(1, 5):
        for cls in (CurveClass(1, 0), CurveClass(0, 1)):
            on_f0 = pairing_with_class(0, pullback_divisor(k, i), pushforward_class(k, cls))
            assert on_f0 == pairing_with_class(2 * k, Z(i), cls)


@given(st.integers(0, 3), st.integers(-50, 50), st.integers(-50, 50), st.integers(1, 4))
def test_transfer_duality_random(k, r, s, i):
    cls = CurveClass(r, s)
    on_f0 = pairing_with_class(0, pullback_divisor(k, i), pushforward_class(k, cls))
    assert on_f0 == pairing_with_class(2 * k, Z(i), cls)


def test_pairing_matches_ray_coordinates():
    for kappa in range(5):
        for r, s in itertools.product(range(-3, 4), repeat=2):
            cls = CurveClass(r, s)
            coords = ray_coordinates(kappa, cls)
            assert [pairing_with_class(kappa, Z(i), cls) for i in range(1, 5)] == list(coords)


@given(st.integers(0, 3), st.integers(-1000, 1000), st.integers(-1000, 1000))
def test_c1_parity_even_surfaces(k, r, s):
    assert c1_degree(2 * k, CurveClass(r, s)) % 2 == 0


@pytest.mark.parametrize(
    "kappa, basis", [(2, [(0, 1), (1, 2)]), (4, [(0, 1), (1, 4)]), (0, [(0, 1), (1, 0)]), (3, [(0, 1), (1, 3)])]
)
def test_hilbert_basis(kappa, basis):
    assert nonnegative_hilbert_basis(kappa) == [CurveClass(*b) for b in basis]


@pytest.mark.parametrize("kappa", range(6))
def test_hilbert_basis_generates(kappa):
    basis = nonnegative_hilbert_basis(kappa)
    for b in basis:
        assert all(x >= 0 for x in ray_coordinates(kappa, b))
    bound = 3 * kappa + 6
    reachable = {(0, 0)}
    frontier = [(0, 0)]
    while frontier:
        r, s = frontier.pop()
        for b in basis:
            nxt = (r + b.r, s + b.s)
            if nxt[0] <= bound and nxt[1] <= bound and nxt not in reachable:
                reachable.add(nxt)
                frontier.append(nxt)
    for r, s in itertools.product(range(bound + 1), repeat=2):
        if all(x >= 0 for x in ray_coordinates(kappa, CurveClass(r, s))):
            assert (r, s) in reachable


@pytest.mark.parametrize("kappa", range(5))
def test_invariant_curve_classes(kappa):
    assert divisor_curve_class(kappa, 1) == CurveClass(0, 1)
    assert divisor_curve_class(kappa, 2) == CurveClass(0, 1)
    assert divisor_curve_class(kappa, 3) == CurveClass(1, 0)
    assert divisor_curve_class(kappa, 4) == CurveClass(1, kappa)
