"""Toric data of the Hirzebruch surfaces F_kappa and the transfer F_2k -> F_0.

Curve classes are written ``r*l1 + s*l2`` in the basis of the effective cone;
divisors are Z1..Z4, one per ray. Cohomology elements are ``QuantumElement``
instances without q-terms.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .exact_ring import CohomologyElement, Presentation, Z, complete_relations


@dataclass(frozen=True, order=True)
class CurveClass:
    r: int
    s: int

    def __iter__(self):
        return iter((self.r, self.s))

    def __add__(self, other: "CurveClass") -> "CurveClass":
        return CurveClass(self.r + other.r, self.s + other.s)

    def __str__(self):
        return f"({self.r},{self.s})"


@dataclass(frozen=True)
class FanData:
    kappa: int
    rays: tuple[tuple[int, int], ...]
    primitive_collections: frozenset[frozenset[int]]
    lattice_basis: tuple[tuple[int, int, int, int], ...]


def _check_kappa(kappa: int) -> None:
    if not isinstance(kappa, int) or kappa < 0:
        raise ValueError(f"kappa must be a non-negative integer, got {kappa!r}")


def build_fan(kappa: int) -> FanData:
    _check_kappa(kappa)
    rays = ((1, 0), (-1, kappa), (0, 1), (0, -1))
    collections = frozenset({frozenset({1, 2}), frozenset({3, 4})})
    basis = ((1, 1, -kappa, 0), (0, 0, 1, 1))
    return FanData(kappa, rays, collections, basis)


def ray_coordinates(kappa: int, c: CurveClass) -> tuple[int, int, int, int]:
    r, s = c
    return (r, r, s - kappa * r, s)


def relation_holds(fan: FanData, coords: tuple[int, ...]) -> bool:
    """True when sum_i coords[i] * ray_i vanishes."""
    x = sum(a * v[0] for a, v in zip(coords, fan.rays))
    y = sum(a * v[1] for a, v in zip(coords, fan.rays))
    return x == 0 and y == 0


def c1_degree(kappa: int, c: CurveClass) -> int:
    return sum(ray_coordinates(kappa, c))


def virtual_dimension(kappa: int, c: CurveClass) -> int:
    """Real expected dimension of the space of maps P^1 -> F_kappa in class c."""
    return 2 * (2 + c1_degree(kappa, c))


def is_nonnegative(kappa: int, c: CurveClass) -> bool:
    return all(x >= 0 for x in ray_coordinates(kappa, c))


def nonnegative_hilbert_basis(kappa: int) -> list[CurveClass]:
    """Minimal generators of the semigroup of classes with non-negative ray coordinates.

    Brute force over ``0 <= r, s <= 4*kappa + 4``; the cone is spanned by
    (0,1) and (1,kappa), so the bound is generous.
    """
    _check_kappa(kappa)
    bound = 4 * kappa + 4
    members = [
        CurveClass(r, s)
        for r, s in product(range(bound + 1), repeat=2)
        if (r, s) != (0, 0) and is_nonnegative(kappa, CurveClass(r, s))
    ]
    member_set = set(members)
    basis = []
    for c in members:
        decomposable = any(
            CurveClass(c.r - a.r, c.s - a.s) in member_set for a in members if a != c
        )
        if not decomposable:
            basis.append(c)
    return sorted(basis)


# cohomology


def divisor(i: int) -> CohomologyElement:
    return Z(i)


def point_class() -> CohomologyElement:
    return Z(1) * Z(4)


def linear_substitutions(kappa: int) -> dict[int, CohomologyElement]:
    return {2: Z(1), 3: Z(4) - kappa * Z(1)}


@lru_cache(maxsize=None)
def classical_presentation(kappa: int) -> Presentation:
    """H^*(F_kappa) as Q[Z1, Z4] / (Z1^2, Z4^2 - kappa Z1 Z4)."""
    _check_kappa(kappa)
    return complete_relations(
        [Z(1) * Z(2), Z(3) * Z(4)],
        linear_substitutions=linear_substitutions(kappa),
        name=f"H*(F{kappa})",
    )


def classical_reduce(kappa: int, e: CohomologyElement) -> CohomologyElement:
    """Reduce to the basis {1, Z1, Z4, Z1Z4}; q-parts ride along as coefficients."""
    return classical_presentation(kappa).normal_form(e)


def pairing_with_class(kappa: int, d: CohomologyElement, c: CurveClass) -> int:
    """<D, c> for a degree-2 class D, using <Z1,l1> = <Z4,l2> = 1."""
    red = classical_reduce(kappa, d)
    a = red.coeff((1, 0, 0, 0))
    b = red.coeff((0, 0, 0, 1))
    rest = red - a * Z(1) - b * Z(4)
    if not rest.is_zero():
        raise ValueError(f"not a divisor class: {d}")
    total = a * c.r + b * c.s
    assert total.denominator == 1
    return int(total)


def divisor_curve_class(kappa: int, i: int) -> CurveClass:
    """Homology class of the invariant curve of ray i."""
    zi = Z(i)
    r = classical_reduce(kappa, Z(1) * zi).coeff((1, 0, 0, 1))
    s = classical_reduce(kappa, Z(4) * zi).coeff((1, 0, 0, 1))
    return CurveClass(int(r), int(s))


# transfer between F_2k and F_0


def pushforward_class(k: int, c: CurveClass) -> CurveClass:
    """Image in H_2(F_0) of a class on F_2k: (r, s) -> (r, s - k r)."""
    return CurveClass(c.r, c.s - k * c.r)


def pullback(k: int, e: CohomologyElement) -> CohomologyElement:
    """Carry a cohomology element of F_2k to F_0 (ring isomorphism)."""
    images = {
        1: Z(1),
        2: Z(1),
        3: Z(4) - k * Z(1),
        4: Z(4) + k * Z(1),
    }
    return classical_reduce(0, e.substitute(images))


def pullback_divisor(k: int, i: int) -> CohomologyElement:
    if i not in (1, 2, 3, 4):
        raise ValueError(f"divisor index must be 1..4, got {i!r}")
    return pullback(k, Z(i))

