"""Classical, quantum and Batyrev rings of F_2k and their comparison.

Two representations of quantum elements appear here and are never mixed:

* classical basis -- combinations of 1, Z1, Z4 and the point class [Z1Z4]
  with q-coefficients, as produced by summing invariants;
* star monomials -- normal forms in a presentation, where the monomial Z1Z4
  stands for the quantum product Z1 * Z4.

``star_to_classical`` and ``classical_to_star`` translate between them.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce as fold
from math import comb
from operator import mul
from typing import Sequence

from .exact_ring import ONE, CohomologyElement, Presentation, Q, QuantumElement, Z, complete_relations
from .gw_engine import enumerate_contributing, invariant
from .hirzebruch_toric import (
    CurveClass,
    classical_presentation,
    classical_reduce,
    divisor_curve_class,
    is_nonnegative,
    linear_substitutions,
    nonnegative_hilbert_basis,
    ray_coordinates,
)

POINT = Z(1) * Z(4)
BASIS = (ONE, Z(1), Z(4), POINT)
_BASIS_KEYS = {(0, 0, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1), (1, 0, 0, 1)}


class DomainError(ValueError):
    """Input outside the mathematical domain (e.g. odd kappa for quantum rings)."""


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 0:
        raise DomainError(f"k must be a non-negative integer, got {k!r}")


def even_kappa(kappa: int) -> int:
    if not isinstance(kappa, int) or kappa < 0 or kappa % 2:
        raise DomainError(f"quantum rings are built for even kappa >= 0 only, got {kappa!r}")
    return kappa // 2


# classical ring


def classical_product(kappa: int, a: CohomologyElement, b: CohomologyElement) -> CohomologyElement:
    return classical_reduce(kappa, a * b)


def poincare_pairing(kappa: int, a: CohomologyElement, b: CohomologyElement) -> int:
    c = classical_product(kappa, a, b).coeff((1, 0, 0, 1))
    assert c.denominator == 1
    return int(c)


def pairing_matrix(kappa: int) -> list[list[int]]:
    """Gram matrix of the pairing on the degree-2 basis (Z1, Z4)."""
    return [[poincare_pairing(kappa, a, b) for b in (Z(1), Z(4))] for a in (Z(1), Z(4))]


def inverse_pairing_matrix(kappa: int) -> list[list[int]]:
    (a, b), (c, d) = pairing_matrix(kappa)
    det = a * d - b * c
    if det not in (1, -1):
        raise ArithmeticError(f"pairing matrix not unimodular (det={det})")
    return [[d * det, -b * det], [-c * det, a * det]]


def dual_basis(kappa: int) -> list[CohomologyElement]:
    """Elements T^i with <T_i, T^j> = delta_ij for T = (1, Z1, Z4, Z1Z4)."""
    inv = inverse_pairing_matrix(kappa)
    d1 = inv[0][0] * Z(1) + inv[0][1] * Z(4)
    d4 = inv[1][0] * Z(1) + inv[1][1] * Z(4)
    return [POINT, d1, d4, ONE]


def _classical_part(kappa: int, e: CohomologyElement) -> CohomologyElement:
    red = classical_reduce(kappa, e)
    if red.has_laurent() or any(q != (0, 0) for (_, q), _ in red.items()):
        raise ValueError(f"expected a classical cohomology element, got {e}")
    return red


# quantum products from invariants


def _reconstruct(k: int, factors: Sequence[CohomologyElement], include_zero: bool) -> QuantumElement:
    kappa = 2 * k
    result = QuantumElement()
    for t, t_dual in zip(BASIS, dual_basis(kappa)):
        for cls in enumerate_contributing(k, factors, t, include_zero=include_zero):
            phi = invariant(k, cls, factors, t)
            if phi:
                result = result + phi * Q(cls.r, cls.s) * t_dual
    return result


def small_quantum_product(k: int, a: CohomologyElement, b: CohomologyElement) -> QuantumElement:
    """a * b from three-point invariants, in the classical basis."""
    _check_k(k)
    a, b = _classical_part(2 * k, a), _classical_part(2 * k, b)
    out = classical_product(2 * k, a, b) + _reconstruct(k, [a, b], include_zero=False)
    return out.require_integral("small quantum product")


def m_fold_quantum_product(k: int, factors: Sequence[CohomologyElement]) -> QuantumElement:
    """Product of all factors from (m+1)-point fixed cross-ratio invariants."""
    _check_k(k)
    if len(factors) < 2:
        raise ValueError("need at least two factors")
    factors = [_classical_part(2 * k, f) for f in factors]
    return _reconstruct(k, factors, include_zero=True).require_integral("quantum product")


@lru_cache(maxsize=None)
def star_point_correction(k: int) -> QuantumElement:
    """Z1 * Z4 - [Z1Z4], a pure q-polynomial (k q1 q2^k)."""
    delta = small_quantum_product(k, Z(1), Z(4)) - POINT
    if any(z != (0, 0, 0, 0) for (z, _), _ in delta.items()):
        raise ArithmeticError(f"Z1*Z4 correction is not a pure q-term: {delta}")
    return delta


def _check_basis(e: QuantumElement) -> None:
    bad = [z for (z, _), _ in e.items() if z not in _BASIS_KEYS]
    if bad:
        raise ValueError(f"element is not a combination of 1, Z1, Z4, Z1Z4: {e}")


def star_to_classical(k: int, e: QuantumElement) -> QuantumElement:
    _check_basis(e)
    delta = star_point_correction(k)
    extra = QuantumElement()
    for (z, q), c in e.items():
        if z == (1, 0, 0, 1):
            extra = extra + QuantumElement.monomial((0, 0, 0, 0), q, c) * delta
    return e + extra


def classical_to_star(k: int, e: QuantumElement) -> QuantumElement:
    _check_basis(e)
    delta = star_point_correction(k)
    extra = QuantumElement()
    for (z, q), c in e.items():
        if z == (1, 0, 0, 1):
            extra = extra - QuantumElement.monomial((0, 0, 0, 0), q, c) * delta
    return e + extra


# presentations


@lru_cache(maxsize=None)
def qh_presentation(k: int) -> Presentation:
    """QH^*(F_2k) with relations Z1^2 - q1 q2^k and (Z4 - k Z1)^2 - q2."""
    _check_k(k)
    relations = [Z(1) ** 2 - Q(1, k), (Z(4) - k * Z(1)) ** 2 - Q(0, 1)]
    return complete_relations(
        relations,
        linear_substitutions=linear_substitutions(2 * k),
        name=f"QH*(F{2 * k})",
        notes=(
            "computed relation Z1^2 - q1*q2^k; the printed form has q2^-k, "
            "which disagrees with the three-point invariants",
        ),
    )


def printed_qh_relations(k: int) -> list[QuantumElement]:
    """The relations as printed in the literature (q2 exponent -k); documentation only."""
    return [Z(1) ** 2 - Q(1, -k), (Z(4) - k * Z(1)) ** 2 - Q(0, 1)]


def batyrev_relations(kappa: int) -> list[QuantumElement]:
    """Monomial relations prod Z_i^{l_i} - q^l over the Hilbert basis, before elimination."""
    even_kappa(kappa)
    rels = []
    for cls in nonnegative_hilbert_basis(kappa):
        mono = QuantumElement.monomial(ray_coordinates(kappa, cls))
        rels.append(mono - Q(cls.r, cls.s))
    return rels


@lru_cache(maxsize=None)
def batyrev_presentation(kappa: int) -> Presentation:
    even_kappa(kappa)
    return complete_relations(
        batyrev_relations(kappa),
        linear_substitutions=linear_substitutions(kappa),
        name=f"Bat*(F{kappa})",
    )


def batyrev_product(kappa: int, factors: Sequence[CohomologyElement]) -> QuantumElement:
    p = batyrev_presentation(kappa)
    return p.normal_form(fold(mul, factors, ONE)).require_integral("Batyrev product")


def qh_normal_form(k: int, factors: Sequence[CohomologyElement]) -> QuantumElement:
    """Iterated star product as a normal form in the QH presentation."""
    p = qh_presentation(k)
    return p.normal_form(fold(mul, factors, ONE)).require_integral("QH normal form")


def presentation_for(ring: str, kappa: int) -> Presentation:
    if ring == "classical":
        return classical_presentation(kappa)
    if ring == "qh":
        return qh_presentation(even_kappa(kappa))
    if ring == "batyrev":
        return batyrev_presentation(kappa)
    raise ValueError(f"unknown ring {ring!r}")


# comparison


@dataclass(frozen=True)
class ProductReport:
    k: int
    factors: tuple[CohomologyElement, ...]
    qh_classical_basis: QuantumElement
    qh_normal_form: QuantumElement
    batyrev_result: QuantumElement
    discrepancy: QuantumElement
    nodal_attribution: tuple[tuple[CurveClass, QuantumElement], ...]
    batyrev_included: bool


def restrict_to_nonnegative(kappa: int, e: QuantumElement) -> QuantumElement:
    """Keep the terms whose q-monomial is a class with non-negative ray coordinates."""
    return e.filter(lambda key: is_nonnegative(kappa, CurveClass(*key[1])))


def attribute_by_class(e: QuantumElement) -> tuple[tuple[CurveClass, QuantumElement], ...]:
    groups: dict[CurveClass, QuantumElement] = {}
    for (z, q), c in e.items():
        cls = CurveClass(*q)
        groups[cls] = groups.get(cls, QuantumElement()) + QuantumElement.monomial(z, (0, 0), c)
    return tuple(sorted(groups.items(), key=lambda kv: (kv[0].r, kv[0].s)))


def compare_rings(k: int, factors: Sequence[CohomologyElement]) -> ProductReport:
    _check_k(k)
    kappa = 2 * k
    factors = tuple(factors)
    if len(factors) == 2:
        qh = small_quantum_product(k, *factors)
    else:
        qh = m_fold_quantum_product(k, factors)
    nf = qh_normal_form(k, factors)
    if star_to_classical(k, nf) != qh:
        raise ArithmeticError(
            f"invariant route {qh} and presentation route {star_to_classical(k, nf)} disagree"
        )
    bat = batyrev_product(kappa, factors)
    disc = qh - bat
    included = restrict_to_nonnegative(kappa, qh) == bat
    return ProductReport(k, factors, qh, nf, bat, disc, attribute_by_class(disc), included)


# smoothness obstruction


@dataclass(frozen=True)
class Obstruction:
    ray: int
    coordinate: int
    divisor_class: CurveClass

    def explain(self) -> str:
        return (
            f"intersection with Z{self.ray} is {self.coordinate} < 0, so a smooth "
            f"curve would lie inside Z{self.ray}, whose curves have classes that are "
            f"multiples of {self.divisor_class}"
        )


def _is_multiple(c: CurveClass, d: CurveClass) -> bool:
    if c.r * d.s != c.s * d.r:
        return False
    return c.r * d.r + c.s * d.s > 0


def irreducibility_obstruction(kappa: int, c: CurveClass) -> Obstruction | None:
    """Witness that class ``c`` has no smooth irreducible representative, if one exists."""
    coords = ray_coordinates(kappa, c)
    for i, x in enumerate(coords, start=1):
        if x < 0:
            d = divisor_curve_class(kappa, i)
            if not _is_multiple(c, d):
                return Obstruction(i, x, d)
    return None


def closed_form_z3z4(k: int) -> QuantumElement:
    return Q(0, 1) - k * k * Q(1, k)


def closed_form_z1z2z4(k: int) -> QuantumElement:
    out = QuantumElement()
    for r in range(1, k + 1):
        out = out + comb(2 * k, 2 * r - 1) * k ** (2 * r - 1) * Q(r, (k - 1) * (r + 1) + 1) * POINT
    for r in range(1, k + 2):
        out = out + comb(2 * k, 2 * r - 2) * k ** (2 * r - 2) * Q(r, (k - 1) * (r + 1) + 2)
    return out

