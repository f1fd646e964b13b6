"""Genus-0 Gromov-Witten invariants of F_0 = P^1 x P^1 and of F_2k.

Every invariant carries the fixed cross-ratio constraint: the point class of
the Deligne-Mumford space of the marked curve is pulled back and inserted.
For three marked points this constraint is empty.

F_0 cohomology is written in the classes Z1 = H x 1 and Z4 = 1 x H, so a
curve class (a, b) on F_0 has degree a on the first factor and b on the
second. F_2k invariants are obtained by transfer to F_0.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence, Union

from .exact_ring import ONE, CohomologyElement, Z
from .hirzebruch_toric import CurveClass, classical_reduce, pullback, pushforward_class

Gamma = Union[str, CohomologyElement]

# (H-count on first factor, H-count on second factor) of each F_0 basis monomial.
_TENSOR_SPLIT = {
    (0, 0, 0, 0): (0, 0),
    (1, 0, 0, 0): (1, 0),
    (0, 0, 0, 1): (0, 1),
    (1, 0, 0, 1): (1, 1),
}


def gamma_element(gamma: Gamma) -> CohomologyElement:
    if isinstance(gamma, CohomologyElement):
        return gamma
    if gamma in ("1", 1):
        return ONE
    if gamma == "pt":
        return Z(1) * Z(4)
    raise ValueError(f"gamma must be '1', 'pt' or a cohomology element, got {gamma!r}")


def cp1_invariant(r: int, s: int, m: int) -> int:
    """Invariant of P^1 in degree r with s hyperplane and m - s unit insertions."""
    if m < 3:
        raise ValueError(f"need at least 3 marked points, got m={m}")
    if not 0 <= s <= m:
        raise ValueError(f"hyperplane count s={s} outside 0..{m}")
    return 1 if r >= 0 and s == 2 * r + 1 else 0


def _split(e: CohomologyElement) -> dict[tuple[int, int], int]:
    """Decompose an F_0 class over the tensor basis {1, H} x {1, H}."""
    red = classical_reduce(0, e)
    out = {}
    for (z, q), c in red.items():
        if q != (0, 0):
            raise ValueError(f"insertion carries quantum parameters: {e}")
        if c.denominator != 1:
            raise ValueError(f"insertion must have integer coefficients: {e}")
        out[_TENSOR_SPLIT[z]] = int(c)
    return out


def _h_count_distribution(splits: Iterable[dict[tuple[int, int], int]]) -> dict[tuple[int, int], int]:
    """Weighted counts of (first-factor H's, second-factor H's) over all expansions."""
    dist: dict[tuple[int, int], int] = {(0, 0): 1}
    for sp in splits:
        nxt: dict[tuple[int, int], int] = defaultdict(int)
        for (x, y), w in dist.items():
            for (dx, dy), c in sp.items():
                nxt[(x + dx, y + dy)] += w * c
        dist = {k: v for k, v in nxt.items() if v}
    return dist


def f0_invariant(cls: tuple[int, int] | CurveClass, insertions: Sequence[CohomologyElement], gamma: Gamma) -> int:
    """Invariant of P^1 x P^1 by the product formula, expanded multilinearly."""
    a, b = cls
    classes = [*insertions, gamma_element(gamma)]
    m = len(classes)
    dist = _h_count_distribution(_split(e) for e in classes)
    return sum(
        w * cp1_invariant(a, sx, m) * cp1_invariant(b, sy, m) for (sx, sy), w in dist.items()
    )


@dataclass(frozen=True)
class InvariantQuery:
    k: int
    cls: CurveClass
    insertions: tuple[CohomologyElement, ...]
    gamma: Gamma = "pt"
    gamma_class: CohomologyElement = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.k < 0:
            raise ValueError(f"k must be non-negative, got {self.k}")
        object.__setattr__(self, "insertions", tuple(self.insertions))
        object.__setattr__(self, "cls", CurveClass(*self.cls))
        object.__setattr__(self, "gamma_class", gamma_element(self.gamma))

    @property
    def m(self) -> int:
        return len(self.insertions) + 1


def f2k_invariant(q: InvariantQuery) -> int:
    """Invariant of F_2k, computed on F_0 after transfer of classes."""
    if q.m < 3:
        raise ValueError("need at least two insertions besides gamma")
    pulled = [pullback(q.k, e) for e in q.insertions]
    return f0_invariant(pushforward_class(q.k, q.cls), pulled, pullback(q.k, q.gamma_class))


def invariant(k: int, cls, insertions: Sequence[CohomologyElement], gamma: Gamma = "pt") -> int:
    return f2k_invariant(InvariantQuery(k, CurveClass(*cls), tuple(insertions), gamma))


def enumerate_contributing(
    k: int,
    insertions: Sequence[CohomologyElement],
    gamma: Gamma,
    include_zero: bool = False,
) -> list[CurveClass]:
    """Classes of F_2k whose invariant can be non-zero for these insertions.

    Each factor of F_0 must see exactly 2d+1 hyperplane insertions in degree
    d; the candidate (first, second) counts come from the monomials of the
    transferred insertions. The zero class is skipped unless asked for.
    """
    classes = [*insertions, gamma_element(gamma)]
    reachable: set[tuple[int, int]] = {(0, 0)}
    for e in classes:
        options = {split for split in _split(pullback(k, e))}
        reachable = {(x + dx, y + dy) for x, y in reachable for dx, dy in options}
    found = set()
    for sx, sy in reachable:
        if sx % 2 == 1 and sy % 2 == 1:
            a, b = (sx - 1) // 2, (sy - 1) // 2
            found.add(CurveClass(a, b + k * a))
    if not include_zero:
        found.discard(CurveClass(0, 0))
    return sorted(found)


# closed forms


def _same_multiset(k: int, xs: Sequence[CohomologyElement], ys: Sequence[CohomologyElement]) -> bool:
    kappa = 2 * k
    a = sorted(str(classical_reduce(kappa, x)) for x in xs)
    b = sorted(str(classical_reduce(kappa, y)) for y in ys)
    return a == b


def lemma_shape(q: InvariantQuery) -> str | None:
    """'threept' for (Z3, Z4; gamma), 'gwia' for (Z1, Z2, Z4 x 2k; gamma)."""
    if q.gamma_class not in (ONE, Z(1) * Z(4)):
        return None
    if _same_multiset(q.k, q.insertions, [Z(3), Z(4)]):
        return "threept"
    if _same_multiset(q.k, q.insertions, [Z(1), Z(2)] + [Z(4)] * (2 * q.k)):
        return "gwia"
    return None


def closed_form_invariant(q: InvariantQuery) -> int | None:
    shape = lemma_shape(q)
    if shape is None:
        return None
    k, (r, s) = q.k, q.cls
    point = q.gamma_class != ONE
    if shape == "threept":
        if not point:
            return 0
        if (r, s) == (0, 1):
            return 1
        if (r, s) == (1, k):
            return -k * k
        return 0
    if not point:
        if 1 <= r <= k and s == (k - 1) * (r + 1) + 1:
            return comb(2 * k, 2 * r - 1) * k ** (2 * r - 1)
        return 0
    if 1 <= r <= k + 1 and s == (k - 1) * (r + 1) + 2:
        return comb(2 * k, 2 * r - 2) * k ** (2 * r - 2)
    return 0


def lemma_insertions(lemma: str, k: int) -> tuple[tuple[CohomologyElement, ...], str]:
    """Insertions and gamma of the three tabulated invariant families."""
    if lemma == "threept":
        return (Z(3), Z(4)), "pt"
    if lemma == "gwia1":
        return (Z(1), Z(2), *[Z(4)] * (2 * k)), "1"
    if lemma == "gwia2":
        return (Z(1), Z(2), *[Z(4)] * (2 * k)), "pt"
    raise ValueError(f"unknown lemma {lemma!r}")


def class_window(k: int) -> list[CurveClass]:
    """Classes with r and s - k r in [0, 2k + 3]."""
    n = 2 * k + 3
    return [CurveClass(r, b + k * r) for r in range(n + 1) for b in range(n + 1)]
