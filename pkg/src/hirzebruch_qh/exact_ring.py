"""Exact sparse polynomials in Z1..Z4 with Laurent monomials in q1, q2.

Elements are immutable. A term is keyed by a pair ``(z, q)`` where ``z`` is a
4-tuple of non-negative exponents of Z1..Z4 and ``q`` a 2-tuple of (possibly
negative) exponents of q1, q2. Coefficients are ``Fraction``.

The module also carries the quotient-ring machinery: a fixed block term order
(graded reverse lexicographic on Z4 > Z1 > Z3 > Z2, then graded reverse
lexicographic on q1 > q2 in a lower block), Buchberger completion of relation
sets, and normal forms.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Union

ZExp = tuple[int, int, int, int]
QExp = tuple[int, int]
Key = tuple[ZExp, QExp]
Scalar = Union[int, Fraction]

ZERO_Z: ZExp = (0, 0, 0, 0)
ZERO_Q: QExp = (0, 0)

# Z-variables from largest to smallest, as 0-based positions into ZExp.
Z_ORDER = (3, 0, 2, 1)
ORDER_ID = "grevlex(Z4>Z1>Z3>Z2);grevlex(q1>q2)"


class IntegralityError(ArithmeticError):
    """A user-facing result carried a non-integer coefficient."""


class CompletionError(ValueError):
    """A relation set cannot be completed under the fixed term order."""


def _grevlex_key(exps: tuple[int, ...]) -> tuple:
    return (sum(exps), tuple(-e for e in reversed(exps)))


def z_key(z: ZExp) -> tuple:
    return _grevlex_key(tuple(z[i] for i in Z_ORDER))


def q_key(q: QExp) -> tuple:
    return _grevlex_key(q)


def term_key(key: Key) -> tuple:
    """Sort key of the block order; larger means larger monomial."""
    return (z_key(key[0]), q_key(key[1]))


def render_key(key: Key) -> tuple:
    # Z-part descending, q-part ascending (lowest quantum corrections first).
    zk = z_key(key[0])
    qk = q_key(key[1])
    return (_neg(zk), qk)


def _neg(k):
    if isinstance(k, tuple):
        return tuple(_neg(x) for x in k)
    return -k


class QuantumElement:
    """Finite sum of ``coeff * Z^z * q^q`` with exact rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Key, Scalar] | Iterable[tuple[Key, Scalar]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Key, Fraction] = {}
        for (z, q), c in items:
            z = tuple(int(e) for e in z)
            q = tuple(int(e) for e in q)
            if len(z) != 4 or len(q) != 2:
                raise ValueError(f"bad term key {(z, q)!r}")
            if any(e < 0 for e in z):
                raise ValueError(f"negative Z exponent in {z!r}")
            acc[(z, q)] = acc.get((z, q), Fraction(0)) + Fraction(c)
        self._terms = {k: v for k, v in acc.items() if v != 0}
        self._hash = None

    # construction helpers

    @classmethod
    def const(cls, c: Scalar = 1) -> "QuantumElement":
        return cls({(ZERO_Z, ZERO_Q): c})

    @classmethod
    def z(cls, i: int, power: int = 1) -> "QuantumElement":
        """The divisor variable Z_i, i in 1..4."""
        if i not in (1, 2, 3, 4):
            raise ValueError(f"divisor index must be 1..4, got {i}")
        exps = [0, 0, 0, 0]
        exps[i - 1] = power
        return cls({(tuple(exps), ZERO_Q): 1})

    @classmethod
    def q(cls, a: int, b: int, c: Scalar = 1) -> "QuantumElement":
        return cls({(ZERO_Z, (a, b)): c})

    @classmethod
    def monomial(cls, z: ZExp, q: QExp = ZERO_Q, c: Scalar = 1) -> "QuantumElement":
        return cls({(tuple(z), tuple(q)): c})

    # container protocol

    @property
    def terms(self) -> dict[Key, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Key, Fraction]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, z: ZExp = ZERO_Z, q: QExp = ZERO_Q) -> Fraction:
        return self._terms.get((tuple(z), tuple(q)), Fraction(0))

    def sorted_terms(self) -> list[tuple[Key, Fraction]]:
        """Terms in canonical rendering order."""
        return sorted(self._terms.items(), key=lambda kv: render_key(kv[0]))

    # arithmetic

    @staticmethod
    def _coerce(other) -> "QuantumElement":
        if isinstance(other, QuantumElement):
            return other
        if isinstance(other, (int, Fraction)):
            return QuantumElement.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for k, v in other._terms.items():
            acc[k] = acc.get(k, Fraction(0)) + v
        return QuantumElement(acc)

    __radd__ = __add__

    def __neg__(self):
        return QuantumElement({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[Key, Fraction] = {}
        for (z1, q1), c1 in self._terms.items():
            for (z2, q2), c2 in other._terms.items():
                key = (_add(z1, z2), _add(q1, q2))
                acc[key] = acc.get(key, Fraction(0)) + c1 * c2
        return QuantumElement(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = QuantumElement.const(1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QuantumElement.const(other)
        if not isinstance(other, QuantumElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"QuantumElement({render(self)!r})"

    def __str__(self):
        return render(self)

    # structural operations

    def map_terms(self, fn: Callable[[Key, Fraction], "QuantumElement | None"]) -> "QuantumElement":
        out = QuantumElement()
        for k, c in self._terms.items():
            part = fn(k, c)
            if part is not None:
                out = out + part
        return out

    def filter(self, pred: Callable[[Key], bool]) -> "QuantumElement":
        return QuantumElement({k: c for k, c in self._terms.items() if pred(k)})

    def substitute(self, images: Mapping[int, "QuantumElement"]) -> "QuantumElement":
        """Ring homomorphism replacing Z_i (1-based) by ``images[i]``."""
        powers: dict[tuple[int, int], QuantumElement] = {}

        def power(i: int, e: int) -> QuantumElement:
            if (i, e) not in powers:
                powers[(i, e)] = images[i] ** e
            return powers[(i, e)]

        acc = QuantumElement()
        for (z, q), c in self._terms.items():
            kept = list(z)
            term = QuantumElement.monomial(ZERO_Z, q, c)
            for i in images:
                e = z[i - 1]
                if e:
                    kept[i - 1] = 0
                    term = term * power(i, e)
            acc = acc + term * QuantumElement.monomial(tuple(kept))
        return acc

    def classical_limit(self) -> "QuantumElement":
        """Set q1 = q2 = 0."""
        return self.filter(lambda k: k[1] == ZERO_Q)

    def z_degree(self) -> int | None:
        degs = {sum(z) for z, _ in self._terms}
        return degs.pop() if len(degs) == 1 else None

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    def require_integral(self, what: str = "result") -> "QuantumElement":
        if not self.is_integral():
            raise IntegralityError(f"{what} has non-integer coefficients: {render(self)}")
        return self

    def has_laurent(self) -> bool:
        return any(e < 0 for _, q in self._terms for e in q)

    def leading(self) -> tuple[Key, Fraction]:
        if not self._terms:
            raise ValueError("zero element has no leading term")
        k = max(self._terms, key=term_key)
        return k, self._terms[k]

    # serialization

    def to_json_terms(self) -> list[dict]:
        out = []
        for (z, q), c in self.sorted_terms():
            coeff: int | str = c.numerator if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
            out.append({"coeff": coeff, "z": list(z), "q": list(q)})
        return out

    @classmethod
    def from_json_terms(cls, terms: list[dict]) -> "QuantumElement":
        return cls(((tuple(t["z"]), tuple(t["q"])), Fraction(t["coeff"])) for t in terms)

    def dumps(self) -> str:
        return json.dumps(self.to_json_terms(), separators=(",", ":"))

    @classmethod
    def loads(cls, text: str) -> "QuantumElement":
        return cls.from_json_terms(json.loads(text))


CohomologyElement = QuantumElement

ONE = QuantumElement.const(1)


def Z(i: int, power: int = 1) -> QuantumElement:
    return QuantumElement.z(i, power)


def Q(a: int, b: int) -> QuantumElement:
    return QuantumElement.q(a, b)


def _add(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def poly_arith(a: QuantumElement, b: QuantumElement, op: str) -> QuantumElement:
    if op == "add":
        return a + b
    if op == "multiply":
        return a * b
    raise ValueError(f"unknown op {op!r}")


# rendering


def _render_monomial(z: ZExp, q: QExp) -> list[str]:
    parts = []
    for name, e in (("q1", q[0]), ("q2", q[1])):
        if e == 1:
            parts.append(name)
        elif e != 0:
            parts.append(f"{name}^{e}")
    for i, e in enumerate(z):
        if e == 1:
            parts.append(f"Z{i + 1}")
        elif e:
            parts.append(f"Z{i + 1}^{e}")
    return parts


def _render_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render(e: QuantumElement) -> str:
    """Canonical one-line text rendering (golden-file format)."""
    if e.is_zero():
        return "0"
    pieces = []
    for i, ((z, q), c) in enumerate(e.sorted_terms()):
        mono = _render_monomial(z, q)
        mag = abs(c)
        if mono and mag == 1:
            body = "*".join(mono)
        else:
            body = "*".join([_render_coeff(mag)] + mono)
        if i == 0:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append((" - " if c < 0 else " + ") + body)
    return "".join(pieces)


# quotient rings


def _divides(a: Key, b: Key) -> bool:
    return all(x <= y for x, y in zip(a[0], b[0])) and all(x <= y for x, y in zip(a[1], b[1]))


def _lcm(a: Key, b: Key) -> Key:
    return (tuple(map(max, a[0], b[0])), tuple(map(max, a[1], b[1])))


def _monic(p: QuantumElement) -> QuantumElement:
    _, c = p.leading()
    return p * (1 / c)


@dataclass(frozen=True)
class Rule:
    """Rewrite ``lead -> tail``; ``poly = lead - tail`` is monic."""

    lead: Key
    tail: QuantumElement

    @property
    def poly(self) -> QuantumElement:
        return QuantumElement.monomial(*self.lead) - self.tail

    def __str__(self):
        return f"{render(QuantumElement.monomial(*self.lead))} -> {render(self.tail)}"


def _rule(p: QuantumElement) -> Rule:
    p = _monic(p)
    lead, _ = p.leading()
    return Rule(lead, QuantumElement.monomial(*lead) - p)


def reduce(e: QuantumElement, rules: Iterable[Rule]) -> QuantumElement:
    """Full reduction of every term of ``e`` by ``rules``."""
    rules = tuple(rules)
    result: dict[Key, Fraction] = {}
    work = dict(e.terms)
    while work:
        k = max(work, key=term_key)
        c = work.pop(k)
        for rule in rules:
            if _divides(rule.lead, k):
                shift = (_sub(k[0], rule.lead[0]), _sub(k[1], rule.lead[1]))
                for (tz, tq), tc in rule.tail.items():
                    nk = (_add(tz, shift[0]), _add(tq, shift[1]))
                    v = work.get(nk, Fraction(0)) + c * tc
                    if v:
                        work[nk] = v
                    else:
                        work.pop(nk, None)
                break
        else:
            result[k] = c
    return QuantumElement(result)


def s_polynomial(f: QuantumElement, g: QuantumElement) -> QuantumElement:
    (lf, cf), (lg, cg) = f.leading(), g.leading()
    l = _lcm(lf, lg)
    mf = QuantumElement.monomial(_sub(l[0], lf[0]), _sub(l[1], lf[1]), 1 / cf)
    mg = QuantumElement.monomial(_sub(l[0], lg[0]), _sub(l[1], lg[1]), 1 / cg)
    return mf * f - mg * g


def _coprime(a: Key, b: Key) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a[0] + a[1], b[0] + b[1]))


def buchberger(relations: Iterable[QuantumElement]) -> list[Rule]:
    """Reduced Groebner basis of the ideal, as rewrite rules."""
    basis: list[QuantumElement] = []
    for p in relations:
        if p.is_zero():
            continue
        if p.has_laurent():
            raise CompletionError(f"relation with negative q exponents cannot be completed: {render(p)}")
        basis.append(_monic(p))
    pairs = list(itertools.combinations(range(len(basis)), 2))
    while pairs:
        i, j = pairs.pop(0)
        if _coprime(basis[i].leading()[0], basis[j].leading()[0]):
            continue
        h = reduce(s_polynomial(basis[i], basis[j]), [_rule(b) for b in basis])
        if not h.is_zero():
            basis.append(_monic(h))
            n = len(basis) - 1
            pairs.extend((m, n) for m in range(n))
    # minimal basis
    basis.sort(key=lambda p: term_key(p.leading()[0]))
    minimal: list[QuantumElement] = []
    for p in basis:
        lp = p.leading()[0]
        if not any(_divides(m.leading()[0], lp) for m in minimal):
            minimal.append(p)
    # inter-reduce tails
    rules: list[Rule] = []
    for idx, p in enumerate(minimal):
        others = [_rule(m) for j, m in enumerate(minimal) if j != idx]
        lead = p.leading()[0]
        tail = reduce(QuantumElement.monomial(*lead) - p, others)
        rules.append(Rule(lead, tail))
    for rule in rules:
        if rule.lead[0] == ZERO_Z:
            raise CompletionError(
                f"relations force a pure q-monomial relation {render(rule.poly)}; "
                "the Novikov parameters would not be free"
            )
    rules.sort(key=lambda r: term_key(r.lead))
    return rules


@dataclass(frozen=True)
class Presentation:
    """Quotient of the Z/q polynomial ring by a completed relation set."""

    name: str
    active_variables: tuple[int, ...]
    linear_substitutions: Mapping[int, QuantumElement]
    relations: tuple[QuantumElement, ...]
    completed_rules: tuple[Rule, ...]
    term_order: str = ORDER_ID
    notes: tuple[str, ...] = field(default=())

    def eliminate(self, e: QuantumElement) -> QuantumElement:
        return e.substitute(self.linear_substitutions) if self.linear_substitutions else e

    def normal_form(self, e: QuantumElement) -> QuantumElement:
        return reduce(self.eliminate(e), self.completed_rules)

    def is_confluent(self) -> bool:
        polys = [r.poly for r in self.completed_rules]
        for f, g in itertools.combinations(polys, 2):
            if not reduce(s_polynomial(f, g), self.completed_rules).is_zero():
                return False
        return True

    def contains(self, e: QuantumElement) -> bool:
        return self.normal_form(e).is_zero()


def complete_relations(
    relations: Iterable[QuantumElement],
    term_order: str = ORDER_ID,
    *,
    linear_substitutions: Mapping[int, QuantumElement] | None = None,
    name: str = "quotient",
    notes: tuple[str, ...] = (),
) -> Presentation:
    """Complete ``relations`` to a confluent rewrite system.

    Eliminated variables (keys of ``linear_substitutions``) are substituted
    out of every relation first; the remaining variables are active.
    """
    if term_order != ORDER_ID:
        raise ValueError(f"only the fixed order {ORDER_ID} is supported")
    subs = dict(linear_substitutions or {})
    rels = tuple(r.substitute(subs) if subs else r for r in relations)
    rules = tuple(buchberger(rels))
    active = tuple(i for i in (1, 2, 3, 4) if i not in subs)
    return Presentation(name, active, subs, rels, rules, term_order, notes)


def normal_form(p: Presentation, e: QuantumElement) -> QuantumElement:
    return p.normal_form(e)
