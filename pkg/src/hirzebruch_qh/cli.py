"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 domain error. Errors are written to
stderr as a single line ``error: <kind>: <reason>``.
"""
from __future__ import annotations

import argparse
import json
import sys
from functools import reduce as fold
from operator import mul
from typing import Sequence

from . import gw_engine as gw
from . import hirzebruch_toric as toric
from . import quantum_rings as qr
from .exact_ring import ONE, ORDER_ID, CompletionError, IntegralityError, QuantumElement, Z, render


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


SYMBOLS = {"Z1": Z(1), "Z2": Z(2), "Z3": Z(3), "Z4": Z(4), "pt": Z(1) * Z(4), "1": ONE}


def parse_symbols(text: str) -> tuple[list[str], list[QuantumElement]]:
    """'Z1,Z2,Z4^2' -> names and elements, with ^n meaning n repeated factors."""
    names: list[str] = []
    for tok in (t.strip() for t in text.split(",")):
        base, _, rep = tok.partition("^")
        if base not in SYMBOLS:
            raise UsageError(f"unknown symbol {tok!r}; expected one of {', '.join(SYMBOLS)}")
        try:
            n = int(rep) if rep else 1
        except ValueError:
            raise UsageError(f"bad repetition in {tok!r}") from None
        if n < 1:
            raise UsageError(f"bad repetition in {tok!r}")
        names.extend([base] * n)
    return names, [SYMBOLS[n] for n in names]


def parse_class(text: str) -> toric.CurveClass:
    try:
        r, s = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"class must be 'r,s', got {text!r}") from None
    return toric.CurveClass(r, s)


def _kappa(args) -> int:
    if args.k is not None and args.kappa is not None:
        raise UsageError("give only one of --k and --kappa")
    if args.k is not None:
        return 2 * args.k
    if args.kappa is not None:
        return args.kappa
    raise UsageError("one of --k or --kappa is required")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _element_json(kappa: int, ring: str, e: QuantumElement) -> dict:
    return {"surface": f"F{kappa}", "ring": ring, "order": ORDER_ID, "terms": e.to_json_terms()}


# subcommands


def cmd_fan(args) -> str:
    kappa = _kappa(args)
    fan = toric.build_fan(kappa)
    hb = toric.nonnegative_hilbert_basis(kappa)
    colls = sorted(sorted(c) for c in fan.primitive_collections)
    if args.format == "json":
        return _dump({
            "surface": f"F{kappa}",
            "kappa": kappa,
            "rays": [list(v) for v in fan.rays],
            "primitive_collections": colls,
            "lattice_basis": [list(b) for b in fan.lattice_basis],
            "nonnegative_hilbert_basis": [[c.r, c.s] for c in hb],
        })
    rays = " ".join(f"v{i}=({x},{y})" for i, (x, y) in enumerate(fan.rays, start=1))
    pcs = " ".join("{" + ",".join(f"v{i}" for i in c) + "}" for c in colls)
    basis = " ".join(f"l{i}=({','.join(map(str, b))})" for i, b in enumerate(fan.lattice_basis, start=1))
    return "\n".join([
        f"surface F{kappa}",
        f"rays: {rays}",
        f"primitive collections: {pcs}",
        f"relation basis: {basis}",
        f"nonnegative Hilbert basis: {' '.join(str(c) for c in hb)}",
    ])


def cmd_present(args) -> str:
    kappa = _kappa(args)
    p = qr.presentation_for(args.ring, kappa)
    printed = qr.printed_qh_relations(kappa // 2) if args.paper_variant and args.ring == "qh" else []
    if args.format == "json":
        out = {
            "surface": f"F{kappa}",
            "ring": args.ring,
            "order": ORDER_ID,
            "name": p.name,
            "active_variables": [f"Z{i}" for i in p.active_variables],
            "substitutions": {f"Z{i}": e.to_json_terms() for i, e in sorted(p.linear_substitutions.items())},
            "relations": [r.to_json_terms() for r in p.relations],
            "rules": [
                {"lead": {"z": list(r.lead[0]), "q": list(r.lead[1])}, "tail": r.tail.to_json_terms()}
                for r in p.completed_rules
            ],
        }
        if printed:
            out["printed_relations"] = [r.to_json_terms() for r in printed]
        return _dump(out)
    lines = [f"ring {p.name}", f"order {ORDER_ID}"]
    subs = "; ".join(f"Z{i} = {render(e)}" for i, e in sorted(p.linear_substitutions.items()))
    lines.append(f"substitutions: {subs}")
    lines.append("relations:")
    lines.extend(f"  {render(r)}" for r in p.relations)
    lines.append("rules:")
    lines.extend(f"  {r}" for r in p.completed_rules)
    if args.ring == "qh" and args.paper_variant:
        lines.append("printed relations (documentation only, not used):")
        lines.extend(f"  {render(r)}" for r in printed)
        lines.extend(f"note: {n}" for n in p.notes)
    return "\n".join(lines)


def cmd_invariant(args) -> str:
    if args.k < 0:
        raise qr.DomainError(f"k must be non-negative, got {args.k}")
    names, ins = parse_symbols(args.insertions)
    cls = parse_class(args.cls)
    query = gw.InvariantQuery(args.k, cls, tuple(ins), args.gamma)
    if query.m < 3:
        raise UsageError("need at least two insertions")
    value = gw.f2k_invariant(query)
    closed = gw.closed_form_invariant(query)
    if closed is not None and closed != value:
        raise qr.DomainError(f"engine value {value} disagrees with closed form {closed}")
    if args.format == "json":
        return _dump({
            "surface": f"F{2 * args.k}",
            "k": args.k,
            "class": [cls.r, cls.s],
            "insertions": names,
            "gamma": args.gamma,
            "value": value,
            "closed_form": closed,
        })
    return str(value)


def lemma_table(lemma: str, k: int) -> list[dict]:
    """Non-zero closed-form rows, each checked against the engine over the whole window."""
    ins, gamma = gw.lemma_insertions(lemma, k)
    rows = []
    for cls in gw.class_window(k):
        query = gw.InvariantQuery(k, cls, ins, gamma)
        closed = gw.closed_form_invariant(query)
        engine = gw.f2k_invariant(query)
        if closed != engine:
            raise qr.DomainError(f"{lemma} k={k} class {cls}: closed form {closed} != engine {engine}")
        if closed:
            rows.append({"r": cls.r, "class": [cls.r, cls.s], "value": closed, "engine": engine})
    return sorted(rows, key=lambda row: tuple(row["class"]))


def cmd_table(args) -> str:
    if args.k < 0:
        raise qr.DomainError(f"k must be non-negative, got {args.k}")
    rows = lemma_table(args.lemma, args.k)
    ins, gamma = gw.lemma_insertions(args.lemma, args.k)
    names = ["Z3", "Z4"] if args.lemma == "threept" else ["Z1", "Z2"] + ["Z4"] * (2 * args.k)
    window = 2 * args.k + 3
    if args.format == "json":
        return _dump({
            "surface": f"F{2 * args.k}",
            "lemma": args.lemma,
            "k": args.k,
            "insertions": names,
            "gamma": gamma,
            "window": [0, window],
            "rows": rows,
        })
    lines = [
        f"# lemma={args.lemma} surface=F{2 * args.k} k={args.k} "
        f"insertions={','.join(names)} gamma={gamma} window=r,s-kr in [0,{window}]"
    ]
    for row in rows:
        r, s = row["class"]
        lines.append(f"r={row['r']} class=({r},{s}) value={row['value']} engine={row['engine']}")
    return "\n".join(lines)


def product_value(ring: str, kappa: int, factors: Sequence[QuantumElement]) -> QuantumElement:
    if ring == "classical":
        return toric.classical_reduce(kappa, fold(mul, factors, ONE))
    if ring == "batyrev":
        return qr.batyrev_product(kappa, factors)
    k = qr.even_kappa(kappa)
    if len(factors) < 2:
        raise UsageError("the qh product needs at least two factors")
    if len(factors) == 2:
        return qr.small_quantum_product(k, *factors)
    return qr.m_fold_quantum_product(k, factors)


def cmd_product(args) -> str:
    kappa = _kappa(args)
    if kappa < 0:
        raise qr.DomainError(f"kappa must be non-negative, got {kappa}")
    _, factors = parse_symbols(args.factors)
    value = product_value(args.ring, kappa, factors)
    if args.format == "json":
        return _dump(_element_json(kappa, args.ring, value))
    return render(value)


def cmd_compare(args) -> str:
    kappa = _kappa(args)
    k = qr.even_kappa(kappa)
    names, factors = parse_symbols(args.factors)
    rep = qr.compare_rings(k, factors)
    attribution = []
    for cls, coeff in rep.nodal_attribution:
        ob = qr.irreducibility_obstruction(kappa, cls)
        attribution.append((cls, coeff, ob))
    if args.format == "json":
        return _dump({
            "surface": f"F{kappa}",
            "order": ORDER_ID,
            "factors": names,
            "qh_classical_basis": rep.qh_classical_basis.to_json_terms(),
            "qh_normal_form": rep.qh_normal_form.to_json_terms(),
            "batyrev_result": rep.batyrev_result.to_json_terms(),
            "discrepancy": rep.discrepancy.to_json_terms(),
            "nodal_attribution": [
                {
                    "class": [cls.r, cls.s],
                    "coefficient": coeff.to_json_terms(),
                    "obstruction_ray": ob.ray if ob else None,
                }
                for cls, coeff, ob in attribution
            ],
            "batyrev_included": rep.batyrev_included,
        })
    lines = [
        f"surface F{kappa} (k={k}) factors {','.join(names)}",
        f"order {ORDER_ID}",
        f"quantum product (invariants):   {render(rep.qh_classical_basis)}",
        f"quantum product (presentation): {render(rep.qh_normal_form)}",
        f"batyrev product:                {render(rep.batyrev_result)}",
        f"discrepancy:                    {render(rep.discrepancy)}",
    ]
    for cls, coeff, ob in attribution:
        why = f"not smooth: {ob.explain()}" if ob else "no smoothness obstruction"
        lines.append(f"class {cls}: {render(coeff)} ({why})")
    lines.append(f"batyrev product included in quantum product: {'yes' if rep.batyrev_included else 'no'}")
    return "\n".join(lines)


def cmd_obstruction(args) -> str:
    kappa = _kappa(args)
    if kappa < 0:
        raise qr.DomainError(f"kappa must be non-negative, got {kappa}")
    cls = parse_class(args.cls)
    ob = qr.irreducibility_obstruction(kappa, cls)
    coords = toric.ray_coordinates(kappa, cls)
    if args.format == "json":
        return _dump({
            "surface": f"F{kappa}",
            "class": [cls.r, cls.s],
            "ray_coordinates": list(coords),
            "obstruction": None if ob is None else {
                "ray": ob.ray,
                "coordinate": ob.coordinate,
                "divisor_class": [ob.divisor_class.r, ob.divisor_class.s],
            },
        })
    head = f"class {cls} on F{kappa}: ray coordinates ({','.join(map(str, coords))})"
    if ob is None:
        return f"{head}\nno obstruction"
    return f"{head}\n{ob.explain()}"


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hirzebruch", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def surface_opts(p, required_k=False):
        if required_k:
            p.add_argument("--k", type=int, required=True, help="surface F_2k")
        else:
            p.add_argument("--k", type=int, help="surface F_2k")
            p.add_argument("--kappa", type=int, help="surface F_kappa")
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("fan", help="fan, relation lattice and Hilbert basis")
    surface_opts(p)
    p.set_defaults(func=cmd_fan)

    p = sub.add_parser("present", help="ring presentation and completed rewrite rules")
    surface_opts(p)
    p.add_argument("--ring", choices=("classical", "qh", "batyrev"), required=True)
    p.add_argument("--paper-variant", action="store_true",
                   help="also echo the printed QH relations with q2^-k (not used for computation)")
    p.set_defaults(func=cmd_present)

    p = sub.add_parser("invariant", help="one Gromov-Witten invariant of F_2k")
    surface_opts(p, required_k=True)
    p.add_argument("--class", dest="cls", required=True, help="r,s")
    p.add_argument("--insertions", required=True, help="e.g. Z3,Z4 or Z1,Z2,Z4^2")
    p.add_argument("--gamma", choices=("1", "pt"), default="pt")
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("table", help="closed-form invariant table, checked against the engine")
    surface_opts(p, required_k=True)
    p.add_argument("--lemma", choices=("threept", "gwia1", "gwia2"), required=True)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("product", help="product in the classical, quantum or Batyrev ring")
    surface_opts(p)
    p.add_argument("--ring", choices=("classical", "qh", "batyrev"), default="qh")
    p.add_argument("--factors", required=True)
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("compare", help="quantum vs Batyrev product with nodal attribution")
    surface_opts(p)
    p.add_argument("--factors", required=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("obstruction", help="why a class has no smooth representative")
    surface_opts(p)
    p.add_argument("--class", dest="cls", required=True, help="r,s")
    p.set_defaults(func=cmd_obstruction)
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        text = args.func(args)
    except UsageError as exc:
        err.write(f"error: usage: {exc}\n")
        return 1
    except (qr.DomainError, IntegralityError, CompletionError, ValueError, ArithmeticError) as exc:
        err.write(f"error: domain: {exc}\n")
        return 2
    out.write(text + "\n")
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
