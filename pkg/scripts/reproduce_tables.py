"""Print the invariant tables and ring comparisons for F_2, F_4, F_6.

Usage: python3 scripts/reproduce_tables.py [--kmax 3]
"""
import argparse

from hirzebruch_qh.exact_ring import Z
from hirzebruch_qh.gw_engine import InvariantQuery, class_window, closed_form_invariant, f2k_invariant, lemma_insertions
from hirzebruch_qh.quantum_rings import closed_form_z1z2z4, compare_rings, m_fold_quantum_product


def tables(k: int) -> None:
    for lemma in ("threept", "gwia1", "gwia2"):
        ins, gamma = lemma_insertions(lemma, k)
        print(f"  {lemma}:")
        for cls in class_window(k):
            q = InvariantQuery(k, cls, ins, gamma)
            value = f2k_invariant(q)
            if value:
                print(f"    class ({cls.r},{cls.s}): engine={value} closed={closed_form_invariant(q)}")


def comparisons(k: int) -> None:
    for factors in ([Z(3), Z(4)], [Z(1), Z(2)] + [Z(4)] * (2 * k)):
        rep = compare_rings(k, factors)
        print(f"  product {'*'.join(map(str, factors))}:")
        print(f"    QH (classical basis): {rep.qh_classical_basis}")
        print(f"    Batyrev:              {rep.batyrev_result}")
        print(f"    discrepancy:          {rep.discrepancy}")
        print(f"    Batyrev included:     {rep.batyrev_included}")
    if k <= 2:
        factors = [Z(1), Z(2)] + [Z(4)] * (2 * k)
        ok = m_fold_quantum_product(k, factors) == closed_form_z1z2z4(k)
        print(f"  m-fold product equals binomial sums: {ok}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kmax", type=int, default=3)
    args = ap.parse_args()
    for k in range(1, args.kmax + 1):
        print(f"F_{2 * k} (k={k})")
        tables(k)
        comparisons(k)


if __name__ == "__main__":
    main()
