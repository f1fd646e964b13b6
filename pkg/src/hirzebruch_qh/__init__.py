"""Exact quantum cohomology and Batyrev rings of even Hirzebruch surfaces."""
from .exact_ring import Q, QuantumElement, Z, render
from .hirzebruch_toric import CurveClass, build_fan
from .gw_engine import InvariantQuery, f2k_invariant
from .quantum_rings import (
    batyrev_product,
    compare_rings,
    m_fold_quantum_product,
    small_quantum_product,
)

__all__ = [
    "Q",
    "QuantumElement",
    "Z",
    "render",
    "CurveClass",
    "build_fan",
    "InvariantQuery",
    "f2k_invariant",
    "batyrev_product",
    "compare_rings",
    "m_fold_quantum_product",
    "small_quantum_product",
]
