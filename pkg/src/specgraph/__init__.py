"""Main and plain eigenvalues, refined spectra and strong graphs."""

from .graph import (
    FamilySpec, Graph, build_family, complement, compose, connected_components, delete_vertex,
    encode_graph6, parse_graph6, seidel_switch, valency_partition,
)
from .spectral import (
    RefinedSpectrum, eigendecompose, main_count_exact, refined_spectrum, seidel_spectrum,
)

__all__ = [
    "FamilySpec", "Graph", "RefinedSpectrum", "build_family", "complement", "compose",
    "connected_components", "delete_vertex", "eigendecompose", "encode_graph6",
    "main_count_exact", "parse_graph6", "refined_spectrum", "seidel_spectrum",
    "seidel_switch", "valency_partition",
]
