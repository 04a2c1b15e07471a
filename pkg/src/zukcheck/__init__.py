"""Exact check of Zuk's spectral criterion lambda_1(G(S)) > 1/2."""

from .criterion import Verdict, evaluate
from .errors import InconsistencyError, InputError, KernelUndefinedError, ZukError
from .graph import LinkGraph, build_link_graph, build_listed_graph, connected_components, from_edge_list, walk_data
from .groups import GeneratingSet, GroupDescriptor, GroupElement, make_generating_set
from .spectral import SpectralReport, analyze, exact_spectrum, full_report, laplacian_matrix, numeric_spectrum

__all__ = [
    "GeneratingSet",
    "GroupDescriptor",
    "GroupElement",
    "InconsistencyError",
    "InputError",
    "KernelUndefinedError",
    "LinkGraph",
    "SpectralReport",
    "Verdict",
    "ZukError",
    "analyze",
    "build_link_graph",
    "build_listed_graph",
    "connected_components",
    "evaluate",
    "exact_spectrum",
    "from_edge_list",
    "full_report",
    "laplacian_matrix",
    "make_generating_set",
    "numeric_spectrum",
    "walk_data",
]
__version__ = "0.1.0"
