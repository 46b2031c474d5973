"""Exact Tutte polynomial computations parameterised by treewidth."""

from tuttewidth.forests import count_forests, curve_y1_restriction
from tuttewidth.general import eval_from_counts, general_dp, tutte_coefficients, tutte_polynomial_string
from tuttewidth.graph import CutOrder, Multigraph, TreeDecomposition, make_nice, path_decomposition
from tuttewidth.reduction import curve_restriction, evaluate_point, insulated_k_thicken, k_stretch, k_thicken
from tuttewidth.special import count_colorings, even_subgraph_poly, tutte_chromatic_point, tutte_on_H2

__all__ = [
    "CutOrder",
    "Multigraph",
    "TreeDecomposition",
    "count_colorings",
    "count_forests",
    "curve_restriction",
    "curve_y1_restriction",
    "eval_from_counts",
    "evaluate_point",
    "even_subgraph_poly",
    "general_dp",
    "insulated_k_thicken",
    "k_stretch",
    "k_thicken",
    "make_nice",
    "path_decomposition",
    "tutte_chromatic_point",
    "tutte_coefficients",
    "tutte_on_H2",
    "tutte_polynomial_string",
]
