"""Tutte polynomials through decision-tree activities, classical
activities, the blossoming bijection and forested map series."""

from .graph import GraphError, Multigraph, parse_graph, format_graph, g0, k3, g1
from .poly import BivariatePolynomial, parse_polynomial
from .tutte import tutte, tutte_subgraph_sum, tutte_del_contract, sandpile_recurrent_gf
from .decision import DecisionTree, parse_sexp, random_decision_tree, delta0
from .delta import assign_types, delta_active, tutte_via_delta, interval_partition
from .combmap import CombMap, MapError, parse_map, format_map, m0, enumerate_rooted_maps
from .blossom import BlossomTree, parse_word, theta_open, theta_close

__version__ = "0.1.0"
