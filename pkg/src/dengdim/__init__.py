"""Deng and d-summable Deng information dimensions of complex networks."""

from .boxcover import BoxCovering, auxiliary_graph, box_covering, greedy_color
from .entropy import (EXACT, LEGACY, POW2, EntropyValue, MassAssignment, deng_entropy,
                      mass_from_covering, mass_from_sizes, shannon_entropy)
from .fit import (EntropyProfile, FitResult, ModelComparison, aic, build_profile, compare,
                  fit_deng, fit_dsummable, r2_adj)
from .graph import (Network, bfs_distances, covering_delta, diameter, dump_edge_list,
                    load_edge_list, read_edge_list)
from .synthgen import GenSpec, generate_ba, generate_ws

__version__ = "0.1.0"
