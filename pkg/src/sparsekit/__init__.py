"""Algorithmic toolbox for sparse graph classes: generalized coloring
numbers, treedepth, shallow minors, radius-r splitter games, uniform quasi-
wideness, balanced neighborhood separators, sparse neighborhood covers, and a
locality-based evaluator for a small first-order language.

Everything runs at desk scale and emits certificates that independent
validators can re-check.
"""

__version__ = "0.1.0"

from .errors import (AlgorithmStallError, CapabilityError, EdgeListParseError,
                     FormulaParseError, FormulaScopeError, GraphInputError,
                     LocalityError, PreconditionError, SparsekitError,
                     StrategyBugError)
from .graph import (Graph, ball, bfs_distances, components, delete_vertices,
                    distance_profile, eccentricity, induced_subgraph,
                    is_connected, multi_source_ball, power_graph, radius_of,
                    set_radius)
from .graphio import (apex_graph, complete_graph, cycle_graph, emit_json,
                      generate, gnd_graph, graph_from_json, grid_graph,
                      parse_edge_list, path_graph, random_tree, read_dimacs,
                      star_graph, subdivide, to_jsonable, write_edge_list)
from .orders import (EliminationForest, VertexOrder, check_separation,
                     coloring_number, degeneracy_order, greedy_wreach_order,
                     identity_order, treedepth_exact,
                     validate_elimination_forest, wcol_exact, wcol_heuristic,
                     wcol_of_order, wreach_sets)
from .minors import (DensityReport, MinorModel, density_report,
                     find_depth_r_minor, has_shallow_clique,
                     verify_minor_model)
from .games import (ConnectorMove, ExhaustiveConnector, ExhaustiveSplitter,
                    GameConfig, GameRound, GameTranscript, GreedyBallConnector,
                    RandomConnector, UqwBatchSplitter, WcolSplitter,
                    connector_move_violations, game_value, play,
                    splitter_move_violations, uqw_splitter_strategy,
                    validate_transcript, wcol_splitter_strategy)
from .wideness import (Cover, PartitionCover, SeparatorCertificate,
                       UqwCertificate, balanced_separator, neighborhood_cover,
                       partition_cover, uqw_brute, uqw_extract, validate_cover,
                       validate_partition, validate_separator, validate_uqw,
                       wreach_clusters)
from .logic import (BasicLocalSentence, distance_dominating_set,
                    distance_independent_set, dominating_formula,
                    eval_basic_local, eval_naive, expand_basic_local,
                    free_vars, locality_violations, parse_formula,
                    satisfying_set, to_text)
from .rng import Rng
