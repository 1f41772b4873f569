"""Coverability for broadcast networks of well-structured processes."""
from .estimators import BoundedExplorer, RBNCoverability, StaticCoverability
from .graphs import (
    LabelledGraph,
    Shape,
    broadcast_step,
    broadcast_successors,
    clique_leq,
    induced_embedding_leq,
    longest_simple_path,
    pointwise_leq,
)
from .modelfile import Model, ModelError, dump_model, load_model, parse_model, parse_target
from .oracle import ExplorationBounds, explore_rbn, explore_static, replay_rbn, replay_static
from .order import CoverResult, Verdict, backward_coverability, minimize
from .process import (
    ActionLabel,
    ProcessConfig,
    ProcessSpec,
    SpecError,
    TransitionRule,
    complete_receives,
    config_leq,
    min_enabling,
    pre_basis,
    pre_basis_labelled,
    process_coverable,
    receive_complete,
)
from .rbn import rbn_coverable, saturate
from .topology import (
    BoundedDiamDeg,
    Clique,
    FixedGraph,
    PathBounded,
    bounded_diam_deg_coverable,
    enumerate_bounded_graphs,
    fixed_graph_coverable,
    graph_pre_basis,
    static_coverable,
)

__version__ = "0.1.0"
