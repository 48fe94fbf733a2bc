"""Ramsey computations on randomly perturbed dense graphs.

Exact rational density parameters, exact edge/vertex arrowing deciders with
verified witnesses, executable adversarial colourings and dependent random
choice, seeded random-graph generation, and a Monte Carlo threshold harness.
"""

__version__ = "0.1.0"

from .graphcore import (  # noqa: F401
    ContractViolation,
    Graph,
    PerturbedGraph,
    VertexSet,
    common_neighborhood,
    contains_clique,
    enumerate_cliques,
    first_clique_within,
    induced,
    is_gamma_dense,
    iter_cliques,
    read_graph,
    union,
    write_graph,
)
from .densities import d2, d2_asym, m2, m2_asym, m2_clique_closed_form, rho  # noqa: F401
from .generators import (  # noqa: F401
    complete_bipartite,
    derive_seed,
    expected_clique_count,
    gnp,
    perturbed,
)
from .arrowing import (  # noqa: F401
    ARROWS,
    BLUE,
    NOT_ARROWS,
    RED,
    UNKNOWN,
    ArrowVerdict,
    Budget,
    EdgeColoring,
    VerificationError,
    VertexColoring,
    arrows_edge,
    arrows_vertex,
    export_cnf,
    find_mono_clique,
)
from .constructions import (  # noqa: F401
    BudgetExhausted,
    DrcParams,
    PreconditionFailed,
    Success,
    check_no_dense_small_subgraph,
    drc_condition,
    drc_extract,
    drc_params,
    extend_bipartite_coloring,
    k4_adversarial_coloring,
    mono_clique_via_drc,
    within_class_graph,
)
from .experiments import (  # noqa: F401
    ExperimentConfig,
    EstimateResult,
    SweepResult,
    estimate_arrow_probability,
    fit_exponent,
    sweep_threshold,
)
