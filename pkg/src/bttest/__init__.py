"""bttest: property testing, repair and fitting of stochastic tournaments.

A stochastic tournament assigns every ordered pair of players a win
probability with ``p_xy + p_yx = 1``.  Such a tournament is a Bradley-Terry
model exactly when positive scores ``a`` exist with ``p_xy / p_yx =
a(x) / a(y)``; equivalently, when the associated Markov chain is
reversible; equivalently, when every triangle is balanced.  This package

* represents and generates these tournaments (:mod:`bttest.tournament`),
* measures triangle and cycle balance and discrepancies (:mod:`bttest.balance`),
* decides the property with a constant number of edge queries
  (:mod:`bttest.tester`),
* repairs, scores and fits tournaments with explicit L1 guarantees
  (:mod:`bttest.repair`),
* reads and writes a plain-text edge-list format (:mod:`bttest.fileio`),
  also exposed through the ``bttest`` command line tool (:mod:`bttest.cli`).
"""

from ._version import __version__
from .balance import (
    DirectedCycle,
    Discrepancy,
    TotalDiscrepancy,
    Triangle,
    check_fundamental_cycles,
    cycle_ratio,
    discrepancy,
    enumerate_triangles,
    fundamental_cycles,
    is_balanced,
    is_cycle_balanced,
    is_eps_balanced,
    log_cycle_ratio,
    log_triangle_ratio,
    total_discrepancy,
    triangle_ratio,
)
from .errors import (
    ClampWarning,
    DegenerateCycleError,
    DeskScaleExceededError,
    DimensionMismatchError,
    DuplicatePairError,
    MissingPairError,
    NotASpanningTreeError,
    OutOfRangeProbabilityError,
    ParameterOutOfRangeError,
    ParseError,
    PreconditionFailedError,
    SelfLoopError,
    TooFewVerticesError,
    TournamentError,
    VertexOutOfRangeError,
)
from .fileio import (
    TournamentDocument,
    load_tournament,
    load_tree,
    make_report,
    parse_document,
    parse_tournament,
    parse_tree,
    report_json,
    serialize_tournament,
    serialize_tree,
)
from .repair import (
    DESK_SCALE,
    DistanceBounds,
    RepairReport,
    TreeWeights,
    best_root,
    check_seven_eps,
    extend_tree,
    fit_scores_least_squares,
    l1_distance_oracle,
    min_verification_eps,
    repair,
    repair_with_root,
    scores_from_root,
    scores_to_stationary,
    verify_approx_bt,
)
from .tester import (
    RNG_ALGORITHM,
    TesterConfig,
    TestVerdict,
    estimate_unbalanced_fraction,
    sample_size,
    sample_triangle,
    test_bt,
)
from .tournament import (
    ETA,
    TAU,
    StochasticTournament,
    check_reversible,
    gen_bt,
    gen_cyclic,
    gen_perturbed,
    gen_random,
    markov_matrix,
    new_tournament,
    pair_index,
    set_prob,
)

__all__ = [
    "__version__",
    # tournament
    "ETA",
    "TAU",
    "StochasticTournament",
    "new_tournament",
    "markov_matrix",
    "check_reversible",
    "gen_bt",
    "gen_cyclic",
    "gen_perturbed",
    "gen_random",
    "set_prob",
    "pair_index",
    # balance
    "Triangle",
    "DirectedCycle",
    "Discrepancy",
    "TotalDiscrepancy",
    "triangle_ratio",
    "log_triangle_ratio",
    "is_balanced",
    "is_eps_balanced",
    "discrepancy",
    "total_discrepancy",
    "cycle_ratio",
    "log_cycle_ratio",
    "is_cycle_balanced",
    "enumerate_triangles",
    "fundamental_cycles",
    "check_fundamental_cycles",
    # tester
    "RNG_ALGORITHM",
    "TesterConfig",
    "TestVerdict",
    "sample_size",
    "sample_triangle",
    "test_bt",
    "estimate_unbalanced_fraction",
    # repair
    "DESK_SCALE",
    "RepairReport",
    "TreeWeights",
    "DistanceBounds",
    "repair_with_root",
    "best_root",
    "repair",
    "scores_from_root",
    "verify_approx_bt",
    "scores_to_stationary",
    "check_seven_eps",
    "extend_tree",
    "fit_scores_least_squares",
    "min_verification_eps",
    "l1_distance_oracle",
    # fileio
    "TournamentDocument",
    "parse_document",
    "parse_tournament",
    "serialize_tournament",
    "parse_tree",
    "serialize_tree",
    "load_tournament",
    "load_tree",
    "make_report",
    "report_json",
    # errors
    "TournamentError",
    "SelfLoopError",
    "VertexOutOfRangeError",
    "DuplicatePairError",
    "MissingPairError",
    "OutOfRangeProbabilityError",
    "DimensionMismatchError",
    "DegenerateCycleError",
    "NotASpanningTreeError",
    "TooFewVerticesError",
    "ParameterOutOfRangeError",
    "PreconditionFailedError",
    "DeskScaleExceededError",
    "ParseError",
    "ClampWarning",
]
