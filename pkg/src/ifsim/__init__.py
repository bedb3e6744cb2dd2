"""ifsim — simulation distances between broadcast interface automata.

Boolean alternating refinement, error-model-weighted simulation games,
exact mean-payoff and discounted game values, interface composition with
compatibility pruning, and input/output abstraction.
"""

from .abstraction import EXISTS_FORALL, FORALL_EXISTS, Partition, abstract, \
    singleton_partition
from .automata import BIA, INPUT, OUTPUT, Transition, WeightedAutomaton, \
    load_automaton, validate_bia, validate_weighted
from .composition import CompositionReport, composable, compose, product
from .errormodel import ErrorModel, apply_error_model, identity_model, \
    unit_interchange_model, validate_error_model
from .errors import AlphabetPreconditionError, IfsimError, IncompatibleError, \
    ModelValidationError, NotAPartitionError, NotComposableError, \
    TooLargeError, UnknownCheatTargetError, ValidationIssue
from .game import GameGraph, build_boolean_game, build_quantitative_game, \
    export_dot, maximal_simulation_relation
from .solvers import DistanceResult, RefinementResult, brute_force_value, \
    discounted_value, distance, mean_payoff_value, refines, \
    solve_reachability

__version__ = "0.1.0"

__all__ = [
    "BIA", "WeightedAutomaton", "Transition", "INPUT", "OUTPUT",
    "load_automaton", "validate_bia", "validate_weighted",
    "ErrorModel", "identity_model", "unit_interchange_model",
    "validate_error_model", "apply_error_model",
    "composable", "product", "compose", "CompositionReport",
    "Partition", "singleton_partition", "abstract",
    "FORALL_EXISTS", "EXISTS_FORALL",
    "GameGraph", "build_boolean_game", "build_quantitative_game",
    "maximal_simulation_relation", "export_dot",
    "refines", "RefinementResult", "distance", "DistanceResult",
    "mean_payoff_value", "discounted_value", "brute_force_value",
    "solve_reachability",
    "IfsimError", "ValidationIssue", "ModelValidationError",
    "UnknownCheatTargetError", "NotComposableError", "IncompatibleError",
    "AlphabetPreconditionError", "NotAPartitionError", "TooLargeError",
]
