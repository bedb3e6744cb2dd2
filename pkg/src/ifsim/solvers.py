"""Game solving and the top-level refinement / distance entry points."""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .automata import BIA
from .errormodel import ErrorModel
from .errors import AlphabetPreconditionError, TooLargeError
from .game import (ERR_STATE, GameGraph, build_boolean_game,
                   build_quantitative_game, maximal_simulation_relation)
from .meanpayoff import MeanPayoffResult, mean_payoff_value

__all__ = [
    "solve_reachability", "refines", "RefinementResult",
    "distance", "DistanceResult", "discounted_value", "DiscountedResult",
    "mean_payoff_value", "brute_force_value",
]


def _edge_key(game: GameGraph):
    def key(e):
        return (e.action, game.states[e.dst].label())
    return key


def _first_edge(game: GameGraph, i: int):
    return min(game.successors[i], key=_edge_key(game))


def solve_reachability(game: GameGraph, targets):
    """Player 1 reachability: returns (winning region for Player 1 as a
    set of state indices, Player 1 attractor strategy, Player 2 escape
    strategy on the complement), strategies as index -> successor index.
    """
    n = len(game)
    preds = [[] for _ in range(n)]
    for e in game.edges:
        preds[e.dst].append(e)
    in_attr = [False] * n
    need = [len(game.successors[i]) for i in range(n)]
    strat1 = {}
    queue = deque(sorted(targets))
    for t in queue:
        in_attr[t] = True
    while queue:
        t = queue.popleft()
        for e in preds[t]:
            s = e.src
            if in_attr[s]:
                continue
            if game.owner(s) == 1:
                in_attr[s] = True
                strat1[s] = e.dst
                queue.append(s)
            else:
                need[s] -= 1
                if need[s] == 0:
                    in_attr[s] = True
                    queue.append(s)
    strat2 = {}
    for i in range(n):
        if game.owner(i) != 2:
            continue
        if in_attr[i]:
            strat2[i] = _first_edge(game, i).dst
        else:
            safe = [e for e in game.successors[i] if not in_attr[e.dst]]
            strat2[i] = min(safe, key=_edge_key(game)).dst
    for i in range(n):
        if game.owner(i) == 1 and i not in strat1:
            strat1[i] = _first_edge(game, i).dst
    region = frozenset(i for i in range(n) if in_attr[i])
    return region, strat1, strat2


def _label_strategy(game: GameGraph, strat: dict) -> dict:
    return {game.states[i].label(): game.states[j].label()
            for i, j in sorted(strat.items())}


@dataclass
class RefinementResult:
    """Outcome of a refinement check, with the winner's strategy."""

    holds: bool
    left: BIA
    right: BIA
    reason: str = ""
    game: GameGraph = None
    strategy: dict = field(default_factory=dict)

    @cached_property
    def relation(self) -> frozenset:
        """The maximal alternating simulation relation, computed
        independently of the game (greatest fixpoint)."""
        return maximal_simulation_relation(self.left, self.right)


def refines(left: BIA, right: BIA, max_states: int = 500_000) -> RefinementResult:
    """Does ``left`` refine ``right``?  Decided by solving the boolean
    game; a failed alphabet precondition yields a negative verdict with a
    reason rather than an exception."""
    try:
        game = build_boolean_game(left, right, max_states=max_states)
    except AlphabetPreconditionError as exc:
        return RefinementResult(False, left, right,
                                reason=f"alphabet precondition: {exc}")
    err = game.index.get(ERR_STATE)
    if err is None:
        strat2 = {i: _first_edge(game, i).dst for i in range(len(game))
                  if game.owner(i) == 2}
        return RefinementResult(True, left, right, game=game,
                                strategy=_label_strategy(game, strat2))
    region, strat1, strat2 = solve_reachability(game, {err})
    holds = game.initial not in region
    winner = strat2 if holds else strat1
    reason = "" if holds else "Player 1 can force the error state"
    return RefinementResult(holds, left, right, reason=reason, game=game,
                            strategy=_label_strategy(game, winner))


@dataclass
class DiscountedResult:
    values: list          # float per state index
    strategy1: dict       # state index -> successor index
    strategy2: dict
    iterations: int
    error_bound: float


def discounted_value(game: GameGraph, lam: Fraction,
                     epsilon: Fraction = Fraction(1, 10**6)) -> DiscountedResult:
    """Value iteration for the discounted-sum objective; the returned
    values carry a certified absolute error of at most ``epsilon``."""
    lam = Fraction(lam)
    if not 0 < lam < 1:
        raise ValueError(f"discount factor must lie in (0,1), got {lam}")
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    n = len(game)
    W = game.max_weight
    lf = float(lam)
    if W == 0:
        rounds = 1
    else:
        rounds = max(1, math.ceil(math.log(float(epsilon) * (1 - lf) / W)
                                  / math.log(lf)))
    esrc = np.array([e.src for e in game.edges], dtype=np.int64)
    edst = np.array([e.dst for e in game.edges], dtype=np.int64)
    ew = np.array([e.weight for e in game.edges], dtype=np.float64)
    order = np.argsort(esrc, kind="stable")
    esrc, edst, ew = esrc[order], edst[order], ew[order]
    starts = np.searchsorted(esrc, np.arange(n))
    is_max = np.array([game.owner(i) == 1 for i in range(n)])
    v = np.zeros(n)
    for _ in range(rounds):
        cand = ew + lf * v[edst]
        v = np.where(is_max, np.maximum.reduceat(cand, starts),
                     np.minimum.reduceat(cand, starts))

    tol = 1e-9 * (1 + W)
    strat1, strat2 = {}, {}
    for i in range(n):
        scored = [(e.weight + lf * v[e.dst], e) for e in
                  sorted(game.successors[i], key=_edge_key(game))]
        if game.owner(i) == 1:
            best = max(s for s, _ in scored)
            strat1[i] = next(e for s, e in scored if s >= best - tol).dst
        else:
            best = min(s for s, _ in scored)
            strat2[i] = next(e for s, e in scored if s <= best + tol).dst
    return DiscountedResult(list(v), strat1, strat2, rounds, float(epsilon))


@dataclass
class DistanceResult:
    """Quantitative simulation distance plus the supporting artifacts."""

    value: object         # Fraction (limavg) or float (disc)
    objective: str        # "limavg" or "disc"
    boolean_refines: bool
    game: GameGraph
    strategy1: dict       # Player 1 (spoiler), state label -> label
    strategy2: dict       # Player 2 (matcher)
    lam: Fraction = None
    epsilon: Fraction = None

    @property
    def decimal(self) -> str:
        return f"{float(self.value):.12g}"

    def to_json_dict(self) -> dict:
        if self.objective == "limavg":
            frac = Fraction(self.value)
            value = {"num": str(frac.numerator), "den": str(frac.denominator)}
            objective = "limavg"
        else:
            value = None
            objective = {"disc": {"lambda": str(self.lam),
                                  "epsilon": str(self.epsilon)}}
        return {
            "value": value,
            "decimal": self.decimal,
            "refines": self.boolean_refines,
            "objective": objective,
            "game": {"states": len(self.game), "edges": len(self.game.edges)},
            "strategies": {"player1": self.strategy1,
                           "player2": self.strategy2},
        }


def distance(left: BIA, model_out: ErrorModel, right: BIA,
             model_in: ErrorModel, objective: str = "limavg",
             lam: Fraction = None, epsilon: Fraction = Fraction(1, 10**6),
             max_states: int = 500_000) -> DistanceResult:
    """Interface simulation distance from ``left`` to ``right`` under the
    given error models."""
    game = build_quantitative_game(left, model_out, right, model_in,
                                   max_states=max_states)
    holds = refines(left, right, max_states=max_states).holds
    if objective == "limavg":
        res = mean_payoff_value(game)
        return DistanceResult(res.values[game.initial], "limavg", holds, game,
                              _label_strategy(game, res.strategy1),
                              _label_strategy(game, res.strategy2))
    if objective == "disc":
        if lam is None:
            raise ValueError("the discounted objective needs a discount factor")
        res = discounted_value(game, lam, epsilon)
        return DistanceResult(res.values[game.initial], "disc", holds, game,
                              _label_strategy(game, res.strategy1),
                              _label_strategy(game, res.strategy2),
                              lam=Fraction(lam), epsilon=Fraction(epsilon))
    raise ValueError(f"unknown objective {objective!r}")


def _lasso(game: GameGraph, choice: dict):
    """Follow a positional strategy pair; returns (prefix weights, cycle
    weights) of the unique induced lasso play."""
    seen = {}
    path = []
    weights = []
    s = game.initial
    while s not in seen:
        seen[s] = len(path)
        path.append(s)
        nxt = choice[s]
        edge = next(e for e in game.successors[s] if e.dst == nxt)
        weights.append(edge.weight)
        s = nxt
    cut = seen[s]
    return weights[:cut], weights[cut:]


def brute_force_value(game: GameGraph, objective: str = "limavg",
                      lam: Fraction = None) -> Fraction:
    """Oracle solver: enumerate every pair of positional strategies.

    Returns the exact value at the initial state; asserts determinacy
    (sup-inf = inf-sup).  Guarded against anything but tiny games.
    """
    n = len(game)
    if n > 12:
        raise TooLargeError(f"brute force refused beyond 12 states, got {n}")
    per_state = [sorted(game.successors[i], key=_edge_key(game))
                 for i in range(n)]
    own1 = [i for i in range(n) if game.owner(i) == 1]
    own2 = [i for i in range(n) if game.owner(i) == 2]
    count = 1
    for i in own1 + own2:
        count *= len(per_state[i])
    if count > 2_000_000:
        raise TooLargeError(f"brute force refused: {count} strategy pairs")

    def strategies(owned):
        for combo in itertools.product(*(per_state[i] for i in owned)):
            yield dict(zip(owned, (e.dst for e in combo)))

    if objective == "disc":
        lam = Fraction(lam)
        assert 0 < lam < 1

    def outcome(s1, s2):
        prefix, cycle = _lasso(game, {**s1, **s2})
        if objective == "limavg":
            return Fraction(sum(cycle), len(cycle))
        acc = Fraction(0)
        p = Fraction(1)
        for w in prefix:
            acc += p * w
            p *= lam
        cyc = Fraction(0)
        q = Fraction(1)
        for w in cycle:
            cyc += q * w
            q *= lam
        return acc + p * cyc / (1 - lam ** len(cycle))

    p1_all = list(strategies(own1))
    p2_all = list(strategies(own2))
    sup_inf = max(min(outcome(s1, s2) for s2 in p2_all) for s1 in p1_all)
    inf_sup = min(max(outcome(s1, s2) for s1 in p1_all) for s2 in p2_all)
    assert sup_inf == inf_sup, "determinacy violated — game bug"
    return sup_inf
