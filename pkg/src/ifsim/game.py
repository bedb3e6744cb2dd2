"""Construction of boolean and quantitative alternating simulation games.

Player 1 owns pair states (s, #, s') and picks either an input move of
the left system or an output move of the right one; Player 2 owns
pending-action states (s, sigma, s') and must answer with a transition
labeled sigma from the other side.  Player 2 dead ends lead to the
absorbing sink s_err; Player 1 dead ends self-loop.
"""
from __future__ import annotations

from dataclasses import dataclass

from .automata import INPUT, OUTPUT, BIA, WeightedAutomaton, _Automaton
from .errormodel import ErrorModel, apply_error_model, max_finite_weight
from .errors import AlphabetPreconditionError, TooLargeError

HASH = "#"
ERR = "s_err"


@dataclass(frozen=True, order=True)
class GameState:
    """A game position; ``action`` is ``#`` on Player 1 states and the
    pending action on Player 2 states.  The sink is the singleton with
    ``action == "s_err"``."""

    owner: int
    left: str
    action: str
    right: str

    @property
    def is_err(self) -> bool:
        return self.action == ERR

    def label(self) -> str:
        if self.is_err:
            return ERR
        return f"({self.left},{self.action},{self.right})"


ERR_STATE = GameState(1, "", ERR, "")


@dataclass(frozen=True, order=True)
class Edge:
    src: int
    dst: int
    weight: int
    action: str = ""


class GameGraph:
    """Bipartite weighted game graph, materialized over reachable states."""

    def __init__(self, states, edges, initial: int, max_model_weight: int = 0):
        self.states = tuple(states)
        self.edges = tuple(edges)
        self.initial = initial
        self.max_model_weight = max_model_weight
        self.index = {s: i for i, s in enumerate(self.states)}
        succ = [[] for _ in self.states]
        for e in self.edges:
            succ[e.src].append(e)
        self.successors = tuple(tuple(es) for es in succ)

    def __len__(self) -> int:
        return len(self.states)

    @property
    def max_weight(self) -> int:
        return max((e.weight for e in self.edges), default=0)

    def owner(self, i: int) -> int:
        return self.states[i].owner

    def to_json_dict(self) -> dict:
        return {
            "states": [{"id": i, "owner": s.owner, "payload": s.label()}
                       for i, s in enumerate(self.states)],
            "edges": [{"src": e.src, "dst": e.dst, "weight": e.weight,
                       "action": e.action}
                      for e in self.edges],
            "initial": self.initial,
        }


def check_alphabet_precondition(left: _Automaton, right: _Automaton) -> None:
    """Refinement requires the left inputs to be covered by the right and
    the right outputs to be covered by the left, on declared signatures."""
    problems = []
    missing_in = sorted(left.inputs - right.inputs)
    if missing_in:
        problems.append(f"inputs {missing_in} of {left.name} are not inputs of {right.name}")
    extra_out = sorted(right.outputs - left.outputs)
    if extra_out:
        problems.append(f"outputs {extra_out} of {right.name} are not outputs of {left.name}")
    if problems:
        raise AlphabetPreconditionError("; ".join(problems))


def _build(left: _Automaton, right: _Automaton, err_weight: int,
           max_states: int) -> GameGraph:
    initial = GameState(1, left.initial, HASH, right.initial)
    index = {initial: 0, ERR_STATE: None}
    states = [initial]
    edges = []
    frontier = [initial]

    def intern(gs: GameState) -> int:
        if gs not in index or index[gs] is None:
            states.append(gs)
            index[gs] = len(states) - 1
            if len(states) > max_states:
                raise TooLargeError(
                    f"game exceeds {max_states} states "
                    f"(|Q_F|={len(left.states)}, |Q_F'|={len(right.states)}); "
                    "raise max_states to proceed")
            frontier.append(gs)
        return index[gs]

    def err_index() -> int:
        if index[ERR_STATE] is None:
            states.append(ERR_STATE)
            index[ERR_STATE] = len(states) - 1
            frontier.append(ERR_STATE)
        return index[ERR_STATE]

    cursor = 0
    while cursor < len(frontier):
        gs = frontier[cursor]
        cursor += 1
        src = index[gs]
        out = []
        if gs.is_err:
            out.append((index[ERR_STATE], err_weight, ""))
        elif gs.owner == 1:
            for t in left.outgoing(gs.left):
                if t.action in left.inputs:
                    dst = GameState(2, t.target, t.action, gs.right)
                    out.append((intern(dst), 0, t.action))
            for u in right.outgoing(gs.right):
                if u.action in right.outputs:
                    dst = GameState(2, gs.left, u.action, u.target)
                    out.append((intern(dst), 0, u.action))
            if not out:
                out.append((src, 0, ""))  # dead Player 1 state self-loops
        else:
            action = gs.action
            if action in right.inputs:
                for u in right.outgoing(gs.right):
                    if u.action == action:
                        dst = GameState(1, gs.left, HASH, u.target)
                        out.append((intern(dst), 2 * u.weight, action))
            else:
                for t in left.outgoing(gs.left):
                    if t.action == action:
                        dst = GameState(1, t.target, HASH, gs.right)
                        out.append((intern(dst), 2 * t.weight, action))
            if not out:
                out.append((err_index(), 0, action))
        best = {}
        for dst, w, act in out:
            if dst not in best or best[dst][0] > w:
                best[dst] = (w, act)
        for dst in sorted(best):
            w, act = best[dst]
            edges.append(Edge(src, dst, w, act))

    # keep state order stable but resolve s_err interning order artifacts
    return GameGraph(states, sorted(edges), 0, max_model_weight=err_weight)


def build_boolean_game(left: BIA, right: BIA,
                       max_states: int = 500_000) -> GameGraph:
    """The unweighted alternating simulation game; Player 1 wins by
    reaching s_err."""
    check_alphabet_precondition(left, right)
    return _build(left, right, err_weight=0, max_states=max_states)


def build_quantitative_game(left, model_out: ErrorModel,
                            right, model_in: ErrorModel,
                            max_states: int = 500_000) -> GameGraph:
    """Game over the modified systems: the left side carries the output
    error model, the right side the input one.  Player 2 edges cost twice
    the matched cheat weight; the s_err self-loop costs the maximal
    finite model weight (undoubled)."""
    if model_out.kind != OUTPUT:
        raise ValueError("the left-hand model must be an output error model")
    if model_in.kind != INPUT:
        raise ValueError("the right-hand model must be an input error model")
    check_alphabet_precondition(left, right)
    modified_left = apply_error_model(left, model_out)
    modified_right = apply_error_model(right, model_in)
    return _build(modified_left, modified_right,
                  err_weight=max_finite_weight(model_in, model_out),
                  max_states=max_states)


def maximal_simulation_relation(left: _Automaton, right: _Automaton) -> frozenset:
    """Greatest fixpoint of the two alternating-simulation clauses,
    as a set of (left state, right state) pairs."""
    pairs = {(p, q) for p in left.states for q in right.states}
    changed = True
    while changed:
        changed = False
        for (p, q) in sorted(pairs):
            ok = True
            for a in sorted(left.enabled(p, INPUT)):
                for r in left.post(p, a):
                    if not any((r, r2) in pairs for r2 in right.post(q, a)):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                for a in sorted(right.enabled(q, OUTPUT)):
                    for r2 in right.post(q, a):
                        if not any((r, r2) in pairs for r in left.post(p, a)):
                            ok = False
                            break
                    if not ok:
                        break
            if not ok:
                pairs.discard((p, q))
                changed = True
    return frozenset(pairs)


def export_dot(game: GameGraph) -> str:
    """Deterministic DOT rendering: Player 1 states boxed, Player 2
    elliptic, the sink double-bordered; edges labeled action/weight."""
    lines = ["digraph game {"]
    order = sorted(range(len(game.states)), key=lambda i: game.states[i].label())
    for i in order:
        s = game.states[i]
        if s.is_err:
            attrs = 'shape=box, peripheries=2'
        elif s.owner == 1:
            attrs = "shape=box"
        else:
            attrs = "shape=ellipse"
        marker = ", style=bold" if i == game.initial else ""
        lines.append(f'  "{s.label()}" [{attrs}{marker}];')
    for e in sorted(game.edges,
                    key=lambda e: (game.states[e.src].label(),
                                   game.states[e.dst].label())):
        label = f"{e.action}/{e.weight}" if e.action else f"/{e.weight}"
        lines.append(f'  "{game.states[e.src].label()}" -> '
                     f'"{game.states[e.dst].label()}" [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
