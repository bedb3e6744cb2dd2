"""Product, error states, compatibility analysis, and pruned composition.

Two automata synchronize on shared actions (output of one, input of the
other); unshared actions interleave.  A product state is an error state
when one side emits a shared action the other cannot receive; states
from which an error state is reachable using only output actions are
incompatible.  The composition removes input transitions leading from
compatible to incompatible states and keeps the reachable remainder.
"""
from __future__ import annotations

from dataclasses import dataclass

from .automata import BIA, INPUT, OUTPUT, Transition, WeightedAutomaton, _Automaton
from .errors import IncompatibleError, ModelValidationError, NotComposableError, ValidationIssue

SEPARATOR = "|"


@dataclass(frozen=True)
class CompositionReport:
    shared: frozenset
    error_states: frozenset
    incompatible_states: frozenset
    removed_input_transitions: frozenset
    compatible: bool

    def to_json_dict(self) -> dict:
        return {
            "shared": sorted(self.shared),
            "errorStates": sorted(self.error_states),
            "incompatible": sorted(self.incompatible_states),
            "removedInputs": [
                {"from": t.source, "action": t.action, "to": t.target}
                for t in sorted(self.removed_input_transitions)
            ],
            "compatible": self.compatible,
        }


def composable(left: _Automaton, right: _Automaton):
    """(True, shared actions) iff input alphabets and output alphabets are disjoint."""
    ok = not (left.inputs & right.inputs) and not (left.outputs & right.outputs)
    shared = frozenset(left.alphabet & right.alphabet)
    return ok, shared


def _pair(p: str, q: str, sep: str = SEPARATOR) -> str:
    return f"{p}{sep}{q}"


def product(left: _Automaton, right: _Automaton,
            sep: str = SEPARATOR) -> WeightedAutomaton:
    """The full synchronized product over all state pairs.

    Joint transitions carry the sum of the component weights; a
    stuttering component contributes 0.
    """
    ok, shared = composable(left, right)
    if not ok:
        raise NotComposableError(
            f"{left.name} and {right.name} mix inputs or outputs: "
            f"inputs {sorted(left.inputs & right.inputs)}, "
            f"outputs {sorted(left.outputs & right.outputs)}")
    for automaton in (left, right):
        for q in automaton.states:
            if sep in q:
                raise ModelValidationError([ValidationIssue(
                    "SeparatorClash",
                    f"state name {q!r} contains the pair separator {sep!r}",
                    automaton.name)])
    states = tuple(_pair(p, q, sep) for p in left.states for q in right.states)
    transitions = []
    for p in left.states:
        for q in right.states:
            src = _pair(p, q, sep)
            for t in left.outgoing(p):
                if t.action not in shared:
                    transitions.append(Transition(src, t.action,
                                                  _pair(t.target, q, sep), t.weight))
            for t in right.outgoing(q):
                if t.action not in shared:
                    transitions.append(Transition(src, t.action,
                                                  _pair(p, t.target, sep), t.weight))
            for t in left.outgoing(p):
                if t.action in shared:
                    for u in right.outgoing(q):
                        if u.action == t.action:
                            transitions.append(Transition(
                                src, t.action, _pair(t.target, u.target, sep),
                                t.weight + u.weight))
    return WeightedAutomaton(
        name=f"{left.name}{sep}{right.name}",
        states=states,
        initial=_pair(left.initial, right.initial, sep),
        inputs=frozenset((left.inputs | right.inputs) - shared),
        outputs=frozenset(left.outputs | right.outputs),
        transitions=tuple(sorted(set(transitions))),
    )


def error_states(left: _Automaton, right: _Automaton,
                 sep: str = SEPARATOR) -> frozenset:
    """Product states where a shared action is emitted on one side and not
    receivable on the other, in either direction."""
    ok, shared = composable(left, right)
    if not ok:
        raise NotComposableError(f"{left.name} and {right.name} are not composable")
    result = set()
    for p in left.states:
        out_p = left.enabled(p, OUTPUT)
        in_p = left.enabled(p, INPUT)
        for q in right.states:
            out_q = right.enabled(q, OUTPUT)
            in_q = right.enabled(q, INPUT)
            for a in shared:
                if (a in out_p and a not in in_q) or (a in out_q and a not in in_p):
                    result.add(_pair(p, q, sep))
                    break
    return frozenset(result)


def incompatible_states(prod: WeightedAutomaton, errors) -> frozenset:
    """Backward closure of the error set under output-action edges."""
    rev = {}
    for t in prod.transitions:
        if t.action in prod.outputs:
            rev.setdefault(t.target, []).append(t.source)
    bad = set(errors)
    frontier = list(errors)
    while frontier:
        q = frontier.pop()
        for src in rev.get(q, ()):
            if src not in bad:
                bad.add(src)
                frontier.append(src)
    return frozenset(bad)


def _error_witness(prod: WeightedAutomaton, errors) -> list:
    """A sequence of output actions from the initial state to an error state."""
    if prod.initial in errors:
        return []
    back = {prod.initial: None}
    frontier = [prod.initial]
    while frontier:
        nxt = []
        for q in frontier:
            for t in sorted(prod.outgoing(q), key=lambda t: (t.action, t.target)):
                if t.action in prod.outputs and t.target not in back:
                    back[t.target] = (q, t.action)
                    if t.target in errors:
                        path = []
                        cur = t.target
                        while back[cur] is not None:
                            prev, act = back[cur]
                            path.append(act)
                            cur = prev
                        return list(reversed(path))
                    nxt.append(t.target)
        frontier = nxt
    return []


def compose(left: _Automaton, right: _Automaton, sep: str = SEPARATOR):
    """The pruned composition plus its report.

    Raises IncompatibleError (with an output-action witness) when the
    initial product state is incompatible.  Otherwise removes input
    transitions from compatible to incompatible states and drops
    everything left unreachable.
    """
    prod = product(left, right, sep)
    errors = error_states(left, right, sep)
    bad = incompatible_states(prod, errors)
    report = CompositionReport(
        shared=composable(left, right)[1],
        error_states=errors,
        incompatible_states=bad,
        removed_input_transitions=frozenset(
            t for t in prod.transitions
            if t.action in prod.inputs and t.source not in bad and t.target in bad),
        compatible=prod.initial not in bad,
    )
    if not report.compatible:
        raise IncompatibleError(
            f"initial state {prod.initial!r} of {prod.name} is incompatible",
            witness=_error_witness(prod, errors))
    kept = tuple(t for t in prod.transitions
                 if t not in report.removed_input_transitions)
    pruned = WeightedAutomaton(prod.name, prod.states, prod.initial,
                               prod.inputs, prod.outputs, kept)
    live = pruned.reachable()
    live_set = set(live)
    result = WeightedAutomaton(
        prod.name, tuple(live), prod.initial, prod.inputs, prod.outputs,
        tuple(t for t in kept if t.source in live_set and t.target in live_set))
    if isinstance(left, BIA) and isinstance(right, BIA):
        return result.to_bia(), report
    return result, report
