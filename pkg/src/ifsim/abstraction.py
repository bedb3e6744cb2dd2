"""Quotient abstractions of an automaton under a user-supplied partition.

Two modes: the over-approximating quotient quantifies inputs
universally and outputs existentially; the under-approximating one
swaps the quantifiers.  The result may be input nondeterministic and
is therefore returned as a zero-weight WeightedAutomaton.
"""
from __future__ import annotations

from dataclasses import dataclass

from .automata import BIA, Transition, WeightedAutomaton
from .errors import NotAPartitionError, UnknownStateError

FORALL_EXISTS = "forall_exists"
EXISTS_FORALL = "exists_forall"


@dataclass(frozen=True)
class Partition:
    """Map from class name to a non-empty set of state names."""

    classes: tuple  # sorted (name, frozenset of states) pairs

    @staticmethod
    def from_dict(classes: dict) -> "Partition":
        return Partition(tuple(sorted(
            (name, frozenset(members)) for name, members in classes.items())))

    def class_of(self, state: str) -> str:
        for name, members in self.classes:
            if state in members:
                return name
        raise UnknownStateError(f"state {state!r} is in no partition class")

    def check_total(self, automaton) -> None:
        seen = {}
        for name, members in self.classes:
            if not members:
                raise NotAPartitionError(f"class {name!r} is empty")
            for q in members:
                if q not in set(automaton.states):
                    raise NotAPartitionError(
                        f"class {name!r} mentions unknown state {q!r}")
                if q in seen:
                    raise NotAPartitionError(
                        f"state {q!r} occurs in classes {seen[q]!r} and {name!r}")
                seen[q] = name
        missing = sorted(set(automaton.states) - set(seen))
        if missing:
            raise NotAPartitionError(f"states not covered: {missing}")


def singleton_partition(automaton) -> Partition:
    return Partition.from_dict({q: {q} for q in automaton.states})


def abstract(automaton: BIA, partition: Partition, mode: str) -> WeightedAutomaton:
    """Quotient automaton; ``mode`` selects the quantifier orientation."""
    if mode not in (FORALL_EXISTS, EXISTS_FORALL):
        raise ValueError(f"unknown abstraction mode {mode!r}")
    partition.check_total(automaton)
    cls = {q: partition.class_of(q) for q in automaton.states}
    members = dict(partition.classes)

    def exists_exists(action):
        pairs = set()
        for t in automaton.transitions:
            if t.action == action:
                pairs.add((cls[t.source], cls[t.target]))
        return pairs

    def forall_exists(action):
        pairs = set()
        for s, qs in members.items():
            for s2 in members:
                if all(any(cls[t] == s2 for t in automaton.post(q, action))
                       for q in qs):
                    pairs.add((s, s2))
        return pairs

    transitions = set()
    input_rule = forall_exists if mode == FORALL_EXISTS else exists_exists
    output_rule = exists_exists if mode == FORALL_EXISTS else forall_exists
    for a in automaton.inputs:
        for s, s2 in input_rule(a):
            transitions.add(Transition(s, a, s2))
    for a in automaton.outputs:
        for s, s2 in output_rule(a):
            transitions.add(Transition(s, a, s2))

    return WeightedAutomaton(
        name=f"{automaton.name}_{mode}",
        states=tuple(name for name, _ in partition.classes),
        initial=cls[automaton.initial],
        inputs=automaton.inputs,
        outputs=automaton.outputs,
        transitions=tuple(sorted(transitions)),
    )
