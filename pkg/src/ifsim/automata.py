"""Broadcast interface automata: types, validation and basic queries.

A broadcast interface automaton (BIA) has disjoint input/output action
signatures and an input-deterministic transition relation.  A
WeightedAutomaton drops the determinism requirement and carries a
nonnegative integer weight on every transition; it is the carrier for
systems modified by an error model.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable

from .errors import (
    ModelValidationError,
    UnknownActionError,
    UnknownStateError,
    ValidationIssue,
)

INPUT = "input"
OUTPUT = "output"

_NAME_RE = re.compile(r"^[A-Za-z0-9_]+$")


@dataclass(frozen=True, order=True)
class ActionId:
    """An action name together with its kind (input or output)."""

    name: str
    kind: str

    def decorated(self) -> str:
        """Render with the conventional suffix: ``a?`` for inputs, ``a!`` for outputs."""
        return self.name + ("?" if self.kind == INPUT else "!")


@dataclass(frozen=True, order=True)
class Transition:
    source: str
    action: str
    target: str
    weight: int = 0


class _Automaton:
    """Shared queries for BIA and WeightedAutomaton."""

    name: str
    states: tuple
    initial: str
    inputs: frozenset
    outputs: frozenset
    transitions: tuple

    @property
    def alphabet(self) -> frozenset:
        return self.inputs | self.outputs

    def kind_of(self, action: str) -> str:
        if action in self.inputs:
            return INPUT
        if action in self.outputs:
            return OUTPUT
        raise UnknownActionError(f"action {action!r} not in alphabet of {self.name}")

    def action_id(self, action: str) -> ActionId:
        return ActionId(action, self.kind_of(action))

    def post(self, state: str, action: str) -> frozenset:
        """Targets of transitions labeled ``action`` leaving ``state``."""
        if state not in self._state_set:
            raise UnknownStateError(f"state {state!r} not in {self.name}")
        if action not in self.alphabet:
            raise UnknownActionError(f"action {action!r} not in alphabet of {self.name}")
        return frozenset(t.target for t in self._by_source.get(state, ())
                         if t.action == action)

    def enabled(self, state: str, kind: str) -> frozenset:
        """Actions of the given kind with at least one transition from ``state``."""
        if state not in self._state_set:
            raise UnknownStateError(f"state {state!r} not in {self.name}")
        pool = self.inputs if kind == INPUT else self.outputs
        return frozenset(t.action for t in self._by_source.get(state, ())
                         if t.action in pool)

    def outgoing(self, state: str) -> tuple:
        return self._by_source.get(state, ())

    def reachable(self) -> tuple:
        """States reachable from the initial state, in deterministic BFS order.

        Exploration is breadth-first, expanding transitions sorted by
        (action, target) so the result order is stable across runs.
        """
        seen = {self.initial}
        order = [self.initial]
        frontier = [self.initial]
        while frontier:
            nxt = []
            for q in frontier:
                for t in sorted(self._by_source.get(q, ()),
                                key=lambda t: (t.action, t.target)):
                    if t.target not in seen:
                        seen.add(t.target)
                        order.append(t.target)
                        nxt.append(t.target)
            frontier = nxt
        return tuple(order)

    def _index(self):
        object.__setattr__(self, "_state_set", frozenset(self.states))
        by_source = {}
        for t in self.transitions:
            by_source.setdefault(t.source, []).append(t)
        object.__setattr__(
            self, "_by_source",
            {q: tuple(sorted(ts)) for q, ts in by_source.items()})

    def to_json_dict(self) -> dict:
        out = {
            "name": self.name,
            "inputs": sorted(self.inputs),
            "outputs": sorted(self.outputs),
            "states": list(self.states),
            "initial": self.initial,
            "transitions": [],
        }
        for t in sorted(self.transitions):
            entry = {"from": t.source, "action": t.action, "to": t.target}
            if t.weight:
                entry["weight"] = t.weight
            out["transitions"].append(entry)
        return out


@dataclass(frozen=True)
class BIA(_Automaton):
    """Broadcast interface automaton (input deterministic, unweighted)."""

    name: str
    states: tuple
    initial: str
    inputs: frozenset
    outputs: frozenset
    transitions: tuple

    def __post_init__(self):
        self._index()

    def to_weighted(self) -> "WeightedAutomaton":
        return WeightedAutomaton(self.name, self.states, self.initial,
                                 self.inputs, self.outputs, self.transitions)


@dataclass(frozen=True)
class WeightedAutomaton(_Automaton):
    """Automaton with weighted transitions; input determinism not required."""

    name: str
    states: tuple
    initial: str
    inputs: frozenset
    outputs: frozenset
    transitions: tuple

    def __post_init__(self):
        for t in self.transitions:
            if t.weight < 0:
                raise ModelValidationError([ValidationIssue(
                    "NegativeWeight", f"weight {t.weight} on {t}", self.name)])
        self._index()

    def max_weight(self) -> int:
        return max((t.weight for t in self.transitions), default=0)

    def is_input_deterministic(self) -> bool:
        targets = {}
        for t in self.transitions:
            if t.action in self.inputs:
                targets.setdefault((t.source, t.action), set()).add(t.target)
        return all(len(v) <= 1 for v in targets.values())

    def to_bia(self) -> BIA:
        """Round-trip back to a BIA; requires zero weights and input determinism."""
        issues = []
        if any(t.weight != 0 for t in self.transitions):
            issues.append(ValidationIssue("NonzeroWeight",
                                          "cannot demote weighted transitions",
                                          self.name))
        if not self.is_input_deterministic():
            issues.append(ValidationIssue("InputNondeterminism",
                                          "transition relation is not input deterministic",
                                          self.name))
        if issues:
            raise ModelValidationError(issues)
        return BIA(self.name, self.states, self.initial, self.inputs,
                   self.outputs,
                   tuple(Transition(t.source, t.action, t.target)
                         for t in sorted(self.transitions)))


def collect_bia_issues(raw: dict) -> list:
    """All invariant violations of a parsed model description.

    Total on any parsed JSON object: structural problems (missing or
    mistyped fields) are reported as issues rather than raised.
    """
    issues = []
    name = raw.get("name") if isinstance(raw, dict) else None
    if not isinstance(raw, dict):
        return [ValidationIssue("BadModel", "model is not a JSON object")]
    name = name if isinstance(name, str) else "<unnamed>"

    def str_list(key):
        val = raw.get(key)
        if not isinstance(val, list) or not all(isinstance(x, str) for x in val):
            issues.append(ValidationIssue("BadField", f"{key!r} must be a list of strings", name))
            return []
        return val

    states = str_list("states")
    inputs = str_list("inputs")
    outputs = str_list("outputs")

    seen = set()
    for s in states:
        if s in seen:
            issues.append(ValidationIssue("DuplicateState", f"state {s!r} declared twice", name))
        seen.add(s)

    for a in inputs + outputs:
        if not _NAME_RE.match(a):
            issues.append(ValidationIssue("BadActionName",
                                          f"action name {a!r} is not [A-Za-z0-9_]+", name))
    overlap = set(inputs) & set(outputs)
    for a in sorted(overlap):
        issues.append(ValidationIssue("AlphabetOverlap",
                                      f"action {a!r} is both input and output", name))

    initial = raw.get("initial")
    if not isinstance(initial, str) or initial not in seen:
        issues.append(ValidationIssue("MissingInitial",
                                      f"initial state {initial!r} is not a declared state", name))

    alphabet = set(inputs) | set(outputs)
    transitions = raw.get("transitions", [])
    if not isinstance(transitions, list):
        issues.append(ValidationIssue("BadField", "'transitions' must be a list", name))
        transitions = []
    input_targets = {}
    for i, t in enumerate(transitions):
        if not isinstance(t, dict):
            issues.append(ValidationIssue("BadTransition", f"transition #{i} is not an object", name))
            continue
        src, act, dst = t.get("from"), t.get("action"), t.get("to")
        loc = f"{name}:({src},{act},{dst})"
        for endpoint in (src, dst):
            if not isinstance(endpoint, str) or endpoint not in seen:
                issues.append(ValidationIssue("UnknownEndpoint",
                                              f"state {endpoint!r} is not declared", loc))
        if not isinstance(act, str) or act not in alphabet:
            issues.append(ValidationIssue("UnknownAction",
                                          f"action {act!r} is not declared", loc))
        elif act in set(inputs) and isinstance(src, str):
            input_targets.setdefault((src, act), set()).add(dst)
    for (src, act), targets in sorted(input_targets.items()):
        if len(targets) > 1:
            issues.append(ValidationIssue(
                "InputNondeterminism",
                f"input {act!r} at state {src!r} has targets {sorted(map(str, targets))}",
                f"{name}:({src},{act})"))
    return issues


def validate_bia(raw: dict) -> BIA:
    """Build a BIA from a parsed model, or raise with all violations found."""
    issues = collect_bia_issues(raw)
    if issues:
        raise ModelValidationError(issues)
    return BIA(
        name=raw.get("name", ""),
        states=tuple(raw["states"]),
        initial=raw["initial"],
        inputs=frozenset(raw["inputs"]),
        outputs=frozenset(raw["outputs"]),
        transitions=tuple(sorted(Transition(t["from"], t["action"], t["to"])
                                 for t in raw.get("transitions", []))),
    )


def validate_weighted(raw: dict) -> WeightedAutomaton:
    """Like validate_bia but keeps weights and allows input nondeterminism."""
    issues = [i for i in collect_bia_issues(raw) if i.code != "InputNondeterminism"]
    for i, t in enumerate(raw.get("transitions", []) if isinstance(raw, dict) else []):
        if isinstance(t, dict):
            w = t.get("weight", 0)
            if not isinstance(w, int) or w < 0:
                issues.append(ValidationIssue(
                    "NegativeCost", f"transition #{i} has bad weight {w!r}",
                    raw.get("name", "")))
    if issues:
        raise ModelValidationError(issues)
    return WeightedAutomaton(
        name=raw.get("name", ""),
        states=tuple(raw["states"]),
        initial=raw["initial"],
        inputs=frozenset(raw["inputs"]),
        outputs=frozenset(raw["outputs"]),
        transitions=tuple(sorted(Transition(t["from"], t["action"], t["to"],
                                            t.get("weight", 0))
                                 for t in raw.get("transitions", []))),
    )


def load_automaton(path, weighted: bool = False):
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    return validate_weighted(raw) if weighted else validate_bia(raw)


# Module-level aliases for the operation surface.

def post(automaton: _Automaton, state: str, action: str) -> frozenset:
    return automaton.post(state, action)


def enabled(automaton: _Automaton, state: str, kind: str) -> frozenset:
    return automaton.enabled(state, kind)


def reachable(automaton: _Automaton) -> tuple:
    return automaton.reachable()
