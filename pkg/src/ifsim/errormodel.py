"""Input/output error models and the modified (weighted) system F with cheats.

An error model prices the substitution of one action for another of the
same kind.  Absent off-diagonal entries mean the substitution is
forbidden; the diagonal is implicitly zero and the finite entries must
satisfy the triangle inequality.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .automata import INPUT, OUTPUT, BIA, Transition, WeightedAutomaton, _Automaton
from .errors import (
    ModelValidationError,
    UnknownCheatTargetError,
    ValidationIssue,
)


@dataclass(frozen=True)
class ErrorModel:
    """Partial substitution-cost matrix over one action kind."""

    kind: str
    entries: tuple  # sorted ((original, played), cost) pairs, off-diagonal only

    def __post_init__(self):
        object.__setattr__(self, "_map", dict(self.entries))

    @property
    def domain(self) -> frozenset:
        names = set()
        for (a, b), _ in self.entries:
            names.add(a)
            names.add(b)
        return frozenset(names)

    def cost(self, original: str, played: str):
        """Cost of playing ``played`` for ``original``; None encodes the bottom entry."""
        if original == played:
            return 0
        return self._map.get((original, played))

    def cheats_for(self, original: str):
        """All (played, cost) pairs licensed when the system has ``original``."""
        return tuple((b, c) for (a, b), c in self.entries if a == original)

    def max_finite_entry(self) -> int:
        return max((c for _, c in self.entries), default=0)

    def to_json_dict(self) -> dict:
        return {"kind": self.kind,
                "entries": [{"from": a, "to": b, "cost": c}
                            for (a, b), c in self.entries]}


def identity_model(kind: str) -> ErrorModel:
    """The model that licenses no substitutions at all."""
    return ErrorModel(kind, ())


def unit_interchange_model(kind: str, actions) -> ErrorModel:
    """Every action of the kind replaceable by every other at cost 1."""
    acts = sorted(actions)
    entries = tuple(((a, b), 1) for a in acts for b in acts if a != b)
    return ErrorModel(kind, entries)


def validate_error_model(raw: dict, kind: str = None) -> ErrorModel:
    """Build an ErrorModel from parsed JSON, reporting every violation.

    Triangle checking treats missing entries as infinite: a finite
    two-hop path with no (or a larger) direct entry is a violation,
    reported with the witnessing triple.
    """
    issues = []
    if kind is None:
        kind = raw.get("kind")
    if kind not in (INPUT, OUTPUT):
        issues.append(ValidationIssue("BadKind", f"kind must be input or output, got {kind!r}"))
        raise ModelValidationError(issues)
    table = {}
    for i, e in enumerate(raw.get("entries", [])):
        if not isinstance(e, dict) or not isinstance(e.get("from"), str) \
                or not isinstance(e.get("to"), str):
            issues.append(ValidationIssue("BadEntry", f"entry #{i} malformed"))
            continue
        a, b, c = e["from"], e["to"], e.get("cost")
        if not isinstance(c, int) or c < 0:
            issues.append(ValidationIssue("NegativeCost",
                                          f"cost {c!r} on ({a},{b}) is not a natural number",
                                          f"({a},{b})"))
            continue
        if a == b:
            if c != 0:
                issues.append(ValidationIssue("NonzeroDiagonal",
                                              f"diagonal entry ({a},{a}) must be 0, got {c}",
                                              f"({a},{a})"))
            continue
        if (a, b) in table:
            issues.append(ValidationIssue("DuplicateEntry", f"entry ({a},{b}) repeated",
                                          f"({a},{b})"))
        table[(a, b)] = c

    domain = sorted({x for pair in table for x in pair})

    def cost(a, b):
        return 0 if a == b else table.get((a, b))

    for a in domain:
        for b in domain:
            ab = cost(a, b)
            if ab is None:
                continue
            for c in domain:
                bc = cost(b, c)
                if bc is None:
                    continue
                ac = cost(a, c)
                if ac is None or ab + bc < ac:
                    issues.append(ValidationIssue(
                        "TriangleViolation",
                        f"cost({a},{b}) + cost({b},{c}) = {ab + bc} "
                        f"< cost({a},{c}) = {'bottom' if ac is None else ac}",
                        f"({a},{b},{c})"))
    if issues:
        raise ModelValidationError(issues)
    return ErrorModel(kind, tuple(sorted(table.items())))


def apply_error_model(automaton: _Automaton, model: ErrorModel) -> WeightedAutomaton:
    """The modified system: original transitions at weight 0 plus cheat
    transitions, each weighted by the cheapest licensing substitution.

    The model is implicitly extended by identity on actions outside its
    kind, so all original transitions survive unweighted.  Cheat targets
    must already belong to the automaton's declared alphabet; alphabets
    are never enlarged.
    """
    pool = automaton.inputs if model.kind == INPUT else automaton.outputs
    for action in sorted(model.domain):
        if action not in pool:
            if action in automaton.alphabet:
                raise UnknownCheatTargetError(
                    f"error-model action {action!r} has the wrong kind for {automaton.name}")
            raise UnknownCheatTargetError(
                f"error-model action {action!r} is not in the alphabet of {automaton.name}")
    base_weighted = any(t.weight != 0 for t in automaton.transitions)
    if base_weighted:
        raise ModelValidationError([ValidationIssue(
            "AlreadyWeighted",
            "error models apply to unweighted systems only", automaton.name)])

    best = {}
    for t in automaton.transitions:
        key = (t.source, t.action, t.target)
        best[key] = 0
        if t.action in pool:
            for played, cost in model.cheats_for(t.action):
                cheat = (t.source, played, t.target)
                if cheat not in best or best[cheat] > cost:
                    # keep originals at 0 even if a cheat shares endpoints
                    if cheat in best and best[cheat] == 0:
                        continue
                    best[cheat] = cost
    # an original transition beats any cheat with the same endpoints
    for t in automaton.transitions:
        best[(t.source, t.action, t.target)] = 0
    transitions = tuple(sorted(Transition(s, a, q, w)
                               for (s, a, q), w in best.items()))
    return WeightedAutomaton(automaton.name, automaton.states, automaton.initial,
                             automaton.inputs, automaton.outputs, transitions)


def max_finite_weight(model_in: ErrorModel, model_out: ErrorModel) -> int:
    """Largest finite substitution cost across both models; falls back to 1
    so a failed refinement never yields a vacuous zero penalty."""
    w = max(model_in.max_finite_entry(), model_out.max_finite_entry())
    return w if w > 0 else 1
