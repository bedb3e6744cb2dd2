"""Shared fixtures: seeded random model and game generators.

The property harness is reproducible: set IFSIM_SEED to change the base
seed, otherwise a fixed default is used.  Each helper takes an explicit
``random.Random`` so individual tests control their own streams.
"""
from __future__ import annotations

import os
import random

import pytest

from ifsim import BIA, Transition
from ifsim.errormodel import ErrorModel
from ifsim.game import Edge, GameGraph, GameState

BASE_SEED = int(os.environ.get("IFSIM_SEED", "271828"))


@pytest.fixture
def rng():
    return random.Random(BASE_SEED)


def make_rng(offset: int) -> random.Random:
    return random.Random(BASE_SEED + offset)


def random_game(rnd: random.Random, max_states: int = 6,
                max_weight: int = 3) -> GameGraph:
    """A small total game with random owners, edges and weights."""
    n = rnd.randint(2, max_states)
    states = [GameState(rnd.choice((1, 2)), f"s{i}", "#", "") for i in range(n)]
    edges = []
    for i in range(n):
        targets = rnd.sample(range(n), rnd.randint(1, min(3, n)))
        for t in targets:
            edges.append(Edge(i, t, rnd.randint(0, max_weight), ""))
    # one edge per (src, dst) pair
    edges = sorted({(e.src, e.dst): e for e in edges}.values())
    return GameGraph(states, edges, 0)


def random_bia(rnd: random.Random, name: str, inputs, outputs,
               n_states: int = 4, density: float = 0.6) -> BIA:
    """Random input-deterministic interface over the given signature."""
    states = [f"q{i}" for i in range(rnd.randint(1, n_states))]
    transitions = set()
    for q in states:
        for a in sorted(inputs):
            if rnd.random() < density:
                transitions.add(Transition(q, a, rnd.choice(states)))
        for a in sorted(outputs):
            for _ in range(rnd.randint(0, 2)):
                transitions.add(Transition(q, a, rnd.choice(states)))
    return BIA(name=name, states=tuple(states), initial=states[0],
               inputs=frozenset(inputs), outputs=frozenset(outputs),
               transitions=tuple(sorted(transitions)))


def random_error_model(rnd: random.Random, kind: str, actions,
                       max_cost: int = 3) -> ErrorModel:
    """Random substitution costs, closed under min-plus so the triangle
    inequality holds by construction."""
    acts = sorted(actions)
    cost = {}
    for a in acts:
        for b in acts:
            if a != b and rnd.random() < 0.5:
                cost[(a, b)] = rnd.randint(0, max_cost)
    # Floyd-Warshall closure over the partial matrix
    for m in acts:
        for a in acts:
            for b in acts:
                if a == b:
                    continue
                am = 0 if a == m else cost.get((a, m))
                mb = 0 if m == b else cost.get((m, b))
                if am is None or mb is None:
                    continue
                if (a, b) not in cost or cost[(a, b)] > am + mb:
                    cost[(a, b)] = am + mb
    return ErrorModel(kind, tuple(sorted(cost.items())))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
