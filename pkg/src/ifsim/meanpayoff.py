"""Exact mean-payoff game solving.

The engine is the classical k-step dynamic program: nu_0 = 0 and
nu_{i+1}(s) is the max (Player 1) or min (Player 2) over edges (s, t) of
w(s, t) + nu_i(t).  After k steps nu_k(s)/k is within 2|S|W/k of the
true value, whose denominator is at most |S|, so continued-fraction
rounding recovers it exactly once k reaches 4|S|^3 W.

Running that many sweeps is hopeless for larger games, so we checkpoint:
round the current estimate, extract candidate positional strategies and
certify them independently by evaluating the two one-player games they
induce (extremal cycle means via Karp's algorithm).  When the candidate
value is sandwiched by its own strategies the answer is exact and we
stop; otherwise the program keeps iterating, up to the theoretical bound.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import TooLargeError
from .game import GameGraph

_INF = np.int64(2) ** 62


@dataclass
class MeanPayoffResult:
    values: list         # Fraction per state index
    strategy1: dict      # owned state index -> chosen successor index
    strategy2: dict
    iterations: int


def _edge_arrays(game: GameGraph):
    esrc = np.array([e.src for e in game.edges], dtype=np.int64)
    edst = np.array([e.dst for e in game.edges], dtype=np.int64)
    ew = np.array([e.weight for e in game.edges], dtype=np.int64)
    order = np.argsort(esrc, kind="stable")
    esrc, edst, ew = esrc[order], edst[order], ew[order]
    starts = np.searchsorted(esrc, np.arange(len(game)))
    return esrc, edst, ew, starts


def _sweeps(nu, edst, ew, starts, is_max, count):
    for _ in range(count):
        cand = ew + nu[edst]
        mx = np.maximum.reduceat(cand, starts)
        mn = np.minimum.reduceat(cand, starts)
        nu = np.where(is_max, mx, mn)
    return nu


def _karp_cycle_mean(nodes, edges, minimize: bool):
    """Extremal cycle mean of a strongly connected subgraph, exact.

    ``edges`` are (src, dst, w) triples over ``nodes``; weights are
    negated internally to compute a maximum.
    """
    m = len(nodes)
    local = {v: i for i, v in enumerate(nodes)}
    esrc = np.array([local[s] for s, _, _ in edges], dtype=np.int64)
    edst = np.array([local[t] for _, t, _ in edges], dtype=np.int64)
    ew = np.array([w if minimize else -w for _, _, w in edges], dtype=np.int64)
    order = np.argsort(edst, kind="stable")
    esrc, edst, ew = esrc[order], edst[order], ew[order]
    targets, starts = np.unique(edst, return_index=True)

    table = np.empty((m + 1, m), dtype=np.int64)
    table[0] = 0
    for k in range(1, m + 1):
        cand = np.minimum(table[k - 1][esrc], _INF) + ew
        row = np.full(m, _INF, dtype=np.int64)
        row[targets] = np.minimum.reduceat(cand, starts)
        table[k] = np.minimum(row, _INF)

    best = None
    final = table[m]
    for v in range(m):
        if final[v] >= _INF:
            continue
        worst = None
        for k in range(m):
            if table[k][v] >= _INF:
                continue
            ratio = Fraction(int(final[v] - table[k][v]), m - k)
            if worst is None or ratio > worst:
                worst = ratio
        if worst is not None and (best is None or worst < best):
            best = worst
    assert best is not None, "strongly connected component without a cycle"
    return best if minimize else -best


def _one_player_values(game: GameGraph, choice: dict, fixed_owner: int,
                       minimize: bool):
    """Per-state value when ``fixed_owner`` plays ``choice`` and the other
    player freely optimizes (min or max cycle mean reachable)."""
    n = len(game)
    sub = [[] for _ in range(n)]
    for i in range(n):
        if game.owner(i) == fixed_owner:
            e = choice[i]
            sub[i].append((e.dst, e.weight))
        else:
            for e in game.successors[i]:
                sub[i].append((e.dst, e.weight))
    rows, cols = [], []
    for s, out in enumerate(sub):
        for t, _ in out:
            rows.append(s)
            cols.append(t)
    adj = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    ncomp, labels = connected_components(adj, directed=True, connection="strong")

    comp_nodes = [[] for _ in range(ncomp)]
    for v, c in enumerate(labels):
        comp_nodes[c].append(v)
    comp_edges = [[] for _ in range(ncomp)]
    dag = [set() for _ in range(ncomp)]
    for s, out in enumerate(sub):
        for t, w in out:
            if labels[s] == labels[t]:
                comp_edges[labels[s]].append((s, t, w))
            else:
                dag[labels[s]].add(labels[t])

    cycle_mean = [None] * ncomp
    for c in range(ncomp):
        if comp_edges[c]:
            cycle_mean[c] = _karp_cycle_mean(comp_nodes[c], comp_edges[c], minimize)

    # propagate over the condensation in reverse topological order
    topo = []
    seen = [0] * ncomp
    for root in range(ncomp):
        if seen[root]:
            continue
        stack = [(root, iter(dag[root]))]
        seen[root] = 1
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if not seen[nxt]:
                    seen[nxt] = 1
                    stack.append((nxt, iter(dag[nxt])))
                    advanced = True
                    break
            if not advanced:
                topo.append(node)
                stack.pop()
    comp_val = [None] * ncomp
    pick = min if minimize else max
    for c in topo:  # already reverse-topological: successors first
        options = [comp_val[d] for d in dag[c] if comp_val[d] is not None]
        if cycle_mean[c] is not None:
            options.append(cycle_mean[c])
        comp_val[c] = pick(options) if options else None
    values = [comp_val[labels[v]] for v in range(n)]
    assert all(v is not None for v in values), "non-total game graph"
    return values


def _edge_sort_key(game: GameGraph):
    def key(e):
        return (e.action, game.states[e.dst].label())
    return key


def _greedy(game: GameGraph, owner: int, maximize: bool, score):
    """Pick, per owned state, the edge with extremal score; ties broken
    lexicographically on (action, target label)."""
    choice = {}
    for i in range(len(game)):
        if game.owner(i) != owner:
            continue
        best = None
        best_score = None
        for e in sorted(game.successors[i], key=_edge_sort_key(game)):
            s = score(e)
            better = best is None or (s > best_score if maximize else s < best_score)
            if better:
                best, best_score = e, s
        choice[i] = best
    return choice


def _consistent(game: GameGraph, candidate) -> bool:
    """Cheap necessary condition: a value vector is harmonic, i.e. each
    state's value is the owner's optimum over successor values."""
    for i in range(len(game)):
        vals = [candidate[e.dst] for e in game.successors[i]]
        opt = max(vals) if game.owner(i) == 1 else min(vals)
        if candidate[i] != opt:
            return False
    return True


def _energy_strategy(game: GameGraph, candidate, player: int):
    """Extract a positional strategy certifying ``candidate`` for ``player``
    via a small-progress-measure lifting on the reduced weights w − v
    (negated for Player 2), scaled to integers.  Returns None when the
    lifting diverges, which happens exactly when the candidate is not
    the value.
    """
    n = len(game)
    scale = math.lcm(*(v.denominator for v in candidate))

    def reduced(e):
        w = scale * e.weight - scale * candidate[e.src]
        return int(w) if player == 1 else -int(w)

    moves = []
    for i in range(n):
        if game.owner(i) == player:
            # an optimal edge never leaves the value class of its source
            keep = [e for e in game.successors[i]
                    if candidate[e.dst] == candidate[i]]
            if not keep:
                return None
            moves.append(keep)
        else:
            moves.append(list(game.successors[i]))
    table = [[(e.dst, reduced(e)) for e in es] for es in moves]
    top = sum(max(0, -r) for row in table for _, r in row) + 1

    preds = [[] for _ in range(n)]
    for i, es in enumerate(moves):
        for e in es:
            preds[e.dst].append(i)

    f = [0] * n
    mine = player

    def lifted(i):
        need = (max(0, f[dst] - r) for dst, r in table[i])
        return min(need) if game.owner(i) == mine else max(need)

    dirty = deque(range(n))
    queued = [True] * n
    budget = 100 * n * n + 1_000_000
    while dirty:
        budget -= 1
        if budget < 0:
            return None
        i = dirty.popleft()
        queued[i] = False
        new = lifted(i)
        if new <= f[i]:
            continue
        if new > top:
            return None
        f[i] = new
        for p in preds[i]:
            if not queued[p]:
                queued[p] = True
                dirty.append(p)

    choice = {}
    for i in range(n):
        if game.owner(i) != player:
            continue
        needs = [max(0, f[e.dst] - r)
                 for e, (_, r) in zip(moves[i], table[i])]
        best = min(needs)
        picks = [e for e, need in zip(moves[i], needs) if need == best]
        choice[i] = min(picks, key=_edge_sort_key(game))
    return choice


def _try_certify(game: GameGraph, candidate, nu, k):
    """Certify a candidate value vector via self-extracted strategies.

    Returns (strategy1, strategy2) on success, None otherwise.  The two
    players are certified independently: each needs one strategy whose
    one-player evaluation matches the candidate exactly.
    """
    if not _consistent(game, candidate):
        return None
    h = [Fraction(int(nu[i])) - k * candidate[i] for i in range(len(game))]

    def bias_score(e):
        return (candidate[e.dst], e.weight + h[e.dst])

    def attempts(player):
        maximize = player == 1
        yield _greedy(game, player, maximize, bias_score)
        yield _energy_strategy(game, candidate, player)

    def certified(player):
        minimize = player == 1
        for strat in attempts(player):
            if strat is None:
                continue
            values = _one_player_values(game, strat, player, minimize=minimize)
            if values == candidate:
                return strat
        return None

    strat1 = certified(1)
    if strat1 is None:
        return None
    strat2 = certified(2)
    if strat2 is None:
        return None
    return ({i: e.dst for i, e in strat1.items()},
            {i: e.dst for i, e in strat2.items()})


def mean_payoff_value(game: GameGraph, max_states: int = 50_000) -> MeanPayoffResult:
    """Exact per-state mean-payoff values and optimal positional strategies."""
    n = len(game)
    if n > max_states:
        raise TooLargeError(
            f"mean-payoff solve refused: {n} game states exceeds the "
            f"{max_states}-state guard")
    W = game.max_weight
    esrc, edst, ew, starts = _edge_arrays(game)
    is_max = np.array([game.owner(i) == 1 for i in range(n)])

    if W == 0:
        zero = [Fraction(0)] * n
        strat1 = _greedy(game, 1, True, lambda e: 0)
        strat2 = _greedy(game, 2, False, lambda e: 0)
        return MeanPayoffResult(zero,
                                {i: e.dst for i, e in strat1.items()},
                                {i: e.dst for i, e in strat2.items()}, 0)

    kmax = 4 * n ** 3 * W
    if kmax * W >= int(_INF):
        raise TooLargeError(
            f"game too large for 64-bit accumulators: 4|S|^3 W^2 = {kmax * W}")

    nu = np.zeros(n, dtype=np.int64)
    k = 0
    target = max(16, 4 * n * W)
    while True:
        nu = _sweeps(nu, edst, ew, starts, is_max, target - k)
        k = target
        candidate = [Fraction(int(nu[i]), k).limit_denominator(n) for i in range(n)]
        certified = _try_certify(game, candidate, nu, k)
        if certified is not None:
            return MeanPayoffResult(candidate, certified[0], certified[1], k)
        if k > 4 * kmax:
            raise RuntimeError(
                "mean-payoff certification failed beyond the theoretical bound")
        target = 2 * target
