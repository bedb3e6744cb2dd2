from fractions import Fraction

import pytest

from ifsim import TooLargeError, brute_force_value, corpus, discounted_value, \
    distance, identity_model, mean_payoff_value, refines, solve_reachability, \
    unit_interchange_model
from ifsim.game import Edge, GameGraph, GameState
from conftest import make_rng, random_game


def forced_cycle(w1=0, w2=2):
    states = [GameState(1, "a", "#", ""), GameState(2, "b", "#", "")]
    edges = [Edge(0, 1, w1, ""), Edge(1, 0, w2, "")]
    return GameGraph(states, edges, 0)


def selfloop(owner=1, weight=1):
    return GameGraph([GameState(owner, "a", "#", "")],
                     [Edge(0, 0, weight, "")], 0)


def test_attractor_basics():
    game = forced_cycle()
    region, strat1, strat2 = solve_reachability(game, {0})
    assert {0, 1} <= region
    # P2-owned initial with an escape edge avoids the target forever
    states = [GameState(2, "a", "#", ""), GameState(1, "t", "#", "")]
    edges = [Edge(0, 0, 0, ""), Edge(0, 1, 0, ""), Edge(1, 1, 0, "")]
    game = GameGraph(states, edges, 0)
    region, _, strat2 = solve_reachability(game, {1})
    assert 0 not in region and strat2[0] == 0


def test_mean_payoff_trivial():
    assert mean_payoff_value(selfloop(weight=0)).values == [Fraction(0)]
    res = mean_payoff_value(forced_cycle())
    assert res.values == [Fraction(1), Fraction(1)]


def test_mean_payoff_choice():
    # P1 picks between a 0-selfloop and a weight-3 selfloop
    states = [GameState(1, "a", "#", ""), GameState(2, "b", "#", ""),
              GameState(2, "c", "#", "")]
    edges = [Edge(0, 1, 0, ""), Edge(0, 2, 0, ""),
             Edge(1, 1, 0, ""), Edge(2, 2, 3, "")]
    res = mean_payoff_value(GameGraph(states, edges, 0))
    assert res.values[0] == Fraction(3)
    assert res.strategy1[0] == 2


def test_oracle_equivalence_sample():
    for i in range(60):
        game = random_game(make_rng(1000 + i))
        assert mean_payoff_value(game).values[game.initial] == \
            brute_force_value(game)


def test_brute_force_guard():
    big = random_game(make_rng(1), max_states=6)
    states = [GameState(1, f"s{i}", "#", "") for i in range(13)]
    edges = [Edge(i, (i + 1) % 13, 0, "") for i in range(13)]
    with pytest.raises(TooLargeError):
        brute_force_value(GameGraph(states, edges, 0))
    brute_force_value(big)  # within the guard


def test_strategy_optimality():
    # fixing the winner's strategy and letting the loser roam freely
    # reproduces the value: re-solve the restricted game by brute force
    for i in range(25):
        game = random_game(make_rng(2000 + i), max_states=5)
        res = mean_payoff_value(game)
        for player, strat in ((1, res.strategy1), (2, res.strategy2)):
            restricted = GameGraph(
                game.states,
                [e for e in game.edges
                 if game.owner(e.src) != player or strat[e.src] == e.dst],
                game.initial)
            assert brute_force_value(restricted) == res.values[game.initial]


def test_discounted_closed_forms():
    lam = Fraction(1, 2)
    res = discounted_value(selfloop(weight=1), lam)
    assert abs(res.values[0] - 2) <= 1e-6
    res = discounted_value(forced_cycle(0, 2), lam)
    assert abs(res.values[0] - Fraction(4, 3)) <= 1e-6
    assert discounted_value(selfloop(weight=0), lam).values == [0.0]


def test_discounted_parameter_validation():
    with pytest.raises(ValueError):
        discounted_value(selfloop(), Fraction(3, 2))
    with pytest.raises(ValueError):
        discounted_value(selfloop(), Fraction(1, 2), epsilon=0)


def test_discounted_matches_exact_oracle():
    lam = Fraction(1, 3)
    for i in range(30):
        game = random_game(make_rng(3000 + i), max_states=5)
        exact = brute_force_value(game, "disc", lam=lam)
        approx = discounted_value(game, lam, Fraction(1, 10**8))
        assert abs(approx.values[game.initial] - exact) <= 1e-6


def test_refines_corpus_cases():
    int_b, int2 = corpus.load("IntB"), corpus.load("Int2")
    assert refines(int_b, int2).holds
    res = refines(int2, int_b)
    assert not res.holds and res.reason
    # precondition failure is a verdict, not an exception
    send = corpus.load("Send")
    res = refines(corpus.load("IntA"), send)
    assert not res.holds and "precondition" in res.reason


def test_refines_implies_zero_distance():
    mo = unit_interchange_model("output", {"c", "d", "e"})
    mi = unit_interchange_model("input", {"a", "b"})
    int_b = corpus.load("IntB")
    for other in ("Int1", "Int2", "Int3"):
        result = distance(int_b, mo, corpus.load(other), mi)
        assert result.boolean_refines
        assert result.value == 0


def test_distance_result_json():
    result = distance(corpus.load("IntA"),
                      unit_interchange_model("output", {"c", "d", "e"}),
                      corpus.load("Int2"),
                      unit_interchange_model("input", {"a", "b"}))
    doc = result.to_json_dict()
    assert doc["value"] == {"num": "1", "den": "2"}
    assert doc["refines"] is False
    assert doc["objective"] == "limavg"
    assert doc["game"]["states"] == len(result.game)
    assert doc["strategies"]["player2"]


def test_distance_disc_objective():
    result = distance(corpus.load("IntA"),
                      unit_interchange_model("output", {"c", "d", "e"}),
                      corpus.load("Int2"),
                      unit_interchange_model("input", {"a", "b"}),
                      objective="disc", lam=Fraction(1, 2))
    doc = result.to_json_dict()
    assert doc["objective"] == {"disc": {"lambda": "1/2",
                                         "epsilon": "1/1000000"}}
    assert result.value >= 0
    with pytest.raises(ValueError):
        distance(corpus.load("IntA"), identity_model("output"),
                 corpus.load("Int2"), identity_model("input"),
                 objective="disc")


def test_size_guard_diagnostic():
    with pytest.raises(TooLargeError) as err:
        distance(corpus.load("IntA"),
                 unit_interchange_model("output", {"c", "d", "e"}),
                 corpus.load("Int2"),
                 unit_interchange_model("input", {"a", "b"}),
                 max_states=3)
    assert "exceeds 3 states" in str(err.value)
