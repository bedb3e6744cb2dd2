import pytest

from ifsim import AlphabetPreconditionError, build_boolean_game, \
    build_quantitative_game, corpus, export_dot, identity_model, \
    maximal_simulation_relation, refines, unit_interchange_model, validate_bia
from ifsim.game import ERR_STATE
from conftest import make_rng, random_bia


def test_alphabet_precondition():
    small = validate_bia({"name": "s", "inputs": ["a"], "outputs": [],
                          "states": ["q"], "initial": "q", "transitions": []})
    big = validate_bia({"name": "b", "inputs": ["a", "b"], "outputs": [],
                        "states": ["q"], "initial": "q", "transitions": []})
    build_boolean_game(small, big)  # inputs may grow to the right
    with pytest.raises(AlphabetPreconditionError):
        build_boolean_game(big, small)


def test_boolean_game_shape():
    game = build_boolean_game(corpus.load("IntB"), corpus.load("Int2"))
    labels = {s.label() for s in game.states}
    assert "(q0,#,q0)" in labels
    assert ERR_STATE not in game.states  # Player 2 never gets stuck
    # every edge of a total game leaves a materialized state
    assert all(game.successors[i] for i in range(len(game)))


def test_player2_dead_end_goes_to_err():
    game = build_boolean_game(corpus.load("Int2"), corpus.load("IntB"))
    err = game.index[ERR_STATE]
    assert any(e.dst == err for e in game.edges)
    # the sink absorbs
    assert [e.dst for e in game.successors[err]] == [err]


def test_player1_dead_end_selfloops():
    stuck = validate_bia({"name": "stuck", "inputs": [], "outputs": [],
                          "states": ["q"], "initial": "q", "transitions": []})
    game = build_boolean_game(stuck, stuck)
    assert [e.dst for e in game.successors[game.initial]] == [game.initial]


def test_quantitative_game_weights():
    mo = unit_interchange_model("output", {"c", "d", "e"})
    mi = unit_interchange_model("input", {"a", "b"})
    game = build_quantitative_game(corpus.load("IntA"), mo,
                                   corpus.load("Int1"), mi)
    for e in game.edges:
        if game.states[e.src].is_err:
            assert e.weight == 1  # max finite model entry, undoubled
        elif game.owner(e.src) == 1:
            assert e.weight == 0
        else:
            assert e.weight % 2 == 0


def test_identity_models_match_boolean_game():
    left, right = corpus.load("IntB"), corpus.load("Int2")
    bool_game = build_boolean_game(left, right)
    quant = build_quantitative_game(left, identity_model("output"),
                                    right, identity_model("input"))
    assert {(s.owner, s.label()) for s in quant.states} == \
        {(s.owner, s.label()) for s in bool_game.states}
    assert all(e.weight == 0 for e in quant.edges)


def test_size_bound():
    left, right = corpus.load("IntA"), corpus.load("Int1")
    game = build_quantitative_game(
        left, unit_interchange_model("output", {"c", "d", "e"}),
        right, unit_interchange_model("input", {"a", "b"}))
    bound = (len(left.states) * len(right.states)
             * (len(left.alphabet) + len(right.alphabet) + 1) + 1)
    assert len(game) <= bound


def test_simulation_relation_matches_game_verdict():
    # fixpoint relation and game-solved refinement agree on random pairs
    for i in range(100):
        rnd = make_rng(9000 + i)
        left = random_bia(rnd, "L", {"a", "b"}, {"x", "y"}, n_states=3)
        right = random_bia(rnd, "R", {"a", "b"}, {"x", "y"}, n_states=3)
        rel = maximal_simulation_relation(left, right)
        res = refines(left, right)
        assert res.holds == ((left.initial, right.initial) in rel)
        assert res.relation == rel


def test_export_dot_deterministic():
    game = build_boolean_game(corpus.load("IntB"), corpus.load("Int2"))
    dot = export_dot(game)
    assert dot == export_dot(game)
    assert dot.startswith("digraph game {")
    assert "shape=box" in dot and "shape=ellipse" in dot
    assert "(q0,#,q0)" in dot


def test_err_state_doubled_in_dot():
    game = build_boolean_game(corpus.load("Int2"), corpus.load("IntB"))
    assert "peripheries=2" in export_dot(game)
