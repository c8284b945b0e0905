import random

import pytest

from pagames import debate as DB
from pagames import descent as D
from pagames import formulas as F
from pagames import games as G
from pagames import interaction as I
from pagames import ordinals as O

sig = F.EMPTY_SIGNATURE


def f(text):
    return F.parse_formula(text)


# the worked scenario: Gamma = {exists x (x = 1)}, phi = exists y (y = 1),
# f0 queries the negated side formula then mirrors the refutation into Gamma,
# f1 guesses y := 1 immediately

GAMMA = (f("(exists x (= x 1))"),)
PHI = f("(exists y (= y 1))")


def make_f0():
    ctx = GAMMA + (F.negate(PHI),)

    def move(p):
        if len(p.moves) == 0:
            return G.Move(G.QUERY, G.CtxRef(1))
        if len(p.moves) == 2 and p.moves[1].tag == G.REPLY:
            return G.Move(G.GUESS, G.CtxRef(0), F.numeral(p.moves[1].selector))
        return None

    return D.simple_strategy(ctx, move, lambda p: O.from_int(3 - len(p.moves)), O.from_int(3), witnesses=(F.Var("x"), F.Var("y")))


def make_f1():
    ctx = GAMMA + (PHI,)

    def move(p):
        if len(p.moves) == 0:
            return G.Move(G.GUESS, G.CtxRef(1), F.numeral(1))
        return None

    return D.simple_strategy(ctx, move, lambda p: O.from_int(3 - len(p.moves)), O.from_int(3), witnesses=(F.Var("x"), F.Var("y")))


def run_cases(debate, input_moves, check_level=2):
    st = debate.initial_state()
    cases = []
    while True:
        res = debate.step(st, input_moves)
        DB.check_state(debate, res.state, check_level, prev=st, input_moves=input_moves)
        cases.append(res.case)
        if isinstance(res, DB.StepStop):
            return cases, res
        st = res.state


def test_worked_scenario_case_sequence():
    debate = DB.Debate(sig, GAMMA, PHI, make_f0().move, make_f1().move)
    cases, stop = run_cases(debate, ())
    assert cases == ["C.2", "D.2.0", "C.2", "B.1", "C.1.1"]
    shown = G.move_formula(stop.state.gamma_play, stop.move)
    assert stop.move.tag == G.GUESS and shown == f("(= 1 1)")


def test_crossing_reply_is_the_numeral_refutation():
    debate = DB.Debate(sig, GAMMA, PHI, make_f0().move, make_f1().move)
    st = debate.initial_state()
    for _ in range(4):
        st = debate.step(st, ()).state
    # after B.1, p_2 = p_0 extended with Abelard's reply (neq 1 1)
    p2 = st.leading
    assert len(p2.moves) == 2
    assert G.move_formula_at(p2, 1) == f("(neq 1 1)")


def test_case_A_returns_the_inner_move():
    gamma = (f("(= 0 0)"),)
    phi = f("(exists y (= y 1))")
    f0 = D.simple_strategy(gamma + (F.negate(phi),), lambda p: None, lambda p: O.ZERO, O.ZERO)
    f1 = D.simple_strategy(gamma + (phi,), lambda p: None, lambda p: O.ZERO, O.ZERO)
    debate = DB.Debate(sig, gamma, phi, f0.move, f1.move)
    res = debate.step(debate.initial_state(), ())
    assert isinstance(res, DB.StepStop) and res.case == "A"
    cutf = DB.cut(f0.move, f1.move, sig, gamma, phi)
    assert cutf(G.Play(sig, gamma)) == f0.move(G.Play(sig, gamma + (F.negate(phi),)))  # both None


def test_d11_stop_on_illegal_gamma_reply():
    gamma = (f("(forall x (= x (s x)))"),)  # queried by f0; all replies false
    phi = f("(exists y (= y 1))")
    ctx0 = gamma + (F.negate(phi),)

    def f0_move(p):
        if len(p.moves) == 0:
            return G.Move(G.QUERY, G.CtxRef(0))
        return None

    f0 = D.simple_strategy(ctx0, f0_move, lambda p: O.from_int(2 - len(p.moves)), O.from_int(2))
    f1 = make_f1()
    debate = DB.Debate(sig, gamma, phi, f0.move, lambda p: None)
    # input: the mirrored query, then an illegal reply (term selector)
    query = G.Move(G.QUERY, G.CtxRef(0))
    bad_reply = G.Move(G.REPLY, G.MoveRef(0), F.numeral(2))
    cases, stop = run_cases(debate, (query, bad_reply), check_level=1)
    assert cases == ["C.1.2", "D.1.1"]
    assert stop.move is None


def test_d12_consumes_legal_gamma_reply():
    gamma = (f("(forall x (= x (s x)))"),)
    phi = f("(exists y (= y 1))")
    ctx0 = gamma + (F.negate(phi),)

    def f0_move(p):
        if len(p.moves) == 0:
            return G.Move(G.QUERY, G.CtxRef(0))
        if len(p.moves) == 2:
            return G.Move(G.QUERY, G.CtxRef(1))
        return None

    f0 = D.simple_strategy(ctx0, f0_move, lambda p: O.from_int(4 - len(p.moves)), O.from_int(4))
    debate = DB.Debate(sig, gamma, phi, f0.move, make_f1().move)
    query = G.Move(G.QUERY, G.CtxRef(0))
    reply = G.Move(G.REPLY, G.MoveRef(0), 5)
    st = debate.initial_state()
    r1 = debate.step(st, (query, reply))
    r2 = debate.step(r1.state, (query, reply))
    assert (r1.case, r2.case) == ("C.1.2", "D.1.2")
    assert len(r2.state.gamma_play.moves) == 2
    assert len(r2.state.leading.moves) == 2


def test_monotone_round_sequences():
    debate = DB.Debate(sig, GAMMA, PHI, make_f0().move, make_f1().move)
    full_input = (G.Move(G.GUESS, G.CtxRef(0), F.numeral(1)),)
    states_short = []
    st = debate.initial_state()
    while True:
        res = debate.step(st, ())
        states_short.append(res.state)
        if isinstance(res, DB.StepStop):
            break
        st = res.state
    st = debate.initial_state()
    states_long = []
    while True:
        res = debate.step(st, full_input)
        states_long.append(res.state)
        if isinstance(res, DB.StepStop):
            break
        st = res.state
    # the shorter input's rounds are a prefix of the longer input's rounds
    for a, b in zip(states_short, states_long):
        assert a.closed == b.closed[: len(a.closed)]


def test_continuity():
    # the answer for any input equals the answer for the finite prefix its
    # own debate consumed
    f0, f1 = make_f0(), make_f1()
    debate = DB.Debate(sig, GAMMA, PHI, f0.move, f1.move)
    cutf = DB.cut(f0.move, f1.move, sig, GAMMA, PHI)
    rng = random.Random(4)
    checked = 0
    for _ in range(50):
        p = G.Play(sig, GAMMA)
        for _ in range(rng.randint(0, 3)):
            legal = list(G.enumerate_moves(p, nat_bound=2))
            if not legal:
                break
            p = G.extend(p, rng.choice(legal))
        stop = debate.run(p.moves)
        consumed = stop.state.gamma_play.moves
        assert consumed == p.moves[: len(consumed)]
        assert cutf(p) == cutf(G.Play(sig, GAMMA, consumed))
        checked += 1
    assert checked == 50


def test_cut_strategy_wins_against_random_opponents():
    f0, f1 = make_f0(), make_f1()
    cutf = DB.cut(f0.move, f1.move, sig, GAMMA, PHI)
    from conftest import random_abelard

    rng = random.Random(5)
    for _ in range(100):
        out = G.simulate(cutf, random_abelard(rng), G.Play(sig, GAMMA), fuel=50)
        assert isinstance(out, G.Won)


def test_cut_dr_declared_bound_and_delta_descent():
    f0, f1 = make_f0(), make_f1()
    trace = []
    s = DB.cut_dr(f0, f1, sig, GAMMA, PHI, check_level=2, trace_sink=trace)
    nu = F.formula_depth(PHI)
    assert nu == 1
    eta = O.mul(O.ONE, O.from_int(5))
    assert s.gamma == s.alpha == O.c_scalar(nu, eta) == O.from_int(59049)
    move, height = s.result(G.Play(sig, GAMMA))
    assert move.tag == G.GUESS
    deltas = [O.parse_ordinal(r.delta) for r in trace]
    for a, b in zip(deltas, deltas[1:]):
        assert O.cmp(b, a) != O.GREATER
    stage_records = [r for r in trace if r.case not in ("A", "C.1.1", "D.1.1")]
    ds = [O.parse_ordinal(r.delta) for r in stage_records]
    for a, b in zip(ds, ds[1:]):
        assert O.cmp(b, a) == O.LESS
    assert all(O.cmp(d, O.from_int(59049)) == O.LESS for d in deltas)
    # the recorded u's are valid ordinal interaction sequences throughout
    datum = [r.u for r in trace]
    assert len(datum) == len(trace)


def test_cut_dr_stage_ordinals_strictly_decrease():
    f0, f1 = make_f0(), make_f1()
    s = DB.cut_dr(f0, f1, sig, GAMMA, PHI)
    stages = list(s.stages(G.Play(sig, GAMMA)))
    for (_, a), (_, b) in zip(stages, stages[1:]):
        assert O.cmp(b, a) == O.LESS
    # and each stage's u validates as an ordinal interaction sequence below eta
    eta = O.from_int(5)
    for value, _ in stages:
        u = DB._u_of(value, O.ONE)
        assert I.ois_validate(u)
        assert I.ois_below(u, eta)


def test_internal_error_is_loud():
    # a corrupted state (pointer sequence broken) trips the checker
    f0, f1 = make_f0(), make_f1()
    debate = DB.Debate(sig, GAMMA, PHI, f0.move, f1.move)
    st = debate.initial_state()
    for _ in range(3):
        st = debate.step(st, ()).state
    bad = DB.DebateState(((st.closed[0][0], (1,), 0),), st.leading, st.gamma_play, st.stage)
    with pytest.raises(DB.DebateInternalError):
        DB.check_state(debate, bad, level=1)


def test_fuel_error():
    # f0 keeps querying a Gamma formula whose replies never end the game
    gamma = (f("(forall x (= x (s x)))"),)
    phi = f("(exists y (= y 1))")
    ctx0 = gamma + (F.negate(phi),)

    def stubborn(p):
        return G.Move(G.QUERY, G.CtxRef(0))

    debate = DB.Debate(sig, gamma, phi, stubborn, make_f1().move)
    moves = []
    p = G.Play(sig, gamma)
    for k in range(40):
        q = G.Move(G.QUERY, G.CtxRef(0))
        p = G.extend(p, q)
        moves.append(q)
        r = G.Move(G.REPLY, G.MoveRef(len(p.moves) - 1), 0)
        p = G.extend(p, r)
        moves.append(r)
    with pytest.raises(DB.DebateFuelError):
        debate.run(tuple(moves), fuel=30)
