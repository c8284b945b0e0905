import math
import random

import pytest

from pagames import descent as D
from pagames import formulas as F
from pagames import games as G
from pagames import ordinals as O


def test_factorial_matches_direct():
    g = D.factorial_dr()
    for n in range(9):
        assert D.dr_eval(g, n) == math.factorial(n)
    assert g.bound == O.OMEGA


def test_factorial_trace_roles():
    tr = D.dr_trace(D.factorial_dr(), 5)
    assert len(tr) == 6
    assert tr[0].role == "initial"
    assert tr[-1].role == "final"
    assert all(s.role == "internal" for s in tr[1:-1])


def test_immediate_repeat_single_stage():
    g = D.DRFunction(O.OMEGA, lambda x: (x, O.from_int(3)), lambda x, y, a: (y, a), lambda y: y)
    tr = D.dr_trace(g, 42)
    assert len(tr) == 1 and tr[0].role == "final"
    assert D.dr_eval(g, 42) == 42


def test_trace_strictly_decreases():
    for n in (0, 3, 6):
        tr = D.dr_trace(D.factorial_dr(), n)
        for a, b in zip(tr, tr[1:]):
            assert O.cmp(b.ordinal, a.ordinal) == O.LESS


def test_nested_mul_as_omega_squared():
    g = D.nested_mul_dr()
    assert g.bound == O.omega_pow(O.from_int(2))
    for m in range(7):
        for n in range(7):
            assert D.dr_eval(g, (m, n)) == m * n
    for a, b in zip(D.dr_trace(g, (3, 2)), D.dr_trace(g, (3, 2))[1:]):
        assert O.cmp(b.ordinal, a.ordinal) == O.LESS


def test_compose_identity_factorial():
    ident = D.DRFunction(O.ONE, lambda x: (x, O.ZERO), lambda x, y, a: (y, a), lambda y: y)
    comp = D.dr_compose(ident, D.factorial_dr())  # identity after factorial
    assert comp.bound == O.add(O.ONE, O.OMEGA)  # = w
    assert comp.bound == O.OMEGA
    for n in range(7):
        assert D.dr_eval(comp, n) == math.factorial(n)
    comp2 = D.dr_compose(D.factorial_dr(), ident)
    assert comp2.bound == O.add(O.OMEGA, O.ONE)
    for n in range(7):
        assert D.dr_eval(comp2, n) == math.factorial(n)


def test_compose_bound_is_exact_addition():
    rng = random.Random(1)
    from conftest import random_ordinal

    for _ in range(50):
        a, b = random_ordinal(rng), random_ordinal(rng)
        if a.is_zero() or b.is_zero():
            continue
        ga = D.DRFunction(a, lambda x: (x, O.ZERO), lambda x, y, o: (y, o), lambda y: y)
        gb = D.DRFunction(b, lambda x: (x, O.ZERO), lambda x, y, o: (y, o), lambda y: y)
        assert D.dr_compose(ga, gb).bound == O.add(a, b)


def test_compose_trace_lengths_add():
    f = D.factorial_dr()
    comp = D.dr_compose(f, f)
    for n in (2, 3):
        inner = len(D.dr_trace(f, n))
        outer = len(D.dr_trace(f, math.factorial(n)))
        assert len(D.dr_trace(comp, n)) == inner + outer


def test_watchdog_fires_on_broken_descent():
    bad = D.DRFunction(
        O.OMEGA,
        lambda x: (0, O.OMEGA),  # not below the bound
        lambda x, y, a: (y, a),
        lambda y: y,
    )
    with pytest.raises(D.DescentError):
        D.dr_eval(bad, 0)

    looping = D.DRFunction(
        O.omega_pow(O.OMEGA),
        lambda x: (0, O.omega_pow(O.from_int(2))),
        lambda x, y, a: (y + 1, O.add(O.mul(O.OMEGA, O.from_int(10**9 - y)), O.ZERO)),
        lambda y: y,
    )
    with pytest.raises(D.WatchdogError):
        D.dr_eval(looping, 0, watchdog=100)


def test_dr_strategy_check_basic_axiom():
    sig = F.EMPTY_SIGNATURE
    ctx = (F.parse_formula("(= 0 0)"),)
    s = D.simple_strategy(ctx, lambda p: None, lambda p: O.ZERO, O.ZERO)
    report = D.dr_strategy_check(s, [G.Play(sig, ctx)])
    assert report.ok
    assert s.gamma == O.ONE and s.alpha == O.ZERO


def test_dr_strategy_check_flags_foreign_witness():
    sig = F.EMPTY_SIGNATURE
    ctx = (F.parse_formula("(exists x (= x 1))"),)
    move = G.Move(G.GUESS, G.CtxRef(0), F.numeral(1))
    s = D.simple_strategy(ctx, lambda p: move, lambda p: O.from_int(1 - len(p.moves)), O.ONE, witnesses=(F.App("add", (F.Var("a"), F.Var("a"))),))
    play = G.extend(G.Play(sig, ctx), move)
    report = D.dr_strategy_check(s, [play])
    assert not report.ok and report.guess_violations
    s2 = D.simple_strategy(ctx, lambda p: move, lambda p: O.from_int(1 - len(p.moves)), O.ONE, witnesses=(F.Var("x"),))
    assert D.dr_strategy_check(s2, [play]).ok


def test_is_numeral_instance():
    sig = F.EMPTY_SIGNATURE
    tmpl = F.parse_term("(add z z)")
    assert D.is_numeral_instance(sig, tmpl, F.parse_term("(add 3 3)"))
    assert not D.is_numeral_instance(sig, tmpl, F.parse_term("(add 3 (s x))"))
    assert not D.is_numeral_instance(sig, tmpl, F.parse_term("(mul 3 3)"))
    assert D.is_numeral_instance(sig, F.Var("y"), F.numeral(9))
    assert D.is_numeral_instance(sig, F.numeral(2), F.numeral(2))
    assert not D.is_numeral_instance(sig, F.numeral(2), F.numeral(3))
