"""Witness extraction for Pi2 theorems and no-counter-example functionals.

Both extractors play the theorem's game against a fixed Abelard oracle and
run as a descent recursion bounded by gamma*(alpha+2), started at
gamma*(alpha+1) + gamma_0: internal stages of the strategy evaluation embed
as gamma*rho + gamma_s, and every query/guess step restarts the evaluation
one height level down.  Extraction ends at the first winning play; the
witness values are read off the normalized address of the winning literal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

from . import formulas as F
from . import games, ordinals
from .descent import DRFunction, DRStrategy, Stage, dr_trace
from .formulas import Formula
from .games import Move, Play
from .ordinals import Ordinal


class ExtractionError(RuntimeError):
    pass


@dataclass(frozen=True)
class Pi2Goal:
    """forall x exists y phi0(x, y) with phi0 a literal or exists z literal."""

    x: str
    y: str
    z: Optional[str]
    matrix: Formula  # the literal theta

    @property
    def formula(self) -> Formula:
        inner: Formula = self.matrix
        if self.z is not None:
            inner = F.Exists(self.z, inner)
        return F.Forall(self.x, F.Exists(self.y, inner))


def pi2_goal(phi: Formula) -> Pi2Goal:
    if not isinstance(phi, F.Forall) or not isinstance(phi.body, F.Exists):
        raise ExtractionError("goal must have the shape forall x exists y ...")
    body = phi.body.body
    if isinstance(body, F.Lit):
        return Pi2Goal(phi.var, phi.body.var, None, body)
    if isinstance(body, F.Exists) and isinstance(body.body, F.Lit):
        return Pi2Goal(phi.var, phi.body.var, body.var, body.body)
    raise ExtractionError("the matrix must be a literal (or one existential over a literal)")


@dataclass(frozen=True)
class NciGoal:
    """Prenex exists x1 forall y1 ... exists xk forall yk theta."""

    xs: Tuple[str, ...]
    ys: Tuple[str, ...]
    matrix: Formula

    @property
    def k(self) -> int:
        return len(self.xs)


def nci_goal(phi: Formula) -> NciGoal:
    xs: List[str] = []
    ys: List[str] = []
    node = phi
    while isinstance(node, F.Exists):
        xs.append(node.var)
        if not isinstance(node.body, F.Forall):
            raise ExtractionError("expected alternating exists/forall prefix")
        ys.append(node.body.var)
        node = node.body.body
    if not xs or not isinstance(node, F.Lit):
        raise ExtractionError("goal must be prenex exists/forall with a literal matrix")
    return NciGoal(tuple(xs), tuple(ys), node)


@dataclass
class ExtractionRun:
    value: Tuple[int, ...]
    trace: List[Stage]

    @property
    def trace_length(self) -> int:
        return len(self.trace)

    @property
    def max_ordinal(self) -> Ordinal:
        return self.trace[0].ordinal


def _winning_literal_address(play: Play) -> Tuple[int, ...]:
    """Normalized address of the latest true closed literal move (position 0
    is the goal formula)."""
    for j in range(len(play.moves) - 1, -1, -1):
        shown = games.move_formula_at(play, j)
        if isinstance(shown, F.Lit) and F.eval_literal(play.sig, shown):
            addr = games.move_address(play, j, 0)
            if addr is None:
                raise ExtractionError("the winning literal is not under the goal formula")
            if not all(isinstance(s, int) for s in addr):
                raise ExtractionError("the winning address has non-numeral selectors")
            return tuple(addr)  # type: ignore[return-value]
    raise ExtractionError("no winning literal in the final play")


def _extract(
    g: DRStrategy,
    oracle: Callable[[Play, Move], Move],
    sig: F.Signature,
    watchdog: int,
) -> ExtractionRun:
    """Shared descent loop: play G(goal) per g, answering queries through the
    oracle; bounded by gamma*(alpha+2)."""
    gam, alp = g.gamma, g.alpha
    bound = ordinals.mul(gam, ordinals.add(alp, ordinals.from_int(2)))

    def theta(rho: Ordinal, inner: Ordinal) -> Ordinal:
        return ordinals.add(ordinals.mul(gam, rho), inner)

    def start(play: Play, rho: Ordinal):
        it = g.stages(play)
        value, ordinal = next(it)
        nxt = next(it, None)
        if nxt is None:
            return (play, rho, value, ordinal, iter(()), True), theta(rho, ordinal)

        def chained(first=nxt, rest=it):
            yield first
            yield from rest

        return (play, rho, value, ordinal, chained(), False), theta(rho, ordinal)

    def g0(root: Play):
        return start(root, ordinals.add(alp, ordinals.ONE))

    def g1(root: Play, state, _ord):
        play, rho, value, ordinal, it, final = state
        if games.is_winning_play(play):
            return state, _ord  # final stage: the run is complete
        if not final:
            nxt = next(it)
            value2, ordinal2 = nxt
            peek = next(it, None)
            if peek is None:
                return (play, rho, value2, ordinal2, iter(()), True), theta(rho, ordinal2)

            def chained(first=peek, rest=it):
                yield first
                yield from rest

            return (play, rho, value2, ordinal2, chained(), False), theta(rho, ordinal2)
        move, height = g.final_of(value)
        if move is None:
            raise ExtractionError("strategy stalled before a winning play")
        if move.tag == games.QUERY:
            after_q = games.extend(play, move)
            reply = oracle(after_q, move)
            play2 = games.extend(after_q, reply)
        else:
            play2 = games.extend(play, move)
        return start(play2, height)

    def g2(state):
        play = state[0]
        if not games.is_winning_play(play):
            raise ExtractionError("descent ended before a winning play")
        return play

    dr = DRFunction(bound, g0, g1, g2)
    root = Play(sig, g.context)
    trace = dr_trace(dr, root, watchdog=watchdog)
    final_play = g2(trace[-1].value)
    return ExtractionRun(_winning_literal_address(final_play), trace)


def extract_pi2(
    g: DRStrategy,
    goal: Pi2Goal,
    n: int,
    sig: Optional[F.Signature] = None,
    watchdog: int = 2_000_000,
) -> ExtractionRun:
    """The provably-recursive-function extractor: Abelard answers the goal
    query with the instance at n; returns the y-witness value (and the trace).

    The postcondition phi0(n, value) is machine-checked by evaluation.
    """
    sig = sig if sig is not None else F.EMPTY_SIGNATURE
    if g.context != (goal.formula,):
        raise ExtractionError("strategy context must be exactly the goal formula")

    def oracle(play: Play, query: Move) -> Move:
        shown = games.move_formula_at(play, len(play.moves) - 1)
        if shown != goal.formula:
            raise ExtractionError(f"unexpected query {F.render_formula(shown)}")
        return Move(games.REPLY, games.MoveRef(len(play.moves) - 1), n)

    run = _extract(g, oracle, sig, watchdog)
    addr = run.value
    if addr[0] != n:
        raise ExtractionError("the winning branch is not the requested instance")
    y_val = addr[1]
    env = {goal.x: F.numeral(n), goal.y: F.numeral(y_val)}
    if goal.z is not None:
        env[goal.z] = F.numeral(addr[2])
    if not F.eval_literal(sig, F.subst_formula(goal.matrix, env)):
        raise ExtractionError("extracted witness fails the matrix literal")
    return ExtractionRun((y_val,), run.trace)


def extract_nci(
    g: DRStrategy,
    goal: NciGoal,
    fs: Sequence[Callable[..., int]],
    sig: Optional[F.Signature] = None,
    watchdog: int = 2_000_000,
) -> ExtractionRun:
    """The no-counter-example extractor: the counterexample functions drive
    Abelard's replies; returns the witness values x1..xk.

    The postcondition theta(x1, f1(x1), ..., xk, fk(x1..xk)) is machine-checked.
    """
    sig = sig if sig is not None else F.EMPTY_SIGNATURE
    if len(fs) != goal.k:
        raise ExtractionError("one counterexample function per exists block is required")
    if g.context != (goal_formula(goal),):
        raise ExtractionError("strategy context must be exactly the goal formula")

    def oracle(play: Play, query: Move) -> Move:
        addr = games.move_address(play, len(play.moves) - 1, 0)
        if addr is None or len(addr) % 2 != 1:
            raise ExtractionError("query does not sit on a forall block of the goal")
        j = (len(addr) + 1) // 2
        args = tuple(addr[2 * i] for i in range(j))
        m = fs[j - 1](*args)
        if not isinstance(m, int) or m < 0:
            raise ExtractionError("counterexample functions must return naturals")
        return Move(games.REPLY, games.MoveRef(len(play.moves) - 1), m)

    run = _extract(g, oracle, sig, watchdog)
    addr = run.value
    if len(addr) != 2 * goal.k:
        raise ExtractionError("the winning literal does not close the full prefix")
    xs = tuple(addr[2 * i] for i in range(goal.k))
    env = {}
    for i in range(goal.k):
        env[goal.xs[i]] = F.numeral(xs[i])
        env[goal.ys[i]] = F.numeral(fs[i](*xs[: i + 1]))
    if not F.eval_literal(sig, F.subst_formula(goal.matrix, env)):
        raise ExtractionError("extracted witnesses fail the matrix literal")
    return ExtractionRun(xs, run.trace)


def goal_formula(goal: NciGoal) -> Formula:
    node: Formula = goal.matrix
    for x, y in zip(reversed(goal.xs), reversed(goal.ys)):
        node = F.Exists(x, F.Forall(y, node))
    return node
