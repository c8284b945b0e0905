"""The canonical debate state machine and the cut strategy.

A debate runs two Eloisa strategies against each other: f0 defends
Gamma, not-phi and f1 defends Gamma, phi, with every Abelard move in
either side game dictated by an earlier Eloisa move on the other side.
The machine executes one construction case per step:

  A       stop: the Gamma-side play is winning
  B.1     the leading play ends in a winning side guess; cross sides
  C.1.1   stop: Eloisa's Gamma-side move diverges from the input (or the
          input is exhausted)
  C.1.2   Eloisa's Gamma-side move matches the input; append to both
  C.2     Eloisa's side move; append to the leading play
  D.1.1   stop: no (or an illegal) input reply to a Gamma-side query
  D.1.2   consume the next input move as Abelard's Gamma-side reply
  D.2.1   Abelard replies on the side per the accumulated partial strategy
  D.2.2   Abelard cannot reply; cross sides
  D.2.0   the n = 0 variant of D.2: open the first phi-side play

The EXIT branches (B.2 / D.2.3) are internal errors: the verification
invariants prove them unreachable from valid states, so hitting one means
a bug, never a user condition.

cut(f0, f1) evaluates the debate on an input play and answers with the
final leading strategy's move; cut_dr additionally tracks the ordinal
interaction sequence u of inner-strategy stages and the height
delta = c_height(nu, eta, u), yielding a descent recursive strategy with
declared bound c_nu(eta), eta = gamma*(alpha+2).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from . import formulas as F
from . import games, interaction, ordinals
from .descent import DRFunction, DRStrategy, dr_eval
from .formulas import Formula, NodeAddress
from .games import CtxRef, Move, MoveRef, Play
from .interaction import OrdIntSeq
from .ordinals import LESS, Ordinal


class DebateInternalError(RuntimeError):
    """A violated invariant surfaced (an EXIT case or a non-decreasing delta)."""


class DebateFuelError(RuntimeError):
    pass


@dataclass(frozen=True)
class DebateState:
    closed: Tuple[Tuple[Play, NodeAddress, int], ...]  # (p_m, sigma_m, i_m), m < n
    leading: Play  # p_n
    gamma_play: Play  # the G(Gamma) play accumulated so far
    stage: int

    @property
    def n(self) -> int:
        return len(self.closed)

    def plays(self) -> Tuple[Play, ...]:
        return tuple(p for p, _, _ in self.closed) + (self.leading,)

    def pointers(self) -> Tuple[int, ...]:
        return tuple(i for _, _, i in self.closed)

    def nodes(self) -> Tuple[NodeAddress, ...]:
        return tuple(s for _, s, _ in self.closed)


@dataclass(frozen=True)
class StepStop:
    state: DebateState
    case: str
    move: Optional[Move]  # in G(Gamma) coordinates when available


@dataclass(frozen=True)
class StepContinue:
    state: DebateState
    case: str


StepResult = "StepStop | StepContinue"


class Debate:
    """The canonical debate for f0, f1, Gamma, phi (phi a positive formula)."""

    def __init__(
        self,
        sig: F.Signature,
        gamma: Sequence[Formula],
        phi: Formula,
        f0: games.MoveFn,
        f1: games.MoveFn,
    ):
        if not F.is_positive(phi):
            raise ValueError("the cut side formula must be positive (or/exists)")
        self.sig = sig
        self.gamma = tuple(gamma)
        self.phi = phi
        self.side_pos = len(self.gamma)
        self.contexts = (self.gamma + (F.negate(phi),), self.gamma + (phi,))
        self.strategies = (f0, f1)

    # -- play helpers -----------------------------------------------------

    def side_context(self, m: int) -> Tuple[Formula, ...]:
        return self.contexts[m % 2]

    def initial_state(self) -> DebateState:
        p0 = Play(self.sig, self.contexts[0])
        return DebateState((), p0, Play(self.sig, self.gamma), 0)

    def side_formula_at(self, m: int, addr: NodeAddress) -> Formula:
        sub = F.subformula_at(self.phi, addr)
        return sub if m % 2 == 1 else F.negate(sub)

    def _addr_of_last(self, play: Play) -> Optional[NodeAddress]:
        return games.move_address(play, len(play.moves) - 1, self.side_pos)

    # -- one construction step --------------------------------------------

    def step(
        self,
        st: DebateState,
        input_moves: Sequence[Move],
        move_provider: Optional[Callable[[], Optional[Move]]] = None,
    ) -> "StepStop | StepContinue":
        """Execute exactly one case.  move_provider supplies f_i(p_n) when a
        case needs it (defaults to calling the stored strategies)."""
        n = st.n
        i = n % 2

        def provide() -> Optional[Move]:
            if move_provider is not None:
                return move_provider()
            return self.strategies[i](st.leading)

        bump = st.stage + 1

        # Case A
        if games.is_winning_play(st.gamma_play):
            return StepStop(replace(st, stage=bump), "A", self._gamma_anchored(st, provide()))

        # Case B
        if games.is_winning_play(st.leading):
            if n == 0:
                raise DebateInternalError("EXIT: p_0 winning while the Gamma play is not")
            return self._case_B(st, bump)

        if games.whose_turn(st.leading) == "eloisa":
            a = provide()
            if a is None:
                raise games.BrokenStrategyError("inner strategy has no move at its turn")
            return self._case_C(st, input_moves, a, bump)
        return self._case_D(st, input_moves, bump)

    def _case_B(self, st: DebateState, bump: int) -> StepContinue:
        n, play = st.n, st.leading
        last = play.moves[-1]
        sigma = self._addr_of_last(play)
        if last.tag != games.GUESS or sigma is None:
            raise DebateInternalError("EXIT at B: winning last move is not a side guess")
        shown = games.move_formula_at(play, len(play.moves) - 1)
        if not (isinstance(shown, F.Lit) and F.eval_literal(self.sig, shown)):
            raise DebateInternalError("EXIT at B: last move is not a winning literal")
        m = self._unique_pred(st, sigma)
        if m is None:
            raise DebateInternalError("EXIT at B: no unique minimal predecessor in V(n)")
        return self._open(st, sigma, m, bump, "B.1")

    def _case_C(self, st: DebateState, input_moves: Sequence[Move], a: Move, bump: int) -> "StepStop | StepContinue":
        addr = games.prospective_address(st.leading, a, self.side_pos)
        if addr is None:
            # Gamma side
            a_gamma = games.transplant(a, st.leading, st.gamma_play)
            l = len(st.gamma_play.moves)
            matches = False
            if l < len(input_moves):
                try:
                    matches = games.moves_match(st.leading, a, st.gamma_play, input_moves[l])
                except games.GameError:
                    matches = False
            if not matches:
                return StepStop(replace(st, stage=bump), "C.1.1", a_gamma)
            new_leading = games.extend(st.leading, a)
            new_gamma = games.extend(st.gamma_play, input_moves[l])
            return StepContinue(DebateState(st.closed, new_leading, new_gamma, bump), "C.1.2")
        new_leading = games.extend(st.leading, a)
        return StepContinue(DebateState(st.closed, new_leading, st.gamma_play, bump), "C.2")

    def _case_D(self, st: DebateState, input_moves: Sequence[Move], bump: int) -> "StepStop | StepContinue":
        n, play = st.n, st.leading
        sigma = self._addr_of_last(play)
        if sigma is None:
            # D.1: Gamma-side query
            l = len(st.gamma_play.moves)
            if l >= len(input_moves) or not games.is_legal_move(st.gamma_play, input_moves[l]):
                return StepStop(replace(st, stage=bump), "D.1.1", None)
            b = input_moves[l]
            new_gamma = games.extend(st.gamma_play, b)
            new_leading = games.extend(play, games.transplant(b, st.gamma_play, play))
            return StepContinue(DebateState(st.closed, new_leading, new_gamma, bump), "D.1.2")
        # D.2: side query at sigma
        if n == 0:
            if sigma != ():
                raise DebateInternalError("EXIT: p_0 queried a proper side subformula")
            closed = st.closed + ((play, (), 0),)
            p1 = Play(self.sig, self.contexts[1])
            return StepContinue(DebateState(closed, p1, st.gamma_play, bump), "D.2.0")
        m = self._unique_enclosing(st, sigma)
        if m is not None:
            sigma_m = st.closed[m][1]
            sel = sigma_m[len(sigma)]
            reply = Move(games.REPLY, MoveRef(len(play.moves) - 1), sel)
            new_leading = games.extend(play, reply)
            return StepContinue(DebateState(st.closed, new_leading, st.gamma_play, bump), "D.2.1")
        m = self._unique_pred(st, sigma)
        if m is not None:
            return self._open(st, sigma, m, bump, "D.2.2")
        raise DebateInternalError("EXIT at D.2.3: no reply and no crossing node")

    def _open(self, st: DebateState, sigma: NodeAddress, m: int, bump: int, case: str) -> StepContinue:
        """Close the leading play at (sigma, m) and open p_{n+1} = p_m b."""
        p_m, sigma_m, _ = st.closed[m]
        sel = sigma[len(sigma_m)]
        reply = Move(games.REPLY, MoveRef(len(p_m.moves) - 1), sel)
        new_leading = games.extend(p_m, reply)
        closed = st.closed + ((st.leading, sigma, m),)
        return StepContinue(DebateState(closed, new_leading, st.gamma_play, bump), case)

    def _unique_pred(self, st: DebateState, sigma: NodeAddress) -> Optional[int]:
        """The unique m in V(n) with sigma_m a minimal-extension predecessor of sigma."""
        V = interaction.view_V(st.pointers(), st.n)
        hits = [m for m in V if F.minimal_extension(self.phi, st.closed[m][1], sigma)]
        return hits[0] if len(hits) == 1 else None

    def _unique_enclosing(self, st: DebateState, sigma: NodeAddress) -> Optional[int]:
        """The unique m in V(n), m > 0, with sigma_{i_m} <= sigma < sigma_m."""
        V = interaction.view_V(st.pointers(), st.n)
        pointers = st.pointers()
        hits = []
        for m in V:
            if m <= 0:
                continue
            sigma_m = st.closed[m][1]
            sigma_im = st.closed[pointers[m]][1]
            if (
                sigma[: len(sigma_im)] == sigma_im
                and len(sigma) < len(sigma_m)
                and sigma_m[: len(sigma)] == sigma
            ):
                hits.append(m)
        return hits[0] if len(hits) == 1 else None

    def _gamma_anchored(self, st: DebateState, a: Optional[Move]) -> Optional[Move]:
        if a is None:
            return None
        try:
            return games.transplant(a, st.leading, st.gamma_play)
        except games.GameError:
            return None

    # -- full runs ---------------------------------------------------------

    def run(
        self,
        input_moves: Sequence[Move],
        fuel: int = 100_000,
        check_level: int = 0,
        on_step: Optional[Callable[["StepStop | StepContinue"], None]] = None,
    ) -> StepStop:
        st = self.initial_state()
        if check_level:
            check_state(self, st, check_level)
        for _ in range(fuel):
            result = self.step(st, input_moves)
            if check_level:
                check_state(self, result.state, check_level, prev=st, input_moves=input_moves)
            if on_step is not None:
                on_step(result)
            if isinstance(result, StepStop):
                return result
            st = result.state
        raise DebateFuelError(f"debate did not stop within {fuel} steps")


def cut(
    f0: games.MoveFn,
    f1: games.MoveFn,
    sig: F.Signature,
    gamma: Sequence[Formula],
    phi: Formula,
    fuel: int = 100_000,
    check_level: int = 0,
) -> games.MoveFn:
    """The strategy for G(Gamma) computed by debating f0 against f1.

    Deterministic and continuous: the answer depends only on the finite
    input prefix the debate actually consumed.
    """
    debate = Debate(sig, gamma, phi, f0, f1)
    cache: Dict[Tuple[Move, ...], Optional[Move]] = {}

    def strategy(play: Play) -> Optional[Move]:
        key = play.moves
        if key not in cache:
            cache[key] = debate.run(play.moves, fuel=fuel, check_level=check_level).move
        return cache[key]

    return strategy


# ---------------------------------------------------------------------------
# Invariant bundle of the verification lemma


def check_state(
    debate: Debate,
    st: DebateState,
    level: int = 1,
    prev: Optional[DebateState] = None,
    input_moves: Optional[Sequence[Move]] = None,
) -> None:
    """Re-check the invariant bundle (a)-(h); raises DebateInternalError.

    Level 1 checks the cheap structural clauses; level 2 additionally
    re-validates play legality move by move and non-winning proper prefixes.
    """
    phi, side_pos = debate.phi, debate.side_pos
    plays = st.plays()
    pointers = st.pointers()
    nodes = st.nodes()
    n = st.n

    def fail(msg: str) -> None:
        raise DebateInternalError(f"invariant violated at stage {st.stage}: {msg}")

    # (b) node parity and last-move shape of closed plays
    if n > 0 and nodes[0] != ():
        fail("sigma_0 is not the root")
    for m in range(n):
        p_m, sigma_m = plays[m], nodes[m]
        if F.depth(phi, sigma_m) % 2 != m % 2:
            fail(f"sigma_{m} has the wrong parity")
        if not F.is_minimal(phi, sigma_m):
            fail(f"sigma_{m} is not minimal")
        if not p_m.moves:
            continue
        last_idx = len(p_m.moves) - 1
        last = p_m.moves[last_idx]
        addr = games.move_address(p_m, last_idx, side_pos)
        if addr != sigma_m:
            fail(f"p_{m} does not end at sigma_{m}")
        shown = games.move_formula_at(p_m, last_idx)
        want = debate.side_formula_at(m, sigma_m)
        # guess witnesses are raw terms while addresses are value-normalized
        if F.normalize_values(debate.sig, shown) != F.normalize_values(debate.sig, want):
            fail(f"p_{m} last move displays the wrong formula")
        if last.tag == games.GUESS:
            if not (isinstance(shown, F.Lit) and F.eval_literal(debate.sig, shown)):
                fail(f"p_{m} ends in a non-winning guess")
        elif last.tag != games.QUERY:
            fail(f"p_{m} ends in a reply")

    # (c) interaction sequence, play extension, node extension
    if not interaction.is_interaction(pointers):
        fail("pointers do not form an interaction sequence")
    for m in range(1, n):
        if not plays[pointers[m]].extended_by(plays[m + 1]) or len(plays[pointers[m]].moves) >= len(plays[m + 1].moves):
            fail(f"p_{m + 1} does not properly extend p_(i_{m})")
        if not F.minimal_extension(phi, nodes[pointers[m]], nodes[m]):
            fail(f"sigma_(i_{m}) is not a minimal predecessor of sigma_{m}")

    # (d) the Gamma play is a prefix of the input
    if input_moves is not None:
        l = len(st.gamma_play.moves)
        if tuple(st.gamma_play.moves) != tuple(input_moves[:l]):
            fail("Gamma play is not a prefix of the input")

    # (e) monotone growth
    if prev is not None:
        if not (
            prev.closed == st.closed[: len(prev.closed)]
            and len(prev.gamma_play.moves) <= len(st.gamma_play.moves)
        ):
            fail("rounds or Gamma play shrank")

    # (f) last-move mirroring
    if st.leading.moves:
        j = len(st.leading.moves) - 1
        if games.move_address(st.leading, j, side_pos) is None:
            if not st.gamma_play.moves or not games.moves_match(
                st.leading, st.leading.moves[j], st.gamma_play, st.gamma_play.moves[-1]
            ):
                fail("Gamma play does not mirror the leading Gamma-side move")
    if st.gamma_play.moves and st.gamma_play.moves[-1].tag == games.QUERY:
        if not st.leading.moves or not games.moves_match(
            st.gamma_play, st.gamma_play.moves[-1], st.leading, st.leading.moves[-1]
        ):
            fail("leading play does not mirror the pending Gamma-side query")

    # (g) the node sets S_m are odd/even
    for m in range(n + 1):
        S = {nodes[k] for k in interaction.view_W(pointers, m)}
        if not F.odd_set_check(phi, S, parity=m % 2):
            fail(f"S_{m} fails the odd/even set clauses")

    # (h) Abelard follows S_m; closed queries are stuck
    for m in range(n + 1):
        S = {nodes[k] for k in interaction.view_W(pointers, m)}
        p_m = plays[m]
        for j, mv in enumerate(p_m.moves):
            if mv.tag != games.REPLY:
                continue
            addr = games.move_address(p_m, j, side_pos)
            if addr is None:
                continue
            if not any(addr == t[: len(addr)] for t in S):
                fail(f"Abelard reply in p_{m} leaves the partial strategy S_{m}")
        if m < n and p_m.moves and p_m.moves[-1].tag == games.QUERY:
            sigma_m = nodes[m]
            addr = games.move_address(p_m, len(p_m.moves) - 1, side_pos)
            if addr is not None and any(len(t) > len(sigma_m) and t[: len(sigma_m)] == sigma_m for t in S):
                fail(f"abandoned play p_{m} could still answer its query")

    if level < 2:
        return

    # (a) plays are legal and follow the strategies; no winning proper prefixes
    for m in range(n + 1):
        p_m = plays[m]
        f_m = debate.strategies[m % 2]
        rebuilt = Play(debate.sig, p_m.context)
        for j, mv in enumerate(p_m.moves):
            if games.is_winning_play(rebuilt):
                fail(f"p_{m} extends a winning proper prefix")
            if games.whose_turn(rebuilt) == "eloisa":
                want = f_m(rebuilt)
                if want is None or not games.moves_match(rebuilt, want, rebuilt, mv):
                    fail(f"p_{m} move {j} deviates from its strategy")
            rebuilt = games.extend(rebuilt, mv)


# ---------------------------------------------------------------------------
# The descent recursive cut strategy


@dataclass(frozen=True)
class CutStage:
    """One stage of the descent evaluation: the debate round plus the inner
    strategy's current stage, the ordinal interaction sequence u (pairs plus
    the trailing value gamma*rho + inner ordinal) and delta = c(u)."""

    state: DebateState
    inner_value: object
    inner_ordinal: Ordinal
    inner_iter: Iterator
    inner_final: bool
    closed_heights: Tuple[Ordinal, ...]
    rho: Ordinal
    upairs: Tuple[Tuple[Ordinal, int], ...]
    delta: Ordinal


def _u_of(z: "CutStage", gamma_bound: Ordinal) -> OrdIntSeq:
    trailing = ordinals.add(ordinals.mul(gamma_bound, z.rho), z.inner_ordinal)
    return OrdIntSeq(z.upairs, trailing)


@dataclass(frozen=True)
class DebateTraceRecord:
    stage: int
    case: str
    n: int
    last_move: str
    u: str
    delta: str


def cut_dr(
    g0: DRStrategy,
    g1: DRStrategy,
    sig: F.Signature,
    gamma: Sequence[Formula],
    phi: Formula,
    check_level: int = 0,
    trace_sink: Optional[List[DebateTraceRecord]] = None,
) -> DRStrategy:
    """Cut elimination with ordinal bookkeeping (descent recursive form).

    Both premise strategies must carry the same declared (gamma, alpha); the
    result is a finitely guessing c_nu(eta)-strategy, eta = gamma*(alpha+2),
    nu the depth of phi.  Every internal transition strictly decreases
    delta = c_height(nu, eta, u); a non-decrease or an EXIT case raises
    DebateInternalError.
    """
    gamma_ctx = tuple(gamma)
    if g0.gamma != g1.gamma or g0.alpha != g1.alpha:
        raise ValueError("premise strategies must share a declared (gamma, alpha)")
    if g0.context != gamma_ctx + (F.negate(phi),) or g1.context != gamma_ctx + (phi,):
        raise ValueError("premise strategy contexts do not match the cut")
    gam, alp = g0.gamma, g0.alpha
    nu = F.formula_depth(phi)
    eta = ordinals.mul(gam, ordinals.add(alp, ordinals.from_int(2)))
    bound = ordinals.c_scalar(nu, eta)
    strategies = (g0, g1)
    debate = Debate(sig, gamma_ctx, phi, g0.move, g1.move)

    def strat(n: int) -> DRStrategy:
        return strategies[n % 2]

    def start_inner(play: Play, n: int) -> Tuple[object, Ordinal, Iterator, bool]:
        it = strat(n).stages(play)
        value, ordinal = next(it)
        nxt = next(it, None)
        if nxt is None:
            return value, ordinal, iter(()), True
        # re-chain the peeked stage
        def chained(first=nxt, rest=it):
            yield first
            yield from rest

        return value, ordinal, chained(), False

    def advance_inner(z: CutStage) -> Tuple[object, Ordinal, Iterator, bool]:
        it = z.inner_iter
        value, ordinal = next(it)
        nxt = next(it, None)
        if nxt is None:
            return value, ordinal, iter(()), True

        def chained(first=nxt, rest=it):
            yield first
            yield from rest

        return value, ordinal, chained(), False

    def delta_of(upairs, rho, inner_ord) -> Tuple[OrdIntSeq, Ordinal]:
        u = OrdIntSeq(upairs, ordinals.add(ordinals.mul(gam, rho), inner_ord))
        return u, interaction.c_height(nu, eta, u)

    def record(z: CutStage, case: str) -> None:
        if trace_sink is None:
            return
        st = z.state
        last = "-"
        if st.leading.moves:
            j = len(st.leading.moves) - 1
            last = f"{st.leading.moves[j].tag}: {F.render_formula(games.move_formula_at(st.leading, j))}"
        u = _u_of(z, gam)
        trace_sink.append(
            DebateTraceRecord(st.stage, case, st.n, last, interaction.ois_render(u), ordinals.render_ordinal(z.delta))
        )

    def g0_fn(play: Play) -> Tuple[CutStage, Ordinal]:
        st = debate.initial_state()
        value, ordinal, it, fin = start_inner(st.leading, 0)
        rho = ordinals.add(alp, ordinals.ONE)
        _, delta = delta_of((), rho, ordinal)
        z = CutStage(st, value, ordinal, it, fin, (), rho, (), delta)
        if check_level:
            check_state(debate, st, check_level, input_moves=play.moves)
        record(z, "init")
        return z, delta

    def g1_fn(play: Play, z: CutStage, delta: Ordinal) -> Tuple[CutStage, Ordinal]:
        if not z.inner_final:
            value, ordinal, it, fin = advance_inner(z)
            _, delta2 = delta_of(z.upairs, z.rho, ordinal)
            z2 = replace(z, inner_value=value, inner_ordinal=ordinal, inner_iter=it, inner_final=fin, delta=delta2)
            _require_decrease(delta, delta2, "inner stage")
            record(z2, "stage")
            return z2, delta2
        st = z.state
        n = st.n
        move, height = strat(n).final_of(z.inner_value)
        result = debate.step(st, play.moves, move_provider=lambda: move)
        if check_level:
            check_state(debate, result.state, check_level, prev=st, input_moves=play.moves)
        if isinstance(result, StepStop):
            # repeating delta makes the current stage final; g2 re-derives
            # the stop move from it
            record(z, result.case)
            return z, delta
        new_st = result.state
        if new_st.n > n:
            # closed the round: the pair value gamma*(alpha_n + 1) + gamma_n
            # strictly dominates every later trailing value whose height
            # component sits at alpha_n or below
            beta_closed = ordinals.add(
                ordinals.mul(gam, ordinals.add(height, ordinals.ONE)), z.inner_ordinal
            )
            pointer = new_st.closed[-1][2]
            upairs = z.upairs + ((beta_closed, pointer),)
            closed_heights = z.closed_heights + (height,)
            # a freshly opened play extends p_m, so h(p_m) bounds its height
            # strictly; the n = 0 opening starts from the empty play, whose
            # height is the declared alpha, so the initial alpha + 1 is used
            rho = ordinals.add(alp, ordinals.ONE) if n == 0 else z.closed_heights[pointer]
        else:
            upairs = z.upairs
            closed_heights = z.closed_heights
            rho = height
        value, ordinal, it, fin = start_inner(new_st.leading, new_st.n)
        _, delta2 = delta_of(upairs, rho, ordinal)
        z2 = CutStage(new_st, value, ordinal, it, fin, closed_heights, rho, upairs, delta2)
        _require_decrease(delta, delta2, result.case)
        record(z2, result.case)
        return z2, delta2

    def g2_fn(z: CutStage) -> Tuple[Optional[Move], Ordinal]:
        # the descent only ends on a stop case; the stop move is the same
        # whatever the unconsumed input, so re-derive it with none
        move, _ = strat(z.state.n).final_of(z.inner_value)
        result = debate.step(z.state, (), move_provider=lambda: move)
        if not isinstance(result, StepStop):
            raise DebateInternalError("descent ended without a stop case")
        return result.move, z.delta

    dr = DRFunction(bound, g0_fn, g1_fn, g2_fn)
    witnesses = tuple(dict.fromkeys(g0.witnesses + g1.witnesses))
    return DRStrategy(gamma_ctx, bound, bound, witnesses, dr)


def _require_decrease(before: Ordinal, after: Ordinal, what: str) -> None:
    if ordinals.cmp(after, before) != LESS:
        raise DebateInternalError(
            f"delta failed to decrease on {what}: {ordinals.render_ordinal(before)} -> {ordinals.render_ordinal(after)}"
        )
