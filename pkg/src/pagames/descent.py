"""Descent recursion: evaluate a step function along a strictly decreasing
ordinal trace, plus the DR-strategy wrapper used across the system.

A descent recursion below alpha is given by g0 (input -> first value and
ordinal < alpha), g1 (next value and ordinal) and g2 (output from the final
value); the computation stops at the least stage whose next ordinal fails
to decrease.  The step functions are supplied as plain callables under a
purity contract; their being elementary is a documentation-level contract,
not machine-enforced.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Iterator, List, Optional, Sequence, Tuple

from . import formulas as F
from . import games, ordinals
from .games import Move, Play
from .ordinals import LESS, Ordinal

DEFAULT_WATCHDOG = 2_000_000


class DescentError(RuntimeError):
    pass


class WatchdogError(DescentError):
    """The configurable step limit fired: the supplied g is broken."""


@dataclass(frozen=True)
class DRFunction:
    """A descent recursion D_bound(g0, g1, g2)."""

    bound: Ordinal
    g0: Callable[[Any], Tuple[Any, Ordinal]]
    g1: Callable[[Any, Any, Ordinal], Tuple[Any, Ordinal]]
    g2: Callable[[Any], Any]


@dataclass(frozen=True)
class Stage:
    value: Any
    ordinal: Ordinal
    role: str  # 'initial' | 'internal' | 'final'


def dr_stages(g: DRFunction, x: Any, watchdog: int = DEFAULT_WATCHDOG) -> Iterator[Tuple[Any, Ordinal]]:
    """Yield the stages (y_s, a_s) up to and including the final one."""
    y, a = g.g0(x)
    if ordinals.cmp(a, g.bound) != LESS:
        raise DescentError(f"g0 ordinal {a} not below the declared bound {g.bound}")
    steps = 0
    while True:
        yield y, a
        y2, a2 = g.g1(x, y, a)
        if ordinals.cmp(a, a2) != ordinals.GREATER:
            return
        y, a = y2, a2
        steps += 1
        if steps > watchdog:
            raise WatchdogError(f"no final stage within {watchdog} steps")


def dr_trace(g: DRFunction, x: Any, watchdog: int = DEFAULT_WATCHDOG) -> List[Stage]:
    pairs = list(dr_stages(g, x, watchdog))
    out = []
    for s, (y, a) in enumerate(pairs):
        if s == len(pairs) - 1:
            role = "final"
        elif s == 0:
            role = "initial"
        else:
            role = "internal"
        out.append(Stage(y, a, role))
    return out


def dr_eval(g: DRFunction, x: Any, watchdog: int = DEFAULT_WATCHDOG) -> Any:
    y = None
    for y, _ in dr_stages(g, x, watchdog):
        pass
    return g.g2(y)


def dr_compose(outer: DRFunction, inner: DRFunction) -> DRFunction:
    """g o h as a (beta+alpha)-DR function: run h's stages lifted by beta,
    then g's stages on h's output.  The un-lifted inner ordinal travels in
    the stage value so no ordinal subtraction is needed."""
    beta, alpha = outer.bound, inner.bound
    bound = ordinals.add(beta, alpha)

    def g0(x):
        y, a = inner.g0(x)
        return ("inner", y, a), ordinals.add(beta, a)

    def g1(x, tagged, lifted):
        if tagged[0] == "inner":
            _, y, a = tagged
            y2, a2 = inner.g1(x, y, a)
            if ordinals.cmp(a, a2) != ordinals.GREATER:
                mid = inner.g2(y)
                z, b = outer.g0(mid)
                return ("outer", mid, z), b
            return ("inner", y2, a2), ordinals.add(beta, a2)
        _, mid, z = tagged
        z2, b2 = outer.g1(mid, z, lifted)
        return ("outer", mid, z2), b2

    def g2(tagged):
        if tagged[0] == "inner":
            # unreachable when the bounds are honest: the handoff ordinal
            # (< beta) is strictly below every lifted inner ordinal
            raise DescentError("composition stopped inside the inner phase")
        return outer.g2(tagged[2])

    return DRFunction(bound, g0, g1, g2)


# ---------------------------------------------------------------------------
# Worked descent recursions (also exercised by the test suite)


def factorial_dr() -> DRFunction:
    """Factorial as an omega-DR function: the counter is the stage ordinal."""

    def g0(n):
        return (n, 1), ordinals.from_int(n)

    def g1(n, y, a):
        k, acc = y
        if k == 0:
            return y, a
        return (k - 1, acc * k), ordinals.from_int(k - 1)

    def g2(y):
        return y[1]

    return DRFunction(ordinals.OMEGA, g0, g1, g2)


def nested_mul_dr() -> DRFunction:
    """m*n by two nested primitive recursions (repeated addition of repeated
    successor), run as an omega^2-DR function with ordinal w*m_left + n_left."""
    w2 = ordinals.omega_pow(ordinals.from_int(2))

    def ordinal_of(m_left: int, n_left: int) -> Ordinal:
        return ordinals.add(ordinals.mul(ordinals.OMEGA, ordinals.from_int(m_left)), ordinals.from_int(n_left))

    def g0(mn):
        m, n = mn
        return (m, n, 0), ordinal_of(m, n if m else 0)

    def g1(mn, y, a):
        _, n = mn
        m_left, n_left, acc = y
        if m_left == 0:
            return y, a
        if n_left > 0:
            return (m_left, n_left - 1, acc + 1), ordinal_of(m_left, n_left - 1)
        m_left -= 1
        return (m_left, n if m_left else 0, acc), ordinal_of(m_left, n if m_left else 0)

    def g2(y):
        return y[2]

    return DRFunction(w2, g0, g1, g2)


# ---------------------------------------------------------------------------
# Descent recursive strategies


@dataclass(frozen=True)
class DRStrategy:
    """A non-losing strategy with a height function, evaluated by descent
    recursion with a declared (gamma, alpha) bound and a finitely-guessing
    witness set.

    ``dr`` maps a play to (move-or-None, height) by a descent recursion whose
    stage ordinals stay below gamma; ``move``/``height`` are the projections.
    """

    context: Tuple[F.Formula, ...]
    gamma: Ordinal
    alpha: Ordinal
    witnesses: Tuple[F.Term, ...]
    dr: DRFunction

    def stages(self, play: Play) -> Iterator[Tuple[Any, Ordinal]]:
        return dr_stages(self.dr, play)

    def result(self, play: Play) -> Tuple[Optional[Move], Ordinal]:
        return dr_eval(self.dr, play)

    def move(self, play: Play) -> Optional[Move]:
        return self.result(play)[0]

    def height(self, play: Play) -> Ordinal:
        return self.result(play)[1]

    def final_of(self, value: Any) -> Tuple[Optional[Move], Ordinal]:
        """Decode a final stage value into (move, height)."""
        return self.dr.g2(value)


def simple_strategy(
    context: Sequence[F.Formula],
    move_fn: Callable[[Play], Optional[Move]],
    height_fn: Callable[[Play], Ordinal],
    alpha: Ordinal,
    witnesses: Sequence[F.Term] = (),
    gamma: Ordinal = ordinals.ONE,
) -> DRStrategy:
    """Wrap elementary move/height callables as a single-stage (gamma, alpha)
    strategy (the evaluation uses no internal stages)."""

    def g0(play):
        return play, ordinals.ZERO

    def g1(play, y, a):
        return y, a

    def g2(play):
        return move_fn(play), height_fn(play)

    return DRStrategy(tuple(context), gamma, alpha, tuple(witnesses), DRFunction(gamma, g0, g1, g2))


def is_numeral_instance(sig: F.Signature, template: F.Term, t: F.Term) -> bool:
    """t is the template with every variable replaced by some numeral."""
    if isinstance(template, F.Var):
        return F.numeral_value(t) is not None
    if isinstance(template, F.Zero):
        return isinstance(t, F.Zero)
    if isinstance(template, F.Succ):
        return isinstance(t, F.Succ) and is_numeral_instance(sig, template.arg, t.arg)
    if isinstance(template, F.App):
        return (
            isinstance(t, F.App)
            and t.symbol == template.symbol
            and len(t.args) == len(template.args)
            and all(is_numeral_instance(sig, p, a) for p, a in zip(template.args, t.args))
        )
    return False


@dataclass
class StrategyReport:
    root_height_ok: bool
    height: games.HeightReport
    guess_violations: List[Tuple[Play, Move]]

    @property
    def ok(self) -> bool:
        return self.root_height_ok and self.height.ok and not self.guess_violations


def dr_strategy_check(g: DRStrategy, plays: Sequence[Play]) -> StrategyReport:
    """Check h at the root equals the declared alpha, h strictly decreases
    along the sampled plays, and every guess is finitely guessing w.r.t. the
    witness set."""
    sig = plays[0].sig if plays else F.EMPTY_SIGNATURE
    root = Play(sig, g.context)
    root_ok = ordinals.cmp(g.height(root), g.alpha) == ordinals.EQUAL
    height_report = games.check_height(g.height, plays)
    bad: List[Tuple[Play, Move]] = []
    for play in plays:
        for j, move in enumerate(play.moves):
            if move.tag == games.GUESS and isinstance(move.selector, F.Term):
                witness = move.selector
                if not any(is_numeral_instance(play.sig, t, witness) for t in g.witnesses):
                    bad.append((Play(play.sig, play.context, play.moves[: j + 1]), move))
    return StrategyReport(root_ok, height_report, bad)
