"""The Tait game G(Gamma): moves, plays, legality, winning, simulation.

A move is a tag (guess / query / reply) plus a *source* identifying the
formula occurrence it acts on (an index into the context or the index of an
earlier move) and an optional child selector.  The displayed formula is
derived from source and selector, never stored.  Guesses pick children of
or/exists occurrences (exists selectors are raw closed terms), queries point
at and/forall occurrences, replies answer the immediately preceding query
(forall selectors are numerals only).

A play is winning when its context closure contains a true closed literal.
Strategies are pure callables play -> move; all state lives in the play.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, List, Optional, Sequence, Tuple, Union

from . import formulas as F
from .formulas import (
    And,
    Exists,
    Forall,
    Formula,
    Lit,
    NodeAddress,
    Or,
    Signature,
    Term,
)


class GameError(ValueError):
    pass


class IllegalMoveError(GameError):
    pass


class BrokenStrategyError(GameError):
    """Eloisa's strategy returned an illegal move or reached a dead position."""


@dataclass(frozen=True)
class CtxRef:
    index: int


@dataclass(frozen=True)
class MoveRef:
    index: int


Source = Union[CtxRef, MoveRef]

GUESS = "guess"
QUERY = "query"
REPLY = "reply"

# guess on or/and-child: formulas.LEFT / formulas.RIGHT
# guess on exists: a closed Term; reply on forall: an int
MoveSelector = Union[str, int, Term, None]


@dataclass(frozen=True)
class Move:
    tag: str
    source: Source
    selector: MoveSelector = None


@dataclass(frozen=True)
class Play:
    sig: Signature
    context: Tuple[Formula, ...]
    moves: Tuple[Move, ...] = ()

    def __post_init__(self) -> None:
        for phi in self.context:
            if not F.is_closed(phi):
                raise GameError(f"context formula must be closed: {F.render_formula(phi)}")

    def __len__(self) -> int:
        return len(self.moves)

    def extended_by(self, other: "Play") -> bool:
        """True iff self is a (not necessarily proper) prefix of other."""
        return (
            self.sig == other.sig
            and self.context == other.context
            and other.moves[: len(self.moves)] == self.moves
        )


def empty_play(sig: Signature, context: Sequence[Formula]) -> Play:
    return Play(sig, tuple(context))


def source_formula(play: Play, source: Source) -> Formula:
    if isinstance(source, CtxRef):
        if not 0 <= source.index < len(play.context):
            raise IllegalMoveError(f"stale context index {source.index}")
        return play.context[source.index]
    if not 0 <= source.index < len(play.moves):
        raise IllegalMoveError(f"stale move index {source.index}")
    return move_formula_at(play, source.index)


def move_formula_at(play: Play, j: int) -> Formula:
    return move_formula(play, play.moves[j], upto=j)


def move_formula(play: Play, move: Move, upto: Optional[int] = None) -> Formula:
    """The displayed formula of a move, derived from source + selector."""
    if upto is not None and isinstance(move.source, MoveRef) and move.source.index >= upto:
        raise IllegalMoveError("move source must point backwards")
    parent = source_formula(play, move.source)
    if move.tag == QUERY:
        return parent
    if move.tag == GUESS:
        if isinstance(parent, Or):
            if move.selector in (F.LEFT, F.RIGHT):
                return parent.left if move.selector == F.LEFT else parent.right
            raise IllegalMoveError("or-guess needs an l/r selector")
        if isinstance(parent, Exists):
            if not isinstance(move.selector, Term):
                raise IllegalMoveError("exists-guess needs a term selector")
            return F.instantiate(parent, move.selector)
        raise IllegalMoveError("guess source must display an or/exists formula")
    if move.tag == REPLY:
        if isinstance(parent, And):
            if move.selector in (F.LEFT, F.RIGHT):
                return parent.left if move.selector == F.LEFT else parent.right
            raise IllegalMoveError("and-reply needs an l/r selector")
        if isinstance(parent, Forall):
            if not isinstance(move.selector, int) or move.selector < 0:
                raise IllegalMoveError("forall-reply selector must be a numeral value")
            return F.instantiate(parent, F.numeral(move.selector))
        raise IllegalMoveError("reply source must display an and/forall formula")
    raise IllegalMoveError(f"unknown move tag {move.tag!r}")


def table(play: Play) -> List[Formula]:
    """The context closure Gamma_n: context formulas plus displayed moves."""
    out = list(play.context)
    for j in range(len(play.moves)):
        out.append(move_formula_at(play, j))
    return out


def is_winning_play(play: Play) -> bool:
    for phi in table(play):
        if isinstance(phi, Lit) and F.eval_literal(play.sig, phi):
            return True
    return False


def whose_turn(play: Play) -> str:
    """'eloisa' unless the last move is a query, then 'abelard'."""
    if play.moves and play.moves[-1].tag == QUERY:
        return "abelard"
    return "eloisa"


def check_move(play: Play, move: Move) -> Formula:
    """Validate the move against the E/A clauses; return its displayed formula."""
    turn = whose_turn(play)
    if move.tag in (GUESS, QUERY):
        if turn != "eloisa":
            raise IllegalMoveError("Eloisa cannot move after a query")
        shown = move_formula(play, move)
        if move.tag == QUERY:
            if not F.is_negative(shown):
                raise IllegalMoveError("queries point at and/forall formulas")
            if move.selector is not None:
                raise IllegalMoveError("queries take no selector")
        else:
            if isinstance(move.selector, Term) and F.term_vars(move.selector):
                raise IllegalMoveError("exists-guess witness must be closed")
        return shown
    if move.tag == REPLY:
        if turn != "abelard":
            raise IllegalMoveError("replies only follow a query")
        if not isinstance(move.source, MoveRef) or move.source.index != len(play.moves) - 1:
            raise IllegalMoveError("a reply answers the immediately preceding query")
        return move_formula(play, move)
    raise IllegalMoveError(f"unknown move tag {move.tag!r}")


def extend(play: Play, move: Move) -> Play:
    check_move(play, move)
    return Play(play.sig, play.context, play.moves + (move,))


def is_legal_move(play: Play, move: Move) -> bool:
    try:
        check_move(play, move)
        return True
    except IllegalMoveError:
        return False


@dataclass(frozen=True)
class MoveFamily:
    """A family of legal moves: one source occurrence plus its selector kind.

    kind: 'binary' (l/r), 'term' (closed-term guesses), 'nat' (numeral
    replies) or 'none' (queries, which take no selector).
    """

    tag: str
    source: Source
    parent: Formula
    kind: str

    def move(self, selector: MoveSelector = None) -> Move:
        return Move(self.tag, self.source, selector)


def legal_move_families(play: Play) -> List[MoveFamily]:
    fams: List[MoveFamily] = []
    if whose_turn(play) == "abelard":
        q = len(play.moves) - 1
        parent = move_formula_at(play, q)
        kind = "binary" if isinstance(parent, And) else "nat"
        fams.append(MoveFamily(REPLY, MoveRef(q), parent, kind))
        return fams
    occs: List[Tuple[Source, Formula]] = [(CtxRef(i), phi) for i, phi in enumerate(play.context)]
    occs += [(MoveRef(j), move_formula_at(play, j)) for j in range(len(play.moves))]
    seen = set()
    for src, phi in occs:
        if phi in seen:
            continue
        seen.add(phi)
        if isinstance(phi, Or):
            fams.append(MoveFamily(GUESS, src, phi, "binary"))
        elif isinstance(phi, Exists):
            fams.append(MoveFamily(GUESS, src, phi, "term"))
        elif F.is_negative(phi):
            fams.append(MoveFamily(QUERY, src, phi, "none"))
    return fams


def enumerate_moves(play: Play, nat_bound: int) -> Iterator[Move]:
    """Concrete legal moves, sampling term/nat families up to nat_bound."""
    for fam in legal_move_families(play):
        if fam.kind == "none":
            yield fam.move()
        elif fam.kind == "binary":
            yield fam.move(F.LEFT)
            yield fam.move(F.RIGHT)
        elif fam.kind == "nat":
            for n in range(nat_bound + 1):
                yield fam.move(n)
        else:
            for n in range(nat_bound + 1):
                yield fam.move(F.numeral(n))


# ---------------------------------------------------------------------------
# Addresses of side-formula moves (used by debates)


def move_address(play: Play, j: int, side_pos: int) -> Optional[NodeAddress]:
    """Address in the side formula's tree of move j, or None for context-side moves.

    Quantifier selectors are normalized to the numeral value of the witness.
    """
    move = play.moves[j]
    src = move.source
    if isinstance(src, CtxRef):
        base: Optional[NodeAddress] = () if src.index == side_pos else None
    else:
        base = move_address(play, src.index, side_pos)
    if base is None:
        return None
    if move.tag == QUERY:
        return base
    if move.selector in (F.LEFT, F.RIGHT):
        return base + (move.selector,)
    if isinstance(move.selector, int):
        return base + (move.selector,)
    if isinstance(move.selector, Term):
        return base + (F.eval_term(play.sig, move.selector),)
    raise GameError(f"selector missing on move {move!r}")


def move_side_is_context(play: Play, j: int, side_pos: int) -> bool:
    return move_address(play, j, side_pos) is None


def prospective_address(play: Play, move: Move, side_pos: int) -> Optional[NodeAddress]:
    """Address the move would have if appended to the play (None: context side)."""
    src = move.source
    if isinstance(src, CtxRef):
        base: Optional[NodeAddress] = () if src.index == side_pos else None
    else:
        base = move_address(play, src.index, side_pos)
    if base is None:
        return None
    if move.tag == QUERY:
        return base
    if move.selector in (F.LEFT, F.RIGHT):
        return base + (move.selector,)
    if isinstance(move.selector, int):
        return base + (move.selector,)
    if isinstance(move.selector, Term):
        return base + (F.eval_term(play.sig, move.selector),)
    raise GameError(f"selector missing on move {move!r}")


def anchor_for(play: Play, phi: Formula) -> Optional[Source]:
    """An occurrence of phi in the play's closure: context first, else earliest move."""
    for i, psi in enumerate(play.context):
        if psi == phi:
            return CtxRef(i)
    for j in range(len(play.moves)):
        if move_formula_at(play, j) == phi:
            return MoveRef(j)
    return None


def transplant(move: Move, origin: Play, target: Play) -> Move:
    """Re-anchor a move from one play into another with the same closure content.

    Replies re-anchor to the target's last move (which must display the same
    query).  Guesses and queries re-anchor to any occurrence of the parent
    formula; raises IllegalMoveError when the parent is absent.
    """
    parent = source_formula(origin, move.source)
    if move.tag == REPLY:
        if not target.moves or move_formula_at(target, len(target.moves) - 1) != parent:
            raise IllegalMoveError("target play does not end with the matching query")
        return Move(REPLY, MoveRef(len(target.moves) - 1), move.selector)
    anchor = anchor_for(target, parent)
    if anchor is None:
        raise IllegalMoveError(f"no occurrence of {F.render_formula(parent)} in target play")
    return Move(move.tag, anchor, move.selector)


def moves_match(a_play: Play, a: Move, b_play: Play, b: Move) -> bool:
    """Same resolved content: tag and displayed formula."""
    return a.tag == b.tag and move_formula(a_play, a) == move_formula(b_play, b)


# ---------------------------------------------------------------------------
# Simulation


@dataclass(frozen=True)
class Won:
    play: Play


@dataclass(frozen=True)
class IllegalOpponent:
    play: Play
    move: Optional[Move] = None


@dataclass(frozen=True)
class FuelExhausted:
    play: Play


Outcome = Union[Won, IllegalOpponent, FuelExhausted]

MoveFn = Callable[[Play], Optional[Move]]
HeightFn = Callable[[Play], "object"]


def simulate(strategy: MoveFn, opponent: MoveFn, start: Play, fuel: int) -> Outcome:
    """Alternate strategy and opponent moves from start.

    Stops with Won at a winning play, IllegalOpponent when the oracle's
    reply is illegal, FuelExhausted after fuel moves.  A strategy that
    returns an illegal move, or has no move at a non-winning position,
    raises BrokenStrategyError.
    """
    play = start
    for _ in range(fuel):
        if is_winning_play(play):
            return Won(play)
        if whose_turn(play) == "eloisa":
            if not legal_move_families(play):
                raise BrokenStrategyError("dead position: no legal move and not winning")
            move = strategy(play)
            if move is None:
                raise BrokenStrategyError("strategy returned no move at its turn")
            try:
                play = extend(play, move)
            except IllegalMoveError as e:
                raise BrokenStrategyError(f"strategy move illegal: {e}") from e
        else:
            move = opponent(play)
            if move is None:
                return IllegalOpponent(play, None)
            try:
                play = extend(play, move)
            except IllegalMoveError:
                return IllegalOpponent(play, move)
    if is_winning_play(play):
        return Won(play)
    return FuelExhausted(play)


@dataclass
class HeightReport:
    checked: int
    violations: List[Tuple[Play, Play]]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_height(height: HeightFn, plays: Sequence[Play]) -> HeightReport:
    """Assert h strictly decreases along every move of every sampled play."""
    from . import ordinals

    checked = 0
    violations: List[Tuple[Play, Play]] = []
    for play in plays:
        for k in range(1, len(play.moves) + 1):
            shorter = Play(play.sig, play.context, play.moves[: k - 1])
            longer = Play(play.sig, play.context, play.moves[:k])
            checked += 1
            if ordinals.cmp(height(longer), height(shorter)) != ordinals.LESS:
                violations.append((shorter, longer))
    return HeightReport(checked, violations)
