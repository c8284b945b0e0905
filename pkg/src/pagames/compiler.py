"""Proof objects for the finitary Tait calculus for PA, a proof checker, and
the compiler from checked proofs to finitely guessing descent recursive
strategies.

The compiler is a structural recursion on the proof: a basic axiom becomes a
(1, 0)-strategy, the exists/or rules prefix a guess (alpha + 1), the
forall/and rules prefix a query and dispatch on the reply (alpha + 2), a
literal cut evaluates the closed literal and keeps the chosen premise
(gamma, alpha), a compound cut routes through the canonical debate, the
induction axiom gets its explicit (1, omega+1) strategy tree and the
transfinite-induction axiom its (1, 3c + alpha*5 + 2) tree.  The witness
set of the result is the set of terms occurring in the proof.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from . import debate as debate_mod
from . import formulas as F
from . import games, ordinals
from .descent import DRFunction, DRStrategy, simple_strategy
from .formulas import Formula, Signature, Term
from .games import CtxRef, Move, MoveRef, Play, Source
from .ordinals import Ordinal


class ProofError(ValueError):
    pass


class CompileError(RuntimeError):
    pass


class OutsideStrategyError(CompileError):
    """A play was submitted that left the compiled strategy's tree."""


# ---------------------------------------------------------------------------
# Proof objects


@dataclass(frozen=True)
class ProofNode:
    conclusion: Tuple[Formula, ...]

    def premises(self) -> Tuple["ProofNode", ...]:
        return ()

    def label(self) -> str:
        return type(self).__name__


@dataclass(frozen=True)
class BasicAxiom(ProofNode):
    pass


@dataclass(frozen=True)
class InductionAxiom(ProofNode):
    var: str
    phi: Formula


@dataclass(frozen=True)
class TIAxiom(ProofNode):
    var: str
    phi: Formula
    alpha: Ordinal


@dataclass(frozen=True)
class OrRule(ProofNode):
    target: Formula
    side: str  # formulas.LEFT or formulas.RIGHT
    premise: ProofNode

    def premises(self):
        return (self.premise,)


@dataclass(frozen=True)
class AndRule(ProofNode):
    target: Formula
    left: ProofNode
    right: ProofNode

    def premises(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class ExistsRule(ProofNode):
    target: Formula
    witness: Term
    premise: ProofNode

    def premises(self):
        return (self.premise,)


@dataclass(frozen=True)
class ForallRule(ProofNode):
    target: Formula
    eigen: str
    premise: ProofNode

    def premises(self):
        return (self.premise,)


@dataclass(frozen=True)
class CutRule(ProofNode):
    cut_formula: Formula
    left: ProofNode  # proves conclusion, not(cut_formula)
    right: ProofNode  # proves conclusion, cut_formula

    def premises(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Proof:
    sig: Signature
    root: ProofNode


def induction_formulas(var: str, phi: Formula) -> Tuple[Formula, Formula, Formula]:
    """not phi(0); exists x (phi(x) and not phi(Sx)); forall x phi(x)."""
    neg0 = F.negate(F.subst_formula(phi, {var: F.ZERO_TERM}))
    step = F.Exists(var, F.And(phi, F.negate(F.subst_formula(phi, {var: F.Succ(F.Var(var))}))))
    allf = F.Forall(var, phi)
    return neg0, step, allf


def ti_inner_var(var: str) -> str:
    # fixed naming scheme so proof files can spell the schema formulas
    return var + "g"


def ti_formulas(var: str, phi: Formula, alpha: Ordinal) -> Tuple[Formula, Formula, str]:
    """exists b (forall g (g < b -> phi(g)) and not phi(b));
    forall g (g < alpha -> phi(g)); plus the inner variable name."""
    gv = ti_inner_var(var)
    if gv in F.formula_vars(phi) | {var}:
        raise ProofError(f"the inner TI variable {gv!r} collides; rename the induction variable")
    below_b = F.Forall(gv, F.Or(F.nolt(F.Var(gv), F.Var(var)), F.subst_formula(phi, {var: F.Var(gv)})))
    progress = F.Exists(var, F.And(below_b, F.negate(phi)))
    goal = F.Forall(
        gv,
        F.Or(F.nolt(F.Var(gv), F.ordinal_code_term(alpha)), F.subst_formula(phi, {var: F.Var(gv)})),
    )
    return progress, goal, gv


# ---------------------------------------------------------------------------
# Term collection (the finitely-guessing witness sets)


def subterms(t: Term) -> Set[Term]:
    out = {t}
    if isinstance(t, F.Succ):
        out |= subterms(t.arg)
    elif isinstance(t, F.App):
        for a in t.args:
            out |= subterms(a)
    return out


def formula_terms(phi: Formula) -> Set[Term]:
    """All subterms of literal arguments, plus every quantified variable."""
    if isinstance(phi, F.Lit):
        return subterms(phi.left) | subterms(phi.right)
    if isinstance(phi, (F.Or, F.And)):
        return formula_terms(phi.left) | formula_terms(phi.right)
    if isinstance(phi, (F.Exists, F.Forall)):
        return {F.Var(phi.var)} | formula_terms(phi.body)
    raise F.FormulaError(f"bad formula {phi!r}")


def node_terms(node: ProofNode) -> Set[Term]:
    out: Set[Term] = set()
    for phi in node.conclusion:
        out |= formula_terms(phi)
    if isinstance(node, ExistsRule):
        out |= subterms(node.witness)
    if isinstance(node, InductionAxiom):
        out |= {F.Var(node.var)} | formula_terms(node.phi)
    if isinstance(node, TIAxiom):
        out |= {F.Var(node.var)} | formula_terms(node.phi)
    return out


def proof_terms(node: ProofNode) -> FrozenSet[Term]:
    out = set(node_terms(node))
    for p in node.premises():
        out |= proof_terms(p)
    return frozenset(out)


# ---------------------------------------------------------------------------
# Proof checking


@dataclass(frozen=True)
class Diagnostic:
    path: str
    severity: str  # 'error' | 'note'
    message: str


@dataclass
class CheckReport:
    diagnostics: List[Diagnostic] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not any(d.severity == "error" for d in self.diagnostics)

    def errors(self) -> List[Diagnostic]:
        return [d for d in self.diagnostics if d.severity == "error"]


def _check_formula(sig: Signature, phi: Formula, path: str, out: List[Diagnostic]) -> None:
    def check_term(t: Term) -> None:
        if isinstance(t, F.Succ):
            check_term(t.arg)
        elif isinstance(t, F.App):
            try:
                want = sig.arity(t.symbol)
            except F.EvalError:
                out.append(Diagnostic(path, "error", f"unknown function symbol {t.symbol!r}"))
                return
            if want != len(t.args):
                out.append(Diagnostic(path, "error", f"arity mismatch for {t.symbol!r}"))
            for a in t.args:
                check_term(a)

    if isinstance(phi, F.Lit):
        check_term(phi.left)
        check_term(phi.right)
    elif isinstance(phi, (F.Or, F.And)):
        _check_formula(sig, phi.left, path, out)
        _check_formula(sig, phi.right, path, out)
    elif isinstance(phi, (F.Exists, F.Forall)):
        _check_formula(sig, phi.body, path, out)
    else:
        out.append(Diagnostic(path, "error", f"bad formula {phi!r}"))


def _lint_basic(sig: Signature, seq: Tuple[Formula, ...], bound: int, path: str, out: List[Diagnostic]) -> None:
    fv = sorted(set().union(*(F.formula_vars(phi) for phi in seq)) if seq else set())
    lits = [phi for phi in seq if isinstance(phi, F.Lit)]
    if not lits:
        out.append(Diagnostic(path, "error", "basic axiom contains no literal"))
        return
    for values in itertools.product(range(bound + 1), repeat=len(fv)):
        env = {v: F.numeral(k) for v, k in zip(fv, values)}
        if not any(F.eval_literal(sig, F.subst_formula(l, env)) for l in lits):
            assignment = ", ".join(f"{v}={k}" for v, k in zip(fv, values)) or "(closed)"
            out.append(Diagnostic(path, "error", f"no true literal under {assignment}"))
            return


def check_proof(proof: Proof, lint_bound: int = 16) -> CheckReport:
    """Validate every rule application; basic axioms are brute-force checked
    over variable instantiations up to lint_bound and trusted beyond."""
    report = CheckReport()
    out = report.diagnostics

    def seq_set(seq: Iterable[Formula]) -> FrozenSet[Formula]:
        return frozenset(seq)

    def visit(node: ProofNode, path: str) -> None:
        for phi in node.conclusion:
            _check_formula(proof.sig, phi, path, out)
        conc = seq_set(node.conclusion)
        if isinstance(node, BasicAxiom):
            _lint_basic(proof.sig, node.conclusion, lint_bound, path, out)
            return
        if isinstance(node, InductionAxiom):
            neg0, step, allf = induction_formulas(node.var, node.phi)
            missing = {neg0, step, allf} - conc
            if missing:
                out.append(Diagnostic(path, "error", "induction axiom lacks its three schema formulas"))
            return
        if isinstance(node, TIAxiom):
            try:
                progress, goal, _ = ti_formulas(node.var, node.phi, node.alpha)
            except ProofError as e:
                out.append(Diagnostic(path, "error", str(e)))
                return
            if {progress, goal} - conc:
                out.append(Diagnostic(path, "error", "TI axiom lacks its two schema formulas"))
            return
        if isinstance(node, OrRule):
            if not isinstance(node.target, F.Or) or node.target not in conc:
                out.append(Diagnostic(path, "error", "or-rule target missing or not a disjunction"))
                return
            child = node.target.left if node.side == F.LEFT else node.target.right
            want = (conc - {node.target}) | {child}
            if seq_set(node.premise.conclusion) != want:
                out.append(Diagnostic(path, "error", "or-rule premise sequent mismatch"))
            visit(node.premise, path + ".0")
            return
        if isinstance(node, AndRule):
            if not isinstance(node.target, F.And) or node.target not in conc:
                out.append(Diagnostic(path, "error", "and-rule target missing or not a conjunction"))
                return
            gamma = conc - {node.target}
            if seq_set(node.left.conclusion) != gamma | {node.target.left}:
                out.append(Diagnostic(path, "error", "and-rule left premise mismatch"))
            if seq_set(node.right.conclusion) != gamma | {node.target.right}:
                out.append(Diagnostic(path, "error", "and-rule right premise mismatch"))
            visit(node.left, path + ".0")
            visit(node.right, path + ".1")
            return
        if isinstance(node, ExistsRule):
            if not isinstance(node.target, F.Exists) or node.target not in conc:
                out.append(Diagnostic(path, "error", "exists-rule target missing or not existential"))
                return
            _check_formula(proof.sig, F.eq(node.witness, node.witness), path, out)  # witness symbols
            inst = F.instantiate(node.target, node.witness)
            if seq_set(node.premise.conclusion) != (conc - {node.target}) | {inst}:
                out.append(Diagnostic(path, "error", "exists-rule premise sequent mismatch"))
            visit(node.premise, path + ".0")
            return
        if isinstance(node, ForallRule):
            if not isinstance(node.target, F.Forall) or node.target not in conc:
                out.append(Diagnostic(path, "error", "forall-rule target missing or not universal"))
                return
            free = set().union(*(F.formula_vars(phi) for phi in node.conclusion))
            if node.eigen in free:
                out.append(Diagnostic(path, "error", f"eigenvariable {node.eigen!r} occurs free in the conclusion"))
            inst = F.instantiate(node.target, F.Var(node.eigen))
            if seq_set(node.premise.conclusion) != (conc - {node.target}) | {inst}:
                out.append(Diagnostic(path, "error", "forall-rule premise sequent mismatch"))
            visit(node.premise, path + ".0")
            return
        if isinstance(node, CutRule):
            neg = F.negate(node.cut_formula)
            if seq_set(node.left.conclusion) != conc | {neg}:
                out.append(Diagnostic(path, "error", "cut left premise must add the negated cut formula"))
            if seq_set(node.right.conclusion) != conc | {node.cut_formula}:
                out.append(Diagnostic(path, "error", "cut right premise must add the cut formula"))
            if not isinstance(node.cut_formula, F.Lit):
                out.append(Diagnostic(path, "note", "compound cut (eliminated through a debate)"))
            visit(node.left, path + ".0")
            visit(node.right, path + ".1")
            return
        out.append(Diagnostic(path, "error", f"unknown node {type(node).__name__}"))

    visit(proof.root, "root")
    return report


# ---------------------------------------------------------------------------
# Proof file format


def proof_from_sexp(sx) -> Proof:
    if not isinstance(sx, list) or not sx or sx[0] != "proof":
        raise ProofError("expected (proof ...)")
    items = sx[1:]
    sig = F.EMPTY_SIGNATURE
    if items and isinstance(items[0], list) and items[0] and items[0][0] == "sig":
        defs = []
        for d in items[0][1:]:
            if not (isinstance(d, list) and len(d) == 4 and d[0] == "def" and isinstance(d[1], str)):
                raise ProofError("signature entries look like (def name (params...) body)")
            params = tuple(d[2]) if isinstance(d[2], list) else (d[2],)
            if not all(isinstance(p, str) for p in params):
                raise ProofError("parameters must be symbols")
            defs.append(F.FuncDef(d[1], params, F.term_from_sexp(d[3])))
        sig = Signature(tuple(defs))
        items = items[1:]
    if len(items) != 1:
        raise ProofError("expected exactly one derivation after the signature")
    return Proof(sig, _node_from_sexp(items[0]))


def _fields(parts: Sequence, path: str) -> Dict[str, list]:
    out: Dict[str, list] = {}
    for p in parts:
        if not (isinstance(p, list) and p and isinstance(p[0], str)):
            raise ProofError(f"bad field {p!r} in {path}")
        out[p[0]] = p[1:]
    return out


def _one(fields: Dict[str, list], key: str, path: str):
    if key not in fields or len(fields[key]) != 1:
        raise ProofError(f"{path}: expected exactly one item in ({key} ...)")
    return fields[key][0]


def _seq_of(fields: Dict[str, list], path: str) -> Tuple[Formula, ...]:
    if "seq" not in fields:
        raise ProofError(f"{path}: missing (seq ...)")
    return tuple(F.formula_from_sexp(s) for s in fields["seq"])


_FIELD_KEYS = ("seq", "target", "side", "witness", "eigen", "formula", "var", "alpha")


def _node_from_sexp(sx) -> ProofNode:
    if not isinstance(sx, list) or not sx:
        raise ProofError(f"bad proof node {sx!r}")
    head = sx[0]
    if head == "basic-axiom":
        fields = _fields(sx[1:], head)
        return BasicAxiom(_seq_of(fields, head))
    if head == "induction-axiom":
        fields = _fields(sx[1:], head)
        return InductionAxiom(
            _seq_of(fields, head), str(_one(fields, "var", head)), F.formula_from_sexp(_one(fields, "formula", head))
        )
    if head == "ti-axiom":
        fields = _fields(sx[1:], head)
        alpha = ordinals.parse_ordinal(str(_one(fields, "alpha", head)))
        return TIAxiom(
            _seq_of(fields, head), str(_one(fields, "var", head)), F.formula_from_sexp(_one(fields, "formula", head)), alpha
        )
    if head != "rule" or len(sx) < 3:
        raise ProofError(f"unknown proof node {head!r}")
    kind = sx[1]
    named = [p for p in sx[2:] if isinstance(p, list) and p and p[0] in _FIELD_KEYS]
    subs = [p for p in sx[2:] if not (isinstance(p, list) and p and p[0] in _FIELD_KEYS)]
    fields = _fields(named, f"rule {kind}")
    seq = _seq_of(fields, kind)
    if kind == "or":
        side = {"l": F.LEFT, "left": F.LEFT, "r": F.RIGHT, "right": F.RIGHT}[str(_one(fields, "side", kind))]
        return OrRule(seq, F.formula_from_sexp(_one(fields, "target", kind)), side, _node_from_sexp(subs[0]))
    if kind == "and":
        return AndRule(
            seq, F.formula_from_sexp(_one(fields, "target", kind)), _node_from_sexp(subs[0]), _node_from_sexp(subs[1])
        )
    if kind == "exists":
        return ExistsRule(
            seq,
            F.formula_from_sexp(_one(fields, "target", kind)),
            F.term_from_sexp(_one(fields, "witness", kind)),
            _node_from_sexp(subs[0]),
        )
    if kind == "forall":
        return ForallRule(
            seq, F.formula_from_sexp(_one(fields, "target", kind)), str(_one(fields, "eigen", kind)), _node_from_sexp(subs[0])
        )
    if kind == "cut":
        return CutRule(
            seq, F.formula_from_sexp(_one(fields, "formula", kind)), _node_from_sexp(subs[0]), _node_from_sexp(subs[1])
        )
    raise ProofError(f"unknown rule {kind!r}")


def parse_proof(text: str) -> Proof:
    return proof_from_sexp(F.read_sexp(text))


def load_proof(path: str) -> Proof:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_proof(fh.read())


def iter_cuts(node: ProofNode) -> List[CutRule]:
    """Cut nodes in pre-order (the CLI's cut ids index this list)."""
    out: List[CutRule] = []

    def walk(n: ProofNode) -> None:
        if isinstance(n, CutRule):
            out.append(n)
        for p in n.premises():
            walk(p)

    walk(node)
    return out


# ---------------------------------------------------------------------------
# Strategy combinators


@dataclass(frozen=True)
class _Anchor:
    """Coordinate translation between a premise game and the actual game.

    fwd maps premise context positions to sources in the actual play (None
    marks positions that must never be referenced); offset is the number of
    scripted prefix moves in the actual play."""

    fwd: Tuple[Optional[Source], ...]
    offset: int

    def rev(self) -> Dict[Source, int]:
        return {src: k for k, src in enumerate(self.fwd) if src is not None}


def _translate_in(anchor: _Anchor, rev: Dict[Source, int], move: Move) -> Move:
    src = move.source
    if isinstance(src, MoveRef) and src.index >= anchor.offset:
        new: Source = MoveRef(src.index - anchor.offset)
    else:
        k = rev.get(src)
        if k is None:
            raise OutsideStrategyError(f"move source {src} leaves the strategy scope")
        new = CtxRef(k)
    return Move(move.tag, new, move.selector)


def _translate_out(anchor: _Anchor, move: Move) -> Move:
    src = move.source
    if isinstance(src, CtxRef):
        mapped = anchor.fwd[src.index]
        if mapped is None:
            raise OutsideStrategyError("premise referenced an unavailable context formula")
        new = mapped
    else:
        new = MoveRef(src.index + anchor.offset)
    return Move(move.tag, new, move.selector)


def _translate_play(anchor: _Anchor, premise_ctx: Tuple[Formula, ...], play: Play) -> Play:
    rev = anchor.rev()
    moves = tuple(_translate_in(anchor, rev, m) for m in play.moves[anchor.offset :])
    return Play(play.sig, premise_ctx, moves)


def prefixed_strategy(
    context: Tuple[Formula, ...],
    prefix_len: int,
    script: "callable",  # play with < prefix_len moves -> (move | None, height)
    select: "callable",  # play with >= prefix_len moves -> (DRStrategy, _Anchor)
    gamma: Ordinal,
    alpha: Ordinal,
    witnesses: Tuple[Term, ...],
) -> DRStrategy:
    """Play scripted prefix moves, then delegate to a premise strategy through
    a coordinate translation."""

    def g0(play: Play):
        if len(play.moves) < prefix_len:
            return ("pre", play), ordinals.ZERO
        strat, anchor = select(play)
        inner = _translate_play(anchor, strat.context, play)
        y, a = strat.dr.g0(inner)
        return ("run", play, y), a

    def g1(play: Play, tagged, a):
        if tagged[0] == "pre":
            return tagged, a
        _, play0, y = tagged
        strat, anchor = select(play0)
        inner = _translate_play(anchor, strat.context, play0)
        y2, a2 = strat.dr.g1(inner, y, a)
        return ("run", play0, y2), a2

    def g2(tagged):
        if tagged[0] == "pre":
            return script(tagged[1])
        _, play0, y = tagged
        strat, anchor = select(play0)
        move, h = strat.dr.g2(y)
        out = _translate_out(anchor, move) if move is not None else None
        return out, h

    return DRStrategy(context, gamma, alpha, witnesses, DRFunction(gamma, g0, g1, g2))


def pad_strategy(s: DRStrategy, gamma: Ordinal, alpha: Ordinal) -> DRStrategy:
    """Re-declare a strategy at a weaker bound: the root height becomes alpha
    and the evaluation bound gamma (both must dominate the old ones)."""
    if ordinals.cmp(gamma, s.gamma) == ordinals.LESS or ordinals.cmp(alpha, s.alpha) == ordinals.LESS:
        raise CompileError("padding must not shrink the declared bound")
    if gamma == s.gamma and alpha == s.alpha:
        return s

    def g0(play):
        y, a = s.dr.g0(play)
        return (play, y), a

    def g1(play, v, a):
        p0, y = v
        y2, a2 = s.dr.g1(p0, y, a)
        return (p0, y2), a2

    def g2(v):
        p0, y = v
        move, h = s.dr.g2(y)
        if not p0.moves:
            h = alpha
        return move, h

    return DRStrategy(s.context, gamma, alpha, s.witnesses, DRFunction(gamma, g0, g1, g2))


# ---------------------------------------------------------------------------
# The copycat endgame


def _copycat_walk(
    sig: Signature,
    play: Play,
    idx: int,
    h_idx: Ordinal,
    occ_pos: Optional[Source],
    occ_neg: Source,
    entry_guess: Optional[Tuple[Source, object]] = None,
):
    """Mirror Abelard's replies across a dual pair of occurrences.

    Positions from idx on are labelled h_idx - (len - idx); the walk verifies
    the play follows the script and returns (next move | None, height)."""
    moves = play.moves

    def label() -> Ordinal:
        steps = len(moves) - idx
        fin = h_idx.finite_part()
        if steps > fin:
            raise OutsideStrategyError("copycat ran past its move budget")
        return ordinals.add(h_idx.limit_part(), ordinals.from_int(fin - steps))

    j = idx
    if entry_guess is not None:
        want = Move(games.GUESS, entry_guess[0], entry_guess[1])
        if len(moves) == j:
            return want, label()
        if moves[j] != want:
            raise OutsideStrategyError("play deviates from the copycat entry guess")
        occ_pos = MoveRef(j)
        j += 1
    while True:
        neg_f = games.source_formula(play, occ_neg)
        if isinstance(neg_f, F.Lit):
            return None, label()
        if len(moves) == j:
            return Move(games.QUERY, occ_neg), label()
        if moves[j].tag != games.QUERY or games.move_formula_at(play, j) != neg_f:
            raise OutsideStrategyError("play deviates from the copycat query")
        j += 1
        if len(moves) == j:
            return None, label()
        reply = moves[j]
        if reply.tag != games.REPLY:
            raise OutsideStrategyError("copycat expected a reply")
        sel = reply.selector
        occ_child_n = MoveRef(j)
        child_n = games.move_formula_at(play, j)
        j += 1
        dual_sel = sel if sel in (F.LEFT, F.RIGHT) else F.numeral(sel)
        if len(moves) == j:
            return Move(games.GUESS, occ_pos, dual_sel), label()
        got = moves[j]
        if got.tag != games.GUESS or got.source != occ_pos:
            raise OutsideStrategyError("play deviates from the copycat dual guess")
        occ_child_p = MoveRef(j)
        j += 1
        if F.is_negative(child_n):
            occ_neg, occ_pos = occ_child_n, occ_child_p
        else:
            occ_neg, occ_pos = occ_child_p, occ_child_n


# ---------------------------------------------------------------------------
# The induction strategy (the explicit strategy tree)


def induction_strategy(
    sig: Signature,
    context: Tuple[Formula, ...],
    var: str,
    phi: Formula,
    witnesses: Tuple[Term, ...],
) -> DRStrategy:
    """The (1, omega+1)-strategy: query the universal formula; on the reply
    phi(n+1), guess and query phi(n) and not phi(n+1), descending through the
    labels 3c+3n+2, 3c+3n+1, 3c+3n; on phi(0) or a matching dual pair run the
    copycat endgame from 3c."""
    neg0, step, allf = induction_formulas(var, phi)
    p_neg0 = context.index(neg0)
    p_ex = context.index(step)
    p_all = context.index(allf)
    c = F.rank(phi)
    threec = 3 * c
    omega1 = ordinals.add(ordinals.OMEGA, ordinals.ONE)
    phi_is_neg = F.is_negative(phi)

    def script(play: Play):
        moves = play.moves
        if len(moves) == 0:
            return Move(games.QUERY, CtxRef(p_all)), omega1
        if moves[0] != Move(games.QUERY, CtxRef(p_all)):
            raise OutsideStrategyError("induction play must open with the universal query")
        if len(moves) == 1:
            return None, ordinals.OMEGA
        if moves[1].tag != games.REPLY or not isinstance(moves[1].selector, int):
            raise OutsideStrategyError("expected a numeral reply to the universal query")
        k = moves[1].selector
        k_occ = 1
        j = 2
        while True:
            if k == 0:
                # copycat on the pair phi(0) / not phi(0): query the negative side
                if phi_is_neg:
                    occ_neg: Source = MoveRef(k_occ)
                    occ_pos: Source = CtxRef(p_neg0)
                else:
                    occ_neg, occ_pos = CtxRef(p_neg0), MoveRef(k_occ)
                return _copycat_walk(sig, play, j, ordinals.from_int(threec + 2), occ_pos, occ_neg)
            # guess then query phi(k-1) and not phi(k)
            guess = Move(games.GUESS, CtxRef(p_ex), F.numeral(k - 1))
            if len(moves) == j:
                return guess, ordinals.from_int(threec + 3 * k + 2)
            if moves[j] != guess:
                raise OutsideStrategyError("play deviates from the induction step guess")
            query = Move(games.QUERY, MoveRef(j))
            if len(moves) == j + 1:
                return query, ordinals.from_int(threec + 3 * k + 1)
            if moves[j + 1] != query:
                raise OutsideStrategyError("play deviates from the induction step query")
            if len(moves) == j + 2:
                return None, ordinals.from_int(threec + 3 * k)
            reply = moves[j + 2]
            if reply.tag != games.REPLY:
                raise OutsideStrategyError("expected Abelard's reply to the step query")
            if reply.selector == F.LEFT:
                # phi(k-1): continue the descent
                k, k_occ, j = k - 1, j + 2, j + 3
                continue
            # not phi(k): copycat against the earlier phi(k)
            if phi_is_neg:
                occ_neg, occ_pos = MoveRef(k_occ), MoveRef(j + 2)
            else:
                occ_neg, occ_pos = MoveRef(j + 2), MoveRef(k_occ)
            return _copycat_walk(sig, play, j + 3, ordinals.from_int(threec + 1), occ_pos, occ_neg)

    return simple_strategy(
        context,
        lambda p: script(p)[0],
        lambda p: script(p)[1],
        alpha=omega1,
        witnesses=witnesses,
    )


# ---------------------------------------------------------------------------
# The transfinite induction strategy


def ti_strategy(
    sig: Signature,
    context: Tuple[Formula, ...],
    var: str,
    phi: Formula,
    alpha: Ordinal,
    witnesses: Tuple[Term, ...],
) -> DRStrategy:
    """The (1, 3c + alpha*5 + 2)-strategy for transfinite induction up to
    alpha: query the bounded universal; on the reply for a code b, either
    guess the false guard (when b does not denote a notation below the
    current bound) or descend through the progress witness at b."""
    progress, goal, gv = ti_formulas(var, phi, alpha)
    p_ex = context.index(progress)
    p_all = context.index(goal)
    c = F.rank(phi)
    threec = 3 * c

    def level(beta: Ordinal, k: int) -> Ordinal:
        # 3c + beta*5 + k
        return ordinals.add(
            ordinals.from_int(threec),
            ordinals.add(ordinals.mul(beta, ordinals.from_int(5)), ordinals.from_int(k)),
        )

    root_h = level(alpha, 2)

    def script(play: Play):
        moves = play.moves
        if len(moves) == 0:
            return Move(games.QUERY, CtxRef(p_all)), root_h
        if moves[0] != Move(games.QUERY, CtxRef(p_all)):
            raise OutsideStrategyError("TI play must open with the bounded universal query")
        if len(moves) == 1:
            return None, level(alpha, 1)
        beta_prev = alpha
        guard_occ: Source = MoveRef(1)
        j = 2
        while True:
            reply = moves[j - 1]
            if reply.tag != games.REPLY or not isinstance(reply.selector, int):
                raise OutsideStrategyError("expected a numeral code reply")
            code = reply.selector
            beta = ordinals.from_code(code)
            if beta is None or ordinals.cmp(beta, beta_prev) != ordinals.LESS:
                # false guard: guess not (code < beta_prev), a true literal
                guess = Move(games.GUESS, guard_occ, F.LEFT)
                if len(moves) == j:
                    return guess, level(beta_prev, 0)
                if moves[j] != guess:
                    raise OutsideStrategyError("play deviates from the false-guard guess")
                if len(moves) == j + 1:
                    return None, ordinals.ZERO
                raise OutsideStrategyError("play continued past the winning guard guess")
            # progress witness at beta
            guess = Move(games.GUESS, CtxRef(p_ex), F.numeral(code))
            if len(moves) == j:
                return guess, level(beta_prev, 0)
            if moves[j] != guess:
                raise OutsideStrategyError("play deviates from the TI progress guess")
            query = Move(games.QUERY, MoveRef(j))
            if len(moves) == j + 1:
                return query, level(beta, 4)
            if moves[j + 1] != query:
                raise OutsideStrategyError("play deviates from the TI progress query")
            if len(moves) == j + 2:
                return None, level(beta, 3)
            reply2 = moves[j + 2]
            if reply2.tag != games.REPLY:
                raise OutsideStrategyError("expected Abelard's reply to the progress query")
            if reply2.selector == F.RIGHT:
                # not phi(beta): guess phi(beta) from the guard disjunction, then copycat
                return _copycat_walk(
                    sig,
                    play,
                    j + 3,
                    ordinals.from_int(threec + 1),
                    None,
                    MoveRef(j + 2),
                    entry_guess=(guard_occ, F.RIGHT),
                )
            # forall g < beta phi(g): query it and recurse
            query2 = Move(games.QUERY, MoveRef(j + 2))
            if len(moves) == j + 3:
                return query2, level(beta, 2)
            if moves[j + 3] != query2:
                raise OutsideStrategyError("play deviates from the inner bounded query")
            if len(moves) == j + 4:
                return None, level(beta, 1)
            beta_prev = beta
            guard_occ = MoveRef(j + 4)
            j = j + 5

    return simple_strategy(
        context,
        lambda p: script(p)[0],
        lambda p: script(p)[1],
        alpha=root_h,
        witnesses=witnesses,
    )


# ---------------------------------------------------------------------------
# The compiler


def _max_bounds(strats: Sequence[DRStrategy]) -> Tuple[Ordinal, Ordinal]:
    g = strats[0].gamma
    a = strats[0].alpha
    for s in strats[1:]:
        if ordinals.cmp(s.gamma, g) == ordinals.GREATER:
            g = s.gamma
        if ordinals.cmp(s.alpha, a) == ordinals.GREATER:
            a = s.alpha
    return g, a


def compile_proof(
    proof: Proof,
    params: Optional[Dict[str, int]] = None,
    debate_check_level: int = 0,
    trace_sink: Optional[List] = None,
) -> DRStrategy:
    """Compile a checked proof (with numerals for its free variables) into a
    finitely guessing descent recursive strategy for its conclusion.

    trace_sink, when given, receives the debate trace records of the root
    cut (and only the root cut)."""
    params = dict(params or {})
    sig = proof.sig
    memo: Dict[Tuple[ProofNode, Tuple[Tuple[str, int], ...], Tuple[Formula, ...]], DRStrategy] = {}

    def inst(phi: Formula, env: Dict[str, int]) -> Formula:
        return F.subst_formula(phi, {v: F.numeral(n) for v, n in env.items()})

    def inst_term(t: Term, env: Dict[str, int]) -> Term:
        return F.subst_term(t, {v: F.numeral(n) for v, n in env.items()})

    def build(node: ProofNode, env: Dict[str, int], ctx: Tuple[Formula, ...]) -> DRStrategy:
        key = (node, tuple(sorted(env.items())), ctx)
        if key in memo:
            return memo[key]
        out = _build(node, env, ctx)
        memo[key] = out
        return out

    def _build(node: ProofNode, env: Dict[str, int], ctx: Tuple[Formula, ...]) -> DRStrategy:
        witnesses = tuple(dict.fromkeys(node_terms(node)))
        if isinstance(node, BasicAxiom):
            if not any(isinstance(phi, F.Lit) and F.eval_literal(sig, phi) for phi in ctx):
                raise CompileError("basic axiom instance has no true literal")
            return simple_strategy(ctx, lambda p: None, lambda p: ordinals.ZERO, ordinals.ZERO, witnesses)

        if isinstance(node, (OrRule, ExistsRule)):
            target = inst(node.target, env)
            tpos = ctx.index(target)
            if isinstance(node, OrRule):
                sel: object = node.side
                child = target.left if node.side == F.LEFT else target.right
            else:
                wit = inst_term(node.witness, env)
                if F.term_vars(wit):
                    raise CompileError("exists witness is open after parameter instantiation")
                sel = wit
                child = F.instantiate(target, wit)
            pctx = ctx[:tpos] + ctx[tpos + 1 :] + (child,)
            fwd = tuple(CtxRef(k) for k in range(len(ctx)) if k != tpos) + (MoveRef(0),)
            anchor = _Anchor(fwd, 1)
            sub = build(node.premise, env, pctx)
            alpha = ordinals.add(sub.alpha, ordinals.ONE)
            prefix = Move(games.GUESS, CtxRef(tpos), sel)

            def script(play: Play, prefix=prefix, alpha=alpha):
                return prefix, alpha

            def select(play: Play, sub=sub, anchor=anchor, prefix=prefix):
                if play.moves[0] != prefix:
                    raise OutsideStrategyError("play does not open with the introduced guess")
                return sub, anchor

            return prefixed_strategy(ctx, 1, script, select, sub.gamma, alpha, tuple(dict.fromkeys(witnesses + sub.witnesses)))

        if isinstance(node, (AndRule, ForallRule)):
            target = inst(node.target, env)
            tpos = ctx.index(target)
            gamma_ctx = ctx[:tpos] + ctx[tpos + 1 :]
            fwd = tuple(CtxRef(k) for k in range(len(ctx)) if k != tpos) + (MoveRef(1),)
            anchor = _Anchor(fwd, 2)
            prefix = Move(games.QUERY, CtxRef(tpos))

            if isinstance(node, AndRule):
                subs = {
                    F.LEFT: build(node.left, env, gamma_ctx + (target.left,)),
                    F.RIGHT: build(node.right, env, gamma_ctx + (target.right,)),
                }
                gam, alp = _max_bounds(list(subs.values()))
                subs = {k: pad_strategy(s, gam, alp) for k, s in subs.items()}
                wits = tuple(dict.fromkeys(witnesses + subs[F.LEFT].witnesses + subs[F.RIGHT].witnesses))

                def pick(play: Play):
                    sel = play.moves[1].selector
                    if sel not in subs:
                        raise OutsideStrategyError("unexpected reply selector")
                    return subs[sel]

            else:
                cache: Dict[int, DRStrategy] = {}

                def premise_at(n: int) -> DRStrategy:
                    if n not in cache:
                        child = F.instantiate(target, F.numeral(n))
                        cache[n] = build(node.premise, {**env, node.eigen: n}, gamma_ctx + (child,))
                    return cache[n]

                probe = premise_at(0)
                gam, alp = probe.gamma, probe.alpha
                wits = tuple(dict.fromkeys(witnesses + probe.witnesses))

                def pick(play: Play):
                    sel = play.moves[1].selector
                    if not isinstance(sel, int):
                        raise OutsideStrategyError("universal replies carry numerals")
                    got = premise_at(sel)
                    if got.gamma != gam or got.alpha != alp:
                        raise CompileError("premise bounds vary with the reply value")
                    return got

            alpha2 = ordinals.add(alp, ordinals.from_int(2))
            alpha1 = ordinals.add(alp, ordinals.ONE)

            def script(play: Play, prefix=prefix, alpha2=alpha2, alpha1=alpha1):
                if len(play.moves) == 0:
                    return prefix, alpha2
                if play.moves[0] != prefix:
                    raise OutsideStrategyError("play does not open with the introduced query")
                return None, alpha1

            def select(play: Play, anchor=anchor, prefix=prefix):
                if play.moves[0] != prefix:
                    raise OutsideStrategyError("play does not open with the introduced query")
                return pick(play), anchor

            return prefixed_strategy(ctx, 2, script, select, gam, alpha2, wits)

        if isinstance(node, CutRule):
            phi_c = inst(node.cut_formula, env)
            if isinstance(phi_c, F.Lit):
                # evaluate the closed literal and keep that side; both sides
                # are still compiled so the declared bound does not depend on
                # the parameter values
                s_l = build(node.left, env, ctx + (F.negate(phi_c),))
                s_r = build(node.right, env, ctx + (phi_c,))
                gam, alp = _max_bounds([s_l, s_r])
                sub = pad_strategy(s_l if F.eval_literal(sig, phi_c) else s_r, gam, alp)
                fwd = tuple(CtxRef(k) for k in range(len(ctx))) + (None,)
                anchor = _Anchor(fwd, 0)

                def script_lit(play: Play):  # pragma: no cover - prefix_len is 0
                    raise OutsideStrategyError("unreachable")

                def select_lit(play: Play, sub=sub, anchor=anchor):
                    return sub, anchor

                wits = tuple(dict.fromkeys(s_l.witnesses + s_r.witnesses))
                return prefixed_strategy(ctx, 0, script_lit, select_lit, gam, alp, wits)
            psi = phi_c if F.is_positive(phi_c) else F.negate(phi_c)
            if F.is_positive(phi_c):
                node_neg, node_pos = node.left, node.right
            else:
                node_neg, node_pos = node.right, node.left
            s_neg = build(node_neg, env, ctx + (F.negate(psi),))
            s_pos = build(node_pos, env, ctx + (psi,))
            gam, alp = _max_bounds([s_neg, s_pos])
            s_neg = pad_strategy(s_neg, gam, alp)
            s_pos = pad_strategy(s_pos, gam, alp)
            sink = trace_sink if node is proof.root else None
            return debate_mod.cut_dr(s_neg, s_pos, sig, ctx, psi, check_level=debate_check_level, trace_sink=sink)

        if isinstance(node, InductionAxiom):
            phi1 = inst(node.phi, {k: v for k, v in env.items() if k != node.var})
            neg0, step, allf = induction_formulas(node.var, phi1)
            want = {neg0, step, allf}
            if not want <= set(ctx):
                raise CompileError("induction context lacks the schema formulas")
            return induction_strategy(sig, ctx, node.var, phi1, tuple(dict.fromkeys(witnesses)))

        if isinstance(node, TIAxiom):
            phi1 = inst(node.phi, {k: v for k, v in env.items() if k != node.var})
            return ti_strategy(sig, ctx, node.var, phi1, node.alpha, tuple(dict.fromkeys(witnesses)))

        raise CompileError(f"cannot compile node {type(node).__name__}")

    root_ctx = tuple(inst(phi, params) for phi in proof.root.conclusion)
    free = set().union(*(F.formula_vars(phi) for phi in root_ctx)) if root_ctx else set()
    if free:
        raise CompileError(f"parameters missing for free variables: {sorted(free)}")
    return build(proof.root, params, root_ctx)
