"""PA terms and formulas in negation normal form, viewed as polarity trees.

Formulas are built from equality literals (and an ordinal-order literal for
transfinite-induction games) with binary or/and and unary exists/forall.
Negation lives only inside literals.  A formula doubles as a well-founded
tree: or/exists nodes are positive, and/forall negative, and literal leaves
always flip polarity relative to their parent.  Node addresses pick out
subformulas; quantifier selectors are normalized to the numeral value of the
chosen witness, which makes the trees of a formula and its negation
literally identical.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, Optional, Sequence, Set, Tuple, Union

from . import ordinals
from .ordinals import Ordinal

LEFT = "l"
RIGHT = "r"
# A node address is a tuple of selectors: LEFT / RIGHT for or/and,
# a natural number for exists/forall children.
Selector = Union[str, int]
NodeAddress = Tuple[Selector, ...]

ROOT: NodeAddress = ()


class FormulaError(ValueError):
    pass


class EvalError(FormulaError):
    """Open term/literal or unknown symbol during evaluation."""


class AddressError(FormulaError):
    """Address not valid in the tree of the formula."""


class ParseError(FormulaError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


# ---------------------------------------------------------------------------
# Terms and signatures


@dataclass(frozen=True)
class Term:
    pass


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class Zero(Term):
    pass


@dataclass(frozen=True)
class Succ(Term):
    arg: Term


@dataclass(frozen=True)
class App(Term):
    symbol: str
    args: Tuple[Term, ...]


ZERO_TERM = Zero()

BUILTIN_ARITIES = {"add": 2, "mul": 2, "monus": 2}


def numeral(n: int) -> Term:
    if n < 0:
        raise FormulaError("numerals are non-negative")
    t: Term = ZERO_TERM
    for _ in range(n):
        t = Succ(t)
    return t


def numeral_value(t: Term) -> Optional[int]:
    """The n with t = S^n 0, or None if t is not a numeral."""
    n = 0
    while isinstance(t, Succ):
        n += 1
        t = t.arg
    return n if isinstance(t, Zero) else None


@dataclass(frozen=True)
class FuncDef:
    name: str
    params: Tuple[str, ...]
    body: Term


@dataclass(frozen=True)
class Signature:
    """User function symbols defined by composition over 0, S, add, mul, monus.

    Definitions are ordered and may only refer to builtins and earlier
    definitions, which keeps them acyclic and elementarily evaluable.
    """

    defs: Tuple[FuncDef, ...] = ()

    def __post_init__(self) -> None:
        seen: Set[str] = set()
        for d in self.defs:
            if d.name in BUILTIN_ARITIES or d.name in seen:
                raise FormulaError(f"duplicate or reserved symbol {d.name!r}")
            allowed = seen | set(BUILTIN_ARITIES)
            _check_def_body(d.body, set(d.params), allowed, self)
            seen.add(d.name)

    def lookup(self, name: str) -> Optional[FuncDef]:
        for d in self.defs:
            if d.name == name:
                return d
        return None

    def arity(self, name: str) -> int:
        if name in BUILTIN_ARITIES:
            return BUILTIN_ARITIES[name]
        d = self.lookup(name)
        if d is None:
            raise EvalError(f"unknown function symbol {name!r}")
        return len(d.params)


EMPTY_SIGNATURE = Signature()


def _check_def_body(t: Term, params: Set[str], allowed: Set[str], sig: Signature) -> None:
    if isinstance(t, Var):
        if t.name not in params:
            raise FormulaError(f"unbound variable {t.name!r} in definition body")
    elif isinstance(t, Succ):
        _check_def_body(t.arg, params, allowed, sig)
    elif isinstance(t, App):
        if t.symbol not in allowed:
            raise FormulaError(f"symbol {t.symbol!r} not yet defined (definitions must be acyclic)")
        want = BUILTIN_ARITIES.get(t.symbol)
        if want is None:
            d = sig.lookup(t.symbol)
            want = len(d.params) if d else None
        if want is not None and want != len(t.args):
            raise FormulaError(f"arity mismatch for {t.symbol!r}")
        for a in t.args:
            _check_def_body(a, params, allowed, sig)


def _strip_succ(t: Term) -> Tuple[int, Term]:
    n = 0
    while isinstance(t, Succ):
        n += 1
        t = t.arg
    return n, t


def _wrap_succ(n: int, t: Term) -> Term:
    for _ in range(n):
        t = Succ(t)
    return t


def term_vars(t: Term) -> Set[str]:
    _, t = _strip_succ(t)
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, App):
        out: Set[str] = set()
        for a in t.args:
            out |= term_vars(a)
        return out
    return set()


def subst_term(t: Term, env: Dict[str, Term]) -> Term:
    n, core = _strip_succ(t)
    if isinstance(core, Var):
        return _wrap_succ(n, env.get(core.name, core))
    if isinstance(core, App):
        return _wrap_succ(n, App(core.symbol, tuple(subst_term(a, env) for a in core.args)))
    return t


def eval_term(sig: Signature, t: Term) -> int:
    """Numeric value of a closed term; raises EvalError on open terms."""
    n, core = _strip_succ(t)
    if isinstance(core, Zero):
        return n
    if isinstance(core, Var):
        raise EvalError(f"open term: free variable {core.name!r}")
    if isinstance(core, App):
        vals = [eval_term(sig, a) for a in core.args]
        if core.symbol == "add":
            return n + vals[0] + vals[1]
        if core.symbol == "mul":
            return n + vals[0] * vals[1]
        if core.symbol == "monus":
            return n + max(vals[0] - vals[1], 0)
        d = sig.lookup(core.symbol)
        if d is None:
            raise EvalError(f"unknown function symbol {core.symbol!r}")
        if len(d.params) != len(vals):
            raise EvalError(f"arity mismatch for {core.symbol!r}")
        env = {p: numeral(v) for p, v in zip(d.params, vals)}
        return n + eval_term(sig, subst_term(d.body, env))
    raise EvalError(f"bad term {t!r}")


# ---------------------------------------------------------------------------
# Formulas


@dataclass(frozen=True)
class Formula:
    pass


EQ = "eq"
OLT = "olt"  # order literal on ordinal notation codes


@dataclass(frozen=True)
class Lit(Formula):
    positive: bool
    rel: str  # EQ or OLT
    left: Term
    right: Term


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


def eq(l: Term, r: Term) -> Lit:
    return Lit(True, EQ, l, r)


def neq(l: Term, r: Term) -> Lit:
    return Lit(False, EQ, l, r)


def olt(l: Term, r: Term) -> Lit:
    return Lit(True, OLT, l, r)


def nolt(l: Term, r: Term) -> Lit:
    return Lit(False, OLT, l, r)


def negate(phi: Formula) -> Formula:
    """De Morgan dual; an involution."""
    if isinstance(phi, Lit):
        return Lit(not phi.positive, phi.rel, phi.left, phi.right)
    if isinstance(phi, Or):
        return And(negate(phi.left), negate(phi.right))
    if isinstance(phi, And):
        return Or(negate(phi.left), negate(phi.right))
    if isinstance(phi, Exists):
        return Forall(phi.var, negate(phi.body))
    if isinstance(phi, Forall):
        return Exists(phi.var, negate(phi.body))
    raise FormulaError(f"bad formula {phi!r}")


def is_positive(phi: Formula) -> bool:
    """True for the disjunctive shapes (or / exists)."""
    return isinstance(phi, (Or, Exists))


def is_negative(phi: Formula) -> bool:
    return isinstance(phi, (And, Forall))


def formula_vars(phi: Formula, bound: Tuple[str, ...] = ()) -> Set[str]:
    if isinstance(phi, Lit):
        return (term_vars(phi.left) | term_vars(phi.right)) - set(bound)
    if isinstance(phi, (Or, And)):
        return formula_vars(phi.left, bound) | formula_vars(phi.right, bound)
    if isinstance(phi, (Exists, Forall)):
        return formula_vars(phi.body, bound + (phi.var,))
    raise FormulaError(f"bad formula {phi!r}")


def is_closed(phi: Formula) -> bool:
    return not formula_vars(phi)


def subst_formula(phi: Formula, env: Dict[str, Term]) -> Formula:
    if isinstance(phi, Lit):
        return Lit(phi.positive, phi.rel, subst_term(phi.left, env), subst_term(phi.right, env))
    if isinstance(phi, Or):
        return Or(subst_formula(phi.left, env), subst_formula(phi.right, env))
    if isinstance(phi, And):
        return And(subst_formula(phi.left, env), subst_formula(phi.right, env))
    if isinstance(phi, (Exists, Forall)):
        inner = {k: v for k, v in env.items() if k != phi.var}
        body = subst_formula(phi.body, inner) if inner else phi.body
        return type(phi)(phi.var, body)
    raise FormulaError(f"bad formula {phi!r}")


def instantiate(phi: Union[Exists, Forall], t: Term) -> Formula:
    return subst_formula(phi.body, {phi.var: t})


def normalize_term(sig: Signature, t: Term) -> Term:
    """Replace every closed (sub)term by the numeral of its value."""
    if not term_vars(t):
        return numeral(eval_term(sig, t))
    n, core = _strip_succ(t)
    if isinstance(core, App):
        core = App(core.symbol, tuple(normalize_term(sig, a) for a in core.args))
    return _wrap_succ(n, core)


def normalize_values(sig: Signature, phi: Formula) -> Formula:
    """The formula with every closed term evaluated to its numeral; two
    instances of one subformula node agree after normalization."""
    if isinstance(phi, Lit):
        return Lit(phi.positive, phi.rel, normalize_term(sig, phi.left), normalize_term(sig, phi.right))
    if isinstance(phi, Or):
        return Or(normalize_values(sig, phi.left), normalize_values(sig, phi.right))
    if isinstance(phi, And):
        return And(normalize_values(sig, phi.left), normalize_values(sig, phi.right))
    if isinstance(phi, (Exists, Forall)):
        return type(phi)(phi.var, normalize_values(sig, phi.body))
    raise FormulaError(f"bad formula {phi!r}")


def eval_literal(sig: Signature, lit: Formula) -> bool:
    """Truth of a closed literal.

    The ordinal-order atom a < b holds iff both sides decode to canonical
    notations and the left compares strictly below the right; an invalid
    code makes the atom false.
    """
    if not isinstance(lit, Lit):
        raise EvalError(f"not a literal: {lit!r}")
    lv = eval_term(sig, lit.left)
    rv = eval_term(sig, lit.right)
    if lit.rel == EQ:
        atom = lv == rv
    elif lit.rel == OLT:
        lo = ordinals.from_code(lv)
        ro = ordinals.from_code(rv)
        atom = lo is not None and ro is not None and ordinals.cmp(lo, ro) == ordinals.LESS
    else:
        raise EvalError(f"unknown relation {lit.rel!r}")
    return atom if lit.positive else not atom


# ---------------------------------------------------------------------------
# The tree view


@dataclass(frozen=True)
class ChildFamily:
    """Description of the children of a node: 'binary', 'term', 'nat' or 'leaf'.

    'term' families (exists nodes) are indexed by closed terms, 'nat'
    families (forall nodes) by natural numbers; in both cases the address
    selector is the numeral value of the chosen child.
    """

    kind: str
    node: Formula

    def child(self, sel: Selector) -> Formula:
        return _child(self.node, sel)


def _child(phi: Formula, sel: Selector) -> Formula:
    if isinstance(phi, (Or, And)):
        if sel == LEFT:
            return phi.left
        if sel == RIGHT:
            return phi.right
        raise AddressError(f"binary node takes l/r, got {sel!r}")
    if isinstance(phi, (Exists, Forall)):
        if not isinstance(sel, int) or sel < 0:
            raise AddressError(f"quantifier node takes a natural selector, got {sel!r}")
        return instantiate(phi, numeral(sel))
    raise AddressError("literal has no children")


def child_family(phi: Formula, addr: NodeAddress = ROOT) -> ChildFamily:
    node = subformula_at(phi, addr)
    if isinstance(node, Lit):
        return ChildFamily("leaf", node)
    if isinstance(node, (Or, And)):
        return ChildFamily("binary", node)
    if isinstance(node, Exists):
        return ChildFamily("term", node)
    return ChildFamily("nat", node)


def subformula_at(phi: Formula, addr: NodeAddress) -> Formula:
    node = phi
    for sel in addr:
        node = _child(node, sel)
    return node


def valid_address(phi: Formula, addr: NodeAddress) -> bool:
    try:
        subformula_at(phi, addr)
        return True
    except AddressError:
        return False


def depth(phi: Formula, addr: NodeAddress) -> int:
    """dt: number of polarity changes along the path; leaves always flip."""
    d = 0
    node = phi
    pol = is_positive(node)
    for sel in addr:
        child = _child(node, sel)
        if isinstance(child, Lit):
            d += 1
        else:
            cpol = is_positive(child)
            if cpol != pol:
                d += 1
            pol = cpol
        node = child
    return d


def formula_depth(phi: Formula) -> int:
    """Maximum dt over the tree (invariant under the infinite branching width)."""

    def go(node: Formula, d: int, pol: Optional[bool]) -> int:
        if isinstance(node, Lit):
            return d
        npol = is_positive(node)
        out = d
        if isinstance(node, (Or, And)):
            kids: Iterable[Formula] = (node.left, node.right)
        else:
            kids = (instantiate(node, ZERO_TERM),)
        for child in kids:
            if isinstance(child, Lit):
                cd = d + 1
            else:
                cd = d + (0 if is_positive(child) == npol else 1)
            out = max(out, go(child, cd, is_positive(child)))
        return out

    return go(phi, 0, None)


def rank(phi: Formula) -> int:
    """Connective/quantifier nesting height (the Tarski game length bound)."""
    if isinstance(phi, Lit):
        return 0
    if isinstance(phi, (Or, And)):
        return 1 + max(rank(phi.left), rank(phi.right))
    return 1 + rank(phi.body)


def is_minimal(phi: Formula, addr: NodeAddress) -> bool:
    """True iff addr is a minimal node of its own depth (first on its path)."""
    if not addr:
        subformula_at(phi, addr)
        return True
    return depth(phi, addr) == depth(phi, addr[:-1]) + 1


def minimal_extension(phi: Formula, a: NodeAddress, b: NodeAddress) -> bool:
    """a subset-of-m b: both minimal, a a prefix of b, dt(b) = dt(a)+1."""
    if b[: len(a)] != a:
        return False
    return is_minimal(phi, a) and is_minimal(phi, b) and depth(phi, b) == depth(phi, a) + 1


def odd_set_check(phi: Formula, nodes: Iterable[NodeAddress], parity: int = 1) -> bool:
    """Check the three odd-set clauses for S; parity=1 checks 'odd', 0 'even'.

    (i) every member is minimal; (ii) S is closed downward under minimal
    extension; (iii) every member whose depth has the given parity has a
    unique minimal extension inside S.
    """
    S = set(nodes)
    for s in S:
        if not is_minimal(phi, s):
            return False
    for s in S:
        d = depth(phi, s)
        if d > 0:
            # the unique minimal prefix of depth d-1 must be in S
            pred = s
            while len(pred) > 0:
                pred = pred[:-1]
                if is_minimal(phi, pred) and depth(phi, pred) == d - 1:
                    break
            if minimal_extension(phi, pred, s) and pred not in S:
                return False
    for s in S:
        if depth(phi, s) % 2 == parity % 2:
            succs = [t for t in S if t != s and minimal_extension(phi, s, t)]
            if len(succs) != 1:
                return False
    return True


# ---------------------------------------------------------------------------
# Text grammar (prefix S-expressions)


def _tokenize(text: str) -> Iterator[Tuple[str, int]]:
    # atoms, parens, double-quoted strings (quotes stripped), ';' line comments
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == ";":
            while i < len(text) and text[i] != "\n":
                i += 1
            continue
        if ch in "()":
            yield ch, i
            i += 1
            continue
        if ch == '"':
            j = text.find('"', i + 1)
            if j < 0:
                raise ParseError("unterminated string", i)
            yield text[i + 1 : j], i
            i = j + 1
            continue
        j = i
        while j < len(text) and not text[j].isspace() and text[j] not in '();"':
            j += 1
        yield text[i:j], i
        i = j


class _SexpReader:
    def __init__(self, text: str):
        self.tokens = list(_tokenize(text))
        self.pos = 0

    def peek(self) -> Optional[Tuple[str, int]]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> Tuple[str, int]:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.tokens))
        self.pos += 1
        return tok

    def read(self):
        tok, at = self.next()
        if tok == "(":
            items = []
            while True:
                nxt = self.peek()
                if nxt is None:
                    raise ParseError("missing ')'", at)
                if nxt[0] == ")":
                    self.next()
                    return items
                items.append(self.read())
        if tok == ")":
            raise ParseError("unexpected ')'", at)
        return tok


def read_sexp(text: str):
    """Parse one S-expression (atom -> str, list -> list)."""
    r = _SexpReader(text)
    out = r.read()
    if r.peek() is not None:
        raise ParseError("trailing input", r.peek()[1])
    return out


def read_sexps(text: str) -> list:
    r = _SexpReader(text)
    out = []
    while r.peek() is not None:
        out.append(r.read())
    return out


def term_from_sexp(sx) -> Term:
    if isinstance(sx, str):
        if sx == "0":
            return ZERO_TERM
        if sx.isdigit():
            return numeral(int(sx))
        return Var(sx)
    if not sx:
        raise FormulaError("empty term")
    head, *args = sx
    if head == "s":
        if len(args) != 1:
            raise FormulaError("s takes one argument")
        return Succ(term_from_sexp(args[0]))
    return App(head, tuple(term_from_sexp(a) for a in args))


_LIT_HEADS = {"=": (True, EQ), "eq": (True, EQ), "neq": (False, EQ), "olt": (True, OLT), "nolt": (False, OLT)}


def formula_from_sexp(sx) -> Formula:
    if isinstance(sx, str) or not sx:
        raise FormulaError(f"bad formula sexp {sx!r}")
    head, *rest = sx
    if head in _LIT_HEADS:
        pos, rel = _LIT_HEADS[head]
        if len(rest) != 2:
            raise FormulaError(f"{head} takes two terms")
        return Lit(pos, rel, term_from_sexp(rest[0]), term_from_sexp(rest[1]))
    if head in ("or", "and"):
        if len(rest) != 2:
            raise FormulaError(f"{head} takes two formulas")
        ctor = Or if head == "or" else And
        return ctor(formula_from_sexp(rest[0]), formula_from_sexp(rest[1]))
    if head in ("exists", "forall"):
        if len(rest) != 2 or not isinstance(rest[0], str):
            raise FormulaError(f"{head} takes a variable and a body")
        ctor = Exists if head == "exists" else Forall
        return ctor(rest[0], formula_from_sexp(rest[1]))
    raise FormulaError(f"unknown connective {head!r}")


def parse_term(text: str) -> Term:
    return term_from_sexp(read_sexp(text))


def parse_formula(text: str) -> Formula:
    return formula_from_sexp(read_sexp(text))


def render_term(t: Term) -> str:
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Succ):
        n = numeral_value(t)
        if n is not None:
            return str(n)
        return f"(s {render_term(t.arg)})"
    if isinstance(t, App):
        inner = " ".join(render_term(a) for a in t.args)
        return f"({t.symbol} {inner})"
    raise FormulaError(f"bad term {t!r}")


def render_formula(phi: Formula) -> str:
    if isinstance(phi, Lit):
        heads = {(True, EQ): "=", (False, EQ): "neq", (True, OLT): "olt", (False, OLT): "nolt"}
        return f"({heads[(phi.positive, phi.rel)]} {render_term(phi.left)} {render_term(phi.right)})"
    if isinstance(phi, Or):
        return f"(or {render_formula(phi.left)} {render_formula(phi.right)})"
    if isinstance(phi, And):
        return f"(and {render_formula(phi.left)} {render_formula(phi.right)})"
    if isinstance(phi, Exists):
        return f"(exists {phi.var} {render_formula(phi.body)})"
    if isinstance(phi, Forall):
        return f"(forall {phi.var} {render_formula(phi.body)})"
    raise FormulaError(f"bad formula {phi!r}")


def ordinal_code_term(a: Ordinal) -> Term:
    """Numeral term carrying the code of a notation (for TI game formulas)."""
    return numeral(ordinals.to_code(a))
