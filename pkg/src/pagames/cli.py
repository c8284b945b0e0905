"""Command-line front end: check and compile proof files, play against a
compiled strategy, run traced debates, extract witnesses, and evaluate
ordinal expressions.

Exit codes: 0 success, 1 user error (syntax, invalid proof, bad flags),
2 internal invariant breach (a surfaced EXIT case or a non-decreasing
height), with diagnostics on stderr.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Dict, List, Optional, Sequence, Tuple

from . import compiler as CP
from . import debate as DB
from . import extraction as X
from . import formulas as F
from . import games, interaction, ordinals
from .descent import DRStrategy
from .ordinals import Ordinal


class UserError(Exception):
    pass


# ---------------------------------------------------------------------------
# Ordinal expression calculator
#
#   expr   := term ("+" term)*
#   term   := factor ("*" factor)*
#   factor := base ("^" factor)?
#   base   := "w" | nat | "(" expr ")"
#
# "w^x" is omega-exponentiation, "b^x" (b a number >= 2) is base-b
# exponentiation of a notation; results are rendered canonically.


class _OrdExpr:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise UserError(f"ordinal expression: {msg} at position {self.pos}")

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expr(self) -> Ordinal:
        out = self.term()
        while self.peek() == "+":
            self.pos += 1
            out = ordinals.add(out, self.term())
        return out

    def term(self) -> Ordinal:
        out = self.factor()
        while self.peek() == "*":
            self.pos += 1
            out = ordinals.mul(out, self.factor())
        return out

    def factor(self) -> Ordinal:
        base_kind, base_val = self.base()
        if self.peek() == "^":
            self.pos += 1
            exp = self.factor()
            if base_kind == "w":
                return ordinals.omega_pow(exp)
            if base_kind == "nat" and base_val >= 2:
                return ordinals.base_pow(base_val, exp)
            self.error("only w^x and b^x with a finite base b >= 2 are supported")
        if base_kind == "w":
            return ordinals.OMEGA
        if base_kind == "nat":
            return ordinals.from_int(base_val)
        return base_val  # parenthesised

    def base(self):
        ch = self.peek()
        if ch == "w":
            self.pos += 1
            return "w", None
        if ch.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return "nat", int(self.text[start : self.pos])
        if ch == "(":
            self.pos += 1
            out = self.expr()
            if self.peek() != ")":
                self.error("missing ')'")
            self.pos += 1
            return "expr", out
        self.error("expected w, a number or '('")


def eval_ordinal_expr(text: str) -> Ordinal:
    p = _OrdExpr(text)
    out = p.expr()
    if p.peek():
        p.error("trailing input")
    return out


# ---------------------------------------------------------------------------
# Trace records (one line per record, key=value pairs, diff-friendly)


def format_record(pairs: Sequence[Tuple[str, object]]) -> str:
    parts = []
    for key, value in pairs:
        text = str(value)
        if any(ch.isspace() for ch in text) or text == "":
            text = '"' + text.replace('"', "'") + '"'
        parts.append(f"{key}={text}")
    return " ".join(parts)


def parse_record(line: str) -> Dict[str, str]:
    out: Dict[str, str] = {}
    i = 0
    while i < len(line):
        if line[i].isspace():
            i += 1
            continue
        eq = line.index("=", i)
        key = line[i:eq]
        i = eq + 1
        if i < len(line) and line[i] == '"':
            j = line.index('"', i + 1)
            out[key] = line[i + 1 : j]
            i = j + 1
        else:
            j = i
            while j < len(line) and not line[j].isspace():
                j += 1
            out[key] = line[i:j]
            i = j
    return out


# ---------------------------------------------------------------------------
# Shared helpers


def _parse_params(spec: Optional[str]) -> Dict[str, int]:
    if not spec:
        return {}
    out: Dict[str, int] = {}
    for part in spec.split(","):
        if "=" not in part:
            raise UserError(f"bad parameter binding {part!r} (want name=number)")
        name, value = part.split("=", 1)
        try:
            out[name.strip()] = int(value)
        except ValueError:
            raise UserError(f"parameter {name!r} needs a numeric value")
    return out


def _load_checked(path: str, lint_bound: int) -> CP.Proof:
    try:
        proof = CP.load_proof(path)
    except (OSError, F.ParseError, CP.ProofError, F.FormulaError) as e:
        raise UserError(f"{path}: {e}")
    report = CP.check_proof(proof, lint_bound=lint_bound)
    if not report.ok:
        lines = "\n".join(f"  {d.path}: {d.message}" for d in report.errors())
        raise UserError(f"{path}: invalid proof\n{lines}")
    return proof


def _compile(proof: CP.Proof, params: Dict[str, int], check_level: int = 0) -> DRStrategy:
    try:
        return CP.compile_proof(proof, params, debate_check_level=check_level)
    except CP.CompileError as e:
        raise UserError(str(e))


def _render_move(play: games.Play, move: games.Move) -> str:
    return f"{move.tag}: {F.render_formula(games.move_formula(play, move))}"


# ---------------------------------------------------------------------------
# Subcommands


def cmd_ord(args) -> int:
    print(ordinals.render_ordinal(eval_ordinal_expr(args.expr)))
    return 0


def cmd_check(args) -> int:
    proof = CP.load_proof(args.file)
    report = CP.check_proof(proof, lint_bound=args.lint_bound)
    for d in report.diagnostics:
        stream = sys.stderr if d.severity == "error" else sys.stdout
        print(f"{d.severity}: {d.path}: {d.message}", file=stream)
    if not report.ok:
        return 1
    print(f"ok: {len(proof.root.conclusion)} conclusion formula(s), {len(CP.iter_cuts(proof.root))} cut(s)")
    return 0


def cmd_compile(args) -> int:
    proof = _load_checked(args.file, args.lint_bound)
    params = _parse_params(args.params)
    strategy = _compile(proof, params)
    summary = {
        "conclusion": [F.render_formula(phi) for phi in strategy.context],
        "gamma": ordinals.render_ordinal(strategy.gamma),
        "alpha": ordinals.render_ordinal(strategy.alpha),
        "witnesses": sorted(F.render_term(t) for t in strategy.witnesses),
        "cuts": len(CP.iter_cuts(proof.root)),
    }
    text = json.dumps(summary, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_extract(args) -> int:
    proof = _load_checked(args.file, args.lint_bound)
    params = _parse_params(args.params)
    strategy = _compile(proof, params)
    if len(strategy.context) != 1:
        raise UserError("extraction needs a single-formula conclusion")
    goal = X.pi2_goal(strategy.context[0])
    lo, hi = _parse_range(args.inputs)
    for n in range(lo, hi + 1):
        run = X.extract_pi2(strategy, goal, n, sig=proof.sig)
        print(
            format_record(
                [
                    ("input", n),
                    ("output", run.value[0]),
                    ("trace_len", run.trace_length),
                    ("max_ord", ordinals.render_ordinal(run.max_ordinal)),
                ]
            )
        )
    return 0


def _parse_range(spec: str) -> Tuple[int, int]:
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        return int(lo), int(hi)
    n = int(spec)
    return n, n


def _make_oracle(spec: str, rng: random.Random):
    if spec == "id":
        return lambda *xs: xs[-1]
    if spec.startswith("const="):
        k = int(spec.split("=", 1)[1])
        return lambda *xs: k
    if spec.startswith("affine="):
        a, b = (int(v) for v in spec.split("=", 1)[1].split(","))
        return lambda *xs: a * xs[-1] + b
    if spec == "rand":
        return lambda *xs: rng.randint(0, 50)
    raise UserError(f"unknown oracle spec {spec!r} (want id, const=N, affine=a,b or rand)")


def cmd_nci(args) -> int:
    proof = _load_checked(args.file, args.lint_bound)
    params = _parse_params(args.params)
    strategy = _compile(proof, params)
    if len(strategy.context) != 1:
        raise UserError("n.c.i. extraction needs a single-formula conclusion")
    goal = X.nci_goal(strategy.context[0])
    rng = random.Random(args.seed)
    specs = args.oracle.split(";")
    if len(specs) == 1:
        specs = specs * goal.k
    if len(specs) != goal.k:
        raise UserError(f"need {goal.k} oracle spec(s), got {len(specs)}")
    fs = [_make_oracle(s, rng) for s in specs]
    run = X.extract_nci(strategy, goal, fs, sig=proof.sig)
    pairs: List[Tuple[str, object]] = []
    for i, x in enumerate(run.value):
        pairs.append((f"x{i + 1}", x))
    pairs += [("trace_len", run.trace_length), ("max_ord", ordinals.render_ordinal(run.max_ordinal))]
    print(format_record(pairs))
    return 0


def cmd_debate(args) -> int:
    proof = _load_checked(args.file, args.lint_bound)
    params = _parse_params(args.params)
    cuts = CP.iter_cuts(proof.root)
    if not cuts:
        raise UserError("the proof contains no cut")
    if not 0 <= args.cut_id < len(cuts):
        raise UserError(f"cut id out of range (the proof has {len(cuts)} cut(s))")
    node = cuts[args.cut_id]
    sub = CP.Proof(proof.sig, node)
    trace: List[DB.DebateTraceRecord] = []
    strategy = CP.compile_proof(sub, params, debate_check_level=1, trace_sink=trace)
    root = games.Play(proof.sig, strategy.context)
    move, height = strategy.result(root)
    if args.trace:
        for r in trace:
            print(
                format_record(
                    [("stage", r.stage), ("case", r.case), ("n", r.n), ("move", r.last_move), ("u", r.u), ("delta", r.delta)]
                )
            )
    final = "-" if move is None else _render_move(root, move)
    print(format_record([("result", final), ("height", ordinals.render_ordinal(height))]))
    return 0


def cmd_play(args) -> int:
    proof = _load_checked(args.file, args.lint_bound)
    params = _parse_params(args.params)
    strategy = _compile(proof, params)
    play = games.Play(proof.sig, strategy.context)
    print("context:")
    for i, phi in enumerate(play.context):
        print(f"  [{i}] {F.render_formula(phi)}")
    for step in range(args.fuel):
        if games.is_winning_play(play):
            print("Eloisa wins: the table holds a true literal.")
            return 0
        if games.whose_turn(play) == "eloisa":
            move = strategy.move(play)
            if move is None:
                print("Eloisa has no move; the position is dead.", file=sys.stderr)
                return 2
            print(f"eloisa> {_render_move(play, move)}")
            play = games.extend(play, move)
        else:
            fam = games.legal_move_families(play)[0]
            queried = F.render_formula(fam.parent)
            while True:
                if fam.kind == "binary":
                    raw = input(f"abelard (l/r) replies to {queried}> ").strip()
                    sel: object = raw
                else:
                    raw = input(f"abelard (number) replies to {queried}> ").strip()
                    sel = int(raw) if raw.isdigit() else raw
                move = fam.move(sel)
                if games.is_legal_move(play, move):
                    break
                print("illegal reply, try again")
            play = games.extend(play, move)
            print(f"abelard> {_render_move(games.Play(play.sig, play.context, play.moves[:-1]), move)}")
    print("fuel exhausted", file=sys.stderr)
    return 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pagames", description="Game semantics for Peano Arithmetic")
    ap.add_argument("--seed", type=int, default=20260809, help="seed for randomized oracles")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("file")
        p.add_argument("--lint-bound", type=int, default=16, help="basic-axiom instantiation bound")
        p.add_argument("--params", help="numerals for free variables, e.g. x=3,y=0")

    p = sub.add_parser("check", help="validate a proof file")
    p.add_argument("file")
    p.add_argument("--lint-bound", type=int, default=16)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("compile", help="compile a proof and print the strategy summary")
    common(p)
    p.add_argument("--out", help="write the JSON summary to a file")
    p.set_defaults(fn=cmd_compile)

    p = sub.add_parser("extract", help="extract the provably recursive function of a Pi2 theorem")
    common(p)
    p.add_argument("--inputs", required=True, help="a..b or a single number")
    p.set_defaults(fn=cmd_extract)

    p = sub.add_parser("nci", help="no-counter-example extraction for a prenex theorem")
    common(p)
    p.add_argument("--oracle", required=True, help="id | const=N | affine=a,b | rand (';'-separated per block)")
    p.set_defaults(fn=cmd_nci)

    p = sub.add_parser("debate", help="run the canonical debate of one cut, optionally traced")
    common(p)
    p.add_argument("--cut-id", type=int, default=0, help="pre-order index of the cut")
    p.add_argument("--trace", action="store_true", help="stream one record per debate stage")
    p.set_defaults(fn=cmd_debate)

    p = sub.add_parser("play", help="play Abelard against the compiled strategy")
    common(p)
    p.add_argument("--fuel", type=int, default=200)
    p.set_defaults(fn=cmd_play)

    p = sub.add_parser("ord", help="evaluate an ordinal arithmetic expression")
    p.add_argument("expr")
    p.set_defaults(fn=cmd_ord)

    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except UserError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (F.ParseError, F.FormulaError, CP.ProofError, ordinals.OrdinalError, X.ExtractionError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (DB.DebateInternalError, CP.OutsideStrategyError) as e:
        print(f"internal error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
