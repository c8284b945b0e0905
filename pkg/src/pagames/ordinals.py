"""Ordinal notations below epsilon_0 in Cantor normal form.

An ordinal is a finite sum ``w^e1*c1 + ... + w^ek*ck`` with exponents
``e1 > e2 > ... > ek`` (themselves notations) and positive integer
coefficients.  The empty sum denotes 0; a finite ordinal n is the single
term with exponent 0 and coefficient n.  Canonical form is enforced at
construction, so comparison is pure structural comparison and every
operation both assumes and preserves canonicity.

Coefficients are Python ints, i.e. arbitrary-precision naturals: the
c_nu towers produce very large finite parts quickly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

LESS, EQUAL, GREATER = -1, 0, 1


class OrdinalError(ValueError):
    """Malformed (non-canonical) notation or bad argument."""


class OrdinalParseError(OrdinalError):
    """Syntax error in the ordinal text grammar; carries a position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


@dataclass(frozen=True)
class Ordinal:
    """CNF notation: tuple of (exponent, coefficient) pairs, exponents strictly decreasing."""

    terms: Tuple[Tuple["Ordinal", int], ...] = ()

    def __post_init__(self) -> None:
        prev: Optional[Ordinal] = None
        for exp, coeff in self.terms:
            if not isinstance(coeff, int) or coeff < 1:
                raise OrdinalError(f"coefficient must be a positive int, got {coeff!r}")
            if not isinstance(exp, Ordinal):
                raise OrdinalError(f"exponent must be an Ordinal, got {exp!r}")
            if prev is not None and cmp(exp, prev) != LESS:
                raise OrdinalError("exponents must be strictly decreasing")
            prev = exp

    # -- structure helpers ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero())

    def finite_value(self) -> int:
        if self.is_zero():
            return 0
        if not self.is_finite():
            raise OrdinalError(f"{self} is not finite")
        return self.terms[0][1]

    def finite_part(self) -> int:
        """Coefficient of the trailing w^0 term (0 if absent)."""
        if self.terms and self.terms[-1][0].is_zero():
            return self.terms[-1][1]
        return 0

    def limit_part(self) -> "Ordinal":
        """The notation with the trailing finite term removed."""
        if self.terms and self.terms[-1][0].is_zero():
            return Ordinal(self.terms[:-1])
        return self

    def is_successor(self) -> bool:
        return self.finite_part() > 0

    # -- operator sugar ---------------------------------------------------

    def __lt__(self, other: "Ordinal") -> bool:
        return cmp(self, other) == LESS

    def __le__(self, other: "Ordinal") -> bool:
        return cmp(self, other) != GREATER

    def __gt__(self, other: "Ordinal") -> bool:
        return cmp(self, other) == GREATER

    def __ge__(self, other: "Ordinal") -> bool:
        return cmp(self, other) != LESS

    def __add__(self, other: "Ordinal | int") -> "Ordinal":
        return add(self, _coerce(other))

    def __radd__(self, other: int) -> "Ordinal":
        return add(_coerce(other), self)

    def __mul__(self, other: "Ordinal | int") -> "Ordinal":
        return mul(self, _coerce(other))

    def __rmul__(self, other: int) -> "Ordinal":
        return mul(_coerce(other), self)

    def __str__(self) -> str:
        return render_ordinal(self)

    def __repr__(self) -> str:
        return f"Ordinal[{render_ordinal(self)}]"


def _coerce(x: "Ordinal | int") -> Ordinal:
    if isinstance(x, Ordinal):
        return x
    return from_int(x)


def from_int(n: int) -> Ordinal:
    if n < 0:
        raise OrdinalError("ordinals are non-negative")
    if n == 0:
        return ZERO
    return Ordinal(((ZERO, n),))


ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


# -- comparison and arithmetic --------------------------------------------


def cmp(a: Ordinal, b: Ordinal) -> int:
    """Total order on canonical notations: -1 (less), 0 (equal), +1 (greater)."""
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = cmp(ea, eb)
        if c != EQUAL:
            return c
        if ca != cb:
            return LESS if ca < cb else GREATER
    if len(a.terms) == len(b.terms):
        return EQUAL
    return LESS if len(a.terms) < len(b.terms) else GREATER


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    """CNF addition: terms of a below b's leading exponent are absorbed."""
    if b.is_zero():
        return a
    if a.is_zero():
        return b
    lead = b.terms[0][0]
    kept = []
    for exp, coeff in a.terms:
        c = cmp(exp, lead)
        if c == GREATER:
            kept.append((exp, coeff))
        elif c == EQUAL:
            kept.append((exp, coeff + b.terms[0][1]))
            return Ordinal(tuple(kept) + b.terms[1:])
        else:
            break
    return Ordinal(tuple(kept) + b.terms)


def mul(a: Ordinal, b: Ordinal) -> Ordinal:
    """CNF multiplication, distributing over b's terms on the left."""
    if a.is_zero() or b.is_zero():
        return ZERO
    e1, c1 = a.terms[0]
    out = ZERO
    for f, d in b.terms:
        if f.is_zero():
            # a * d for finite d > 0: scale the leading coefficient only.
            piece = Ordinal(((e1, c1 * d),) + a.terms[1:])
        else:
            piece = Ordinal(((add(e1, f), d),))
        out = add(out, piece)
    return out


def omega_pow(a: Ordinal) -> Ordinal:
    return Ordinal(((a, 1),))


def base_pow(base: int, a: Ordinal) -> Ordinal:
    """b^a for an integer base b >= 2.

    b^0 = 1; b^(lam+n) = b^lam * b^n for the finite tail n; for a pure limit
    lam = w^b1*c1 + ... + w^bk*ck (all bi >= 1),
    b^lam = w^(w^(b1-1)*c1 + ... + w^(bk-1)*ck), where the -1 acts only on
    finite exponents.
    """
    if base < 2:
        raise OrdinalError("base must be >= 2")
    n = a.finite_part()
    lam = a.limit_part()
    fin = from_int(base**n)
    if lam.is_zero():
        return fin
    inner_terms = []
    for exp, coeff in lam.terms:
        if exp.is_finite():
            inner_terms.append((from_int(exp.finite_value() - 1), coeff))
        else:
            inner_terms.append((exp, coeff))
    limit_pow = omega_pow(Ordinal(tuple(inner_terms)))
    return mul(limit_pow, fin)


def c_scalar(nu: int, a: Ordinal) -> Ordinal:
    """The tower c_0(a) = a*2, c_(nu+1)(a) = 3^(c_nu(a))."""
    if nu < 0:
        raise OrdinalError("nu must be a natural number")
    r = mul(a, from_int(2))
    for _ in range(nu):
        r = base_pow(3, r)
    return r


# -- codes (used for the ordinal-order literals in TI games) ---------------


def _pair(x: int, y: int) -> int:
    s = x + y
    return s * (s + 1) // 2 + y


def _unpair(z: int) -> Tuple[int, int]:
    from math import isqrt

    s = (isqrt(8 * z + 1) - 1) // 2
    if s * (s + 1) // 2 > z:
        s -= 1
    y = z - s * (s + 1) // 2
    return s - y, y


def to_code(a: Ordinal) -> int:
    """Numeric code of a notation (injective; 0 codes 0)."""
    if a.is_zero():
        return 0
    (exp, coeff), rest = a.terms[0], Ordinal(a.terms[1:])
    return 1 + _pair(_pair(to_code(exp), coeff - 1), to_code(rest))


def from_code(n: int) -> Optional[Ordinal]:
    """Inverse of to_code; None if n does not code a canonical notation."""
    if n < 0:
        return None
    if n == 0:
        return ZERO
    head, rest_code = _unpair(n - 1)
    exp_code, coeff_m1 = _unpair(head)
    exp = from_code(exp_code)
    rest = from_code(rest_code)
    if exp is None or rest is None:
        return None
    try:
        return Ordinal(((exp, coeff_m1 + 1),) + rest.terms)
    except OrdinalError:
        return None


# -- text grammar -----------------------------------------------------------
#
#   ord  := sum | "0"
#   sum  := term ("+" term)*
#   term := "w^(" ord ")" ("*" nat)? | "w" ("*" nat)? | nat
#
# Whitespace is insignificant.  As a convenience the parser also accepts
# "w^w" and "w^<nat>" for exponents that need no parentheses; the renderer
# always emits the parenthesised form.


def render_ordinal(a: Ordinal) -> str:
    if a.is_zero():
        return "0"
    parts = []
    for exp, coeff in a.terms:
        if exp.is_zero():
            parts.append(str(coeff))
            continue
        if exp == ONE:
            base = "w"
        else:
            base = f"w^({render_ordinal(exp)})"
        parts.append(base if coeff == 1 else f"{base}*{coeff}")
    return " + ".join(parts)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise OrdinalParseError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def nat(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise OrdinalParseError("expected a number", start)
        return int(self.text[start : self.pos])

    def term(self) -> Tuple[Ordinal, int]:
        self.skip_ws()
        start = self.pos
        ch = self.peek()
        if ch.isdigit():
            n = self.nat()
            if n == 0:
                raise OrdinalParseError("zero term in a sum", start)
            return ZERO, n
        if ch != "w":
            raise OrdinalParseError("expected 'w' or a number", self.pos)
        self.pos += 1
        exp = ONE
        if self.peek() == "^":
            self.pos += 1
            if self.peek() == "(":
                self.pos += 1
                exp = self.ord()
                self.expect(")")
            elif self.peek() == "w":
                self.pos += 1
                exp = OMEGA
            else:
                exp = from_int(self.nat())
        coeff = 1
        if self.peek() == "*":
            self.pos += 1
            npos = self.pos
            coeff = self.nat()
            if coeff == 0:
                raise OrdinalParseError("coefficient must be positive", npos)
        return exp, coeff

    def ord(self) -> Ordinal:
        self.skip_ws()
        start = self.pos
        if self.peek() == "0":
            self.pos += 1
            return ZERO
        terms = [self.term()]
        while self.peek() == "+":
            self.pos += 1
            terms.append(self.term())
        prev = None
        for exp, _ in terms:
            if prev is not None and cmp(exp, prev) != LESS:
                raise OrdinalParseError("non-canonical: exponents must strictly decrease", start)
            prev = exp
        return Ordinal(tuple(terms))


def parse_ordinal(text: str) -> Ordinal:
    p = _Parser(text)
    result = p.ord()
    p.skip_ws()
    if p.pos != len(text):
        raise OrdinalParseError("trailing input", p.pos)
    return result
