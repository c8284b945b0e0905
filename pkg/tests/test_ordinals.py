import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from pagames import ordinals as O
from pagames.ordinals import LESS, EQUAL, GREATER, Ordinal

from conftest import random_ordinal

w = O.OMEGA


def o(text):
    return O.parse_ordinal(text)


# ---------------------------------------------------------------------------
# An independent oracle: ordinals below w^6 as flat coefficient vectors
# (w^5 .. w^0), compared lexicographically, with positional add/mul.


class Vec:
    K = 6

    def __init__(self, coeffs):
        self.c = tuple(coeffs)
        assert len(self.c) == self.K

    @classmethod
    def from_triple(cls, p, q, r):
        return cls((0, 0, 0, p, q, r))

    def degree(self):
        for i, v in enumerate(self.c):
            if v:
                return self.K - 1 - i
        return -1  # zero

    def cmp(self, other):
        if self.c == other.c:
            return EQUAL
        return LESS if self.c < other.c else GREATER

    def add(self, other):
        d = other.degree()
        if d < 0:
            return self
        out = [0] * self.K
        pos = self.K - 1 - d
        for i in range(pos):
            out[i] = self.c[i]
        out[pos] = self.c[pos] + other.c[pos]
        for i in range(pos + 1, self.K):
            out[i] = other.c[i]
        return Vec(out)

    def mul(self, other):
        out = Vec([0] * self.K)
        d_self = self.degree()
        if d_self < 0:
            return out
        for i, coeff in enumerate(other.c):
            if coeff == 0:
                continue
            f = self.K - 1 - i
            if f == 0:
                piece = [0] * self.K
                pos = self.K - 1 - d_self
                piece[pos] = self.c[pos] * coeff
                for jj in range(pos + 1, self.K):
                    piece[jj] = self.c[jj]
            else:
                piece = [0] * self.K
                assert d_self + f < self.K
                piece[self.K - 1 - (d_self + f)] = coeff
            out = out.add(Vec(piece))
        return out

    def to_ordinal(self):
        out = O.ZERO
        for i, coeff in enumerate(self.c):
            if coeff:
                deg = self.K - 1 - i
                out = O.add(out, O.mul(O.omega_pow(O.from_int(deg)), O.from_int(coeff)))
        return out


def triples(bound=5):
    return list(itertools.product(range(bound + 1), repeat=3))


def test_cmp_trivia():
    assert O.cmp(O.ZERO, O.ZERO) == EQUAL
    assert O.cmp(w, O.add(w, O.ONE)) == LESS


def test_cmp_agrees_with_triple_oracle():
    ts = triples(5)
    for a in ts:
        for b in ts:
            va, vb = Vec.from_triple(*a), Vec.from_triple(*b)
            assert O.cmp(va.to_ordinal(), vb.to_ordinal()) == va.cmp(vb)


def test_add_mul_trivia():
    assert O.add(O.ONE, w) == w
    assert O.mul(w, O.from_int(2)) == o("w*2")


def test_add_mul_agree_with_triple_oracle_sampled():
    rng = random.Random(7)
    ts = triples(5)
    for _ in range(4000):
        a = rng.choice(ts)
        b = rng.choice(ts)
        va, vb = Vec.from_triple(*a), Vec.from_triple(*b)
        assert O.add(va.to_ordinal(), vb.to_ordinal()) == va.add(vb).to_ordinal()
        assert O.mul(va.to_ordinal(), vb.to_ordinal()) == va.mul(vb).to_ordinal()


def test_base_pow_trivia():
    assert O.base_pow(3, O.ZERO) == O.ONE
    assert O.base_pow(3, w) == w
    assert O.base_pow(3, o("w + 2")) == o("w*9")


def test_base_pow_splits_powers():
    rng = random.Random(3)
    for _ in range(300):
        a = random_ordinal(rng)
        succ = O.add(a, O.ONE)
        assert O.base_pow(3, succ) == O.mul(O.base_pow(3, a), O.from_int(3))


def test_base_pow_strictly_monotone():
    rng = random.Random(5)
    for _ in range(1000):
        a, b = random_ordinal(rng), random_ordinal(rng)
        c = O.cmp(a, b)
        if c == LESS:
            assert O.cmp(O.base_pow(3, a), O.base_pow(3, b)) == LESS
        elif c == GREATER:
            assert O.cmp(O.base_pow(3, a), O.base_pow(3, b)) == GREATER


def test_c_scalar_values():
    assert O.c_scalar(0, w) == o("w*2")
    assert O.c_scalar(1, O.ONE) == O.from_int(9)
    assert O.c_scalar(2, O.ZERO) == O.from_int(3)


def test_arithmetic_properties():
    rng = random.Random(11)
    for _ in range(1000):
        a, b, c = (random_ordinal(rng) for _ in range(3))
        assert O.add(O.add(a, b), c) == O.add(a, O.add(b, c))
        assert O.mul(a, O.add(b, c)) == O.add(O.mul(a, b), O.mul(a, c))


def test_trichotomy_and_transitivity():
    rng = random.Random(13)
    for _ in range(10_000):
        a, b, c = (random_ordinal(rng) for _ in range(3))
        assert sum(1 for r in (O.cmp(a, b), O.cmp(b, a)) if r == EQUAL) in (0, 2)
        assert O.cmp(a, b) == -O.cmp(b, a)
        if O.cmp(a, b) != GREATER and O.cmp(b, c) != GREATER:
            assert O.cmp(a, c) != GREATER


def test_ops_preserve_canonicity():
    rng = random.Random(17)
    for _ in range(500):
        a, b = random_ordinal(rng), random_ordinal(rng)
        for r in (O.add(a, b), O.mul(a, b), O.base_pow(3, a), O.omega_pow(a)):
            Ordinal(r.terms)  # re-runs the constructor invariants


def test_long_descending_chain_stays_canonical():
    # a generated strictly decreasing chain from w^w^w of length 10^4
    rng = random.Random(19)
    cur = O.omega_pow(O.omega_pow(w))
    for _ in range(10_000):
        if cur.is_zero():
            break
        nxt = _step_down(cur, rng)
        Ordinal(nxt.terms)
        assert O.cmp(nxt, cur) == LESS
        cur = nxt
    assert True


def _step_down(a, rng):
    exp, coeff = a.terms[0]
    rest = Ordinal(a.terms[1:])
    if not rest.is_zero() and rng.random() < 0.5:
        return Ordinal(a.terms[:-1] + _step_down(Ordinal(a.terms[-1:]), rng).terms)
    if coeff > 1:
        return Ordinal(((exp, coeff - 1),))
    if exp.is_zero():
        return O.ZERO
    smaller_exp = _step_down(exp, rng)
    if smaller_exp.is_zero():
        return O.from_int(rng.randint(1, 9))
    return O.mul(O.omega_pow(smaller_exp), O.from_int(rng.randint(1, 9)))


def test_parse_trivia():
    assert o("0") == O.ZERO
    assert o("w^w + w*3 + 5") == O.add(O.omega_pow(w), O.add(O.mul(w, O.from_int(3)), O.from_int(5)))


def test_render_parse_round_trip():
    rng = random.Random(23)
    for _ in range(100):
        a = random_ordinal(rng, depth=3)
        s = O.render_ordinal(a)
        assert O.parse_ordinal(s) == a
        assert O.render_ordinal(O.parse_ordinal(s)) == s


def test_parse_rejects_non_canonical():
    with pytest.raises(O.OrdinalParseError):
        o("3 + w")
    with pytest.raises(O.OrdinalParseError):
        o("w + w")
    with pytest.raises(O.OrdinalParseError):
        o("w*0")


def test_parse_error_position():
    try:
        o("w^")
        assert False
    except O.OrdinalParseError as e:
        assert e.pos == 2


def test_codes_round_trip():
    rng = random.Random(29)
    for _ in range(200):
        a = random_ordinal(rng)
        assert O.from_code(O.to_code(a)) == a
    decoded = [O.from_code(n) for n in range(2000)]
    hits = [d for d in decoded if d is not None]
    assert len({O.to_code(d) for d in hits}) == len(hits)


@given(st.integers(min_value=0, max_value=10**6))
def test_finite_round_trip(n):
    assert O.from_int(n).finite_value() == n


@given(st.integers(min_value=0, max_value=200), st.integers(min_value=0, max_value=200))
def test_finite_arithmetic_matches_ints(a, b):
    assert O.add(O.from_int(a), O.from_int(b)) == O.from_int(a + b)
    assert O.mul(O.from_int(a), O.from_int(b)) == O.from_int(a * b)
