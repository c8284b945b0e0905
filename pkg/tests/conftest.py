import random

from hypothesis import HealthCheck, settings

from pagames import formulas as F
from pagames import games, ordinals

settings.register_profile(
    "suite",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


def random_ordinal(rng: random.Random, depth: int = 2, max_terms: int = 3, max_coeff: int = 4) -> ordinals.Ordinal:
    """Random canonical notation of bounded tower depth."""
    if depth == 0 or rng.random() < 0.3:
        return ordinals.from_int(rng.randint(0, max_coeff))
    n_terms = rng.randint(1, max_terms)
    exps = []
    seen = set()
    for _ in range(n_terms):
        e = random_ordinal(rng, depth - 1, max_terms, max_coeff)
        if e not in seen:
            seen.add(e)
            exps.append(e)
    exps.sort(key=lambda e: _sort_key(e), reverse=True)
    terms = tuple((e, rng.randint(1, max_coeff)) for e in exps)
    return ordinals.Ordinal(terms)


def _sort_key(e: ordinals.Ordinal):
    # any total order consistent with cmp works for sorting exponents
    import functools

    return functools.cmp_to_key(ordinals.cmp)(e)


def random_formula(rng: random.Random, depth: int = 3, vars_: tuple = ()) -> F.Formula:
    if depth == 0 or (rng.random() < 0.25 and depth < 3):
        mk = rng.choice([F.eq, F.neq])
        return mk(random_term(rng, vars_), random_term(rng, vars_))
    kind = rng.randrange(4)
    if kind == 0:
        return F.Or(random_formula(rng, depth - 1, vars_), random_formula(rng, depth - 1, vars_))
    if kind == 1:
        return F.And(random_formula(rng, depth - 1, vars_), random_formula(rng, depth - 1, vars_))
    v = f"v{len(vars_)}"
    ctor = F.Exists if kind == 2 else F.Forall
    return ctor(v, random_formula(rng, depth - 1, vars_ + (v,)))


def random_term(rng: random.Random, vars_: tuple = ()) -> F.Term:
    roll = rng.random()
    if vars_ and roll < 0.4:
        return F.Var(rng.choice(vars_))
    if roll < 0.7:
        return F.numeral(rng.randint(0, 3))
    op = rng.choice(["add", "mul", "monus"])
    return F.App(op, (random_term(rng, vars_), random_term(rng, vars_)))


def random_closed_formula(rng: random.Random, depth: int = 3) -> F.Formula:
    return random_formula(rng, depth, vars_=())


def random_abelard(rng: random.Random, nat_bound: int = 6):
    """A legal random opponent."""

    def oracle(play: games.Play):
        fams = games.legal_move_families(play)
        fam = fams[0]
        if fam.kind == "binary":
            return fam.move(rng.choice([F.LEFT, F.RIGHT]))
        return fam.move(rng.randint(0, nat_bound))

    return oracle


def sample_plays(strategy_move, context, sig, rng: random.Random, count: int, fuel: int = 400, nat_bound: int = 6):
    """Winning plays of a strategy against random opponents."""
    out = []
    root = games.Play(sig, tuple(context))
    for _ in range(count):
        outcome = games.simulate(strategy_move, random_abelard(rng, nat_bound), root, fuel)
        assert isinstance(outcome, games.Won), outcome
        out.append(outcome.play)
    return out
