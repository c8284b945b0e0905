"""Pointer and interaction sequences, views, removal, and ordinal decorations.

An interaction sequence is a pointer sequence i0 i1 ... with i0 = 0,
i_{n+1} < n+1 and i_{n+1} in V(n+1) = {n} union V(i_n), V(0) empty.  These
govern which earlier play a debate round responds to.  Decorating the
entries with ordinals (plus one trailing ordinal) gives ordinal interaction
sequences; their extension order is well-founded, witnessed here by the
computable height function c_height whose root value is the c_nu tower.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from . import ordinals
from .ordinals import LESS, Ordinal

PointerSeq = Tuple[int, ...]


class InteractionError(ValueError):
    pass


def is_pointer_seq(i: Sequence[int]) -> bool:
    if len(i) == 0:
        return True
    if i[0] != 0:
        return False
    return all(0 <= i[n] < n for n in range(1, len(i)))


def view_V(i: Sequence[int], n: int) -> FrozenSet[int]:
    """V(0) = {}; V(n+1) = {n} union V(i_n)."""
    if not 0 <= n <= len(i):
        raise InteractionError(f"n={n} out of range for length {len(i)}")
    if n == 0:
        return frozenset()
    return frozenset({n - 1}) | view_V(i, i[n - 1])


def view_W(i: Sequence[int], n: int) -> FrozenSet[int]:
    """W(0) = {}; W(n+1) = {n, i_n} union W(i_n)."""
    if not 0 <= n <= len(i):
        raise InteractionError(f"n={n} out of range for length {len(i)}")
    if n == 0:
        return frozenset()
    return frozenset({n - 1, i[n - 1]}) | view_W(i, i[n - 1])


def is_interaction(i: Sequence[int]) -> bool:
    if not is_pointer_seq(i):
        return False
    return all(i[n] in view_V(i, n) for n in range(1, len(i)))


def index_depth(i: Sequence[int], n: int) -> int:
    """Length of the chain n, i_n, i_{i_n}, ..., 0 minus one."""
    if not 0 <= n < len(i):
        raise InteractionError(f"index {n} out of range")
    d = 0
    while n != 0:
        n = i[n]
        d += 1
    return d


def seq_depth(i: Sequence[int]) -> int:
    return max((index_depth(i, n) for n in range(len(i))), default=0)


def is_isolated(i: Sequence[int], I: Iterable[int]) -> bool:
    """I is isolated when i_n in I implies n in I."""
    s = set(I)
    return all(n in s for n in range(len(i)) if i[n] in s)


def remove(i: Sequence[int], I: Iterable[int]) -> PointerSeq:
    """The pointer sequence i - I, re-indexed along the complement enumeration.

    Refuses non-isolated I.  Removing everything yields the empty sequence.
    """
    s = set(I)
    if not is_isolated(i, s):
        raise InteractionError("I is not isolated")
    keep = [n for n in range(len(i)) if n not in s]
    index_of = {n: k for k, n in enumerate(keep)}
    return tuple(index_of[i[n]] for n in keep)


def lemma_int_check(i: Sequence[int], n: int) -> bool:
    """Both clauses at n: m in V(n) => V(i_m) subset V(n); and
    k,m in V(n), k<m => k in V(i_m)."""
    V = view_V(i, n)
    for m in V:
        if not view_V(i, i[m]) <= V:
            return False
    for m in V:
        for k in V:
            if k < m and k not in view_V(i, i[m]):
                return False
    return True


def intervals_of_depth(i: Sequence[int], d: int) -> List[Tuple[int, int]]:
    """The intervals [i_m, m] whose right endpoint has the given index depth."""
    return [(i[m], m) for m in range(len(i)) if index_depth(i, m) == d]


def enumerate_interactions(max_len: int) -> Iterator[PointerSeq]:
    """All interaction sequences of length <= max_len (including the empty one)."""

    def go(prefix: Tuple[int, ...]) -> Iterator[PointerSeq]:
        yield prefix
        n = len(prefix)
        if n >= max_len:
            return
        if n == 0:
            yield from go((0,))
            return
        for j in sorted(view_V(prefix, n)):
            yield from go(prefix + (j,))

    yield from go(())


# ---------------------------------------------------------------------------
# Ordinal interaction sequences


@dataclass(frozen=True)
class OrdIntSeq:
    """Pairs (alpha_m, i_m) for m < n plus a trailing ordinal alpha_n."""

    pairs: Tuple[Tuple[Ordinal, int], ...]
    last: Ordinal

    def pointer_part(self) -> PointerSeq:
        return tuple(i for _, i in self.pairs)

    def ordinals_all(self) -> Tuple[Ordinal, ...]:
        return tuple(a for a, _ in self.pairs) + (self.last,)

    def prefix(self, m: int) -> "OrdIntSeq":
        """The prefix ending at alpha_m (so with m pairs)."""
        if not 0 <= m <= len(self.pairs):
            raise InteractionError(f"prefix index {m} out of range")
        if m == len(self.pairs):
            return self
        return OrdIntSeq(self.pairs[:m], self.pairs[m][0])

    def __len__(self) -> int:
        return len(self.pairs)


def ois_validate(u: OrdIntSeq) -> bool:
    """The two defining conditions: interaction pointers, and
    alpha_{m+1} < alpha_{i_m} for every 0 < m < n."""
    i = u.pointer_part()
    if len(i) > 0 and not is_interaction(i):
        return False
    alphas = u.ordinals_all()
    n = len(i)
    for m in range(1, n):
        if ordinals.cmp(alphas[m + 1], alphas[i[m]]) != LESS:
            return False
    return True


def ois_below(u: OrdIntSeq, alpha: Ordinal) -> bool:
    return all(ordinals.cmp(a, alpha) == LESS for a in u.ordinals_all())


def ois_depth(u: OrdIntSeq) -> int:
    return seq_depth(u.pointer_part())


def ois_leq(u: OrdIntSeq, v: OrdIntSeq) -> bool:
    """The extension order: v extends u when u's pairs are a prefix of v's and
    v's ordinal at position n is <= u's trailing ordinal."""
    n, m = len(u.pairs), len(v.pairs)
    if n > m:
        return False
    if v.pairs[:n] != u.pairs:
        return False
    beta_n = v.pairs[n][0] if n < m else v.last
    return ordinals.cmp(beta_n, u.last) != ordinals.GREATER


def ois_render(u: OrdIntSeq) -> str:
    parts = [f"({ordinals.render_ordinal(a)},{i})" for a, i in u.pairs]
    return "".join(parts) + ordinals.render_ordinal(u.last)


def ois_remove(u: OrdIntSeq, I: Iterable[int]) -> OrdIntSeq:
    """u - I: drop the pairs at the removed indices, re-index the pointers,
    keep the trailing ordinal."""
    s = set(I)
    i = u.pointer_part()
    j = remove(i, s)
    keep = [n for n in range(len(i)) if n not in s]
    pairs = tuple((u.pairs[n][0], j[k]) for k, n in enumerate(keep))
    return OrdIntSeq(pairs, u.last)


def reduce_depth(u: OrdIntSeq, nu: int) -> OrdIntSeq:
    """Remove every isolated interval [i_m, m] whose right endpoint has index
    depth nu+1; the result has depth <= nu."""
    i = u.pointer_part()
    if seq_depth(i) > nu + 1:
        raise InteractionError(f"pointer part has depth > {nu + 1}")
    deep = intervals_of_depth(i, nu + 1)
    if not deep:
        return u
    I: Set[int] = set()
    for lo, hi in deep:
        I.update(range(lo, hi + 1))
    return ois_remove(u, I)


# ---------------------------------------------------------------------------
# The computable height function


_c_cache: Dict[Tuple[int, Ordinal, Optional[OrdIntSeq]], Ordinal] = {}


def clear_height_cache() -> None:
    _c_cache.clear()


def c_height(nu: int, alpha: Ordinal, u: Optional[OrdIntSeq] = None) -> Ordinal:
    """Height of u in the tree of depth-<=nu ordinal interaction sequences
    below alpha (u=None is the tree root).

    Base nu=0: root -> alpha*2; a lone trailing ordinal a0 -> alpha + a0;
    one pair -> the trailing ordinal.  Step nu+1: reduce u to depth nu and
    return 3^r0 + ... + 3^r_{n-1} + 3^(r_n)*2 over the depth-nu heights r_m
    of the prefixes; the root maps to 3^(root height at nu).  The root value
    equals c_scalar(nu, alpha) by construction.
    """
    key = (nu, alpha, u)
    hit = _c_cache.get(key)
    if hit is not None:
        return hit
    if nu == 0:
        if u is None:
            out = ordinals.mul(alpha, ordinals.from_int(2))
        elif len(u.pairs) == 0:
            out = ordinals.add(alpha, u.last)
        elif len(u.pairs) == 1:
            out = u.last
        else:
            raise InteractionError("sequence of depth > 0 at nu = 0")
    else:
        if u is None:
            out = ordinals.base_pow(3, c_height(nu - 1, alpha, None))
        else:
            v = reduce_depth(u, nu - 1)
            n = len(v.pairs)
            rhos = [c_height(nu - 1, alpha, v.prefix(m)) for m in range(n + 1)]
            out = ordinals.ZERO
            for m in range(n):
                out = ordinals.add(out, ordinals.base_pow(3, rhos[m]))
            out = ordinals.add(out, ordinals.mul(ordinals.base_pow(3, rhos[n]), ordinals.from_int(2)))
    _c_cache[key] = out
    return out


def enumerate_ois(max_pairs: int, ordinal_bound: int, max_depth: Optional[int] = None) -> Iterator[OrdIntSeq]:
    """All valid ordinal interaction sequences with at most max_pairs pairs and
    all ordinals < ordinal_bound (finite), optionally filtered by depth."""
    finite = [ordinals.from_int(k) for k in range(ordinal_bound)]
    for i in enumerate_interactions(max_pairs):
        if max_depth is not None and seq_depth(i) > max_depth:
            continue
        n = len(i)

        def go(pos: int, chosen: List[Ordinal]) -> Iterator[OrdIntSeq]:
            if pos == n + 1:
                u = OrdIntSeq(tuple((chosen[m], i[m]) for m in range(n)), chosen[n])
                yield u
                return
            for a in finite:
                # alpha_{m+1} < alpha_{i_m} for 0 < m < n, checked incrementally
                m = pos - 1
                if 0 < m < n and ordinals.cmp(a, chosen[i[m]]) != LESS:
                    continue
                yield from go(pos + 1, chosen + [a])

        if n == 0:
            for a in finite:
                yield OrdIntSeq((), a)
        else:
            yield from go(0, [])
