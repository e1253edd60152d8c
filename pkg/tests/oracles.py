"""Independent reference implementations used only by the tests.

Nothing here imports the search module; the point is to have a second,
deliberately naive opinion.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product

from lcneck.formula import Over, Prim, Prod, Rev, Shift, Under


@lru_cache(maxsize=None)
def naive_l(ant: tuple, succ) -> bool:
    """Plain Lambek calculus, cut-free, no pruning and no invertibility tricks."""
    n = len(ant)
    if n == 1 and ant[0] == succ:
        return True
    if isinstance(succ, Under) and naive_l((succ.left,) + ant, succ.right):
        return True
    if isinstance(succ, Over) and naive_l(ant + (succ.right,), succ.left):
        return True
    if isinstance(succ, Prod):
        for k in range(1, n):
            if naive_l(ant[:k], succ.left) and naive_l(ant[k:], succ.right):
                return True
    for i, a in enumerate(ant):
        if isinstance(a, Prod) and naive_l(ant[:i] + (a.left, a.right) + ant[i + 1:], succ):
            return True
        if isinstance(a, Under):
            for j in range(i):
                if naive_l(ant[j:i], a.left) and naive_l(ant[:j] + (a.right,) + ant[i + 1:], succ):
                    return True
        if isinstance(a, Over):
            for k in range(i + 2, n + 1):
                if naive_l(ant[i + 1:k], a.right) and naive_l(ant[:i] + (a.left,) + ant[k:], succ):
                    return True
    return False


def rev_normal(f, flip=False):
    """Push ^r down to primitives; ``p^r`` becomes the primitive ``p~``."""
    if isinstance(f, Prim):
        return Prim(f.name + "~") if flip else f
    if isinstance(f, Rev):
        return rev_normal(f.inner, not flip)
    if isinstance(f, Prod):
        l, r = rev_normal(f.left, flip), rev_normal(f.right, flip)
        return Prod(r, l) if flip else Prod(l, r)
    if isinstance(f, Under):
        b, a = rev_normal(f.left, flip), rev_normal(f.right, flip)
        return Over(a, b) if flip else Under(b, a)
    if isinstance(f, Over):
        a, b = rev_normal(f.left, flip), rev_normal(f.right, flip)
        return Under(b, a) if flip else Over(a, b)
    raise ValueError(f)


def lrev_oracle(ant, succ) -> bool:
    return naive_l(tuple(rev_normal(a) for a in ant), rev_normal(succ))


def naive_lcs(ant: tuple, succ) -> bool:
    return any(naive_l(ant[k:] + ant[:k], succ) or _lcs_inner(ant[k:] + ant[:k], succ)
               for k in range(len(ant)))


@lru_cache(maxsize=None)
def _lcs_inner(ant, succ) -> bool:
    # L + (CS) where rotation may precede any rule
    n = len(ant)
    for k in range(n):
        g = ant[k:] + ant[:k]
        if _lcs_rule(g, succ):
            return True
    return False


def _lcs_rule(ant, succ) -> bool:
    n = len(ant)
    if n == 1 and ant[0] == succ:
        return True
    if isinstance(succ, Under) and _lcs_inner((succ.left,) + ant, succ.right):
        return True
    if isinstance(succ, Over) and _lcs_inner(ant + (succ.right,), succ.left):
        return True
    if isinstance(succ, Prod):
        for k in range(1, n):
            if _lcs_inner(ant[:k], succ.left) and _lcs_inner(ant[k:], succ.right):
                return True
    for i, a in enumerate(ant):
        if isinstance(a, Prod) and _lcs_inner(ant[:i] + (a.left, a.right) + ant[i + 1:], succ):
            return True
        if isinstance(a, Under):
            for j in range(i):
                if _lcs_inner(ant[j:i], a.left) and _lcs_inner(ant[:j] + (a.right,) + ant[i + 1:], succ):
                    return True
        if isinstance(a, Over):
            for k in range(i + 2, n + 1):
                if _lcs_inner(ant[i + 1:k], a.right) and _lcs_inner(ant[:i] + (a.left,) + ant[k:], succ):
                    return True
    return False


def chain_perm_brute(ps, qs, pn, s0):
    """Chain permutations for p1/q1, ..., p_{n-1}/q_{n-1}, pn -> s0 (0-based sigma)."""
    m = len(ps)
    out = []
    for sigma in permutations(range(m)):
        if m == 0:
            if pn == s0:
                out.append(sigma)
            continue
        if ps[sigma[0]] != s0 or qs[sigma[-1]] != pn:
            continue
        if all(qs[sigma[i]] == ps[sigma[i + 1]] for i in range(m - 1)):
            out.append(sigma)
    return out


def words(alphabet, max_len, min_len=1):
    for n in range(min_len, max_len + 1):
        for w in product(alphabet, repeat=n):
            yield "".join(w)


def cyclic_shifts(word):
    return {word[i:] + word[:i] for i in range(len(word))} if word else {""}
