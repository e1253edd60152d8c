"""Formula and grammar translations: Box, e_N/o_N, unneck, the A/S embedding, T_n."""
from __future__ import annotations

from dataclasses import dataclass, field

from .formula import (
    Brac, Formula, FragmentError, Over, Prim, Prod, Rev, Sequent, Shift, Under,
    connectives, primitives, print_formula, size,
)

__all__ = [
    "FreshSymbolPool", "box", "e_n", "o_n", "unneck", "cal_A", "cal_S", "t_n",
    "map_sequent_evenize", "map_sequent_embed",
]


@dataclass
class FreshSymbolPool:
    """Reserved primitives ``__l``, ``__r``, ``__q1``, ... .

    User input cannot contain the ``__`` prefix (the parser rejects it), so
    these never collide with user primitives. ``avoid`` is checked anyway for
    formulas built programmatically.
    """
    avoid: frozenset = field(default_factory=frozenset)

    def _name(self, base: str) -> Prim:
        name = base
        while name in self.avoid:
            name = "_" + name
        return Prim(name)

    @property
    def l(self) -> Prim:
        return self._name("__l")

    @property
    def r(self) -> Prim:
        return self._name("__r")

    def q(self, n: int) -> Prim:
        return self._name(f"__q{n}")

    @classmethod
    def for_formulas(cls, *formulas) -> "FreshSymbolPool":
        names = set()
        for f in formulas:
            names |= primitives(f)
        return cls(frozenset(names))


def _pool(pool, *formulas) -> FreshSymbolPool:
    return pool if pool is not None else FreshSymbolPool.for_formulas(*formulas)


def _neck_only(f: Formula, what: str) -> None:
    if connectives(f) & {Rev, Brac}:
        raise FragmentError(f"{what} needs a formula without ^r/^b: {print_formula(f)}")


def box(f: Formula, pool: FreshSymbolPool | None = None) -> Formula:
    """``(l \\ ((l * f) * r)) / r``."""
    p = _pool(pool, f)
    l, r = p.l, p.r
    return Over(Under(l, Prod(Prod(l, f), r)), r)


def _tower(f: Formula, n: int, pool) -> Formula:
    for _ in range(n):
        f = Shift(box(f, pool))
    return f


def _replace(f: Formula, n: int, pool, even: bool, tower_on_even: bool) -> Formula:
    # innermost-first: children are rewritten before the node itself
    if isinstance(f, Prim):
        return f
    if isinstance(f, Under):
        return Under(_replace(f.left, n, pool, not even, tower_on_even),
                     _replace(f.right, n, pool, even, tower_on_even))
    if isinstance(f, Over):
        return Over(_replace(f.left, n, pool, even, tower_on_even),
                    _replace(f.right, n, pool, not even, tower_on_even))
    if isinstance(f, Prod):
        return Prod(_replace(f.left, n, pool, even, tower_on_even),
                    _replace(f.right, n, pool, even, tower_on_even))
    if isinstance(f, Shift):
        inner = _replace(f.inner, n, pool, even, tower_on_even)
        if even == tower_on_even:
            return _tower(inner, n, pool)
        return box(inner, pool)
    raise FragmentError(f"unexpected connective in {print_formula(f)}")


def e_n(f: Formula, N: int, pool: FreshSymbolPool | None = None) -> Formula:
    """Even ``B^c`` become ``B^((box c)^N)``, odd ``B^c`` become ``B^box``."""
    _neck_only(f, "e_N")
    if size(f) > N:
        raise ValueError(f"size {size(f)} exceeds N={N}")
    return _replace(f, N, _pool(pool, f), True, True)


def o_n(f: Formula, N: int, pool: FreshSymbolPool | None = None) -> Formula:
    """Odd ``B^c`` become towers, even ones become ``B^box``."""
    _neck_only(f, "o_N")
    if size(f) > N:
        raise ValueError(f"size {size(f)} exceeds N={N}")
    return _replace(f, N, _pool(pool, f), True, False)


def unneck(f: Formula) -> Formula:
    if isinstance(f, Prim):
        return f
    if isinstance(f, Shift):
        return unneck(f.inner)
    if isinstance(f, (Under, Over, Prod)):
        return type(f)(unneck(f.left), unneck(f.right))
    raise FragmentError(f"unneck needs a formula without ^r/^b: {print_formula(f)}")


def _plain(f: Formula, what: str) -> None:
    if connectives(f) & {Shift, Rev, Brac}:
        raise FragmentError(f"{what} needs a formula without unary connectives: {print_formula(f)}")


def cal_A(f: Formula) -> Formula:
    _plain(f, "A")
    return _cal(f, False)


def cal_S(f: Formula) -> Formula:
    _plain(f, "S")
    return _cal(f, True)


def _cal(f: Formula, s: bool) -> Formula:
    if isinstance(f, Prim):
        return Shift(f) if s else f
    if isinstance(f, Under):   # B \ A
        out = Under(_cal(f.left, not s), _cal(f.right, s))
    elif isinstance(f, Over):  # A / B
        out = Over(_cal(f.left, s), _cal(f.right, not s))
    else:
        out = Prod(_cal(f.left, s), _cal(f.right, s))
    return Shift(out) if s else out


def t_n(f: Formula, n: int, pool: FreshSymbolPool | None = None) -> Formula:
    """``T_0 = f``, ``T_n = q_n * (T_{n-1} / q_n)``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    p = _pool(pool, f)
    out = f
    for i in range(1, n + 1):
        q = p.q(i)
        out = Prod(q, Over(out, q))
    return out


def map_sequent_evenize(seq: Sequent, N: int, pool: FreshSymbolPool | None = None) -> Sequent:
    """``o_N`` on the antecedent and ``e_N`` on the succedent."""
    p = _pool(pool, *seq.formulas())
    return Sequent(tuple(o_n(a, N, p) for a in seq.antecedent), e_n(seq.succedent, N, p))


def map_sequent_embed(seq: Sequent) -> Sequent:
    """``A`` on the antecedent and ``S`` on the succedent."""
    return Sequent(tuple(cal_A(a) for a in seq.antecedent), cal_S(seq.succedent))
