"""Backward proof search for L, Lneck, LCS, Lrev and Lbrac.

Rotations ((neck), (brac), (CS)) are folded into the next logical step: a
goal whose succedent admits rotation is tried at every cyclic offset of its
antecedent, and the rotated goal must then be closed by a non-rotation rule.
For the reversal calculi a single "toggle" step stands for one application of
(^r -> ^r) surrounded by the double-reversal rules that make every formula fit
it; two toggles in a row would undo each other and are never tried.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iproduct
from typing import Iterator, Optional

from .formula import (
    BINARY, Brac, Formula, Over, Polarity, Prim, Prod, Rev, Sequent, Shift,
    SystemId, Under, check_fragment, subformulas,
)
from .proofs import ProofNode, RuleId

__all__ = [
    "SearchConfig", "Prover", "MemoLimitExceeded", "derive", "is_derivable",
    "enumerate_formulas", "enumerate_sequents", "count_balanced",
]


class MemoLimitExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class SearchConfig:
    system: SystemId
    cut_budget: int = 0
    memo_limit: int = 2_000_000
    count_check: bool = True

    def __post_init__(self):
        if self.cut_budget and self.system is not SystemId.LBRAC:
            raise ValueError("cut_budget is only meaningful for Lbrac")
        if self.cut_budget < 0:
            raise ValueError("cut_budget must be non-negative")


def _strip_rr(f: Formula) -> Formula:
    while isinstance(f, Rev) and isinstance(f.inner, Rev):
        f = f.inner.inner
    return f


def _toggle(f: Formula) -> Formula:
    return f.inner if isinstance(f, Rev) else Rev(f)


def _balance(f: Formula, sign: int, acc: Counter) -> None:
    if isinstance(f, Prim):
        acc[f.name] += sign
    elif isinstance(f, Under):
        _balance(f.left, -sign, acc)
        _balance(f.right, sign, acc)
    elif isinstance(f, Over):
        _balance(f.left, sign, acc)
        _balance(f.right, -sign, acc)
    elif isinstance(f, Prod):
        _balance(f.left, sign, acc)
        _balance(f.right, sign, acc)
    else:
        _balance(f.inner, sign, acc)


def count_balanced(ant, succ) -> bool:
    """Every primitive occurs equally often positively and negatively.

    All rules and axioms of the five systems preserve this, so an unbalanced
    sequent is never derivable.
    """
    acc = Counter()
    _balance(succ, 1, acc)
    for a in ant:
        _balance(a, -1, acc)
    return not any(acc.values())


class Prover:
    """Memoizing backward searcher. One instance per thread."""

    def __init__(self, cfg: SearchConfig | SystemId):
        if isinstance(cfg, SystemId):
            cfg = SearchConfig(cfg)
        self.cfg = cfg
        self.system = cfg.system
        self._memo: dict = {}
        s = self.system
        self._rot_head = {SystemId.LNECK: Shift, SystemId.LBRAC: Brac}.get(s)
        self._rot_rule = {SystemId.LNECK: RuleId.NeckRot, SystemId.LBRAC: RuleId.BracRot,
                          SystemId.LCS: RuleId.CS}.get(s)
        self._rev = s in (SystemId.LREV, SystemId.LBRAC)
        # invertible rules applied without backtracking (cut is admissible there)
        self._commit_right = s in (SystemId.L, SystemId.LNECK)
        self._commit_prod = s in (SystemId.L, SystemId.LNECK, SystemId.LCS)

    def clear(self) -> None:
        self._memo.clear()

    @property
    def memo_size(self) -> int:
        return len(self._memo)

    def derive(self, seq: Sequent) -> Optional[ProofNode]:
        check_fragment(seq, self.system)
        if len(self._memo) > self.cfg.memo_limit // 2:
            # keep sharing across queries, but never start a query near the cap
            self._memo.clear()
        return self._prove(seq.antecedent, seq.succedent, self.cfg.cut_budget, False)

    def derivable(self, seq: Sequent) -> bool:
        return self.derive(seq) is not None

    # ------------------------------------------------------------ search

    def _prove(self, G: tuple, C: Formula, budget: int, toggled: bool):
        key = (G, C, budget, toggled)
        memo = self._memo
        if key in memo:
            return memo[key]
        if len(memo) >= self.cfg.memo_limit:
            raise MemoLimitExceeded(f"memo table exceeded {self.cfg.memo_limit} entries")
        memo[key] = None  # cycle guard; search is well-founded anyway
        res = self._prove_uncached(G, C, budget, toggled)
        memo[key] = res
        return res

    def _prove_uncached(self, G, C, budget, toggled):
        concl = Sequent(G, C)
        if self.cfg.count_check and not count_balanced(G, C):
            return None
        if self._rev:
            for i, a in enumerate(G):
                s = _strip_rr(a)
                if s != a:
                    sub = self._prove(G[:i] + (s,) + G[i + 1:], C, budget, toggled)
                    return sub and ProofNode(concl, RuleId.RevRevL, (sub,))
            s = _strip_rr(C)
            if s != C:
                sub = self._prove(G, s, budget, toggled)
                return sub and ProofNode(concl, RuleId.RevRevR, (sub,))
        if self._commit_prod:
            for i, a in enumerate(G):
                if isinstance(a, Prod):
                    sub = self._prove(G[:i] + (a.left, a.right) + G[i + 1:], C, budget, False)
                    return sub and ProofNode(concl, RuleId.ProdL, (sub,))
        if self._commit_right and isinstance(C, (Under, Over)):
            return self._right_div(G, C, budget)

        rotate = self.system is SystemId.LCS or (
            self._rot_head is not None and isinstance(C, self._rot_head))
        if not rotate or len(G) == 1:
            return self._step(G, C, budget, toggled)
        for k in range(len(G)):
            R = G[k:] + G[:k]
            sub = self._step_cached(R, C, budget, toggled)
            if sub is not None:
                if k == 0:
                    return sub
                return ProofNode(concl, self._rot_rule, (sub,), offset=k)
        return None

    def _step_cached(self, G, C, budget, toggled):
        key = ("step", G, C, budget, toggled)
        memo = self._memo
        if key in memo:
            return memo[key]
        memo[key] = None
        res = self._step(G, C, budget, toggled)
        memo[key] = res
        return res

    def _right_div(self, G, C, budget):
        concl = Sequent(G, C)
        if isinstance(C, Under):
            sub = self._prove((C.left,) + G, C.right, budget, False)
            return sub and ProofNode(concl, RuleId.UnderR, (sub,))
        sub = self._prove(G + (C.right,), C.left, budget, False)
        return sub and ProofNode(concl, RuleId.OverR, (sub,))

    def _step(self, G: tuple, C: Formula, budget: int, toggled: bool):
        """Try every non-rotation rule on the goal as it stands."""
        concl = Sequent(G, C)
        n = len(G)
        sys_ = self.system
        if n == 1 and G[0] == C and isinstance(C, Prim):
            return ProofNode(concl, RuleId.Ax)
        if sys_ is SystemId.LBRAC and n == 1 and isinstance(C, Brac):
            a = G[0]
            if isinstance(a, Rev) and a.inner == C.inner:
                return ProofNode(concl, RuleId.AxRevBrac)
            # a equals C.inner^r up to double reversals: peel them off below the axiom
            x = Rev(C.inner)
            if _strip_rr(x) == a:
                node = ProofNode(Sequent((x,), C), RuleId.AxRevBrac)
                while x != a:
                    x = x.inner.inner
                    node = ProofNode(Sequent((x,), C), RuleId.RevRevL, (node,))
                return node

        # right rules
        if isinstance(C, (Under, Over)):
            sub = self._right_div(G, C, budget)
            if sub is not None:
                return sub
        elif isinstance(C, Prod) and n >= 2:
            for k in range(1, n):
                left = self._prove(G[:k], C.left, budget, False)
                if left is None:
                    continue
                right = self._prove(G[k:], C.right, budget, False)
                if right is not None:
                    return ProofNode(concl, RuleId.ProdR, (left, right))
        elif isinstance(C, (Shift, Brac)):
            rule = RuleId.NeckR if isinstance(C, Shift) else RuleId.BracR
            sub = self._prove(G, C.inner, budget, False)
            if sub is not None:
                return ProofNode(concl, rule, (sub,))
            if n == 1 and type(G[0]) is type(C):
                rule = RuleId.NeckL if isinstance(C, Shift) else RuleId.BracL
                sub = self._prove((G[0].inner,), C, budget, False)
                if sub is not None:
                    return ProofNode(concl, rule, (sub,))

        # left rules
        for i, a in enumerate(G):
            if isinstance(a, Prod):
                sub = self._prove(G[:i] + (a.left, a.right) + G[i + 1:], C, budget, False)
                if sub is not None:
                    return ProofNode(concl, RuleId.ProdL, (sub,))
            elif isinstance(a, Under):
                for j in range(i - 1, -1, -1):
                    minor = self._prove(G[j:i], a.left, budget, False)
                    if minor is None:
                        continue
                    main = self._prove(G[:j] + (a.right,) + G[i + 1:], C, budget, False)
                    if main is not None:
                        return ProofNode(concl, RuleId.UnderL, (main, minor))
            elif isinstance(a, Over):
                for k in range(i + 2, n + 1):
                    minor = self._prove(G[i + 1:k], a.right, budget, False)
                    if minor is None:
                        continue
                    main = self._prove(G[:i] + (a.left,) + G[k:], C, budget, False)
                    if main is not None:
                        return ProofNode(concl, RuleId.OverL, (main, minor))

        if self._rev and not toggled:
            sub = self._toggle_step(G, C, budget)
            if sub is not None:
                return sub
        if budget > 0:
            return self._cut_step(G, C, budget)
        return None

    def _toggle_step(self, G, C, budget):
        G2 = tuple(_toggle(a) for a in reversed(G))
        C2 = _toggle(C)
        sub = self._prove(G2, C2, budget, True)
        if sub is None:
            return None
        # (^r -> ^r) gives Rev(G2 reversed) -> Rev(C2); then drop the rr's
        ant = tuple(Rev(a) for a in reversed(G2))
        node = ProofNode(Sequent(ant, Rev(C2)), RuleId.RevRev, (sub,))
        if Rev(C2) != C:
            node = ProofNode(Sequent(ant, C), RuleId.RevRevR, (node,))
        cur = list(ant)
        for i, a in enumerate(G):
            if cur[i] != a:
                cur[i] = a
                node = ProofNode(Sequent(tuple(cur), C), RuleId.RevRevL, (node,))
        return node

    def _cut_step(self, G, C, budget):
        """Cut on ``X^r`` with ``X`` a subformula of the goal (Lbrac only)."""
        concl = Sequent(G, C)
        seen = []
        for f in (C,) + G:
            for x in subformulas(f):
                x = _strip_rr(x)
                if not isinstance(x, Rev) and x not in seen:
                    seen.append(x)
        n = len(G)
        for x in seen:
            A = Rev(x)
            for i in range(n):
                for j in range(i + 1, n + 1):
                    Pi = G[i:j]
                    if Pi == (A,):
                        continue
                    right_ant = G[:i] + (A,) + G[j:]
                    for lb in range(budget):
                        left = self._prove(Pi, A, lb, False)
                        if left is None:
                            continue
                        right = self._prove(right_ant, C, budget - 1 - lb, False)
                        if right is not None:
                            return ProofNode(concl, RuleId.Cut, (left, right))
        return None


def derive(seq: Sequent, cfg: SearchConfig | SystemId) -> Optional[ProofNode]:
    """One-shot search with a fresh memo table."""
    return Prover(cfg).derive(seq)


def is_derivable(seq: Sequent, cfg: SearchConfig | SystemId) -> bool:
    return derive(seq, cfg) is not None


# ------------------------------------------------------------ enumeration

_UNARY_FOR = {
    SystemId.L: (),
    SystemId.LCS: (),
    SystemId.LNECK: (Shift,),
    SystemId.LREV: (Rev,),
    SystemId.LBRAC: (Rev, Brac),
}


@lru_cache(maxsize=None)
def _formulas(alphabet: tuple, weight: int, unary: tuple, leaf: int) -> tuple:
    out = []
    if weight == leaf:
        out.extend(Prim(a) for a in alphabet)
    for u in unary:
        if weight >= 1:
            out.extend(u(f) for f in _formulas(alphabet, weight - 1, unary, leaf))
    for op in BINARY:
        for lw in range(0, weight):
            rw = weight - 1 - lw
            if rw < 0:
                continue
            for lf in _formulas(alphabet, lw, unary, leaf):
                for rf in _formulas(alphabet, rw, unary, leaf):
                    out.append(op(lf, rf))
    return tuple(out)


def enumerate_formulas(alphabet, weight: int, system: SystemId = SystemId.L,
                       measure: str = "connectives") -> tuple:
    """All formulas of exactly the given weight, in a fixed order."""
    leaf = {"connectives": 0, "symbols": 1}[measure]
    return _formulas(tuple(alphabet), weight, _UNARY_FOR[system], leaf)


def _compositions(total: int, parts: int) -> Iterator[tuple]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_sequents(alphabet, max_total_size: int, system: SystemId = SystemId.L,
                       measure: str = "connectives") -> Iterator[Sequent]:
    """Every sequent up to the bound, each exactly once, in a fixed order.

    ``measure="connectives"`` weighs a sequent by its connectives plus its
    commas (so the antecedent length stays bounded); ``measure="symbols"``
    counts connectives plus primitive occurrences.
    """
    comma = 1 if measure == "connectives" else 0
    leaf = 0 if measure == "connectives" else 1
    for total in range(max_total_size + 1):
        for n in range(1, total + 2):
            budget = total - comma * (n - 1)
            if budget < leaf * (n + 1):
                break
            for ws in _compositions(budget, n + 1):
                pools = [enumerate_formulas(alphabet, w, system, measure) for w in ws]
                if any(not p for p in pools):
                    continue
                for combo in iproduct(*pools):
                    yield Sequent(tuple(combo[:-1]), combo[-1])
