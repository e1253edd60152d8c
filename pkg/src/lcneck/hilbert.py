"""Single-antecedent (Hilbert-style) presentation of Lneck.

A proof is a list of steps ``(A -> B, rule, premise_indices)``; premises must
point to earlier steps.

    HAxId      A -> A
    HAxAssoc   A*(B*C) -> (A*B)*C   and the converse
    HAxNeck    C -> C^c
    HUncurry   A*B -> C   from  A -> C/B   or  B -> A\\C
    HCurry     A -> C/B   or  B -> A\\C   from  A*B -> C
    HTrans     A -> C     from  A -> B  and  B -> C
    HNeckMono  A^c -> C^c from  A -> C^c
    HNeckRot   B*A -> C^c from  A*B -> C^c

:func:`sequent_to_hilbert` turns a cut-free Lneck sequent proof of
``A1, ..., An -> B`` into a Hilbert proof of ``(..(A1*A2)*..)*An -> B``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .formula import Formula, Over, Prod, Sequent, Shift, Under
from .proofs import ProofError, ProofNode, RuleId

__all__ = [
    "HilbertStep", "check_hilbert_proof", "find_hilbert_error",
    "sequent_to_hilbert", "left_product",
]


@dataclass(frozen=True)
class HilbertStep:
    sequent: Sequent
    rule: RuleId
    premises: tuple = ()


def _as_step(step) -> HilbertStep:
    if isinstance(step, HilbertStep):
        return step
    seq, rule, prem = step
    return HilbertStep(seq, RuleId(rule) if isinstance(rule, str) else rule, tuple(prem))


def _check_step(i: int, st: HilbertStep, steps: list) -> Optional[str]:
    if len(st.sequent.antecedent) != 1:
        return "antecedent must be a single formula"
    for j in st.premises:
        if not isinstance(j, int) or not 0 <= j < i:
            return f"premise index {j} does not refer to an earlier step"
    A, B = st.sequent.antecedent[0], st.sequent.succedent
    P = [(steps[j].sequent.antecedent[0], steps[j].sequent.succedent) for j in st.premises]
    r = st.rule
    arity = {RuleId.HAxId: 0, RuleId.HAxAssoc: 0, RuleId.HAxNeck: 0, RuleId.HTrans: 2}
    if r not in (RuleId.HAxId, RuleId.HAxAssoc, RuleId.HAxNeck, RuleId.HCurry, RuleId.HUncurry,
                 RuleId.HTrans, RuleId.HNeckMono, RuleId.HNeckRot):
        return f"{r.value} is not a Hilbert rule"
    if len(P) != arity.get(r, 1):
        return f"{r.value} expects {arity.get(r, 1)} premise(s)"
    if r is RuleId.HAxId:
        return None if A == B else "not of the form A -> A"
    if r is RuleId.HAxAssoc:
        def ok(x, y):
            return (isinstance(x, Prod) and isinstance(x.right, Prod)
                    and y == Prod(Prod(x.left, x.right.left), x.right.right))
        return None if ok(A, B) or ok(B, A) else "not an associativity instance"
    if r is RuleId.HAxNeck:
        return None if B == Shift(A) else "not of the form C -> C^c"
    if r is RuleId.HTrans:
        (a1, b1), (a2, b2) = P
        return None if a1 == A and b1 == a2 and b2 == B else "premises do not chain"
    (pa, pb), = P
    if r is RuleId.HUncurry:
        if not isinstance(A, Prod):
            return "conclusion antecedent must be a product"
        if pa == A.left and pb == Over(B, A.right):
            return None
        if pa == A.right and pb == Under(A.left, B):
            return None
        return "premise is not the curried form"
    if r is RuleId.HCurry:
        if not isinstance(pa, Prod):
            return "premise antecedent must be a product"
        if A == pa.left and B == Over(pb, pa.right):
            return None
        if A == pa.right and B == Under(pa.left, pb):
            return None
        return "conclusion is not the curried form"
    if r is RuleId.HNeckMono:
        ok = isinstance(A, Shift) and isinstance(B, Shift) and pa == A.inner and pb == B
        return None if ok else "not A^c -> C^c from A -> C^c"
    if r is RuleId.HNeckRot:
        ok = (isinstance(B, Shift) and pb == B and isinstance(A, Prod) and isinstance(pa, Prod)
              and pa.left == A.right and pa.right == A.left)
        return None if ok else "not B*A -> C^c from A*B -> C^c"
    return "unknown rule"


def find_hilbert_error(steps) -> Optional[tuple]:
    """``(index, reason)`` of the first bad step, or None."""
    norm = []
    for i, raw in enumerate(steps):
        try:
            st = _as_step(raw)
        except (ValueError, TypeError) as exc:
            return i, f"malformed step: {exc}"
        norm.append(st)
        reason = _check_step(i, st, norm)
        if reason is not None:
            return i, reason
    return None


def check_hilbert_proof(steps) -> bool:
    return find_hilbert_error(steps) is None


# ---------------------------------------------------------------- translation

def left_product(formulas) -> Formula:
    it = iter(formulas)
    acc = next(it)
    for f in it:
        acc = Prod(acc, f)
    return acc


# Product trees over antecedent items: a leaf is ("leaf", formula), an inner
# node is a pair (left_tree, right_tree). Leaves may themselves be products.

def _leaf(f):
    return ("leaf", f)


def _is_leaf(t):
    return t[0] == "leaf"


def _tf(t) -> Formula:
    return t[1] if _is_leaf(t) else Prod(_tf(t[0]), _tf(t[1]))


def _canon(items):
    acc = items[0]
    for x in items[1:]:
        acc = (acc, x)
    return acc


def _leaves(t):
    return [t] if _is_leaf(t) else _leaves(t[0]) + _leaves(t[1])


class _Builder:
    def __init__(self):
        self.steps: list = []
        self.index: dict = {}

    def add(self, a: Formula, b: Formula, rule: RuleId, prem=()) -> int:
        seq = Sequent((a,), b)
        if seq in self.index:
            return self.index[seq]
        self.steps.append(HilbertStep(seq, rule, tuple(prem)))
        self.index[seq] = len(self.steps) - 1
        return self.index[seq]

    def seq(self, i):
        s = self.steps[i].sequent
        return s.antecedent[0], s.succedent

    def ident(self, a):
        return self.add(a, a, RuleId.HAxId)

    def trans(self, i, j):
        a, b = self.seq(i)
        b2, c = self.seq(j)
        assert b == b2, (b, b2)
        if a == b:
            return j
        if b == c:
            return i
        return self.add(a, c, RuleId.HTrans, (i, j))

    def curry_over(self, i):
        ab, c = self.seq(i)
        return self.add(ab.left, Over(c, ab.right), RuleId.HCurry, (i,))

    def curry_under(self, i):
        ab, c = self.seq(i)
        return self.add(ab.right, Under(ab.left, c), RuleId.HCurry, (i,))

    def uncurry_over(self, i, b):
        a, cb = self.seq(i)
        return self.add(Prod(a, b), cb.left, RuleId.HUncurry, (i,))

    def uncurry_under(self, i, a):
        b, ac = self.seq(i)
        return self.add(Prod(a, b), ac.right, RuleId.HUncurry, (i,))

    def mono_left(self, i, y):
        """X -> X'  gives  X*Y -> X'*Y."""
        x, x2 = self.seq(i)
        if x == x2:
            return self.ident(Prod(x, y))
        c = self.curry_over(self.ident(Prod(x2, y)))
        return self.uncurry_over(self.trans(i, c), y)

    def mono_right(self, y, i):
        """X -> X'  gives  Y*X -> Y*X'."""
        x, x2 = self.seq(i)
        if x == x2:
            return self.ident(Prod(y, x))
        c = self.curry_under(self.ident(Prod(y, x2)))
        return self.uncurry_under(self.trans(i, c), y)

    def assoc(self, src, dst):
        return self.add(src, dst, RuleId.HAxAssoc)

    def to_canon(self, t):
        """tf(t) -> tf(canonical left-nested tree over the same leaves)."""
        if _is_leaf(t):
            return self.ident(_tf(t))
        x, y = t
        if _is_leaf(y):
            return self.mono_left(self.to_canon(x), _tf(y))
        y1, y2 = y
        step = self.assoc(_tf(t), _tf(((x, y1), y2)))
        return self.trans(step, self.to_canon(((x, y1), y2)))

    def from_canon(self, t):
        """tf(canonical) -> tf(t)."""
        if _is_leaf(t):
            return self.ident(_tf(t))
        x, y = t
        if _is_leaf(y):
            return self.mono_left(self.from_canon(x), _tf(y))
        y1, y2 = y
        back = self.assoc(_tf(((x, y1), y2)), _tf(t))
        return self.trans(self.from_canon(((x, y1), y2)), back)

    def regroup(self, src, dst):
        assert [_tf(l) for l in _leaves(src)] == [_tf(l) for l in _leaves(dst)]
        return self.trans(self.to_canon(src), self.from_canon(dst))

    def congr(self, t, path, i):
        """Rewrite the subtree of ``t`` at ``path`` along step ``i``."""
        if not path:
            return i
        x, y = t
        if path[0] == 0:
            return self.mono_left(self.congr(x, path[1:], i), _tf(y))
        return self.mono_right(_tf(x), self.congr(y, path[1:], i))


def _translate(node: ProofNode, b: _Builder) -> int:
    G = list(node.conclusion.antecedent)
    C = node.conclusion.succedent
    items = [_leaf(a) for a in G]
    top = _canon(items)
    r = node.rule
    prem = node.premises
    if r is RuleId.Ax:
        return b.ident(C)
    if r is RuleId.NeckR:
        p = _translate(prem[0], b)
        return b.trans(p, b.add(C.inner, C, RuleId.HAxNeck))
    if r is RuleId.NeckL:
        p = _translate(prem[0], b)
        return b.add(G[0], C, RuleId.HNeckMono, (p,))
    if r is RuleId.OverR:
        p = _translate(prem[0], b)
        return b.curry_over(p)
    if r is RuleId.UnderR:
        p = _translate(prem[0], b)
        pitems = [_leaf(C.left)] + items
        head = (_leaf(C.left), top) if len(items) > 1 else (_leaf(C.left), items[0])
        re = b.regroup(head, _canon(pitems))
        return b.curry_under(b.trans(re, p))
    if r is RuleId.ProdL:
        p = _translate(prem[0], b)
        sub = list(prem[0].conclusion.antecedent)
        for i, a in enumerate(G):
            if isinstance(a, Prod) and sub == G[:i] + [a.left, a.right] + G[i + 1:]:
                # the product leaf is the same formula as the grouped pair
                src = _canon(items[:i] + [(_leaf(a.left), _leaf(a.right))] + items[i + 1:])
                dst = _canon([_leaf(x) for x in sub])
                return b.trans(b.regroup(src, dst), p)
        raise ProofError("(*->) premise does not match")
    if r is RuleId.ProdR:
        p1, p2 = (_translate(q, b) for q in prem)
        k = len(prem[0].conclusion.antecedent)
        t1, t2 = _canon(items[:k]), _canon(items[k:])
        re = b.regroup(top, (t1, t2))
        m1 = b.mono_left(p1, _tf(t2))
        m2 = b.mono_right(C.left, p2)
        return b.trans(b.trans(re, m1), m2)
    if r in (RuleId.UnderL, RuleId.OverL):
        main, minor = prem
        pm = _translate(main, b)
        pn = _translate(minor, b)
        m = len(minor.conclusion.antecedent)
        main_ant = list(main.conclusion.antecedent)
        for i, a in enumerate(G):
            if r is RuleId.UnderL and isinstance(a, Under) and i - m >= 0:
                lo, hi = i - m, i + 1
                if G[lo:i] != list(minor.conclusion.antecedent) or main_ant != G[:lo] + [a.right] + G[hi:]:
                    continue
                # Pi*(A\B) -> A*(A\B) -> B
                apply_ = b.uncurry_under(b.ident(a), a.left)
                local = b.trans(b.mono_left(pn, a), apply_)
                group_items = [_canon(items[lo:i]), items[i]]
            elif r is RuleId.OverL and isinstance(a, Over):
                lo, hi = i, i + 1 + m
                if G[i + 1:hi] != list(minor.conclusion.antecedent) or main_ant != G[:lo] + [a.left] + G[hi:]:
                    continue
                apply_ = b.uncurry_over(b.ident(a), a.right)
                local = b.trans(b.mono_right(a, pn), apply_)
                group_items = [items[i], _canon(items[i + 1:hi])]
            else:
                continue
            pair = (group_items[0], group_items[1])
            outer = items[:lo] + [pair] + items[hi:]
            t = _canon(outer)
            depth = len(outer) - 1 - lo
            path = (0,) * depth + ((1,) if lo > 0 else ())
            re = b.regroup(top, t)
            c = b.congr(t, path, local)
            return b.trans(b.trans(re, c), pm)
        raise ProofError(f"{r.value} premise does not match")
    if r is RuleId.NeckRot:
        p = _translate(prem[0], b)
        k = node.offset
        if k is None:
            sub = tuple(prem[0].conclusion.antecedent)
            k = next(j for j in range(len(G)) if tuple(G[j:] + G[:j]) == sub)
        if k == 0:
            return p
        # premise antecedent is G[k:], G[:k]
        pi, psi = _canon(items[k:]), _canon(items[:k])
        re_prem = b.regroup((pi, psi), _canon(items[k:] + items[:k]))
        ab = b.trans(re_prem, p)                  # Pi*Psi -> C
        rot = b.add(Prod(_tf(psi), _tf(pi)), C, RuleId.HNeckRot, (ab,))
        return b.trans(b.regroup(top, (psi, pi)), rot)
    raise ProofError(f"rule {r.value} has no Hilbert translation")


def sequent_to_hilbert(proof: ProofNode) -> list:
    """Hilbert steps proving ``left_product(antecedent) -> succedent``; last step is the goal."""
    b = _Builder()
    last = _translate(proof, b)
    steps = b.steps
    goal = Sequent((left_product(proof.conclusion.antecedent),), proof.conclusion.succedent)
    if steps[last].sequent != goal:
        raise ProofError("translation did not reach the goal")
    if last != len(steps) - 1:
        # make the goal the final step
        idx = b.ident(goal.succedent)
        steps = b.steps + [HilbertStep(goal, RuleId.HTrans, (last, idx))]
    return steps
