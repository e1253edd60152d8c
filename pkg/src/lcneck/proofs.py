"""Proof trees for the string calculi: rule ids, checking, JSON and LaTeX export."""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Optional

from .formula import (
    BINARY, Brac, Formula, FragmentError, Over, Prim, Prod, Rev, Sequent, Shift,
    SystemId, Under, check_fragment, parse_sequent,
)

__all__ = [
    "RuleId", "ProofNode", "ProofError", "check_proof", "find_error",
    "cut_compose", "proof_to_json", "proof_from_json", "proof_to_latex",
    "LATEX_PREAMBLE", "proof_size", "uses_rule",
]


class RuleId(enum.Enum):
    Ax = "Ax"
    UnderL = "UnderL"
    UnderR = "UnderR"
    OverL = "OverL"
    OverR = "OverR"
    ProdL = "ProdL"
    ProdR = "ProdR"
    NeckR = "NeckR"
    NeckL = "NeckL"
    NeckRot = "NeckRot"
    CS = "CS"
    RevRev = "RevRev"
    RevRevL = "RevRevL"
    RevRevR = "RevRevR"
    BracR = "BracR"
    BracL = "BracL"
    BracRot = "BracRot"
    AxRevBrac = "AxRevBrac"
    Cut = "Cut"
    OverL2 = "OverL2"
    UnderOverL2 = "UnderOverL2"
    ProdR2 = "ProdR2"
    ProdL2 = "ProdL2"
    HAxId = "HAxId"
    HAxAssoc = "HAxAssoc"
    HAxNeck = "HAxNeck"
    HCurry = "HCurry"
    HUncurry = "HUncurry"
    HTrans = "HTrans"
    HNeckMono = "HNeckMono"
    HNeckRot = "HNeckRot"


class ProofError(ValueError):
    pass


@dataclass(frozen=True)
class ProofNode:
    conclusion: Sequent
    rule: RuleId
    premises: tuple = ()
    offset: Optional[int] = field(default=None, compare=False)

    def __str__(self) -> str:
        return proof_to_text(self)


_BASE = {
    RuleId.Ax, RuleId.UnderL, RuleId.UnderR, RuleId.OverL, RuleId.OverR,
    RuleId.ProdL, RuleId.ProdR,
    # derived two-step rules, valid wherever the basic ones are
    RuleId.OverL2, RuleId.UnderOverL2, RuleId.ProdR2, RuleId.ProdL2,
}
_REV = {RuleId.RevRev, RuleId.RevRevL, RuleId.RevRevR}
SYSTEM_RULES = {
    SystemId.L: frozenset(_BASE),
    SystemId.LNECK: frozenset(_BASE | {RuleId.NeckR, RuleId.NeckL, RuleId.NeckRot}),
    SystemId.LCS: frozenset(_BASE | {RuleId.CS}),
    SystemId.LREV: frozenset(_BASE | _REV),
    SystemId.LBRAC: frozenset(_BASE | _REV | {RuleId.BracR, RuleId.BracL, RuleId.BracRot,
                                              RuleId.AxRevBrac, RuleId.Cut}),
}

_ARITY = {
    RuleId.Ax: 0, RuleId.AxRevBrac: 0,
    RuleId.UnderL: 2, RuleId.OverL: 2, RuleId.ProdR: 2, RuleId.Cut: 2,
    RuleId.UnderOverL2: 3, RuleId.ProdR2: 3,
}


def _rr(f: Formula) -> Formula:
    return Rev(Rev(f))


def _rotations(xs: tuple):
    for k in range(len(xs)):
        yield k, xs[k:] + xs[:k]


def _check_node(node: ProofNode, system: SystemId, allow_cut: bool) -> Optional[str]:
    rule = node.rule
    allowed = SYSTEM_RULES[system] | ({RuleId.Cut} if allow_cut else set())
    if rule not in allowed:
        return f"rule {rule.value} is not available in {system.value}"
    try:
        check_fragment(node.conclusion, system)
    except FragmentError as exc:
        return str(exc)
    prem = node.premises
    if len(prem) != _ARITY.get(rule, 1):
        return f"{rule.value} expects {_ARITY.get(rule, 1)} premise(s), got {len(prem)}"
    G = node.conclusion.antecedent
    C = node.conclusion.succedent
    P = [p.conclusion for p in prem]

    if rule is RuleId.Ax:
        return None if G == (C,) else "axiom must have the form A -> A"
    if rule is RuleId.AxRevBrac:
        ok = len(G) == 1 and isinstance(G[0], Rev) and isinstance(C, Brac) and G[0].inner == C.inner
        return None if ok else "axiom must have the form A^r -> A^b"
    if rule is RuleId.UnderR:
        ok = isinstance(C, Under) and P[0].antecedent == (C.left,) + G and P[0].succedent == C.right
        return None if ok else "(->\\) premise mismatch"
    if rule is RuleId.OverR:
        ok = isinstance(C, Over) and P[0].antecedent == G + (C.right,) and P[0].succedent == C.left
        return None if ok else "(->/) premise mismatch"
    if rule is RuleId.ProdR:
        ok = (isinstance(C, Prod) and P[0].antecedent + P[1].antecedent == G
              and P[0].succedent == C.left and P[1].succedent == C.right)
        return None if ok else "(->*) premise mismatch"
    if rule is RuleId.ProdL:
        if P[0].succedent != C:
            return "(*->) changes the succedent"
        for i, a in enumerate(G):
            if isinstance(a, Prod) and P[0].antecedent == G[:i] + (a.left, a.right) + G[i + 1:]:
                return None
        return "(*->) premise mismatch"
    if rule is RuleId.UnderL:
        main, minor = P
        if main.succedent != C:
            return "(\\->) main premise changes the succedent"
        m = len(minor.antecedent)
        for i, a in enumerate(G):
            if isinstance(a, Under) and a.left == minor.succedent and i - m >= 0:
                j = i - m
                if G[j:i] == minor.antecedent and main.antecedent == G[:j] + (a.right,) + G[i + 1:]:
                    return None
        return "(\\->) premise mismatch"
    if rule is RuleId.OverL:
        main, minor = P
        if main.succedent != C:
            return "(/->) main premise changes the succedent"
        m = len(minor.antecedent)
        for i, a in enumerate(G):
            if isinstance(a, Over) and a.right == minor.succedent:
                k = i + 1 + m
                if G[i + 1:k] == minor.antecedent and main.antecedent == G[:i] + (a.left,) + G[k:]:
                    return None
        return "(/->) premise mismatch"
    if rule in (RuleId.NeckR, RuleId.BracR):
        head = Shift if rule is RuleId.NeckR else Brac
        ok = isinstance(C, head) and P[0].antecedent == G and P[0].succedent == C.inner
        return None if ok else f"{rule.value} premise mismatch"
    if rule in (RuleId.NeckL, RuleId.BracL):
        head = Shift if rule is RuleId.NeckL else Brac
        ok = (isinstance(C, head) and len(G) == 1 and isinstance(G[0], head)
              and P[0].antecedent == (G[0].inner,) and P[0].succedent == C)
        return None if ok else f"{rule.value} premise mismatch"
    if rule in (RuleId.NeckRot, RuleId.BracRot, RuleId.CS):
        head = {RuleId.NeckRot: Shift, RuleId.BracRot: Brac}.get(rule)
        if head is not None and not isinstance(C, head):
            return f"{rule.value} needs a ^{'c' if head is Shift else 'b'} succedent"
        if P[0].succedent != C:
            return "rotation changes the succedent"
        if node.offset is not None:
            k = node.offset
            if not 0 <= k < len(G):
                return "rotation offset out of range"
            return None if P[0].antecedent == G[k:] + G[:k] else "rotation offset mismatch"
        if any(P[0].antecedent == r for _, r in _rotations(G)):
            return None
        return "premise antecedent is not a rotation"
    if rule is RuleId.RevRev:
        q = P[0]
        ok = (isinstance(C, Rev) and q.succedent == C.inner
              and G == tuple(Rev(a) for a in reversed(q.antecedent)))
        return None if ok else "(^r -> ^r) premise mismatch"
    if rule is RuleId.RevRevL:
        q = P[0]
        if q.succedent != C or len(q.antecedent) != len(G):
            return "(^rr ->) premise mismatch"
        diffs = [i for i, (a, b) in enumerate(zip(G, q.antecedent)) if a != b]
        # double reversal is an equivalence; accepted in either direction
        if len(diffs) == 1 and (G[diffs[0]] == _rr(q.antecedent[diffs[0]])
                                or q.antecedent[diffs[0]] == _rr(G[diffs[0]])):
            return None
        return "(^rr ->) premise mismatch"
    if rule is RuleId.RevRevR:
        q = P[0]
        ok = q.antecedent == G and (C == _rr(q.succedent) or q.succedent == _rr(C))
        return None if ok else "(-> ^rr) premise mismatch"
    if rule is RuleId.Cut:
        left, right = P
        A = left.succedent
        if right.succedent != C:
            return "cut changes the succedent"
        for i, a in enumerate(right.antecedent):
            if a == A and G == right.antecedent[:i] + left.antecedent + right.antecedent[i + 1:]:
                return None
        return "cut formula does not match"
    if rule is RuleId.UnderOverL2:
        main, mid, last = P
        if main.succedent != C:
            return "(/->)_2 main premise changes the succedent"
        m, k = len(mid.antecedent), len(last.antecedent)
        for i, a in enumerate(G):
            if (isinstance(a, Over) and isinstance(a.left, Under) and a.left.left == mid.succedent
                    and a.right == last.succedent and i - m >= 0):
                j = i - m
                if (G[j:i] == mid.antecedent and G[i + 1:i + 1 + k] == last.antecedent
                        and main.antecedent == G[:j] + (a.left.right,) + G[i + 1 + k:]):
                    return None
        return "(/->)_2 premise mismatch"
    if rule is RuleId.OverL2:
        q = P[0]
        ok = (isinstance(C, Over) and isinstance(C.left, Under)
              and q.antecedent == (C.left.left,) + G + (C.right,) and q.succedent == C.left.right)
        return None if ok else "(->/)_2 premise mismatch"
    if rule is RuleId.ProdR2:
        ok = (isinstance(C, Prod) and isinstance(C.left, Prod)
              and P[0].antecedent + P[1].antecedent + P[2].antecedent == G
              and (P[0].succedent, P[1].succedent, P[2].succedent) == (C.left.left, C.left.right, C.right))
        return None if ok else "(->*)_2 premise mismatch"
    if rule is RuleId.ProdL2:
        if P[0].succedent != C:
            return "(*->)_2 changes the succedent"
        for i, a in enumerate(G):
            if isinstance(a, Prod) and isinstance(a.left, Prod):
                if P[0].antecedent == G[:i] + (a.left.left, a.left.right, a.right) + G[i + 1:]:
                    return None
        return "(*->)_2 premise mismatch"
    return f"{rule.value} is not a sequent rule"


def find_error(proof: ProofNode, system: SystemId, *, allow_cut: bool = False):
    """Return ``(path, reason)`` for the first invalid node (preorder), or None.

    ``path`` lists premise indices from the root.
    """
    stack = [((), proof)]
    while stack:
        path, node = stack.pop()
        reason = _check_node(node, system, allow_cut)
        if reason is not None:
            return path, reason
        for i in reversed(range(len(node.premises))):
            stack.append((path + (i,), node.premises[i]))
    return None


def check_proof(proof: ProofNode, system: SystemId, *, allow_cut: bool = False) -> bool:
    return find_error(proof, system, allow_cut=allow_cut) is None


def cut_compose(left: ProofNode, right: ProofNode, position: int) -> ProofNode:
    """Join ``Pi -> A`` and ``Gamma, A, Delta -> B`` (A at ``position``) by a cut."""
    ant = right.conclusion.antecedent
    A = left.conclusion.succedent
    if not 0 <= position < len(ant) or ant[position] != A:
        raise ProofError(f"cut formula {A} does not occur at position {position}")
    concl = Sequent(ant[:position] + left.conclusion.antecedent + ant[position + 1:],
                    right.conclusion.succedent)
    return ProofNode(concl, RuleId.Cut, (left, right))


def proof_size(proof: ProofNode) -> int:
    return 1 + sum(proof_size(p) for p in proof.premises)


def uses_rule(proof: ProofNode, rule: RuleId) -> bool:
    return proof.rule is rule or any(uses_rule(p, rule) for p in proof.premises)


# ------------------------------------------------------------------ export

def proof_to_json(proof: ProofNode) -> dict:
    out = {"seq": str(proof.conclusion), "rule": proof.rule.value}
    if proof.offset is not None:
        out["offset"] = proof.offset
    out["premises"] = [proof_to_json(p) for p in proof.premises]
    return out


def proof_from_json(data) -> ProofNode:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        rule = RuleId(data["rule"])
    except ValueError:
        raise ProofError(f"unknown rule {data['rule']!r}") from None
    return ProofNode(
        parse_sequent(data["seq"], allow_reserved=True),
        rule,
        tuple(proof_from_json(p) for p in data.get("premises", [])),
        data.get("offset"),
    )


def proof_to_text(proof: ProofNode, indent: int = 0) -> str:
    pad = "  " * indent
    extra = f" [offset {proof.offset}]" if proof.offset else ""
    lines = [f"{pad}{proof.conclusion}   ({proof.rule.value}){extra}"]
    lines += [proof_to_text(p, indent + 1) for p in proof.premises]
    return "\n".join(lines)


LATEX_PREAMBLE = r"""\usepackage{proof}
\newcommand{\neck}{\circlearrowleft}
\newcommand{\rev}{\mathrm{R}}
\newcommand{\brac}{\circledcirc}"""

_LATEX_LABEL = {
    RuleId.Ax: r"(\mathrm{Ax})",
    RuleId.UnderL: r"(\backslash\to)",
    RuleId.UnderR: r"(\to\backslash)",
    RuleId.OverL: r"(/\to)",
    RuleId.OverR: r"(\to/)",
    RuleId.ProdL: r"(\cdot\to)",
    RuleId.ProdR: r"(\to\cdot)",
    RuleId.NeckR: r"(\to^\neck)",
    RuleId.NeckL: r"(^\neck\to)",
    RuleId.NeckRot: r"(\neck)",
    RuleId.CS: r"(\mathrm{CS})",
    RuleId.RevRev: r"(^\rev\to^\rev)",
    RuleId.RevRevL: r"(^{\rev\rev}\to)",
    RuleId.RevRevR: r"(\to^{\rev\rev})",
    RuleId.BracR: r"(\to^\brac)",
    RuleId.BracL: r"(^\brac\to)",
    RuleId.BracRot: r"(\brac)",
    RuleId.AxRevBrac: r"(\mathrm{Ax}^{\rev\brac})",
    RuleId.Cut: r"(\mathrm{cut})",
    RuleId.OverL2: r"(\to/)_2",
    RuleId.UnderOverL2: r"(/\to)_2",
    RuleId.ProdR2: r"(\to\cdot)_2",
    RuleId.ProdL2: r"(\cdot\to)_2",
}


def formula_to_latex(f: Formula, top: bool = True) -> str:
    if isinstance(f, Prim):
        return f.name.replace("_", r"\_")
    if isinstance(f, BINARY):
        op = {Under: r" \backslash ", Over: " / ", Prod: r" \cdot "}[type(f)]
        body = formula_to_latex(f.left, False) + op + formula_to_latex(f.right, False)
        return body if top else f"({body})"
    sup = {Shift: r"\neck", Rev: r"\rev", Brac: r"\brac"}[type(f)]
    inner = formula_to_latex(f.inner, False)
    if not isinstance(f.inner, Prim):
        inner = "{" + inner + "}"
    return f"{inner}^{{{sup}}}"


def sequent_to_latex(s: Sequent) -> str:
    return ", ".join(formula_to_latex(a) for a in s.antecedent) + r" \to " + formula_to_latex(s.succedent)


def proof_to_latex(proof: ProofNode) -> str:
    """Render with ``\\infer`` from proof.sty; see :data:`LATEX_PREAMBLE`."""
    label = _LATEX_LABEL.get(proof.rule, proof.rule.value)
    prems = " & ".join(proof_to_latex(p) for p in proof.premises)
    return f"\\infer[{label}]{{{sequent_to_latex(proof.conclusion)}}}{{{prems}}}"
