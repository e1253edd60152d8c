"""Categorial grammars over any of the string calculi."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import permutations, product
from typing import Optional, Sequence

from .formula import (
    Formula, Over, Prim, Sequent, SystemId, check_fragment, parse_formula,
    print_formula, primitives, size,
)
from .proofs import ProofNode
from .search import Prover, SearchConfig
from .transforms import FreshSymbolPool, cal_A, cal_S, e_n, o_n, unneck

__all__ = [
    "Grammar", "GrammarError", "MemberResult", "RightLinearGrammar", "member",
    "enumerate_language", "import_right_linear", "rl_language",
    "perm_closure_oracle", "lemma1_check", "apply_chain_permutation", "evenize_grammar",
    "unneck_grammar", "cs_embed_grammar", "parse_grammar", "format_grammar",
    "parse_right_linear", "format_right_linear",
]


class GrammarError(ValueError):
    pass


@dataclass(frozen=True)
class Grammar:
    """``lexicon`` maps each symbol to a tuple of types (its toolbox entries)."""
    distinguished: Formula
    lexicon: dict
    system: SystemId = SystemId.L

    def __post_init__(self):
        lex = {a: tuple(ts) for a, ts in self.lexicon.items()}
        object.__setattr__(self, "lexicon", lex)
        check_fragment(self.distinguished, self.system)
        for ts in lex.values():
            for t in ts:
                check_fragment(t, self.system)

    @property
    def alphabet(self) -> tuple:
        return tuple(sorted(self.lexicon))

    @property
    def toolbox(self) -> tuple:
        seen = []
        for a in self.alphabet:
            for t in self.lexicon[a]:
                if t not in seen:
                    seen.append(t)
        return tuple(seen)

    def with_system(self, system: SystemId) -> "Grammar":
        return replace(self, system=system)

    def primitive_names(self) -> set:
        out = primitives(self.distinguished)
        for t in self.toolbox:
            out |= primitives(t)
        return out


@dataclass
class MemberResult:
    member: bool
    assignment: Optional[tuple] = None
    proof: Optional[ProofNode] = None

    def __bool__(self):
        return self.member


def _symbols(word) -> tuple:
    return tuple(word) if not isinstance(word, tuple) else word


def member(g: Grammar, word, prover: Prover | None = None) -> MemberResult:
    """Try lexical assignments in lexicographic order; report the first that derives."""
    w = _symbols(word)
    if not w:
        raise GrammarError("grammar languages do not contain the empty word")
    for a in w:
        if a not in g.lexicon:
            raise GrammarError(f"unknown symbol {a!r}")
    prover = prover or Prover(SearchConfig(g.system))
    if prover.system is not g.system:
        raise GrammarError("prover system does not match the grammar")
    choices = [g.lexicon[a] for a in w]
    for assignment in product(*choices):
        proof = prover.derive(Sequent(tuple(assignment), g.distinguished))
        if proof is not None:
            return MemberResult(True, tuple(assignment), proof)
    return MemberResult(False)


def enumerate_language(g: Grammar, max_len: int, prover: Prover | None = None) -> set:
    prover = prover or Prover(SearchConfig(g.system))
    out = set()
    for n in range(1, max_len + 1):
        for w in product(g.alphabet, repeat=n):
            if member(g, w, prover):
                out.add("".join(w) if all(len(a) == 1 for a in w) else w)
    return out


# ------------------------------------------------------------ right-linear

@dataclass(frozen=True)
class RightLinearGrammar:
    """Productions are ``(X, a, Y)`` for ``X -> a Y`` and ``(X, a, None)`` for ``X -> a``."""
    start: str
    productions: tuple

    def __post_init__(self):
        object.__setattr__(self, "productions", tuple(tuple(p) for p in self.productions))
        for p in self.productions:
            if len(p) != 3 or not p[0] or not p[1]:
                raise GrammarError(f"malformed production {p!r}")

    @property
    def nonterminals(self) -> tuple:
        out = {self.start}
        for x, _, y in self.productions:
            out.add(x)
            if y is not None:
                out.add(y)
        return tuple(sorted(out))

    @property
    def terminals(self) -> tuple:
        return tuple(sorted({a for _, a, _ in self.productions}))


def import_right_linear(rl: RightLinearGrammar) -> Grammar:
    """``X -> a Y`` gives ``a : X/Y``; ``X -> a`` gives ``a : X``."""
    lex: dict = {}
    for x, a, y in rl.productions:
        t = Over(Prim(x), Prim(y)) if y is not None else Prim(x)
        if t not in lex.setdefault(a, []):
            lex[a].append(t)
    return Grammar(Prim(rl.start), lex, SystemId.L)


def rl_language(rl: RightLinearGrammar, max_len: int) -> set:
    """Words derivable from the start symbol, by direct expansion."""
    out = set()
    frontier = {("", rl.start)}
    for _ in range(max_len):
        nxt = set()
        for prefix, x in frontier:
            for lhs, a, y in rl.productions:
                if lhs != x:
                    continue
                if y is None:
                    out.add(prefix + a)
                else:
                    nxt.add((prefix + a, y))
        frontier = nxt
    return out


def perm_closure_oracle(rl: RightLinearGrammar, max_len: int) -> set:
    out = set()
    for w in rl_language(rl, max_len):
        out |= {"".join(p) for p in permutations(w)}
    return out


# ------------------------------------------------------------ chain permutations

def _shape(seq: Sequent):
    *divs, last = seq.antecedent
    if not isinstance(last, Prim) or not isinstance(seq.succedent, Prim):
        raise GrammarError("expected p1/q1, ..., p_{n-1}/q_{n-1}, p_n -> s with primitive types")
    ps, qs = [], []
    for d in divs:
        if not (isinstance(d, Over) and isinstance(d.left, Prim) and isinstance(d.right, Prim)):
            raise GrammarError("expected p1/q1, ..., p_{n-1}/q_{n-1}, p_n -> s with primitive types")
        ps.append(d.left.name)
        qs.append(d.right.name)
    return ps, qs, last.name, seq.succedent.name


def lemma1_check(seq: Sequent) -> Optional[tuple]:
    """A chaining permutation (1-based) of the division types, or None."""
    ps, qs, pn, s0 = _shape(seq)
    m = len(ps)
    if m == 0:
        return () if pn == s0 else None
    for sigma in permutations(range(m)):
        if ps[sigma[0]] != s0 or qs[sigma[-1]] != pn:
            continue
        if all(qs[sigma[i]] == ps[sigma[i + 1]] for i in range(m - 1)):
            return tuple(i + 1 for i in sigma)
    return None


def apply_chain_permutation(seq: Sequent, sigma: Sequence[int]) -> Sequent:
    """Reorder the division types by ``sigma``, keeping ``p_n`` last."""
    divs = seq.antecedent[:-1]
    return Sequent(tuple(divs[i - 1] for i in sigma) + seq.antecedent[-1:], seq.succedent)


# ------------------------------------------------------------ transforms

def _map(g: Grammar, lex_fn, start_fn, system: SystemId) -> Grammar:
    lex = {a: tuple(dict.fromkeys(lex_fn(t) for t in ts)) for a, ts in g.lexicon.items()}
    return Grammar(start_fn(g.distinguished), lex, system)


def evenize_grammar(g: Grammar, N: int | None = None) -> Grammar:
    """Toolbox through ``o_N``, distinguished type through ``e_N``."""
    if g.system is not SystemId.LNECK:
        raise GrammarError("evenize expects an Lneck grammar")
    if N is None:
        N = max(size(t) for t in g.toolbox + (g.distinguished,))
    pool = FreshSymbolPool(frozenset(g.primitive_names()))
    return _map(g, lambda t: o_n(t, N, pool), lambda s: e_n(s, N, pool), SystemId.LNECK)


def unneck_grammar(g: Grammar) -> Grammar:
    """Erase every ``^c``; the result is read under L."""
    return _map(g, unneck, unneck, SystemId.L)


def cs_embed_grammar(g: Grammar) -> Grammar:
    """An LCS (or L) grammar as an Lneck grammar: ``A`` on the toolbox, ``S`` on the start."""
    if g.system not in (SystemId.LCS, SystemId.L):
        raise GrammarError("cs_embed expects an LCS grammar")
    return _map(g, cal_A, cal_S, SystemId.LNECK)


# ------------------------------------------------------------ file formats

def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_grammar(text: str) -> Grammar:
    """``system: ...``, ``start: <formula>``, then ``<symbol> : <formula>`` lines."""
    system = SystemId.L
    start = None
    lex: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        if ":" not in line:
            raise GrammarError(f"line {lineno}: expected 'key : value'")
        key, val = (s.strip() for s in line.split(":", 1))
        try:
            if key == "system":
                system = SystemId.parse(val)
            elif key == "start":
                start = parse_formula(val, allow_reserved=True)
            else:
                lex.setdefault(key, []).append(parse_formula(val, allow_reserved=True))
        except ValueError as exc:
            raise GrammarError(f"line {lineno}: {exc}") from None
    if start is None:
        raise GrammarError("missing 'start:' line")
    if not lex:
        raise GrammarError("empty lexicon")
    try:
        return Grammar(start, lex, system)
    except ValueError as exc:
        raise GrammarError(str(exc)) from None


def format_grammar(g: Grammar) -> str:
    lines = [f"system: {g.system.value}", f"start: {print_formula(g.distinguished)}"]
    for a in g.alphabet:
        for t in g.lexicon[a]:
            lines.append(f"{a} : {print_formula(t)}")
    return "\n".join(lines) + "\n"


def parse_right_linear(text: str) -> RightLinearGrammar:
    """``start: S`` then ``X -> a Y`` or ``X -> a`` lines."""
    start = None
    prods = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        if line.startswith("start:"):
            start = line.split(":", 1)[1].strip()
            continue
        if "->" not in line:
            raise GrammarError(f"line {lineno}: expected 'X -> a Y' or 'X -> a'")
        lhs, rhs = (s.strip() for s in line.split("->", 1))
        parts = rhs.split()
        if len(lhs.split()) != 1 or len(parts) not in (1, 2):
            raise GrammarError(f"line {lineno}: production must be X -> a Y or X -> a")
        prods.append((lhs, parts[0], parts[1] if len(parts) == 2 else None))
    if start is None:
        raise GrammarError("missing 'start:' line")
    return RightLinearGrammar(start, tuple(prods))


def format_right_linear(rl: RightLinearGrammar) -> str:
    lines = [f"start: {rl.start}"]
    for x, a, y in rl.productions:
        lines.append(f"{x} -> {a}" + (f" {y}" if y else ""))
    return "\n".join(lines) + "\n"
