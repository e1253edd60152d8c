"""Small epsilon-free finite automata with the closure operations the semantics needs."""
from __future__ import annotations

import json
import random
import warnings
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator

__all__ = [
    "Automaton", "AlphabetMismatch", "StateLimitExceeded", "VacuousResidualWarning",
    "STATE_LIMIT", "from_words", "universal", "empty", "lang_concat", "lang_union",
    "lang_reverse", "lang_cyclic_shift", "lang_left_residual", "lang_right_residual",
    "determinize", "minimize", "intersect", "complement", "is_empty", "includes",
    "equivalent", "random_automaton",
]

STATE_LIMIT = 10_000


class AlphabetMismatch(ValueError):
    pass


class StateLimitExceeded(RuntimeError):
    pass


class VacuousResidualWarning(UserWarning):
    """Residual by the empty language: every word qualifies."""


@dataclass(frozen=True)
class Automaton:
    """States are ``0..states-1``; ``delta`` maps ``(state, symbol)`` to a frozenset."""
    alphabet: tuple
    states: int
    initial: frozenset
    accepting: frozenset
    delta: dict = field(default_factory=dict, compare=False)
    vacuous: bool = field(default=False, compare=False)

    def step(self, qs: Iterable[int], a: str) -> frozenset:
        out = set()
        for q in qs:
            out |= self.delta.get((q, a), frozenset())
        return frozenset(out)

    def accepts(self, word) -> bool:
        cur = self.initial
        for a in word:
            if a not in self.alphabet:
                return False
            cur = self.step(cur, a)
            if not cur:
                return False
        return bool(cur & self.accepting)

    @property
    def accepts_empty(self) -> bool:
        return bool(self.initial & self.accepting)

    def transitions(self) -> Iterator[tuple]:
        for (q, a), ts in sorted(self.delta.items()):
            for t in sorted(ts):
                yield q, a, t

    def words(self, max_len: int) -> set:
        """All accepted words up to ``max_len`` (as strings for 1-char symbols)."""
        out = set()
        join = all(len(a) == 1 for a in self.alphabet)
        frontier = {((), self.initial)}
        for n in range(max_len + 1):
            nxt = set()
            for w, cur in frontier:
                if cur & self.accepting:
                    out.add("".join(w) if join else w)
                if n < max_len:
                    for a in self.alphabet:
                        s = self.step(cur, a)
                        if s:
                            nxt.add((w + (a,), s))
            frontier = nxt
        return out

    def to_json(self) -> dict:
        return {
            "alphabet": list(self.alphabet),
            "states": self.states,
            "initial": sorted(self.initial),
            "accepting": sorted(self.accepting),
            "delta": [list(t) for t in self.transitions()],
        }

    @classmethod
    def from_json(cls, data) -> "Automaton":
        if isinstance(data, str):
            data = json.loads(data)
        alphabet = tuple(data["alphabet"])
        n = int(data["states"])
        delta: dict = {}
        for q, a, t in data["delta"]:
            if a not in alphabet or not (0 <= q < n and 0 <= t < n):
                raise ValueError(f"bad transition {[q, a, t]}")
            delta.setdefault((q, a), set()).add(t)
        for q in list(data["initial"]) + list(data["accepting"]):
            if not 0 <= q < n:
                raise ValueError(f"state {q} out of range")
        return cls(alphabet, n, frozenset(data["initial"]), frozenset(data["accepting"]),
                   {k: frozenset(v) for k, v in delta.items()})


def _build(alphabet, n, initial, accepting, triples) -> Automaton:
    delta: dict = {}
    for q, a, t in triples:
        delta.setdefault((q, a), set()).add(t)
    return Automaton(tuple(alphabet), n, frozenset(initial), frozenset(accepting),
                     {k: frozenset(v) for k, v in delta.items()})


def _same_alphabet(*autos) -> tuple:
    alph = autos[0].alphabet
    for x in autos[1:]:
        if set(x.alphabet) != set(alph):
            raise AlphabetMismatch(f"{x.alphabet} vs {alph}")
    return alph


def from_words(words: Iterable, alphabet: Iterable[str]) -> Automaton:
    """Trie automaton for a finite language."""
    alphabet = tuple(alphabet)
    triples, accepting = [], set()
    children: dict = {}
    n = 1
    for w in words:
        q = 0
        for a in w:
            if a not in alphabet:
                raise AlphabetMismatch(f"symbol {a!r} not in {alphabet}")
            if (q, a) not in children:
                children[(q, a)] = n
                triples.append((q, a, n))
                n += 1
            q = children[(q, a)]
        accepting.add(q)
    return _build(alphabet, n, {0}, accepting, triples)


def universal(alphabet, with_empty: bool = True) -> Automaton:
    alphabet = tuple(alphabet)
    if with_empty:
        return _build(alphabet, 1, {0}, {0}, [(0, a, 0) for a in alphabet])
    return _build(alphabet, 2, {0}, {1}, [(q, a, 1) for q in (0, 1) for a in alphabet])


def empty(alphabet) -> Automaton:
    return _build(tuple(alphabet), 1, {0}, set(), [])


def _shifted(a: Automaton, k: int):
    return [(q + k, x, t + k) for q, x, t in a.transitions()]


def lang_union(a: Automaton, b: Automaton) -> Automaton:
    alph = _same_alphabet(a, b)
    k = a.states
    return _build(alph, a.states + b.states,
                  set(a.initial) | {q + k for q in b.initial},
                  set(a.accepting) | {q + k for q in b.accepting},
                  list(a.transitions()) + _shifted(b, k))


def lang_concat(a: Automaton, b: Automaton) -> Automaton:
    alph = _same_alphabet(a, b)
    k = a.states
    triples = list(a.transitions()) + _shifted(b, k)
    for q, x, t in a.transitions():
        if t in a.accepting:
            triples += [(q, x, i + k) for i in b.initial]
    initial = set(a.initial)
    if a.accepts_empty:
        initial |= {i + k for i in b.initial}
    accepting = {f + k for f in b.accepting}
    if b.accepts_empty:
        accepting |= set(a.accepting)
    return _build(alph, a.states + b.states, initial, accepting, triples)


def lang_reverse(a: Automaton) -> Automaton:
    return _build(a.alphabet, a.states, a.accepting, a.initial,
                  [(t, x, q) for q, x, t in a.transitions()])


def _trim(a: Automaton) -> Automaton:
    """Drop states that are unreachable or cannot reach acceptance."""
    fwd = set(a.initial)
    todo = deque(fwd)
    while todo:
        q = todo.popleft()
        for x in a.alphabet:
            for t in a.delta.get((q, x), ()):
                if t not in fwd:
                    fwd.add(t)
                    todo.append(t)
    back = set(a.accepting) & fwd
    rev: dict = {}
    for q, x, t in a.transitions():
        rev.setdefault(t, set()).add(q)
    todo = deque(back)
    while todo:
        t = todo.popleft()
        for q in rev.get(t, ()):
            if q in fwd and q not in back:
                back.add(q)
                todo.append(q)
    keep = sorted(back)
    if not keep:
        return empty(a.alphabet)
    ren = {q: i for i, q in enumerate(keep)}
    return _build(a.alphabet, len(keep), {ren[q] for q in a.initial if q in ren},
                  {ren[q] for q in a.accepting if q in ren},
                  [(ren[q], x, ren[t]) for q, x, t in a.transitions() if q in ren and t in ren])


def lang_cyclic_shift(a: Automaton) -> Automaton:
    """``{vu : uv in L}`` as the union over states q of L(q -> F) . L(I -> q)."""
    a = _trim(a)
    out = None
    for q in range(a.states):
        suffix = Automaton(a.alphabet, a.states, frozenset({q}), a.accepting, a.delta)
        prefix = Automaton(a.alphabet, a.states, a.initial, frozenset({q}), a.delta)
        part = lang_concat(suffix, prefix)
        out = part if out is None else lang_union(out, part)
    return out if out is not None else empty(a.alphabet)


# ------------------------------------------------------------ deterministic

def determinize(a: Automaton, limit: int = STATE_LIMIT) -> Automaton:
    """Complete DFA by subset construction (state 0 is initial)."""
    start = frozenset(a.initial)
    index = {start: 0}
    order = [start]
    triples = []
    i = 0
    while i < len(order):
        cur = order[i]
        for x in a.alphabet:
            nxt = a.step(cur, x)
            if nxt not in index:
                if len(order) >= limit:
                    raise StateLimitExceeded(f"determinization exceeded {limit} states")
                index[nxt] = len(order)
                order.append(nxt)
            triples.append((i, x, index[nxt]))
        i += 1
    accepting = {k for k, s in enumerate(order) if s & a.accepting}
    return _build(a.alphabet, len(order), {0}, accepting, triples)


def _dfa_next(d: Automaton, q: int, x: str) -> int:
    (t,) = d.delta[(q, x)]
    return t


def _is_complete_dfa(a: Automaton) -> bool:
    return (len(a.initial) == 1 and all(len(a.delta.get((q, x), ())) == 1
                                        for q in range(a.states) for x in a.alphabet))


def _as_dfa(a: Automaton) -> Automaton:
    return a if _is_complete_dfa(a) else determinize(a)


def minimize(a: Automaton) -> Automaton:
    """Minimal complete DFA (Moore refinement), states renumbered in BFS order."""
    d = _as_dfa(a)
    block = [1 if q in d.accepting else 0 for q in range(d.states)]
    while True:
        sig = {}
        new = []
        for q in range(d.states):
            key = (block[q],) + tuple(block[_dfa_next(d, q, x)] for x in d.alphabet)
            new.append(sig.setdefault(key, len(sig)))
        if len(sig) == len(set(block)):
            block = new
            break
        block = new
    # renumber by BFS from the initial block for a canonical layout
    (q0,) = d.initial
    order = {block[q0]: 0}
    rep = {}
    for q in range(d.states):
        rep.setdefault(block[q], q)
    todo = deque([block[q0]])
    triples = []
    while todo:
        b = todo.popleft()
        for x in d.alphabet:
            nb = block[_dfa_next(d, rep[b], x)]
            if nb not in order:
                order[nb] = len(order)
                todo.append(nb)
            triples.append((order[b], x, order[nb]))
    accepting = {order[block[q]] for q in d.accepting if block[q] in order}
    return _build(d.alphabet, len(order), {0}, accepting, triples)


def complement(a: Automaton) -> Automaton:
    d = _as_dfa(a)
    return Automaton(d.alphabet, d.states, d.initial,
                     frozenset(range(d.states)) - d.accepting, d.delta)


def _product(a: Automaton, b: Automaton, accept, limit: int = STATE_LIMIT) -> Automaton:
    alph = _same_alphabet(a, b)
    start = [(p, q) for p in sorted(a.initial) for q in sorted(b.initial)]
    index = {s: i for i, s in enumerate(start)}
    order = list(start)
    triples = []
    i = 0
    while i < len(order):
        p, q = order[i]
        for x in alph:
            for p2 in a.delta.get((p, x), ()):
                for q2 in b.delta.get((q, x), ()):
                    s = (p2, q2)
                    if s not in index:
                        if len(order) >= limit:
                            raise StateLimitExceeded(f"product exceeded {limit} states")
                        index[s] = len(order)
                        order.append(s)
                    triples.append((i, x, index[s]))
        i += 1
    acc = {k for k, (p, q) in enumerate(order) if accept(p in a.accepting, q in b.accepting)}
    return _build(alph, len(order), set(range(len(start))), acc, triples)


def intersect(a: Automaton, b: Automaton) -> Automaton:
    return _product(a, b, lambda x, y: x and y)


def is_empty(a: Automaton) -> bool:
    seen = set(a.initial)
    todo = deque(seen)
    while todo:
        q = todo.popleft()
        if q in a.accepting:
            return False
        for x in a.alphabet:
            for t in a.delta.get((q, x), ()):
                if t not in seen:
                    seen.add(t)
                    todo.append(t)
    return True


def includes(a: Automaton, b: Automaton) -> bool:
    """Exact test of L(a) being a subset of L(b)."""
    return is_empty(intersect(a, complement(b)))


def equivalent(a: Automaton, b: Automaton) -> bool:
    return includes(a, b) and includes(b, a)


# ------------------------------------------------------------ residuals

def _vacuous(alphabet) -> Automaton:
    warnings.warn("residual by the empty language is the universal language",
                  VacuousResidualWarning, stacklevel=3)
    u = universal(alphabet)
    return Automaton(u.alphabet, u.states, u.initial, u.accepting, u.delta, vacuous=True)


def lang_left_residual(b: Automaton, a: Automaton) -> Automaton:
    """``B \\ A = {u : vu in A for every v in B}``."""
    alph = _same_alphabet(a, b)
    if is_empty(b):
        return _vacuous(alph)
    d = _as_dfa(a)
    # states of d reachable by some word of B
    states = []
    seen = set((p, q) for p in b.initial for q in d.initial)
    todo = deque(seen)
    while todo:
        p, q = todo.popleft()
        if p in b.accepting:
            states.append(q)
        for x in alph:
            for p2 in b.delta.get((p, x), ()):
                s = (p2, _dfa_next(d, q, x))
                if s not in seen:
                    seen.add(s)
                    todo.append(s)
    start = tuple(sorted(set(states)))
    index = {start: 0}
    order = [start]
    triples = []
    i = 0
    while i < len(order):
        cur = order[i]
        for x in alph:
            nxt = tuple(sorted({_dfa_next(d, q, x) for q in cur}))
            if nxt not in index:
                if len(order) >= STATE_LIMIT:
                    raise StateLimitExceeded("residual exceeded the state limit")
                index[nxt] = len(order)
                order.append(nxt)
            triples.append((i, x, index[nxt]))
        i += 1
    acc = {k for k, s in enumerate(order) if all(q in d.accepting for q in s)}
    return minimize(_build(alph, len(order), {0}, acc, triples))


def lang_right_residual(a: Automaton, b: Automaton) -> Automaton:
    """``A / B = {u : uv in A for every v in B}``."""
    alph = _same_alphabet(a, b)
    if is_empty(b):
        return _vacuous(alph)
    d = _as_dfa(a)
    good = set()
    for q in range(d.states):
        from_q = Automaton(d.alphabet, d.states, frozenset({q}), d.accepting, d.delta)
        if includes(b, from_q):
            good.add(q)
    return minimize(Automaton(d.alphabet, d.states, d.initial, frozenset(good), d.delta))


# ------------------------------------------------------------ sampling

def random_automaton(rng: random.Random, alphabet, max_states: int,
                     allow_empty_word: bool = False, density: float = 0.4) -> Automaton:
    """A random trimmed NFA with at most ``max_states`` states and a nonempty language."""
    alphabet = tuple(alphabet)
    while True:
        n = rng.randint(1, max_states)
        triples = [(q, x, t) for q in range(n) for x in alphabet for t in range(n)
                   if rng.random() < density]
        accepting = {q for q in range(n) if rng.random() < 0.5}
        if not allow_empty_word:
            accepting.discard(0)
        a = _trim(_build(alphabet, n, {0}, accepting, triples))
        if not is_empty(a):
            return a
