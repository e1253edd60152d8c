"""Formal-language interpretation of formulas by regular languages."""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Optional

from .automata import (
    Automaton, includes, is_empty, lang_concat, lang_cyclic_shift, lang_left_residual,
    lang_reverse, lang_right_residual, lang_union, minimize, random_automaton,
)
from .formula import Brac, Formula, Over, Prim, Prod, Rev, Sequent, Shift, Under, primitives

__all__ = [
    "EpsilonMode", "Interpretation", "SemanticsError", "interpret", "holds",
    "countermodel_search", "CountermodelConfig",
]


class SemanticsError(ValueError):
    pass


class EpsilonMode(enum.Enum):
    FORBID = "forbid-eps"
    ALLOW = "allow-eps"


@dataclass(frozen=True)
class Interpretation:
    """Primitive name to automaton; all automata share one alphabet."""
    assignment: dict
    epsilon_mode: EpsilonMode = EpsilonMode.FORBID

    def __post_init__(self):
        autos = list(self.assignment.values())
        if autos:
            alph = set(autos[0].alphabet)
            for a in autos[1:]:
                if set(a.alphabet) != alph:
                    raise SemanticsError("all primitive languages must share one alphabet")
        if self.epsilon_mode is EpsilonMode.FORBID:
            for name, a in self.assignment.items():
                if a.accepts_empty:
                    raise SemanticsError(f"w({name}) contains the empty word (forbid-eps mode)")

    @property
    def alphabet(self) -> tuple:
        return next(iter(self.assignment.values())).alphabet

    def describe(self, max_len: int = 4) -> dict:
        return {name: sorted(a.words(max_len), key=lambda w: (len(w), w))
                for name, a in sorted(self.assignment.items())}

    def to_json(self) -> dict:
        return {"epsilon_mode": self.epsilon_mode.value,
                "assignment": {k: v.to_json() for k, v in sorted(self.assignment.items())}}


def interpret(f: Formula, m: Interpretation, _cache: Optional[dict] = None) -> Automaton:
    cache = {} if _cache is None else _cache
    if f in cache:
        return cache[f]
    if isinstance(f, Prim):
        if f.name not in m.assignment:
            raise SemanticsError(f"primitive {f.name!r} is not interpreted")
        out = m.assignment[f.name]
    elif isinstance(f, Prod):
        out = lang_concat(interpret(f.left, m, cache), interpret(f.right, m, cache))
    elif isinstance(f, Under):
        out = lang_left_residual(interpret(f.left, m, cache), interpret(f.right, m, cache))
    elif isinstance(f, Over):
        out = lang_right_residual(interpret(f.left, m, cache), interpret(f.right, m, cache))
    elif isinstance(f, Shift):
        out = lang_cyclic_shift(interpret(f.inner, m, cache))
    elif isinstance(f, Rev):
        out = lang_reverse(interpret(f.inner, m, cache))
    elif isinstance(f, Brac):
        c = lang_cyclic_shift(interpret(f.inner, m, cache))
        out = lang_union(c, lang_reverse(c))
    else:
        raise SemanticsError(f"unknown formula {f!r}")
    out = minimize(out)
    cache[f] = out
    return out


def holds(s: Sequent, m: Interpretation) -> bool:
    """``w(A1 ... An)`` included in ``w(B)``, decided exactly."""
    cache: dict = {}
    ant = interpret(s.antecedent[0], m, cache)
    for a in s.antecedent[1:]:
        ant = minimize(lang_concat(ant, interpret(a, m, cache)))
    return includes(ant, interpret(s.succedent, m, cache))


@dataclass(frozen=True)
class CountermodelConfig:
    max_states: int = 2
    alphabet: tuple = ("a", "b")
    samples: int = 500
    seed: int = 0
    epsilon_mode: EpsilonMode = EpsilonMode.FORBID


def countermodel_search(s: Sequent, cfg: CountermodelConfig = CountermodelConfig()
                        ) -> Optional[Interpretation]:
    """Random regular interpretations; the first that falsifies ``s``, or None.

    None only means no countermodel was sampled, never that ``s`` is valid.
    """
    rng = random.Random(cfg.seed)
    names = set()
    for f in s.formulas():
        names |= primitives(f)
    names = sorted(names)
    allow = cfg.epsilon_mode is EpsilonMode.ALLOW
    for _ in range(cfg.samples):
        asg = {n: random_automaton(rng, cfg.alphabet, cfg.max_states, allow) for n in names}
        m = Interpretation(asg, cfg.epsilon_mode)
        if not holds(s, m):
            return m
    return None
