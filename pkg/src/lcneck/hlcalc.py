"""Cut-free backward proof search for the hypergraph calculus with the WI discipline."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Optional

from .formula import Sequent, SystemId, check_fragment
from .hypergraph import (
    HDiv, HlSequent, HlType, HPrim, HTimes, Hypergraph, HypergraphError,
    canonical, iso, rank_of, replace, sg, tr, type_key,
)

__all__ = [
    "Decomposition", "HlProof", "HlConfig", "HlProver", "HlLimitExceeded",
    "match_pattern", "hl_derive", "hl_check_proof", "lbrac_decide",
    "lbrac_translate", "hl_cut_compose",
]


class HlLimitExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Decomposition:
    """``blocks[i]`` fills the i-th filled pattern edge; ``context`` only for (÷→)."""
    node_map: tuple          # ((pattern node, host node), ...)
    blocks: tuple
    context: Optional[Hypergraph] = None


def _surjections(items: list, targets: list):
    n, k = len(items), len(targets)
    if k == 0:
        if n == 0:
            yield {}
        return
    if n < k:
        return
    for choice in product(range(k), repeat=n):
        if len(set(choice)) == k:
            yield {it: targets[c] for it, c in zip(items, choice)}


def _decompose(k: Hypergraph, fixed: dict, internal: list, free: list,
               fill: list, skip: frozenset, with_context: bool,
               ctx_att: tuple = (), ctx_label=None,
               exclusive: frozenset = frozenset()) -> Iterator[Decomposition]:
    """Shared enumerator behind (→×) and (÷→).

    ``fixed`` pins pattern nodes to host nodes; ``internal`` pattern nodes map
    injectively to host nodes that nothing outside the pattern may touch;
    ``free`` pattern nodes map anywhere. ``fill`` lists the attachments (in
    pattern nodes) of the edges whose blocks are returned. ``exclusive``
    holds host images of internal pattern nodes that are already pinned.
    """
    host_nodes = list(k.nodes)
    ext_set = set(k.ext)
    taken = set(fixed.values())
    internal_choices = [v for v in host_nodes if v not in ext_set and v not in taken]

    def injections(idx, used):
        if idx == len(internal):
            yield {}
            return
        for v in internal_choices:
            if v in used:
                continue
            for rest in injections(idx + 1, used | {v}):
                rest[internal[idx]] = v
                yield rest

    live_edges = [i for i in range(len(k.edges)) if i not in skip]
    for inj in injections(0, frozenset()):
        internal_img = set(inj.values()) | exclusive
        for free_img in product(*[[v for v in host_nodes if v not in internal_img]] * len(free)):
            phi = dict(fixed)
            phi.update(inj)
            phi.update(zip(free, free_img))
            yield from _assign(k, phi, internal_img, fill, live_edges, with_context,
                               ctx_att, ctx_label, skip)


def _components(k: Hypergraph, edges: list, image: set) -> list:
    parent = {e: e for e in edges}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    owner = {}
    for e in edges:
        for v in k.edges[e][0]:
            if v in image:
                continue
            if v in owner:
                parent[find(e)] = find(owner[v])
            else:
                owner[v] = e
    groups: dict = {}
    for e in edges:
        groups.setdefault(find(e), []).append(e)
    return list(groups.values())


def _assign(k, phi, internal_img, fill, live_edges, with_context, ctx_att, ctx_label, skip):
    image = set(phi.values())
    ext_set = set(k.ext)
    comps = _components(k, live_edges, image)
    fill_img = [set(phi[x] for x in att) for att in fill]
    options = []
    for comp in comps:
        touch = {v for e in comp for v in k.edges[e][0] if v in image}
        inner = {v for e in comp for v in k.edges[e][0] if v not in image}
        opts = []
        if not (inner & ext_set):
            opts += [i for i, fi in enumerate(fill_img) if touch <= fi]
        if with_context and not (touch & internal_img):
            opts.append(None)
        if not opts:
            return
        options.append(opts)
    for dest in product(*options):
        blocks = [[] for _ in fill]
        ctx_edges = []
        for comp, d in zip(comps, dest):
            (ctx_edges if d is None else blocks[d]).extend(comp)
        yield from _build(k, phi, image, fill, blocks, ctx_edges, with_context,
                          ctx_att, ctx_label, internal_img)


def _build(k, phi, image, fill, blocks, ctx_edges, with_context, ctx_att, ctx_label, internal_img):
    per_block = []
    for att, edges in zip(fill, blocks):
        # which copy of an ext node receives each incidence at a glued host node
        slots = {}
        for pos, x in enumerate(att):
            slots.setdefault(phi[x], []).append(pos)
        incid: dict = {}
        for e in edges:
            for i, v in enumerate(k.edges[e][0]):
                if v in image:
                    if v not in slots:
                        return
                    incid.setdefault(v, []).append((e, i))
        for v, ps in slots.items():
            incid.setdefault(v, [])
        choices = [list(_surjections(incid[v], slots[v])) for v in slots]
        if any(not c for c in choices):
            return
        per_block.append((att, edges, list(slots), choices))

    ctx = None
    if with_context:
        keep = set()
        for e in ctx_edges:
            keep.update(k.edges[e][0])
        keep.update(phi[x] for x in ctx_att)
        keep.update(k.ext)
        nodes = [v for v in k.nodes if v in keep]
        if set(nodes) & internal_img:
            return
        cedges = [k.edges[e] for e in ctx_edges] + [(tuple(phi[x] for x in ctx_att), ctx_label)]
        try:
            ctx = Hypergraph(tuple(nodes), tuple(cedges), k.ext)
        except HypergraphError:
            return
        if ctx.isolated_nodes():
            return

    for picks in product(*[product(*c) for _, _, _, c in per_block]):
        built = []
        for (att, edges, glued, _), pick in zip(per_block, picks):
            where = {}
            for m in pick:
                where.update(m)
            r = len(att)
            ren = {}
            nxt = r
            for e in edges:
                for v in k.edges[e][0]:
                    if v not in image and v not in ren:
                        ren[v] = nxt
                        nxt += 1
            hedges = []
            for e in edges:
                a, lab = k.edges[e]
                hedges.append((tuple(where[(e, i)] if v in image else ren[v]
                                     for i, v in enumerate(a)), lab))
            h = Hypergraph(tuple(range(nxt)), tuple(hedges), tuple(range(r)))
            if h.isolated_nodes():
                break
            built.append(h)
        else:
            yield Decomposition(tuple(sorted(phi.items())), tuple(built), ctx)


def match_pattern(k: Hypergraph, pattern: Hypergraph) -> Iterator[Decomposition]:
    """All ways to write ``k`` as ``pattern[m_1/H_1]...[m_l/H_l]`` (WI blocks)."""
    if k.rank != pattern.rank:
        raise HypergraphError("rank mismatch between host and pattern")
    fixed = dict(zip(pattern.ext, k.ext))
    internal = [v for v in pattern.nodes if v not in fixed]
    fill = [att for att, _ in pattern.edges]
    seen = set()
    for d in _decompose(k, fixed, internal, [], fill, frozenset(), False):
        key = tuple(canonical(h)[1] for h in d.blocks)
        if key not in seen:
            seen.add(key)
            yield d


def _div_decompositions(k: Hypergraph, x: int) -> Iterator[tuple]:
    """Backward (÷→) on edge ``x``: yields ``(context, [(H_j, lab(d_j))])``."""
    att_x, t = k.edges[x]
    d = t.den
    ph = d.placeholder_edges()[0]
    att_ph = d.edges[ph][0]
    fixed = {}
    for dn, hn in zip(att_ph, att_x):
        if dn in fixed and fixed[dn] != hn:
            return
        fixed[dn] = hn
    ext_d = set(d.ext)
    internal = [v for v in d.nodes if v not in ext_d]
    # only ext nodes of D may be glued together by the context
    for v in internal:
        if v in fixed and list(fixed.values()).count(fixed[v]) > 1:
            return
    if any(fixed[v] in k.ext for v in internal if v in fixed):
        return
    internal_free = [v for v in internal if v not in fixed]
    free = [v for v in d.ext if v not in fixed]
    others = [(att, lab) for i, (att, lab) in enumerate(d.edges) if i != ph]
    fill = [att for att, _ in others]
    pinned = frozenset(fixed[v] for v in internal if v in fixed)
    seen = set()
    for dec in _decompose(k, fixed, internal_free, free, fill, frozenset([x]), True,
                          tuple(d.ext), t.num, pinned):
        key = (canonical(dec.context)[1],) + tuple(canonical(h)[1] for h in dec.blocks)
        if key in seen:
            continue
        seen.add(key)
        yield dec.context, [(h, lab) for h, (_, lab) in zip(dec.blocks, others)]


@dataclass(frozen=True)
class HlProof:
    sequent: HlSequent
    rule: str                # Ax, TimesL, TimesR, DivL, DivR
    premises: tuple = ()

    def size(self) -> int:
        return 1 + sum(p.size() for p in self.premises)

    def render(self, indent: int = 0) -> str:
        lines = [" " * indent + f"[{self.rule}] {self.sequent}"]
        for p in self.premises:
            lines.append(p.render(indent + 2))
        return "\n".join(lines)


@dataclass(frozen=True)
class HlConfig:
    node_limit: int = 24
    memo_limit: int = 500_000
    wi: bool = True          # False admits isolated nodes in the input (experimental)


class HlProver:
    """Memoized on canonical keys; graphs are canonicalized before each step."""

    def __init__(self, cfg: HlConfig | None = None):
        self.cfg = cfg or HlConfig()
        self._memo: dict = {}

    def clear(self):
        self._memo.clear()

    def derive(self, seq: HlSequent) -> Optional[HlProof]:
        if self.cfg.wi and seq.antecedent.isolated_nodes():
            raise HypergraphError("antecedent has isolated nodes")
        if len(self._memo) > self.cfg.memo_limit // 2:
            self._memo.clear()
        return self._prove(seq.antecedent, seq.succedent)

    def _prove(self, g: Hypergraph, a: HlType) -> Optional[HlProof]:
        g, gk = canonical(g)
        key = (gk, type_key(a))
        if key in self._memo:
            return self._memo[key]
        if len(g.nodes) > self.cfg.node_limit:
            raise HlLimitExceeded(f"sequent has {len(g.nodes)} nodes (limit {self.cfg.node_limit})")
        if len(self._memo) >= self.cfg.memo_limit:
            raise HlLimitExceeded("memo table full")
        self._memo[key] = None          # cycles cannot occur; the sizes shrink
        res = self._search(g, a)
        self._memo[key] = res
        return res

    def _search(self, g: Hypergraph, a: HlType) -> Optional[HlProof]:
        seq = HlSequent(g, a)
        # (×→) and (→÷) are invertible: apply them first
        for i, (_, lab) in enumerate(g.edges):
            if isinstance(lab, HTimes):
                sub = self._prove(replace(g, i, lab.body), a)
                return HlProof(seq, "TimesL", (sub,)) if sub else None
        if isinstance(a, HDiv):
            ph = a.den.placeholder_edges()[0]
            sub = self._prove(replace(a.den, ph, g), a.num)
            return HlProof(seq, "DivR", (sub,)) if sub else None
        if isinstance(a, HPrim) and len(g.edges) == 1:
            att, lab = g.edges[0]
            if lab == a and att == g.ext and len(g.nodes) == len(att):
                return HlProof(seq, "Ax")
        if isinstance(a, HTimes):
            m = a.body
            for dec in match_pattern(g, m):
                subs = []
                for h, (_, lab) in zip(dec.blocks, m.edges):
                    p = self._prove(h, lab)
                    if p is None:
                        break
                    subs.append(p)
                else:
                    return HlProof(seq, "TimesR", tuple(subs))
        for i, (_, lab) in enumerate(g.edges):
            if not isinstance(lab, HDiv):
                continue
            for ctx, parts in _div_decompositions(g, i):
                subs = []
                for h, t in parts:
                    p = self._prove(h, t)
                    if p is None:
                        break
                    subs.append(p)
                else:
                    p = self._prove(ctx, a)
                    if p is not None:
                        return HlProof(seq, "DivL", (p,) + tuple(subs))
        return None


def hl_derive(seq: HlSequent, cfg: HlConfig | None = None) -> Optional[HlProof]:
    return HlProver(cfg).derive(seq)


# ------------------------------------------------------------------ checking

def hl_check_proof(proof: HlProof) -> bool:
    """Re-validate each inference up to isomorphism."""
    return _check(proof)


def _same(s1: HlSequent, g: Hypergraph, a) -> bool:
    return s1.succedent == a and iso(s1.antecedent, g)


def _check(p: HlProof) -> bool:
    g, a = p.sequent.antecedent, p.sequent.succedent
    prem = p.premises
    if not all(_check(q) for q in prem):
        return False
    if p.rule == "Ax":
        if prem or not isinstance(a, HPrim) or len(g.edges) != 1:
            return False
        att, lab = g.edges[0]
        return lab == a and att == g.ext and len(g.nodes) == len(att)
    if p.rule == "TimesL":
        return len(prem) == 1 and any(
            isinstance(l, HTimes) and _same(prem[0].sequent, replace(g, i, l.body), a)
            for i, (_, l) in enumerate(g.edges))
    if p.rule == "DivR":
        if len(prem) != 1 or not isinstance(a, HDiv):
            return False
        ph = a.den.placeholder_edges()[0]
        return _same(prem[0].sequent, replace(a.den, ph, g), a.num)
    if p.rule == "TimesR":
        if not isinstance(a, HTimes) or len(prem) != len(a.body.edges):
            return False
        for dec in match_pattern(g, a.body):
            if all(_same(q.sequent, h, lab) for q, h, (_, lab)
                   in zip(prem, dec.blocks, a.body.edges)):
                return True
        return False
    if p.rule == "DivL":
        if not prem:
            return False
        for i, (_, l) in enumerate(g.edges):
            if not isinstance(l, HDiv):
                continue
            for ctx, parts in _div_decompositions(g, i):
                if len(parts) + 1 != len(prem):
                    continue
                if _same(prem[0].sequent, ctx, a) and all(
                        _same(q.sequent, h, t) for q, (h, t) in zip(prem[1:], parts)):
                    return True
        return False
    return False


# ------------------------------------------------------------------ string bridge

def lbrac_translate(seq: Sequent) -> HlSequent:
    """``SG(tr(A_1) ... tr(A_n)) -> tr(B)``."""
    check_fragment_all(seq)
    if not seq.antecedent:
        raise HypergraphError("empty antecedent")
    return HlSequent(sg([tr(x) for x in seq.antecedent]), tr(seq.succedent))


def check_fragment_all(seq: Sequent) -> None:
    for f in seq.formulas():
        check_fragment(f, SystemId.LBRAC)


def lbrac_decide(seq: Sequent, cfg: HlConfig | None = None, prover: HlProver | None = None) -> bool:
    p = prover or HlProver(cfg)
    return p.derive(lbrac_translate(seq)) is not None


def hl_cut_compose(left, right, e0: int) -> HlSequent:
    """``G[e0/H] -> B`` from ``H -> A`` and ``G -> B`` with ``lab(e0) = A``.

    Accepts proofs or bare sequents.
    """
    ls = left.sequent if isinstance(left, HlProof) else left
    rs = right.sequent if isinstance(right, HlProof) else right
    if not 0 <= e0 < len(rs.antecedent.edges):
        raise HypergraphError(f"no edge {e0}")
    lab = rs.antecedent.edges[e0][1]
    if rank_of(lab) != rank_of(ls.succedent):
        raise HypergraphError("rank mismatch at the cut edge")
    if lab != ls.succedent:
        raise HypergraphError(f"edge label {lab} differs from {ls.succedent}")
    return HlSequent(replace(rs.antecedent, e0, ls.antecedent), rs.succedent)
