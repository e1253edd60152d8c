"""Ranked hypergraphs, hypergraph-calculus types, replacement and canonical forms.

Nodes are integers; an edge is a pair ``(att, label)`` and edge ids are
positions in ``Hypergraph.edges``. Labels are :class:`HlType` values or
:class:`Placeholder` ``$k``. Graphs stored inside types are kept in
canonical form, so type equality is equality up to isomorphism.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

from .formula import Brac, Formula, Over, Prim, Prod, Rev, Shift, Under, print_formula

__all__ = [
    "Hypergraph", "HlType", "HPrim", "HDiv", "HTimes", "Placeholder", "HlSequent",
    "HypergraphError", "replace", "sg", "loop_graph", "point", "neck_h", "tr",
    "iso", "canonical", "type_key", "type_size", "rank_of", "graph_to_json",
    "graph_from_json", "type_to_json", "type_from_json", "parse_hl_type",
    "print_hl_type", "to_dot", "is_wi",
]


class HypergraphError(ValueError):
    pass


@dataclass(frozen=True)
class Placeholder:
    rank: int

    def __str__(self):
        return f"${self.rank}"


@dataclass(frozen=True)
class Hypergraph:
    nodes: tuple
    edges: tuple          # ((att, label), ...)
    ext: tuple

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple((tuple(a), l) for a, l in self.edges))
        object.__setattr__(self, "ext", tuple(self.ext))
        ns = set(self.nodes)
        if len(ns) != len(self.nodes):
            raise HypergraphError("duplicate node ids")
        if len(set(self.ext)) != len(self.ext):
            raise HypergraphError("external nodes must be distinct")
        if not set(self.ext) <= ns:
            raise HypergraphError("external node not in node set")
        for att, lab in self.edges:
            if not set(att) <= ns:
                raise HypergraphError("attachment node not in node set")
            if rank_of(lab) != len(att):
                raise HypergraphError(f"edge label {lab} has rank {rank_of(lab)} but {len(att)} attachments")

    @property
    def rank(self) -> int:
        return len(self.ext)

    def isolated_nodes(self) -> set:
        used = set()
        for att, _ in self.edges:
            used.update(att)
        return set(self.nodes) - used

    def placeholder_edges(self) -> list:
        return [i for i, (_, l) in enumerate(self.edges) if isinstance(l, Placeholder)]

    def __str__(self):
        es = ", ".join(f"{_label_str(l)}{list(a)}" for a, l in self.edges)
        return f"<nodes {list(self.nodes)}; {es}; ext {list(self.ext)}>"


def is_wi(g: Hypergraph) -> bool:
    """No isolated nodes."""
    return not g.isolated_nodes()


# ------------------------------------------------------------------ types

class HlType:
    __slots__ = ()

    def __str__(self):
        return print_hl_type(self)


@dataclass(frozen=True, eq=False)
class HPrim(HlType):
    name: str
    rank: int

    def __eq__(self, other):
        return isinstance(other, HlType) and type_key(self) == type_key(other)

    def __hash__(self):
        return hash(type_key(self))


@dataclass(frozen=True, eq=False)
class HDiv(HlType):
    """``N div D``; D holds exactly one placeholder edge."""
    num: HlType
    den: Hypergraph

    def __post_init__(self):
        ph = self.den.placeholder_edges()
        if len(ph) != 1:
            raise HypergraphError("the denominator needs exactly one $ edge")
        if rank_of(self.num) != self.den.rank:
            raise HypergraphError("rank of the numerator must equal rank of the denominator")
        if not is_wi(self.den):
            raise HypergraphError("denominator has isolated nodes")
        object.__setattr__(self, "den", canonical(self.den)[0])

    def __eq__(self, other):
        return isinstance(other, HlType) and type_key(self) == type_key(other)

    def __hash__(self):
        return hash(type_key(self))


@dataclass(frozen=True, eq=False)
class HTimes(HlType):
    body: Hypergraph

    def __post_init__(self):
        if self.body.placeholder_edges():
            raise HypergraphError("times(M) cannot contain $ edges")
        if not is_wi(self.body):
            raise HypergraphError("times body has isolated nodes")
        object.__setattr__(self, "body", canonical(self.body)[0])

    def __eq__(self, other):
        return isinstance(other, HlType) and type_key(self) == type_key(other)

    def __hash__(self):
        return hash(type_key(self))


Label = Union[HlType, Placeholder]


def rank_of(lab) -> int:
    if isinstance(lab, Placeholder):
        return lab.rank
    if isinstance(lab, HPrim):
        return lab.rank
    if isinstance(lab, HDiv):
        d = lab.den.placeholder_edges()[0]
        return len(lab.den.edges[d][0])
    if isinstance(lab, HTimes):
        return lab.body.rank
    raise HypergraphError(f"not a label: {lab!r}")


_KEYS: dict = {}


def type_key(t) -> str:
    """Canonical text of a label; equal keys mean isomorphic types."""
    if isinstance(t, Placeholder):
        return f"${t.rank}"
    k = _KEYS.get(id(t))
    if k is not None and k[0] is t:
        return k[1]
    if isinstance(t, HPrim):
        s = f"{t.name}#{t.rank}"
    elif isinstance(t, HDiv):
        s = f"({type_key(t.num)})/[{canonical(t.den)[1]}]"
    elif isinstance(t, HTimes):
        s = f"x[{canonical(t.body)[1]}]"
    else:
        raise HypergraphError(f"not a type: {t!r}")
    _KEYS[id(t)] = (t, s)
    return s


def type_size(t) -> int:
    if isinstance(t, HPrim):
        return 1
    if isinstance(t, HDiv):
        return type_size(t.num) + sum(type_size(l) for _, l in t.den.edges
                                      if not isinstance(l, Placeholder)) + 1
    if isinstance(t, HTimes):
        return sum(type_size(l) for _, l in t.body.edges) + 1
    raise HypergraphError(f"not a type: {t!r}")


# ------------------------------------------------------------------ canonical form

def _refine(g: Hypergraph, colors: dict, keys: list) -> dict:
    while True:
        sig = {}
        for v in g.nodes:
            sig[v] = [colors[v]]
        for (att, _), k in zip(g.edges, keys):
            ctx = (k, tuple(colors[u] for u in att))
            for pos, u in enumerate(att):
                sig[u].append((pos, ctx))
        packed = {v: (s[0], tuple(sorted(s[1:]))) for v, s in sig.items()}
        order = {c: i for i, c in enumerate(sorted(set(packed.values())))}
        new = {v: order[packed[v]] for v in g.nodes}
        if len(set(new.values())) == len(set(colors.values())):
            return new
        colors = new


def _certificate(g: Hypergraph, numbering: dict, keys: list) -> tuple:
    es = sorted((k, tuple(numbering[u] for u in att)) for (att, _), k in zip(g.edges, keys))
    return (len(g.nodes), tuple(numbering[u] for u in g.ext), tuple(es))


def _canon_search(g: Hypergraph, colors: dict, keys: list):
    colors = _refine(g, colors, keys)
    classes: dict = {}
    for v, c in colors.items():
        classes.setdefault(c, []).append(v)
    if all(len(vs) == 1 for vs in classes.values()):
        numbering = {v: c for v, c in colors.items()}
        return _certificate(g, numbering, keys), numbering
    # individualize each node of the smallest non-trivial class
    target = min((c for c, vs in classes.items() if len(vs) > 1),
                 key=lambda c: (len(classes[c]), c))
    best = None
    for v in sorted(classes[target]):
        col = {u: (2 * c if u != v else 2 * c + 1) for u, c in colors.items()}
        cand = _canon_search(g, col, keys)
        if best is None or cand[0] < best[0]:
            best = cand
    return best


def canonical(g: Hypergraph):
    """``(canonical graph, certificate text)``; isomorphic graphs give equal results."""
    return _canonical_cached(g)


@lru_cache(maxsize=200_000)
def _canonical_cached(g: Hypergraph):
    keys = [type_key(l) for _, l in g.edges]
    ext_pos = {v: i for i, v in enumerate(g.ext)}
    base = {}
    for v in g.nodes:
        base[v] = ext_pos.get(v, -1)
    order = {c: i for i, c in enumerate(sorted(set(base.values())))}
    colors = {v: order[base[v]] for v in g.nodes}
    cert, numbering = _canon_search(g, colors, keys) if g.nodes else (_certificate(g, {}, keys), {})
    edges = sorted(((tuple(numbering[u] for u in att), lab) for att, lab in g.edges),
                   key=lambda e: (type_key(e[1]), e[0]))
    cg = Hypergraph(tuple(range(len(g.nodes))), tuple(edges), tuple(numbering[u] for u in g.ext))
    return cg, repr(cert)


def iso(g: Hypergraph, h: Hypergraph) -> bool:
    return canonical(g)[1] == canonical(h)[1]


# ------------------------------------------------------------------ constructions

def replace(g: Hypergraph, e: int, h: Hypergraph) -> Hypergraph:
    """``G[e/H]``: drop edge ``e``, glue a fresh copy of ``H`` along its attachment."""
    att, _ = g.edges[e]
    if len(att) != h.rank:
        raise HypergraphError(f"edge of rank {len(att)} cannot be replaced by a rank-{h.rank} graph")
    nxt = max(g.nodes, default=-1) + 1
    ren = {}
    for i, v in enumerate(h.ext):
        ren[v] = att[i]
    for v in h.nodes:
        if v not in ren:
            ren[v] = nxt
            nxt += 1
    new_nodes = list(g.nodes) + [ren[v] for v in h.nodes if v not in set(h.ext)]
    edges = [x for i, x in enumerate(g.edges) if i != e]
    edges += [(tuple(ren[u] for u in a), l) for a, l in h.edges]
    return Hypergraph(tuple(new_nodes), tuple(edges), g.ext)


def sg(labels) -> Hypergraph:
    """String graph: a chain of rank-2 edges, endpoints external."""
    labels = list(labels)
    for l in labels:
        if rank_of(l) != 2:
            raise HypergraphError(f"string graph labels must have rank 2, got {l}")
    n = len(labels)
    return Hypergraph(tuple(range(n + 1)),
                      tuple(((i, i + 1), l) for i, l in enumerate(labels)), (0, n))


def loop_graph(label) -> Hypergraph:
    if rank_of(label) != 2:
        raise HypergraphError("Loop needs a rank-2 label")
    return Hypergraph((0,), (((0, 0), label),), ())


def point(label) -> Hypergraph:
    """``a•``: one edge, every node external in attachment order."""
    r = rank_of(label)
    return Hypergraph(tuple(range(r)), ((tuple(range(r)), label),), tuple(range(r)))


def neck_h(t: HlType) -> HlType:
    """``times(Loop(t)) div Loop($2)``."""
    if rank_of(t) != 2:
        raise HypergraphError("neck_H needs a rank-2 type")
    return HDiv(HTimes(loop_graph(t)), loop_graph(Placeholder(2)))


def tr(f: Formula, *, allow_neck: bool = False) -> HlType:
    """Translate a string formula; ``^c`` only with ``allow_neck`` (as neck_H)."""
    if isinstance(f, Prim):
        return HPrim(f.name, 2)
    if isinstance(f, Over):       # A / B
        return HDiv(tr(f.left, allow_neck=allow_neck),
                    sg([Placeholder(2), tr(f.right, allow_neck=allow_neck)]))
    if isinstance(f, Under):      # B \ A
        return HDiv(tr(f.right, allow_neck=allow_neck),
                    sg([tr(f.left, allow_neck=allow_neck), Placeholder(2)]))
    if isinstance(f, Prod):
        return HTimes(sg([tr(f.left, allow_neck=allow_neck), tr(f.right, allow_neck=allow_neck)]))
    if isinstance(f, Brac):
        return neck_h(tr(f.inner, allow_neck=allow_neck))
    if isinstance(f, Rev):
        return HTimes(Hypergraph((0, 1), (((0, 1), tr(f.inner, allow_neck=allow_neck)),), (1, 0)))
    if isinstance(f, Shift):
        if not allow_neck:
            raise HypergraphError(f"^c has no faithful translation: {print_formula(f)}")
        return neck_h(tr(f.inner, allow_neck=True))
    raise HypergraphError(f"unknown formula {f!r}")


@dataclass(frozen=True)
class HlSequent:
    antecedent: Hypergraph
    succedent: HlType

    def __post_init__(self):
        if self.antecedent.rank != rank_of(self.succedent):
            raise HypergraphError("antecedent and succedent ranks differ")
        if self.antecedent.placeholder_edges():
            raise HypergraphError("antecedent cannot contain $ edges")

    def __str__(self):
        return f"{self.antecedent} -> {print_hl_type(self.succedent)}"


# ------------------------------------------------------------------ text syntax

def _label_str(l) -> str:
    return str(l) if isinstance(l, Placeholder) else print_hl_type(l)


def _graph_text(g: Hypergraph) -> str:
    # string graphs and loops print in their short forms
    if g.rank == 2 and g.edges and _is_chain(g):
        return "sg(" + ", ".join(_label_str(l) for l in _chain_labels(g)) + ")"
    if len(g.nodes) == 1 and len(g.edges) == 1 and g.edges[0][0] == (g.nodes[0],) * 2 and not g.ext:
        return f"loop({_label_str(g.edges[0][1])})"
    body = ", ".join(f"{_label_str(l)}{list(a)}" for a, l in g.edges)
    return f"graph({body}; ext {list(g.ext)})"


def _is_chain(g: Hypergraph) -> bool:
    return _chain_labels(g) is not None


def _chain_labels(g: Hypergraph):
    if len(g.nodes) != len(g.edges) + 1 or any(len(a) != 2 for a, _ in g.edges):
        return None
    out_edge = {}
    for a, l in g.edges:
        if a[0] in out_edge or a[0] == a[1]:
            return None
        out_edge[a[0]] = (a[1], l)
    cur, labels, seen = g.ext[0], [], {g.ext[0]}
    while cur in out_edge:
        cur, l = out_edge[cur]
        if cur in seen:
            return None
        seen.add(cur)
        labels.append(l)
    if cur != g.ext[1] or len(labels) != len(g.edges):
        return None
    return labels


def print_hl_type(t) -> str:
    if isinstance(t, Placeholder):
        return str(t)
    if isinstance(t, HPrim):
        return f"{t.name}#{t.rank}"
    if isinstance(t, HDiv):
        return f"({print_hl_type(t.num)} div {_graph_text(t.den)})"
    if isinstance(t, HTimes):
        return f"times {_graph_text(t.body)}"
    raise HypergraphError(f"not a type: {t!r}")


_HL_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<hash>#\d+)|(?P<ph>\$\d+)"
                       r"|(?P<ref>@[A-Za-z_][A-Za-z0-9_]*)|(?P<int>\d+)|(?P<op>[(),;\[\]]))")


def parse_hl_type(text: str, graphs: Optional[dict] = None) -> HlType:
    """Parse ``p#2``, ``T div G``, ``times G``; a graph ``G`` is ``sg(l, ...)``,
    ``loop(l)``, ``point(l)``, ``graph(l[0,1], ...; ext [0,1])`` or ``@name``
    looked up in ``graphs``. A label ``l`` is a type or ``$k``.
    """
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _HL_TOKEN.match(text, pos)
        if not m:
            raise HypergraphError(f"unexpected character {text[pos]!r} at offset {pos}")
        toks.append((m.lastgroup, m.group(m.lastgroup)))
        pos = m.end()
    toks.append(("eof", ""))
    graphs = graphs or {}
    i = 0

    def peek():
        return toks[i]

    def take(kind=None, val=None):
        nonlocal i
        t = toks[i]
        if (kind and t[0] != kind) or (val and t[1] != val):
            raise HypergraphError(f"expected {val or kind}, got {t[1] or 'end of input'!r}")
        i += 1
        return t

    def typ():
        t = atom()
        if peek() == ("name", "div"):
            take()
            t = HDiv(t, graph())
        return t

    def atom():
        k, v = peek()
        if (k, v) == ("op", "("):
            take()
            t = typ()
            take("op", ")")
            return t
        if (k, v) == ("name", "times"):
            take()
            return HTimes(graph())
        if k == "name":
            take()
            r = int(take("hash")[1][1:])
            return HPrim(v, r)
        raise HypergraphError(f"expected a type, got {v or 'end of input'!r}")

    def label():
        if peek()[0] == "ph":
            return Placeholder(int(take()[1][1:]))
        return typ()

    def graph():
        k, v = peek()
        if k == "ref":
            take()
            if v[1:] not in graphs:
                raise HypergraphError(f"unknown graph reference {v}")
            g = graphs[v[1:]]
            return g if isinstance(g, Hypergraph) else graph_from_json(g, graphs)
        if k == "name" and v in ("sg", "loop", "point", "graph"):
            take()
            take("op", "(")
            if v == "graph":
                edges = []
                while peek() != ("op", ";"):
                    lab = label()
                    take("op", "[")
                    att = []
                    while peek() != ("op", "]"):
                        att.append(int(take("int")[1]))
                        if peek() == ("op", ","):
                            take()
                    take("op", "]")
                    edges.append((tuple(att), lab))
                    if peek() == ("op", ","):
                        take()
                take("op", ";")
                take("name", "ext")
                take("op", "[")
                ext = []
                while peek() != ("op", "]"):
                    ext.append(int(take("int")[1]))
                    if peek() == ("op", ","):
                        take()
                take("op", "]")
                take("op", ")")
                nodes = sorted({u for a, _ in edges for u in a} | set(ext))
                return Hypergraph(tuple(nodes), tuple(edges), tuple(ext))
            labels = [label()]
            while peek() == ("op", ","):
                take()
                labels.append(label())
            take("op", ")")
            if v == "sg":
                return sg(labels)
            if len(labels) != 1:
                raise HypergraphError(f"{v}() takes one label")
            return loop_graph(labels[0]) if v == "loop" else point(labels[0])
        raise HypergraphError(f"expected a graph, got {v or 'end of input'!r}")

    t = typ()
    take("eof")
    return t


# ------------------------------------------------------------------ JSON / DOT

def type_to_json(t) -> str:
    return print_hl_type(t)


def type_from_json(data, graphs: Optional[dict] = None) -> HlType:
    if isinstance(data, str):
        return parse_hl_type(data, graphs)
    if "prim" in data:
        return HPrim(data["prim"], int(data["rank"]))
    if "times" in data:
        return HTimes(graph_from_json(data["times"], graphs))
    if "div" in data:
        return HDiv(type_from_json(data["div"], graphs), graph_from_json(data["den"], graphs))
    raise HypergraphError(f"cannot read type from {data!r}")


def graph_to_json(g: Hypergraph) -> dict:
    return {
        "nodes": list(g.nodes),
        "edges": [{"id": i, "att": list(a), "label": _label_str(l)} for i, (a, l) in enumerate(g.edges)],
        "ext": list(g.ext),
    }


def graph_from_json(data, graphs: Optional[dict] = None) -> Hypergraph:
    if isinstance(data, str):
        if data.startswith("@"):
            return _ref(data, graphs)
        data = json.loads(data)
    edges = []
    for e in data["edges"]:
        lab = e["label"]
        if isinstance(lab, str) and re.fullmatch(r"\$\d+", lab):
            lab = Placeholder(int(lab[1:]))
        else:
            lab = type_from_json(lab, graphs)
        edges.append((tuple(e["att"]), lab))
    return Hypergraph(tuple(data["nodes"]), tuple(edges), tuple(data["ext"]))


def _ref(name: str, graphs) -> Hypergraph:
    graphs = graphs or {}
    key = name[1:]
    if key not in graphs:
        raise HypergraphError(f"unknown graph reference {name}")
    g = graphs[key]
    return g if isinstance(g, Hypergraph) else graph_from_json(g, graphs)


def to_dot(g: Hypergraph, name: str = "G") -> str:
    """Edges become box nodes joined to their attachment nodes by numbered arcs."""
    lines = [f"digraph {name} {{", "  node [shape=circle, width=0.2, label=\"\"];"]
    for v in g.nodes:
        xl = f", xlabel=\"({g.ext.index(v) + 1})\"" if v in g.ext else ""
        lines.append(f"  v{v} [shape=point{xl}];")
    for i, (att, lab) in enumerate(g.edges):
        text = _label_str(lab).replace('"', '\\"')
        lines.append(f"  e{i} [shape=box, label=\"{text}\"];")
        for pos, v in enumerate(att):
            lines.append(f"  e{i} -> v{v} [label=\"{pos + 1}\", arrowhead=none];")
    lines.append("}")
    return "\n".join(lines)
