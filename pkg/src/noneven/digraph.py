"""Digraphs, directed bonds, odd dijoins, cut minors and the D(n0, n1, n2) family."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Optional, Sequence, Union

from .exact_linalg import TUMatrix, gf2_solve_bits
from .oriented_matroid import OrientedMatroid

DEFAULT_VERTEX_BOUND = 14
MINIMAL_OBSTRUCTION_EDGE_BOUND = 12


class DigraphBoundExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Edge:
    tail: Hashable
    head: Hashable
    id: Hashable

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head


@dataclass(frozen=True)
class Digraph:
    vertices: tuple
    edges: tuple[Edge, ...]

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        ids = set()
        for e in self.edges:
            if e.tail not in vs or e.head not in vs:
                raise ValueError(f"edge {e.id!r} has an unknown endpoint")
            if e.id in ids:
                raise ValueError(f"duplicate edge id {e.id!r}")
            ids.add(e.id)

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence], vertices: Iterable = ()) -> "Digraph":
        """Edges as ``(tail, head)`` or ``(tail, head, id)``; ids default to ``e1, e2, ...``."""
        vs = list(dict.fromkeys(vertices))
        es = []
        for k, item in enumerate(edges):
            tail, head = item[0], item[1]
            eid = item[2] if len(item) > 2 else f"e{k + 1}"
            for v in (tail, head):
                if v not in vs:
                    vs.append(v)
            es.append(Edge(tail, head, eid))
        return cls(tuple(vs), tuple(es))

    @property
    def edge_ids(self) -> tuple:
        return tuple(e.id for e in self.edges)

    def edge(self, eid) -> Edge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise KeyError(eid)

    def to_text(self) -> str:
        lines = ["digraph"]
        used = {v for e in self.edges for v in (e.tail, e.head)}
        lines += [f"vertex {v}" for v in self.vertices if v not in used]
        lines += [f"{e.tail} {e.head} {e.id}" for e in self.edges]
        return "\n".join(lines) + "\n"


def parse_digraph(text: str) -> Digraph:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines or lines[0].lower() != "digraph":
        raise ValueError("missing 'digraph' header")
    vertices, edges = [], []
    for line in lines[1:]:
        parts = line.split()
        if parts[0] == "vertex":
            if len(parts) != 2:
                raise ValueError(f"bad vertex line: {line!r}")
            vertices.append(parts[1])
        elif len(parts) in (2, 3):
            edges.append(parts)
        else:
            raise ValueError(f"bad edge line: {line!r}")
    return Digraph.from_edges(edges, vertices)


# ---------------------------------------------------------------------------
# matroids


def incidence_matrix(d: Digraph) -> TUMatrix:
    """Vertex-edge incidence: +1 at the head, -1 at the tail, loops zero."""
    pos = {v: i for i, v in enumerate(d.vertices)}
    rows = [[0] * len(d.edges) for _ in d.vertices]
    for j, e in enumerate(d.edges):
        if not e.is_loop:
            rows[pos[e.head]][j] = 1
            rows[pos[e.tail]][j] = -1
    return TUMatrix.from_rows(rows, len(d.edges))


def graphic_matroid(d: Digraph, **kw) -> OrientedMatroid:
    return OrientedMatroid(d.edge_ids, incidence_matrix(d), **kw)


def bond_matroid(d: Digraph, **kw) -> OrientedMatroid:
    return graphic_matroid(d, **kw).dual()


# ---------------------------------------------------------------------------
# cuts


def _check_vertices(d: Digraph, bound: int):
    if len(d.vertices) > bound:
        raise DigraphBoundExceeded(f"{len(d.vertices)} vertices exceeds the bound {bound}")


def _edge_masks(d: Digraph):
    pos = {v: i for i, v in enumerate(d.vertices)}
    return [(1 << pos[e.tail], 1 << pos[e.head]) for e in d.edges]


def directed_bond_masks(d: Digraph, bound: int = DEFAULT_VERTEX_BOUND) -> list[int]:
    """Directed bonds as edge bitmasks (bit ``j`` is ``d.edges[j]``)."""
    _check_vertices(d, bound)
    ends = _edge_masks(d)
    n = len(d.vertices)
    cuts = set()
    for x in range(1, (1 << n) - 1):
        out = 0
        ok = True
        for j, (t, h) in enumerate(ends):
            tin, hin = bool(x & t), bool(x & h)
            if tin and not hin:
                out |= 1 << j
            elif hin and not tin:
                ok = False
                break
        if ok and out:
            cuts.add(out)
    # minimal directed cuts are exactly the directed bonds
    ordered = sorted(cuts, key=lambda c: (bin(c).count("1"), c))
    bonds: list[int] = []
    for c in ordered:
        if not any(b & c == b for b in bonds):
            bonds.append(c)
    return sorted(bonds)


def directed_bonds(d: Digraph, bound: int = DEFAULT_VERTEX_BOUND) -> list[frozenset]:
    ids = d.edge_ids
    return [frozenset(ids[j] for j in range(len(ids)) if c >> j & 1) for c in directed_bond_masks(d, bound)]


def odd_dijoin(d: Digraph, bound: int = DEFAULT_VERTEX_BOUND) -> Optional[frozenset]:
    """An edge set meeting every directed bond oddly, or ``None``."""
    bonds = directed_bond_masks(d, bound)
    x = gf2_solve_bits(bonds, [1] * len(bonds))
    if x is None:
        return None
    ids = d.edge_ids
    return frozenset(ids[j] for j in range(len(ids)) if x >> j & 1)


def is_odd_dijoin(d: Digraph, j: Iterable, bound: int = DEFAULT_VERTEX_BOUND) -> bool:
    j = set(j)
    return all(len(j & b) % 2 == 1 for b in directed_bonds(d, bound))


# ---------------------------------------------------------------------------
# cut minors


@dataclass(frozen=True)
class ContractEdges:
    edges: frozenset


@dataclass(frozen=True)
class DeleteDeletable:
    edge: Hashable


@dataclass(frozen=True)
class DropIsolated:
    vertex: Hashable


CutMinorStep = Union[ContractEdges, DeleteDeletable, DropIsolated]


class NotDeletable(ValueError):
    pass


def has_path(d: Digraph, source, target, avoid: Hashable = None) -> bool:
    """Directed path from ``source`` to ``target`` not using edge ``avoid``."""
    out: dict = {v: [] for v in d.vertices}
    for e in d.edges:
        if e.id != avoid:
            out[e.tail].append(e.head)
    seen = {source}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        if v == target:
            return True
        for w in out[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return False


def is_deletable(d: Digraph, eid) -> bool:
    e = d.edge(eid)
    return not e.is_loop and has_path(d, e.tail, e.head, avoid=eid)


def contract_edges(d: Digraph, a: Iterable) -> tuple[Digraph, dict]:
    """Delete ``a`` and identify each weak component of ``d[a]`` into one vertex.

    The merged vertex keeps the label of the component's first vertex (in
    vertex order).  Loops created by the identification are dropped.
    Returns the digraph and the vertex map old -> new.
    """
    a = set(a)
    parent = {v: v for v in d.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    order = {v: i for i, v in enumerate(d.vertices)}
    for e in d.edges:
        if e.id in a:
            ru, rv = find(e.tail), find(e.head)
            if ru != rv:
                if order[ru] < order[rv]:
                    parent[rv] = ru
                else:
                    parent[ru] = rv
    vmap = {v: find(v) for v in d.vertices}
    vertices = tuple(v for v in d.vertices if vmap[v] == v)
    edges = []
    for e in d.edges:
        if e.id in a:
            continue
        t, h = vmap[e.tail], vmap[e.head]
        if t == h:
            continue
        edges.append(Edge(t, h, e.id))
    return Digraph(vertices, tuple(edges)), vmap


def apply_cut_minor(d: Digraph, steps: Sequence[CutMinorStep]) -> tuple[Digraph, dict, dict]:
    """Apply steps in order; returns the digraph, vertex map and edge map."""
    vmap = {v: v for v in d.vertices}
    emap = {e.id: e.id for e in d.edges}
    for step in steps:
        if isinstance(step, ContractEdges):
            d, m = contract_edges(d, step.edges)
            vmap = {v: m[w] for v, w in vmap.items() if w in m}
            kept = set(d.edge_ids)
            emap = {e: f for e, f in emap.items() if f in kept}
        elif isinstance(step, DeleteDeletable):
            if not is_deletable(d, step.edge):
                raise NotDeletable(f"edge {step.edge!r} is not deletable")
            d = Digraph(d.vertices, tuple(e for e in d.edges if e.id != step.edge))
            emap = {e: f for e, f in emap.items() if f != step.edge}
        elif isinstance(step, DropIsolated):
            if any(step.vertex in (e.tail, e.head) for e in d.edges):
                raise ValueError(f"vertex {step.vertex!r} is not isolated")
            if step.vertex not in d.vertices:
                raise KeyError(step.vertex)
            d = Digraph(tuple(v for v in d.vertices if v != step.vertex), d.edges)
            vmap = {v: w for v, w in vmap.items() if w != step.vertex}
        else:
            raise TypeError(f"unknown cut-minor step {step!r}")
    return d, vmap, emap


def one_step_cut_minors(d: Digraph) -> list[tuple[CutMinorStep, Digraph]]:
    out = []
    for e in d.edges:
        out.append((ContractEdges(frozenset([e.id])), contract_edges(d, [e.id])[0]))
    for e in d.edges:
        if is_deletable(d, e.id):
            out.append((DeleteDeletable(e.id), apply_cut_minor(d, [DeleteDeletable(e.id)])[0]))
    used = {v for e in d.edges for v in (e.tail, e.head)}
    for v in d.vertices:
        if v not in used:
            out.append((DropIsolated(v), apply_cut_minor(d, [DropIsolated(v)])[0]))
    return out


def is_minimal_obstruction(d: Digraph, bound: int = MINIMAL_OBSTRUCTION_EDGE_BOUND) -> bool:
    """No odd dijoin, while every one-step cut minor has one."""
    if len(d.edges) > bound:
        raise DigraphBoundExceeded(f"{len(d.edges)} edges exceeds the bound {bound}")
    if odd_dijoin(d) is not None:
        return False
    return all(odd_dijoin(minor) is not None for _, minor in one_step_cut_minors(d))


# ---------------------------------------------------------------------------
# T-joins


def _shortest_path_edges(adj, s, t) -> list:
    prev = {s: None}
    queue = deque([s])
    while queue:
        v = queue.popleft()
        if v == t:
            break
        for w, eid in adj[v]:
            if w not in prev:
                prev[w] = (v, eid)
                queue.append(w)
    path = []
    v = t
    while prev[v] is not None:
        u, eid = prev[v]
        path.append(eid)
        v = u
    return path


def t_join(g: Digraph, t: Iterable) -> Optional[frozenset]:
    """Edge set with odd degree exactly on ``t`` in the underlying multigraph.

    Within each component the ``t`` vertices are paired in vertex order and
    joined by BFS shortest paths (neighbours scanned in edge order); the
    symmetric difference of the paths is returned.
    """
    t = set(t)
    order = {v: i for i, v in enumerate(g.vertices)}
    adj: dict = {v: [] for v in g.vertices}
    for e in g.edges:
        if e.is_loop:
            continue
        adj[e.tail].append((e.head, e.id))
        adj[e.head].append((e.tail, e.id))
    seen = set()
    result: set = set()
    for v in g.vertices:
        if v in seen:
            continue
        comp = []
        queue = deque([v])
        seen.add(v)
        while queue:
            u = queue.popleft()
            comp.append(u)
            for w, _ in adj[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        terms = sorted((u for u in comp if u in t), key=order.__getitem__)
        if len(terms) % 2:
            return None
        for s, r in zip(terms[::2], terms[1::2]):
            result ^= set(_shortest_path_edges(adj, s, r))
    return frozenset(result)


def degrees_in(g: Digraph, edge_set: Iterable) -> dict:
    chosen = set(edge_set)
    deg = {v: 0 for v in g.vertices}
    for e in g.edges:
        if e.id in chosen and not e.is_loop:
            deg[e.tail] += 1
            deg[e.head] += 1
    return deg


# ---------------------------------------------------------------------------
# families


def layer_vertex(layer: int, i: int) -> str:
    return f"{'abc'[layer]}{i + 1}"


def build_D(n0: int, n1: int, n2: int) -> Digraph:
    """Three layers; every edge goes from layer 0 to 1 or from layer 1 to 2."""
    if min(n0, n1, n2) < 0:
        raise ValueError("layer sizes must be nonnegative")
    layers = [[layer_vertex(k, i) for i in range(n)] for k, n in enumerate((n0, n1, n2))]
    edges = [(u, v, f"{u}{v}") for u in layers[0] for v in layers[1]]
    edges += [(u, v, f"{u}{v}") for u in layers[1] for v in layers[2]]
    return Digraph.from_edges(edges, [v for layer in layers for v in layer])


def build_one_direction(m: int, n: int) -> Digraph:
    return build_D(m, n, 0)


def build_bicycle(k: int) -> Digraph:
    if k < 3:
        raise ValueError("a bicycle needs k >= 3")
    vs = [f"v{i}" for i in range(k)]
    edges = []
    for i in range(k):
        u, w = vs[i], vs[(i + 1) % k]
        edges.append((u, w, f"{u}{w}"))
        edges.append((w, u, f"{w}{u}"))
    return Digraph.from_edges(edges, vs)


def two_layer_has_odd_dijoin(a: int, b: int) -> bool:
    """Closed form for the complete two-layer digraph with layers ``a``, ``b``."""
    if a == 0 or b == 0:
        return True
    return min(a, b) <= 1 or a % 2 == b % 2


def d_family_clause(n1: int, n2: int, n3: int) -> str:
    """Which closed-form case decides D(n1, n2, n3)."""
    if min(n1, n2, n3) < 0:
        raise ValueError("layer sizes must be nonnegative")
    if n2 == 0 or (n1 == 0 and n3 == 0):
        return "edgeless"
    if n1 == 0 or n3 == 0:
        return "two-layer"
    if n2 == 1:
        return "i"
    if n2 == 2:
        return "ii"
    return "iii"


def d_family_has_odd_dijoin(n1: int, n2: int, n3: int) -> bool:
    clause = d_family_clause(n1, n2, n3)
    if clause == "edgeless":
        return True
    if clause == "two-layer":
        return two_layer_has_odd_dijoin(n2, n1 or n3)
    if clause == "i":
        return True
    if clause == "ii":
        return n1 % 2 == n3 % 2
    return n1 % 2 == 1 and n3 % 2 == 1


def d_family_odd_dijoin_construct(n1: int, n2: int, n3: int) -> tuple[Optional[frozenset], str]:
    """An odd dijoin of D(n1, n2, n3) and the method that produced it."""
    d = build_D(n1, n2, n3)
    clause = d_family_clause(n1, n2, n3)
    if clause == "edgeless":
        return frozenset(), "closed-form"
    if clause == "i":
        return frozenset(d.edge_ids), "closed-form"
    if clause == "two-layer":
        a, b = (n1, n2) if n3 == 0 else (n2, n3)
        if min(a, b) <= 1:
            return frozenset(d.edge_ids), "closed-form"
        if a % 2 != b % 2:
            return None, "closed-form"
        return t_join(d, d.vertices), "t-join"
    if clause == "ii":
        return odd_dijoin(d), "brute-force"
    if n1 % 2 == 1 and n3 % 2 == 1:
        t = [v for v in d.vertices if v[0] in "ac"]
        return t_join(d, t), "t-join"
    return None, "closed-form"
