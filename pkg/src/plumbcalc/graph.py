"""Decorated plumbing trees: data model, file format, blow-up calculus.

A plumbing graph here is a finite forest whose vertices carry an exact
rational Euler decoration ``e_v``.  Canonical (user-level) graphs are
connected trees with integer decorations; rational decorations only occur
in transient surgery intermediates before a slope is expanded into a
string.  Genus decorations are implicitly zero throughout, so the plumbed
3-manifold is a rational homology sphere whenever the form is negative
definite.

Graphs are immutable values: every operation returns a new graph, and ids
of surviving vertices are preserved verbatim so that certificates can
refer to them across operations.  Fresh vertices (blow-ups, strings) get
generated ids that avoid collisions deterministically.

File format (UTF-8, line oriented)::

    # comment to end of line
    vertex <id> <weight>     # weight: decimal integer or p/q fraction
    edge <id> <id>

Ids match ``[A-Za-z0-9_]+``.  Serialization emits vertices sorted by id,
then edges sorted lexicographically.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import GraphStructureError, ParseError

VertexId = str

_ID_RE = re.compile(r"^[A-Za-z0-9_]+$")
_WEIGHT_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def _normalize_edge(a: VertexId, b: VertexId) -> tuple[VertexId, VertexId]:
    return (a, b) if a < b else (b, a)


class PlumbingGraph:
    """Immutable decorated forest.

    ``weights`` maps vertex id to its exact rational decoration; ``edges``
    is any iterable of id pairs.  Construction validates the forest
    invariants: no self-loops, no multi-edges, no cycles.
    """

    __slots__ = ("_weights", "_edges", "_adj", "_vertices", "_hash")

    def __init__(
        self,
        weights: Mapping[VertexId, Fraction | int | str],
        edges: Iterable[tuple[VertexId, VertexId]] = (),
    ):
        ws: dict[VertexId, Fraction] = {}
        for v, w in weights.items():
            if not isinstance(v, str) or not _ID_RE.match(v):
                raise GraphStructureError(f"invalid vertex id {v!r}")
            ws[v] = Fraction(w)
        adj: dict[VertexId, list[VertexId]] = {v: [] for v in ws}
        parent = {v: v for v in ws}  # union-find for cycle detection

        def find(x: VertexId) -> VertexId:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        eset: set[tuple[VertexId, VertexId]] = set()
        for a, b in edges:
            if a == b:
                raise GraphStructureError(f"loop at vertex {a!r}")
            if a not in ws or b not in ws:
                missing = a if a not in ws else b
                raise GraphStructureError(f"edge to undeclared vertex {missing!r}")
            e = _normalize_edge(a, b)
            if e in eset:
                raise GraphStructureError(f"multi-edge between {a!r} and {b!r}")
            ra, rb = find(a), find(b)
            if ra == rb:
                raise GraphStructureError(f"cycle detected through edge {a!r}-{b!r}")
            parent[ra] = rb
            eset.add(e)
            adj[a].append(b)
            adj[b].append(a)
        self._weights = ws
        self._edges = frozenset(eset)
        self._adj = {v: tuple(sorted(ns)) for v, ns in adj.items()}
        self._vertices = tuple(sorted(ws))
        self._hash: int | None = None

    # -- basic accessors ---------------------------------------------------

    @property
    def vertices(self) -> tuple[VertexId, ...]:
        return self._vertices

    @property
    def edges(self) -> tuple[tuple[VertexId, VertexId], ...]:
        return tuple(sorted(self._edges))

    def weight(self, v: VertexId) -> Fraction:
        try:
            return self._weights[v]
        except KeyError:
            raise GraphStructureError(f"unknown vertex {v!r}") from None

    def weights(self) -> dict[VertexId, Fraction]:
        return dict(self._weights)

    def neighbors(self, v: VertexId) -> tuple[VertexId, ...]:
        try:
            return self._adj[v]
        except KeyError:
            raise GraphStructureError(f"unknown vertex {v!r}") from None

    def degree(self, v: VertexId) -> int:
        return len(self.neighbors(v))

    def has_vertex(self, v: VertexId) -> bool:
        return v in self._weights

    def has_edge(self, a: VertexId, b: VertexId) -> bool:
        return _normalize_edge(a, b) in self._edges

    def __len__(self) -> int:
        return len(self._weights)

    def __iter__(self) -> Iterator[VertexId]:
        return iter(self._vertices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PlumbingGraph):
            return NotImplemented
        return self._weights == other._weights and self._edges == other._edges

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((tuple(sorted(self._weights.items())), self._edges))
        return self._hash

    def __repr__(self) -> str:
        return f"PlumbingGraph({len(self)} vertices, {len(self._edges)} edges)"

    # -- derived structure -------------------------------------------------

    def is_connected(self) -> bool:
        return len(self.component_vertex_sets()) <= 1

    def has_integer_weights(self) -> bool:
        return all(w.denominator == 1 for w in self._weights.values())

    def component_vertex_sets(self) -> list[frozenset[VertexId]]:
        """Connected components as vertex sets, sorted by least member."""
        seen: set[VertexId] = set()
        comps: list[frozenset[VertexId]] = []
        for start in self._vertices:
            if start in seen:
                continue
            stack, comp = [start], {start}
            seen.add(start)
            while stack:
                u = stack.pop()
                for w in self._adj[u]:
                    if w not in comp:
                        comp.add(w)
                        seen.add(w)
                        stack.append(w)
            comps.append(frozenset(comp))
        return sorted(comps, key=min)


# ---------------------------------------------------------------------------
# Parsing and serialization
# ---------------------------------------------------------------------------


def parse_graph(text: str) -> PlumbingGraph:
    """Parse the line-oriented graph format; all errors carry line numbers."""
    weights: dict[VertexId, Fraction] = {}
    edges: list[tuple[VertexId, VertexId]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vertex":
            if len(parts) != 3:
                raise ParseError("expected 'vertex <id> <weight>'", lineno)
            _, vid, wtext = parts
            if not _ID_RE.match(vid):
                raise ParseError(f"invalid vertex id {vid!r}", lineno)
            if vid in weights:
                raise ParseError(f"duplicate vertex {vid!r}", lineno)
            if not _WEIGHT_RE.match(wtext):
                raise ParseError(f"invalid weight {wtext!r}", lineno)
            weights[vid] = Fraction(wtext)
        elif parts[0] == "edge":
            if len(parts) != 3:
                raise ParseError("expected 'edge <id> <id>'", lineno)
            _, a, b = parts
            if a == b:
                raise ParseError(f"loop at vertex {a!r}", lineno)
            for vid in (a, b):
                if vid not in weights:
                    raise ParseError(f"edge to undeclared vertex {vid!r}", lineno)
            if _normalize_edge(a, b) in {_normalize_edge(x, y) for x, y in edges}:
                raise ParseError(f"multi-edge between {a!r} and {b!r}", lineno)
            edges.append((a, b))
        else:
            raise ParseError(f"unknown directive {parts[0]!r}", lineno)
    try:
        return PlumbingGraph(weights, edges)
    except GraphStructureError as exc:
        raise ParseError(str(exc)) from exc


def serialize_graph(g: PlumbingGraph) -> str:
    """Canonical text form: vertices sorted by id, then sorted edges."""
    lines = [f"vertex {v} {g.weight(v)}" for v in g.vertices]
    lines.extend(f"edge {a} {b}" for a, b in g.edges)
    return "\n".join(lines) + "\n"


def fresh_ids(g: PlumbingGraph, prefix: str, count: int) -> list[VertexId]:
    """Deterministic unused ids ``<prefix>1, <prefix>2, ...`` skipping collisions."""
    out: list[VertexId] = []
    i = 1
    while len(out) < count:
        cand = f"{prefix}{i}"
        if not g.has_vertex(cand) and cand not in out:
            out.append(cand)
        i += 1
    return out


# ---------------------------------------------------------------------------
# Elementary operations
# ---------------------------------------------------------------------------


def valency(g: PlumbingGraph, v: VertexId) -> int:
    """Edge count at ``v``; a vertex with valency >= 3 is a node."""
    return g.degree(v)


def nodes(g: PlumbingGraph) -> tuple[VertexId, ...]:
    """Vertices of valency >= 3, sorted."""
    return tuple(v for v in g.vertices if g.degree(v) >= 3)


def with_weight(g: PlumbingGraph, v: VertexId, w: Fraction | int) -> PlumbingGraph:
    """Copy of ``g`` with the decoration of ``v`` replaced."""
    ws = g.weights()
    if v not in ws:
        raise GraphStructureError(f"unknown vertex {v!r}")
    ws[v] = Fraction(w)
    return PlumbingGraph(ws, g.edges)


def blow_up_edge(g: PlumbingGraph, e: tuple[VertexId, VertexId]) -> PlumbingGraph:
    """Subdivide edge ``e`` by a fresh (-1)-vertex, dropping both endpoint
    weights by 1.  Preserves det and the definiteness verdict."""
    v, w = e
    if not g.has_edge(v, w):
        raise GraphStructureError(f"edge {v!r}-{w!r} not in graph")
    (u,) = fresh_ids(g, "b", 1)
    ws = g.weights()
    ws[v] -= 1
    ws[w] -= 1
    ws[u] = Fraction(-1)
    edges = [ed for ed in g.edges if ed != _normalize_edge(v, w)]
    edges.extend([(v, u), (u, w)])
    return PlumbingGraph(ws, edges)


def blow_down(g: PlumbingGraph, v: VertexId) -> PlumbingGraph:
    """Remove a (-1)-vertex of valency <= 2 (inverse of a blow-up).

    Valency 2: the two neighbors become adjacent; valency <= 1: nothing is
    reconnected.  Every former neighbor's weight increases by 1.
    """
    if g.weight(v) != -1:
        raise GraphStructureError(f"blow_down: weight of {v!r} is {g.weight(v)}, not -1")
    nbrs = g.neighbors(v)
    if len(nbrs) > 2:
        raise GraphStructureError(f"blow_down: valency of {v!r} is {len(nbrs)} > 2")
    ws = g.weights()
    del ws[v]
    for n in nbrs:
        ws[n] += 1
    edges = [e for e in g.edges if v not in e]
    if len(nbrs) == 2:
        edges.append((nbrs[0], nbrs[1]))
    return PlumbingGraph(ws, edges)


def minimize(g: PlumbingGraph) -> PlumbingGraph:
    """Blow down until no (-1)-vertex of valency <= 2 remains.

    The last remaining vertex is never deleted, so the single (-1) vertex
    is the canonical representative of S^3 rather than an empty graph.
    The result is independent of blow-down order (property-tested).
    """
    if not g.is_connected():
        raise GraphStructureError("minimize requires a connected graph")
    while len(g) > 1:
        cand = next(
            (v for v in g.vertices if g.weight(v) == -1 and g.degree(v) <= 2),
            None,
        )
        if cand is None:
            break
        g = blow_down(g, cand)
    return g


def is_minimal(g: PlumbingGraph) -> bool:
    """True when ``minimize`` would leave ``g`` unchanged."""
    if len(g) == 1:
        return True
    return not any(g.weight(v) == -1 and g.degree(v) <= 2 for v in g.vertices)


def delete(
    g: PlumbingGraph,
    vertices: Iterable[VertexId] = (),
    edges: Iterable[tuple[VertexId, VertexId]] = (),
) -> PlumbingGraph:
    """Drop the given vertices (with incident edges) and/or edges."""
    vs = set(vertices)
    for v in vs:
        if not g.has_vertex(v):
            raise GraphStructureError(f"unknown vertex {v!r}")
    es = set()
    for a, b in edges:
        if not g.has_edge(a, b):
            raise GraphStructureError(f"edge {a!r}-{b!r} not in graph")
        es.add(_normalize_edge(a, b))
    ws = {v: w for v, w in g.weights().items() if v not in vs}
    kept = [
        e for e in g.edges if e not in es and e[0] not in vs and e[1] not in vs
    ]
    return PlumbingGraph(ws, kept)


def subgraph(g: PlumbingGraph, vertices: Iterable[VertexId]) -> PlumbingGraph:
    """Induced subgraph on the given vertex set."""
    keep = set(vertices)
    for v in keep:
        if not g.has_vertex(v):
            raise GraphStructureError(f"unknown vertex {v!r}")
    ws = {v: g.weight(v) for v in keep}
    es = [e for e in g.edges if e[0] in keep and e[1] in keep]
    return PlumbingGraph(ws, es)


def components(g: PlumbingGraph) -> list[PlumbingGraph]:
    """Connected components, sorted by least vertex id."""
    return [subgraph(g, comp) for comp in g.component_vertex_sets()]


def component_of(g: PlumbingGraph, v: VertexId) -> PlumbingGraph:
    """The connected component containing ``v``."""
    for comp in g.component_vertex_sets():
        if v in comp:
            return subgraph(g, comp)
    raise GraphStructureError(f"unknown vertex {v!r}")


# ---------------------------------------------------------------------------
# Canonical form and isomorphism
# ---------------------------------------------------------------------------

Code = tuple  # nested (weight, (child codes...)) tuples


def _rooted_code(g: PlumbingGraph, root: VertexId, parent: VertexId | None) -> Code:
    kids = tuple(
        sorted(_rooted_code(g, c, root) for c in g.neighbors(root) if c != parent)
    )
    return (g.weight(root), kids)


def tree_centroids(g: PlumbingGraph) -> tuple[VertexId, ...]:
    """The 1 or 2 centroid vertices of a connected tree (max component of
    ``g - v`` minimized; ties give the two endpoints of the central edge)."""
    if len(g) == 0:
        raise GraphStructureError("empty graph has no centroid")
    n = len(g)
    # subtree sizes via one rooted pass, then max-component sizes
    root = g.vertices[0]
    order: list[tuple[VertexId, VertexId | None]] = []
    stack: list[tuple[VertexId, VertexId | None]] = [(root, None)]
    while stack:
        v, p = stack.pop()
        order.append((v, p))
        for c in g.neighbors(v):
            if c != p:
                stack.append((c, v))
    size = {v: 1 for v in g.vertices}
    for v, p in reversed(order):
        if p is not None:
            size[p] += size[v]
    best: list[VertexId] = []
    best_val = n + 1
    for v, p in order:
        heaviest = n - size[v]
        for c in g.neighbors(v):
            if c != p:
                heaviest = max(heaviest, size[c])
        if heaviest < best_val:
            best_val = heaviest
            best = [v]
        elif heaviest == best_val:
            best.append(v)
    return tuple(sorted(best))


def canonical_code(g: PlumbingGraph) -> Code:
    """Isomorphism-invariant code: per component, the minimum rooted code
    over its centroid(s); components sorted.  Equal codes iff isomorphic."""
    comp_codes = []
    for comp in g.component_vertex_sets():
        sub = subgraph(g, comp)
        code = min(_rooted_code(sub, c, None) for c in tree_centroids(sub))
        comp_codes.append(code)
    return tuple(sorted(comp_codes))


def _witness(
    g1: PlumbingGraph,
    r1: VertexId,
    p1: VertexId | None,
    g2: PlumbingGraph,
    r2: VertexId,
    p2: VertexId | None,
    out: dict[VertexId, VertexId],
) -> None:
    out[r1] = r2
    kids1 = sorted(
        ((_rooted_code(g1, c, r1), c) for c in g1.neighbors(r1) if c != p1)
    )
    kids2 = sorted(
        ((_rooted_code(g2, c, r2), c) for c in g2.neighbors(r2) if c != p2)
    )
    for (_, c1), (_, c2) in zip(kids1, kids2):
        _witness(g1, c1, r1, g2, c2, r2, out)


def is_isomorphic(
    g1: PlumbingGraph, g2: PlumbingGraph
) -> tuple[bool, dict[VertexId, VertexId] | None]:
    """Decorated-forest isomorphism plus a witness vertex map when true."""
    if len(g1) != len(g2):
        return False, None
    comps1 = g1.component_vertex_sets()
    comps2 = g2.component_vertex_sets()
    if len(comps1) != len(comps2):
        return False, None

    def keyed(g: PlumbingGraph, comps: Sequence[frozenset[VertexId]]):
        out = []
        for comp in comps:
            sub = subgraph(g, comp)
            cents = tree_centroids(sub)
            code, root = min((_rooted_code(sub, c, None), c) for c in cents)
            out.append((code, sub, root))
        out.sort(key=lambda t: t[0])
        return out

    k1, k2 = keyed(g1, comps1), keyed(g2, comps2)
    mapping: dict[VertexId, VertexId] = {}
    for (c1, s1, r1), (c2, s2, r2) in zip(k1, k2):
        if c1 != c2:
            return False, None
        _witness(s1, r1, None, s2, r2, None, mapping)
    return True, mapping
