"""Slopes, edge cutting, and machine-checkable decomposition certificates.

A rational slope ``r < 0`` attached at a vertex is realized combinatorially
by a string of vertices decorated with the terms of the negative continued
fraction

    r = [e_1, ..., e_s] = e_1 - 1/(e_2 - 1/(...)),   e_1 <= -1, e_i <= -2.

Cutting a tree along an edge e = (v, w) and filling both sides with the
dual slopes r and 1/r (r = -det(G_w - w)/det(G_w)) produces

    * G_w(r): determinant 0, negative semidefinite (first Betti number one
      on the manifold side), and
    * G_v(1/r): negative definite with det = det(G)/det(G_w - w) in the
      slope-decorated form (the string expansion realizes the reduced
      fraction, dividing by gcd(det(G_w), det(G_w - w)) instead),

which is the inductive engine behind the orderability / foliation
certificates built here.  ``lo_certificate`` constructs the recursive
witness for a non-rational graph, reducing the node count at every step
until a graph with at most one bad vertex remains; det-0 sides are
decomposed further into Seifert (star-shaped) leaves.  ``check_certificate``
re-verifies every claim from scratch with lattice/Laufer primitives only;
it trusts nothing the builder wrote.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable

from .errors import GraphStructureError, InternalCheckError, PlumbingError
from .graph import (
    PlumbingGraph,
    VertexId,
    blow_up_edge,
    component_of,
    delete,
    fresh_ids,
    is_minimal,
    minimize,
    nodes,
    parse_graph,
    serialize_graph,
    subgraph,
)
from .lattice import definiteness, determinant, is_negative_definite
from .laufer import is_bad_set, is_rational, min_bad, stabilize

# ---------------------------------------------------------------------------
# Negative continued fractions and strings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ContinuedFraction:
    value: Fraction
    terms: tuple[int, ...]


def cf_eval(terms: Iterable[int]) -> Fraction:
    """Evaluate [e_1, ..., e_s] = e_1 - 1/(e_2 - ...) exactly."""
    terms = list(terms)
    if not terms:
        raise GraphStructureError("empty continued fraction")
    val = Fraction(terms[-1])
    for t in reversed(terms[:-1]):
        val = t - 1 / val
    return val


def negative_cf(r: Fraction | int) -> ContinuedFraction:
    """Negative (Hirzebruch-Jung style) continued fraction of ``r < 0``.

    Integers expand to a single term; otherwise take e_1 = floor(r) and
    recurse on -1/(r - floor(r)), which keeps every later term <= -2.
    The expansion is re-evaluated exactly before returning.
    """
    r = Fraction(r)
    if r >= 0:
        raise GraphStructureError(f"slope must be negative, got {r}")
    terms: list[int] = []
    x = r
    while True:
        f = x.numerator // x.denominator  # floor
        terms.append(f)
        frac = x - f
        if frac == 0:
            break
        x = -1 / frac
    if terms[0] > -1 or any(t > -2 for t in terms[1:]):
        raise InternalCheckError(f"continued fraction terms out of range: {terms}")
    if cf_eval(terms) != r:
        raise InternalCheckError(f"continued fraction of {r} failed round-trip")
    return ContinuedFraction(r, tuple(terms))


def attach_string(
    g: PlumbingGraph, at: VertexId, r: Fraction | int
) -> PlumbingGraph:
    """Attach the string expansion of slope ``r`` by one edge at ``at``;
    the first term of the continued fraction sits next to ``at``."""
    if not g.has_vertex(at):
        raise GraphStructureError(f"unknown vertex {at!r}")
    cf = negative_cf(r)
    ids = fresh_ids(g, "q", len(cf.terms))
    ws = g.weights()
    edges = list(g.edges)
    prev = at
    for vid, term in zip(ids, cf.terms):
        ws[vid] = Fraction(term)
        edges.append((prev, vid))
        prev = vid
    return PlumbingGraph(ws, edges)


# ---------------------------------------------------------------------------
# Cutting an edge and filling both sides
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CutResult:
    side_v: PlumbingGraph
    side_w: PlumbingGraph
    edge: tuple[VertexId, VertexId]
    r: Fraction
    filled_v: PlumbingGraph
    filled_w: PlumbingGraph
    decorated_v: PlumbingGraph
    decorated_w: PlumbingGraph


def attach_slope_vertex(
    g: PlumbingGraph, at: VertexId, r: Fraction
) -> PlumbingGraph:
    """Attach a single transient vertex decorated by the rational slope
    ``r`` (the pre-expansion form of ``attach_string``)."""
    if not g.has_vertex(at):
        raise GraphStructureError(f"unknown vertex {at!r}")
    (u,) = fresh_ids(g, "q", 1)
    ws = g.weights()
    ws[u] = Fraction(r)
    return PlumbingGraph(ws, list(g.edges) + [(at, u)])


def cut_and_fill(g: PlumbingGraph, e: tuple[VertexId, VertexId]) -> CutResult:
    """Cut ``g`` along e = (v, w) and fill with the dual slopes.

    The w-side gets r = -det(G_w - w)/det(G_w) (determinant drops to 0),
    the v-side gets 1/r (stays negative definite).  The determinant
    identity det(G_v(1/r)) = det(G)/det(G_w - w) holds exactly for the
    slope-decorated graph (one rational vertex); after string expansion
    the determinant is det(G)/gcd(det(G_w), det(G_w - w)) because the
    string realizes the reduced fraction.  Both forms are kept and every
    identity is verified exactly before returning; a failure is an
    implementation bug, never bad input.
    """
    v, w = e
    if not g.has_edge(v, w):
        raise GraphStructureError(f"edge {v!r}-{w!r} not in graph")
    if not g.is_connected():
        raise GraphStructureError("cut_and_fill requires a connected graph")
    if not is_negative_definite(g):
        raise GraphStructureError("cut_and_fill requires a negative definite graph")
    split = delete(g, edges=[e])
    side_v = component_of(split, v)
    side_w = component_of(split, w)
    det_g = determinant(g)
    det_w = determinant(side_w)
    det_w_minus = determinant(delete(side_w, vertices=[w]))
    if det_w <= 0 or det_w_minus <= 0:
        raise InternalCheckError("side determinants of a definite graph must be > 0")
    r = -det_w_minus / det_w
    decorated_w = attach_slope_vertex(side_w, w, r)
    decorated_v = attach_slope_vertex(side_v, v, 1 / r)
    filled_w = attach_string(side_w, w, r)
    filled_v = attach_string(side_v, v, 1 / r)
    checks = [
        ("det of the r-filled side is not 0", determinant(filled_w) == 0),
        ("det of the slope-decorated w-side is not 0", determinant(decorated_w) == 0),
        (
            "r-filled side is not negative semidefinite",
            definiteness(filled_w).is_negative_semidefinite,
        ),
        (
            "1/r-filled side is not negative definite",
            is_negative_definite(filled_v),
        ),
        (
            "slope-decorated v-side is not negative definite",
            is_negative_definite(decorated_v),
        ),
        (
            "det identity for the slope-decorated v-side failed",
            determinant(decorated_v) * det_w_minus == det_g,
        ),
    ]
    if g.has_integer_weights():
        reduction = gcd(int(det_w), int(det_w_minus))
        checks.append(
            (
                "det identity for the string-expanded v-side failed",
                determinant(filled_v) * reduction == det_g,
            )
        )
    for message, ok in checks:
        if not ok:
            raise InternalCheckError(message)
    return CutResult(
        side_v, side_w, (v, w), r, filled_v, filled_w, decorated_v, decorated_w
    )


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------

TAG_BASE_M1 = "BaseM1"
TAG_CASE1 = "Case1"
TAG_CASE2 = "Case2"
TAG_SEMIDEF_CUT = "SemidefCut"
TAG_SEMIDEF_LEAF = "SemidefLeaf"


@dataclass(frozen=True)
class Claim:
    kind: str
    expected: object
    got: object


@dataclass(frozen=True)
class JumpInfo:
    """Witness of the jump localization used to pick the cut edge: after
    stabilizing the cut vertex, the canonical Laufer run jumps at the
    recorded step inside the recorded component of g - v."""

    stabilized_weight: Fraction
    step: int
    vertex: VertexId
    value: int
    component: tuple[VertexId, ...]


@dataclass(frozen=True)
class CertificateNode:
    graph: PlumbingGraph
    tag: str
    claims: tuple[Claim, ...]
    children: tuple["CertificateNode", ...] = ()
    edge: tuple[VertexId, VertexId] | None = None
    r: Fraction | None = None
    jump: JumpInfo | None = None
    seifert: object | None = None  # SeifertData when the leaf is a true star


@dataclass
class CheckResult:
    ok: bool
    path: str | None = None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def _record(claims: list[Claim], kind: str, expected, got) -> None:
    claims.append(Claim(kind, expected, got))
    if expected != got:
        raise InternalCheckError(f"builder claim {kind!r} failed: {expected} vs {got}")


def _node_count(g: PlumbingGraph) -> int:
    return len(nodes(g))


def _common_claims(g: PlumbingGraph, claims: list[Claim]) -> None:
    _record(claims, "connected", True, g.is_connected())
    _record(claims, "det", determinant(g), determinant(g))


def _select_case1(g: PlumbingGraph, forced: VertexId | None = None):
    """Lexicographically least valid (v, w): removing v leaves >= 2
    node-containing components, the stabilized run jumps in a component
    different from the one holding w, and w's component has a node."""
    gnodes = set(nodes(g))
    candidates = (forced,) if forced is not None else g.vertices
    for v in candidates:
        split = delete(g, vertices=[v])
        comps = split.component_vertex_sets()
        if sum(1 for c in comps if c & gnodes) < 2:
            continue
        gdown = stabilize(g, [v])
        verdict = is_rational(gdown)
        if verdict.rational:
            raise InternalCheckError(
                f"stabilizing {v!r} made the graph rational although m >= 2"
            )
        jump = verdict.jump
        comp_i = next(c for c in comps if jump.vertex in c)
        for w in g.neighbors(v):
            cw = next(c for c in comps if w in c)
            if cw == comp_i or not (cw & gnodes):
                continue
            info = JumpInfo(
                gdown.weight(v), jump.step, jump.vertex, jump.value,
                tuple(sorted(comp_i)),
            )
            return v, w, gdown, info
    return None


def lo_certificate(g: PlumbingGraph) -> CertificateNode:
    """Recursive witness that a non-rational graph stays non-rational under
    the node-reducing cut-and-fill induction, bottoming out in graphs with
    at most one bad vertex (plus det-0 Seifert decompositions on the side).

    Requires a connected, negative definite, minimal, non-rational graph.
    """
    if not g.is_connected():
        raise GraphStructureError("certificate requires a connected graph")
    if not g.has_integer_weights():
        raise GraphStructureError("certificate requires integer weights")
    if not is_negative_definite(g):
        raise GraphStructureError("certificate requires a negative definite graph")
    if not is_minimal(g):
        raise GraphStructureError("minimize the graph before certifying")
    if is_rational(g).rational:
        raise GraphStructureError("graph is rational; nothing to certify")
    return _certify(g)


def _base_leaf(g: PlumbingGraph) -> CertificateNode:
    claims: list[Claim] = []
    _common_claims(g, claims)
    _record(claims, "negative_definite", True, is_negative_definite(g))
    _record(claims, "not_rational", True, not is_rational(g).rational)
    m, _ = min_bad(g)
    _record(claims, "m_le_1", True, m <= 1)
    return CertificateNode(g, TAG_BASE_M1, tuple(claims))


def _certify(g: PlumbingGraph, forced: VertexId | None = None) -> CertificateNode:
    if forced is None:
        m, _ = min_bad(g)
        if m <= 1:
            return _base_leaf(g)
    else:
        if is_bad_set(g, {forced}):
            return _base_leaf(g)
    sel = _select_case1(g, forced)
    if sel is not None:
        return _case1_node(g, sel)
    if forced is not None:
        raise InternalCheckError("forced blow-up vertex admitted no valid cut")
    return _case2_node(g)


def _case1_node(g: PlumbingGraph, sel) -> CertificateNode:
    v, w, gdown, info = sel
    claims: list[Claim] = []
    _common_claims(g, claims)
    _record(claims, "negative_definite", True, is_negative_definite(g))
    _record(claims, "not_rational", True, not is_rational(g).rational)
    _record(claims, "stabilized_not_rational", True, not is_rational(gdown).rational)
    comp_graph = subgraph(gdown, set(info.component) | {v})
    _record(
        claims, "jump_component_not_rational", True,
        not is_rational(comp_graph).rational,
    )
    cut = cut_and_fill(g, (v, w))
    _record(claims, "r", -determinant(delete(cut.side_w, vertices=[w]))
            / determinant(cut.side_w), cut.r)
    _record(claims, "filled_w_det_zero", True, determinant(cut.filled_w) == 0)
    _record(
        claims, "filled_w_semidefinite", True,
        definiteness(cut.filled_w).is_negative_semidefinite,
    )
    _record(
        claims, "filled_v_negative_definite", True,
        is_negative_definite(cut.filled_v),
    )
    det_w_minus = determinant(delete(cut.side_w, vertices=[w]))
    _record(
        claims, "decorated_v_det",
        determinant(g) / det_w_minus,
        determinant(cut.decorated_v),
    )
    _record(
        claims, "filled_v_det",
        determinant(g) / gcd(int(determinant(cut.side_w)), int(det_w_minus)),
        determinant(cut.filled_v),
    )
    child_graph = minimize(cut.filled_v)
    _record(claims, "child_not_rational", True, not is_rational(child_graph).rational)
    _record(
        claims, "node_count_decreases", True,
        _node_count(child_graph) < _node_count(g),
    )
    children = (_certify(child_graph), semidef_decompose(cut.filled_w))
    return CertificateNode(
        g, TAG_CASE1, tuple(claims), children, edge=(v, w), r=cut.r, jump=info
    )


def _case2_node(g: PlumbingGraph) -> CertificateNode:
    ns = nodes(g)
    if len(ns) != 2 or not g.has_edge(*ns):
        raise InternalCheckError(
            "no cut vertex found but the graph is not two adjacent nodes"
        )
    claims: list[Claim] = []
    _common_claims(g, claims)
    _record(claims, "negative_definite", True, is_negative_definite(g))
    _record(claims, "not_rational", True, not is_rational(g).rational)
    _record(claims, "two_adjacent_nodes", True, True)
    blown = blow_up_edge(g, (ns[0], ns[1]))
    (u,) = set(blown.vertices) - set(g.vertices)
    child = _certify(blown, forced=u)
    _record(claims, "child_not_rational", True, not is_rational(blown).rational)
    return CertificateNode(g, TAG_CASE2, tuple(claims), (child,), edge=(ns[0], ns[1]))


def _try_star_data(g: PlumbingGraph):
    from .seifert import star_to_seifert

    try:
        return star_to_seifert(minimize(g))
    except PlumbingError:
        return None


def semidef_decompose(g0: PlumbingGraph) -> CertificateNode:
    """Decompose a connected det-0 negative-semidefinite graph into
    star-shaped (at most one node) det-0 leaves by cutting along edges
    separating nodes and filling both sides with the dual slopes; both
    fills stay semidefinite with determinant 0."""
    if not g0.is_connected():
        raise GraphStructureError("semidefinite decomposition requires connectivity")
    if determinant(g0) != 0:
        raise GraphStructureError("semidefinite decomposition requires det = 0")
    if not definiteness(g0).is_negative_semidefinite:
        raise GraphStructureError(
            "semidefinite decomposition requires a negative semidefinite graph"
        )
    claims: list[Claim] = []
    _common_claims(g0, claims)
    _record(claims, "det_zero", True, determinant(g0) == 0)
    _record(
        claims, "negative_semidefinite", True,
        definiteness(g0).is_negative_semidefinite,
    )
    gnodes = set(nodes(g0))
    if len(gnodes) <= 1:
        _record(claims, "nodes_le_1", True, len(gnodes) <= 1)
        return CertificateNode(
            g0, TAG_SEMIDEF_LEAF, tuple(claims), seifert=_try_star_data(g0)
        )
    chosen = None
    for e in g0.edges:
        comps = delete(g0, edges=[e]).component_vertex_sets()
        if all(c & gnodes for c in comps):
            chosen = e
            break
    if chosen is None:
        raise InternalCheckError("no edge separates two nodes of a 2-node tree")
    vp, wp = chosen
    split = delete(g0, edges=[chosen])
    side_v = component_of(split, vp)
    side_w = component_of(split, wp)
    det_w = determinant(side_w)
    det_w_minus = determinant(delete(side_w, vertices=[wp]))
    if det_w <= 0 or det_w_minus <= 0:
        raise InternalCheckError("proper subgraph determinants must be positive")
    r2 = -det_w_minus / det_w
    _record(claims, "r", -det_w_minus / det_w, r2)
    filled_w = attach_string(side_w, wp, r2)
    filled_v = attach_string(side_v, vp, 1 / r2)
    for name, filled in (("v", filled_v), ("w", filled_w)):
        _record(claims, f"filled_{name}_det_zero", True, determinant(filled) == 0)
        _record(
            claims, f"filled_{name}_semidefinite", True,
            definiteness(filled).is_negative_semidefinite,
        )
        _record(
            claims, f"filled_{name}_fewer_nodes", True,
            _node_count(filled) < len(gnodes),
        )
    children = (semidef_decompose(filled_v), semidef_decompose(filled_w))
    return CertificateNode(
        g0, TAG_SEMIDEF_CUT, tuple(claims), children, edge=(vp, wp), r=r2
    )


# ---------------------------------------------------------------------------
# Independent verification
# ---------------------------------------------------------------------------


def check_certificate(cert: CertificateNode) -> CheckResult:
    """Re-verify every claim of a certificate from scratch.

    Nothing from the builder is trusted: determinants, definiteness,
    rationality, the slope formulas, the child graphs, and the node-count
    descent are all recomputed from the serialized graphs.  The first
    failing claim's path is reported.  Jump witnesses are checked against
    the canonical (smallest-id tie-break) Laufer run, which is the run
    this certificate format prescribes.
    """
    try:
        return _check_node(cert, "root")
    except Exception as exc:  # malformed certificates must not crash the checker
        return CheckResult(False, "root", f"exception: {exc}")


def _fail(path: str, reason: str) -> CheckResult:
    return CheckResult(False, path, reason)


def _verify_claims(
    node: CertificateNode, recomputed: dict[str, object], path: str
) -> CheckResult | None:
    seen = set()
    for c in node.claims:
        if c.kind not in recomputed:
            return _fail(path, f"unexpected claim {c.kind!r}")
        val = recomputed[c.kind]
        if c.expected != val or c.got != val:
            return _fail(
                path,
                f"claim {c.kind!r}: recomputed {val}, stored {c.expected}/{c.got}",
            )
        seen.add(c.kind)
    missing = set(recomputed) - seen
    if missing:
        return _fail(path, f"missing claims: {sorted(missing)}")
    return None


def _check_node(node: CertificateNode, path: str) -> CheckResult:
    try:
        g = node.graph
        recomputed: dict[str, object] = {
            "connected": g.is_connected(),
            "det": determinant(g),
        }
        if not g.is_connected():
            return _fail(path, "graph not connected")
        if node.tag == TAG_BASE_M1:
            recomputed["negative_definite"] = is_negative_definite(g)
            if not recomputed["negative_definite"]:
                return _fail(path, "not negative definite")
            recomputed["not_rational"] = not is_rational(g).rational
            m, _ = min_bad(g)
            recomputed["m_le_1"] = m <= 1
            if node.children:
                return _fail(path, "base leaf must have no children")
            bad = _verify_claims(node, recomputed, path)
            return bad if bad is not None else CheckResult(True)
        if node.tag == TAG_CASE1:
            return _check_case1(node, recomputed, path)
        if node.tag == TAG_CASE2:
            return _check_case2(node, recomputed, path)
        if node.tag == TAG_SEMIDEF_CUT:
            return _check_semidef_cut(node, recomputed, path)
        if node.tag == TAG_SEMIDEF_LEAF:
            recomputed["det_zero"] = determinant(g) == 0
            recomputed["negative_semidefinite"] = definiteness(
                g
            ).is_negative_semidefinite
            recomputed["nodes_le_1"] = _node_count(g) <= 1
            for key in ("det_zero", "negative_semidefinite", "nodes_le_1"):
                if not recomputed[key]:
                    return _fail(path, f"leaf violates {key}")
            if node.children:
                return _fail(path, "semidefinite leaf must have no children")
            bad = _verify_claims(node, recomputed, path)
            return bad if bad is not None else CheckResult(True)
        return _fail(path, f"unknown tag {node.tag!r}")
    except Exception as exc:
        return _fail(path, f"exception: {exc}")


def _check_case1(
    node: CertificateNode, recomputed: dict[str, object], path: str
) -> CheckResult:
    g = node.graph
    if node.edge is None or node.jump is None or len(node.children) != 2:
        return _fail(path, "Case1 node needs an edge, a jump witness, two children")
    v, w = node.edge
    if not g.has_edge(v, w):
        return _fail(path, f"edge {node.edge} not in graph")
    recomputed["negative_definite"] = is_negative_definite(g)
    if not recomputed["negative_definite"]:
        return _fail(path, "not negative definite")
    recomputed["not_rational"] = not is_rational(g).rational

    gnodes = set(nodes(g))
    split = delete(g, vertices=[v])
    comps = split.component_vertex_sets()
    if sum(1 for c in comps if c & gnodes) < 2:
        return _fail(path, "cut vertex does not separate two node components")
    comp_set = frozenset(node.jump.component)
    if comp_set not in comps:
        return _fail(path, "stored jump component is not a component of g - v")
    comp_w = next(c for c in comps if w in c)
    if comp_w == comp_set or not (comp_w & gnodes):
        return _fail(path, "target component invalid (jump side or node-free)")

    gdown = stabilize(g, [v])
    if gdown.weight(v) != node.jump.stabilized_weight:
        return _fail(path, "stabilized weight mismatch")
    verdict = is_rational(gdown)
    recomputed["stabilized_not_rational"] = not verdict.rational
    if verdict.rational:
        return _fail(path, "stabilized graph is rational")
    j = verdict.jump
    if (j.step, j.vertex, j.value) != (
        node.jump.step,
        node.jump.vertex,
        node.jump.value,
    ):
        return _fail(path, "jump witness does not match the canonical run")
    if j.vertex not in comp_set:
        return _fail(path, "jump vertex outside the stored component")
    comp_graph = subgraph(gdown, set(comp_set) | {v})
    recomputed["jump_component_not_rational"] = not is_rational(comp_graph).rational

    cut_split = delete(g, edges=[(v, w)])
    side_v = component_of(cut_split, v)
    side_w = component_of(cut_split, w)
    det_w = determinant(side_w)
    det_w_minus = determinant(delete(side_w, vertices=[w]))
    if det_w <= 0 or det_w_minus <= 0:
        return _fail(path, "side determinants not positive")
    r = -det_w_minus / det_w
    recomputed["r"] = r
    if node.r != r:
        return _fail(path, f"stored slope {node.r} != recomputed {r}")
    filled_w = attach_string(side_w, w, r)
    filled_v = attach_string(side_v, v, 1 / r)
    decorated_v = attach_slope_vertex(side_v, v, 1 / r)
    recomputed["filled_w_det_zero"] = determinant(filled_w) == 0
    recomputed["filled_w_semidefinite"] = definiteness(
        filled_w
    ).is_negative_semidefinite
    recomputed["filled_v_negative_definite"] = is_negative_definite(filled_v)
    recomputed["decorated_v_det"] = determinant(decorated_v)
    if recomputed["decorated_v_det"] != determinant(g) / det_w_minus:
        return _fail(path, "det identity for the slope-decorated v-side failed")
    recomputed["filled_v_det"] = determinant(filled_v)
    expected_det = determinant(g) / gcd(int(det_w), int(det_w_minus))
    if recomputed["filled_v_det"] != expected_det:
        return _fail(path, "det identity for the filled v-side failed")

    child0, child1 = node.children
    if child0.graph != minimize(filled_v):
        return _fail(path, "recursing child graph mismatch")
    if child1.graph != filled_w:
        return _fail(path, "det-0 child graph mismatch")
    recomputed["child_not_rational"] = not is_rational(child0.graph).rational
    recomputed["node_count_decreases"] = _node_count(child0.graph) < _node_count(g)
    if not recomputed["node_count_decreases"]:
        return _fail(path, "node count did not decrease")
    if child0.tag not in (TAG_BASE_M1, TAG_CASE1, TAG_CASE2):
        return _fail(path, f"recursing child has tag {child0.tag!r}")
    if child1.tag not in (TAG_SEMIDEF_CUT, TAG_SEMIDEF_LEAF):
        return _fail(path, f"det-0 child has tag {child1.tag!r}")
    bad = _verify_claims(node, recomputed, path)
    if bad is not None:
        return bad
    res = _check_node(child0, path + ".children[0]")
    if not res:
        return res
    return _check_node(child1, path + ".children[1]")


def _check_case2(
    node: CertificateNode, recomputed: dict[str, object], path: str
) -> CheckResult:
    g = node.graph
    if node.edge is None or len(node.children) != 1:
        return _fail(path, "Case2 node needs an edge and one child")
    recomputed["negative_definite"] = is_negative_definite(g)
    if not recomputed["negative_definite"]:
        return _fail(path, "not negative definite")
    recomputed["not_rational"] = not is_rational(g).rational
    ns = nodes(g)
    two_adjacent = len(ns) == 2 and g.has_edge(*ns)
    recomputed["two_adjacent_nodes"] = two_adjacent
    if not two_adjacent:
        return _fail(path, "graph does not consist of two adjacent nodes")
    if tuple(sorted(node.edge)) != ns:
        return _fail(path, "Case2 edge is not the node edge")
    blown = blow_up_edge(g, (ns[0], ns[1]))
    (child,) = node.children
    if child.graph != blown:
        return _fail(path, "blown-up child graph mismatch")
    recomputed["child_not_rational"] = not is_rational(blown).rational
    if child.tag not in (TAG_BASE_M1, TAG_CASE1):
        return _fail(path, f"Case2 child has tag {child.tag!r}")
    bad = _verify_claims(node, recomputed, path)
    if bad is not None:
        return bad
    return _check_node(child, path + ".children[0]")


def _check_semidef_cut(
    node: CertificateNode, recomputed: dict[str, object], path: str
) -> CheckResult:
    g = node.graph
    if node.edge is None or len(node.children) != 2:
        return _fail(path, "SemidefCut node needs an edge and two children")
    recomputed["det_zero"] = determinant(g) == 0
    recomputed["negative_semidefinite"] = definiteness(g).is_negative_semidefinite
    if not (recomputed["det_zero"] and recomputed["negative_semidefinite"]):
        return _fail(path, "not a det-0 semidefinite graph")
    vp, wp = node.edge
    if not g.has_edge(vp, wp):
        return _fail(path, f"edge {node.edge} not in graph")
    gnodes = set(nodes(g))
    split = delete(g, edges=[(vp, wp)])
    comps = split.component_vertex_sets()
    if not all(c & gnodes for c in comps):
        return _fail(path, "cut edge does not separate two nodes")
    side_v = component_of(split, vp)
    side_w = component_of(split, wp)
    det_w = determinant(side_w)
    det_w_minus = determinant(delete(side_w, vertices=[wp]))
    if det_w <= 0 or det_w_minus <= 0:
        return _fail(path, "side determinants not positive")
    r2 = -det_w_minus / det_w
    recomputed["r"] = r2
    if node.r != r2:
        return _fail(path, f"stored slope {node.r} != recomputed {r2}")
    filled_v = attach_string(side_v, vp, 1 / r2)
    filled_w = attach_string(side_w, wp, r2)
    child_v, child_w = node.children
    if child_v.graph != filled_v or child_w.graph != filled_w:
        return _fail(path, "filled child graphs mismatch")
    for name, filled in (("v", filled_v), ("w", filled_w)):
        recomputed[f"filled_{name}_det_zero"] = determinant(filled) == 0
        recomputed[f"filled_{name}_semidefinite"] = definiteness(
            filled
        ).is_negative_semidefinite
        recomputed[f"filled_{name}_fewer_nodes"] = _node_count(filled) < len(gnodes)
        for key in ("det_zero", "semidefinite", "fewer_nodes"):
            if not recomputed[f"filled_{name}_{key}"]:
                return _fail(path, f"filled_{name}_{key} fails")
    for child in node.children:
        if child.tag not in (TAG_SEMIDEF_CUT, TAG_SEMIDEF_LEAF):
            return _fail(path, f"semidefinite child has tag {child.tag!r}")
    bad = _verify_claims(node, recomputed, path)
    if bad is not None:
        return bad
    res = _check_node(child_v, path + ".children[0]")
    if not res:
        return res
    return _check_node(child_w, path + ".children[1]")


# ---------------------------------------------------------------------------
# JSON round-trip
# ---------------------------------------------------------------------------


def _value_to_json(v):
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, int):
        return str(Fraction(v))
    raise TypeError(f"unsupported claim value {v!r}")


def _value_from_json(v):
    if isinstance(v, str):
        return Fraction(v)
    return v


def certificate_to_json(node: CertificateNode) -> dict:
    out: dict = {
        "graph": serialize_graph(node.graph),
        "tag": node.tag,
        "claims": [
            {
                "kind": c.kind,
                "expected": _value_to_json(c.expected),
                "got": _value_to_json(c.got),
            }
            for c in node.claims
        ],
        "children": [certificate_to_json(c) for c in node.children],
    }
    if node.edge is not None:
        out["edge"] = list(node.edge)
    if node.r is not None:
        out["r"] = str(node.r)
    if node.jump is not None:
        out["jump"] = {
            "stabilized_weight": str(node.jump.stabilized_weight),
            "step": node.jump.step,
            "vertex": node.jump.vertex,
            "value": node.jump.value,
            "component": list(node.jump.component),
        }
    if node.seifert is not None:
        out["seifert"] = {
            "e0": node.seifert.e0,
            "legs": [list(leg) for leg in node.seifert.legs],
        }
    return out


def certificate_from_json(data: dict) -> CertificateNode:
    from .seifert import SeifertData

    jump = None
    if "jump" in data:
        j = data["jump"]
        jump = JumpInfo(
            Fraction(j["stabilized_weight"]),
            int(j["step"]),
            j["vertex"],
            int(j["value"]),
            tuple(j["component"]),
        )
    seifert = None
    if "seifert" in data:
        s = data["seifert"]
        seifert = SeifertData(int(s["e0"]), tuple(tuple(x) for x in s["legs"]))
    return CertificateNode(
        graph=parse_graph(data["graph"]),
        tag=data["tag"],
        claims=tuple(
            Claim(
                c["kind"],
                _value_from_json(c["expected"]),
                _value_from_json(c["got"]),
            )
            for c in data["claims"]
        ),
        children=tuple(certificate_from_json(c) for c in data["children"]),
        edge=tuple(data["edge"]) if "edge" in data else None,
        r=Fraction(data["r"]) if "r" in data else None,
        jump=jump,
        seifert=seifert,
    )
