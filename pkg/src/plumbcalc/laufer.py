"""Laufer's computation sequence, rationality, and bad-vertex machinery.

The fundamental cycle Z_min of a connected negative-definite graph is the
unique minimal nonzero cycle Z >= 0 with (Z, E_v) <= 0 for every vertex.
Laufer's algorithm reaches it from l_0 = sum_v E_v by repeatedly adding a
basis vector with positive pairing:

    while some (l_i, E_v) > 0:  l_{i+1} = l_i + E_{v(i)}

The end cycle is Z_min regardless of the choices of v(i), and the graph
is Artin-rational iff every step has pairing value exactly 1 (a step with
value >= 2 is a "jump").  We cross-check against Artin's criterion
chi(Z_min) >= 1 on every call; a disagreement is an internal error.

A vertex set B is "bad" when pushing its decorations sufficiently far
down makes the graph rational.  Operationally "sufficiently far" means:
decrement until every v in B has multiplicity 1 in the modified Z_min;
past that point further decrements change neither Z_min nor any pairing
along the sequence, so the verdict is stable.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .errors import GraphStructureError, InternalCheckError
from .graph import PlumbingGraph, VertexId, nodes, subgraph, with_weight
from .lattice import canonical_cycle, chi, is_negative_definite

logger = logging.getLogger(__name__)

_STEP_CAP = 1_000_000


@dataclass(frozen=True)
class LauferStep:
    cycle_before: dict[VertexId, int]
    vertex: VertexId
    pairing_value: int


@dataclass(frozen=True)
class ComputationSequence:
    steps: tuple[LauferStep, ...]
    final: dict[VertexId, int]


@dataclass(frozen=True)
class JumpWitness:
    step: int
    vertex: VertexId
    value: int


@dataclass(frozen=True)
class RationalityVerdict:
    rational: bool
    jump: JumpWitness | None
    z_min: dict[VertexId, int]
    chi_zmin: Fraction


def _check_laufer_input(g: PlumbingGraph) -> None:
    if len(g) == 0:
        raise GraphStructureError("empty graph")
    if not g.is_connected():
        raise GraphStructureError("Laufer algorithm requires a connected graph")
    if not g.has_integer_weights():
        raise GraphStructureError("Laufer algorithm requires integer weights")
    if not is_negative_definite(g):
        raise GraphStructureError(
            "Laufer algorithm requires a negative definite graph"
        )


def _run(g: PlumbingGraph, rng: random.Random | None, record: bool):
    weights = {v: int(g.weight(v)) for v in g.vertices}
    mult = {v: 1 for v in g.vertices}
    pair = {v: weights[v] + g.degree(v) for v in g.vertices}
    steps: list[LauferStep] = []
    first_jump: JumpWitness | None = None
    count = 0
    while True:
        pos = [v for v in g.vertices if pair[v] > 0]
        if not pos:
            break
        v = pos[0] if rng is None else rng.choice(pos)
        val = pair[v]
        if record:
            steps.append(LauferStep(dict(mult), v, val))
        if first_jump is None and val >= 2:
            first_jump = JumpWitness(count, v, val)
        mult[v] += 1
        pair[v] += weights[v]
        for n in g.neighbors(v):
            pair[n] += 1
        count += 1
        if count > _STEP_CAP:
            raise InternalCheckError("computation sequence exceeded step cap")
    return mult, steps, first_jump


def z_min(
    g: PlumbingGraph, rng: random.Random | None = None
) -> tuple[dict[VertexId, int], ComputationSequence]:
    """Fundamental cycle plus the full computation sequence.

    ``rng`` randomizes the tie-break among positive-pairing vertices (used
    by the choice-independence property tests); the default picks the
    smallest vertex id, which makes golden tests deterministic.
    """
    _check_laufer_input(g)
    mult, steps, _ = _run(g, rng, record=True)
    return mult, ComputationSequence(tuple(steps), dict(mult))


def zmin_multiplicities(g: PlumbingGraph) -> dict[VertexId, int]:
    """Z_min without step recording (hot path for bad-set stabilization)."""
    _check_laufer_input(g)
    mult, _, _ = _run(g, None, record=False)
    return mult


def is_rational(
    g: PlumbingGraph, rng: random.Random | None = None
) -> RationalityVerdict:
    """Rationality via Laufer jumps, cross-checked against chi(Z_min) >= 1.

    The boolean is tie-break independent; the jump witness reports the
    first value >= 2 in the run actually taken.
    """
    _check_laufer_input(g)
    mult, _, jump = _run(g, rng, record=False)
    chi_z = chi(g, mult, canonical_cycle(g))
    if (jump is None) != (chi_z >= 1):
        raise InternalCheckError(
            f"Laufer ({jump}) and Artin (chi={chi_z}) criteria disagree"
        )
    return RationalityVerdict(jump is None, jump, mult, chi_z)


# ---------------------------------------------------------------------------
# Bad vertices
# ---------------------------------------------------------------------------


def stabilize(g: PlumbingGraph, bad: Iterable[VertexId]) -> PlumbingGraph:
    """Push the decorations of ``bad`` down until each has multiplicity 1
    in Z_min of the modified graph (the graph written with a down-arrow).

    Decreasing a diagonal entry preserves negative definiteness, and Z_min
    is monotone under the decrease, so the loop converges; the decrement
    cap only guards against implementation bugs.
    """
    bad = sorted(set(bad))
    for v in bad:
        if not g.has_vertex(v):
            raise GraphStructureError(f"unknown vertex {v!r}")
    if not bad:
        return g
    max_w = max(abs(int(g.weight(v))) for v in g.vertices)
    cap = 4 * len(g) * max(1, max_w)
    spent = 0
    while True:
        z = zmin_multiplicities(g)
        over = [v for v in bad if z[v] > 1]
        if not over:
            return g
        for v in over:
            g = with_weight(g, v, g.weight(v) - 1)
            spent += 1
            if spent > cap:
                raise InternalCheckError("bad-set stabilization exceeded cap")


def is_bad_set(g: PlumbingGraph, bad: Iterable[VertexId]) -> bool:
    """True when pushing ``bad`` sufficiently negative makes ``g`` rational."""
    return is_rational(stabilize(g, bad)).rational


def min_bad(g: PlumbingGraph) -> tuple[int, frozenset[VertexId]]:
    """Smallest bad set, by exhaustive size-ascending subset search.

    Subsets of nodes are tried before other subsets of the same size (the
    node set is always bad, so this usually wins quickly), but the search
    covers all vertex subsets because bad sets are not restricted to
    nodes.  The first hit at the smallest size is returned; when it
    contains a non-node we log that as a diagnostic.
    """
    verts = list(g.vertices)
    node_set = set(nodes(g))
    node_list = sorted(node_set)
    for k in range(len(verts) + 1):
        for cand in combinations(node_list, k):
            if is_bad_set(g, cand):
                return k, frozenset(cand)
        for cand in combinations(verts, k):
            if set(cand) <= node_set:
                continue  # already tried above
            if is_bad_set(g, cand):
                logger.info("minimal bad set %s contains a non-node", cand)
                return k, frozenset(cand)
    raise InternalCheckError("no bad set found; the full vertex set must be bad")


# ---------------------------------------------------------------------------
# Monotonicity spot checks (facts used by the induction)
# ---------------------------------------------------------------------------


@dataclass
class MonotonicityReport:
    subgraph_checks: int = 0
    decrease_checks: int = 0
    induced_badset_checks: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _random_connected_subgraph(
    g: PlumbingGraph, rng: random.Random
) -> PlumbingGraph:
    target = rng.randint(1, len(g))
    start = rng.choice(g.vertices)
    chosen = {start}
    frontier = [n for n in g.neighbors(start)]
    while frontier and len(chosen) < target:
        v = rng.choice(frontier)
        frontier.remove(v)
        if v in chosen:
            continue
        chosen.add(v)
        frontier.extend(n for n in g.neighbors(v) if n not in chosen)
    return subgraph(g, chosen)


def monotonicity_report(
    g: PlumbingGraph, rng: random.Random | None = None, samples: int = 20
) -> MonotonicityReport:
    """Spot-check rationality monotonicity on ``g``:

    - connected subgraphs of a rational graph stay rational;
    - decreasing decorations of a rational graph stays rational;
    - the restriction of a bad set to a subgraph is a bad set there
      (hence m is monotone under subgraphs).
    """
    rng = rng or random.Random(0)
    rep = MonotonicityReport()
    base_rational = is_rational(g).rational
    _, witness = min_bad(g) if len(g) <= 14 else (None, frozenset(nodes(g)))
    for _ in range(samples):
        sub = _random_connected_subgraph(g, rng)
        rep.subgraph_checks += 1
        if base_rational and not is_rational(sub).rational:
            rep.failures.append(f"subgraph {sub.vertices} broke rationality")
        rep.induced_badset_checks += 1
        induced = frozenset(witness) & set(sub.vertices)
        if not is_bad_set(sub, induced):
            rep.failures.append(
                f"induced bad set {sorted(induced)} failed on {sub.vertices}"
            )
        if base_rational:
            v = rng.choice(g.vertices)
            lowered = with_weight(g, v, g.weight(v) - rng.randint(1, 3))
            rep.decrease_checks += 1
            if not is_rational(lowered).rational:
                rep.failures.append(f"decreasing {v} broke rationality")
    return rep
