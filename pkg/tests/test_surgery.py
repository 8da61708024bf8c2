import json
import random
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from plumbcalc.errors import GraphStructureError
from plumbcalc.graph import (
    PlumbingGraph,
    delete,
    minimize,
    nodes,
    parse_graph,
    serialize_graph,
)
from plumbcalc.lattice import definiteness, determinant, is_negative_definite
from plumbcalc.laufer import is_rational
from plumbcalc.surgery import (
    TAG_BASE_M1,
    TAG_CASE1,
    TAG_CASE2,
    TAG_SEMIDEF_CUT,
    TAG_SEMIDEF_LEAF,
    attach_string,
    certificate_from_json,
    certificate_to_json,
    cf_eval,
    check_certificate,
    cut_and_fill,
    lo_certificate,
    negative_cf,
    semidef_decompose,
)

from oracles import cf_eval_convergents


# -- continued fractions -----------------------------------------------------


@pytest.mark.parametrize(
    "value, terms",
    [
        (Fraction(-3), (-3,)),
        (Fraction(-7, 2), (-4, -2)),
        (Fraction(-1, 2), (-1, -2)),
        (Fraction(-6, 5), (-2, -2, -2, -2, -2)),
    ],
)
def test_negative_cf_examples(value, terms):
    cf = negative_cf(value)
    assert cf.terms == terms
    assert cf_eval(cf.terms) == value


def test_negative_cf_rejects_nonnegative():
    for bad in (0, Fraction(1, 2), 3):
        with pytest.raises(GraphStructureError):
            negative_cf(bad)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 10**6), st.integers(1, 10**6))
def test_negative_cf_round_trip(p, q):
    r = Fraction(-p, q)
    cf = negative_cf(r)
    assert cf.terms[0] <= -1
    assert all(t <= -2 for t in cf.terms[1:])
    assert cf_eval(cf.terms) == r
    assert cf_eval_convergents(cf.terms) == r


def test_negative_cf_round_trip_bulk():
    rng = random.Random(71)
    for _ in range(10_000):
        r = Fraction(-rng.randint(1, 10**6), rng.randint(1, 10**6))
        assert cf_eval(negative_cf(r).terms) == r


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 400), st.integers(1, 399))
def test_cf_determinant_duality(p, q):
    # the string of -p/q (p > q > 0 coprime) has det p; minus its first
    # vertex, det q
    if q >= p or gcd(p, q) != 1:
        return
    cf = negative_cf(Fraction(-p, q))
    ids = [f"s{i}" for i in range(len(cf.terms))]
    g = PlumbingGraph(
        dict(zip(ids, cf.terms)), list(zip(ids, ids[1:]))
    )
    assert determinant(g) == p
    assert determinant(delete(g, vertices=[ids[0]])) == q


# -- attach_string -----------------------------------------------------------


def test_attach_integer_slope():
    g = parse_graph("vertex a -3")
    out = attach_string(g, "a", -2)
    assert len(out) == 2 and sorted(out.weights().values()) == [-3, -2]


def test_attach_half_gives_det_zero():
    g = parse_graph("vertex a -2")
    out = attach_string(g, "a", Fraction(-1, 2))
    assert sorted(out.weights().values()) == [-2, -2, -1]
    assert determinant(out) == 0


def test_attach_seven_halves():
    g = parse_graph("vertex a -2")
    out = attach_string(g, "a", Fraction(-7, 2))
    new = [v for v in out.vertices if v != "a"]
    assert sorted(out.weight(v) for v in new) == [-4, -2]
    # first term adjacent to the attachment point
    head = next(v for v in new if out.has_edge("a", v))
    assert out.weight(head) == -4


# -- cut_and_fill ------------------------------------------------------------


def test_cut_two_vertex_path():
    g = parse_graph("vertex a -2\nvertex b -2\nedge a b")
    cut = cut_and_fill(g, ("a", "b"))
    assert cut.r == Fraction(-1, 2)
    assert determinant(cut.filled_w) == 0
    assert sorted(cut.filled_w.weights().values()) == [-2, -2, -1]
    assert determinant(cut.filled_v) == 3
    assert determinant(cut.decorated_v) * 1 == determinant(g)


def test_cut_e8_slope_decorated_identity(e8):
    det_g = determinant(e8)
    for a, b in e8.edges:
        for v, w in ((a, b), (b, a)):
            cut = cut_and_fill(e8, (v, w))
            side_w_minus = determinant(delete(cut.side_w, vertices=[w]))
            assert determinant(cut.decorated_v) == det_g / side_w_minus
            assert determinant(cut.decorated_w) == 0
            assert is_negative_definite(cut.filled_v)


def test_cut_two_star_separating_edge(two_star_m2):
    cut = cut_and_fill(two_star_m2, ("m1", "m2"))
    assert not is_rational(minimize(cut.filled_v)).rational


def test_cut_errors(s237):
    with pytest.raises(GraphStructureError):
        cut_and_fill(s237, ("p2", "p3"))  # not an edge
    with pytest.raises(GraphStructureError):
        cut_and_fill(parse_graph("vertex a 1\nvertex b -2\nedge a b"), ("a", "b"))


# -- certificates ------------------------------------------------------------


def test_certificate_base_case(s237):
    cert = lo_certificate(s237)
    assert cert.tag == TAG_BASE_M1 and not cert.children
    assert check_certificate(cert).ok


def test_certificate_two_star(two_star_m2):
    cert = lo_certificate(two_star_m2)
    assert cert.tag == TAG_CASE1
    recursing, det0 = cert.children
    assert recursing.tag in (TAG_BASE_M1, TAG_CASE1, TAG_CASE2)
    assert det0.tag in (TAG_SEMIDEF_CUT, TAG_SEMIDEF_LEAF)
    assert determinant(det0.graph) == 0
    assert len(nodes(recursing.graph)) < len(nodes(two_star_m2))
    assert check_certificate(cert).ok


def test_certificate_case2_shallow(case2_shallow):
    cert = lo_certificate(case2_shallow)
    assert cert.tag == TAG_CASE2
    (child,) = cert.children
    assert child.tag == TAG_BASE_M1
    assert check_certificate(cert).ok


def test_certificate_case2_deep(case2_deep):
    cert = lo_certificate(case2_deep)
    assert cert.tag == TAG_CASE2
    (child,) = cert.children
    assert child.tag == TAG_CASE1
    assert check_certificate(cert).ok


def test_certificate_input_validation(e8, s237):
    with pytest.raises(GraphStructureError):
        lo_certificate(e8)  # rational
    nonminimal = parse_graph(
        "vertex a -1\nvertex b -2\nedge a b"
    )
    with pytest.raises(GraphStructureError):
        lo_certificate(nonminimal)


def test_checker_rejects_base_leaf_over_rational(s237, e8):
    cert = lo_certificate(s237)
    data = certificate_to_json(cert)
    data["graph"] = serialize_graph(e8)
    res = check_certificate(certificate_from_json(data))
    assert not res.ok


def test_checker_rejects_perturbed_det(two_star_m2):
    data = certificate_to_json(lo_certificate(two_star_m2))
    mutated = json.loads(json.dumps(data))
    for claim in mutated["claims"]:
        if claim["kind"] == "det":
            claim["expected"] = str(Fraction(claim["expected"]) + 1)
    res = check_certificate(certificate_from_json(mutated))
    assert not res.ok and res.path == "root"


def test_certificate_json_round_trip(two_star_m2, case2_deep):
    for g in (two_star_m2, case2_deep):
        cert = lo_certificate(g)
        data = json.loads(json.dumps(certificate_to_json(cert)))
        back = certificate_from_json(data)
        assert check_certificate(back).ok
        assert certificate_to_json(back) == certificate_to_json(cert)


def test_checker_survives_garbage():
    res = check_certificate(
        certificate_from_json(
            {"graph": "vertex a -1", "tag": "BaseM1", "claims": [], "children": []}
        )
    )
    assert not res.ok  # rational graph, missing claims


# -- semidefinite decomposition ----------------------------------------------


def test_semidef_leaf_no_node():
    g = parse_graph("vertex a -2\nvertex b -1\nvertex c -2\nedge a b\nedge b c")
    cert = semidef_decompose(g)
    assert cert.tag == TAG_SEMIDEF_LEAF and not cert.children
    assert check_certificate(cert).ok


def test_semidef_two_node_graph(two_star_m2):
    # cutting off a leaf fills the side that still contains both star
    # cores -> det-0 with two nodes -> one SemidefCut with two leaves
    cut = cut_and_fill(two_star_m2, ("xl1", "xc"))
    g0 = cut.filled_w  # contains both nodes
    assert len(nodes(g0)) == 2 and determinant(g0) == 0
    cert = semidef_decompose(g0)
    assert cert.tag == TAG_SEMIDEF_CUT
    assert all(c.tag == TAG_SEMIDEF_LEAF for c in cert.children)
    for c in cert.children:
        assert determinant(c.graph) == 0
        assert definiteness(c.graph).is_negative_semidefinite
        assert len(nodes(c.graph)) <= 1
    assert check_certificate(cert).ok


def test_semidef_decompose_errors(s237):
    with pytest.raises(GraphStructureError):
        semidef_decompose(s237)  # det 1
    with pytest.raises(GraphStructureError):
        semidef_decompose(PlumbingGraph({"a": -2, "b": -2}))  # disconnected


def test_semidef_leaf_star_has_seifert_data(two_star_m2):
    cut = cut_and_fill(two_star_m2, ("m1", "m2"))
    cert = semidef_decompose(cut.filled_w)
    stars = [n for n in _walk(cert) if n.tag == TAG_SEMIDEF_LEAF and n.seifert]
    assert stars, "expected at least one leaf with extractable Seifert data"


def _walk(node):
    yield node
    for child in node.children:
        yield from _walk(child)


def test_random_certificate_mutations(two_star_m2, case2_deep, s237):
    rng = random.Random(99)
    pool = [
        certificate_to_json(lo_certificate(g))
        for g in (two_star_m2, case2_deep, s237)
    ]
    caught = 0
    trials = 60
    for _ in range(trials):
        data = json.loads(json.dumps(rng.choice(pool)))
        _mutate(data, rng)
        res = check_certificate(certificate_from_json(data))
        caught += not res.ok
    assert caught == trials


def _mutate(data, rng):
    """Apply one random semantic mutation somewhere in the tree."""
    # walk to a random node
    node = data
    while node["children"] and rng.random() < 0.5:
        node = rng.choice(node["children"])
    kind = rng.randrange(5)
    if kind == 0 and node["claims"]:
        claim = rng.choice(node["claims"])
        if isinstance(claim["expected"], bool):
            claim["expected"] = not claim["expected"]
        else:
            claim["expected"] = str(Fraction(claim["expected"]) + 1)
    elif kind == 1 and "r" in node:
        node["r"] = str(Fraction(node["r"]) - 1)
    elif kind == 2 and "jump" in node:
        node["jump"]["value"] += 1
    elif kind == 3 and node["claims"]:
        node["claims"].pop(rng.randrange(len(node["claims"])))
    else:
        # perturb a weight in the graph text
        lines = node["graph"].splitlines()
        idx = [i for i, line in enumerate(lines) if line.startswith("vertex")]
        i = rng.choice(idx)
        parts = lines[i].split()
        parts[2] = str(int(Fraction(parts[2])) - 1 if "/" not in parts[2] else -9)
        lines[i] = " ".join(parts)
        node["graph"] = "\n".join(lines) + "\n"
