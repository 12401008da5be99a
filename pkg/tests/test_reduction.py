"""The archipelago deletion pipeline and its independence lift."""

import pytest

from twomilton.constructions import counterexample_strip, k4_strip
from twomilton.corpus import planted_pair, random_pair
from twomilton.graphs import UGraph, make_cycle, standard_cycle, union
from twomilton.independence import alpha_exact, alpha_value, verify_independent
from twomilton.k4 import find_k4s, zeta
from twomilton.reduction import (
    StructureViolation,
    diagnose_reduction,
    lift_independent,
    technical_reduce,
)

from oracles import oracle_alpha


def check_result(res):
    g, h = res.g, res.h
    assert all(res.postconditions.values())
    assert not find_k4s(h)
    assert h.n == g.n - 4 * res.zeta
    for i, old in enumerate(res.h_vertex_map):
        assert h.degree(i) <= g.degree(old)
    cert = alpha_exact(h) if h.n else None
    iset = cert.vertices if cert else ()
    lifted = lift_independent(res, iset)
    assert len(lifted) == len(iset) + res.zeta
    assert verify_independent(g, lifted)
    return lifted


def test_validations():
    c1, c2 = k4_strip(3)  # n = 12 <= 13
    with pytest.raises(ValueError, match="n > 13"):
        technical_reduce(c1, c2)
    c = standard_cycle(16)
    with pytest.raises(ValueError, match="distinct"):
        technical_reduce(c, make_cycle(list(range(15, -1, -1))))
    with pytest.raises(ValueError, match="vertex set"):
        technical_reduce(standard_cycle(16), standard_cycle(20))


def test_fully_covered_strip_reduces_to_empty():
    c1, c2 = k4_strip(4)
    res = technical_reduce(c1, c2)
    assert res.zeta == 4
    assert res.h.n == 0
    assert res.h_vertex_map == ()
    lifted = lift_independent(res, ())
    assert len(lifted) == 4
    assert verify_independent(res.g, lifted)
    assert all(e.kind == "cyclic" for e in res.lift_plan)


def test_zeta_zero_is_identity():
    c1, c2 = random_pair(17, "idty")
    g = union([c1, c2])
    assert zeta(g) == 0  # seed chosen so the union is K4-free
    res = technical_reduce(c1, c2)
    assert res.zeta == 0
    assert res.h.n == 17
    assert res.h.edges() == g.edges()
    assert res.trace == ()
    lifted = lift_independent(res, alpha_exact(res.h).vertices)
    assert len(lifted) == alpha_value(g)


def two_island_pair():
    """Two K4 windows at 0..3 and 8..11 whose removal splits the remainder
    into islands {4..7} and {12..15} (the second cycle never bridges them and
    both windows have 4-vertex independent neighbourhoods), so the
    spanning-tree reconnection must route arcs of the first cycle."""
    c1 = standard_cycle(16)
    c2 = make_cycle([4, 6, 5, 7, 2, 0, 3, 1, 13, 12, 15, 14, 10, 8, 11, 9])
    return c1, c2


def test_reconnection_step():
    c1, c2 = two_island_pair()
    g = union([c1, c2])
    assert zeta(g) == 2
    res = technical_reduce(c1, c2)
    steps = [t.step for t in res.trace]
    assert "connect" in steps
    connect = next(t for t in res.trace if t.step == "connect")
    assert connect.added_edge == (4, 15)
    # the surviving second window is handled afterwards with a safe edge
    final = [t for t in res.trace if t.step == "final"]
    assert final and final[0].added_edge == (4, 12)
    check_result(res)


def three_neighbour_pair():
    """One K4 window at 0..3 with neighbourhood {4, 6, 15}: vertex 15 sends
    two spokes (so it is marked), and no risky outside pattern applies."""
    c1 = standard_cycle(16)
    c2 = make_cycle([15, 2, 0, 3, 1, 6, 8, 4, 9, 5, 10, 7, 11, 13, 12, 14])
    return c1, c2


def test_three_neighbourhood_step():
    c1, c2 = three_neighbour_pair()
    g = union([c1, c2])
    assert zeta(g) == 1
    res = technical_reduce(c1, c2)
    three = [t for t in res.trace if t.step.startswith("three")]
    assert len(three) == 1
    assert three[0].step == "three"
    assert three[0].added_edge == (4, 6)
    check_result(res)


def test_planted_corpus():
    lifted_sizes = []
    for seed in range(25):
        n = 16 + 4 * (seed % 5)
        k = 1 + seed % 3
        c1, c2 = planted_pair(n, k, f"red:{seed}")
        g = union([c1, c2])
        assert zeta(g) >= k
        res = technical_reduce(c1, c2)
        lifted = check_result(res)
        lifted_sizes.append(len(lifted))
        # the lift is a real independent set of g, so alpha(g) >= alpha(h) + zeta
        if n <= 20:
            assert oracle_alpha(g) >= len(lifted)
    assert any(s > 4 for s in lifted_sizes)


def test_random_pairs_mostly_trivial():
    for seed in range(10):
        c1, c2 = random_pair(20, f"rnd:{seed}")
        res = technical_reduce(c1, c2)
        check_result(res)


def test_determinism():
    c1, c2 = planted_pair(24, 2, "det")
    r1 = technical_reduce(c1, c2)
    r2 = technical_reduce(c1, c2)
    assert r1.trace == r2.trace
    assert r1.h.adj == r2.h.adj
    assert r1.lift_plan == r2.lift_plan


def test_lift_rejects_bad_input():
    c1, c2 = planted_pair(20, 1, "bad")
    res = technical_reduce(c1, c2)
    edges = res.h.edges()
    if edges:
        with pytest.raises(ValueError, match="independent"):
            lift_independent(res, edges[0])
    with pytest.raises(ValueError, match="vertex ids"):
        lift_independent(res, [res.h.n + 3])


def test_counterexample_strip_diagnosis():
    g = counterexample_strip(3)
    report = diagnose_reduction(g)
    assert not report.ok
    assert report.failed_step == "small"
    assert "K4" in report.reason
    assert report.artifact is not None
    assert report.artifact.n == 24
    assert report.result is None


def test_diagnose_accepts_clean_union():
    c1, c2 = planted_pair(18, 1, "diag")
    report = diagnose_reduction(union([c1, c2]), cycles=(c1, c2))
    assert report.ok
    assert report.result is not None
    assert report.result.zeta >= 1


def test_diagnose_rejects_high_degree():
    star = UGraph.from_edges(6, [(0, i) for i in range(1, 6)])
    with pytest.raises(ValueError, match="degree"):
        diagnose_reduction(star)


def _k4_with_trio(extra_edges):
    """K4 on 0..3, spokes 0-4, 1-4, 2-5, 3-6 (vertex 4 marked), plus extras."""
    edges = [(u, v) for u in range(4) for v in range(u + 1, 4)]
    edges += [(0, 4), (1, 4), (2, 5), (3, 6)]
    edges += extra_edges
    n = 1 + max(max(e) for e in edges)
    return UGraph.from_edges(n, edges)


def test_risky_type1_edge():
    # six spokes to the outside pair {7,8}, no 7-8 edge: connect marked 4 to 5
    g = _k4_with_trio([(4, 7), (4, 8), (5, 7), (5, 8), (6, 7), (6, 8)])
    report = diagnose_reduction(g)
    assert report.ok
    risky = [t for t in report.result.trace if t.step == "three-risky"]
    assert risky and risky[0].added_edge == (4, 5)


def test_risky_type2_edge():
    # five spokes plus the 7-8 edge, gap at unmarked 6: connect 4 to 6
    g = _k4_with_trio([(4, 7), (4, 8), (5, 7), (5, 8), (6, 7), (7, 8)])
    report = diagnose_reduction(g)
    assert report.ok
    risky = [t for t in report.result.trace if t.step == "three-risky"]
    assert risky and risky[0].added_edge == (4, 6)


def test_risky_type3_edge():
    # five spokes plus the 7-8 edge, gap at the marked vertex 4: connect 4 to 5
    g = _k4_with_trio([(4, 8), (5, 7), (5, 8), (6, 7), (6, 8), (7, 8)])
    report = diagnose_reduction(g)
    assert report.ok
    risky = [t for t in report.result.trace if t.step == "three-risky"]
    assert risky and risky[0].added_edge == (4, 5)


def test_forbidden_pattern_detected():
    # six spokes plus the 7-8 edge: no safe reconnection exists
    g = _k4_with_trio([(4, 7), (4, 8), (5, 7), (5, 8), (6, 7), (6, 8), (7, 8)])
    report = diagnose_reduction(g)
    assert not report.ok
    assert report.failed_step == "three"
    assert "forbidden" in report.reason


def test_strict_mode_raises():
    g = counterexample_strip(2)
    c1 = standard_cycle(16)
    with pytest.raises(StructureViolation) as info:
        from twomilton.reduction import _Pipeline

        _Pipeline(g, None, strict_input=True).run()
    assert info.value.step == "small"
    assert info.value.artifact.n == 16
