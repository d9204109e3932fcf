from fractions import Fraction
from math import gcd

import pytest

import tightcycle as tc


def test_admissible_matches_gcd_rule():
    for s in range(3, 16):
        for k in range(2, s):
            d = gcd(k, s)
            assert tc.admissible(k, s) == (d == 1 or (k // d) % 2 == 0)


def test_parity_graph_and_degrees():
    h = tc.h0(3, 5, 5)
    assert (h.k, h.n) == (3, 10)
    assert h.min_degree(2)[0] >= 5 - 2
    assert tc.uncovered_vertices(tc.h0(4, 5, 5), 5) == list(range(10))


def test_cycle_search_and_certificate():
    complete, classes = tc.complete_partite(3, [2, 2, 2])
    assert [len(c) for c in classes] == [2, 2, 2]
    cycle = tc.find_cycle_through(complete, 0, 6)
    assert cycle is not None and tc.is_tight_cycle(complete, cycle)
    cert = tc.cycle_certificate(complete, 6, 0)
    assert tc.verify_certificate(cert, complete) == (True, "")
    cert["payload"]["results"][0]["cycle"] = None
    assert not tc.verify_certificate(cert, complete)[0]


def test_barrier_has_no_perfect_tiling():
    barrier, parts = tc.tiling_barrier(4, 5, 10)
    assert len(parts["t"]) == 1
    assert tc.perfect_tiling(barrier, 5) is None


def test_thresholds_and_fractions():
    assert tc.brute_threshold("t", 2, 3, 6, 1)[0] == 3
    assert tc.brute_threshold("t", 2, 2, 6, 1)[0] == 2
    empty = tc.Hypergraph(3, 4, [])
    value, optimal = tc.phi_star(empty, 3, 19, "1/6859")
    assert value == Fraction(1) and optimal


def test_errors_are_typed():
    with pytest.raises(ValueError):
        tc.Hypergraph(3, 4, [[0, 1]])
    with pytest.raises(tc.BudgetExceeded):
        tc.enumerate_cycles(tc.complete_partite(3, [3, 3, 3])[0], 6, budget=3)


def test_perm_round_trip():
    image = tc.parse_cycles("(1 2 3)", 3)
    assert image == [2, 3, 1]
    assert tc.parse_cycles(tc.format_cycles(image), 3) == image
