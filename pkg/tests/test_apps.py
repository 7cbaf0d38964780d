import math
import random
from fractions import Fraction

import pytest

from helpers import permutation_permanent, random_low_rank_matrix
from unideal.apps import (
    Graph,
    blowup_graph,
    build_vc_instance,
    has_vertex_cover_brute,
    permanent_lowrank,
    ryser_permanent,
    vertex_cover_lowrank,
)
from unideal.division import is_member_brute
from unideal.linalg import Matrix
from unideal.lowrank import inline_forms

F = Fraction


def frac_matrix(rows):
    return Matrix([[F(x) for x in row] for row in rows])


C4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
K13 = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
K2 = Graph.from_edges(2, [(0, 1)])


def test_ryser_examples():
    assert ryser_permanent(frac_matrix([[7]])) == 7
    assert ryser_permanent(frac_matrix([[1, 1], [1, 1]])) == 2
    assert ryser_permanent(frac_matrix([[1] * 5] * 5)) == 120


def test_ryser_against_permutation_sum():
    rng = random.Random(0)
    for _ in range(25):
        n = rng.randint(1, 5)
        m = frac_matrix([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        assert ryser_permanent(m) == permutation_permanent(m)


def test_ryser_size_guard():
    with pytest.raises(ValueError):
        ryser_permanent(Matrix.identity(21))


def test_permanent_all_ones_factorial():
    for n in range(3, 7):
        assert permanent_lowrank(frac_matrix([[1] * n] * n)) == math.factorial(n)


def test_permanent_zero_row():
    m = frac_matrix([[1, 2], [0, 0]])
    assert permanent_lowrank(m) == 0


def test_permanent_random_low_rank():
    rng = random.Random(1)
    for _ in range(40):
        n = rng.randint(1, 6)
        r = rng.randint(1, min(3, n))
        m = random_low_rank_matrix(rng, n, r)
        assert permanent_lowrank(m) == ryser_permanent(m)


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(2, ((0, 0),))
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 1), (1, 0)])


def test_blowup_preserves_rank():
    tri = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    big = blowup_graph(tri, [3, 3, 2])
    assert big.n == 8
    assert big.adjacency().rank() == tri.adjacency().rank() == 3


def test_vc_instance_empty_graph():
    inp, ideal, deg = build_vc_instance(Graph.from_edges(3, []), 1)
    # no quadratic forms survive; only the size factor's single form remains
    assert len(inp.forms) == 1
    assert deg == 2 * 3 + 2


def test_vc_instance_star_rank():
    inp, ideal, deg = build_vc_instance(K13, 1)
    assert len(inp.forms) <= 3  # quadratic rank 2 plus the size form


def test_vc_instance_k2_witnesses():
    inp, ideal, _ = build_vc_instance(K2, 1)
    f = inline_forms(inp)
    assert f.evaluate([F(0), F(1)]) != 0
    assert f.evaluate([F(1), F(0)]) != 0


def test_vc_k_equals_n_always_true():
    assert vertex_cover_lowrank(K2, 2, 5, random.Random(0))
    assert vertex_cover_lowrank(C4, 4, 5, random.Random(0))


def test_vc_c4():
    assert not vertex_cover_lowrank(C4, 1, 20, random.Random(1))
    assert vertex_cover_lowrank(C4, 2, 20, random.Random(1))


def test_vc_star_center():
    assert vertex_cover_lowrank(K13, 1, 20, random.Random(2))


def test_vc_monotone_in_k():
    rng = random.Random(3)
    prev = False
    for k in range(C4.n + 1):
        cur = vertex_cover_lowrank(C4, k, 20, random.Random(99))
        assert not (prev and not cur)
        prev = cur


def test_vc_micro_membership_equivalence():
    # n <= 5: f in ideal exactly when no size-k cover exists.
    graphs = [
        K2,
        Graph.from_edges(3, [(0, 1), (1, 2)]),
        Graph.from_edges(4, [(0, 1), (2, 3)]),
        K13,
        Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)]),
    ]
    for g in graphs:
        for k in range(g.n + 1):
            inp, ideal, _ = build_vc_instance(g, k, tight=True)
            member = is_member_brute(inline_forms(inp), ideal)
            assert member == (not has_vertex_cover_brute(g, k))


def test_vc_tight_matches_untight():
    g = blowup_graph(K2, [2, 3])
    for k in range(g.n + 1):
        a = vertex_cover_lowrank(g, k, 20, random.Random(7), tight=False)
        b = vertex_cover_lowrank(g, k, 20, random.Random(7), tight=True)
        assert a == b == has_vertex_cover_brute(g, k)


def test_vc_matches_brute_on_low_rank_family():
    rng = random.Random(4)
    fams = [
        C4,
        K13,
        blowup_graph(K2, [2, 2]),
        blowup_graph(Graph.from_edges(3, [(0, 1), (1, 2)]), [2, 1, 2]),
    ]
    for g in fams:
        assert g.adjacency().rank() <= 3
        for k in range(g.n + 1):
            got = vertex_cover_lowrank(g, k, 20, rng)
            assert got == has_vertex_cover_brute(g, k)
