"""Condensed oracle-equivalence suite behind `unideal selftest`.

A quick, seeded version of the checks the full pytest suite runs at scale:
every fast path is compared against its independent brute-force oracle.
Returns a list of failure descriptions; empty means healthy.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .apps import Graph, has_vertex_cover_brute, permanent_lowrank, ryser_permanent, vertex_cover_lowrank
from .circuits import CircuitBuilder, expand, syntactic_degree
from .division import UnivariateIdeal, divide
from .hadamard import PowerIdealSpec, membership_powers
from .linalg import LinearForm, Matrix
from .lowrank import LowRankInput, inline_forms, rem_eval
from .poly import SparsePoly, UnivariatePoly

__all__ = ["run_selftest"]

F = Fraction


def _random_outer(rng, r, steps=4):
    b = CircuitBuilder(r)
    ids = [b.input(i) for i in range(r)] + [b.const(F(rng.randint(-3, 3)))]
    for _ in range(steps):
        x, y = rng.choice(ids), rng.choice(ids)
        ids.append(b.add(x, y) if rng.random() < 0.6 else b.mul(x, y))
    return b.build(ids[-1])


def _random_ideal(rng, n, max_deg):
    gens = []
    for i in range(n):
        d = rng.randint(1, max_deg)
        coeffs = [F(rng.randint(-3, 3)) for _ in range(d)] + [F(rng.choice([1, -1, 2]))]
        gens.append((i, UnivariatePoly(coeffs)))
    return UnivariateIdeal(tuple(gens))


def run_selftest(seed: int = 0) -> list:
    rng = random.Random(seed)
    failures = []

    # remainder evaluation vs expand-and-divide
    for t in range(25):
        n, r = rng.randint(1, 5), rng.randint(1, 3)
        outer = _random_outer(rng, r)
        forms = tuple(
            LinearForm(tuple(F(rng.randint(-2, 2)) for _ in range(n))) for _ in range(r)
        )
        inp = LowRankInput(outer, forms, max(syntactic_degree(outer), 1))
        ideal = _random_ideal(rng, n, 3)
        alpha = [F(rng.randint(-4, 4)) for _ in range(n)]
        want = divide(expand(inline_forms(inp)), ideal).evaluate(alpha)
        got = rem_eval(inp, ideal, alpha)
        if got != want:
            failures.append(f"rem_eval mismatch on instance {t}: {got} != {want}")

    # permanent vs ryser on random rank-2 matrices
    for t in range(10):
        n = rng.randint(2, 6)
        u = [[F(rng.randint(-2, 2)) for _ in range(n)] for _ in range(2)]
        v = [[F(rng.randint(-2, 2)) for _ in range(n)] for _ in range(2)]
        a = Matrix([[sum(u[s][i] * v[s][j] for s in range(2)) for j in range(n)] for i in range(n)])
        if permanent_lowrank(a) != ryser_permanent(a):
            failures.append(f"permanent mismatch on instance {t}")

    # power-ideal membership vs monomial brute force
    for t in range(10):
        n = rng.randint(1, 4)
        b = CircuitBuilder(n)
        ids = [b.input(i) for i in range(n)] + [b.const(F(rng.randint(-2, 2)))]
        for _ in range(4):
            x, y = rng.choice(ids), rng.choice(ids)
            ids.append(b.add(x, y) if rng.random() < 0.6 else b.mul(x, y))
        c = b.build(ids[-1])
        k = syntactic_degree(c)
        if k > 4:
            continue
        exps = tuple(rng.randint(1, 3) for _ in range(n))
        f = expand(c)
        want = not all(any(e[i] >= exps[i] for i in range(n)) for e in f.terms)
        got = membership_powers(c, PowerIdealSpec(exps, k), rng=random.Random(seed + t))
        if got != want:
            failures.append(f"power membership mismatch on instance {t}")

    # division properties
    for t in range(15):
        n = rng.randint(1, 4)
        ideal = _random_ideal(rng, n, 3)
        terms = {
            tuple(rng.randint(0, 4) for _ in range(n)): F(rng.randint(-5, 5))
            for _ in range(rng.randint(1, 6))
        }
        f = SparsePoly(n, terms)
        r1 = divide(f, ideal)
        perm = list(ideal.generators)
        rng.shuffle(perm)
        r2 = divide(f, UnivariateIdeal(tuple(sorted(perm))))
        if r1 != r2 or divide(r1, ideal) != r1:
            failures.append(f"division property violated on instance {t}")
        for var, p in ideal.generators:
            if r1.deg_in(var) >= p.degree():
                failures.append(f"degree contract violated on instance {t}")

    # vertex cover on a couple of micro graphs
    c4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    for g, name in ((c4, "C4"), (star, "K13")):
        for k in range(g.n + 1):
            got = vertex_cover_lowrank(g, k, 20, random.Random(seed + k))
            if got != has_vertex_cover_brute(g, k):
                failures.append(f"vertex cover mismatch on {name} k={k}")

    return failures
