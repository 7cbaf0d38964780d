import math
import random
from fractions import Fraction

import pytest

from helpers import brute_power_membership, literal_scaled_hadamard, random_circuit_capped_degree
from unideal.circuits import CircuitBuilder, DiagonalCircuit, expand, syntactic_degree
from unideal.hadamard import (
    PowerIdealSpec,
    build_detection_circuit,
    coverage_failure_bound,
    coverage_trials,
    membership_powers,
    scaled_hadamard_eval,
)
from unideal.linalg import LinearForm

F = Fraction


def test_scaled_hadamard_hand_example():
    # f = x1 x2 against D = (x1 + x2)^2: the definition gives 2 x1 x2.
    b = CircuitBuilder(2)
    c = b.build(b.mul(b.input(0), b.input(1)))
    d = DiagonalCircuit(2, 2, ((F(1), LinearForm((F(1), F(1)))),))
    assert scaled_hadamard_eval(c, d, [F(1), F(1)]) == 2
    assert scaled_hadamard_eval(c, d, [F(2), F(3)]) == 2 * 2 * 3


def test_scaled_hadamard_disjoint_support():
    b = CircuitBuilder(2)
    c = b.build(b.mul(b.input(0), b.input(0)))  # x1^2
    d = DiagonalCircuit(2, 2, ((F(1), LinearForm((F(0), F(1)))),))  # x2^2
    assert scaled_hadamard_eval(c, d, [F(5), F(7)]) == 0


def test_scaled_hadamard_full_power_sum():
    # homogeneous f of degree k against (sum x_i)^k equals k! f(b)
    b = CircuitBuilder(3)
    c = b.build(b.mul(b.input(0), b.input(1), b.input(2)))
    d = DiagonalCircuit(3, 3, ((F(1), LinearForm((F(1), F(1), F(1)))),))
    pt = [F(2), F(3), F(5)]
    assert scaled_hadamard_eval(c, d, pt) == math.factorial(3) * 30


def test_scaled_hadamard_matches_literal_definition():
    rng = random.Random(0)
    for _ in range(40):
        n, k = rng.randint(1, 4), rng.randint(0, 3)
        c = random_circuit_capped_degree(rng, n, 4)
        summands = tuple(
            (F(rng.randint(-3, 3)), LinearForm(tuple(F(rng.randint(-2, 2)) for _ in range(n))))
            for _ in range(rng.randint(1, 3))
        )
        d = DiagonalCircuit(n, k, summands)
        pt = [F(rng.randint(1, 6)) for _ in range(n)]
        assert scaled_hadamard_eval(c, d, pt) == literal_scaled_hadamard(expand(c), d.to_sparse(), pt)


def test_coverage_trials_formula():
    # k = 3: ceil(1.5k) = 5 colors, cover probability (5*4*3)/5^3 = 12/25
    assert coverage_trials(3) == math.ceil(4 * 3 * math.log(2) / (12 / 25))
    assert coverage_trials(1) == math.ceil(4 * math.log(2))  # probability 1


def test_coverage_monte_carlo():
    # k = 3, m = 6: fraction of covered 3-subsets across random coloring
    # batches should meet the 1 - 2^-k target with slack.
    import itertools

    rng = random.Random(1)
    k, m = 3, 6
    t = coverage_trials(k)
    kk = (3 * k + 1) // 2
    misses = 0
    runs = 1000
    for _ in range(runs):
        target = rng.sample(range(m), k)
        covered = False
        for _ in range(t):
            colors = {z: rng.randrange(kk) for z in target}
            if len(set(colors.values())) == k:
                covered = True
                break
        misses += not covered
    assert misses / runs <= 2 ** -k + 0.05


def test_detection_circuit_k0():
    d = build_detection_circuit(PowerIdealSpec((2, 2), 0), 5, random.Random(0))
    assert d.degree == 0 and d.fan_in == 1
    assert d.evaluate([F(9), F(9)]) == 1


def test_detection_circuit_covers_multilinear():
    spec = PowerIdealSpec((2, 2), 2)
    d = build_detection_circuit(spec, 8, random.Random(2))
    sp = d.to_sparse()
    assert sp.terms.get((1, 1), F(0)) > 0
    assert d.fan_in == 8 * 2 ** ((3 * 2 + 1) // 2 - 1)


def test_detection_circuit_support_restriction():
    # e = (3, 1): both placeholder copies belong to x1; x1 x2 can never appear.
    spec = PowerIdealSpec((3, 1), 2)
    for seed in range(6):
        d = build_detection_circuit(spec, 8, random.Random(seed))
        sp = d.to_sparse()
        assert sp.terms.get((1, 1), F(0)) == 0


def test_detection_circuit_nonnegative_no_cancellation():
    rng = random.Random(3)
    for _ in range(12):
        n = rng.randint(1, 4)
        exps = tuple(rng.randint(1, 3) for _ in range(n))
        m = sum(e - 1 for e in exps)
        if m > 8:
            continue
        k = rng.randint(1, min(4, m) if m else 1)
        if k > m:
            continue
        spec = PowerIdealSpec(exps, k)
        d = build_detection_circuit(spec, rng.randint(1, 6), rng)
        sp = d.to_sparse()
        assert all(c > 0 for c in sp.terms.values())
        # support stays inside the survivors of the ideal
        for e in sp.terms:
            assert sum(e) == k
            assert all(e[i] <= exps[i] - 1 for i in range(n))


def test_fan_in_formula_exact():
    rng = random.Random(4)
    for k in range(1, 5):
        for trials in (1, 3, 7):
            spec = PowerIdealSpec((2,) * (2 * k), k)
            d = build_detection_circuit(spec, trials, rng)
            kk = (3 * k + 1) // 2
            assert d.fan_in == trials * 2 ** (kk - 1)


def test_membership_powers_trivial_cases():
    b = CircuitBuilder(2)
    c = b.build(b.mul(b.input(0), b.input(1)))
    assert membership_powers(c, PowerIdealSpec((2, 2), 2), rng=random.Random(5))
    b2 = CircuitBuilder(2)
    c2 = b2.build(b2.mul(b2.input(0), b2.input(0)))
    assert not membership_powers(c2, PowerIdealSpec((2, 2), 2), rng=random.Random(6))


def test_membership_powers_low_degree_survivor():
    # A survivor of degree below k must still be found.
    b = CircuitBuilder(2)
    x1, x2 = b.input(0), b.input(1)
    c = b.build(b.add(x1, b.mul(x1, x1, x2)))
    assert membership_powers(c, PowerIdealSpec((2, 3), 3), rng=random.Random(7))


def test_membership_powers_against_brute():
    rng = random.Random(8)
    checked = 0
    for t in range(60):
        n = rng.randint(1, 6)
        c = random_circuit_capped_degree(rng, n, 4)
        k = syntactic_degree(c)
        exps = tuple(rng.randint(1, 3) for _ in range(n))
        got = membership_powers(c, PowerIdealSpec(exps, k), rng=random.Random(1000 + t))
        want = not brute_power_membership(c, exps)
        assert got == want
        checked += 1
    assert checked == 60


def test_membership_powers_multilinear_detection():
    # e_i = 2 everywhere reduces to multilinear monomial detection.
    rng = random.Random(9)
    for t in range(25):
        n = rng.randint(1, 8)
        c = random_circuit_capped_degree(rng, n, 4)
        k = syntactic_degree(c)
        exps = (2,) * n
        got = membership_powers(c, PowerIdealSpec(exps, k), rng=random.Random(2000 + t))
        f = expand(c)
        has_multilinear = any(all(x <= 1 for x in e) for e in f.terms)
        assert got == has_multilinear


def test_coverage_failure_bound_shrinks():
    assert coverage_failure_bound(3, 6, 40) < coverage_failure_bound(3, 6, 10)
    assert coverage_failure_bound(2, 4, 200) < Fraction(1, 2**20)
