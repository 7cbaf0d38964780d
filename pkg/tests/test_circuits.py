import math
import random
from fractions import Fraction

import pytest

from helpers import random_circuit, random_circuit_capped_degree
from unideal.circuits import (
    CapExceeded,
    CircuitBuilder,
    DiagonalCircuit,
    eval_mod_random_prime,
    expand,
    homogeneous_part_eval,
    power_decompose_product,
    syntactic_degree,
)
from unideal.fields import GF
from unideal.linalg import LinearForm

F = Fraction


def build_x1_plus_x2_times_x1():
    b = CircuitBuilder(2)
    x1, x2 = b.input(0), b.input(1)
    return b.build(b.mul(b.add(x1, x2), x1))


def test_eval_const():
    b = CircuitBuilder(0)
    c = b.build(b.const(F(5)))
    assert c.evaluate([]) == 5


def test_eval_hand_expansion():
    # (x1 + x2) * x1 at (2, 3): hand expansion x1^2 + x1 x2 = 4 + 6
    c = build_x1_plus_x2_times_x1()
    assert c.evaluate([F(2), F(3)]) == 10


def test_eval_at_zero_gives_constant_term():
    rng = random.Random(1)
    for _ in range(20):
        c = random_circuit(rng, 3)
        assert c.evaluate([F(0)] * 3) == expand(c).coeff((0, 0, 0))


def test_expand_binomial():
    b = CircuitBuilder(2)
    s = b.add(b.input(0), b.input(1))
    c = b.build(b.mul(s, s))
    assert expand(c).terms == {(2, 0): F(1), (1, 1): F(2), (0, 2): F(1)}


def test_expand_eval_agreement():
    rng = random.Random(2)
    for _ in range(25):
        c = random_circuit(rng, rng.randint(1, 4))
        f = expand(c)
        for _ in range(20):
            pt = [F(rng.randint(-5, 5)) for _ in range(c.n)]
            assert f.evaluate(pt) == c.evaluate(pt)


def test_expand_cap():
    b = CircuitBuilder(2)
    s = b.add(b.input(0), b.input(1))
    c = b.build(b.mul(s, s))
    with pytest.raises(CapExceeded):
        expand(c, monomial_cap=1)


def test_eval_mod_random_prime_const_zero():
    b = CircuitBuilder(1)
    c = b.build(b.const(F(0)))
    rng = random.Random(3)
    for _ in range(5):
        v, p = eval_mod_random_prime(c, [1], 32, rng)
        assert v == 0 and p.bit_length() == 32


def test_eval_mod_random_prime_tower():
    # Repeated squaring: x^(2^20) at x = 2 against pow(2, 2^20, p).
    b = CircuitBuilder(1)
    node = b.input(0)
    for _ in range(20):
        node = b.mul(node, node)
    c = b.build(node)
    rng = random.Random(4)
    v, p = eval_mod_random_prime(c, [2], 64, rng)
    assert v == pow(2, 2**20, p)


def test_eval_mod_random_prime_rejects_rationals():
    b = CircuitBuilder(0)
    c = b.build(b.const(F(1, 2)))
    with pytest.raises(ValueError):
        eval_mod_random_prime(c, [], 32, random.Random(0))


def test_eval_mod_false_zero_is_rare():
    # A fixed nonzero value can only vanish mod p when p divides it.
    b = CircuitBuilder(0)
    c = b.build(b.const(F(2**31 + 1)))
    rng = random.Random(5)
    zeros = sum(1 for _ in range(60) if eval_mod_random_prime(c, [], 32, rng)[0] == 0)
    assert zeros <= 1  # value has at most one 32-bit prime divisor


def test_homogeneous_part_linear_slice():
    # f = 1 + x + x^2: degree-1 part at b is b.
    b = CircuitBuilder(1)
    x = b.input(0)
    c = b.build(b.add(b.const(F(1)), x, b.mul(x, x)))
    assert homogeneous_part_eval(c, 1, 2, [F(7)]) == 7
    assert homogeneous_part_eval(c, 0, 2, [F(7)]) == 1
    assert homogeneous_part_eval(c, 5, 2, [F(7)]) == 0


def test_homogeneous_input_is_identity():
    b = CircuitBuilder(2)
    c = b.build(b.mul(b.input(0), b.input(1)))
    pt = [F(3), F(5)]
    assert homogeneous_part_eval(c, 2, 2, pt) == 15


def test_homogeneous_parts_sum_to_eval():
    rng = random.Random(6)
    for _ in range(15):
        c = random_circuit(rng, rng.randint(1, 3))
        d = syntactic_degree(c)
        pt = [F(rng.randint(-3, 3)) for _ in range(c.n)]
        total = sum((homogeneous_part_eval(c, k, d, pt) for k in range(d + 1)), F(0))
        assert total == c.evaluate(pt)


def test_homogeneous_part_small_field_rejected():
    b = CircuitBuilder(1)
    c = b.build(b.input(0))
    g = GF(3)
    with pytest.raises(ValueError):
        homogeneous_part_eval(c, 1, 3, [g(1)])


def test_power_decompose_single_factor():
    dc = power_decompose_product([LinearForm((F(1),), F(1))], 1)
    assert dc.fan_in == 1
    ((coef, form),) = dc.summands
    assert coef == 1 and form.coeffs == (F(1),)


def test_power_decompose_difference_of_squares():
    dc = power_decompose_product([LinearForm((F(1), F(1))), LinearForm((F(1), F(-1)))], 2)
    assert dc.to_sparse().terms == {(2, 0): F(1), (0, 2): F(-1)}


def test_power_decompose_elementary_symmetric():
    forms = [LinearForm((F(1), F(0), F(0)), F(1)),
             LinearForm((F(0), F(1), F(0)), F(1)),
             LinearForm((F(0), F(0), F(1)), F(1))]
    dc = power_decompose_product(forms, 2)
    want = {(1, 1, 0): F(1), (1, 0, 1): F(1), (0, 1, 1): F(1)}
    assert dc.to_sparse().terms == want


def test_power_decompose_matches_homogeneous_extraction():
    rng = random.Random(8)
    for _ in range(20):
        n = rng.randint(1, 3)
        m = rng.randint(1, 4)
        k = rng.randint(0, m)
        forms = [
            LinearForm(tuple(F(rng.randint(-2, 2)) for _ in range(n)), F(rng.randint(-1, 2)))
            for _ in range(m)
        ]
        dc = power_decompose_product(forms, k)
        assert dc.fan_in == 2 ** (m - 1)
        b = CircuitBuilder(n)
        prod = b.build(b.product([b.linear(f) for f in forms]))
        for _ in range(20):
            pt = [F(rng.randint(-4, 4)) for _ in range(n)]
            assert dc.evaluate(pt) == homogeneous_part_eval(prod, k, m, pt)


def test_diagonal_circuit_rejects_affine_summands():
    with pytest.raises(ValueError):
        DiagonalCircuit(1, 2, ((F(1), LinearForm((F(1),), F(1))),))


def test_syntactic_degree_bounds_true_degree():
    rng = random.Random(9)
    for _ in range(20):
        c = random_circuit_capped_degree(rng, 2, 5)
        assert expand(c).degree() <= syntactic_degree(c) <= 5
