import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from unideal.fields import GF, QQ, FieldMismatch, Mod, field_of, is_probable_prime, random_prime

F = Fraction


def test_rational_normalization_is_stdlib():
    x = F(2, -4)
    assert x.numerator == -1 and x.denominator == 2


def test_mod_normalized_into_range():
    p = 13
    assert Mod(-1, p).value == 12
    assert (Mod(7, p) + Mod(9, p)).value == 3
    assert (Mod(3, p) / Mod(5, p) * Mod(5, p)).value == 3


def test_mismatched_moduli_rejected():
    with pytest.raises(FieldMismatch):
        Mod(1, 13) + Mod(1, 17)
    with pytest.raises(FieldMismatch):
        Mod(1, 13) * Fraction(1, 13)


def test_gf_rejects_composite():
    with pytest.raises(ValueError):
        GF(91)  # 7 * 13


def test_field_axioms_spot_check():
    rng = random.Random(0)
    g = GF(10007)
    for _ in range(1000):
        a, b, c = (rng.randint(-50, 50) for _ in range(3))
        fa, fb, fc = F(a), F(b, 7), F(c, 3)
        assert (fa + fb) * fc == fa * fc + fb * fc
        ma, mb, mc = g(a), g(b), g(c)
        assert (ma + mb) * mc == ma * mc + mb * mc
        assert ma * (mb * mc) == (ma * mb) * mc


def test_fraction_lifting_into_prime_field():
    g = GF(7)
    assert g(F(1, 2)) == g(4)  # 2 * 4 = 8 = 1 mod 7
    assert Mod(1, 7) + F(1, 2) == Mod(5, 7)
    with pytest.raises(FieldMismatch):
        g(F(1, 7))


def test_primality():
    assert is_probable_prime(2) and is_probable_prime(10007)
    assert not is_probable_prime(1) and not is_probable_prime(10005)
    assert is_probable_prime((1 << 61) - 1)  # Mersenne prime
    assert not is_probable_prime((1 << 67) - 1)  # classic composite Mersenne


def test_random_prime_has_requested_bits():
    rng = random.Random(3)
    for bits in (32, 48, 64):
        p = random_prime(bits, rng)
        assert p.bit_length() == bits
        assert is_probable_prime(p)


def test_field_of():
    assert field_of(F(1)) is QQ
    assert field_of(Mod(1, 13)) == GF(13)


@given(st.integers(-30, 30), st.integers(-30, 30))
def test_mod_matches_integer_arithmetic(a, b):
    p = 101
    assert (Mod(a, p) + Mod(b, p)).value == (a + b) % p
    assert (Mod(a, p) * Mod(b, p)).value == (a * b) % p

def test_pipeline_mod_p_consistency():
    # A rational result, reduced mod p, equals the prime-field pipeline.
    from helpers import lift_ideal, random_ideal, random_sparse
    from unideal.division import divide
    from unideal.poly import SparsePoly

    rng = random.Random(5)
    g = GF(10007)
    for _ in range(30):
        n = rng.randint(1, 4)
        ideal = random_ideal(rng, n, 3)
        f = random_sparse(rng, n)
        rq = divide(f, ideal)
        rp = divide(f.map_coeffs(g), lift_ideal(ideal, g))
        assert rq.map_coeffs(g) == rp
