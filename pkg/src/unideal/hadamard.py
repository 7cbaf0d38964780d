"""Randomized membership test for power ideals <x_1^e_1, ..., x_n^e_n>.

A polynomial avoids the ideal exactly when it carries a monomial x^f with
f_i < e_i for every i.  Writing m = sum(e_i - 1), the degree-j survivors are
the monomials of the elementary symmetric polynomial S_{m,j} after each of the
e_i - 1 placeholder copies of x_i is renamed back to x_i.  The test therefore
builds, per degree j <= deg(f), a diagonal circuit D_j that is positively
weakly equivalent to that target (random colorings cover each candidate
monomial with known probability; Fischer's identity turns each coloring's
product of affine forms into explicit j-th powers), and checks whether the
scaled Hadamard product f o^s D_j vanishes.

The scaled Hadamard product against one power summand has a closed form:

    (f o^s c * l^j)(b) = c * j! * f_j(l_1 b_1, ..., l_n b_n)

with f_j the degree-j homogeneous component of f, because the coefficient of
a monomial x^m in l^j is (j!/m!) * prod l_i^(m_i) and the scaling by m!
cancels the multinomial denominator.  Summing over summands gives
`scaled_hadamard_eval` with poly(n, deg) memory.

Evaluations run modulo fresh random 64-bit primes so that circuits over the
integers whose values are doubly exponential stay cheap; a nonzero value
modulo any prime certifies nonmembership, so that side of the answer is never
wrong.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .circuits import (
    Circuit,
    DiagonalCircuit,
    homogeneous_part_eval,
    power_decompose_product,
    syntactic_degree,
)
from .division import UnivariateIdeal
from .fields import GF, field_of, random_prime
from .linalg import LinearForm
from .poly import UnivariatePoly

__all__ = [
    "PowerIdealSpec",
    "scaled_hadamard_eval",
    "build_detection_circuit",
    "coverage_trials",
    "coverage_failure_bound",
    "membership_powers",
]


@dataclass(frozen=True)
class PowerIdealSpec:
    """Exponent vector of the ideal plus the degree parameter of the test."""

    exponents: tuple
    k: int

    def __post_init__(self):
        if any(e < 1 for e in self.exponents):
            raise ValueError("exponents must be >= 1")
        if self.k < 0:
            raise ValueError("negative degree parameter")

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def m(self) -> int:
        return sum(e - 1 for e in self.exponents)

    def to_ideal(self, field) -> UnivariateIdeal:
        gens = []
        for i, e in enumerate(self.exponents):
            coeffs = [field.zero] * e + [field.one]
            gens.append((i, UnivariatePoly(coeffs)))
        return UnivariateIdeal(tuple(gens))


def scaled_hadamard_eval(c: Circuit, d: DiagonalCircuit, point):
    """(f o^s D)(point) for f computed by `c`, via the closed per-summand form."""
    if d.n != c.n:
        raise ValueError("variable count mismatch between circuit and diagonal circuit")
    k = d.degree
    deg = max(syntactic_degree(c), k)
    kfact = math.factorial(k)
    total = None
    for coef, form in d.summands:
        scaled = [l * b for l, b in zip(form.coeffs, point)]
        hk = homogeneous_part_eval(c, k, deg, scaled)
        term = coef * kfact * hk
        total = term if total is None else total + term
    if total is None:
        return _zero_like(point)
    return total


def _zero_like(point):
    if len(point):
        return field_of(point[0]).zero
    return Fraction(0)


def _color_count(k: int) -> int:
    # ceil(1.5 k); more colors never hurt coverage.
    return (3 * k + 1) // 2


def _cover_probability(k: int) -> Fraction:
    """Chance one random coloring assigns k fixed items distinct colors."""
    kk = _color_count(k)
    p = Fraction(1)
    for i in range(k):
        p *= Fraction(kk - i, kk)
    return p


def coverage_trials(k: int) -> int:
    """Colorings needed so a fixed degree-k monomial is missed w.p. <= 2^-k."""
    if k < 1:
        return 1
    return math.ceil(4 * k * math.log(2) / float(_cover_probability(k)))


def coverage_failure_bound(k: int, m: int, trials: int) -> Fraction:
    """Union bound: P(some candidate monomial uncovered by all colorings)."""
    if k < 1:
        return Fraction(0)
    miss = (1 - _cover_probability(k)) ** trials
    return math.comb(m, k) * miss


def build_detection_circuit(spec: PowerIdealSpec, trials: int, rng: random.Random) -> DiagonalCircuit:
    """Sum of per-coloring diagonal circuits covering the surviving monomials.

    Every monomial the output carries survives the ideal, and its coefficient
    is positive whenever some coloring covers it, so there is no cancellation
    across colorings.  The fan-in is exactly trials * 2^(ceil(1.5k) - 1).
    """
    n = spec.n
    k = spec.k
    if k == 0:
        return DiagonalCircuit(n, 0, ((Fraction(1), LinearForm((Fraction(0),) * n)),))
    if k > spec.m:
        raise ValueError("degree parameter exceeds the number of placeholder copies")
    owners = [i for i, e in enumerate(spec.exponents) for _ in range(e - 1)]
    kk = _color_count(k)
    summands = []
    for _ in range(trials):
        counts = [[0] * n for _ in range(kk)]
        for owner in owners:
            counts[rng.randrange(kk)][owner] += 1
        forms = [
            LinearForm(tuple(Fraction(c) for c in counts[j]), Fraction(1))
            for j in range(kk)
        ]
        summands.extend(power_decompose_product(forms, k).summands)
    return DiagonalCircuit(n, k, tuple(summands))


def membership_powers(
    c: Circuit,
    spec: PowerIdealSpec,
    trials: int | None = None,
    zt_trials: int = 1,
    rng: random.Random | None = None,
    prime_bits: int = 64,
    failure_budget: int = 20,
) -> bool:
    """True means f is certainly NOT in <x_i^e_i>; False means "in ideal".

    Sweeps every degree j = 0..k, since a survivor monomial may have degree
    below the circuit's degree.  "Not in ideal" answers are always correct
    (a value nonzero modulo a prime is nonzero).  A wrong "in ideal" needs a
    coverage failure, an unlucky zero-test point, or a run of bad primes; with
    trials=None each coloring count is sized so the per-degree coverage
    failure is at most 2^-failure_budget, and the other two terms are far
    below that at 64-bit primes.
    """
    rng = rng or random.Random(0)
    k = spec.k
    n = spec.n
    for j in range(min(k, spec.m) + 1):
        if j == 0:
            dj = build_detection_circuit(PowerIdealSpec(spec.exponents, 0), 1, rng)
        else:
            t = trials if trials is not None else _auto_trials(j, spec.m, failure_budget)
            dj = build_detection_circuit(PowerIdealSpec(spec.exponents, j), t, rng)
        for _ in range(zt_trials):
            for _attempt in range(4):  # fresh prime redraws on a zero result
                p = random_prime(prime_bits, rng)
                field = GF(p)
                point = [field(rng.randrange(1, p)) for _ in range(n)]
                if scaled_hadamard_eval(c, dj, point):
                    return True
    return False


def _auto_trials(k: int, m: int, budget: int) -> int:
    """Colorings so that binom(m,k) * (1-P)^t <= 2^-budget."""
    p = float(_cover_probability(k))
    need = (budget * math.log(2) + math.log(max(math.comb(m, k), 1))) / p
    return max(coverage_trials(k), math.ceil(need), 1)
