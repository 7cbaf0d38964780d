"""Shared instance generators and independent oracles for the test suite.

Oracles here deliberately avoid the code paths they check: membership goes
through full expansion and monomial inspection, permanents through Ryser or
direct permutation sums, vertex cover through subset enumeration.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from unideal.circuits import Circuit, CircuitBuilder, expand, syntactic_degree
from unideal.division import UnivariateIdeal
from unideal.fields import QQ
from unideal.linalg import LinearForm, Matrix
from unideal.lowrank import LowRankInput
from unideal.poly import SparsePoly, UnivariatePoly

F = Fraction


def random_circuit(rng: random.Random, n: int, steps: int = 4, max_const: int = 3) -> Circuit:
    b = CircuitBuilder(n)
    ids = [b.input(i) for i in range(n)] + [b.const(F(rng.randint(-max_const, max_const)))]
    for _ in range(steps):
        x, y = rng.choice(ids), rng.choice(ids)
        ids.append(b.add(x, y) if rng.random() < 0.6 else b.mul(x, y))
    return b.build(ids[-1])


def random_circuit_capped_degree(rng: random.Random, n: int, max_deg: int, steps: int = 5) -> Circuit:
    """Random DAG whose syntactic degree never exceeds max_deg."""
    b = CircuitBuilder(n)
    ids = [b.input(i) for i in range(n)] + [b.const(F(rng.randint(-3, 3)))]
    degs = [1] * n + [0]
    for _ in range(steps):
        i, j = rng.randrange(len(ids)), rng.randrange(len(ids))
        if rng.random() < 0.5 and degs[i] + degs[j] <= max_deg:
            ids.append(b.mul(ids[i], ids[j]))
            degs.append(degs[i] + degs[j])
        else:
            ids.append(b.add(ids[i], ids[j]))
            degs.append(max(degs[i], degs[j]))
    return b.build(ids[-1])


def random_ideal(rng: random.Random, n: int, max_deg: int, field=QQ) -> UnivariateIdeal:
    gens = []
    for i in range(n):
        d = rng.randint(1, max_deg)
        coeffs = [field(rng.randint(-3, 3)) for _ in range(d)] + [field(rng.choice([1, -1, 2]))]
        gens.append((i, UnivariatePoly(coeffs)))
    return UnivariateIdeal(tuple(gens))


def random_forms(rng: random.Random, r: int, n: int, field=QQ, lo: int = -2, hi: int = 2):
    return tuple(
        LinearForm(tuple(field(rng.randint(lo, hi)) for _ in range(n))) for _ in range(r)
    )


def random_sparse(rng: random.Random, n: int, max_exp: int = 4, terms: int = 5) -> SparsePoly:
    return SparsePoly(
        n,
        {
            tuple(rng.randint(0, max_exp) for _ in range(n)): F(rng.randint(-5, 5))
            for _ in range(rng.randint(1, terms))
        },
    )


def lift_ideal(ideal: UnivariateIdeal, field) -> UnivariateIdeal:
    return UnivariateIdeal(
        tuple((v, UnivariatePoly([field(c) for c in p.coeffs])) for v, p in ideal.generators)
    )


def lift_forms(forms, field):
    return tuple(
        LinearForm(tuple(field(c) for c in f.coeffs), field(f.const)) for f in forms
    )


def lift_circuit(c: Circuit, field) -> Circuit:
    from unideal.circuits import Add, Const, Input, Linear, Mul

    nodes = []
    for node in c.nodes:
        if isinstance(node, Const):
            nodes.append(Const(field(node.value)))
        elif isinstance(node, Linear):
            nodes.append(Linear(LinearForm(tuple(field(x) for x in node.form.coeffs), field(node.form.const))))
        else:
            nodes.append(node)
    return Circuit(c.n, nodes, c.out)


def ideal_power_exponents(ideal: UnivariateIdeal):
    """Exponent list when every generator is a pure power x^e, else None."""
    out = []
    for _, p in sorted(ideal.generators):
        if any(c for c in p.coeffs[:-1]) or p.lc() != 1:
            return None
        out.append(p.degree())
    return tuple(out)


def brute_power_membership(c: Circuit, exponents) -> bool:
    """f in <x_i^e_i> iff every monomial has some exponent at or past e_i."""
    f = expand(c)
    return all(any(e[i] >= exponents[i] for i in range(len(exponents))) for e in f.terms)


def literal_scaled_hadamard(fp: SparsePoly, gp: SparsePoly, point):
    """The defining sum m! [m]f [m]g m, computed on full expansions."""
    total = F(0)
    for e, cf in fp.terms.items():
        cg = gp.terms.get(e)
        if cg:
            mfact = 1
            for x in e:
                mfact *= math.factorial(x)
            v = F(mfact) * cf * cg
            for i, x in enumerate(e):
                v *= point[i] ** x
            total += v
    return total


def permutation_permanent(a: Matrix):
    """Direct sum over permutations; the second independent permanent oracle."""
    import itertools

    n = a.nrows
    total = F(0)
    for perm in itertools.permutations(range(n)):
        prod = F(1)
        for i, j in enumerate(perm):
            prod *= a[i, j]
        total += prod
    return total


def random_low_rank_matrix(rng: random.Random, n: int, r: int) -> Matrix:
    u = [[F(rng.randint(-2, 2)) for _ in range(n)] for _ in range(r)]
    v = [[F(rng.randint(-2, 2)) for _ in range(n)] for _ in range(r)]
    return Matrix(
        [[sum(u[t][i] * v[t][j] for t in range(r)) for j in range(n)] for i in range(n)]
    )


def random_lowrank_instance(rng: random.Random, n_max=6, r_max=3, d_max=4):
    """Instance tuple for remainder-oracle equivalence tests, integer data."""
    n = rng.randint(1, n_max)
    r = rng.randint(1, r_max)
    outer = random_circuit_capped_degree(rng, r, d_max)
    forms = random_forms(rng, r, n)
    d = max(syntactic_degree(outer), 1)
    inp = LowRankInput(outer, forms, d)
    ideal = random_ideal(rng, n, d_max)
    alpha = [F(rng.randint(-4, 4)) for _ in range(n)]
    return inp, ideal, alpha
