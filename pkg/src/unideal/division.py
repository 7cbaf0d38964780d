"""Division modulo ideals generated by univariate polynomials.

Because each generator involves a single distinct variable, the leading
monomials are pairwise coprime, the generators form a Groebner basis, and the
remainder is unique no matter in which order the variables are reduced.  The
reducer processes variables in ascending index order and caches the table of
x^e mod p(x) per variable, which is all the structure the rest of the package
needs: `divide` is the brute-force oracle that every fast path is tested
against.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .circuits import Circuit, expand
from .fields import QQ, Rationals
from .poly import CapExceeded, SparsePoly, UnivariatePoly

__all__ = [
    "UnivariateIdeal",
    "power_table",
    "divide",
    "divide_with_quotients",
    "is_member_brute",
    "random_zero_test",
]


@dataclass(frozen=True)
class UnivariateIdeal:
    """<p_1(x_{v_1}), ..., p_m(x_{v_m})> with at most one generator per variable."""

    generators: tuple  # of (var index, UnivariatePoly)

    def __post_init__(self):
        seen = set()
        for var, p in self.generators:
            if var < 0:
                raise ValueError("negative variable index")
            if var in seen:
                raise ValueError(f"two generators for variable {var}")
            if p.degree() < 1:
                raise ValueError("generators must be nonconstant")
            seen.add(var)

    @classmethod
    def from_dict(cls, gens: dict) -> "UnivariateIdeal":
        return cls(tuple(sorted(gens.items())))

    def generator_for(self, var: int):
        for v, p in self.generators:
            if v == var:
                return p
        return None

    def vars(self):
        return [v for v, _ in self.generators]

    def restrict_shift(self, s: int) -> "UnivariateIdeal":
        """Generators for variables >= s, reindexed down by s."""
        return UnivariateIdeal(tuple((v - s, p) for v, p in self.generators if v >= s))

    def subideal(self, keep) -> "UnivariateIdeal":
        keep = set(keep)
        return UnivariateIdeal(tuple((v, p) for v, p in self.generators if v in keep))


def power_table(p: UnivariatePoly, max_e: int):
    """table[e] = x^e mod p(x) for e = 0..max_e, each of degree < deg(p)."""
    if p.degree() < 1:
        raise ValueError("modulus must be nonconstant")
    one = p.lc() / p.lc()
    table = [UnivariatePoly([one])]
    inv_lead = 1 / p.lc()
    d = p.degree()
    for _ in range(max_e):
        prev = table[-1]
        shifted = list((one - one,) + prev.coeffs)
        if len(shifted) == d + 1:
            c = shifted[-1] * inv_lead
            shifted = [a - c * b for a, b in zip(shifted[:-1], p.coeffs[:-1])]
        table.append(UnivariatePoly(shifted))
    return table


class _Reducer:
    """Caches power tables per variable for repeated reductions."""

    def __init__(self, ideal: UnivariateIdeal):
        self.gens = dict(ideal.generators)
        self.tables: dict[int, list] = {}

    def _table(self, var: int, need: int):
        p = self.gens[var]
        t = self.tables.get(var)
        if t is None or len(t) <= need:
            t = self.tables[var] = power_table(p, need)
        return t

    def reduce(self, f: SparsePoly) -> SparsePoly:
        for var in sorted(self.gens):
            if var >= f.n:
                continue
            p = self.gens[var]
            d = p.degree()
            top = f.deg_in(var)
            if top < d:
                continue
            table = self._table(var, top)
            out: dict = {}
            for e, c in f.terms.items():
                if e[var] < d:
                    _acc(out, e, c)
                else:
                    for j, rc in enumerate(table[e[var]].coeffs):
                        if rc:
                            e2 = e[:var] + (j,) + e[var + 1 :]
                            _acc(out, e2, c * rc)
            g = SparsePoly.__new__(SparsePoly)
            g.n, g.terms = f.n, out
            f = g
        return f


def _acc(out: dict, e, c):
    acc = out.get(e)
    new = c if acc is None else acc + c
    if new:
        out[e] = new
    elif acc is not None:
        del out[e]


def divide(f: SparsePoly, ideal: UnivariateIdeal) -> SparsePoly:
    """The unique remainder R with f = R (mod ideal) and deg_{x_i} R < deg p_i."""
    return _Reducer(ideal).reduce(f)


def divide_with_quotients(f: SparsePoly, ideal: UnivariateIdeal):
    """Remainder plus explicit quotients: f == sum_i h_i * p_i(x_i) + R.

    Used by the certifier, which needs the actual coefficients of the h_i.
    """
    n = f.n
    quotients: dict[int, SparsePoly] = {}
    for var, p in sorted(ideal.generators):
        if var >= n:
            continue
        d = p.degree()
        top = f.deg_in(var)
        if top < d:
            continue
        rem_table = power_table(p, top)
        quo_table = _quotient_table(p, top)
        out: dict = {}
        hq: dict = {}
        for e, c in f.terms.items():
            exp = e[var]
            if exp < d:
                _acc(out, e, c)
                continue
            for j, rc in enumerate(rem_table[exp].coeffs):
                if rc:
                    _acc(out, e[:var] + (j,) + e[var + 1 :], c * rc)
            for j, qc in enumerate(quo_table[exp].coeffs):
                if qc:
                    _acc(hq, e[:var] + (j,) + e[var + 1 :], c * qc)
        g = SparsePoly.__new__(SparsePoly)
        g.n, g.terms = n, out
        f = g
        h = SparsePoly.__new__(SparsePoly)
        h.n, h.terms = n, hq
        if h:
            quotients[var] = quotients.get(var, SparsePoly.zero(n)) + h
    return f, quotients


def _quotient_table(p: UnivariatePoly, max_e: int):
    """q_e with x^e = q_e(x) p(x) + (x^e mod p)."""
    one = p.lc() / p.lc()
    zero = one - one
    d = p.degree()
    inv_lead = 1 / p.lc()
    rems = [UnivariatePoly([one])]
    quos = [UnivariatePoly([])]
    for _ in range(max_e):
        shifted = list((zero,) + rems[-1].coeffs)
        q_next = UnivariatePoly((zero,) + quos[-1].coeffs)
        if len(shifted) == d + 1:
            c = shifted[-1] * inv_lead
            shifted = [a - c * b for a, b in zip(shifted[:-1], p.coeffs[:-1])]
            q_next = q_next + UnivariatePoly([c])
        rems.append(UnivariatePoly(shifted))
        quos.append(q_next)
    return quos


def is_member_brute(c: Circuit, ideal: UnivariateIdeal, monomial_cap: int = 10**6) -> bool:
    """Expand-and-divide membership oracle; CapExceeded when too large."""
    return divide(expand(c, monomial_cap), ideal).is_zero()


def random_zero_test(r_eval, n: int, deg_bound: int, trials: int, rng: random.Random, field=QQ) -> bool:
    """Schwartz-Zippel zero test; True means a nonzero value was found.

    Points are drawn from {1..S} with S = max(1, 100 * deg_bound), so each
    trial misses a nonzero polynomial with probability at most deg_bound / S.
    """
    size = max(1, 100 * deg_bound)
    if not isinstance(field, Rationals) and field.p <= size:
        raise ValueError(f"field GF({field.p}) smaller than sample set of size {size}")
    for _ in range(trials):
        point = [field(rng.randint(1, size)) for _ in range(n)]
        if r_eval(point):
            return True
    return False
