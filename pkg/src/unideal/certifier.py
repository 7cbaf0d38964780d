"""Certificates of nonmembership when generators have distinct complex roots.

If every p_i is squarefree, f lies in <p_1(x_1), ..., p_n(x_n)> exactly when
it vanishes on the grid of root tuples.  A nonmembership witness is therefore
a root tuple where f does not vanish, and it can be communicated with finite
precision: the verifier accepts a tuple of Gaussian rationals when (a) each
component is certifiably close to some root of its generator (the residual
test |p_i(a_i)| < 2^-L eps^d, which is sound by the factorized lower bound
|p(z)| >= |lc| * dist^deg) and (b) |f(tuple)| >= 2M, where M is a precomputed
threshold separating members from nonmembers:

    f in I  -> every near-root tuple gives |f| <= eps * B2 <= M,
    f not in I -> some tuple gives |f| >= 3M - eps*(B4 + B2) >= 2M.

B2 bounds sum_i |h_i| * |p_i|/eps via the actual division f = sum h_i p_i + R,
B4 is an explicit Lipschitz bound on R over the root boxes, and 3M = B3 lower
bounds the nonzero grid values of R.  B3 comes from the multiplication
operator of R on Q[x]/I: its characteristic polynomial has exactly the grid
values of R as roots, so a Cauchy-style lower root bound on its deflation is
a valid separation.  All three are exact rationals; magnitudes are compared
squared so the arithmetic never leaves Q.

Root approximation itself is numeric (Durand-Kerner at escalating mpmath
precision) but never trusted: every approximation is certified a posteriori
by the exact residual test.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .circuits import Circuit, expand
from .division import UnivariateIdeal, divide, divide_with_quotients
from .poly import SparsePoly, UnivariatePoly, charpoly, discriminant, poly_gcd
from .linalg import Matrix

__all__ = [
    "NotSquarefree",
    "Undecided",
    "GaussianRational",
    "Certificate",
    "PrecisionBudget",
    "root_magnitude_bounds",
    "separation_bound",
    "approximate_roots",
    "compute_threshold",
    "verify_certificate",
    "search_nonmembership",
]


class NotSquarefree(ValueError):
    """A generator has a repeated root; the distinct-roots method does not apply."""


class Undecided(RuntimeError):
    """A grid value landed strictly between M and 2M (defensive signal)."""


@dataclass(frozen=True)
class GaussianRational:
    """a + b*i with exact rational a, b."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __add__(self, other):
        other = _as_gaussian(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_gaussian(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _as_gaussian(other)
        if other is None:
            return NotImplemented
        return GaussianRational(other.re - self.re, other.im - self.im)

    def __mul__(self, other):
        other = _as_gaussian(other)
        if other is None:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = GaussianRational(Fraction(1))
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def bit_size(self) -> int:
        return sum(
            v.numerator.bit_length() + v.denominator.bit_length()
            for v in (self.re, self.im)
        )


def _as_gaussian(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(Fraction(x))
    return None


@dataclass(frozen=True)
class Certificate:
    """A finite-precision candidate root tuple."""

    values: tuple  # of GaussianRational

    @property
    def n(self) -> int:
        return len(self.values)

    def bit_size(self) -> int:
        return sum(v.bit_size() for v in self.values)


@dataclass(frozen=True)
class PrecisionBudget:
    """Everything the verifier needs: bounds, threshold and approximation radius."""

    L: int
    d: int
    n: int
    eps: Fraction
    M: Fraction
    b2: Fraction = Fraction(0)
    b3: Fraction = Fraction(0)
    b4: Fraction = Fraction(0)

    def __post_init__(self):
        if self.eps <= 0 or self.M <= 0:
            raise ValueError("eps and M must be positive")
        if self.eps * (self.b4 + self.b2) > self.M:
            raise ValueError("eps too large for the decision gap")


def root_magnitude_bounds(p: UnivariatePoly):
    """(lo, hi) with lo <= |root| <= hi for every complex root of p."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    d = p.degree()
    if d == 0:
        return Fraction(0), Fraction(0)
    a = [abs(Fraction(c)) for c in p.coeffs]
    hi = max(Fraction(1), d * max(a) / a[-1])
    if not a[0]:
        lo = Fraction(0)
    else:
        lo = min(Fraction(1), a[0] / sum(a[1:]))
    return lo, hi


def _is_squarefree(p: UnivariatePoly) -> bool:
    return p.degree() >= 1 and poly_gcd(p, p.derivative()).degree() == 0


def _sqrt_lower(x: Fraction) -> Fraction:
    """A positive rational q with q*q <= x (for x > 0)."""
    if x <= 0:
        raise ValueError("need a positive argument")
    num, den = x.numerator, x.denominator
    shift = 0
    while num * (4**shift) < den * den:
        shift += 32
    root = math.isqrt(num * den * 4**shift)
    q = Fraction(root, den * 2**shift)
    return q if q > 0 else Fraction(1, den * 2**shift)


def separation_bound(p: UnivariatePoly) -> Fraction:
    """Rational delta > 0 below the distance of any two distinct roots.

    Mahler's bound sqrt(3 |disc|) * d^-(d+2)/2 * ||p||_2^-(d-1), evaluated as
    an exact rational lower approximation of the square root.  Raises
    NotSquarefree when gcd(p, p') is nonconstant.
    """
    if not _is_squarefree(p):
        raise NotSquarefree("polynomial has a repeated root")
    d = p.degree()
    if d == 1:
        return Fraction(1)
    disc = abs(Fraction(discriminant(p)))
    norm2 = sum(Fraction(c) ** 2 for c in p.coeffs)
    bound_sq = Fraction(3) * disc / (Fraction(d) ** (d + 2) * norm2 ** (d - 1))
    return _sqrt_lower(bound_sq)


def _bit_bound(values) -> int:
    """Smallest L >= 0 with 2^-L <= |v| <= 2^L for every nonzero v."""
    L = 0
    for v in values:
        v = abs(Fraction(v))
        if not v:
            continue
        while v > 2**L or v < Fraction(1, 2**L):
            L += 1
    return L


def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = x._mpf_
    if man == 0:
        if x == 0:
            return Fraction(0)
        raise ValueError("non-finite value")
    val = Fraction(man * 2**exp) if exp >= 0 else Fraction(man, 2**-exp)
    return -val if sign else val


def _round_dyadic(x: Fraction, bits: int) -> Fraction:
    scale = 2**bits
    return Fraction(round(x * scale), scale)


def approximate_roots(p: UnivariatePoly, eps: Fraction, threshold_sq: Fraction | None = None):
    """All deg(p) roots as Gaussian rationals, each within eps of a distinct root.

    Durand-Kerner iteration at escalating working precision produces the
    candidates; acceptance is anchored in the exact residual test
    |p(a)| < 2^-L * eps_eff^d (eps_eff = min(eps, separation/4)), which by the
    factorized lower bound proves closeness, and pairwise distances > 2 eps_eff
    prove distinctness.  A caller may pass a stricter squared residual
    threshold (the certificate verifier's, say); the smaller one is enforced.
    """
    d = p.degree()
    if d < 1:
        raise ValueError("need degree >= 1")
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    sep = separation_bound(p)
    eps_eff = min(eps, sep / 4)
    L = _bit_bound(p.coeffs)
    thr_sq = (Fraction(1, 2**L) * eps_eff**d) ** 2
    if threshold_sq is not None:
        thr_sq = min(thr_sq, Fraction(threshold_sq))
    if d == 1:
        root = GaussianRational(-Fraction(p.coeffs[0]) / Fraction(p.coeffs[1]))
        return [root]
    gap_sq = (2 * eps_eff) ** 2
    prec = 128
    while prec <= 1 << 20:
        cand = _durand_kerner(p, prec)
        if cand is not None:
            roots = [GaussianRational(re, im) for re, im in cand]
            target_bits = max(64, _needed_bits(thr_sq) // 2 + 16)
            rounded = [
                GaussianRational(_round_dyadic(r.re, target_bits), _round_dyadic(r.im, target_bits))
                for r in roots
            ]
            for pick in (rounded, roots):
                if all(_poly_abs2(p, r) < thr_sq for r in pick) and all(
                    (a - b).abs2() > gap_sq
                    for a, b in itertools.combinations(pick, 2)
                ):
                    return pick
        prec *= 2
    raise RuntimeError("root refinement did not converge; retry with higher precision")


def _needed_bits(thr_sq: Fraction) -> int:
    # roughly -log2(thr_sq), used to size the dyadic rounding of candidates
    return max(0, thr_sq.denominator.bit_length() - thr_sq.numerator.bit_length()) + 8


def _poly_abs2(p: UnivariatePoly, z: GaussianRational) -> Fraction:
    acc = GaussianRational(Fraction(p.coeffs[-1]))
    for c in reversed(p.coeffs[:-1]):
        acc = acc * z + Fraction(c)
    return acc.abs2()


def _durand_kerner(p: UnivariatePoly, prec: int):
    d = p.degree()
    with mpmath.workprec(prec):
        lead = mpmath.mpf(p.coeffs[-1].numerator) / p.coeffs[-1].denominator
        cs = [
            (mpmath.mpf(c.numerator) / c.denominator) / lead
            for c in p.coeffs
        ]
        radius = 1 + max(abs(c) for c in cs[:-1]) if d else mpmath.mpf(1)
        base = mpmath.mpc(0.4, 0.9)
        z = [radius * base**i for i in range(1, d + 1)]
        tol = mpmath.mpf(2) ** (-(prec * 3) // 4)
        for _ in range(200 + 30 * d):
            max_delta = mpmath.mpf(0)
            for i in range(d):
                num = cs[-1]
                for c in reversed(cs[:-1]):
                    num = num * z[i] + c
                den = mpmath.mpc(1)
                for j in range(d):
                    if j != i:
                        den *= z[i] - z[j]
                if den == 0:
                    z[i] = z[i] * mpmath.mpc(1, 1e-6)
                    max_delta = radius
                    continue
                delta = num / den
                z[i] = z[i] - delta
                max_delta = max(max_delta, abs(delta))
            if max_delta < tol:
                break
        else:
            return None
        try:
            return [(_mpf_to_fraction(r.real), _mpf_to_fraction(r.imag)) for r in z]
        except ValueError:
            return None


def _abs_sum_over_box(h: SparsePoly, boxes) -> Fraction:
    total = Fraction(0)
    for e, c in h.terms.items():
        v = abs(Fraction(c))
        for i, exp in enumerate(e):
            if exp:
                v *= boxes[i] ** exp
        total += v
    return total


def compute_threshold(
    f: Circuit | SparsePoly,
    ideal: UnivariateIdeal,
    eps: Fraction | None = None,
    expand_cap: int = 10**6,
    charpoly_guard: int = 2048,
) -> PrecisionBudget:
    """Explicit M and eps realizing the member/nonmember gap.

    Performs the actual division f = sum h_i p_i + R, bounds the h_i and the
    Lipschitz constant of R over the root boxes, and lower-bounds the nonzero
    grid values of R through the characteristic polynomial of multiplication
    by R on the quotient algebra.  Sets M = B3/3 and eps <= M/(B4 + B2).
    """
    fp = expand(f, expand_cap) if isinstance(f, Circuit) else f
    n = fp.n
    gens = {v: p for v, p in ideal.generators}
    for v in range(n):
        if v not in gens:
            raise ValueError(f"no generator for variable {v}")
        if not _is_squarefree(gens[v]):
            raise NotSquarefree(f"generator for variable {v} has a repeated root")
    degs = [gens[v].degree() for v in range(n)]
    grid = 1
    for dd in degs:
        grid *= dd
    if grid > charpoly_guard:
        raise ValueError(f"root grid of size {grid} exceeds the threshold guard {charpoly_guard}")
    r, quotients = divide_with_quotients(fp, ideal)
    boxes = [root_magnitude_bounds(gens[v])[1] + 1 for v in range(n)]
    b2 = Fraction(0)
    for v, h in quotients.items():
        p = gens[v]
        deriv_bound = sum(
            j * abs(Fraction(c)) * boxes[v] ** (j - 1)
            for j, c in enumerate(p.coeffs)
            if j >= 1 and c
        )
        b2 += _abs_sum_over_box(h, boxes) * deriv_bound
    b4 = Fraction(0)
    for e, c in r.terms.items():
        ac = abs(Fraction(c))
        for i, exp in enumerate(e):
            if exp:
                v = ac * exp * boxes[i] ** (exp - 1)
                for j, oexp in enumerate(e):
                    if j != i and oexp:
                        v *= boxes[j] ** oexp
                b4 += v
    b3 = _grid_value_lower_bound(r, ideal, degs, grid)
    m = b3 / 3
    eps_max = Fraction(1) if b2 + b4 == 0 else min(Fraction(1), m / (b2 + b4))
    eps_out = eps_max if eps is None else min(Fraction(eps), eps_max)
    L = _bit_bound(list(fp.terms.values()) + [c for p in gens.values() for c in p.coeffs])
    d = max([p.degree() for p in gens.values()] + [max(fp.degree(), 1)])
    return PrecisionBudget(L=L, d=d, n=n, eps=eps_out, M=m, b2=b2, b3=b3, b4=b4)


def _grid_value_lower_bound(r: SparsePoly, ideal: UnivariateIdeal, degs, grid: int) -> Fraction:
    """Lower bound on |R| over grid tuples where R does not vanish.

    The multiplication-by-R operator on the residue basis has characteristic
    polynomial prod over tuples of (w - R(tuple)); a lower root bound on its
    deflation bounds every nonzero grid value from below.
    """
    if r.is_zero():
        return Fraction(1)
    basis = list(itertools.product(*[range(dd) for dd in degs]))
    index = {e: i for i, e in enumerate(basis)}
    n = r.n
    cols = []
    for e in basis:
        shifted = SparsePoly(n, {tuple(a + b for a, b in zip(e, ee)): c for ee, c in r.terms.items()})
        reduced = divide(shifted, ideal)
        col = [Fraction(0)] * grid
        for ee, c in reduced.terms.items():
            col[index[ee]] = Fraction(c)
        cols.append(col)
    mat = Matrix([[cols[j][i] for j in range(grid)] for i in range(grid)])
    chi = charpoly(mat)
    t = next(i for i, c in enumerate(chi.coeffs) if c)
    if t == chi.degree():
        return Fraction(1)  # R vanishes on the whole grid
    tail = [abs(Fraction(c)) for c in chi.coeffs[t:]]
    return min(Fraction(1), tail[0] / sum(tail[1:]))


def _residual_threshold_sq(budget: PrecisionBudget) -> Fraction:
    return (Fraction(1, 2**budget.L) * budget.eps**budget.d) ** 2


def verify_certificate(
    f: Circuit, ideal: UnivariateIdeal, cert: Certificate, budget: PrecisionBudget
) -> bool:
    """Accept iff every component passes the residual test and |f| >= 2M.

    Acceptance soundly implies nonmembership; rejection decides nothing.
    """
    gens = dict(ideal.generators)
    if cert.n != budget.n:
        raise ValueError("certificate length mismatch")
    eps_bits = budget.eps.denominator.bit_length()
    if cert.bit_size() > 64 * budget.n * (budget.L + budget.d * eps_bits + 64):
        raise ValueError("malformed certificate: component bit size out of budget")
    thr_sq = _residual_threshold_sq(budget)
    for v in range(cert.n):
        if _poly_abs2(gens[v], cert.values[v]) >= thr_sq:
            return False
    value = f.evaluate(list(cert.values))
    return _as_gaussian(value).abs2() >= (2 * budget.M) ** 2


def search_nonmembership(
    f: Circuit,
    ideal: UnivariateIdeal,
    budget: PrecisionBudget | None = None,
    grid_guard: int = 10**5,
):
    """Decide membership by sweeping all approximate root tuples.

    Returns ("nonmember", certificate) on the first tuple with |f| >= 2M, or
    ("member", None) when every tuple stays below M.  A value strictly
    between M and 2M cannot occur with a valid budget; it raises Undecided as
    a defensive signal rather than being silently classified.
    """
    if budget is None:
        budget = compute_threshold(f, ideal)
    gens = dict(ideal.generators)
    grid = 1
    for v in range(budget.n):
        grid *= gens[v].degree()
    if grid > grid_guard:
        raise ValueError(f"root grid of size {grid} exceeds the search guard {grid_guard}")
    thr_sq = _residual_threshold_sq(budget)
    per_var = [approximate_roots(gens[v], budget.eps, threshold_sq=thr_sq) for v in range(budget.n)]
    m_sq = budget.M**2
    two_m_sq = (2 * budget.M) ** 2
    for tup in itertools.product(*per_var):
        value = _as_gaussian(f.evaluate(list(tup)))
        v2 = value.abs2()
        if v2 >= two_m_sq:
            return "nonmember", Certificate(tuple(tup))
        if v2 > m_sq:
            raise Undecided(f"grid value with |f|^2 = {v2} inside (M, 2M)")
    return "member", None
