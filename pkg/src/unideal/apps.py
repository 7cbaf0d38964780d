"""Low-rank permanent and low-rank vertex cover on top of remainder evaluation.

The permanent of A is the coefficient of x_1...x_n in the row-product
polynomial prod_i(sum_j a_ij x_j), so reducing that product modulo
<x_1^2, ..., x_n^2> and evaluating at the all-ones point returns Perm(A).
When rank(A) = r the row products live in r linear forms and the reduction
runs in n^O(r).

Vertex cover on a graph with adjacency rank r: with q(x) = sum over edges of
x_i x_j, the polynomial

    f = prod_{s=1..S} (q - s) * prod_{t=0..n-k-1} (sum_i x_i - t)

is outside <x_i^2 - x_i> exactly when some 0/1 point has q = 0 and at least
n - k ones, i.e. when the zero coordinates form a vertex cover of size <= k.
Congruence-diagonalizing q's Gram matrix exposes f as a polynomial in
rank(A) + 1 linear forms.  S defaults to C(n,2), the full range the paper's
polynomial uses; tight=True shortens it to |E| with identical semantics.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .circuits import CircuitBuilder
from .division import UnivariateIdeal, random_zero_test
from .fields import QQ
from .linalg import LinearForm, Matrix, congruence_diagonalize, rank_and_row_basis
from .lowrank import LowRankInput, RemEvaluator
from .poly import UnivariatePoly

__all__ = [
    "Graph",
    "ryser_permanent",
    "permanent_lowrank",
    "build_vc_instance",
    "vertex_cover_lowrank",
    "has_vertex_cover_brute",
    "blowup_graph",
]


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1."""

    n: int
    edges: tuple  # of (u, v) with u < v

    def __post_init__(self):
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError("self-loop")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError("vertex out of range")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError("duplicate edge")
            seen.add(key)

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        return cls(n, tuple(sorted((min(u, v), max(u, v)) for u, v in edges)))

    def adjacency(self) -> Matrix:
        a = [[Fraction(0)] * self.n for _ in range(self.n)]
        for u, v in self.edges:
            a[u][v] = Fraction(1)
            a[v][u] = Fraction(1)

        return Matrix(a)


def blowup_graph(base: "Graph", sizes) -> Graph:
    """Replace each base vertex by an independent class; adjacency rank is kept."""
    if len(sizes) != base.n:
        raise ValueError("one class size per base vertex")
    starts = [0]
    for s in sizes:
        starts.append(starts[-1] + s)
    edges = []
    for u, v in base.edges:
        for a in range(starts[u], starts[u + 1]):
            for b in range(starts[v], starts[v + 1]):
                edges.append((min(a, b), max(a, b)))
    return Graph.from_edges(starts[-1], edges)


def ryser_permanent(a: Matrix):
    """Exact permanent by inclusion-exclusion over column subsets, O(2^n n)."""
    n = a.nrows
    if n != a.ncols:
        raise ValueError("permanent of non-square matrix")
    if n > 20:
        raise ValueError("ryser guard: n <= 20")
    if n == 0:
        return Fraction(1)
    zero = a.rows[0][0] - a.rows[0][0]
    total = zero
    rowsums = [zero] * n
    prev_gray = 0
    for m in range(1, 2**n):
        gray = m ^ (m >> 1)
        diff = gray ^ prev_gray
        j = diff.bit_length() - 1
        if gray & diff:
            for i in range(n):
                rowsums[i] = rowsums[i] + a.rows[i][j]
        else:
            for i in range(n):
                rowsums[i] = rowsums[i] - a.rows[i][j]
        prev_gray = gray
        prod = rowsums[0]
        for i in range(1, n):
            prod = prod * rowsums[i]
        if (n - bin(gray).count("1")) % 2:
            total = total - prod
        else:
            total = total + prod
    return total


def _permanent_input(a: Matrix):
    n = a.nrows
    rank, basis, coords = rank_and_row_basis(a)
    b = CircuitBuilder(rank)
    row_ids = [
        b.linear(LinearForm(tuple(coords[i, j] for j in range(rank))))
        for i in range(n)
    ]
    outer = b.build(b.product(row_ids))
    return LowRankInput(outer, tuple(basis), max(n, 1)), rank


def permanent_lowrank(a: Matrix):
    """Permanent via remainder evaluation; exact, n^O(rank) time."""
    n = a.nrows
    if n != a.ncols:
        raise ValueError("permanent of non-square matrix")
    if n == 0:
        return Fraction(1)
    inp, rank = _permanent_input(a)
    if rank == 0:  # zero matrix; every row product vanishes
        return a.rows[0][0] - a.rows[0][0]
    one = a.rows[0][0] - a.rows[0][0] + 1
    zero = one - one
    square = UnivariatePoly([zero, zero, one])
    ideal = UnivariateIdeal(tuple((i, square) for i in range(n)))
    return RemEvaluator(inp, ideal).eval([one] * n)


def build_vc_instance(g: Graph, k: int, tight: bool = False):
    """Low-rank input, boolean ideal and degree bound for the cover polynomial."""
    n = g.n
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    gram = [[Fraction(0)] * n for _ in range(n)]
    for u, v in g.edges:
        gram[u][v] = Fraction(1, 2)
        gram[v][u] = Fraction(1, 2)
    q, d = congruence_diagonalize(Matrix(gram))
    qinv = q.inverse()
    diag = [(i, d[i, i]) for i in range(n) if d[i, i]]
    r = len(diag)
    # q(x) = sum_i d_i * y_i(x)^2 with y_i = column i of Q^{-1} dotted with x.
    forms = [
        LinearForm(tuple(qinv[t, i] for t in range(n))) for i, _ in diag
    ]
    forms.append(LinearForm((Fraction(1),) * n))
    s_range = len(g.edges) if tight else n * (n - 1) // 2
    b = CircuitBuilder(r + 1)
    sq_ids = [b.mul(b.input(i), b.input(i)) for i in range(r)]
    quad_terms = []
    for idx, (_, di) in enumerate(diag):
        quad_terms.append(b.mul(b.const(di), sq_ids[idx]))
    if quad_terms:
        quad = b.add(*quad_terms) if len(quad_terms) > 1 else quad_terms[0]
    else:
        quad = b.const(Fraction(0))
    factor_ids = [b.add(quad, b.const(Fraction(-s))) for s in range(1, s_range + 1)]
    size_var = b.input(r)
    factor_ids += [b.add(size_var, b.const(Fraction(-t))) for t in range(0, n - k)]
    outer = b.build(b.product(factor_ids))
    boolean = UnivariatePoly([Fraction(0), Fraction(-1), Fraction(1)])
    ideal = UnivariateIdeal(tuple((i, boolean) for i in range(n)))
    deg_bound = 2 * s_range + (n - k)
    return LowRankInput(outer, tuple(forms), deg_bound), ideal, deg_bound


def vertex_cover_lowrank(
    g: Graph, k: int, trials: int = 20, rng: random.Random | None = None, tight: bool = False
) -> bool:
    """Randomized decision "G has a vertex cover of size k".

    One-sided: True is always correct; a False answer is wrong with
    probability at most (deg_bound / (100 * deg_bound))^trials = 100^-trials.
    """
    rng = rng or random.Random(0)
    inp, ideal, deg_bound = build_vc_instance(g, k, tight=tight)
    evaluator = RemEvaluator(inp, ideal)
    return random_zero_test(evaluator.eval, g.n, deg_bound, trials, rng, field=QQ)


def has_vertex_cover_brute(g: Graph, k: int) -> bool:
    """Exhaustive vertex-cover search, the oracle for the low-rank path."""
    if k >= g.n:
        return True
    for subset in combinations(range(g.n), k):
        chosen = set(subset)
        if all(u in chosen or v in chosen for u, v in g.edges):
            return True
    return False
