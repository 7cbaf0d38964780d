"""Arithmetic circuits (DAGs of +, *, linear-form and constant gates).

Circuits are the working representation of the input polynomial f everywhere.
They are never flattened implicitly: `expand` takes an explicit monomial cap
and raises CapExceeded when the budget is blown, because full expansion is
meant to happen only after the variable count has been compressed.

DiagonalCircuit is the other representation used here: a sum of scalar
multiples of k-th powers of homogeneous linear forms.  `power_decompose_product`
converts a product of affine forms into one via Fischer's identity

    l_1 * ... * l_m = (2^(m-1) m!)^(-1) * sum over eps in {+-1}^(m-1) of
                      (prod eps_i) (l_1 + sum_i eps_i l_{i+1})^m,

taking the degree-k homogeneous part of each affine power (t+u)^m as
binom(m,k) * u^(m-k) * t^k.  All 2^(m-1) summands are kept, including ones
with zero coefficient, so the constructed fan-in is exactly predictable.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .fields import GF, QQ, Mod, field_of, random_prime
from .linalg import LinearForm
from .poly import CapExceeded, SparsePoly, UnivariatePoly

__all__ = [
    "Input",
    "Const",
    "Add",
    "Mul",
    "Linear",
    "Circuit",
    "CircuitBuilder",
    "DiagonalCircuit",
    "CapExceeded",
    "expand",
    "eval_mod_random_prime",
    "homogeneous_part_eval",
    "power_decompose_product",
    "syntactic_degree",
]


@dataclass(frozen=True)
class Input:
    var: int


@dataclass(frozen=True)
class Const:
    value: object


@dataclass(frozen=True)
class Add:
    children: tuple


@dataclass(frozen=True)
class Mul:
    children: tuple


@dataclass(frozen=True)
class Linear:
    form: LinearForm


class Circuit:
    """DAG of gates; children always precede parents in the node list."""

    __slots__ = ("n", "nodes", "out")

    def __init__(self, n: int, nodes, out: int):
        self.n = n
        self.nodes = tuple(nodes)
        self.out = out
        if not 0 <= out < len(self.nodes):
            raise ValueError("output id out of range")
        for i, node in enumerate(self.nodes):
            if isinstance(node, Input):
                if not 0 <= node.var < n:
                    raise ValueError(f"input variable {node.var} out of range")
            elif isinstance(node, (Add, Mul)):
                if not node.children:
                    raise ValueError("empty gate")
                if any(not 0 <= c < i for c in node.children):
                    raise ValueError("children must precede parents")
            elif isinstance(node, Linear):
                if node.form.n != n:
                    raise ValueError("linear gate arity mismatch")
            elif not isinstance(node, Const):
                raise TypeError(f"unknown node {node!r}")

    def evaluate(self, point):
        """Exact value at a point; scalars of any one field (duck-typed)."""
        if len(point) != self.n:
            raise ValueError("point length mismatch")
        vals: list = [None] * len(self.nodes)
        for i, node in enumerate(self.nodes):
            if isinstance(node, Input):
                vals[i] = point[node.var]
            elif isinstance(node, Const):
                vals[i] = node.value
            elif isinstance(node, Add):
                acc = vals[node.children[0]]
                for c in node.children[1:]:
                    acc = acc + vals[c]
                vals[i] = acc
            elif isinstance(node, Mul):
                acc = vals[node.children[0]]
                for c in node.children[1:]:
                    acc = acc * vals[c]
                vals[i] = acc
            else:
                vals[i] = node.form.evaluate(point)
        return vals[self.out]

    def __repr__(self):
        return f"Circuit(n={self.n}, {len(self.nodes)} nodes)"


class CircuitBuilder:
    """Incremental construction helper; returns node ids."""

    def __init__(self, n: int):
        self.n = n
        self.nodes: list = []

    def _push(self, node) -> int:
        self.nodes.append(node)
        return len(self.nodes) - 1

    def input(self, i: int) -> int:
        return self._push(Input(i))

    def const(self, c) -> int:
        return self._push(Const(c))

    def add(self, *ids: int) -> int:
        return self._push(Add(tuple(ids)))

    def mul(self, *ids: int) -> int:
        return self._push(Mul(tuple(ids)))

    def linear(self, form: LinearForm) -> int:
        return self._push(Linear(form))

    def product(self, ids) -> int:
        """Product gate; an empty list becomes the constant 1."""
        ids = list(ids)
        if not ids:
            return self.const(Fraction(1))
        if len(ids) == 1:
            return ids[0]
        return self.mul(*ids)

    def power(self, node: int, e: int) -> int:
        if e == 0:
            return self.const(Fraction(1))
        if e == 1:
            return node
        return self.mul(*([node] * e))

    def build(self, out: int) -> Circuit:
        return Circuit(self.n, self.nodes, out)


def syntactic_degree(c: Circuit) -> int:
    """Upper bound on the degree, computed gate by gate."""
    deg = [0] * len(c.nodes)
    for i, node in enumerate(c.nodes):
        if isinstance(node, Input):
            deg[i] = 1
        elif isinstance(node, Const):
            deg[i] = 0
        elif isinstance(node, Add):
            deg[i] = max(deg[ch] for ch in node.children)
        elif isinstance(node, Mul):
            deg[i] = sum(deg[ch] for ch in node.children)
        else:
            deg[i] = 1 if any(node.form.coeffs) else 0
    return deg[c.out]


def expand(c: Circuit, monomial_cap: int = 10**6) -> SparsePoly:
    """Exact sparse expansion; aborts with CapExceeded past the term budget."""
    vals: list = [None] * len(c.nodes)
    for i, node in enumerate(c.nodes):
        if isinstance(node, Input):
            vals[i] = SparsePoly.variable(c.n, node.var)
        elif isinstance(node, Const):
            vals[i] = SparsePoly.const(c.n, node.value)
        elif isinstance(node, Add):
            acc = vals[node.children[0]]
            for ch in node.children[1:]:
                acc = acc + vals[ch]
            if len(acc.terms) > monomial_cap:
                raise CapExceeded(f"term count exceeded cap {monomial_cap}")
            vals[i] = acc
        elif isinstance(node, Mul):
            acc = vals[node.children[0]]
            for ch in node.children[1:]:
                acc = acc.mul(vals[ch], cap=monomial_cap)
            vals[i] = acc
        else:
            terms = {}
            for j, coef in enumerate(node.form.coeffs):
                if coef:
                    e = [0] * c.n
                    e[j] = 1
                    terms[tuple(e)] = coef
            if node.form.const:
                terms[(0,) * c.n] = node.form.const
            vals[i] = SparsePoly(c.n, terms)
    return vals[c.out]


def _require_integer_circuit(c: Circuit):
    for node in c.nodes:
        vals = []
        if isinstance(node, Const):
            vals = [node.value]
        elif isinstance(node, Linear):
            vals = list(node.form.coeffs) + [node.form.const]
        for v in vals:
            if isinstance(v, Fraction) and v.denominator != 1:
                raise ValueError("circuit is not over the integers")
            if isinstance(v, Mod):
                raise ValueError("circuit is not over the integers")


def eval_mod_random_prime(c: Circuit, point, bits: int, rng: random.Random):
    """Evaluate an integer circuit at an integer point modulo a fresh prime.

    Intermediate values never leave Z_p, so circuits that compute doubly
    exponential integers stay cheap.  Returns (value mod p, p).
    """
    if bits < 32:
        raise ValueError("prime bit length must be at least 32")
    _require_integer_circuit(c)
    p = random_prime(bits, rng)
    vals = [0] * len(c.nodes)
    for i, node in enumerate(c.nodes):
        if isinstance(node, Input):
            vals[i] = int(point[node.var]) % p
        elif isinstance(node, Const):
            vals[i] = int(node.value) % p
        elif isinstance(node, Add):
            acc = 0
            for ch in node.children:
                acc += vals[ch]
            vals[i] = acc % p
        elif isinstance(node, Mul):
            acc = 1
            for ch in node.children:
                acc = acc * vals[ch] % p
            vals[i] = acc
        else:
            acc = int(node.form.const)
            for coef, b in zip(node.form.coeffs, point):
                acc += int(coef) * int(b)
            vals[i] = acc % p
    return vals[c.out], p


def homogeneous_part_eval(c: Circuit, k: int, deg_bound: int, point):
    """Value of the degree-k homogeneous component of the circuit at `point`.

    Evaluates f(t * point) at the d+1 nodes t = 1..d+1 and reads off the t^k
    coefficient by Lagrange interpolation; everything stays in the field of
    the point.
    """
    d = deg_bound
    if d < 0:
        raise ValueError("negative degree bound")
    field = field_of(point[0]) if len(point) else QQ
    if k > d:
        return field.zero
    if field is not QQ and field.p <= d + 1:
        raise ValueError(f"field GF({field.p}) too small for {d + 1} interpolation nodes")
    ts = [field(i) for i in range(1, d + 2)]
    vals = [c.evaluate([t * b for b in point]) for t in ts]
    # P(t) = prod (t - t_j); weight for node j is [t^k](P/(t - t_j)) / P'(t_j).
    pnodes = UnivariatePoly.from_roots(ts, one=field.one)
    total = field.zero
    for j, tj in enumerate(ts):
        qj, rem = pnodes.divmod(UnivariatePoly([-tj, field.one]))
        assert rem.is_zero()
        denom = qj.evaluate(tj)
        wk = qj.coeffs[k] if k <= qj.degree() else field.zero
        total = total + wk / denom * vals[j]
    return total


@dataclass(frozen=True)
class DiagonalCircuit:
    """Sum of c_j * (linear form_j)^k with all forms homogeneous of one degree."""

    n: int
    degree: int
    summands: tuple  # of (coefficient, LinearForm)

    def __post_init__(self):
        for coef, form in self.summands:
            if form.n != self.n:
                raise ValueError("summand arity mismatch")
            if form.const:
                raise ValueError("summand forms must be homogeneous")

    @property
    def fan_in(self) -> int:
        return len(self.summands)

    def evaluate(self, point):
        total = None
        for coef, form in self.summands:
            v = form.evaluate(point)
            term = coef * v ** self.degree if self.degree else coef * _one_of(point)
            total = term if total is None else total + term
        if total is None:
            return _zero_of(point)
        return total

    def to_sparse(self) -> SparsePoly:
        out = SparsePoly.zero(self.n)
        for coef, form in self.summands:
            lin = SparsePoly(
                self.n,
                {
                    tuple(1 if j == i else 0 for j in range(self.n)): cc
                    for i, cc in enumerate(form.coeffs)
                    if cc
                },
            )
            out = out + (lin ** self.degree).scale(coef)
        return out


def _one_of(point):
    if len(point):
        return field_of(point[0]).one
    return Fraction(1)


def _zero_of(point):
    if len(point):
        return field_of(point[0]).zero
    return Fraction(0)


def power_decompose_product(forms, k: int) -> DiagonalCircuit:
    """Degree-k homogeneous part of a product of affine forms, as powers.

    Fischer's identity turns prod(forms) into 2^(m-1) m-th powers of affine
    forms; the degree-k part of each (t + u)^m is binom(m,k) u^(m-k) t^k.
    Requires k <= m and characteristic 0 or > m.
    """
    forms = list(forms)
    m = len(forms)
    if m == 0:
        raise ValueError("need at least one form")
    if not 0 <= k <= m:
        raise ValueError("need 0 <= k <= len(forms)")
    n = forms[0].n
    one = _form_one(forms[0])
    scale = one / (2 ** (m - 1) * math.factorial(m))
    binko = one * math.comb(m, k)
    summands = []
    for mask in range(2 ** (m - 1)):
        sign = 1
        lin = list(forms[0].coeffs)
        const = forms[0].const + (one - one)
        for i in range(m - 1):
            eps = 1 if not (mask >> i) & 1 else -1
            sign *= eps
            f = forms[i + 1]
            for j, cc in enumerate(f.coeffs):
                lin[j] = lin[j] + eps * cc
            const = const + eps * f.const
        coef = sign * scale * binko * const ** (m - k)
        summands.append((coef, LinearForm(tuple(lin), 0)))
    return DiagonalCircuit(n, k, tuple(summands))


def _form_one(form: LinearForm):
    for c in form.coeffs:
        if isinstance(c, Mod):
            return GF(c.p).one
    if isinstance(form.const, Mod):
        return GF(form.const.p).one
    return Fraction(1)
