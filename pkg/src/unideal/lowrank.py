"""Remainder evaluation for polynomials that live in few linear forms.

A rank-r input is an outer circuit over formal variables z_1..z_r plus r
linear forms over x_1..x_n; the represented polynomial is f = outer(l_1..l_r).
`rem_eval` computes (f mod I)(alpha) for a univariate ideal I without ever
touching more than 2r variables at a time:

  1. split each form l_i into its part over the first s = min(r, n) variables
     and the homogeneous rest; pick a maximal independent subset of the rests
     (size r') and treat those as fresh variables,
  2. expand the outer circuit over the s + r' local variables, reducing by the
     generators of the consumed variables after every product so intermediate
     term counts stay inside the (d+1)^(2r) budget,
  3. substitute alpha for the consumed variables,
  4. recurse on the surviving fresh variables, which stand for the
     independent rest-forms, against the ideal on the remaining variables.

The per-level transform chain depends only on the forms, so `RemEvaluator`
precomputes it (plus the alpha-independent level-0 expansion) once and can
then evaluate many points cheaply; `rem_eval` is the one-shot wrapper.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .circuits import Add, Circuit, CircuitBuilder, Const, Input, Linear, Mul
from .division import UnivariateIdeal, _Reducer
from .linalg import LinearForm, Matrix, complete_invertible, rank_and_row_basis
from .poly import CapExceeded, SparsePoly

__all__ = ["LowRankInput", "build_transform", "rem_eval", "RemEvaluator", "inline_forms"]


@dataclass(frozen=True)
class LowRankInput:
    """outer(z_1..z_r) composed with r linear forms over the ambient variables."""

    outer: Circuit
    forms: tuple
    degree_bound: int

    def __post_init__(self):
        if self.outer.n != len(self.forms):
            raise ValueError("outer circuit arity must match the number of forms")
        if self.forms:
            n = self.forms[0].n
            if any(f.n != n for f in self.forms):
                raise ValueError("forms must share one variable count")
        if self.degree_bound < 0:
            raise ValueError("negative degree bound")

    @property
    def n(self) -> int:
        return self.forms[0].n if self.forms else 0


def build_transform(forms, n: int):
    """Invertible T fixing the first variables and compressing the rest.

    Splits each form at s = min(len(forms), n); returns (T, r', residuals)
    where the substitution x -> Tx maps the selected independent rest-forms to
    the variables s..s+r'-1 and `residuals` are those rest-forms reindexed
    over the trailing n - s variables.
    """
    forms = list(forms)
    s = min(len(forms), n)
    if not forms:
        return Matrix.identity(n), 0, []
    tails = Matrix([f.tail(s).coeffs for f in forms])
    rank, basis, _ = rank_and_row_basis(tails)
    one = _one_from(forms)
    zero = one - one
    rows = [tuple(one if t == i else zero for t in range(n)) for i in range(s)]
    rows += [(zero,) * s + b.coeffs for b in basis]
    u = complete_invertible(rows, n)
    t = u.inverse()
    residuals = [LinearForm(b.coeffs) for b in basis]
    return t, rank, residuals


def _one_from(forms):
    for f in forms:
        for c in f.coeffs:
            if c:
                return c / c
    return Fraction(1)


@dataclass
class _Level:
    offset: int          # first global variable consumed at this level
    s: int               # number of consumed variables
    w: int               # local variable count: s + r'
    hats: list           # per incoming z variable, a SparsePoly over w vars
    reducer: _Reducer    # reduction by the consumed generators (local indices)
    residual_count: int  # r'


class RemEvaluator:
    """Prepared remainder evaluator for one (low-rank input, ideal) pair.

    When the residue grid is small (the product over variables of the
    generator degrees fits `materialize_budget`), the full reduced remainder
    is computed once symbolically and each eval is a plain polynomial
    evaluation; otherwise every eval walks the recursion with per-level
    substitution.  Both paths return identical values.
    """

    def __init__(self, inp: LowRankInput, ideal: UnivariateIdeal, materialize_budget: int = 4096):
        self.inp = inp
        self.ideal = ideal
        n = inp.n
        support = set()
        for f in inp.forms:
            for j, c in enumerate(f.coeffs):
                if c:
                    support.add(j)
        gens = {v: p for v, p in ideal.generators}
        missing = sorted(v for v in support if v not in gens)
        if missing:
            raise ValueError(f"no generator for live variables {missing}")
        gen_deg = max((p.degree() for _, p in ideal.generators), default=0)
        d = max(inp.degree_bound, gen_deg)
        r = len(inp.forms)
        self.cap = (d + 1) ** (2 * r)
        self._zero = self._field_zero()
        self.levels: list[_Level] = []
        forms_cur = list(inp.forms)
        offset = 0
        while forms_cur and n - offset > 0:
            level = self._prepare_level(forms_cur, offset, gens)
            self.levels.append(level)
            forms_cur = level._residuals
            offset += level.s
        self.depth = len(self.levels)
        # The alpha-independent part of level 0: outer expanded over the local
        # variables with interleaved reduction.
        if self.levels:
            lvl = self.levels[0]
            self._base = _eval_circuit_reduced(inp.outer, lvl.hats, lvl.w, lvl.reducer, self.cap)
        else:
            self._base = None
        self._full = None
        grid = 1
        for v in range(n):
            p = gens.get(v)
            grid *= p.degree() if p is not None else d + 1
            if grid > materialize_budget:
                break
        if self._base is not None and grid <= materialize_budget:
            self._grid = grid
            self._full = self._materialize()

    def _materialize(self) -> SparsePoly:
        """Run all levels symbolically; the result is the remainder polynomial."""
        g = self._base
        one = self._zero + 1
        for idx, lvl in enumerate(self.levels):
            if idx > 0:
                prefix = lvl.offset  # variables consumed by earlier levels
                w_full = prefix + lvl.w
                hats = [SparsePoly.variable(w_full, i, one=one) for i in range(prefix)]
                hats += [_shift_vars(h, prefix, w_full) for h in lvl.hats]
                local = {prefix + j: p for j, p in lvl.reducer.gens.items()}
                reducer = _Reducer(UnivariateIdeal.from_dict(local))
                g = _compose_reduced(g, hats, w_full, reducer, self.cap * self._grid)
        consumed = self.levels[-1].offset + self.levels[-1].s
        if g.n != consumed:
            raise AssertionError("materialized remainder has unexpected arity")
        tail = self.inp.n - consumed
        if tail:
            g = _shift_vars(g, 0, g.n + tail)  # unused trailing variables
        return g

    def _field_zero(self):
        for _, p in self.ideal.generators:
            return p.lc() - p.lc()
        for f in self.inp.forms:
            for c in f.coeffs:
                return c - c
        return Fraction(0)

    def _prepare_level(self, forms, offset: int, gens) -> _Level:
        n_cur = self.inp.n - offset
        s = min(len(forms), n_cur)
        tails = Matrix([f.tail(s).coeffs for f in forms])
        rank, basis, coords = rank_and_row_basis(tails)
        w = s + rank
        zero = self._zero
        hats = []
        for i, f in enumerate(forms):
            terms = {}
            for j in range(s):
                if f.coeffs[j]:
                    e = [0] * w
                    e[j] = 1
                    terms[tuple(e)] = f.coeffs[j]
            for j in range(rank):
                g = coords[i, j]
                if g:
                    e = [0] * w
                    e[s + j] = 1
                    key = tuple(e)
                    terms[key] = terms.get(key, zero) + g
            if f.const:
                terms[(0,) * w] = f.const
            hats.append(SparsePoly(w, terms))
        local_gens = {}
        for j in range(s):
            p = gens.get(offset + j)
            if p is not None:
                local_gens[j] = p
        reducer = _Reducer(UnivariateIdeal.from_dict(local_gens)) if local_gens else _Reducer(UnivariateIdeal(()))
        level = _Level(offset, s, w, hats, reducer, rank)
        level._residuals = [LinearForm(b.coeffs) for b in basis]
        for h in range(len(hats)):
            hats[h] = reducer.reduce(hats[h])
        return level

    def eval(self, alpha):
        """(f mod I)(alpha), exactly."""
        if len(alpha) != self.inp.n:
            raise ValueError("point length mismatch")
        if self._full is not None:
            return self._full.evaluate(alpha) if not self._full.is_zero() else self._zero
        if self._base is None:
            # No forms: outer is a constant circuit.
            from .circuits import expand

            g = expand(self.inp.outer, self.cap if self.cap else 1)
            return g.evaluate([]) if not g.is_zero() else self._zero
        g = self._base
        for idx, lvl in enumerate(self.levels):
            if idx > 0:
                g = _compose_reduced(g, lvl.hats, lvl.w, lvl.reducer, self.cap)
            point = [alpha[lvl.offset + i] for i in range(lvl.s)]
            g = g.substitute_prefix(lvl.s, point)
        if g.n != 0:
            raise AssertionError("recursion left live variables")
        return g.evaluate([]) if not g.is_zero() else self._zero


def _shift_vars(p: SparsePoly, offset: int, new_n: int) -> SparsePoly:
    """Embed a polynomial into a wider variable list starting at `offset`."""
    pad = new_n - offset - p.n
    out = SparsePoly.__new__(SparsePoly)
    out.n = new_n
    out.terms = {(0,) * offset + e + (0,) * pad: c for e, c in p.terms.items()}
    return out


def _eval_circuit_reduced(c: Circuit, hats, w: int, reducer, cap: int) -> SparsePoly:
    """Expand a circuit into SparsePoly values, reducing after every product."""
    vals: list = [None] * len(c.nodes)
    for i, node in enumerate(c.nodes):
        if isinstance(node, Input):
            vals[i] = hats[node.var]
        elif isinstance(node, Const):
            vals[i] = SparsePoly.const(w, node.value)
        elif isinstance(node, Add):
            acc = vals[node.children[0]]
            for ch in node.children[1:]:
                acc = acc + vals[ch]
            if len(acc.terms) > cap:
                raise CapExceeded(f"term count exceeded cap {cap}")
            vals[i] = acc
        elif isinstance(node, Mul):
            acc = vals[node.children[0]]
            for ch in node.children[1:]:
                acc = reducer.reduce(acc.mul(vals[ch], cap=cap))
            vals[i] = acc
        else:  # Linear over the z variables
            acc = SparsePoly.const(w, node.form.const) if node.form.const else SparsePoly.zero(w)
            for zi, coef in enumerate(node.form.coeffs):
                if coef:
                    acc = acc + hats[zi].scale(coef)
            vals[i] = reducer.reduce(acc)
    return vals[c.out]


def _compose_reduced(g: SparsePoly, hats, w: int, reducer, cap: int) -> SparsePoly:
    """g(hat_1, ..., hat_m) with reduction interleaved (Horner per variable)."""
    m = g.n
    if m == 0:
        c = g.terms.get((), None)
        return SparsePoly.zero(w) if c is None else SparsePoly.const(w, c)
    if not g.terms:
        return SparsePoly.zero(w)
    h = hats[m - 1]
    slices: dict[int, dict] = {}
    for e, c in g.terms.items():
        slices.setdefault(e[m - 1], {})[e[:-1]] = c
    top = max(slices)
    result = None
    for e in range(top, -1, -1):
        part = None
        if e in slices:
            sl = SparsePoly.__new__(SparsePoly)
            sl.n, sl.terms = m - 1, slices[e]
            part = _compose_reduced(sl, hats, w, reducer, cap)
        if result is None:
            result = part if part is not None else SparsePoly.zero(w)
        else:
            result = reducer.reduce(result.mul(h, cap=cap))
            if part is not None:
                result = result + part
    return result


def rem_eval(inp: LowRankInput, ideal: UnivariateIdeal, alpha):
    """Evaluate the unique remainder of the composed polynomial at alpha.

    Equal to divide(expand(f), ideal) evaluated at alpha, in time
    d^O(r) * poly(n) instead of the cost of the full expansion.
    """
    return RemEvaluator(inp, ideal, materialize_budget=0).eval(alpha)


def inline_forms(inp: LowRankInput) -> Circuit:
    """The composed polynomial as an ordinary circuit over the x variables.

    Used by oracles and the CLI; linear outer gates fold into linear x gates.
    """
    n = inp.n
    b = CircuitBuilder(n)
    form_ids = [b.linear(f) for f in inp.forms]
    remap = {}
    for i, node in enumerate(inp.outer.nodes):
        if isinstance(node, Input):
            remap[i] = form_ids[node.var]
        elif isinstance(node, Const):
            remap[i] = b.const(node.value)
        elif isinstance(node, Add):
            remap[i] = b.add(*[remap[ch] for ch in node.children])
        elif isinstance(node, Mul):
            remap[i] = b.mul(*[remap[ch] for ch in node.children])
        else:
            coeffs = [Fraction(0)] * n
            const = node.form.const
            for zi, cz in enumerate(node.form.coeffs):
                if cz:
                    f = inp.forms[zi]
                    coeffs = [a + cz * fc for a, fc in zip(coeffs, f.coeffs)]
                    const = const + cz * f.const
            remap[i] = b.linear(LinearForm(tuple(coeffs), const))
    return b.build(remap[inp.outer.out])
