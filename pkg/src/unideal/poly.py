"""Sparse multivariate and dense univariate polynomials over an exact field.

SparsePoly maps exponent vectors (tuples of length n) to nonzero coefficients.
UnivariatePoly stores coefficients low-to-high with the trailing zeros
stripped.  Multiplication can be capped by a term budget; exceeding it raises
CapExceeded, which callers treat as "instance too large for the declared
parameters" rather than as a crash.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import Matrix

__all__ = [
    "CapExceeded",
    "SparsePoly",
    "UnivariatePoly",
    "poly_gcd",
    "resultant",
    "discriminant",
    "charpoly",
]


class CapExceeded(RuntimeError):
    """An expansion outgrew its monomial budget."""


class SparsePoly:
    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        clean = {}
        if terms:
            for e, c in (terms.items() if isinstance(terms, dict) else terms):
                if len(e) != n:
                    raise ValueError("exponent vector length mismatch")
                if c:
                    e = tuple(e)
                    acc = clean.get(e)
                    new = c if acc is None else acc + c
                    if new:
                        clean[e] = new
                    elif acc is not None:
                        del clean[e]
        self.terms = clean

    @classmethod
    def zero(cls, n: int) -> "SparsePoly":
        return cls(n)

    @classmethod
    def const(cls, n: int, c) -> "SparsePoly":
        return cls(n, {(0,) * n: c})

    @classmethod
    def variable(cls, n: int, i: int, one=Fraction(1)) -> "SparsePoly":
        e = [0] * n
        e[i] = 1
        return cls(n, {tuple(e): one})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, SparsePoly)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def coeff(self, e) -> object:
        return self.terms.get(tuple(e), 0)

    def __add__(self, other):
        if isinstance(other, SparsePoly):
            if other.n != self.n:
                raise ValueError("variable count mismatch")
            out = dict(self.terms)
            for e, c in other.terms.items():
                acc = out.get(e)
                new = c if acc is None else acc + c
                if new:
                    out[e] = new
                elif acc is not None:
                    del out[e]
            p = SparsePoly.__new__(SparsePoly)
            p.n, p.terms = self.n, out
            return p
        return NotImplemented

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        p = SparsePoly.__new__(SparsePoly)
        p.n = self.n
        p.terms = {e: -c for e, c in self.terms.items()}
        return p

    def scale(self, c) -> "SparsePoly":
        if not c:
            return SparsePoly(self.n)
        p = SparsePoly.__new__(SparsePoly)
        p.n = self.n
        p.terms = {e: c * v for e, v in self.terms.items()}
        return p

    def mul(self, other: "SparsePoly", cap: int | None = None) -> "SparsePoly":
        if other.n != self.n:
            raise ValueError("variable count mismatch")
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                acc = out.get(e)
                new = c if acc is None else acc + c
                if new:
                    out[e] = new
                elif acc is not None:
                    del out[e]
            if cap is not None and len(out) > cap:
                raise CapExceeded(f"term count exceeded cap {cap}")
        p = SparsePoly.__new__(SparsePoly)
        p.n, p.terms = self.n, out
        return p

    def __mul__(self, other):
        if isinstance(other, SparsePoly):
            return self.mul(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = SparsePoly.const(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def evaluate(self, point):
        if len(point) != self.n:
            raise ValueError("point length mismatch")
        total = None
        for e, c in self.terms.items():
            v = c
            for i, exp in enumerate(e):
                if exp:
                    v = v * point[i] ** exp
            total = v if total is None else total + v
        return Fraction(0) if total is None else total

    def substitute_prefix(self, s: int, values) -> "SparsePoly":
        """Evaluate variables 0..s-1 at `values`; remaining vars reindex to 0.."""
        out: dict = {}
        for e, c in self.terms.items():
            v = c
            for i in range(s):
                if e[i]:
                    v = v * values[i] ** e[i]
            if not v:
                continue
            tail = e[s:]
            acc = out.get(tail)
            new = v if acc is None else acc + v
            if new:
                out[tail] = new
            elif acc is not None:
                del out[tail]
        p = SparsePoly.__new__(SparsePoly)
        p.n, p.terms = self.n - s, out
        return p

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def deg_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def map_coeffs(self, fn) -> "SparsePoly":
        return SparsePoly(self.n, {e: fn(c) for e, c in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return "SparsePoly(0)"
        bits = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(
                f"x{i}^{k}" if k > 1 else f"x{i}" for i, k in enumerate(e) if k
            )
            bits.append(f"{c}" + (f"*{mono}" if mono else ""))
        return "SparsePoly(" + " + ".join(bits) + ")"


class UnivariatePoly:
    """Dense univariate polynomial, coefficients low-to-high."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c) -> "UnivariatePoly":
        return cls([c])

    @classmethod
    def x(cls, one=Fraction(1)) -> "UnivariatePoly":
        return cls([one - one, one])

    @classmethod
    def from_roots(cls, roots, one=Fraction(1)) -> "UnivariatePoly":
        p = cls([one])
        for r in roots:
            p = p * cls([-r, one])
        return p

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def lc(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, UnivariatePoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UnivariatePoly(out)

    def __neg__(self):
        return UnivariatePoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, UnivariatePoly):
            if not self.coeffs or not other.coeffs:
                return UnivariatePoly([])
            out = [self.coeffs[0] - self.coeffs[0]] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a:
                    for j, b in enumerate(other.coeffs):
                        out[i + j] = out[i + j] + a * b
            return UnivariatePoly(out)
        return self.scale(other)

    def scale(self, c) -> "UnivariatePoly":
        return UnivariatePoly([c * a for a in self.coeffs])

    def divmod(self, other: "UnivariatePoly"):
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UnivariatePoly([]), UnivariatePoly(rem)
        quo = [rem[0] - rem[0]] * (dq + 1)
        inv = 1 / other.lc()
        for i in range(dq, -1, -1):
            c = rem[i + other.degree()] * inv
            if c:
                quo[i] = c
                for j, b in enumerate(other.coeffs):
                    rem[i + j] = rem[i + j] - c * b
        return UnivariatePoly(quo), UnivariatePoly(rem)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def evaluate(self, x):
        if not self.coeffs:
            return x - x if not isinstance(x, (int,)) else 0
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UnivariatePoly":
        return UnivariatePoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "UnivariatePoly":
        if self.is_zero():
            return self
        inv = 1 / self.lc()
        return UnivariatePoly([c * inv for c in self.coeffs])

    def __repr__(self):
        if not self.coeffs:
            return "UnivariatePoly(0)"
        bits = [f"{c}*x^{i}" for i, c in enumerate(self.coeffs) if c]
        return "UnivariatePoly(" + " + ".join(bits) + ")"


def poly_gcd(a: UnivariatePoly, b: UnivariatePoly) -> UnivariatePoly:
    """Monic gcd by the Euclidean algorithm."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def resultant(a: UnivariatePoly, b: UnivariatePoly):
    """Resultant via the Sylvester matrix determinant, exact."""
    da, db = a.degree(), b.degree()
    if da < 0 or db < 0:
        raise ValueError("resultant of the zero polynomial")
    if da == 0:
        return a.coeffs[0] ** db
    if db == 0:
        return b.coeffs[0] ** da
    one = _field_one(a.coeffs[0])
    zero = one - one
    size = da + db
    rows = []
    for i in range(db):
        row = [zero] * size
        for j, c in enumerate(reversed(a.coeffs)):
            row[i + j] = c
        rows.append(row)
    for i in range(da):
        row = [zero] * size
        for j, c in enumerate(reversed(b.coeffs)):
            row[i + j] = c
        rows.append(row)
    return Matrix(rows).det()


def discriminant(p: UnivariatePoly):
    """disc(p) = (-1)^(d(d-1)/2) * Res(p, p') / lc(p)."""
    d = p.degree()
    if d < 1:
        raise ValueError("discriminant needs degree >= 1")
    if d == 1:
        return _field_one(p.coeffs[0])
    r = resultant(p, p.derivative())
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return sign * r / p.lc()


def charpoly(m: Matrix) -> UnivariatePoly:
    """det(w*I - M), monic, by exact Hessenberg reduction plus the minor recurrence."""
    n = m.nrows
    if n != m.ncols:
        raise ValueError("characteristic polynomial of non-square matrix")
    if n == 0:
        return UnivariatePoly([Fraction(1)])
    one = _field_one(m.rows[0][0])
    zero = one - one
    h = [list(r) for r in m.rows]
    for col in range(n - 2):
        piv = next((r for r in range(col + 1, n) if h[r][col]), None)
        if piv is None:
            continue
        if piv != col + 1:
            h[col + 1], h[piv] = h[piv], h[col + 1]
            for r in range(n):
                h[r][col + 1], h[r][piv] = h[r][piv], h[r][col + 1]
        for r in range(col + 2, n):
            if h[r][col]:
                f = h[r][col] / h[col + 1][col]
                h[r] = [x - f * y for x, y in zip(h[r], h[col + 1])]
                for t in range(n):
                    h[t][col + 1] = h[t][col + 1] + f * h[t][r]
    # p_m(w) = (w - h[m][m]) p_{m-1} - sum_i h[i][m] (prod subdiag) p_{i-1}
    ps = [UnivariatePoly([one])]
    for mm in range(n):
        x_minus = UnivariatePoly([-h[mm][mm], one])
        p = x_minus * ps[mm]
        prod = one
        for i in range(mm - 1, -1, -1):
            prod = prod * h[i + 1][i]
            if h[i][mm] and prod:
                p = p - ps[i].scale(h[i][mm] * prod)
        ps.append(p)
    return ps[n]


def _field_one(x):
    return x - x + 1
