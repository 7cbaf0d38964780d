"""Text formats for matrices, circuits, ideals, graphs, forms and certificates.

All numbers are decimal integers or "a/b" rationals.  Formats:

  matrix       one row per line, whitespace-separated entries
  circuit      "vars n", then one gate per line ("in i", "const a/b",
               "add id id ...", "mul id id ...", "lin c1 ... cn [+ c0]"),
               then "out id"; gate ids are 0-based line positions
  ideal        one generator per line: "var i : c0 c1 ... cd" (low to high)
  graph        "n m" then m lines "u v" with 0-based vertices
  low-rank     a circuit file for the outer polynomial followed by
               "form c1 ... cn [+ c0]" lines, one per linear form
  certificate  n lines "re_num/re_den im_num/im_den"
  klineq       "k n", then b as k entries, then the k rows of A
  one-in-three "v c" then c lines of three 0-based variable indices
"""

from __future__ import annotations

from fractions import Fraction

from .apps import Graph
from .certifier import Certificate, GaussianRational
from .circuits import Add, Circuit, Const, Input, Linear, Mul
from .division import UnivariateIdeal
from .linalg import LinearForm, Matrix
from .lowrank import LowRankInput
from .poly import UnivariatePoly
from .reductions import KLinEqInstance, OneInThreeInstance

__all__ = [
    "parse_scalar",
    "format_scalar",
    "parse_matrix",
    "parse_circuit",
    "write_circuit",
    "parse_ideal",
    "write_ideal",
    "parse_graph",
    "parse_lowrank",
    "write_lowrank",
    "parse_certificate",
    "write_certificate",
    "parse_point",
    "parse_klineq",
    "write_klineq",
    "parse_one_in_three",
]


def parse_scalar(tok: str) -> Fraction:
    return Fraction(tok)


def format_scalar(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _content_lines(text: str):
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            yield line


def parse_matrix(text: str) -> Matrix:
    rows = [[parse_scalar(t) for t in line.split()] for line in _content_lines(text)]
    if not rows:
        raise ValueError("empty matrix file")
    return Matrix(rows)


def parse_point(text: str):
    return [parse_scalar(t) for t in text.replace(",", " ").split()]


def _parse_lin_tokens(toks, n):
    if "+" in toks:
        at = toks.index("+")
        coeffs = toks[:at]
        const = parse_scalar(toks[at + 1])
    else:
        coeffs = toks
        const = Fraction(0)
    if len(coeffs) != n:
        raise ValueError(f"linear form needs {n} coefficients, got {len(coeffs)}")
    return LinearForm(tuple(parse_scalar(t) for t in coeffs), const)


def parse_circuit(text: str) -> Circuit:
    lines = list(_content_lines(text))
    return _parse_circuit_lines(lines)


def _parse_circuit_lines(lines) -> Circuit:
    if not lines or not lines[0].startswith("vars"):
        raise ValueError('circuit file must start with "vars n"')
    n = int(lines[0].split()[1])
    nodes = []
    out = None
    for line in lines[1:]:
        toks = line.split()
        kind = toks[0]
        if kind == "in":
            nodes.append(Input(int(toks[1])))
        elif kind == "const":
            nodes.append(Const(parse_scalar(toks[1])))
        elif kind == "add":
            nodes.append(Add(tuple(int(t) for t in toks[1:])))
        elif kind == "mul":
            nodes.append(Mul(tuple(int(t) for t in toks[1:])))
        elif kind == "lin":
            nodes.append(Linear(_parse_lin_tokens(toks[1:], n)))
        elif kind == "out":
            out = int(toks[1])
        else:
            raise ValueError(f"unknown circuit line: {line}")
    if out is None:
        raise ValueError('circuit file is missing the "out id" line')
    return Circuit(n, nodes, out)


def write_circuit(c: Circuit) -> str:
    lines = [f"vars {c.n}"]
    for node in c.nodes:
        if isinstance(node, Input):
            lines.append(f"in {node.var}")
        elif isinstance(node, Const):
            lines.append(f"const {format_scalar(node.value)}")
        elif isinstance(node, Add):
            lines.append("add " + " ".join(map(str, node.children)))
        elif isinstance(node, Mul):
            lines.append("mul " + " ".join(map(str, node.children)))
        else:
            bits = "lin " + " ".join(format_scalar(x) for x in node.form.coeffs)
            if node.form.const:
                bits += " + " + format_scalar(node.form.const)
            lines.append(bits)
    lines.append(f"out {c.out}")
    return "\n".join(lines) + "\n"


def parse_ideal(text: str) -> UnivariateIdeal:
    gens = []
    for line in _content_lines(text):
        toks = line.split()
        if toks[0] != "var" or toks[2] != ":":
            raise ValueError(f'ideal line must look like "var i : c0 c1 ...": {line}')
        var = int(toks[1])
        coeffs = [parse_scalar(t) for t in toks[3:]]
        gens.append((var, UnivariatePoly(coeffs)))
    if not gens:
        raise ValueError("empty ideal file")
    return UnivariateIdeal(tuple(sorted(gens)))


def write_ideal(ideal: UnivariateIdeal) -> str:
    lines = []
    for var, p in ideal.generators:
        lines.append(f"var {var} : " + " ".join(format_scalar(c) for c in p.coeffs))
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    lines = list(_content_lines(text))
    n, m = (int(t) for t in lines[0].split())
    edges = []
    for line in lines[1 : m + 1]:
        u, v = (int(t) for t in line.split())
        edges.append((u, v))
    if len(edges) != m:
        raise ValueError("edge count mismatch")
    return Graph.from_edges(n, edges)


def parse_lowrank(text: str, degree_bound: int | None = None) -> LowRankInput:
    lines = list(_content_lines(text))
    circuit_lines = [l for l in lines if not l.startswith("form ")]
    form_lines = [l for l in lines if l.startswith("form ")]
    outer = _parse_circuit_lines(circuit_lines)
    if not form_lines:
        raise ValueError("low-rank file needs at least one form line")
    n = len([t for t in form_lines[0].split()[1:] if t != "+"])
    if "+" in form_lines[0].split():
        n -= 1
    forms = tuple(_parse_lin_tokens(l.split()[1:], n) for l in form_lines)
    if degree_bound is None:
        from .circuits import syntactic_degree

        degree_bound = syntactic_degree(outer)
    return LowRankInput(outer, forms, degree_bound)


def parse_forms(text: str):
    """Standalone "form c1 ... cn [+ c0]" lines."""
    lines = [l for l in _content_lines(text) if l.startswith("form ")]
    if not lines:
        raise ValueError("no form lines found")
    toks0 = lines[0].split()[1:]
    n = len(toks0) - (2 if "+" in toks0 else 0)
    return tuple(_parse_lin_tokens(l.split()[1:], n) for l in lines)


def write_lowrank(inp: LowRankInput) -> str:
    out = write_circuit(inp.outer)
    for f in inp.forms:
        line = "form " + " ".join(format_scalar(c) for c in f.coeffs)
        if f.const:
            line += " + " + format_scalar(f.const)
        out += line + "\n"
    return out


def parse_certificate(text: str) -> Certificate:
    values = []
    for line in _content_lines(text):
        re_tok, im_tok = line.split()
        values.append(GaussianRational(Fraction(re_tok), Fraction(im_tok)))
    return Certificate(tuple(values))


def write_certificate(cert: Certificate) -> str:
    lines = []
    for v in cert.values:
        lines.append(f"{v.re.numerator}/{v.re.denominator} {v.im.numerator}/{v.im.denominator}")
    return "\n".join(lines) + "\n"


def parse_klineq(text: str) -> KLinEqInstance:
    lines = list(_content_lines(text))
    k, n = (int(t) for t in lines[0].split())
    b = tuple(int(t) for t in lines[1].split())
    rows = tuple(tuple(int(t) for t in line.split()) for line in lines[2 : 2 + k])
    if len(b) != k or len(rows) != k or any(len(r) != n for r in rows):
        raise ValueError("inconsistent k-lin-eq file")
    return KLinEqInstance(rows, b)


def write_klineq(inst: KLinEqInstance) -> str:
    lines = [f"{inst.k} {inst.n}", " ".join(map(str, inst.b))]
    lines += [" ".join(map(str, row)) for row in inst.a]
    return "\n".join(lines) + "\n"


def parse_one_in_three(text: str) -> OneInThreeInstance:
    lines = list(_content_lines(text))
    v, c = (int(t) for t in lines[0].split())
    clauses = tuple(tuple(int(t) for t in line.split()) for line in lines[1 : c + 1])
    if len(clauses) != c:
        raise ValueError("clause count mismatch")
    return OneInThreeInstance(v, clauses)
