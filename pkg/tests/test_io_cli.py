import json
import random
from fractions import Fraction

import pytest

from unideal import io as uio
from unideal.apps import Graph
from unideal.certifier import Certificate, GaussianRational
from unideal.circuits import CircuitBuilder, expand
from unideal.cli import main
from unideal.division import UnivariateIdeal
from unideal.linalg import LinearForm
from unideal.lowrank import LowRankInput
from unideal.poly import UnivariatePoly

F = Fraction


def test_matrix_parsing():
    m = uio.parse_matrix("1 2/3\n-4 5\n")
    assert m[0, 1] == F(2, 3) and m[1, 0] == -4


def test_circuit_roundtrip():
    text = "vars 2\nin 0\nin 1\nconst 3/2\nadd 0 1\nmul 2 3\nlin 1 -2 + 5\nadd 4 5\nout 6\n"
    c = uio.parse_circuit(text)
    assert uio.write_circuit(c) == text
    c2 = uio.parse_circuit(uio.write_circuit(c))
    pt = [F(2), F(3)]
    assert c.evaluate(pt) == c2.evaluate(pt)


def test_ideal_roundtrip():
    ideal = UnivariateIdeal(
        ((0, UnivariatePoly([F(0), F(-1), F(1)])), (2, UnivariatePoly([F(1, 2), F(1)])))
    )
    assert uio.parse_ideal(uio.write_ideal(ideal)) == ideal


def test_graph_parsing():
    g = uio.parse_graph("4 2\n0 1\n2 3\n")
    assert g == Graph.from_edges(4, [(0, 1), (2, 3)])


def test_lowrank_roundtrip():
    b = CircuitBuilder(1)
    outer = b.build(b.mul(b.input(0), b.input(0)))
    inp = LowRankInput(outer, (LinearForm((F(1), F(1)), F(2)),), 2)
    text = uio.write_lowrank(inp)
    back = uio.parse_lowrank(text)
    assert back.forms == inp.forms
    assert back.degree_bound == 2


def test_certificate_roundtrip():
    cert = Certificate((GaussianRational(F(1, 3), F(-2, 7)), GaussianRational(F(5))))
    assert uio.parse_certificate(uio.write_certificate(cert)) == cert


def test_klineq_roundtrip():
    from unideal.reductions import KLinEqInstance

    inst = KLinEqInstance(((1, 2, 0), (0, 1, 1)), (2, 1))
    assert uio.parse_klineq(uio.write_klineq(inst)) == inst


def test_forms_parsing():
    forms = uio.parse_forms("form 1 2 3\nform 0 -1 1/2 + 4\n")
    assert forms[0] == LinearForm((F(1), F(2), F(3)), F(0))
    assert forms[1] == LinearForm((F(0), F(-1), F(1, 2)), F(4))


@pytest.fixture()
def workdir(tmp_path):
    (tmp_path / "ones4.txt").write_text("1 1 1 1\n" * 4)
    (tmp_path / "c4.txt").write_text("4 4\n0 1\n1 2\n2 3\n0 3\n")
    (tmp_path / "zero.txt").write_text("vars 2\nconst 0\nout 0\n")
    (tmp_path / "sq.txt").write_text("var 0 : 0 0 1\nvar 1 : 0 0 1\n")
    (tmp_path / "mlc.txt").write_text("vars 2\nin 0\nin 1\nmul 0 1\nout 2\n")
    (tmp_path / "fx.txt").write_text("vars 1\nin 0\nconst -1\nadd 0 1\nout 2\n")
    (tmp_path / "ix.txt").write_text("var 0 : -4 0 1\n")
    (tmp_path / "binom.txt").write_text("vars 2\nin 0\nin 1\nadd 0 1\nmul 2 2\nout 3\n")
    return tmp_path


def run_cli(capsys, *argv) -> tuple:
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_cli_perm(workdir, capsys):
    code, out = run_cli(capsys, "perm", "--matrix", str(workdir / "ones4.txt"), "--rank", "1")
    assert code == 0
    assert "value: 24" in out


def test_cli_member_brute_zero(workdir, capsys):
    code, out = run_cli(
        capsys, "member", "--circuit", str(workdir / "zero.txt"),
        "--ideal", str(workdir / "sq.txt"), "--mode", "brute",
    )
    assert code == 0 and "decision: MEMBER" in out


def test_cli_member_auto_dispatches_powers(workdir, capsys):
    code, out = run_cli(
        capsys, "member", "--circuit", str(workdir / "mlc.txt"), "--ideal", str(workdir / "sq.txt"),
    )
    assert code == 0
    assert "dispatch=auto->scaled Hadamard" in out
    assert "decision: NOT-MEMBER" in out


def test_cli_vc_and_error_bound(workdir, capsys):
    code, out = run_cli(
        capsys, "vc", "--graph", str(workdir / "c4.txt"), "--k", "2", "--seed", "1",
        "--trials", "20",
    )
    assert code == 0
    assert "decision: HAS-VC" in out and "error_bound: 0 (one-sided)" in out
    code, out = run_cli(
        capsys, "vc", "--graph", str(workdir / "c4.txt"), "--k", "1", "--seed", "1",
        "--trials", "20",
    )
    assert code == 0
    assert "decision: NO-VC" in out and "error_bound: 1e-40" in out


def test_cli_determinism(workdir, capsys):
    args = ("vc", "--graph", str(workdir / "c4.txt"), "--k", "1", "--seed", "3", "--json")
    _, out1 = run_cli(capsys, *args)
    _, out2 = run_cli(capsys, *args)
    assert out1 == out2
    payload = json.loads(out1)
    assert set(payload) == {"decision", "value", "error_bound", "seed", "algorithm", "timings", "trials"}
    assert payload["timings"] is None


def test_cli_mlmd(workdir, capsys):
    code, out = run_cli(
        capsys, "mlmd", "--circuit", str(workdir / "mlc.txt"), "--k", "2",
        "--exponents", "2 2", "--trials", "auto", "--seed", "11",
    )
    assert code == 0 and "decision: NOT-IN-IDEAL" in out


def test_cli_certify_search_then_verify(workdir, capsys):
    cert_path = str(workdir / "cert.txt")
    code, out = run_cli(
        capsys, "certify", "--circuit", str(workdir / "fx.txt"), "--ideal", str(workdir / "ix.txt"),
        "--search", "--out-cert", cert_path,
    )
    assert code == 0 and "decision: NONMEMBER" in out
    code, out = run_cli(
        capsys, "certify", "--circuit", str(workdir / "fx.txt"), "--ideal", str(workdir / "ix.txt"),
        "--verify", cert_path,
    )
    assert code == 0 and "decision: ACCEPT" in out


def test_cli_cap_exceeded_exit_code(workdir, capsys):
    code, _ = run_cli(
        capsys, "member", "--circuit", str(workdir / "binom.txt"),
        "--ideal", str(workdir / "sq.txt"), "--mode", "brute", "--cap", "1",
    )
    assert code == 3


def test_cli_usage_error_exit_code(workdir, capsys):
    code, _ = run_cli(
        capsys, "member", "--circuit", str(workdir / "zero.txt"),
        "--ideal", str(workdir / "zero.txt"), "--mode", "brute",
    )
    assert code == 2  # an ideal file that does not parse


def test_cli_rem_eval(workdir, capsys, tmp_path):
    lr = tmp_path / "lr.txt"
    lr.write_text("vars 1\nin 0\nmul 0 0\nout 1\nform 1 1\n")
    code, out = run_cli(
        capsys, "rem-eval", "--input", str(lr), "--ideal", str(workdir / "sq.txt"),
        "--point", "1 1",
    )
    assert code == 0 and "value: 2" in out


def test_cli_reduce_one_in_three(workdir, capsys, tmp_path):
    src = tmp_path / "oit.txt"
    src.write_text("3 1\n0 1 2\n")
    out_c = tmp_path / "rc.txt"
    out_i = tmp_path / "ri.txt"
    out_k = tmp_path / "rk.txt"
    code, _ = run_cli(
        capsys, "reduce", "one-in-three", "--in", str(src),
        "--out-circuit", str(out_c), "--out-ideal", str(out_i), "--out-instance", str(out_k),
    )
    assert code == 0
    packed = uio.parse_klineq(out_k.read_text())
    assert sorted(packed.solutions()) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    circuit = uio.parse_circuit(out_c.read_text())
    ideal = uio.parse_ideal(out_i.read_text())
    from unideal.division import is_member_brute

    assert not is_member_brute(circuit, ideal)


def test_cli_reduce_indep_set(workdir, capsys, tmp_path):
    tri = tmp_path / "tri.txt"
    tri.write_text("3 3\n0 1\n1 2\n0 2\n")
    out_c = tmp_path / "ic.txt"
    out_i = tmp_path / "ii.txt"
    code, _ = run_cli(
        capsys, "reduce", "indep-set", "--in", str(tri), "--k", "2",
        "--out-circuit", str(out_c), "--out-ideal", str(out_i),
    )
    assert code == 0
    from unideal.division import is_member_brute

    assert is_member_brute(uio.parse_circuit(out_c.read_text()), uio.parse_ideal(out_i.read_text()))


def test_selftest_clean():
    from unideal.selftest import run_selftest

    assert run_selftest(seed=7) == []
