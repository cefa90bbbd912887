import json
from fractions import Fraction

import pytest

from core.config import ExitCodes, Paths
from symred import SymredOrchestrator, main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def fixture(name):
    return str(Paths.fixture(name))


def write_polynomial(tmp_path, terms, num_vars):
    path = tmp_path / "f.json"
    path.write_text(json.dumps({"vars": num_vars, "terms": [{"c": c, "e": e} for c, e in terms]}))
    return str(path)


class TestDispatch:
    def test_every_command_registered(self):
        commands = set(SymredOrchestrator().commands)
        assert commands == {"sab", "blockdiag", "theta", "reduce-sdp", "sos", "rewrite", "hmatrix", "higher-specht",
                            "orbitspace", "degree", "sage", "demo"}

    def test_unknown_flag(self, capsys):
        assert main(["theta", "--cycle", "5", "--bogus"]) == ExitCodes.USAGE

    def test_missing_command(self, capsys):
        assert main([]) == ExitCodes.USAGE

    def test_missing_file(self, capsys):
        code, out = run(capsys, "rewrite", "--in", "does/not/exist.json")
        assert code == ExitCodes.IO
        assert out == ""

    def test_not_invariant(self, capsys, tmp_path):
        path = write_polynomial(tmp_path, [("1", [2, 0])], 2)
        code, _ = run(capsys, "rewrite", "--in", path, "--basis", "e")
        assert code == ExitCodes.PRECONDITION


class TestDemos:
    def test_theta_c10(self, capsys):
        code, out = run_json(capsys, "demo", "theta-c10")
        assert code == ExitCodes.OK
        assert out["status"] == "pass"
        assert float(out["value"]["observed"]) == pytest.approx(5, abs=1e-6)

    def test_motzkin_rewrite(self, capsys):
        code, out = run_json(capsys, "demo", "motzkin-rewrite")
        assert code == ExitCodes.OK
        assert out["value"]["observed"] == "e1^2*e2^2 - 2*e2^3 - 3*e2^2 + 1"

    def test_list(self, capsys):
        code, out = run_json(capsys, "demo", "--list")
        assert code == ExitCodes.OK
        assert {"theta-c10", "sage-s3", "degree-quartic", "sdpa-roundtrip"} <= set(out["value"])

    def test_unknown_demo(self, capsys):
        code, _ = run(capsys, "demo", "no-such-demo")
        assert code == ExitCodes.PRECONDITION

    @pytest.mark.parametrize("name", ["c4-blockdiag", "motzkin-gram", "newton-e2", "s3-hmatrix", "higher-specht",
                                      "j-matrix-s2", "sage-s3", "sage-cosh", "sdpa-roundtrip"])
    def test_named_demo_passes(self, capsys, name):
        code, out = run_json(capsys, "demo", name)
        assert out["status"] == "pass", out
        assert code == ExitCodes.OK


class TestCommands:
    def test_motzkin_not_sos(self, capsys):
        code, out = run_json(capsys, "sos", "--in", fixture("motzkin.json"))
        assert code == ExitCodes.INFEASIBLE
        assert out["status"] == "infeasible"
        assert "-3" in out["value"]

    def test_text_format(self, capsys):
        code, out = run(capsys, "--format", "text", "rewrite", "--in", fixture("motzkin.json"), "--basis", "e")
        assert code == ExitCodes.OK
        assert out.startswith("status: ok")

    def test_theta_cycle(self, capsys):
        code, out = run_json(capsys, "theta", "--cycle", "4")
        assert code == ExitCodes.OK
        assert Fraction(out["value"]) == 2

    def test_degree(self, capsys):
        code, out = run_json(capsys, "-q", "degree", "--in", fixture("quartic_n4.json"), "--n", "4")
        assert code == ExitCodes.OK
        assert out["value"]["value"] == pytest.approx(-1, abs=1e-6)
        assert out["diagnostics"]["r"] == 2

    def test_degree_wrong_n(self, capsys):
        code, _ = run(capsys, "degree", "--in", fixture("quartic_n4.json"), "--n", "5")
        assert code == ExitCodes.PRECONDITION

    def test_sage_certificate(self, capsys):
        code, out = run_json(capsys, "sage", "--in", fixture("s3_signomial.json"), "--group", "S:3", "--pin", "0=1")
        assert code == ExitCodes.OK
        assert out["status"] == "feasible"

    def test_sage_underdetermined(self, capsys):
        code, _ = run(capsys, "sage", "--in", fixture("s3_signomial.json"), "--group", "S:3")
        assert code == ExitCodes.INFEASIBLE

    def test_sage_bound(self, capsys):
        code, out = run_json(capsys, "sage", "--in", fixture("cosh.json"), "--group", "trivial:1", "--bound")
        assert code == ExitCodes.OK
        assert out["value"] == pytest.approx(2, abs=1e-6)
