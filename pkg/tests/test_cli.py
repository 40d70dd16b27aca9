from colim.cli import main

from conftest import FIXTURES

X2 = str(FIXTURES / "x2.diag")
X3 = str(FIXTURES / "x3.diag")
X4 = str(FIXTURES / "x4.diag")
FIB = str(FIXTURES / "fib.diag")
X2_X4 = str(FIXTURES / "x2_x4.cert")
FIB_SELF = str(FIXTURES / "fib_self.cert")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out.splitlines(), captured.err


class TestValidate:
    def test_clean(self, capsys):
        code, out, _ = run(capsys, "validate", X2)
        assert code == 0
        assert "status: clean" in out

    def test_invalid(self, capsys):
        code, out, _ = run(capsys, "validate", str(FIXTURES / "bad_simplicial.diag"))
        assert code == 1
        assert "status: invalid" in out
        assert "violation: negative entry at transition 1" in out

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "validate", "no_such_file.diag")
        assert code == 2
        assert "error:" in err

    def test_parse_failure(self, capsys):
        code, _, err = run(capsys, "equal", str(FIXTURES / "bad_float.diag"),
                           "--e1", "1:1", "--e2", "1:1")
        assert code == 2
        assert "non-integer entry" in err


class TestVerify:
    def test_accepts_fixture(self, capsys):
        code, out, _ = run(capsys, "verify", X2, X4, X2_X4)
        assert code == 0
        assert "status: accepted" in out

    def test_accepts_simplicial_self(self, capsys):
        code, out, _ = run(capsys, "verify", FIB, FIB, FIB_SELF)
        assert code == 0

    def test_rejects_wrong_pair(self, capsys):
        code, out, _ = run(capsys, "verify", X2, X3, X2_X4)
        assert code == 1
        assert "status: rejected" in out


class TestSearch:
    def test_finds_and_emits(self, capsys, tmp_path):
        out_file = tmp_path / "found.cert"
        code, out, _ = run(capsys, "search", X2, X4, "--depth", "3", "--bound", "8",
                           "--horizon", "12", "--emit", str(out_file))
        assert code == 0
        assert "status: found" in out
        assert out_file.exists()
        code, out, _ = run(capsys, "verify", X2, X4, str(out_file))
        assert code == 0

    def test_budget_exhausted(self, capsys):
        code, out, _ = run(capsys, "search", X2, X3, "--depth", "3", "--bound", "8",
                           "--horizon", "12")
        assert code == 3
        assert "status: exhausted" in out


class TestMapAndQueries:
    def test_map_forward(self, capsys):
        code, out, _ = run(capsys, "map", X2, X4, X2_X4, "--element", "2:1")
        assert code == 0
        assert "image: 2:2" in out

    def test_map_backward(self, capsys):
        code, out, _ = run(capsys, "map", X2, X4, X2_X4, "--element", "1:1", "--backward")
        assert code == 0
        assert "image: 3:4" in out

    def test_equal(self, capsys):
        code, out, _ = run(capsys, "equal", X2, "--e1", "1:1", "--e2", "2:2", "--horizon", "4")
        assert code == 0
        assert "answer: yes" in out and "witness: 2" in out

    def test_cone(self, capsys):
        code, out, _ = run(capsys, "cone", FIB, "--element", "1:1,-1", "--horizon", "5")
        assert code == 0
        assert "answer: yes" in out and "witness: 2" in out

    def test_cone_on_plain_is_error(self, capsys):
        code, _, err = run(capsys, "cone", X2, "--element", "1:1")
        assert code == 2
        assert "simplicial" in err

    def test_divisible(self, capsys):
        code, out, _ = run(capsys, "divisible", X2, "--element", "1:1", "--m", "2",
                           "--horizon", "6")
        assert code == 0
        assert "answer: yes" in out


class TestInvariants:
    def test_single(self, capsys):
        code, out, _ = run(capsys, "invariants", X2)
        assert code == 0
        assert "rank: 1" in out
        assert "steinitz: 2^inf" in out

    def test_pair_conclusive(self, capsys):
        code, out, _ = run(capsys, "invariants", X2, X3)
        assert code == 0
        assert any(line.startswith("evidence: CONCLUSIVE") for line in out)

    def test_pair_empty(self, capsys):
        code, out, _ = run(capsys, "invariants", X2, X4)
        assert code == 0
        assert "evidence: none" in out


class TestDeterminism:
    def test_exit_codes_are_stable_over_corpus(self, capsys):
        corpus = [
            ("validate", X2), ("validate", X3), ("validate", X4), ("validate", FIB),
            ("validate", str(FIXTURES / "plane.diag")),
            ("validate", str(FIXTURES / "bad_simplicial.diag")),
            ("verify", X2, X4, X2_X4),
            ("verify", FIB, FIB, FIB_SELF),
            ("verify", X2, X3, X2_X4),
            ("invariants", X2, X3),
        ]
        first = [run(capsys, *argv) for argv in corpus]
        second = [run(capsys, *argv) for argv in corpus]
        assert [(c, o) for c, o, _ in first] == [(c, o) for c, o, _ in second]
