import json

import pytest

from fasdlab.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestGen:
    def test_gen_cycle_stdout(self, capsys):
        code, out, _ = run(["gen", "cycle", "-n", "6"], capsys)
        assert code == 0
        assert out.splitlines()[0] == "6 6"

    def test_gen_to_file_and_dot(self, tmp_path, capsys):
        f = tmp_path / "d8.txt"
        dot = tmp_path / "d8.dot"
        code, _, _ = run(["gen", "dg", "--g", "8", "-o", str(f), "--dot", str(dot)], capsys)
        assert code == 0
        assert f.read_text().splitlines()[0] == "12 15"
        assert dot.read_text().startswith("digraph")

    def test_gen_random_deterministic(self, capsys):
        a = run(["gen", "random", "-n", "10", "--seed", "5"], capsys)[1]
        b = run(["gen", "random", "-n", "10", "--seed", "5"], capsys)[1]
        assert a == b

    def test_usage_error_exit_2(self, capsys):
        code, _, err = run(["gen", "tournament", "-n", "4"], capsys)
        assert code == 2 and "error" in err


class TestSolvers:
    @pytest.fixture
    def d8_file(self, tmp_path, capsys):
        f = tmp_path / "d8.txt"
        run(["gen", "dg", "--g", "8", "-o", str(f)], capsys)
        return str(f)

    def test_fas_d8(self, d8_file, capsys):
        code, out, _ = run(["fas", d8_file], capsys)
        assert code == 0 and out.splitlines()[0] == "fas 2"

    def test_fas_budget_exit_3(self, tmp_path, capsys):
        f = tmp_path / "big.txt"
        run(["gen", "cycle", "-n", "30", "-o", str(f)], capsys)
        code, _, err = run(["fas", str(f)], capsys)
        assert code == 3 and "refused" in err

    def test_fasd_with_certificate(self, d8_file, tmp_path, capsys):
        cert = tmp_path / "cert.json"
        code, out, _ = run(["fasd", d8_file, "--certificate", str(cert)], capsys)
        assert code == 0 and out.splitlines()[0] == "fasd 7"
        doc = json.loads(cert.read_text())
        assert doc["schema"] == "fasdlab-cert-v1" and doc["value"] == 7

    def test_fasd_fixed_t(self, d8_file, capsys):
        code, out, _ = run(["fasd", d8_file, "--t", "8"], capsys)
        assert code == 0 and "unsat" in out

    def test_decompose3(self, tmp_path, capsys):
        f = tmp_path / "c9.txt"
        run(["gen", "random", "-n", "20", "--max-deg", "4", "-o", str(f)], capsys)
        out_json = tmp_path / "classes.json"
        code, out, _ = run(
            ["decompose3", str(f), "--verify", "--emit-classes", str(out_json)], capsys
        )
        assert code == 0
        assert out.count("sigma") == 3
        doc = json.loads(out_json.read_text())
        assert len(doc["classes"]) == 3

    def test_colorg(self, tmp_path, capsys):
        f = tmp_path / "g.txt"
        run(["gen", "random", "-n", "14", "--max-deg", "3", "--min-girth", "4", "-o", str(f)], capsys)
        code, out, _ = run(["colorg", str(f), "--g", "4"], capsys)
        assert code == 0
        colors = set(json.loads(out).values())
        assert colors <= {1, 2, 3, 4}

    def test_fas6(self, tmp_path, capsys):
        f = tmp_path / "g6.txt"
        run(["gen", "cycle", "-n", "12", "-o", str(f)], capsys)
        code, out, _ = run(["fas6", str(f)], capsys)
        assert code == 0 and "size" in out

    def test_fvs(self, tmp_path, capsys):
        f = tmp_path / "co5.txt"
        run(["gen", "co", "-n", "5", "-o", str(f)], capsys)
        code, out, _ = run(["fvs", str(f)], capsys)
        assert code == 0 and "size 3" in out and "digon-odd-cycle" in out


class TestSpectralCommands:
    def test_spectral_and_mixing(self, tmp_path, capsys):
        f = tmp_path / "paley.txt"
        run(["gen", "paley", "-n", "13", "-o", str(f)], capsys)
        code, out, _ = run(["spectral", str(f)], capsys)
        assert code == 0 and "lambda=2.302" in out
        code, out, _ = run(["mixing", str(f), "--samples", "200"], capsys)
        assert code == 0 and "violations=0" in out

    def test_orient_exp_csv(self, tmp_path, capsys):
        f = tmp_path / "c16.txt"
        from fasdlab.fileio import write_digraph
        from fasdlab.generators import circulant_digraph

        write_digraph(f, circulant_digraph(16, [1, 2]))
        csv = tmp_path / "stats.csv"
        code, out, _ = run(
            ["orient-exp", str(f), "--trials", "5", "--csv", str(csv)], capsys
        )
        assert code == 0
        assert csv.read_text().startswith("level,pairs,violations")


class TestVerifyPaper:
    def test_single_check_with_json(self, tmp_path, capsys):
        report = tmp_path / "report.json"
        code, out, _ = run(
            ["verify-paper", "--check", "d8", "--json", str(report)], capsys
        )
        assert code == 0 and "[PASS] d8" in out
        doc = json.loads(report.read_text())
        assert doc[0]["check"] == "d8" and doc[0]["passed"]

    def test_unknown_check_exit_2(self, capsys):
        code, _, err = run(["verify-paper", "--check", "nope"], capsys)
        assert code == 2 and "unknown check" in err

    def test_multiple_checks(self, capsys):
        code, out, _ = run(
            ["verify-paper", "--check", "d8", "--check", "h5"], capsys
        )
        assert code == 0 and out.count("[PASS]") == 2
