"""Command line behavior: formats, exit codes, file indirection."""

import json

from treepark.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestPark:
    def test_figure_example(self, capsys):
        code, out, _ = run(capsys, "park", "--tree", "3 3 5 5 0", "--seq", "2 2 1 4 2")
        assert code == 0
        assert out == "spots: 2 3 1 4 5\n"

    def test_failure_exits_one(self, capsys):
        code, out, _ = run(capsys, "park", "--tree", "2 3 4 5 0", "--seq", "3 3 3 4 5")
        assert code == 1
        assert out.startswith("spots: 3 4 5 - -")

    def test_bad_tree_exits_two(self, capsys):
        code, _, err = run(capsys, "park", "--tree", "2 3 2", "--seq", "1 1 1")
        assert code == 2
        assert "cycle" in err

    def test_file_indirection(self, capsys, tmp_path):
        tree = tmp_path / "tree.txt"
        tree.write_text("3 3 5 5 0\n")
        code, out, _ = run(capsys, "park", "--tree", f"@{tree}", "--seq", "2 2 1 4 2")
        assert code == 0 and "2 3 1 4 5" in out

    def test_missing_file_exits_two(self, capsys):
        code, _, err = run(capsys, "park", "--tree", "@/no/such/file", "--seq", "1")
        assert code == 2


class TestPredicates:
    def test_prime_true(self, capsys):
        code, out, _ = run(capsys, "prime", "--tree", "2 4 4 5 0", "--seq", "1 3 2 3 1")
        assert code == 0 and out == "prime: true\n"

    def test_prime_false(self, capsys):
        code, out, _ = run(capsys, "prime", "--tree", "3 3 5 5 0", "--seq", "2 2 1 4 2")
        assert code == 1 and out == "prime: false\n"

    def test_check(self, capsys):
        code, out, _ = run(capsys, "check", "--tree", "3 3 5 5 0", "--seq", "2 2 1 4 2")
        assert code == 0 and out == "parking-function: true\n"

    def test_used_edges(self, capsys):
        code, out, _ = run(capsys, "used-edges", "--tree", "3 3 5 5 0", "--seq", "2 2 1 4 2")
        assert code == 0 and out == "used-edges: 2->3 3->5\n"

    def test_used_edges_refuses_non_parking(self, capsys):
        code, _, err = run(capsys, "used-edges", "--tree", "2 3 4 5 0", "--seq", "3 3 3 4 5")
        assert code == 2 and "parking function" in err


class TestMaps:
    def test_psi_figure(self, capsys):
        code, out, _ = run(capsys, "psi", "--tree", "0 3 4 1 4", "--seq", "2 5 3 5 2")
        assert code == 0
        assert out.splitlines()[0] == "sigma: 5 1 2 4 3"

    def test_psi_roundtrip_mode(self, capsys):
        code, out, _ = run(
            capsys, "psi", "--tree", "0 3 4 1 4", "--seq", "2 5 3 5 2", "--check"
        )
        assert code == 0 and "roundtrip: ok" in out

    def test_psi_rejects_non_prime(self, capsys):
        code, _, err = run(capsys, "psi", "--tree", "3 3 5 5 0", "--seq", "2 2 1 4 2")
        assert code == 2 and "prime" in err

    def test_psi_inv(self, capsys):
        code, out, _ = run(
            capsys, "psi-inv", "--perm", "1 2", "--ptree", "*[1]", "--check"
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "tree: 2 0"
        assert lines[1] == "seq: 1 1"

    def test_psi_roundtrip_through_text(self, capsys):
        code, out, _ = run(
            capsys, "psi", "--tree", "2 3 4 5 8 7 8 9 0", "--seq", "6 4 1 3 3 1 6 7 2"
        )
        assert code == 0
        sigma = out.splitlines()[0].removeprefix("sigma: ")
        ptree = out.splitlines()[1]
        assert ptree == "*[6[3] 2[5 4] 8[7[1]]]"
        code, out, _ = run(capsys, "psi-inv", "--perm", sigma, "--ptree", ptree)
        assert code == 0
        assert out.splitlines() == ["tree: 2 3 4 5 8 7 8 9 0", "seq: 6 4 1 3 3 1 6 7 2"]

    def test_borie(self, capsys):
        code, out, _ = run(capsys, "borie", "--perm", "2 1")
        assert code == 0 and out == "seq: 1 2\n"

    def test_borie_rejects_pattern(self, capsys):
        code, _, err = run(capsys, "borie", "--perm", "1 3 2")
        assert code == 2 and "132" in err


class TestSeriesAndCounts:
    def test_series_all_ok(self, capsys):
        code, out, _ = run(capsys, "series", "--order", "8")
        assert code == 0
        assert "parking-composition: OK" in out
        assert "INFO" in out  # the informational residual is reported, not failed

    def test_single_identity(self, capsys):
        code, out, _ = run(capsys, "series", "--order", "6", "--identity", "prime-derivative")
        assert code == 0 and out.startswith("prime-derivative: OK")

    def test_counts_tsv(self, capsys):
        code, out, _ = run(capsys, "counts", "--max", "5")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "n\tF\tP\tFtilde\tPtilde\tPstar\tFstar"
        p_column = [line.split("\t")[2] for line in lines[1:]]
        assert p_column == ["1", "2", "24", "720", "40320"]

    def test_counts_json_mirrors_tsv(self, capsys):
        code, out, _ = run(capsys, "counts", "--max", "3", "--format", "json")
        assert code == 0
        rows = json.loads(out)
        assert rows[2] == {
            "n": 3, "F": 132, "P": 24, "Ftilde": 39, "Ptilde": 12, "Pstar": 12, "Fstar": 48,
        }

    def test_deterministic_output(self, capsys):
        _, first, _ = run(capsys, "counts", "--max", "4")
        _, second, _ = run(capsys, "counts", "--max", "4")
        assert first == second


class TestVerify:
    def test_small_all(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "all", "--max-n", "2")
        assert code == 0
        assert "FAIL" not in out

    def test_json_format(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--suite", "roundtrip", "--max-n", "2", "--format", "json"
        )
        assert code == 0
        rows = json.loads(out)
        assert all(row["status"] == "PASS" for row in rows)
        assert {row["n"] for row in rows} == {1, 2}


class TestUsage:
    def test_no_command(self, capsys):
        assert main([]) == 2

    def test_unknown_flag(self, capsys):
        assert main(["park", "--tree", "0", "--seq", "1", "--bogus"]) == 2

    def test_help_everywhere(self, capsys):
        for command in ("park", "check", "prime", "used-edges", "psi", "psi-inv",
                        "borie", "series", "counts", "verify"):
            assert main([command, "--help"]) == 0
            capsys.readouterr()
