import json

from mimlab.cli import main
from mimlab.generators import fixtures, skew_grid
from mimlab.graph import parse_edge_list, read_edge_list, write_edge_list


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGen:
    def test_fixture_to_stdout(self, capsys):
        code, out, _ = run_cli(capsys, "gen", "fixture", "c4")
        assert code == 0
        assert parse_edge_list(out) == fixtures()["c4"]

    def test_skew_grid_to_file(self, tmp_path, capsys):
        path = tmp_path / "g.edges"
        code, _, _ = run_cli(
            capsys, "gen", "skew-grid", "--p", "3", "--q", "2", "--r", "2",
            "-o", str(path),
        )
        assert code == 0
        g = read_edge_list(path)
        expected, _ = skew_grid(3, 2, 2)
        assert g.n == expected.n and set(g.edges()) == set(expected.edges())
        assert "c meta family skew-grid" in path.read_text()

    def test_invalid_params_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "gen", "skew", "--q", "0")
        assert code == 2
        assert "error" in err


class TestWidth:
    def test_exact(self, tmp_path, capsys):
        path = tmp_path / "c4.edges"
        write_edge_list(fixtures()["c4"], path)
        code, out, _ = run_cli(
            capsys, "width", "--variant", "lu", "--input", str(path)
        )
        assert code == 0
        assert "value: 1" in out

    def test_json_output(self, tmp_path, capsys):
        path = tmp_path / "c4.edges"
        write_edge_list(fixtures()["c4"], path)
        code, out, _ = run_cli(
            capsys, "--json", "width", "--variant", "lmim", "--input", str(path)
        )
        payload = json.loads(out)
        assert code == 0
        assert payload["value"] == 1
        assert sorted(payload["ordering"]) == [1, 2, 3, 4]

    def test_heuristic(self, tmp_path, capsys):
        path = tmp_path / "c4.edges"
        write_edge_list(fixtures()["c4"], path)
        code, out, _ = run_cli(
            capsys, "width", "--variant", "lu", "--input", str(path),
            "--heuristic",
        )
        assert code == 0
        assert "mode: heuristic" in out

    def test_budget_exit_3(self, tmp_path, capsys):
        from mimlab.generators import clique_thread

        path = tmp_path / "big.edges"
        write_edge_list(clique_thread(5), path)  # 25 vertices > DP limit
        code, _, err = run_cli(
            capsys, "width", "--variant", "lu", "--input", str(path)
        )
        assert code == 3
        assert "budget" in err


class TestTraces:
    def test_text(self, tmp_path, capsys):
        path = tmp_path / "c4.edges"
        write_edge_list(fixtures()["c4"], path)
        code, out, _ = run_cli(
            capsys, "traces", "--input", str(path), "--side", "1,2"
        )
        assert code == 0
        assert "trace family (3 members)" in out
        assert "not applicable" in out  # complement {x3,x4} is not independent

    def test_json(self, tmp_path, capsys):
        from mimlab.generators import skew

        path = tmp_path / "skew.edges"
        write_edge_list(skew(3), path)
        code, out, _ = run_cli(
            capsys, "--json", "traces", "--input", str(path),
            "--side", "1,2,3",
        )
        payload = json.loads(out)
        assert code == 0
        assert payload["trace_count"] == 4
        assert payload["matching_size"] == 1
        assert payload["bound_check"]["within_binomial"]


class TestObdd:
    def test_build_with_order(self, tmp_path, capsys):
        path = tmp_path / "c4.edges"
        write_edge_list(fixtures()["c4"], path)
        code, out, _ = run_cli(
            capsys, "obdd", "--input", str(path), "--order", "3,1,2,4"
        )
        assert code == 0
        assert "equivalence check: pass" in out
        assert "accepting assignments: 7" in out

    def test_minimize_and_exports(self, tmp_path, capsys):
        path = tmp_path / "c4.edges"
        write_edge_list(fixtures()["c4"], path)
        dot = tmp_path / "z.dot"
        dimacs = tmp_path / "z.cnf"
        code, out, _ = run_cli(
            capsys, "obdd", "--input", str(path), "--minimize", "dp",
            "--dot", str(dot), "--dimacs", str(dimacs),
        )
        assert code == 0
        assert "minimal quasi-reduced size: 7" in out
        assert dot.read_text().startswith("digraph")
        assert dimacs.read_text().startswith("p cnf 4 4")

    def test_minimize_exact_matches_dp(self, tmp_path, capsys):
        path = tmp_path / "c4.edges"
        write_edge_list(fixtures()["c4"], path)
        _, out_dp, _ = run_cli(capsys, "obdd", "--input", str(path),
                               "--minimize", "dp")
        _, out_enum, _ = run_cli(capsys, "obdd", "--input", str(path),
                                 "--minimize", "exact")
        pick = lambda out: [l for l in out.splitlines() if "minimal" in l]
        assert pick(out_dp) == pick(out_enum)


class TestVerify:
    def test_small_run_exit_0(self, tmp_path, capsys):
        csv_path = tmp_path / "rows.csv"
        json_path = tmp_path / "rows.json"
        code, out, _ = run_cli(
            capsys, "verify", "--checks", "corona,vc",
            "--csv", str(csv_path), "--json-out", str(json_path),
        )
        assert code == 0
        assert "rows=" in out
        assert csv_path.exists() and json_path.exists()

    def test_unknown_check_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--checks", "bogus")
        assert code == 2
        assert "unknown check" in err


class TestExport:
    def test_json_to_csv(self, tmp_path, capsys):
        json_path = tmp_path / "rows.json"
        csv_path = tmp_path / "rows.csv"
        code, _, _ = run_cli(
            capsys, "verify", "--checks", "corona",
            "--json-out", str(json_path),
        )
        assert code == 0
        code, _, _ = run_cli(
            capsys, "export", "--rows", str(json_path),
            "--format", "csv", "--out", str(csv_path),
        )
        assert code == 0
        lines = csv_path.read_text().strip().splitlines()
        assert len(lines) == 4  # header + three corona rows

    def test_csv_matches_direct_export(self, tmp_path, capsys):
        json_path = tmp_path / "rows.json"
        direct_csv = tmp_path / "direct.csv"
        via_export = tmp_path / "via.csv"
        run_cli(capsys, "verify", "--checks", "corona",
                "--json-out", str(json_path), "--csv", str(direct_csv))
        run_cli(capsys, "export", "--rows", str(json_path),
                "--format", "csv", "--out", str(via_export))
        assert direct_csv.read_bytes() == via_export.read_bytes()
