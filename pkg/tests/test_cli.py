import json

import pytest

from cli import build_parser, main
from commands import COMMANDS
from commands.bruhat_command import BruhatCommand
from shared.config import RunConfig

ALPHA_BETA_CSV = "1,1,0\n1,0,1\n1,0,0\n"


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--no-progress")
    return code, json.loads(out)


class TestParser:
    def test_commands_are_registered(self):
        assert set(COMMANDS) == {
            "bruhat",
            "polytope",
            "poincare",
            "orbit",
            "retraction",
            "sweep",
            "catalan",
            "bott",
        }

    def test_global_flags_after_subcommand(self):
        args = build_parser().parse_args(["bruhat", "12", "21", "--seed", "3", "--format", "csv"])
        assert args.seed == 3
        assert args.output_format == "csv"

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as exit_info:
            main(["--version"])
        assert exit_info.value.code == 0
        assert "torus-orbits" in capsys.readouterr().out


class TestBruhat:
    def test_comparable(self, capsys):
        code, report = run_json(capsys, "bruhat", "1324", "4231")
        assert code == 0
        assert report["status"] == "success"
        assert report["output"]["v_leq_w"]
        assert report["output"]["interval_size"] == 16
        assert report["error"] is None
        assert report["config"]["command"] == "bruhat"

    def test_rank_mismatch(self, capsys):
        code, report = run_json(capsys, "bruhat", "123", "1234")
        assert code == 1
        assert report["status"] == "error"
        assert report["error"]["type"] == "RANK_MISMATCH"

    def test_text_format(self, capsys):
        code, out = run(capsys, "bruhat", "213", "132", "--format", "text")
        assert code == 0
        assert "comparable: False" in out

    def test_out_of_bounds_rank(self, capsys):
        code, report = run_json(capsys, "bruhat", "12", "21", "--n", "9")
        assert code == 1
        assert report["error"]["type"] == "OUT_OF_BOUNDS"


class TestPolytope:
    def test_permutohedron(self, capsys):
        code, report = run_json(capsys, "polytope", "perm", "3")
        assert code == 0
        assert report["output"]["f_vector"] == [6, 6, 1]
        assert report["output"]["simple"]

    def test_cube(self, capsys):
        code, report = run_json(capsys, "polytope", "qvw", "1243", "3412", "--fan")
        assert code == 0
        assert report["output"]["cube"]
        assert report["output"]["toric"]
        assert len(report["output"]["normal_fan"]["rays"]) == 6

    def test_invalid_interval(self, capsys):
        code, report = run_json(capsys, "polytope", "qvw", "213", "132")
        assert code == 1
        assert report["error"]["type"] == "INVALID_INTERVAL"

    def test_lattice_bound(self, capsys):
        code, report = run_json(capsys, "polytope", "qw", "321456")
        assert code == 1
        assert report["error"]["type"] == "OUT_OF_BOUNDS"

    def test_matroid(self, capsys):
        code, report = run_json(capsys, "polytope", "matroid", "123", "132", "213", "312")
        assert code == 0
        assert report["output"]["edge_directions_are_roots"]


class TestPoincare:
    def test_longest_element(self, capsys):
        code, report = run_json(capsys, "poincare", "321")
        assert code == 0
        assert report["output"]["poincare"] == "1 + 4t^2 + t^4"
        assert report["output"]["smooth"]
        assert report["output"]["h_matches"]


class TestOrbit:
    def test_matrix_file(self, capsys, tmp_path):
        matrix = tmp_path / "x.csv"
        matrix.write_text(ALPHA_BETA_CSV, encoding="utf-8")
        code, report = run_json(capsys, "orbit", str(matrix))
        assert code == 0
        output = report["output"]
        assert output["fixed_points"] == ["123", "132", "213", "312"]
        assert output["retraction"]["231"] == "213"
        assert output["fan"]["312"] == ["312", "321"]
        assert output["agree"]

    def test_csv_rows(self, capsys, tmp_path):
        matrix = tmp_path / "x.csv"
        matrix.write_text(ALPHA_BETA_CSV, encoding="utf-8")
        code, out = run(capsys, "orbit", str(matrix), "--format", "csv", "--no-progress")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "u,retraction"
        assert "321,312" in lines

    def test_random_flag_is_seeded(self, capsys):
        _, first = run_json(capsys, "orbit", "--n", "3", "--seed", "4")
        _, second = run_json(capsys, "orbit", "--n", "3", "--seed", "4")
        assert first["output"] == second["output"]

    def test_missing_file(self, capsys, tmp_path):
        code, report = run_json(capsys, "orbit", str(tmp_path / "absent.csv"))
        assert code == 1
        assert report["error"]["type"] == "PARSE_ERROR"

    def test_singular_matrix(self, capsys, tmp_path):
        matrix = tmp_path / "x.csv"
        matrix.write_text("1,2\n2,4\n", encoding="utf-8")
        code, report = run_json(capsys, "orbit", str(matrix))
        assert code == 1
        assert report["error"]["type"] == "SINGULAR_MATRIX"


class TestRetraction:
    def test_matroid_file(self, capsys, tmp_path):
        subset = tmp_path / "m.json"
        subset.write_text(json.dumps({"n": 3, "elements": ["123", "132"]}), encoding="utf-8")
        code, report = run_json(capsys, "retraction", "--matroid", str(subset))
        assert code == 0
        assert report["output"]["agree"]
        assert len(report["output"]["table"]) == 6

    def test_signed_subset(self, capsys, tmp_path):
        subset = tmp_path / "m.json"
        elements = ["1-423", "14-3-2", "2413", "-3-41-2"]
        subset.write_text(json.dumps({"elements": elements}), encoding="utf-8")
        code, report = run_json(capsys, "retraction", "--matroid", str(subset))
        assert code == 0
        table = {row["u"]: row["algebraic"] for row in report["output"]["table"]}
        assert len(table) == 2**4 * 24
        assert table["-23-14"] == "14-3-2"

    def test_bad_json(self, capsys, tmp_path):
        subset = tmp_path / "m.json"
        subset.write_text("[1, 2", encoding="utf-8")
        code, report = run_json(capsys, "retraction", "--matroid", str(subset))
        assert code == 1
        assert report["error"]["type"] == "PARSE_ERROR"


class TestSweep:
    def test_sf_classes(self, capsys):
        code, report = run_json(capsys, "sweep", "sf-classes", "--n", "3")
        assert code == 0
        assert report["output"]["count"] == 5
        assert "not 4" in report["output"]["note"]

    def test_toric_schubert(self, capsys):
        code, report = run_json(capsys, "sweep", "toric-schubert", "--n", "3")
        assert code == 0
        assert report["output"]["holds"]
        assert report["output"]["checked"] == 6

    def test_limit(self, capsys):
        code, report = run_json(capsys, "sweep", "richardson", "--n", "3", "--limit", "4")
        assert code == 0
        assert report["output"]["checked"] == 4

    def test_needs_rank(self, capsys):
        code, report = run_json(capsys, "sweep", "catalan")
        assert code == 1
        assert report["error"]["type"] == "PARSE_ERROR"

    def test_csv_rows(self, capsys):
        code, out = run(capsys, "sweep", "sf-classes", "--n", "2", "--format", "csv")
        assert code == 0
        assert out.split("\n")[0] == "index,key"


class TestCatalanAndBott:
    def test_permutation(self, capsys):
        code, report = run_json(capsys, "catalan", "2314")
        assert code == 0
        assert report["output"]["hat_u"] == "13425"
        assert report["output"]["atoms_coatoms"]["atoms_match"]

    def test_triangulations(self, capsys):
        code, report = run_json(capsys, "catalan", "--n", "3", "--limit", "2")
        assert code == 0
        assert report["output"]["triangulations"] == 5
        assert len(report["output"]["entries"]) == 2

    def test_bott_classes(self, capsys):
        code, report = run_json(capsys, "bott", "--n", "3")
        assert code == 0
        assert report["output"]["count"] == 5

    def test_bott_forest(self, capsys, tmp_path):
        forest = tmp_path / "f.json"
        forest.write_text(json.dumps({"n": 2, "parents": {"2": 1}, "signs": {"2": "-"}}))
        code, report = run_json(capsys, "bott", "--forest", str(forest))
        assert code == 0
        assert report["output"]["fano"]
        assert report["output"]["round_trip"]

    def test_bott_triangulation(self, capsys, tmp_path):
        triangulation = tmp_path / "t.json"
        triangulation.write_text(json.dumps({"n": 3, "diagonals": [[0, 2], [0, 3]]}))
        code, report = run_json(capsys, "bott", "--triangulation", str(triangulation))
        assert code == 0
        assert report["output"]["round_trip"]


class TestCommandBase:
    def test_cache_round_trip(self, tmp_path):
        config = RunConfig.from_env(command="bruhat", cache_dir=str(tmp_path), progress=False)
        arguments = {"v": "12", "w": "21"}
        first = BruhatCommand(config).run(arguments)
        second = BruhatCommand(config).run(arguments)
        assert first == second
        assert (tmp_path / "cache.json").exists()

    def test_cache_distinguishes_arguments(self, tmp_path):
        config = RunConfig.from_env(command="bruhat", cache_dir=str(tmp_path), progress=False)
        first = BruhatCommand(config).run({"v": "123", "w": "321"})
        second = BruhatCommand(config).run({"v": "321", "w": "123"})
        assert first["output"]["v_leq_w"]
        assert (second["output"]["v"], second["output"]["w"]) == ("321", "123")
        assert not second["output"]["v_leq_w"]
        assert second["output"]["w_leq_v"]

    def test_unexpected_errors_are_wrapped(self):
        command = BruhatCommand(RunConfig.from_env(command="bruhat", progress=False))
        envelope = command.run({"v": "12"})
        assert envelope["status"] == "error"
        assert envelope["error"]["type"] == "PROCESSING_ERROR"
