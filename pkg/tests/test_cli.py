"""End-to-end command-line tests, including the exit-code contract."""

from __future__ import annotations

import json

import pytest

from nbcomplex import (ExperimentConfig, complete_graph, gnp_sample,
                       parse_edge_list, parse_facet_list, records_from_csv,
                       records_from_jsonl, run_survey)
from nbcomplex.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------------------
# graph generation and the source contract


def test_gen_family_to_stdout(capsys):
    code, out, _ = run_cli(capsys, "gen", "--family", "complete:4")
    assert code == 0
    assert parse_edge_list(out) == complete_graph(4)


def test_gen_gnp_matches_library_sampler(capsys):
    code, out, _ = run_cli(capsys, "gen", "--gnp", "8", "0.5", "3")
    assert code == 0
    assert parse_edge_list(out) == gnp_sample(8, 0.5, 3)


def test_gen_to_file(tmp_path, capsys):
    path = str(tmp_path / "g.txt")
    code, out, _ = run_cli(capsys, "gen", "--family", "cycle:5", "-o", path)
    assert code == 0 and out == ""
    with open(path) as fh:
        assert parse_edge_list(fh.read()).n == 5


def test_exactly_one_graph_source_required(capsys):
    code, _, err = run_cli(capsys, "gen")
    assert code == 1 and "exactly one" in err
    code, _, err = run_cli(capsys, "gen", "--family", "cycle:5",
                           "--gnp", "5", "0.5", "1")
    assert code == 1


def test_gen_bad_gnp_tokens(capsys):
    code, _, err = run_cli(capsys, "gen", "--gnp", "8", "half", "3")
    assert code == 1 and "--gnp" in err


def test_unknown_family_exits_one(capsys):
    code, _, err = run_cli(capsys, "gen", "--family", "dodecahedron:1")
    assert code == 1


# ---------------------------------------------------------------------------
# complex and homology


def test_complex_facets(capsys):
    code, out, _ = run_cli(capsys, "complex", "--family", "complete:3")
    assert code == 0
    c = parse_facet_list(out)
    assert c.facets == ((0, 1), (0, 2), (1, 2))


def test_homology_of_a_complete_graph(capsys):
    code, out, _ = run_cli(capsys, "homology", "--family", "complete:4")
    assert code == 0
    payload = json.loads(out)
    assert payload["betti"] == [0, 0, 1]
    assert payload["torsion"] == [[], [], []]
    assert payload["source"] in ("direct", "retract")


def test_homology_gf2_only(capsys):
    code, out, _ = run_cli(capsys, "homology", "--family", "complete:4",
                           "--coeff", "f2")
    payload = json.loads(out)
    assert code == 0
    assert payload["betti"] is None
    assert payload["field2"] == [0, 0, 1]


def test_homology_both_coefficient_systems(capsys):
    code, out, _ = run_cli(capsys, "homology", "--family", "cycle:5",
                           "--coeff", "both")
    payload = json.loads(out)
    assert payload["betti"] == [0, 1]
    assert payload["field2"] == [0, 1]


def test_homology_from_facet_file(tmp_path, capsys):
    fpath = str(tmp_path / "facets.txt")
    code, _, _ = run_cli(capsys, "complex", "--family", "complete:4",
                         "-o", fpath)
    assert code == 0
    code, out, _ = run_cli(capsys, "homology", "--facets", fpath)
    payload = json.loads(out)
    assert code == 0
    assert payload["betti"] == [0, 0, 1]
    assert payload["source"] == "facets"


def test_homology_facets_excludes_graph_sources(tmp_path, capsys):
    fpath = str(tmp_path / "facets.txt")
    run_cli(capsys, "complex", "--family", "complete:3", "-o", fpath)
    code, _, err = run_cli(capsys, "homology", "--facets", fpath,
                           "--family", "complete:3")
    assert code == 1 and "replaces" in err


def test_homology_max_dim_truncates(capsys):
    code, out, _ = run_cli(capsys, "homology", "--family", "complete:5",
                           "--max-dim", "1")
    payload = json.loads(out)
    assert payload["betti"] == [0, 0]
    assert payload["truncated"] is True


# ---------------------------------------------------------------------------
# retract and certificates


def test_retract_reports_poset_and_order_complex(capsys):
    code, out, _ = run_cli(capsys, "retract", "--family", "complete:3")
    payload = json.loads(out)
    assert code == 0
    assert payload["poset"]["height"] == 1
    assert len(payload["poset"]["elements"]) == 6
    assert payload["retract"]["dimension"] == 1
    assert payload["retract"]["facet_count"] == 6


def test_certify_complete_graph(capsys):
    code, out, _ = run_cli(capsys, "certify", "--family", "complete:4")
    payload = json.loads(out)
    assert code == 0
    assert payload["count"] == 1
    assert payload["best_sphere_dim"] == 2
    cert = payload["certificates"][0]
    assert cert["clique"] == [0, 1, 2, 3] and cert["validated"] is True


def test_certify_five_cycle_finds_nothing(capsys):
    code, out, _ = run_cli(capsys, "certify", "--family", "cycle:5")
    payload = json.loads(out)
    assert payload["count"] == 0
    assert payload["best_sphere_dim"] is None


# ---------------------------------------------------------------------------
# chromatic comparison


def test_chromatic_json(capsys):
    code, out, _ = run_cli(capsys, "chromatic", "--family", "cycle:5")
    payload = json.loads(out)
    assert code == 0
    assert payload["chromatic_number"] == 3
    assert payload["clique_number"] == 2
    assert payload["neighborliness_bound"] == 2
    assert payload["missing"] == []


def test_chromatic_csv(capsys):
    code, out, _ = run_cli(capsys, "chromatic", "--family", "cycle:5",
                           "--format", "csv")
    lines = out.strip().split("\n")
    assert code == 0 and len(lines) == 2
    assert lines[0].startswith("n,edges,chromatic_number")


def test_chromatic_cap_shows_up_as_missing_not_failure(capsys):
    code, out, _ = run_cli(capsys, "chromatic", "--family", "cycle:9",
                           "--vertex-cap", "5")
    payload = json.loads(out)
    assert code == 0
    assert payload["chromatic_number"] is None
    assert "chromatic_number" in payload["missing"]


# ---------------------------------------------------------------------------
# bounds modes


def test_bounds_neighborly_value(capsys):
    code, out, _ = run_cli(capsys, "bounds", "neighborly", "--n", "100",
                           "--level", "3", "--p", "0.5")
    payload = json.loads(out)
    assert code == 0
    assert payload["value"] == pytest.approx(0.3832579418718431)


def test_bounds_biclique_and_extension(capsys):
    code, out, _ = run_cli(capsys, "bounds", "biclique", "--n", "50",
                           "--j", "2", "--k", "3", "--p", "0.3")
    assert code == 0
    assert json.loads(out)["value"] == pytest.approx(17503.29)
    code, out, _ = run_cli(capsys, "bounds", "extension", "--n", "100",
                           "--p", "0.5", "--k", "4")
    assert json.loads(out)["value"] == pytest.approx(1.5625)


def test_bounds_windows(capsys):
    code, out, _ = run_cli(capsys, "bounds", "nonvanishing-exponent",
                           "--k", "3")
    payload = json.loads(out)
    assert (payload["lower"], payload["upper"]) == ("-1/2", "-1/3")
    code, out, _ = run_cli(capsys, "bounds", "vanishing-dimension",
                           "--n", "1024")
    payload = json.loads(out)
    assert payload["lower"] == pytest.approx(10.0)
    assert payload["upper"] == pytest.approx(40.0)
    code, out, _ = run_cli(capsys, "bounds", "nonvanishing-dimension",
                           "--n", "1024", "--eps", "0.1")
    assert code == 0
    code, out, _ = run_cli(capsys, "bounds", "vanishing-exponent",
                           "--level", "4")
    assert json.loads(out)["lower"] == "-2/3"


def test_bounds_threshold(capsys):
    code, out, _ = run_cli(capsys, "bounds", "threshold", "--family", "xn:3")
    payload = json.loads(out)
    assert code == 0
    assert payload["exponent"] == "-2/3"
    assert payload["density"] == "3/2"
    # a graph that is not strictly balanced is a usage error
    code, _, err = run_cli(capsys, "gen", "--family", "complete:4")
    code, _, err = run_cli(capsys, "bounds", "threshold",
                           "--gnp", "6", "0.0", "1")
    assert code == 1


# ---------------------------------------------------------------------------
# survey and sweep


def test_survey_stdout_matches_library(capsys):
    code, out, _ = run_cli(capsys, "survey", "--n", "6", "--p", "0.3,0.7",
                           "--trials", "2", "--seed", "5")
    assert code == 0
    cfg = ExperimentConfig(n=6, p_grid=(0.3, 0.7), trials=2, master_seed=5,
                           max_dim=4)
    assert records_from_jsonl(out) == run_survey(cfg)


def test_survey_csv_format(capsys):
    code, out, _ = run_cli(capsys, "survey", "--n", "5", "--p", "0.5",
                           "--trials", "2", "--seed", "1",
                           "--format", "csv")
    assert code == 0
    assert len(records_from_csv(out)) == 2


def test_survey_summary_file_and_silent_stdout(tmp_path, capsys):
    spath = str(tmp_path / "summary.json")
    code, out, _ = run_cli(capsys, "survey", "--n", "6", "--p", "0.4",
                           "--trials", "2", "--seed", "9",
                           "--summary", spath)
    assert code == 0 and out == ""
    with open(spath) as fh:
        summary = json.load(fh)
    assert summary["config"]["n"] == 6
    assert len(summary["per_p"]) == 1


def test_survey_parallel_output_is_identical(tmp_path, capsys):
    paths = []
    for jobs in ("1", "2"):
        path = str(tmp_path / f"records-{jobs}.jsonl")
        code, _, _ = run_cli(capsys, "survey", "--n", "6", "--p", "0.3,0.6",
                             "--trials", "3", "--seed", "21",
                             "--jobs", jobs, "-o", path)
        assert code == 0
        paths.append(path)
    with open(paths[0], "rb") as a, open(paths[1], "rb") as b:
        assert a.read() == b.read()


def test_survey_feature_selection(capsys):
    code, out, _ = run_cli(capsys, "survey", "--n", "6", "--p", "0.5",
                           "--trials", "1", "--seed", "2",
                           "--features", "homology,cliques")
    assert code == 0
    rec = json.loads(out.strip().split("\n")[0])
    assert rec["clique_number"] is not None
    assert rec["neighborliness"] is None


def test_survey_unknown_feature(capsys):
    code, _, err = run_cli(capsys, "survey", "--n", "6", "--p", "0.5",
                           "--trials", "1", "--seed", "2",
                           "--features", "speed")
    assert code == 1 and "unknown features" in err


def test_survey_config_validation_maps_to_exit_one(capsys):
    code, _, err = run_cli(capsys, "survey", "--n", "40", "--p", "0.5",
                           "--trials", "1", "--seed", "2")
    assert code == 1 and "homology" in err


def test_sweep_summary_to_stdout(capsys, tmp_path):
    rpath = str(tmp_path / "records.jsonl")
    code, out, _ = run_cli(capsys, "sweep", "--n", "6", "--p", "0.0,0.5,1.0",
                           "--trials", "2", "--seed", "3", "--max-dim", "2",
                           "-o", rpath)
    assert code == 0
    summary = json.loads(out)
    assert len(summary["local_maxima"]) == 3
    assert len(records_from_jsonl(open(rpath).read())) == 6


# ---------------------------------------------------------------------------
# exit codes


def test_missing_input_file_exits_three(capsys):
    code, _, err = run_cli(capsys, "gen", "-i", "/nonexistent/graph.txt")
    assert code == 3


def test_resource_cap_exits_two(capsys):
    code, _, err = run_cli(capsys, "retract", "--family", "complete:20")
    assert code == 2 and "cap" in err


def test_usage_errors_exit_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["homology", "--family", "complete:3", "--coeff", "gf3"])
    assert exc.value.code == 1


def test_bad_output_directory_exits_three(capsys):
    code, _, _ = run_cli(capsys, "gen", "--family", "cycle:5",
                         "-o", "/nonexistent/dir/out.txt")
    assert code == 3
