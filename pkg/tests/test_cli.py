import json

import pytest

from src.main import EXIT_INPUT, EXIT_OK, EXIT_PRECISION, EXIT_REFUSAL, main

TREE = """
kind: end-tree
label: root
lengths: [1, 1, 2, 3, 4, 5]
half_twist_indices: [1, 2]
declared_infinite: true
beta_lengths: [1, 1, 1, 1, 1, {beta_6}]
beta_bound: 2
children:
  - attach_at: 1
    node:
      kind: flute
      lengths: [1, 1, 2, 2]
      half_twist_indices: [1, 2, 3, 4]
      declared_infinite: true
  - attach_at: 2
    node:
      kind: finite-area
"""


def run_structured(tmp_path, *argv):
    out = tmp_path / "report.json"
    code = main([*argv, "--precision-bits", "128", "--format", "structured", "--out", str(out)])
    return code, (json.loads(out.read_text()) if out.exists() else None)


@pytest.mark.parametrize("p, expected", [("2", "Parabolic"), ("3", "NotParabolic")])
def test_analyze_zero_twist(tmp_path, p, expected):
    code, report = run_structured(tmp_path, "analyze", "--generator", f"plog:{p}", "--pattern", "none",
                                  "--truncate", "10000")
    assert code == EXIT_OK
    assert report["verdict"]["kind"] == expected
    assert report["config"]["truncation"] == 10000
    assert set(report["horocyclic_log10_partial_sums"]) >= {"100", "1000", "10000"}


def test_analyze_mixed_few_halves_is_inconclusive(tmp_path):
    code, report = run_structured(tmp_path, "analyze", "--generator", "plog:3", "--pattern", "powers:2",
                                  "--truncate", "2000")
    assert code == EXIT_OK
    assert report["verdict"]["kind"] == "Inconclusive"
    assert (tmp_path / "report_sigma.csv").exists()


def test_text_report_and_stdout(tmp_path, capsys):
    out = tmp_path / "analyze.txt"
    code = main(["analyze", "--generator", "pairs-of:power:1:1", "--pattern", "all", "--truncate", "10",
                 "--precision-bits", "128", "--out", str(out)])
    assert code == EXIT_OK
    assert "Verdict: Parabolic" in out.read_text()
    assert "Report saved to:" in capsys.readouterr().out


def test_develop_writes_trace_and_drawing(tmp_path):
    svg = tmp_path / "chain.svg"
    code, report = run_structured(tmp_path, "develop", "--generator", "plog:2", "--truncate", "200",
                                  "--svg-out", str(svg))
    assert code == EXIT_OK
    assert report["geodesics"] == 399
    assert report["trend"] in ("decreasing", "slowly-decreasing")
    assert svg.exists()
    assert (tmp_path / "report_gaps.csv").exists()


def test_develop_exhausts_precision(tmp_path):
    code = main(["develop", "--generator", "exp:e", "--truncate", "60", "--precision-bits", "64",
                 "--out", str(tmp_path / "r.json")])
    assert code == EXIT_PRECISION


@pytest.mark.parametrize("mode, lengths", [
    ("raise", ["2", "2", "4", "4", "6", "6"]),
    ("lower", ["1", "1", "3", "3", "5", "5"]),
])
def test_synthesize(tmp_path, mode, lengths):
    code, report = run_structured(tmp_path, "synthesize", "--generator", "power:1:1", "--pattern", "all",
                                  "--truncate", "6", "--mode", mode)
    assert code == EXIT_OK
    assert [float(x) for x in report["lengths"]] == [float(x) for x in lengths]
    assert report["verification"]["kind"] == "Parabolic"


def test_synthesize_reports_trailing_index(tmp_path):
    code, report = run_structured(tmp_path, "synthesize", "--generator", "power:1:1", "--pattern", "list:1,2,3",
                                  "--truncate", "6")
    assert code == EXIT_OK
    assert report["plan"]["trailing_index"] == 3


def test_endtree(tmp_path):
    doc = tmp_path / "tree.yaml"
    doc.write_text(TREE.format(beta_6=1))
    code, report = run_structured(tmp_path, "endtree", "--input", str(doc), "--num-threads", "2")
    assert code == EXIT_OK
    assert report["aggregate"] == "Parabolic"
    assert [c["node_id"] for c in report["report"]["children"]] == ["root/1", "root/2"]
    assert (tmp_path / "report_nodes.csv").exists()


def test_endtree_beta_violation_is_refused(tmp_path):
    doc = tmp_path / "tree.yaml"
    doc.write_text(TREE.format(beta_6=3))
    assert main(["endtree", "--input", str(doc), "--out", str(tmp_path / "r.json")]) == EXIT_REFUSAL


def test_unbounded_beta_is_refused(tmp_path):
    doc = tmp_path / "end.yaml"
    doc.write_text("kind: basic-end\nlengths: [1, 2, 3]\nbeta_lengths: [1, 2, 3]\nbeta_unbounded: true\n")
    assert main(["analyze", "--input", str(doc), "--out", str(tmp_path / "r.json")]) == EXIT_REFUSAL


def test_mixed_pattern_declared_finite_is_refused(tmp_path):
    code = main(["analyze", "--generator", "plog:2", "--pattern", "list:2,5", "--declared-finite",
                 "--truncate", "10", "--out", str(tmp_path / "r.json")])
    assert code == EXIT_REFUSAL


@pytest.mark.parametrize("argv", [
    ["analyze", "--generator", "plog:2", "--truncate", "100", "--precision-bits", "32"],
    ["analyze", "--generator", "plog:2"],
    ["analyze", "--truncate", "100"],
    ["analyze", "--generator", "zeta:2", "--truncate", "100"],
    ["analyze", "--generator", "plog:2", "--pattern", "list:9,3", "--truncate", "10"],
    ["develop", "--input", "does-not-exist.yaml"],
])
def test_input_errors(tmp_path, argv):
    assert main([*argv, "--out", str(tmp_path / "r.json")]) == EXIT_INPUT


def test_endtree_needs_a_tree(tmp_path):
    code = main(["endtree", "--generator", "plog:2", "--truncate", "10", "--out", str(tmp_path / "r.json")])
    assert code == EXIT_INPUT


def test_structured_output_is_deterministic(tmp_path):
    argv = ["analyze", "--generator", "plog:2.5", "--truncate", "1000", "--precision-bits", "128",
            "--format", "structured"]
    out = tmp_path / "a.json"
    assert main([*argv, "--out", str(out)]) == EXIT_OK
    first = out.read_text()
    assert main([*argv, "--out", str(out)]) == EXIT_OK
    assert out.read_text() == first


def test_synthesize_lower_on_a_tree_is_an_input_error(tmp_path):
    doc = tmp_path / "tree.yaml"
    doc.write_text(TREE.format(beta_6=1))
    code, report = run_structured(tmp_path, "synthesize", "--mode", "lower", "--input", str(doc))
    assert code == EXIT_INPUT
    assert report is None


def test_seed_is_recorded_without_changing_the_result(tmp_path):
    argv = ["analyze", "--generator", "plog:2.5", "--truncate", "1000"]
    _, first = run_structured(tmp_path, *argv, "--seed", "7")
    _, second = run_structured(tmp_path, *argv, "--seed", "11")
    assert first["config"]["seed"] == 7
    assert second["config"]["seed"] == 11
    assert first["verdict"] == second["verdict"]
