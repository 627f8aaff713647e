import json
import logging
import os
import tempfile

import pandas as pd

from cli import main
from core.config import get_settings

# Configure basic logging for testing feedback
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(name)s - %(message)s')
logger = logging.getLogger(__name__)


def _run(argv, tmp):
    """Runs the CLI with the report written to a temporary file; returns (exit code, report or None)."""
    out = os.path.join(tmp, "report.json")
    if os.path.exists(out):
        os.remove(out)
    code = main(argv + ["--out", out])
    report = None
    if os.path.exists(out):
        with open(out, "r", encoding="utf-8") as f:
            report = json.load(f)
    return code, report


def test_weyl_commands():
    logger.info("--- Testing 'weyl' Commands ---")
    with tempfile.TemporaryDirectory() as tmp:
        csv_path = os.path.join(tmp, "elements.csv")
        code, report = _run(["weyl", "enum", "--type", "A1", "--maxlen", "2", "--csv", csv_path], tmp)
        assert code == 0
        assert report["count"] == 10, "Omega-hat times 1 + 2 + 2 elements"
        assert report["per_length"] == {"0": 2, "1": 4, "2": 4}
        table = pd.read_csv(csv_path)
        assert list(table.columns) == ["word", "length", "beta", "omega"]
        assert len(table) == 10

        code, report = _run(["weyl", "structure-check", "--type", "BC1", "--maxlen", "6"], tmp)
        assert code == 0 and report["passed"]
        code, report = _run(["weyl", "poincare", "--type", "A2", "--maxlen", "3"], tmp)
        assert code == 0 and report["passed"]
        first = report["degrees"][0]
        assert first["degree"] == 0 and first["lhs"] == first["rhs"]
        assert len(first["lhs"]) == 3, "Degree 0 holds one term per Omega-hat element"
        assert all(t["coeff"] == {"0": "1"} for t in first["lhs"])
        assert all(len(row["lhs"]) > 0 for row in report["degrees"])
    logger.info("'weyl' commands OK.")


def test_usage_and_resource_errors():
    logger.info("--- Testing Error Exit Codes ---")
    with tempfile.TemporaryDirectory() as tmp:
        assert _run(["weyl", "enum", "--type", "H3"], tmp)[0] == 2, "Unknown types are configuration errors"
        assert _run(["weyl", "enum"], tmp)[0] == 2, "--type is required"
        too_long = get_settings().max_ball_length + 1
        assert _run(["weyl", "enum", "--type", "A1", "--maxlen", str(too_long)], tmp)[0] == 3
        assert _run(["bounds", "hw", "--type", "A1", "--word", "s0", "--p", "1"], tmp)[0] == 2
        assert _run(["bounds", "oh", "--type", "A1"], tmp)[0] == 2
        assert _run(["graph", "analyze"], tmp)[0] == 2, "At least one input is required"
    logger.info("Error exit codes OK.")


def test_rep_commands():
    logger.info("--- Testing 'rep' Commands ---")
    with tempfile.TemporaryDirectory() as tmp:
        code, report = _run(["rep", "validate", "--rep", "fixtures/corrupted_a2.json"], tmp)
        assert code == 1, "A failed relation is a failed check"
        assert report["relation"] == "h_s1^2" and report["passed"] is False

        code, report = _run(["rep", "tempered", "--rep", "fixtures/steinberg_a2.json"], tmp)
        assert code == 0 and report["p_min"] == 1.0
        code, report = _run(["rep", "tempered", "--builtin", "trivial", "--type", "A1", "--q", "3"], tmp)
        assert report["p_min"] == "inf"

        code, report = _run(["rep", "growth", "--rep", "fixtures/steinberg_a1.json", "--maxlen", "4"], tmp)
        assert code == 0
    logger.info("'rep' commands OK.")


def test_graph_and_bound_commands():
    logger.info("--- Testing 'graph' and 'bounds' Commands ---")
    with tempfile.TemporaryDirectory() as tmp:
        code, report = _run(["graph", "analyze", "--graph", "fixtures/k4.txt", "--graph", "fixtures/petersen.txt"], tmp)
        assert code == 0
        assert [c["ramanujan"] for c in report["complexes"]] == [True, True]
        code, report = _run(["graph", "analyze", "--graph", "fixtures/k33.txt", "--mode", "bipartite"], tmp)
        assert code == 0 and report["complexes"][0]["boundary_residual"] == 0

        code, report = _run(["bounds", "d", "--type", "A1", "--q", "2", "--l", "3"], tmp)
        assert code == 0 and report["exact"] == "320"
        code, report = _run(["bounds", "oh", "--type", "A3"], tmp)
        assert code == 0 and report["p0"] == 6
        code, report = _run(["bounds", "diameter", "--type", "A1", "--N", "1024"], tmp)
        assert code == 0 and report["q"] == 2.0
    logger.info("'graph' and 'bounds' commands OK.")


def test_tree_commands():
    logger.info("--- Testing 'tree' Commands ---")
    with tempfile.TemporaryDirectory() as tmp:
        code, report = _run(["tree", "sectors", "--radius", "6", "--m", "1", "--m", "2"], tmp)
        assert code == 0 and report["volume"]["counted"] == report["volume"]["predicted"]
        code, report = _run(["tree", "norms", "--radius", "5", "--maxlen", "2"], tmp)
        assert code == 0 and report["passed"]
        assert _run(["tree", "sectors", "--q", "3/2"], tmp)[0] == 2, "Trees need an integer q"
    logger.info("'tree' commands OK.")


def test_reports_are_deterministic():
    logger.info("--- Testing Report Determinism ---")
    commands = [
        ["graph", "analyze", "--random", "20,3,2", "--seed", "4"],
        ["graph", "serre", "--random", "20,3,2", "--seed", "4", "--radius", "4"],
        ["weyl", "poincare", "--type", "A1", "--maxlen", "4"],
    ]
    with tempfile.TemporaryDirectory() as tmp:
        for argv in commands:
            texts = []
            for run in range(2):
                out = os.path.join(tmp, f"run{run}.json")
                assert main(argv + ["--out", out]) == 0
                with open(out, "rb") as f:
                    texts.append(f.read())
            assert texts[0] == texts[1], f"Same seed must give byte-identical reports: {argv}"
    logger.info("Report determinism OK.")


if __name__ == "__main__":
    test_weyl_commands()
    test_usage_and_resource_errors()
    test_rep_commands()
    test_graph_and_bound_commands()
    test_tree_commands()
    test_reports_are_deterministic()
    logger.info("All CLI tests passed.")
