import io
import json
import math

from hypergft.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    return code, json.loads(text) if text.strip() else None


class TestEval:
    def test_pfq_log_point(self):
        code, doc = run_json("eval", "--pfq", "2F1", "--upper", "1,1", "--lower", "2", "--z", "0.5")
        assert code == 0
        assert doc["schema"] == "hypergft/1"
        assert abs(doc["result"]["value"]["re"] - 2.0 * math.log(2.0)) < 1e-10

    def test_closed_gauss_zero_a(self):
        code, doc = run_json("eval", "--closed", "gauss", "--a", "0", "--b", "1", "--c", "3")
        assert code == 0
        assert abs(doc["result"]["value"]["re"] - 1.0) < 1e-12

    def test_divergent_exits_two(self):
        code, _ = run("eval", "--pfq", "3F2", "--upper", "1,1,1", "--lower", "2,0.5",
                      "--z", "2.0")
        assert code == 2

    def test_region_violation_exits_two(self):
        code, _ = run("eval", "--closed", "gauss", "--a", "3", "--b", "1", "--c", "3")
        assert code == 2

    def test_conditional_case_exits_three(self):
        # conditionally convergent boundary: only terminating sums are taken
        code, _ = run("eval", "--pfq", "2F1", "--upper", "1,1", "--lower", "1.5",
                      "--z", "-1")
        assert code == 3

    def test_bad_input_exits_one(self):
        code, _ = run("eval", "--pfq", "2F1", "--upper", "1", "--lower", "2", "--z", "0.5")
        assert code == 1
        code, _ = run("eval", "--closed", "nonsense", "--a", "1", "--b", "1", "--c", "3")
        assert code == 1

    def test_euler_level(self):
        code, doc = run_json(
            "eval", "--euler", "2f1", "--upper", "1,1", "--lower", "2", "--z", "0.5",
            "--quad-tol", "1e-10",
        )
        assert code == 0
        assert abs(doc["result"]["value"]["re"] - 2.0 * math.log(2.0)) < 1e-8

    def test_lemma_closed_form(self):
        code, doc = run_json("eval", "--closed", "lemma-sec2-part1", "--a", "0.5", "--b", "1", "--c", "6")
        assert code == 0
        assert doc["result"]["value"]["re"] > 1.0

    def test_csv_format(self):
        code, text = run("eval", "--pfq", "1F0", "--upper", "2", "--lower", "", "--z", "0.25",
                         "--format", "csv")
        assert code == 0
        header, row = text.strip().splitlines()
        assert header.startswith("value_re")
        assert abs(float(row.split(",")[0]) - 16.0 / 9.0) < 1e-12


class TestCertify:
    def test_certified_exit_zero(self):
        code, doc = run_json(
            "certify", "--family", "split3", "--a", "0.1", "--b", "0.1", "--c", "20",
            "--class", "starlike", "--lambda", "1",
        )
        assert code == 0
        assert doc["certificate"]["verdict"] == "certified"
        assert doc["certificate"]["theorem_tag"] == "split3.function.starlike"

    def test_hypothesis_error_exit_four(self):
        code, _ = run(
            "certify", "--family", "split4", "--a", "0.1", "--b", "0.1", "--c", "2.2",
            "--class", "ucv",
        )
        assert code == 4

    def test_allow_hypothesis_error_still_exits_four_with_report(self):
        code, doc = run_json(
            "certify", "--family", "split4", "--a", "0.1", "--b", "0.1", "--c", "2.2",
            "--class", "ucv", "--allow-hypothesis-error",
        )
        assert code == 4
        assert "hypothesis_error" in doc["certificate"]

    def test_beta_out_of_range_exit_one(self):
        code, _ = run(
            "certify", "--family", "split3", "--a", "0.1", "--b", "0.1", "--c", "25",
            "--class", "starlike", "--lambda", "1", "--source", "rbeta", "--beta", "1.2",
        )
        assert code == 1

    def test_not_certified_exit_five(self):
        code, _ = run(
            "certify", "--family", "split3", "--a", "2", "--b", "3", "--c", "6.2",
            "--class", "starlike", "--lambda", "1",
        )
        assert code == 5

    def test_with_oracle_attaches_reports(self):
        code, doc = run_json(
            "certify", "--family", "split3", "--a", "0.1", "--b", "0.1", "--c", "25",
            "--class", "starlike", "--lambda", "1", "--source", "rbeta", "--beta", "0",
            "--with-oracle",
        )
        assert code == 0
        oracle = doc["certificate"]["oracle"]
        assert oracle["passed"] is True
        assert oracle["check"] == "coeff_sum"
        disc = doc["certificate"]["disc_oracle"]
        assert disc["passed"] is True
        assert disc["check"] == "disc_sample"

    def test_lambda_out_of_range(self):
        code, _ = run(
            "certify", "--family", "split4", "--a", "0.1", "--b", "0.1", "--c", "20",
            "--class", "starlike", "--lambda", "1.5",
        )
        assert code == 1


class TestVerify:
    def test_pochhammer_split_sweep(self):
        code, doc = run_json("verify", "--identity", "pochhammer-split", "--draws", "200", "--seed", "7")
        assert code == 0
        assert doc["verification"]["max_residual"] < 1e-10

    def test_single_point_gauss_zero_a(self):
        code, doc = run_json("verify", "--identity", "gauss", "--a", "0", "--b", "1", "--c", "3")
        assert code == 0
        assert doc["verification"]["max_residual"] < 1e-12

    def test_lemma_draws(self):
        code, doc = run_json("verify", "--identity", "lemma-sec2-part1", "--draws", "10", "--seed", "3")
        assert code == 0

    def test_failure_emits_ledger_entry(self):
        code, doc = run_json(
            "verify", "--identity", "gauss", "--draws", "5", "--seed", "1",
            "--tolerance", "1e-18",
        )
        assert code == 5
        entry = doc["verification"]["typo_ledger_entry"]
        assert entry["identity"] == "gauss"

    def test_deterministic_reports(self):
        _, first = run("verify", "--identity", "5f4-at-1", "--draws", "5", "--seed", "11")
        _, second = run("verify", "--identity", "5f4-at-1", "--draws", "5", "--seed", "11")
        assert first == second


class TestSweep:
    def test_margin_monotone_in_c(self):
        code, text = run(
            "sweep", "--family", "split3", "--class", "starlike", "--lambda", "1",
            "--a", "0.5", "--b", "0.5", "--c", "4:24:4",
        )
        assert code == 0
        rows = text.strip().splitlines()
        assert rows[0].startswith("family,source,class")
        margins = [float(r.split(",")[11]) for r in rows[1:]]
        assert all(x <= y + 1e-12 for x, y in zip(margins, margins[1:]))

    def test_beta_sweep_margins_nondecreasing(self):
        code, text = run(
            "sweep", "--family", "split3", "--class", "starlike", "--lambda", "1",
            "--source", "rbeta", "--beta", "0:0.9:0.3",
            "--a", "0.2", "--b", "0.2", "--c", "25",
        )
        assert code == 0
        rows = text.strip().splitlines()[1:]
        margins = [float(r.split(",")[11]) for r in rows]
        assert all(x <= y + 1e-12 for x, y in zip(margins, margins[1:]))

    def test_row_level_errors_recorded(self):
        code, text = run(
            "sweep", "--family", "split4", "--class", "ucv",
            "--a", "0.5", "--b", "0.5", "--c", "2:14:4",
        )
        assert code == 0
        rows = text.strip().splitlines()[1:]
        assert any("HypothesisError" in r for r in rows)
        assert any("certified" in r for r in rows)

    def test_empty_grid_exit_one(self):
        code, _ = run(
            "sweep", "--family", "split3", "--class", "ucv", "--a", "", "--b", "0.5",
            "--c", "10",
        )
        assert code == 1

    def test_byte_identical_csv(self):
        args = ("sweep", "--family", "split4", "--class", "sp",
                "--a", "0.3", "--b", "0.4", "--c", "8:16:4")
        _, one = run(*args)
        _, two = run(*args)
        assert one == two


class TestConfigFile:
    def test_config_overridden_by_flags(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("max_terms = 50\nseed = 9\n# comment\n")
        code, doc = run_json(
            "--config", str(cfg), "verify", "--identity", "pochhammer-split", "--draws", "3",
        )
        assert code == 0
        assert doc["precision"]["max_terms"] == 50
        assert doc["seed"] == 9
        code, doc = run_json(
            "--config", str(cfg), "verify", "--identity", "pochhammer-split", "--draws", "3",
            "--seed", "4",
        )
        assert doc["seed"] == 4
