import json

import pytest

from pollock.cli import NEGATIVE, OK, USAGE, main, run_cli
from pollock.qgraph import build_graph, save_graph


def run(capsys, *argv):
    code = run_cli(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, [json.loads(line) for line in out.splitlines()]


class TestDecompose:
    def test_seven(self, capsys):
        code, out, _ = run(capsys, "decompose", "--n", "7")
        assert code == OK and "1 1 1 1 1 1 1" in out

    def test_roundtrip_through_verify(self, capsys, tmp_path):
        cert = tmp_path / "c.json"
        code, _, _ = run(capsys, "decompose", "--n", "1000000007", "--cert", str(cert))
        assert code == OK
        assert run(capsys, "verify", str(cert))[0] == OK

    def test_json_certificate(self, capsys):
        code, lines = run_json(capsys, "decompose", "--n", "31415926535")
        assert code == OK and lines[0]["n"] == "31415926535" and len(lines[0]["arguments"]) == 7

    def test_structured_failure(self, capsys):
        code, lines = run_json(capsys, "decompose", "--n", "987654321987")
        assert code == NEGATIVE and lines[0]["failure"] == "NoT"

    def test_too_small(self, capsys):
        code, _, err = run(capsys, "decompose", "--n", "3")
        assert code == USAGE and err

    def test_tampered_certificate(self, capsys, tmp_path):
        cert = tmp_path / "c.json"
        run(capsys, "decompose", "--n", "1000000007", "--cert", str(cert))
        d = json.loads(cert.read_text())
        d["arguments"][0] = str(int(d["arguments"][0]) + 1)
        d.pop("values")
        cert.write_text(json.dumps(d))
        assert run(capsys, "verify", str(cert))[0] == NEGATIVE

    def test_missing_certificate_file(self, capsys, tmp_path):
        assert run(capsys, "verify", str(tmp_path / "nope.json"))[0] == USAGE


class TestForms:
    def test_exceptional_value(self, capsys):
        code, out, _ = run(capsys, "form-repr", "--m", "689469562", "--primitive")
        assert code == NEGATIVE and "no representation" in out

    def test_representation(self, capsys):
        code, lines = run_json(capsys, "form-repr", "--m", "273")
        assert code == OK
        assert json.dumps(lines[0]).count("1") >= 3

    def test_scan_with_filters(self, capsys, tmp_path):
        records = tmp_path / "r.jsonl"
        code, lines = run_json(
            capsys, "form-scan", "--lo", "689469562", "--hi", "689470562",
            "--filter", "4:2,3", "--filter", "5:2,3", "--records", str(records),
        )
        assert code == OK
        assert len(records.read_text().splitlines()) == 200

    def test_scan_hits_exceptional_value(self, capsys):
        code, _, _ = run(capsys, "form-scan", "--lo", "689469561", "--hi", "689469562", "--filter", "4:2,3")
        assert code == NEGATIVE

    def test_bad_filter(self, capsys):
        assert run(capsys, "form-scan", "--lo", "1", "--hi", "9", "--filter", "4-2")[0] == USAGE


class TestGraphCommands:
    @pytest.fixture
    def graph_file(self, tmp_path):
        path = tmp_path / "g21.pqg"
        save_graph(build_graph(21), path)
        return path

    def test_build(self, capsys, tmp_path):
        out = tmp_path / "g.pqg"
        code, _, _ = run(capsys, "graph-build", "--r", "21", "--out", str(out))
        assert code == OK and out.exists()

    def test_build_rejects_even_r(self, capsys, tmp_path):
        assert run(capsys, "graph-build", "--r", "10", "--out", str(tmp_path / "x"))[0] == USAGE

    def test_good_norms_must_match(self, capsys, graph_file):
        assert run(capsys, "graph-good", str(graph_file))[0] == USAGE

    def test_walks_regular_graph(self, capsys, graph_file):
        # no good vertices: every state has exactly 5^L walks, so 5^L is not certified but 5^(L+1) is
        code, lines = run_json(capsys, "graph-walks", str(graph_file), "--length", "8", "--below", "8")
        assert code == NEGATIVE and lines[0]["max_scaled"] == str(5**8)
        code, _ = run_json(capsys, "graph-walks", str(graph_file), "--length", "8", "--below", "9")
        assert code == OK

    def test_output_file(self, capsys, graph_file, tmp_path):
        target = tmp_path / "report.txt"
        code, out, _ = run(capsys, "graph-walks", str(graph_file), "--length", "3", "--below", "4", "--output", str(target))
        assert code == OK and out == "" and "length 3" in target.read_text()


class TestMisc:
    def test_quat_factor(self, capsys):
        code, out, _ = run(capsys, "quat-factor", "1+2i+2j+4k")
        assert code == OK and "(1+2i) * (1+2j)" in out

    def test_quat_factor_bad_literal(self, capsys):
        assert run(capsys, "quat-factor", "1+2q")[0] == USAGE

    def test_scan_pollock(self, capsys):
        code, lines = run_json(capsys, "scan-pollock", "--limit", "1000")
        assert code == OK
        assert lines[0]["exceeding"] == [] and lines[0]["histogram"]["7"] == 12

    @pytest.mark.parametrize(
        "argv",
        [
            ("lemma-check", "watson", "--p", "7"),
            ("lemma-check", "padic", "--p", "5"),
            ("lemma-check", "octa", "--n", "5", "--u", "2", "--v", "1"),
            ("lemma-check", "power", "--a", "3", "--b", "5", "--lo", "2000", "--hi", "2100"),
            ("lemma-check", "square-roots", "--limit", "100"),
            ("lemma-check", "level", "--limit", "500", "--max-e", "10"),
            ("lemma-check", "note13", "--p", "1", "--q", "0", "--r", "1"),
            ("bounds", "siegel-product", "--eps", "1/1000000"),
            ("bounds", "siegel-pair", "--m", "3", "--m2", "11"),
            ("bounds", "senior-s", "--m", "10403", "--tau", "1/4"),
        ],
    )
    def test_lemma_and_bound_commands_succeed(self, capsys, argv):
        code, lines = run_json(capsys, *argv)
        assert code == OK and lines

    def test_empty_power_window(self, capsys):
        assert run(capsys, "lemma-check", "power", "--a", "2", "--b", "3", "--lo", "7", "--hi", "8")[0] == NEGATIVE

    def test_unknown_preset(self, capsys):
        assert run(capsys, "bounds", "sum-constant", "--preset", "F9")[0] == USAGE

    @pytest.mark.parametrize("argv", [[], ["nonsense"], ["decompose"], ["decompose", "--n", "x"], ["--help"]])
    def test_usage_errors(self, capsys, argv):
        assert run(capsys, *argv)[0] == (OK if argv == ["--help"] else USAGE)

    def test_main_is_run_cli(self, capsys):
        assert main(["decompose", "--n", "8", "--format", "json"]) in (OK, NEGATIVE)
