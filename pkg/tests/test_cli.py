import dataclasses
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from fanchar.cli import (
    EXIT_INTERNAL,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_VALIDATION,
    AnalyzeOptions,
    emit_report,
    load_report,
    main,
    parse_input,
    run_analyze,
)
from fanchar.errors import DimensionMismatch, IndexOutOfRange, InternalInconsistency, ParseError


def write(tmp_path, data, name="inst.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data) if not isinstance(data, str) else data)
    return path


LINES = {
    "name": "lines",
    "dim": 2,
    "rays": [[1, 0], [0, 1], [-1, 0], [0, -1]],
    "maximal_cones": [[0, 1], [1, 2], [2, 3], [3, 0]],
    "generator": [[0, -1], [1, 0]],
}


class TestParse:
    def test_projective_plane(self, instances_dir):
        inst = parse_input(instances_dir / "projective_plane.json")
        assert len(inst.rays) == 3 and len(inst.maximal_cones) == 3

    def test_generator_shape(self, tmp_path):
        with pytest.raises(DimensionMismatch):
            parse_input(write(tmp_path, {**LINES, "generator": [[0, -1, 0], [1, 0, 0]]}))

    def test_index_out_of_range(self, tmp_path):
        with pytest.raises(IndexOutOfRange):
            parse_input(write(tmp_path, {**LINES, "maximal_cones": [[0, 7], [1, 2], [2, 3], [3, 0]]}))

    def test_ray_length(self, tmp_path):
        with pytest.raises(DimensionMismatch):
            parse_input(write(tmp_path, {**LINES, "rays": [[1, 0, 0], [0, 1], [-1, 0], [0, -1]]}))

    def test_missing_field(self, tmp_path):
        data = dict(LINES)
        del data["generator"]
        with pytest.raises(ParseError, match="generator"):
            parse_input(write(tmp_path, data))

    def test_non_integer(self, tmp_path):
        with pytest.raises(ParseError, match=r"rays\[0\]\[0\]"):
            parse_input(write(tmp_path, {**LINES, "rays": [[1.5, 0], [0, 1], [-1, 0], [0, -1]]}))
        with pytest.raises(ParseError):
            parse_input(write(tmp_path, {**LINES, "dim": True}))

    def test_bad_json_has_position(self, tmp_path):
        with pytest.raises(ParseError, match=r":2:"):
            parse_input(write(tmp_path, '{"dim": 2,\n "rays": [}'))

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError):
            parse_input(tmp_path / "nope.json")


class TestAnalyze:
    def test_projective_plane(self, instances_dir):
        report = run_analyze(parse_input(instances_dir / "projective_plane.json"))
        assert report.ungraded_verdict == "Permutation"
        assert {r.l: r.multiplicity for r in report.decomposition} == {1: 3, 3: 0}

    def test_hexagon_graded(self, instances_dir):
        report = run_analyze(parse_input(instances_dir / "hexagon_rot6.json"), AnalyzeOptions(graded=True))
        assert report.ungraded_verdict == "Permutation"
        assert report.graded_verdict.startswith("NotPermutation(degree=1")
        assert report.graded[1].values == {1: -1, 2: 1, 3: 2, 6: 4}
        assert report.prime_power.startswith("not applicable")

    def test_cross_checks(self, instances_dir):
        for path in sorted(instances_dir.glob("*.json")):
            report = run_analyze(parse_input(path), AnalyzeOptions(cross_check=True, validation="geometric"))
            assert report.cross_check_passed, path.name
            assert report.validation_level == "geometric"

    def test_text_decomposition_line(self, instances_dir):
        report = run_analyze(parse_input(instances_dir / "product_of_lines_rot4.json"))
        assert "G:2, <c^2>:1" in emit_report(report, "text").decode()

    def test_tampered_multiplicities(self, instances_dir):
        report = run_analyze(parse_input(instances_dir / "product_of_lines_rot4.json"))
        rows = list(report.decomposition)
        rows[0] = dataclasses.replace(rows[0], multiplicity=Fraction(3))
        bad = dataclasses.replace(report, decomposition=tuple(rows))
        with pytest.raises(InternalInconsistency):
            emit_report(bad, "json")

    def test_tampered_graded_row(self, instances_dir):
        report = run_analyze(parse_input(instances_dir / "product_of_lines_rot4.json"), AnalyzeOptions(graded=True))
        rows = list(report.graded)
        rows[1] = dataclasses.replace(rows[1], values={1: 0, 2: 2, 4: 2}, multiplicities={1: Fraction(-2), 2: Fraction(1), 4: Fraction(1, 2)})
        with pytest.raises(InternalInconsistency):
            emit_report(dataclasses.replace(report, graded=tuple(rows)), "json")


class TestJson:
    @pytest.mark.parametrize("flags", [{}, {"graded": True, "cross_check": True}])
    def test_round_trip(self, instances_dir, flags):
        for path in sorted(instances_dir.glob("*.json")):
            report = run_analyze(parse_input(path), AnalyzeOptions(**flags))
            blob = emit_report(report, "json")
            assert load_report(blob) == report
            assert emit_report(load_report(blob), "json") == blob

    def test_integers_are_strings(self, instances_dir):
        report = run_analyze(parse_input(instances_dir / "product_of_lines_rot4.json"))
        data = json.loads(emit_report(report, "json"))
        assert data["order"] == "4"
        assert data["divisors"][0]["ungraded"] == "2"
        assert list(data) == sorted(data)


class TestMain:
    def test_ok(self, instances_dir, capsys):
        assert main(["--input", str(instances_dir / "product_of_lines_rot4.json")]) == EXIT_OK
        assert "G:2, <c^2>:1" in capsys.readouterr().out

    def test_graded_verdict_does_not_affect_exit(self, instances_dir, capsys):
        assert main(["--input", str(instances_dir / "hexagon_rot6.json"), "--graded"]) == EXIT_OK
        assert "NotPermutation" in capsys.readouterr().out

    def test_parse_failure(self, tmp_path, capsys):
        assert main(["--input", str(write(tmp_path, "{"))]) == EXIT_PARSE
        assert "ParseError" in capsys.readouterr().err

    def test_invalid_generator(self, tmp_path, capsys):
        path = write(tmp_path, {**LINES, "generator": [[0, 1], [1, 0]]})
        assert main(["--input", str(path)]) == EXIT_VALIDATION
        err = capsys.readouterr().err
        assert "NotFanAutomorphism" in err or "NotProper" in err

    def test_non_primitive_rejected_or_normalized(self, tmp_path, capsys):
        path = write(tmp_path, {**LINES, "rays": [[2, 0], [0, 2], [-2, 0], [0, -2]]})
        assert main(["--input", str(path)]) == EXIT_VALIDATION
        assert main(["--input", str(path), "--normalize-rays"]) == EXIT_OK

    def test_order_cap(self, tmp_path):
        path = write(tmp_path, LINES)
        assert main(["--input", str(path), "--max-order", "3"]) == EXIT_VALIDATION

    def test_internal(self, instances_dir, monkeypatch):
        import fanchar.cli as cli

        def broken(report):
            raise InternalInconsistency("forced")

        monkeypatch.setattr(cli, "verify_report", broken)
        assert main(["--input", str(instances_dir / "projective_plane.json")]) == EXIT_INTERNAL

    def test_subprocess_determinism(self, instances_dir):
        cmd = [sys.executable, "-m", "fanchar", "--input", str(instances_dir / "product_of_lines_rot4.json"),
               "--format", "json", "--graded", "--cross-check"]
        outs = [subprocess.run(cmd, capture_output=True, check=True).stdout for _ in range(3)]
        assert outs[0] == outs[1] == outs[2]
