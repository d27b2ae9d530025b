"""Tests for scripts/zeromodes.py (exit codes, outputs and config echo)."""
import csv
import json
import os
from pathlib import Path

import pytest

_slow = pytest.mark.skipif(
    os.environ.get("RUN_SLOW_TESTS") != "1", reason="set RUN_SLOW_TESTS=1 for long acceptance runs"
)


def _summary(out: Path) -> dict:
    return json.loads((out / "summary.json").read_text(encoding="utf-8"))


class TestParsing:
    def test_help_exits_zero(self, cli) -> None:
        assert cli.main(["--help"]) == 0

    def test_unknown_command(self, cli) -> None:
        assert cli.main(["no-such-command"]) == 2

    def test_bad_mode_syntax(self, cli, tmp_path: Path) -> None:
        assert cli.main(["nonres", "--cos", "two", "--out", str(tmp_path)]) == 2

    def test_mode_flags_become_dicts(self, cli) -> None:
        args = cli.build_parser().parse_args(["nonres", "--cos", "1=0.5", "--cos", "3=0.1"])
        assert cli._flags(args)["cos"] == {"1": 0.5, "3": 0.1}


class TestCells:
    def test_writes_outputs(self, cli, tmp_path: Path) -> None:
        out = tmp_path / "cells"
        args = ["cells", "--eps", "0.1", "--sigma", "1", "--r-cut", "50"]
        assert cli.main([*args, "--out", str(out)]) == 0
        for name in ("cells.json", "cells.svg", "summary.json", "run_config.json", "manifest.json"):
            assert (out / name).exists()
        summary = _summary(out)
        assert summary["validation"]["passed"] is True
        manifest = json.loads((out / "manifest.json").read_text())
        assert {f["path"] for f in manifest["files"]} >= {"cells.json", "run_config.json"}

    def test_rerun_from_echoed_config(self, cli, tmp_path: Path) -> None:
        first, second = tmp_path / "a", tmp_path / "b"
        assert cli.main(["cells", "--r-cut", "40", "--out", str(first)]) == 0
        config = first / "run_config.json"
        assert cli.main(["cells", "--config", str(config), "--out", str(second)]) == 0
        assert (first / "cells.json").read_bytes() == (second / "cells.json").read_bytes()
        echoed = json.loads((second / "run_config.json").read_text())
        assert echoed["params"]["r_cut"] == 40.0

    def test_malformed_config(self, cli, tmp_path: Path) -> None:
        config = tmp_path / "bad.json"
        config.write_text("{oops", encoding="utf-8")
        assert cli.main(["cells", "--config", str(config), "--out", str(tmp_path / "o")]) == 2

    def test_unknown_config_key(self, cli, tmp_path: Path) -> None:
        config = tmp_path / "c.json"
        config.write_text(json.dumps({"epsilon": 0.1}), encoding="utf-8")
        assert cli.main(["cells", "--config", str(config), "--out", str(tmp_path / "o")]) == 2

    def test_invalid_parameters(self, cli, tmp_path: Path) -> None:
        assert cli.main(["cells", "--eps", "1.0", "--out", str(tmp_path)]) == 2


class TestFieldShow:
    def test_grid_and_contours(self, cli, tmp_path: Path) -> None:
        args = ["field-show", "--grid", "16", "--extent", "5", "--n-psi", "36"]
        assert cli.main([*args, "--out", str(tmp_path)]) == 0
        with open(tmp_path / "F_grid.csv", encoding="utf-8", newline="") as f:
            rows = list(csv.DictReader(f))
        assert len(rows) == 256
        svg = (tmp_path / "F_contours.svg").read_text(encoding="utf-8")
        assert svg.count('class="zero-growth"') == 4
        assert len(_summary(tmp_path)["zero_growth_directions"]) == 4

    def test_homogeneous_field_from_config(self, cli, tmp_path: Path) -> None:
        config = tmp_path / "field.json"
        field = {"kind": "homogeneous", "s": 0.0, "fourier": [[0, 1.0, 0.0]]}
        config.write_text(json.dumps({"field": field, "grid": 8}), encoding="utf-8")
        out = tmp_path / "out"
        assert cli.main(["field-show", "--config", str(config), "--out", str(out)]) == 0
        assert _summary(out)["field"]["kind"] == "homogeneous"


class TestZeromodeVerify:
    def test_negative_degree(self, cli, tmp_path: Path) -> None:
        assert cli.main(["zeromode-verify", "--degree", "-1", "--out", str(tmp_path)]) == 2

    def test_large_sector_has_no_candidate(self, cli, tmp_path: Path) -> None:
        args = ["zeromode-verify", "--alpha", "3.0", "--b1", "-0.3", "--degree", "0"]
        assert cli.main([*args, "--out", str(tmp_path)]) == 1
        summary = _summary(tmp_path)
        assert summary["candidate"] is None
        assert "S" in summary["lower_bounds"]
        assert len(summary["probes"]) == 6
        assert {(pr["sector"], pr["k"]) for pr in summary["probes"]} == {
            (s, k) for s in ("S", "T") for k in range(3)
        }
        assert all(pr["report"]["verdict"] == "divergent" for pr in summary["probes"])
        assert summary["verdicts"] == ["divergent"] * 6

    def test_small_sector_converges_with_fewer_shells(self, cli, tmp_path: Path) -> None:
        args = ["zeromode-verify", "--check-doubled", "--n-shells", "6", "--m", "3"]
        assert cli.main([*args, "--out", str(tmp_path)]) == 0
        summary = _summary(tmp_path)
        assert summary["verdicts"] == ["convergent", "convergent"]
        assert [c["doubled"]["verdict"] for c in summary["candidates"]] == ["convergent"] * 2
        assert summary["passed"] is True

    @_slow
    def test_small_sector_converges(self, cli, tmp_path: Path) -> None:
        assert cli.main(["zeromode-verify", "--check-doubled", "--out", str(tmp_path)]) == 0
        assert _summary(tmp_path)["verdicts"] == ["convergent", "convergent"]


class TestNonres:
    def test_resonance(self, cli, tmp_path: Path) -> None:
        args = ["nonres", "--s", "0", "--mean", "0", "--cos", "2=1", "--out", str(tmp_path)]
        assert cli.main(args) == 1
        assert "resonance" in _summary(tmp_path)

    def test_default_profile_converges(self, cli, tmp_path: Path) -> None:
        assert cli.main(["nonres", "--out", str(tmp_path)]) == 0
        summary = _summary(tmp_path)
        assert summary["sign_check"]["holds"] is True
        assert summary["verdicts"] == ["convergent", "convergent"]
        assert (tmp_path / "shells_P1.csv").exists()


class TestUnivalence:
    def test_small_grid(self, cli, tmp_path: Path) -> None:
        args = ["univalence", "--exponents", "0.5", "--n-grid", "48", "--rho", "1e3,1e6"]
        assert cli.main([*args, "--out", str(tmp_path)]) == 0
        with open(tmp_path / "boundary_angles.csv", encoding="utf-8", newline="") as f:
            assert len(list(csv.DictReader(f))) == 2
        assert _summary(tmp_path)["control"]["pass"] is False
