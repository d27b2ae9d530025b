"""Tests for the JSON/CSV writers, the run configuration and the SVG renderers."""
import json
import math
from pathlib import Path

import numpy as np
import pytest

from pauli_zeromodes.output import (
    RunConfig,
    contour_svg,
    file_sha256,
    load_config_file,
    resolve_run_config,
    to_jsonable,
    write_csv,
    write_json,
    write_manifest,
)
from pauli_zeromodes.output.svg import cells_svg, marching_squares


class TestToJsonable:
    def test_complex_and_nonfinite(self) -> None:
        data = {"z": 1 + 2j, "big": math.inf, "small": -math.inf, "bad": math.nan}
        assert to_jsonable(data) == {"z": [1.0, 2.0], "big": "inf", "small": "-inf", "bad": "nan"}

    def test_numpy_values(self) -> None:
        data = {"a": np.arange(3), "b": np.float64(0.5), "c": np.bool_(True), 1: (np.int64(2),)}
        assert to_jsonable(data) == {"a": [0, 1, 2], "b": 0.5, "c": True, "1": [2]}

    def test_objects_with_to_dict(self) -> None:
        cfg = RunConfig(command="cells", params={"eps": 0.1}, out_dir="out")
        assert to_jsonable(cfg)["params"] == {"eps": 0.1}

    def test_path(self) -> None:
        assert to_jsonable(Path("a") / "b") == str(Path("a") / "b")


class TestWriters:
    def test_json_is_sorted_with_trailing_newline(self, tmp_path: Path) -> None:
        path = write_json(tmp_path / "nested" / "x.json", {"b": 1, "a": 1j})
        text = path.read_text(encoding="utf-8")
        assert text.endswith("}\n")
        assert text.index('"a"') < text.index('"b"')
        assert json.loads(text) == {"a": [0.0, 1.0], "b": 1}

    def test_csv_uses_lf_and_full_precision(self, tmp_path: Path) -> None:
        path = write_csv(tmp_path / "x.csv", [{"r": 0.1, "v": 1 / 3}], ["r", "v"])
        raw = path.read_bytes()
        assert b"\r\n" not in raw
        assert raw.decode().splitlines() == ["r,v", f"0.1,{1 / 3!r}"]

    def test_manifest_hashes(self, tmp_path: Path) -> None:
        a = write_json(tmp_path / "a.json", {"x": 1})
        write_manifest(tmp_path / "manifest.json", "cells", [a])
        data = json.loads((tmp_path / "manifest.json").read_text())
        assert data["command"] == "cells"
        assert data["files"] == [{"path": "a.json", "file_hash": file_sha256(a)}]


class TestRunConfig:
    defaults = {"eps": 0.1, "sigma": 1.0}

    def test_layering(self) -> None:
        cfg = resolve_run_config(
            "cells", self.defaults, {"eps": 0.2, "sigma": 2.0}, {"sigma": 3.0, "eps": None},
            out_dir="o", threads=2,
        )
        assert cfg.params == {"eps": 0.2, "sigma": 3.0}
        assert cfg.out_dir == "o"
        assert cfg.threads == 2

    def test_echoed_config_round_trip(self, tmp_path: Path) -> None:
        first = resolve_run_config("cells", self.defaults, {"eps": 0.2}, out_dir=tmp_path)
        path = write_json(tmp_path / "run_config.json", first)
        again = resolve_run_config("cells", self.defaults, load_config_file(path))
        assert again == first

    def test_field_section(self) -> None:
        cfg = resolve_run_config(
            "cells", self.defaults, {"field": {"kind": "sector", "alpha": 1.0, "b1": -1.0}}
        )
        assert cfg.field_config["kind"] == "sector"
        assert "field" in cfg.to_dict()

    @pytest.mark.parametrize(
        "data",
        [
            {"unknown": 1},
            {"command": "nonres", "params": {}},
            {"params": {}, "extra": 1},
            {"params": []},
            {"threads": 0},
            {"threads": "many"},
            {"seed": 1.5},
            {"field": [1, 2]},
        ],
    )
    def test_rejects_bad_documents(self, data: dict) -> None:
        with pytest.raises(ValueError):
            resolve_run_config("cells", self.defaults, data)

    def test_load_malformed(self, tmp_path: Path) -> None:
        path = tmp_path / "bad.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(ValueError, match="malformed"):
            load_config_file(path)
        path.write_text("[1, 2]", encoding="utf-8")
        with pytest.raises(ValueError, match="JSON object"):
            load_config_file(path)
        with pytest.raises(ValueError):
            load_config_file(tmp_path / "missing.json")


class TestMarchingSquares:
    def test_circle_level_set(self) -> None:
        x = np.linspace(-2.0, 2.0, 81)
        values = np.hypot(x[:, None], x[None, :])
        segments = marching_squares(x, x, values, 1.0)
        assert segments
        radii = np.abs(np.array(segments).ravel())
        assert np.allclose(radii, 1.0, atol=2e-3)

    def test_linear_field_is_exact(self) -> None:
        x = np.linspace(0.0, 1.0, 11)
        values = np.broadcast_to(x[:, None], (11, 11))
        segments = marching_squares(x, x, values, 0.55)
        assert len(segments) == 10
        for a, b in segments:
            assert a.real == pytest.approx(0.55)
            assert b.real == pytest.approx(0.55)

    def test_nonfinite_cells_skipped(self) -> None:
        x = np.linspace(0.0, 1.0, 3)
        values = np.array([[0.0, 0.0, 0.0], [1.0, np.nan, 1.0], [2.0, 2.0, 2.0]])
        assert marching_squares(x, x, values, 0.5) == []

    def test_saddle_gives_two_segments(self) -> None:
        x = np.array([0.0, 1.0])
        values = np.array([[1.0, 0.0], [0.0, 1.0]])
        assert len(marching_squares(x, x, values, 0.5)) == 2


class TestSvg:
    def test_contours_and_rays(self) -> None:
        x = np.linspace(-1.0, 1.0, 21)
        values = x[:, None] ** 2 - x[None, :] ** 2
        svg = contour_svg(x, x, values, levels=(-0.5, 0.0, 0.5), rays=(math.pi / 4,), title="a<b")
        assert svg.startswith('<?xml version="1.0"')
        assert svg.rstrip().endswith("</svg>")
        assert svg.count('class="level"') == 3
        assert 'class="zero-growth" data-angle="0.785398"' in svg
        assert "<title>a&lt;b</title>" in svg

    def test_cells(self, small_cells) -> None:
        svg = cells_svg(small_cells)
        assert svg.count('class="cell"') == len(small_cells)
        assert svg.count('class="marked"') == len(small_cells)
