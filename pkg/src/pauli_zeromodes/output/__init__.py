"""Artifact output for the command line.

Submodules:
    _writers  - JSON/CSV writers and the output manifest.
    svg       - Marching-squares contours and cell plots as plain SVG.
    runconfig - Layered run configuration echoed into every output directory.
"""

from pauli_zeromodes.output._writers import (
    file_sha256,
    to_jsonable,
    write_csv,
    write_json,
    write_manifest,
    write_text,
)
from pauli_zeromodes.output.runconfig import (
    RUN_CONFIG_NAME,
    RunConfig,
    load_config_file,
    resolve_run_config,
)
from pauli_zeromodes.output.svg import (
    LEVEL_LADDER,
    cells_svg,
    contour_svg,
    marching_squares,
)

__all__ = [
    "LEVEL_LADDER",
    "RUN_CONFIG_NAME",
    "RunConfig",
    "cells_svg",
    "contour_svg",
    "file_sha256",
    "load_config_file",
    "marching_squares",
    "resolve_run_config",
    "to_jsonable",
    "write_csv",
    "write_json",
    "write_manifest",
    "write_text",
]
