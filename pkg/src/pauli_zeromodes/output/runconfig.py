"""Run configuration for CLI commands: defaults, then a JSON file, then flags.

A command echoes its effective ``RunConfig`` as ``run_config.json`` in its output
directory; passing that file back with ``--config`` reproduces the run.
"""
import json
import logging
from collections.abc import Mapping
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from pauli_zeromodes.config import OUT_DIR, THREADS

logger = logging.getLogger(__name__)

RUN_CONFIG_NAME = "run_config.json"
_ECHO_KEYS = {"command", "params", "out_dir", "threads", "seed"}


@dataclass(frozen=True)
class RunConfig:
    command: str
    params: Mapping[str, Any]
    out_dir: str
    threads: int = 1
    seed: int | None = None
    field_config: Mapping[str, Any] | None = field(default=None)

    @property
    def out_path(self) -> Path:
        return Path(self.out_dir)

    def to_dict(self) -> dict:
        data = {
            "command": self.command,
            "params": dict(self.params),
            "out_dir": self.out_dir,
            "threads": self.threads,
            "seed": self.seed,
        }
        if self.field_config is not None:
            data["field"] = dict(self.field_config)
        return data


def load_config_file(path: Path) -> dict:
    """Read a --config document; raises ValueError when it is not a JSON object."""
    try:
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ValueError(f"malformed config JSON in {path}: {e}") from e
    except OSError as e:
        raise ValueError(f"cannot read config {path}: {e}") from e
    if not isinstance(data, dict):
        raise ValueError(f"config {path} must hold a JSON object, got {type(data).__name__}")
    return data


def _split_file_data(command: str, data: Mapping) -> tuple[dict, dict]:
    """(params, run-level settings) from either an echoed RunConfig or a flat object."""
    if "params" in data:
        echoed = data.get("command")
        if echoed is not None and echoed != command:
            raise ValueError(f"config was written for command {echoed!r}, not {command!r}")
        extra = set(data) - _ECHO_KEYS - {"field"}
        if extra:
            raise ValueError(f"unknown config keys: {sorted(extra)}")
        params = data["params"]
        if not isinstance(params, Mapping):
            raise ValueError("config 'params' must be a JSON object")
        run = {k: data[k] for k in ("out_dir", "threads", "seed", "field") if k in data}
        return dict(params), run
    flat = dict(data)
    run = {k: flat.pop(k) for k in ("out_dir", "threads", "seed", "field") if k in flat}
    return flat, run


def resolve_run_config(
    command: str,
    defaults: Mapping[str, Any],
    file_data: Mapping | None = None,
    flags: Mapping[str, Any] | None = None,
    *,
    out_dir: str | Path | None = None,
    threads: int | None = None,
) -> RunConfig:
    """Layer defaults, the config file and explicitly passed flags (None = not passed)."""
    params = dict(defaults)
    run: dict = {}
    if file_data is not None:
        file_params, run = _split_file_data(command, file_data)
        unknown = set(file_params) - set(defaults)
        if unknown:
            raise ValueError(f"unknown parameters for {command}: {sorted(unknown)}")
        params.update(file_params)
    for key, value in (flags or {}).items():
        if value is not None:
            params[key] = value

    resolved_out = out_dir if out_dir is not None else run.get("out_dir", OUT_DIR / command)
    resolved_threads = threads if threads is not None else run.get("threads", THREADS)
    try:
        resolved_threads = int(resolved_threads)
    except (TypeError, ValueError) as e:
        raise ValueError(f"threads must be an integer, got {resolved_threads!r}") from e
    if resolved_threads < 1:
        raise ValueError(f"threads must be >= 1, got {resolved_threads}")
    seed = run.get("seed")
    if seed is not None and not isinstance(seed, int):
        raise ValueError(f"seed must be an integer or null, got {seed!r}")
    field_config = run.get("field")
    if field_config is not None and not isinstance(field_config, Mapping):
        raise ValueError("config 'field' must be a JSON object")
    cfg = RunConfig(
        command=command,
        params=params,
        out_dir=str(resolved_out),
        threads=resolved_threads,
        seed=seed,
        field_config=field_config,
    )
    logger.debug("Resolved run config for %s: %s", command, cfg.to_dict())
    return cfg
