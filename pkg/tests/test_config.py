"""Tests for config module (safe env parsing, centralized constants)."""
import importlib
import os
from unittest.mock import patch

import pauli_zeromodes.config as config_module
from pauli_zeromodes.config import (
    GL_ORDER,
    SHELL_COUNT,
    SHELL_RATIO_Q,
    SHELL_WINDOW,
    _safe_float,
    _safe_float_positive,
    _safe_fraction,
    _safe_int,
    _safe_positive_int,
)


class TestSafeInt:
    def test_returns_default_when_key_missing(self) -> None:
        key = "_TEST_SAFE_INT_MISSING_X"
        with patch.dict(os.environ, {}, clear=False):
            os.environ.pop(key, None)
            assert _safe_int(key, 42) == 42

    def test_parses_valid_int(self) -> None:
        with patch.dict(os.environ, {"_TEST_SAFE_INT_VALID": "100"}, clear=False):
            assert _safe_int("_TEST_SAFE_INT_VALID", 0) == 100

    def test_returns_default_on_invalid_value(self) -> None:
        with patch.dict(os.environ, {"_TEST_SAFE_INT_BAD": "not_a_number"}, clear=False):
            assert _safe_int("_TEST_SAFE_INT_BAD", 7) == 7

    def test_returns_default_on_empty_string(self) -> None:
        with patch.dict(os.environ, {"_TEST_SAFE_INT_EMPTY": ""}, clear=False):
            assert _safe_int("_TEST_SAFE_INT_EMPTY", 3) == 3


class TestSafeFloat:
    def test_parses_scientific_notation(self) -> None:
        with patch.dict(os.environ, {"_TEST_SAFE_FLOAT_SCI": "1e-10"}, clear=False):
            assert _safe_float("_TEST_SAFE_FLOAT_SCI", 0.0) == 1e-10

    def test_returns_default_on_invalid_value(self) -> None:
        with patch.dict(os.environ, {"_TEST_SAFE_FLOAT_BAD": "nope"}, clear=False):
            assert _safe_float("_TEST_SAFE_FLOAT_BAD", 1.05) == 1.05

    def test_rejects_non_finite(self) -> None:
        with patch.dict(os.environ, {"_TEST_SAFE_FLOAT_INF": "inf", "_TEST_SAFE_FLOAT_NAN": "nan"}):
            assert _safe_float("_TEST_SAFE_FLOAT_INF", 2.0) == 2.0
            assert _safe_float("_TEST_SAFE_FLOAT_NAN", 3.0) == 3.0


class TestSafePositive:
    def test_positive_int_rejects_zero(self) -> None:
        with patch.dict(os.environ, {"_TEST_POS_INT_ZERO": "0"}, clear=False):
            assert _safe_positive_int("_TEST_POS_INT_ZERO", 8) == 8

    def test_positive_int_accepts_positive(self) -> None:
        with patch.dict(os.environ, {"_TEST_POS_INT_OK": "16"}, clear=False):
            assert _safe_positive_int("_TEST_POS_INT_OK", 1) == 16

    def test_positive_float_rejects_negative(self) -> None:
        with patch.dict(os.environ, {"_TEST_FLOAT_POS_NEG": "-1e-3"}, clear=False):
            assert _safe_float_positive("_TEST_FLOAT_POS_NEG", 1e-3) == 1e-3


class TestSafeFraction:
    def test_accepts_open_interval(self) -> None:
        with patch.dict(os.environ, {"_TEST_FRACTION_OK": "0.75"}, clear=False):
            assert _safe_fraction("_TEST_FRACTION_OK", 0.9) == 0.75

    def test_rejects_endpoints(self) -> None:
        with patch.dict(os.environ, {"_TEST_FRACTION_ONE": "1", "_TEST_FRACTION_ZERO": "0"}):
            assert _safe_fraction("_TEST_FRACTION_ONE", 0.9) == 0.9
            assert _safe_fraction("_TEST_FRACTION_ZERO", 0.9) == 0.9


class TestDefaults:
    def test_shell_defaults(self) -> None:
        assert SHELL_RATIO_Q == 0.9
        assert 3 <= SHELL_WINDOW <= SHELL_COUNT
        assert GL_ORDER >= 1

    def test_shell_window_out_of_range_falls_back(self) -> None:
        try:
            with patch.dict(os.environ, {"SHELL_WINDOW": "2", "SHELL_COUNT": "15"}):
                reloaded = importlib.reload(config_module)
                assert reloaded.SHELL_WINDOW == 5
        finally:
            importlib.reload(config_module)

    def test_env_overrides_threads(self) -> None:
        try:
            with patch.dict(os.environ, {"THREADS": "4"}):
                assert importlib.reload(config_module).THREADS == 4
        finally:
            importlib.reload(config_module)
