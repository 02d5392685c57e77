"""
Tests for error handling and logging utilities.
"""

import logging

import pytest

from ssiwasawa.utils.errors import ConvergenceGuard, InputError, KitError, handle_exception
from ssiwasawa.utils.logging import configure_logging, get_logger


def test_error_details():
    error = InputError("bad payload", {"field": "coeffs"})
    assert isinstance(error, KitError)
    assert error.details == {"field": "coeffs"}
    assert str(error) == "bad payload"


def test_convergence_guard_records_budget():
    error = ConvergenceGuard("no convergence", iterations=12, budget=10)
    assert error.details["iterations"] == 12
    assert error.details["budget"] == 10


def test_handle_exception_exits():
    with pytest.raises(SystemExit) as excinfo:
        handle_exception(InputError("bad"), exit_on_error=True, exit_code=2)
    assert excinfo.value.code == 2


def test_verbose_level():
    """Test the VERBOSE level sits between DEBUG and INFO."""
    configure_logging("verbose")
    logger = get_logger("ssiwasawa.test")
    assert logging.getLogger().level == 15
    assert logger.isEnabledFor(15)
    assert not logger.isEnabledFor(logging.DEBUG)
    configure_logging("not-a-level")
    assert logging.getLogger().level == logging.INFO


def test_logging_keeps_stdout_clean(capsys):
    configure_logging("info")
    get_logger("ssiwasawa.test").warning("precision running low")
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "precision running low" in captured.err
    handlers = logging.getLogger().handlers
    assert len(handlers) == 1
