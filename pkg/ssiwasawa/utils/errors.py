"""
Error handling utilities and custom exceptions for ssiwasawa.

This module defines the exception hierarchy raised by the arithmetic,
formal-group and module layers, plus helpers used by the CLI to report
errors consistently.
"""

import sys
import traceback
from typing import Any, Dict, Optional

from rich.console import Console

# Initialize console for rich error output
console = Console(stderr=True)


class KitError(Exception):
    """Base exception class for all ssiwasawa errors."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        """
        Initialize a KitError.

        Args:
            message: Error message
            details: Additional structured context (levels, precisions, ...)
        """
        self.details = details or {}
        super().__init__(message)


class ContextMismatch(KitError):
    """Raised when operands live in different p-adic contexts."""
    pass


class NotAUnit(KitError):
    """Raised when a unit of Z_p was required but the value has positive valuation."""
    pass


class PrecisionExhausted(KitError):
    """Raised when a value cannot be certified within the working precision."""
    pass


class ZeroResidue(KitError):
    """Raised when a Teichmüller lift of 0 mod p is requested."""
    pass


class NonzeroConstantTerm(KitError):
    """Raised when composing with an inner series whose constant term is not zero."""
    pass


class NonUnitLinearTerm(KitError):
    """Raised when reverting a series whose linear coefficient is not invertible."""
    pass


class ZeroToPrecision(KitError):
    """Raised when a series vanishes to working precision, so invariants cannot be certified."""
    pass


class BadUniformizer(KitError):
    """Raised when a uniformizer does not satisfy the good-lift conditions."""
    pass


class ConvergenceGuard(KitError):
    """Raised when an iterative limit or series tail fails to certify within its budget."""

    def __init__(self, message: str, iterations: Optional[int] = None, budget: Optional[int] = None):
        """
        Initialize a ConvergenceGuard error.

        Args:
            message: Error message
            iterations: Number of iterations performed before giving up
            budget: The configured iteration or degree budget
        """
        self.iterations = iterations
        self.budget = budget
        details: Dict[str, Any] = {}
        if iterations is not None:
            details["iterations"] = iterations
        if budget is not None:
            details["budget"] = budget
        super().__init__(message, details)


class NotEisenstein(KitError):
    """Raised when a tower minimal polynomial fails the Eisenstein check."""
    pass


class CapExceeded(KitError):
    """Raised when a computation would exceed a configured size cap."""
    pass


class NotFinite(KitError):
    """Raised when a quotient module that should be finite is not."""
    pass


class NotStabilized(KitError):
    """Raised when a growth formula is requested below its stabilization threshold."""
    pass


class InputError(KitError):
    """Raised when user-supplied input cannot be parsed or validated."""
    pass


def handle_exception(e: Exception, exit_on_error: bool = False, exit_code: int = 1) -> None:
    """
    Handle an exception with nice formatting.

    Args:
        e: The exception to handle
        exit_on_error: Whether to exit the program after handling
        exit_code: Exit code to use if exiting
    """
    error_type = type(e).__name__
    console.print(f"[bold red]Error ({error_type}):[/bold red] {e}")

    if isinstance(e, KitError):
        # For our custom errors, keep it cleaner
        if e.details:
            detail_text = ", ".join(f"{key}={value}" for key, value in sorted(e.details.items()))
            console.print(f"[dim]Details: {detail_text}[/dim]")
    else:
        # For unexpected errors, show the traceback
        console.print("[dim]Traceback:[/dim]")
        tb = traceback.format_exception(type(e), e, e.__traceback__)
        console.print("".join(tb), style="dim")

    if exit_on_error:
        sys.exit(exit_code)
