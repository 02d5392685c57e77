"""
Shared command line options for ssiwasawa.

This module defines the common CLI options that can be used across different commands.
"""

from typing import Any, Callable, Dict, List, TypeVar

import click
import rich_click

from ssiwasawa.settings.config import EZeroConvention, IncrementVariant, LogLevel

# Configure rich-click for nicer help pages
rich_click.STYLE_OPTION = "bold cyan"
rich_click.STYLE_SWITCH = "bold green"
rich_click.STYLE_METAVAR = "bold cyan"
rich_click.STYLE_HEADER = "bold yellow"
rich_click.STYLE_OPTION_HELP = ""
rich_click.STYLE_OPTION_DEFAULT = "dim"
rich_click.STYLE_OPTION_ENVVAR = "dim"
rich_click.USE_MARKDOWN = True
rich_click.SHOW_ARGUMENTS = True

# Type variable for the decorated function
F = TypeVar("F", bound=Callable[..., Any])

# CLI option name -> Settings field, where they differ
RENAMED_OPTIONS = {"p": "prime"}


def add_shared_options() -> Callable[[F], F]:
    """
    Decorator function to add shared options to a Click command.

    This adds the prime, precision, degree, seed and logging options plus the
    hypothesis flags that every ssiwasawa command accepts.

    Returns:
        A decorator function that adds the shared options to a command.
    """
    shared_options: List[Callable] = [
        click.option("--p", "p", type=int, help="The odd prime p"),
        click.option("--precision", "-N", type=int, help="Working p-adic precision (digits)"),
        click.option("--degree", "-D", type=int, help="Series truncation degree"),
        click.option("--seed", type=int, help="Seed for randomized property checks"),
        click.option(
            "--log-level",
            "-l",
            type=click.Choice([level.value for level in LogLevel], case_sensitive=False),
            default=LogLevel.WARNING.value,
            help="Set minimum logging level",
            show_default=True,
        ),
        click.option(
            "--e0-convention",
            type=click.Choice([c.value for c in EZeroConvention], case_sensitive=False),
            help="Anchor of the pi-sequence at level zero",
        ),
        click.option(
            "--assume",
            type=click.Choice(["S", "G", "W", "B"]),
            multiple=True,
            help="Assert a global hypothesis; echoed into report headers (repeatable)",
        ),
    ]

    def decorator(f: F) -> F:
        """Apply all shared options to the function in reverse order."""
        for option in reversed(shared_options):
            f = option(f)
        return f

    return decorator


def convert_options_to_settings_dict(options: Dict[str, Any]) -> Dict[str, Any]:
    """
    Convert Click options dict to a format suitable for building Settings.

    This handles converting string enums to their proper types, renaming
    options whose Settings field differs, and removing None values (to
    avoid overriding defaults).

    Args:
        options: Dictionary of CLI options from Click.

    Returns:
        Dict suitable for constructing a Settings instance.
    """
    settings_dict: Dict[str, Any] = {}

    # Map of option names to their enum types if applicable
    enum_options = {
        "log_level": LogLevel,
        "e0_convention": EZeroConvention,
        "increment_variant": IncrementVariant,
    }

    # Process each option, converting to enums where needed and skipping None values
    for key, value in options.items():
        if value is None:
            continue  # Skip None values to keep defaults
        if key == "assume":
            if value:
                settings_dict["hypotheses"] = {flag: True for flag in value}
            continue
        key = RENAMED_OPTIONS.get(key, key)

        # Convert string values to enums where needed
        if key in enum_options and isinstance(value, str):
            try:
                settings_dict[key] = enum_options[key](value.lower())
            except ValueError:
                continue  # Skip invalid values
        else:
            settings_dict[key] = value

    return settings_dict
