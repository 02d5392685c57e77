"""
Main entry point for the ssiwasawa CLI.

This module defines the main CLI command group, the settings plumbing shared by
every subcommand and the mapping of errors to exit codes: 0 on success, 1 on a
failed check or arithmetic error, 2 on unreadable or invalid input.
"""

import csv
import io
import json
import sys
from contextlib import contextmanager
from typing import Any, Dict, Iterator, List, Sequence

import click
import rich_click
from pydantic import ValidationError

from ssiwasawa.cli.options import convert_options_to_settings_dict
from ssiwasawa.settings.config import Settings
from ssiwasawa.utils.errors import InputError, KitError, handle_exception
from ssiwasawa.utils.logging import configure_logging, get_logger

EXIT_FAIL = 1
EXIT_INPUT = 2


@click.group(cls=rich_click.RichGroup)
@click.version_option(package_name="ssiwasawa")
def cli() -> None:
    """
    ssiwasawa: constructive supersingular Iwasawa theory at finite precision.

    Every subcommand writes its result to stdout and its logs to stderr.
    """


def build_settings(options: Dict[str, Any]) -> Settings:
    """
    Settings from the environment with CLI options layered on top; configures logging.

    Raises:
        ValidationError: if an option value is rejected by the settings model
    """
    settings = Settings(**convert_options_to_settings_dict(options))
    configure_logging(settings.log_level)
    get_logger("ssiwasawa.cli").debug("settings: %s", settings.model_dump())
    return settings


@contextmanager
def exit_on_errors() -> Iterator[None]:
    """Report errors on stderr and exit with the matching code."""
    try:
        yield
    except (InputError, ValidationError, json.JSONDecodeError) as e:
        handle_exception(e, exit_on_error=True, exit_code=EXIT_INPUT)
    except KitError as e:
        handle_exception(e, exit_on_error=True, exit_code=EXIT_FAIL)


def read_json(stream: Any) -> Any:
    """Parse a JSON document from an open text stream."""
    return json.loads(stream.read())


def write_csv(rows: Sequence[Dict[str, Any]], comments: Sequence[str] = ()) -> None:
    """Write rows as CSV with a header row, preceded by ``# `` comment lines."""
    buffer = io.StringIO()
    for line in comments:
        buffer.write(f"# {line}\r\n")
    if rows:
        fields: List[str] = list(rows[0].keys())
        writer = csv.DictWriter(buffer, fieldnames=fields)
        writer.writeheader()
        writer.writerows(rows)
    click.echo(buffer.getvalue(), nl=False)


def write_json(payload: Any) -> None:
    click.echo(json.dumps(payload))


# Import subcommands to register them with the group
from ssiwasawa.cli import commands  # noqa: E402,F401


if __name__ == "__main__":
    sys.exit(cli())
