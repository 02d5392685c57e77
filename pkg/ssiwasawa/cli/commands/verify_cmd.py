"""
Verify subcommand for ssiwasawa.

Runs the verification suite for one configuration and prints a PASS/FAIL/INFO
line per item with the achieved precision.
"""

import sys
from typing import Any

import click

from ssiwasawa.cli.main import EXIT_FAIL, build_settings, cli, exit_on_errors, write_json
from ssiwasawa.cli.options import add_shared_options
from ssiwasawa.verify.suite import run_verification


@cli.command(name="verify", help="Run the verification suite and report PASS/FAIL per item")
@add_shared_options()
@click.option("--json", "as_json", is_flag=True, help="Emit the report as JSON instead of text")
def verify_command(as_json: bool, **options: Any) -> None:
    """
    Run every registered check for the configured prime and precision.

    Exits with status 1 if any item fails.
    """
    with exit_on_errors():
        settings = build_settings(options)
        report = run_verification(settings)
    if as_json:
        write_json(report.model_dump(mode="json"))
    else:
        click.echo(report.render())
    if report.failed:
        sys.exit(EXIT_FAIL)
