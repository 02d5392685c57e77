"""
Checks subcommand for ssiwasawa.

This module provides a command to list the check groups the verification suite runs.
"""

from rich.console import Console
from rich.table import Table

from ssiwasawa.cli.main import cli
from ssiwasawa.verify.suite import DEFAULT_CHECKS

# Initialize console for rich output
console = Console()


@cli.command(name="checks", help="List the check groups run by `verify`")
def checks_command() -> None:
    """
    List the registered check groups.

    Shows each group's registry name and the first line of its docstring,
    in the order `verify` runs them.
    """
    table = Table(
        title="Verification checks",
        show_header=True,
        header_style="bold magenta",
        box=None,
        title_style="bold cyan",
        expand=True,
    )
    table.add_column("Check", style="bold green", no_wrap=True)
    table.add_column("Description", style="")

    for name, check in DEFAULT_CHECKS:
        doc = (check.__doc__ or "").strip().splitlines()
        table.add_row(name, doc[0] if doc else "")

    console.print(table)
