"""
ssiwasawa CLI commands package.

This package contains all the subcommands that can be used with the ssiwasawa CLI.
"""

# Import all commands to register them with the CLI
from ssiwasawa.cli.commands.checks_cmd import checks_command  # noqa: F401
from ssiwasawa.cli.commands.eval_zeta_cmd import eval_zeta_command  # noqa: F401
from ssiwasawa.cli.commands.growth_cmd import growth_command  # noqa: F401
from ssiwasawa.cli.commands.invariants_cmd import invariants_command  # noqa: F401
from ssiwasawa.cli.commands.tables_cmd import tables_command  # noqa: F401
from ssiwasawa.cli.commands.verify_cmd import verify_command  # noqa: F401
