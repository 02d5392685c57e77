"""
Eval-zeta subcommand for ssiwasawa.

Evaluates a series, or the matrix of L-data, at ζ_n - 1.
"""

from typing import Any, Dict

import click

from ssiwasawa.arith.cyclotomic import eval_at_zeta, ordp_fractional
from ssiwasawa.cli.commands.invariants_cmd import is_matrix_payload, matrix_context, parse_series
from ssiwasawa.cli.main import build_settings, cli, exit_on_errors, read_json, write_json
from ssiwasawa.cli.options import add_shared_options
from ssiwasawa.modules.plus_minus import PlusMinusLData, quotient_finiteness_at_zeta
from ssiwasawa.utils.errors import InputError


@cli.command(name="eval-zeta", help="Evaluate a JSON series or L-data matrix at zeta_n - 1")
@click.argument("source", type=click.File("r"), default="-")
@click.option("--n", "level", type=int, required=True, help="Cyclotomic level n >= 1")
@add_shared_options()
def eval_zeta_command(source: Any, level: int, **options: Any) -> None:
    """
    Print the value at ζ_n - 1 as JSON.

    For a series: its coordinates in Z_p[X]/(ξ_n) and ord_p as a fraction.
    For a matrix payload: the size of O^d/(u(ζ_n - 1)) and the invariant prediction.
    """
    with exit_on_errors():
        settings = build_settings(options)
        if level < 1:
            raise InputError(f"--n must be at least 1, got {level}")
        data = read_json(source)
        if is_matrix_payload(data):
            report = quotient_finiteness_at_zeta(PlusMinusLData.from_json(data, matrix_context(data, settings)), level)
            payload: Dict[str, Any] = report.model_dump()
        else:
            value = eval_at_zeta(parse_series(data, settings), level)
            payload = {
                "n": level,
                "ordp": str(ordp_fractional(value)) if not value.is_zero() else None,
                "coords": [c.to_json() for c in value.coords],
            }
    write_json(payload)
