"""
Invariants subcommand for ssiwasawa.

Reads a series (or plus/minus L-data) as JSON and prints its Iwasawa invariants.
"""

from typing import Any, Dict

import click

from ssiwasawa.arith.padic import PadicContext
from ssiwasawa.arith.series import IwasawaSeries
from ssiwasawa.cli.main import build_settings, cli, exit_on_errors, read_json, write_json
from ssiwasawa.cli.options import add_shared_options
from ssiwasawa.modules.plus_minus import PlusMinusLData, plus_minus_L
from ssiwasawa.settings.config import Settings
from ssiwasawa.utils.errors import InputError


def parse_series(data: Any, settings: Settings) -> IwasawaSeries:
    """
    A series payload, or a bare list of integer coefficients in the configured prime.

    Raises:
        InputError: if the document is neither
    """
    ctx = PadicContext(p=settings.prime, N=settings.precision)
    if isinstance(data, list):
        if not data or not all(isinstance(c, int) and not isinstance(c, bool) for c in data):
            raise InputError("a bare series must be a nonempty list of integers")
        return IwasawaSeries.from_ints(ctx, data)
    if isinstance(data, dict) and "coeffs" in data:
        return IwasawaSeries.from_json(data, ctx if "p" not in data else None)
    raise InputError("expected a series payload or a list of integer coefficients")


def is_matrix_payload(data: Any) -> bool:
    return isinstance(data, dict) and "entries" in data


def matrix_context(data: Dict[str, Any], settings: Settings) -> PadicContext:
    return PadicContext(p=data.get("p", settings.prime), N=data.get("N", settings.precision))


@cli.command(name="invariants", help="Print the Iwasawa invariants (mu, lambda) of a JSON series")
@click.argument("source", type=click.File("r"), default="-")
@add_shared_options()
def invariants_command(source: Any, **options: Any) -> None:
    """
    Read SOURCE (a file, or stdin when omitted) and print {"mu": μ, "lambda": λ}.

    A matrix payload {"d", "entries", "tY"} is read as L-data; the invariants are
    then those of L = det(u)·t_Y.
    """
    with exit_on_errors():
        settings = build_settings(options)
        data = read_json(source)
        if is_matrix_payload(data):
            result = plus_minus_L(PlusMinusLData.from_json(data, matrix_context(data, settings)))
            payload: Dict[str, Any] = {"mu": result.mu, "lambda": result.lam, "normalized": result.normalized}
        else:
            mu, lam = parse_series(data, settings).mu_lambda()
            payload = {"mu": mu, "lambda": lam}
    write_json(payload)
