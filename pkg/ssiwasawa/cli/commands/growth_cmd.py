"""
Growth subcommand for ssiwasawa.

Corank main terms and Sha-increment tables for a GrowthParams JSON document.
"""

from typing import Any, Dict, List, Optional

import click

from ssiwasawa.cli.main import build_settings, cli, exit_on_errors, read_json, write_csv
from ssiwasawa.cli.options import add_shared_options
from ssiwasawa.growth.formulas import GrowthParams, growth_rows, sha_increment, stabilization_thresholds
from ssiwasawa.settings.config import IncrementVariant
from ssiwasawa.utils.errors import InputError


@cli.command(name="growth", help="Corank and Sha-increment tables for GrowthParams JSON")
@click.argument("source", type=click.File("r"), default="-")
@click.option(
    "--variant",
    type=click.Choice([v.value for v in IncrementVariant]),
    help="Add a column for one increment display (both are always listed)",
)
@add_shared_options()
def growth_command(source: Any, variant: Optional[str], **options: Any) -> None:
    """
    Emit one CSV row per level n_min..n_max.

    Values are main terms only; the `stable` column marks levels past the
    stabilization threshold of the matching λ.
    """
    with exit_on_errors():
        settings = build_settings(options)
        data = read_json(source)
        if not isinstance(data, dict):
            raise InputError("growth parameters must be a JSON object")
        params = GrowthParams.model_validate({"p": settings.prime, **data})
        chosen = IncrementVariant(variant) if variant else params.variant
        rows: List[Dict[str, Any]] = list(growth_rows(params))
        if chosen is not None:
            for row in rows:
                row["increment_selected"] = sha_increment(params, int(row["n"]), chosen)
        thresholds = stabilization_thresholds(params)
        comments = [
            f"p={params.p} d={params.d} s={params.s} s0={params.s0} variant={chosen.value if chosen else 'both'}",
            f"stabilization: plus n>={thresholds['plus']}, minus n>={thresholds['minus']}",
            settings.hypotheses.header(),
        ]
    write_csv(rows, comments)
