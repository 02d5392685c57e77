"""
Tables subcommand for ssiwasawa.

Emits q-values, cyclotomic degrees and Sha sizes as CSV.
"""

from typing import Any, Dict, List

import click

from ssiwasawa.arith.cyclotomic import degree_table_rows, q_table_rows, q_value
from ssiwasawa.cli.main import build_settings, cli, exit_on_errors, write_csv
from ssiwasawa.cli.options import add_shared_options
from ssiwasawa.modules.presented import sha_structure_size
from ssiwasawa.utils.errors import InputError


def sha_table_rows(p: int, n_max: int, d: int) -> List[Dict[str, Any]]:
    """Per-level Sha increment d·q_n and cumulative ord_p d·Σq_k, with the oracle verdict."""
    rows = []
    for n in range(n_max + 1):
        structure = sha_structure_size(p, n, d)
        rows.append(
            {
                "n": n,
                "q_n": q_value(p, n),
                "increment": d * q_value(p, n),
                "cumulative": structure.ordp,
                "oracles_agree": "yes" if structure.consistent else "no",
            }
        )
    return rows


@cli.command(name="tables", help="Emit q-value, degree or Sha-size tables as CSV")
@click.argument("kind", type=click.Choice(["q", "degrees", "sha"]))
@click.option("--n", "n_max", type=int, default=5, show_default=True, help="Largest level n")
@click.option("--d", type=int, default=1, show_default=True, help="Multiplicity d for the Sha table")
@add_shared_options()
def tables_command(kind: str, n_max: int, d: int, **options: Any) -> None:
    """
    Emit one CSV table for levels 0..n.

    `q` lists q_n, Σq_k and deg ω̃_n^±; `degrees` lists every cyclotomic family
    member; `sha` lists the sizes of (Λ/(ω̃_n^+, ω̃_n^-))^d.
    """
    with exit_on_errors():
        settings = build_settings(options)
        if n_max < 0:
            raise InputError(f"--n must be nonnegative, got {n_max}")
        p = settings.prime
        comments = [f"p={p}"]
        rows: List[Dict[str, Any]]
        if kind == "q":
            rows = q_table_rows(p, n_max)
        elif kind == "degrees":
            rows = degree_table_rows(p, n_max)
        else:
            if d < 1:
                raise InputError(f"--d must be positive, got {d}")
            rows = sha_table_rows(p, n_max, d)
            comments = [f"p={p} d={d}", settings.hypotheses.header()]
    write_csv(rows, comments)
