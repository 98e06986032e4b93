"""Command-line front end.

    virk --check psd --param c=1/2 --param h=1/16 --level 6
    virk --check all --format text
    virk --list

Reports go to stdout, one record per line; a short summary goes to stderr.
Exit status: 0 pass, 1 fail or error, 2 usage.
"""

from __future__ import annotations

import json
import sys

import click

from .catalog import CHECKS, ParameterError, list_checks, run_check


def _parse_params(pairs: tuple[str, ...]) -> dict[str, str]:
    out = {}
    for item in pairs:
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise click.UsageError(f"--param expects key=value, got {item!r}")
        out[key.strip()] = value.strip()
    return out


@click.command(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--check", "name", metavar="NAME", help="Check to run (see --list).")
@click.option("--param", "params", multiple=True, metavar="KEY=VALUE", help="Check parameter; repeatable.")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json", show_default=True)
@click.option("--level", type=int, default=None, help="Shorthand for --param level=N.")
@click.option("--seed", type=int, default=None, help="Seed for randomised identity sampling.")
@click.option("--list", "list_only", is_flag=True, help="Print the catalog and exit.")
@click.option("--no-timing", is_flag=True, help="Omit the timing field (byte-identical reruns).")
def main(name, params, fmt, level, seed, list_only, no_timing):
    """Exact verification suites for Virasoro, K_n and current-algebra identities."""
    if list_only:
        for entry in list_checks():
            if fmt == "json":
                click.echo(json.dumps(entry, sort_keys=True, separators=(",", ":")))
            else:
                args = ", ".join(f"{k}:{p['type']}={p['default']}" for k, p in entry["params"].items())
                click.echo(f"{entry['name']}({args})  {entry['anchor']}")
        return
    if name is None:
        raise click.UsageError("--check NAME or --list is required")
    if name not in CHECKS:
        raise click.UsageError(f"unknown check {name!r}; choose from {', '.join(CHECKS)}")
    given = _parse_params(params)
    accepted = CHECKS[name].params
    for key, value in (("level", level), ("seed", seed)):
        if value is not None:
            if key not in accepted:
                raise click.UsageError(f"{name} does not take --{key}")
            given[key] = str(value)
    try:
        report = run_check(name, given)
    except ParameterError as exc:
        raise click.UsageError(str(exc)) from None

    if fmt == "json":
        click.echo(report.to_json(timing=not no_timing))
    else:
        click.echo(report.summary())
        for sub in report.details:
            if "check" in sub and "status" in sub:
                click.echo(f"  {sub['check']}: {sub['status']}")
    click.echo(report.summary(), err=True)
    sys.exit(0 if report.passed else 1)


if __name__ == "__main__":  # pragma: no cover
    main()
