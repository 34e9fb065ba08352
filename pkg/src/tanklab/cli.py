"""Command-line front door.

Subcommands: advise, probs, regions, nash, simulate, serve.  Weights accept
decimals or p/q rationals and are carried exactly.  Exit codes: 0 success,
2 invalid input, 3 internal invariant violation.
"""

from __future__ import annotations

import functools
import json
import os
import sys

import click

from . import serialize
from .frns import region_scan
from .model import DomainError, Weights, as_fraction
from .oracle import PolicyTable, monte_carlo

EXIT_INVALID = 2
EXIT_INTERNAL = 3

STATE_DIR_ENV = "TANKLAB_STATE_DIR"


def parse_weights(text: str) -> Weights:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4:
        raise DomainError(f"need 4 comma-separated weights, got {len(parts)}")
    return Weights.of(*parts)


def parse_wins(text: str) -> tuple[int, ...]:
    try:
        wins = tuple(int(p.strip()) for p in text.split(","))
    except ValueError as exc:
        raise DomainError(f"wins must be integers: {text!r}") from exc
    return wins


def guarded(fn):
    """Map domain errors to exit 2 and anything unexpected to exit 3."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except DomainError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_INVALID)
        except (click.ClickException, click.Abort, SystemExit):
            raise
        except Exception as exc:  # noqa: BLE001 - the CLI boundary
            click.echo(f"internal error: {exc!r}", err=True)
            sys.exit(EXIT_INTERNAL)

    return wrapper


def emit(payload: dict, as_json: bool) -> None:
    if as_json:
        click.echo(serialize.canonical_json(payload), nl=False)
    else:
        click.echo(serialize.decision_text(payload))


@click.group()
def main() -> None:
    """Decision support for a four-team league with a seeded playoff."""


@main.command()
@click.option("--week", type=int, required=True, help="Current week (1-3).")
@click.option("--wins", required=True, help="Win counts, e.g. 2,2,0,0.")
@click.option("--weights", "weights_text", required=True, help="Team strengths, e.g. 1,0.8,0.5,0.3.")
@click.option("--model", type=click.Choice(["frns", "frs"]), default="frns", show_default=True)
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
@guarded
def advise(week: int, wins: str, weights_text: str, model: str, as_json: bool) -> None:
    """Recommend an action (frns) or report equilibria (frs)."""
    payload = serialize.payload_advise(week, parse_wins(wins), parse_weights(weights_text), model)
    emit(payload, as_json)


@main.command()
@click.option("--weights", "weights_text", required=True)
@click.option("--json", "as_json", is_flag=True)
@guarded
def probs(weights_text: str, as_json: bool) -> None:
    """Championship probability of every team in every bracket type."""
    V = parse_weights(weights_text)
    payload = serialize.payload_probs(V)
    if as_json:
        emit(payload, True)
        return
    click.echo("team   A                 B                 C")
    for team in "1234":
        cells = payload["teams"][team]
        click.echo(
            f"  {team}  "
            + "  ".join(f"{cells[bt]['decimal']:<16}" for bt in "ABC")
        )


@main.command()
@click.option("--week", type=int, default=3, show_default=True)
@click.option("--wins", required=True)
@click.option("--step", default="0.05", show_default=True, help="Grid step (decimal or p/q).")
@click.option("--out", type=click.Path(dir_okay=False), required=True, help="CSV output path.")
@click.option("--gnuplot", is_flag=True, help="Also write a gnuplot script next to the CSV.")
@click.option("--png", "png_path", type=click.Path(dir_okay=False), default=None,
              help="Also render the sweep to this image file.")
@guarded
def regions(week: int, wins: str, step: str, out: str, gnuplot: bool, png_path: str | None) -> None:
    """Sweep the weight grid and write value_win/value_lose per point."""
    state = parse_wins(wins)
    rows = list(region_scan(week, state, as_fraction(step)))
    try:
        with open(out, "w", newline="") as fh:
            count = serialize.write_region_csv(rows, fh)
    except OSError as exc:
        raise DomainError(f"cannot write {out}: {exc}") from exc
    click.echo(f"wrote {count} rows to {out}")
    if gnuplot:
        script = out + ".gp"
        with open(script, "w") as fh:
            fh.write(serialize.gnuplot_script(os.path.basename(out)))
        click.echo(f"wrote {script}")
    if png_path:
        from .plots import region_figure

        region_figure(rows, png_path, title=f"week {week}, wins {','.join(map(str, state))}")
        click.echo(f"wrote {png_path}")


@main.command()
@click.option("--wins", required=True)
@click.option("--weights", "weights_text", required=True)
@click.option("--json", "as_json", is_flag=True)
@guarded
def nash(wins: str, weights_text: str, as_json: bool) -> None:
    """Equilibrium report for the final week (all teams strategic)."""
    payload = serialize.payload_advise(3, parse_wins(wins), parse_weights(weights_text), "frs")
    emit(payload, as_json)


def parse_policy(text: str) -> PolicyTable:
    """Policy spec: 'all-try' or JSON {team: {week: alpha}} applied to every
    state of that week, e.g. '{"1": {"3": 0}}'."""
    if text == "all-try":
        return PolicyTable.all_try()
    try:
        spec = json.loads(text)
        items = {
            (int(team), int(week)): as_fraction(alpha)
            for team, weeks in spec.items()
            for week, alpha in weeks.items()
        }
    except (ValueError, AttributeError, TypeError) as exc:
        raise DomainError(f"bad policy spec {text!r}: {exc}") from exc
    table = PolicyTable.all_try()
    from .model import reachable_states

    for (team, week), alpha in items.items():
        if team not in (1, 2, 3, 4) or week not in (1, 2, 3):
            raise DomainError(f"bad policy key team={team} week={week}")
        for state in reachable_states(week):
            table = table.updated(team, week, state, alpha)
    return table


@main.command()
@click.option("--weights", "weights_text", required=True)
@click.option("--policy", default="all-try", show_default=True,
              help="'all-try' or JSON {team: {week: alpha}}.")
@click.option("--n", type=int, default=100_000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--json", "as_json", is_flag=True)
@guarded
def simulate(weights_text: str, policy: str, n: int, seed: int, as_json: bool) -> None:
    """Monte Carlo seasons under a policy; exact reproducibility per seed."""
    V = parse_weights(weights_text)
    if n < 1:
        raise DomainError("n must be >= 1")
    result = monte_carlo(V, parse_policy(policy), n, seed)
    payload = serialize.payload_simulation(V, result)
    if as_json:
        emit(payload, True)
        return
    click.echo(f"n={result.sample_count} seed={result.seed} generator={result.generator}")
    for i, (f, se) in enumerate(zip(result.frequencies, result.standard_errors), start=1):
        click.echo(f"  team {i}: {f:.6f} (se {se:.6f})")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--state-dir", default=None,
              help=f"Season storage directory (default ${STATE_DIR_ENV} or ./seasons).")
@guarded
def serve(host: str, port: int, state_dir: str | None) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    resolved = state_dir or os.environ.get(STATE_DIR_ENV) or "./seasons"
    uvicorn.run(create_app(resolved), host=host, port=port)


if __name__ == "__main__":
    main()
