"""Canonical rendering of results: JSON payloads, decimal strings, CSV.

Both the command line (--json) and the HTTP service emit payloads built by
the functions here and serialized by ``canonical_json``, so the two paths
produce byte-identical output for the same query.  Probabilities are carried
as {"rational": "p/q", "decimal": "..."} pairs: the rational is exact, the
decimal is for display and carries at least 12 significant digits.
"""

from __future__ import annotations

import csv
import decimal
import io
import json
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from . import brackets, frns, frs
from .model import Weights
from .oracle import SimulationResult

DECIMAL_DIGITS = 15  # comfortably above the 12-significant-digit floor


def decimal_str(x: Fraction, digits: int = DECIMAL_DIGITS) -> str:
    """Plain decimal string of a rational, `digits` significant digits."""
    if x == 0:
        return "0"
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        d = decimal.Decimal(x.numerator) / decimal.Decimal(x.denominator)
    return format(d, "f")


def frac_payload(x: Fraction) -> dict:
    return {
        "rational": f"{x.numerator}/{x.denominator}",
        "decimal": decimal_str(x),
    }


def canonical_json(payload) -> str:
    """One JSON shape for every output path: sorted keys, compact separators,
    UTF-8 characters kept literal, single trailing newline."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


def weights_payload(V: Weights) -> list:
    return [frac_payload(w) for w in V]


def payload_probs(V: Weights) -> dict:
    table = brackets.champ_table(V)
    return {
        "kind": "champ-table",
        "weights": weights_payload(V),
        "teams": {
            str(team): {bt.value: frac_payload(p) for bt, p in row.items()}
            for team, row in table.rows()
        },
    }


def payload_decision(week: int, wins: Sequence[int], V: Weights, decision: frns.Decision) -> dict:
    return {
        "kind": "advice",
        "model": "frns",
        "week": week,
        "wins": list(wins),
        "weights": weights_payload(V),
        "action": decision.action.value,
        "value_win": frac_payload(decision.value_win),
        "value_lose": frac_payload(decision.value_lose),
    }


def _mixed_payload(mixed: Optional[frs.MixedSolution]) -> Optional[dict]:
    if mixed is None:
        return None
    out = {
        "kind": mixed.kind,
        "a12": frac_payload(mixed.a12),
        "a34": frac_payload(mixed.a34),
        "sample_profile": [frac_payload(p) for p in mixed.sample_profile],
        "payoffs": [frac_payload(e) for e in mixed.payoffs],
        "note": mixed.note,
    }
    if mixed.kind == "continuum":
        out["constraint"] = "π1=π2, π3=π4"
    return out


def payload_equilibria(wins: Sequence[int], V: Weights, report: frs.EquilibriumReport) -> dict:
    return {
        "kind": "equilibria",
        "model": "frs",
        "week": 3,
        "wins": list(wins),
        "weights": weights_payload(V),
        "pure": [
            {
                "profile": list(eq.profile),
                "payoffs": [frac_payload(e) for e in eq.payoffs],
                "margins": [frac_payload(m) for m in eq.margins],
            }
            for eq in report.pure
        ],
        "mixed": _mixed_payload(report.mixed),
    }


def payload_frs_note(week: int, wins: Sequence[int], V: Weights) -> dict:
    """FRS advice requested before the last week: explain instead of solving."""
    return {
        "kind": "equilibria",
        "model": "frs",
        "week": week,
        "wins": list(wins),
        "weights": weights_payload(V),
        "note": (
            "equilibrium analysis covers the final week only; "
            f"requested week is {week}, analysis available at week 3"
        ),
        "available_at_week": 3,
    }


def payload_advise(week: int, wins: Sequence[int], V: Weights, model: str) -> dict:
    """The shared advise surface behind `advise`, `nash` and the service."""
    if model == "frns":
        return payload_decision(week, wins, V, frns.decide(week, wins, V))
    if model == "frs":
        if week != 3:
            return payload_frs_note(week, wins, V)
        return payload_equilibria(wins, V, frs.equilibrium_report(wins, V))
    raise frns.DomainError(f"model must be 'frns' or 'frs', got {model!r}")


def payload_simulation(V: Weights, result: SimulationResult) -> dict:
    return {
        "kind": "simulation",
        "weights": weights_payload(V),
        "frequencies": [repr(f) for f in result.frequencies],
        "standard_errors": [repr(e) for e in result.standard_errors],
        "sample_count": result.sample_count,
        "seed": result.seed,
        "generator": result.generator,
        "batch_size": result.batch_size,
    }


def write_region_csv(rows: Iterable[frns.RegionRow], stream: io.TextIOBase) -> int:
    """Write the sweep as CSV; returns the number of data rows written."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["v2", "v3", "v4", "value_win", "value_lose", "decision"])
    count = 0
    for row in rows:
        writer.writerow(
            [
                decimal_str(row.v2),
                decimal_str(row.v3),
                decimal_str(row.v4),
                decimal_str(row.value_win),
                decimal_str(row.value_lose),
                row.decision.value,
            ]
        )
        count += 1
    return count


GNUPLOT_TEMPLATE = """\
# scatter of the sweep dataset; red = losing on purpose pays
set datafile separator ","
set key off
set xlabel "v2"
set ylabel "v3"
set palette defined (0 "#1f77b4", 1 "#d62728")
set cbrange [0:1]
unset colorbox
plot "{csv}" every ::1 using 1:2:(stringcolumn(6) eq "lose" ? 1 : 0) \\
    with points pt 5 ps 1.5 palette
"""


def gnuplot_script(csv_path: str) -> str:
    return GNUPLOT_TEMPLATE.format(csv=csv_path)


def decision_text(payload: Mapping) -> str:
    """Human rendering of an advice payload."""
    if payload.get("model") == "frns":
        verdict = "try to win" if payload["action"] == "win" else "lose intentionally"
        return (
            f"week {payload['week']}, wins {payload['wins']}: {verdict}\n"
            f"  value if trying: {payload['value_win']['decimal']}"
            f" ({payload['value_win']['rational']})\n"
            f"  value if losing: {payload['value_lose']['decimal']}"
            f" ({payload['value_lose']['rational']})"
        )
    lines = [f"week {payload['week']}, wins {payload['wins']}: equilibrium report"]
    if "note" in payload and payload.get("pure") is None:
        lines.append(f"  {payload['note']}")
        return "\n".join(lines)
    for eq in payload["pure"]:
        profile = ",".join(str(b) for b in eq["profile"])
        payoffs = ", ".join(e["decimal"] for e in eq["payoffs"])
        lines.append(f"  pure ({profile})  payoffs: {payoffs}")
    mixed = payload.get("mixed")
    if mixed is None:
        lines.append("  no fully-mixed equilibrium")
    elif mixed["kind"] == "continuum":
        lines.append(
            f"  mixed equilibria: {mixed['constraint']} "
            f"(A12 = {mixed['a12']['decimal']}, A34 = {mixed['a34']['decimal']})"
        )
    else:
        lines.append(
            f"  mixed family at A12 = {mixed['a12']['decimal']}, "
            f"A34 = {mixed['a34']['decimal']} — {mixed['note']}"
        )
    return "\n".join(lines)
