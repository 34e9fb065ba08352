"""Command-line surface: output formats, exit codes, artifact files."""

import json
from fractions import Fraction

from click.testing import CliRunner

from tanklab.cli import EXIT_INVALID, main
from tanklab.frns import decide_week3
from tanklab.model import Weights
from tanklab.serialize import canonical_json, payload_advise, payload_probs

F = Fraction


def run(*args):
    return CliRunner().invoke(main, list(args))


def test_advise_text_recommends_trying_for_the_front_runner():
    res = run("advise", "--week", "3", "--wins", "2,2,0,0", "--weights", "1,0.8,0.5,0.3")
    assert res.exit_code == 0
    assert "try to win" in res.output
    assert "0.435430349960264" in res.output
    assert "0.428346582192736" in res.output


def test_advise_text_flags_a_profitable_throw():
    res = run("advise", "--week", "3", "--wins", "2,1,0,1", "--weights", "1,0.8,0.5,0.3")
    assert res.exit_code == 0
    assert "lose intentionally" in res.output
    assert "0.422046133406532" in res.output and "0.429348963002809" in res.output


def test_advise_json_equals_the_library_payload():
    res = run(
        "advise", "--week", "3", "--wins", "2,1,0,1", "--weights", "1,0.8,0.5,0.3", "--json"
    )
    assert res.exit_code == 0
    V = Weights.of(1, "0.8", "0.5", "0.3")
    assert res.output == canonical_json(payload_advise(3, (2, 1, 0, 1), V, "frns"))
    doc = json.loads(res.output)
    d = decide_week3((2, 1, 0, 1), V)
    assert F(doc["value_lose"]["rational"]) == d.value_lose


def test_probs_json_matches_library_and_text_renders_table():
    res = run("probs", "--weights", "1,0.8,0.5,0.3", "--json")
    assert res.exit_code == 0
    V = Weights.of(1, "0.8", "0.5", "0.3")
    assert res.output == canonical_json(payload_probs(V))
    text = run("probs", "--weights", "1,0.8,0.5,0.3")
    assert text.exit_code == 0
    for header in ("team", "A", "B", "C"):
        assert header in text.output


def test_nash_matches_advise_with_the_frs_model():
    a = run("nash", "--wins", "1,2,0,1", "--weights", "1,1,0.5,0.5", "--json")
    b = run(
        "advise", "--week", "3", "--wins", "1,2,0,1", "--weights", "1,1,0.5,0.5",
        "--model", "frs", "--json",
    )
    assert a.exit_code == b.exit_code == 0
    assert a.output == b.output
    assert "π1=π2, π3=π4" in a.output


def test_nash_text_prints_the_continuum_banner():
    res = run("nash", "--wins", "1,2,0,1", "--weights", "1,1,0.5,0.5")
    assert res.exit_code == 0
    assert "π1=π2, π3=π4" in res.output


def test_invalid_inputs_exit_with_the_domain_code():
    for args in (
        ("advise", "--week", "9", "--wins", "0,0,0,0", "--weights", "1,1,1,1"),
        ("advise", "--week", "3", "--wins", "2,2,1,1", "--weights", "1,1,1,1"),
        ("advise", "--week", "3", "--wins", "2,2,0,0", "--weights", "1,2,3,4"),
        ("probs", "--weights", "0,0,0,0"),
        ("regions", "--wins", "2,2,0,0", "--step", "0.4", "--out", "x.csv"),
    ):
        res = run(*args)
        assert res.exit_code == EXIT_INVALID, (args, res.output)


def test_regions_writes_csv_gnuplot_and_png(tmp_path):
    out = tmp_path / "regions.csv"
    png = tmp_path / "regions.png"
    res = run(
        "regions", "--wins", "2,1,0,1", "--step", "0.25", "--out", str(out),
        "--gnuplot", "--png", str(png),
    )
    assert res.exit_code == 0, res.output
    lines = out.read_text().splitlines()
    assert lines[0] == "v2,v3,v4,value_win,value_lose,decision"
    assert len(lines) == 21  # header + C(4+2,3) grid rows
    script = (tmp_path / "regions.csv.gp").read_text()
    assert "regions.csv" in script
    assert png.exists() and png.stat().st_size > 0
    head = png.read_bytes()[:8]
    assert head == b"\x89PNG\r\n\x1a\n"


def test_simulate_is_deterministic_and_json_parses():
    args = ("simulate", "--weights", "1,0.8,0.5,0.3", "--n", "2000", "--seed", "5", "--json")
    a, b = run(*args), run(*args)
    assert a.exit_code == 0
    assert a.output == b.output
    doc = json.loads(a.output)
    assert doc["sample_count"] == 2000
    assert len(doc["frequencies"]) == 4


def test_simulate_accepts_a_policy_document():
    policy = json.dumps({"1": {"3": 0}})
    res = run(
        "simulate", "--weights", "1,0.8,0.5,0.3", "--policy", policy,
        "--n", "2000", "--seed", "5", "--json",
    )
    assert res.exit_code == 0
    base = run("simulate", "--weights", "1,0.8,0.5,0.3", "--n", "2000", "--seed", "5", "--json")
    assert res.output != base.output  # the tank changes the distribution


def test_simulate_rejects_malformed_policy():
    res = run("simulate", "--weights", "1,1,1,1", "--policy", "{bad json")
    assert res.exit_code == EXIT_INVALID
    res = run("simulate", "--weights", "1,1,1,1", "--policy", json.dumps({"5": {"3": 1}}))
    assert res.exit_code == EXIT_INVALID
