"""HTTP facade: probabilities, season state, advice, what-if.

Seasons persist as one JSON document each under a state directory; every
mutation bumps an integer revision, and result posts carry the revision they
were computed against so concurrent writers resolve cleanly (the loser gets
a 409).  All success responses are canonical JSON — byte-identical to the
CLI's --json output for the same query.

Endpoints:
    GET  /probs?weights=1,0.8,0.5,0.3
    GET  /seasons
    POST /season                       {"weights": [...], "name"?: str}
    GET  /season/{id}
    POST /season/{id}/result           {"winner": int, "revision": int}
    GET  /season/{id}/advice?model=frns|frs
    POST /season/{id}/whatif           {"weights"?, "results"?, "week"?,
                                        "wins"?, "model"?}
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from dataclasses import dataclass
from typing import List, Optional, Sequence

from fastapi import FastAPI, Request, Response

from . import serialize
from .brackets import expected_champ_prob
from .model import (
    SCHEDULE,
    DomainError,
    Weights,
    apply_result,
    as_fraction,
)

_LOCKS: dict = {}
_LOCKS_GUARD = threading.Lock()


def _season_lock(season_id: str) -> threading.Lock:
    with _LOCKS_GUARD:
        return _LOCKS.setdefault(season_id, threading.Lock())


class ApiError(Exception):
    def __init__(self, status: int, reason: str):
        super().__init__(reason)
        self.status = status
        self.reason = reason


def schedule_games() -> List[tuple[int, tuple[int, int]]]:
    """The six games in play order: (week, (home, away))."""
    return [(week, game) for week in (1, 2, 3) for game in SCHEDULE[week]]


@dataclass
class Season:
    """A season document: fixed weights plus results in schedule order."""

    id: str
    name: str
    weights: Weights
    results: List[int]  # winner of games_in_order[k]
    revision: int

    def wins(self) -> tuple[int, ...]:
        w: tuple[int, ...] = (0, 0, 0, 0)
        for winner in self.results:
            w = apply_result(w, winner)
        return w

    def week(self) -> int:
        """Week of the next unplayed game; 4 when the season is over."""
        return 4 if len(self.results) >= 6 else schedule_games()[len(self.results)][0]

    def next_game(self) -> Optional[tuple[int, tuple[int, int]]]:
        if len(self.results) >= 6:
            return None
        return schedule_games()[len(self.results)]

    def snapshot(self) -> dict:
        games = schedule_games()
        nxt = self.next_game()
        return {
            "kind": "season",
            "id": self.id,
            "name": self.name,
            "revision": self.revision,
            "weights": serialize.weights_payload(self.weights),
            "week": self.week(),
            "wins": list(self.wins()),
            "results": [
                {"week": games[k][0], "game": list(games[k][1]), "winner": winner}
                for k, winner in enumerate(self.results)
            ],
            "next_game": None if nxt is None else {"week": nxt[0], "game": list(nxt[1])},
        }


class SeasonStore:
    """One JSON file per season under `root`; atomic replace on write."""

    def __init__(self, root: str):
        self.root = root
        os.makedirs(root, exist_ok=True)

    def _path(self, season_id: str) -> str:
        if not season_id.isalnum():
            raise ApiError(404, f"unknown season {season_id!r}")
        return os.path.join(self.root, f"{season_id}.json")

    def create(self, weights: Weights, name: str) -> Season:
        season = Season(uuid.uuid4().hex[:12], name, weights, [], 0)
        self.save(season)
        return season

    def load(self, season_id: str) -> Season:
        path = self._path(season_id)
        try:
            with open(path) as fh:
                doc = json.load(fh)
        except FileNotFoundError:
            raise ApiError(404, f"unknown season {season_id!r}") from None
        return Season(
            id=doc["id"],
            name=doc.get("name", ""),
            weights=Weights.of(*doc["weights"]),
            results=[int(w) for w in doc["results"]],
            revision=int(doc["revision"]),
        )

    def save(self, season: Season) -> None:
        doc = {
            "id": season.id,
            "name": season.name,
            "weights": [f"{w.numerator}/{w.denominator}" for w in season.weights],
            "results": season.results,
            "revision": season.revision,
        }
        path = self._path(season.id)
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
        os.replace(tmp, path)

    def ids(self) -> List[str]:
        return sorted(
            name[: -len(".json")]
            for name in os.listdir(self.root)
            if name.endswith(".json")
        )


def _parse_weights_value(value) -> Weights:
    if isinstance(value, str):
        parts = [p.strip() for p in value.split(",")]
    elif isinstance(value, (list, tuple)):
        parts = list(value)
    else:
        raise ApiError(400, "weights must be a list or a comma-separated string")
    if len(parts) != 4:
        raise ApiError(400, f"need 4 weights, got {len(parts)}")
    try:
        return Weights.of(*parts)
    except DomainError as exc:
        raise ApiError(400, str(exc)) from exc


def _derive(results: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Validate a winner sequence against the schedule; return (week, wins)."""
    games = schedule_games()
    if len(results) > 6:
        raise ApiError(400, f"at most 6 results, got {len(results)}")
    wins: tuple[int, ...] = (0, 0, 0, 0)
    for k, winner in enumerate(results):
        week, (a, b) = games[k]
        if winner not in (a, b):
            raise ApiError(
                400,
                f"game {k + 1} is week {week} a{a}–a{b}; "
                f"team {winner} does not play in it",
            )
        wins = apply_result(wins, winner)
    week = 4 if len(results) >= 6 else games[len(results)][0]
    return week, wins


def _canonical(payload: dict, status: int = 200) -> Response:
    return Response(
        content=serialize.canonical_json(payload),
        status_code=status,
        media_type="application/json",
    )


def _final_payload(wins: Sequence[int], V: Weights) -> dict:
    return {
        "kind": "final-odds",
        "phase": "complete",
        "wins": list(wins),
        "weights": serialize.weights_payload(V),
        "championship": {
            str(t): serialize.frac_payload(expected_champ_prob(t, wins, V))
            for t in (1, 2, 3, 4)
        },
    }


def _advice_payload(week: int, wins: Sequence[int], V: Weights, model: str) -> dict:
    if model not in ("frns", "frs"):
        raise ApiError(400, f"model must be 'frns' or 'frs', got {model!r}")
    if week == 4:
        return _final_payload(wins, V)
    return serialize.payload_advise(week, wins, V, model)


def create_app(state_dir: str) -> FastAPI:
    app = FastAPI(title="tanklab", docs_url=None, redoc_url=None)
    store = SeasonStore(state_dir)

    @app.exception_handler(ApiError)
    async def _api_error(_req: Request, exc: ApiError) -> Response:
        return _canonical({"error": {"status": exc.status, "reason": exc.reason}}, exc.status)

    @app.exception_handler(DomainError)
    async def _domain_error(_req: Request, exc: DomainError) -> Response:
        return _canonical({"error": {"status": 400, "reason": str(exc)}}, 400)

    async def _body(request: Request) -> dict:
        try:
            doc = await request.json()
        except Exception:
            raise ApiError(400, "request body must be JSON") from None
        if not isinstance(doc, dict):
            raise ApiError(400, "request body must be a JSON object")
        return doc

    @app.get("/probs")
    def probs(weights: str) -> Response:
        return _canonical(serialize.payload_probs(_parse_weights_value(weights)))

    @app.get("/seasons")
    def seasons() -> Response:
        out = []
        for sid in store.ids():
            season = store.load(sid)
            out.append(
                {
                    "id": season.id,
                    "name": season.name,
                    "revision": season.revision,
                    "week": season.week(),
                    "wins": list(season.wins()),
                }
            )
        return _canonical({"kind": "season-list", "seasons": out})

    @app.post("/season")
    async def create_season(request: Request) -> Response:
        doc = await _body(request)
        if "weights" not in doc:
            raise ApiError(400, "missing 'weights'")
        name = doc.get("name", "")
        if not isinstance(name, str):
            raise ApiError(400, "'name' must be a string")
        season = store.create(_parse_weights_value(doc["weights"]), name)
        return _canonical(season.snapshot(), status=201)

    @app.get("/season/{season_id}")
    def get_season(season_id: str) -> Response:
        return _canonical(store.load(season_id).snapshot())

    @app.post("/season/{season_id}/result")
    async def post_result(season_id: str, request: Request) -> Response:
        doc = await _body(request)
        if "winner" not in doc or "revision" not in doc:
            raise ApiError(400, "body must carry 'winner' and 'revision'")
        try:
            winner = int(doc["winner"])
            revision = int(doc["revision"])
        except (TypeError, ValueError):
            raise ApiError(400, "'winner' and 'revision' must be integers") from None

        with _season_lock(season_id):
            season = store.load(season_id)
            if revision != season.revision:
                raise ApiError(
                    409,
                    f"revision {revision} is stale; season is at {season.revision}",
                )
            nxt = season.next_game()
            if nxt is None:
                raise ApiError(409, "season is complete; no games left")
            week, (a, b) = nxt
            if "week" in doc and int(doc["week"]) != week:
                raise ApiError(409, f"next unplayed game is in week {week}")
            if "game" in doc and sorted(doc["game"]) != sorted((a, b)):
                raise ApiError(409, f"next unplayed game is a{a}–a{b} (week {week})")
            if winner not in (a, b):
                raise ApiError(
                    400,
                    f"week {week} pairs a{a}–a{b}; team {winner} does not play in it",
                )
            season.results.append(winner)
            season.revision += 1
            store.save(season)
        return _canonical(season.snapshot())

    @app.get("/season/{season_id}/advice")
    def advice(season_id: str, model: str = "frns") -> Response:
        season = store.load(season_id)
        return _canonical(_advice_payload(season.week(), season.wins(), season.weights, model))

    @app.post("/season/{season_id}/whatif")
    async def whatif(season_id: str, request: Request) -> Response:
        season = store.load(season_id)
        doc = await _body(request)
        model = doc.get("model", "frns")
        V = _parse_weights_value(doc["weights"]) if "weights" in doc else season.weights

        if "wins" in doc:
            wins = doc["wins"]
            if not (isinstance(wins, list) and len(wins) == 4):
                raise ApiError(400, "'wins' must be a list of 4 integers")
            try:
                wins = tuple(int(x) for x in wins)
            except (TypeError, ValueError):
                raise ApiError(400, "'wins' must be a list of 4 integers") from None
            week = int(doc.get("week", 3))
        elif "results" in doc:
            if not isinstance(doc["results"], list):
                raise ApiError(400, "'results' must be a list of winners")
            try:
                results = [int(x) for x in doc["results"]]
            except (TypeError, ValueError):
                raise ApiError(400, "'results' must be a list of winners") from None
            week, wins = _derive(results)
        else:
            week, wins = season.week(), season.wins()
        return _canonical(_advice_payload(week, wins, V, model))

    return app
