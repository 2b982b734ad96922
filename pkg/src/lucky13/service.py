"""JSON-over-HTTP advice service for the browser companion.

Every response is computed by the library modules; handlers only
translate between JSON and domain objects, so numbers returned here are
bit-identical to direct library calls.  Error bodies are always
``{"error": string}`` with 400 for malformed input, 404 for unknown
resources, and 409 for actions that conflict with a session's state.

Sessions live in memory behind per-session locks; an optional snapshot
file mirrors the store as JSON after every change so a restart can
resume mid-game.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from dataclasses import replace
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .distributions import LuckyRange, QuestionProfile, exact_pmf
from .strategy import (
    Recommendation,
    StrategyRow,
    joint_recommend,
    parse_utility,
    recommend,
    strategy_table_three_category,
    strategy_table_two_category,
)
from .tracker import (
    GameState,
    OfferEvaluation,
    TrajectoryPoint,
    evaluate_offer,
    new_game,
    reveal,
    trajectory,
)


# ---------------------------------------------------------------------------
# Request bodies
# ---------------------------------------------------------------------------

class ProfileBody(BaseModel):
    s: int | None = None
    u: int | None = None
    g: int | None = None
    p: list[float] | None = None

    def to_profile(self) -> QuestionProfile:
        counts_given = any(v is not None for v in (self.s, self.u, self.g))
        if self.p is not None:
            if counts_given:
                raise ValueError("give either category counts or p, not both")
            return QuestionProfile.from_probs(self.p)
        if not counts_given:
            raise ValueError("a profile is required: s/u/g counts or p")
        return QuestionProfile.from_counts(
            sure=self.s or 0, unsure=self.u or 0, guess=self.g or 0
        )


class AdviseBody(ProfileBody):
    utility: str = "winnings"
    joint: bool = False


class NewGameBody(ProfileBody):
    range: str
    number: int | None = None


class RevealBody(BaseModel):
    category: str | None = None
    p: float | None = None
    correct: bool

    def question(self):
        if (self.category is None) == (self.p is None):
            raise ValueError("a reveal names either a category or a probability")
        return self.category if self.category is not None else self.p


class OfferBody(BaseModel):
    amount: float


# ---------------------------------------------------------------------------
# JSON shapes
# ---------------------------------------------------------------------------

def _profile_dict(profile: QuestionProfile) -> dict:
    if profile.is_counts:
        s, u, g = profile.counts
        return {"s": s, "u": u, "g": g}
    return {"p": list(profile.probs)}


def _recommendation_dict(rec: Recommendation) -> dict:
    return {
        "range": rec.range.label,
        "number": rec.number,
        "win_probability": rec.win_probability,
        "expected_winnings": rec.expected_winnings,
        "number_hit_probability": rec.number_hit_probability,
        "ties": [{"range": r.label, "number": n} for r, n in rec.ties],
    }


def _point_dict(point: TrajectoryPoint) -> dict:
    return {
        "reveal_index": point.reveal_index,
        "correct_so_far": point.correct_so_far,
        "expected_winnings": point.expected_winnings,
        "range_probability": point.range_probability,
        "number_probability": point.number_probability,
    }


def _evaluation_dict(evaluation: OfferEvaluation) -> dict:
    return {
        "offer": evaluation.offer,
        "continuation_value": evaluation.continuation_value,
        "advice": evaluation.advice,
        "margin": evaluation.margin,
        "range_probability": evaluation.range_probability,
        "number_probability": evaluation.number_probability,
    }


def _row_dict(row: StrategyRow, utility: str) -> dict:
    rec = row.rec(utility)
    return {"s": row.sure, "u": row.unsure, "g": row.guess, **_recommendation_dict(rec)}


def _reveal_dicts(state: GameState) -> list[dict]:
    out = []
    for question, correct in state.reveals:
        if isinstance(question, str):
            out.append({"category": question, "correct": correct})
        else:
            out.append({"p": question, "correct": correct})
    return out


# ---------------------------------------------------------------------------
# Session store
# ---------------------------------------------------------------------------

class GameSession:
    """One stored game plus its bookkeeping timestamps."""

    def __init__(self, session_id: str, state: GameState, created: float, updated: float):
        self.id = session_id
        self.state = state
        self.created = created
        self.updated = updated

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "created": self.created,
            "updated": self.updated,
            "profile": _profile_dict(self.state.profile),
            "bet": {
                "range": self.state.lucky_range.label,
                "number": self.state.number,
            },
            "reveals": _reveal_dicts(self.state),
            "offers": [
                {
                    "after_reveal": record.after_reveal,
                    "amount": record.amount,
                    "decision": record.decision,
                }
                for record in self.state.offer_log
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GameSession":
        from .tracker import OfferRecord

        try:
            profile_raw = data["profile"]
            if "p" in profile_raw:
                profile = QuestionProfile.from_probs(profile_raw["p"])
            else:
                profile = QuestionProfile.from_counts(
                    profile_raw["s"], profile_raw["u"], profile_raw["g"]
                )
            state = new_game(
                profile,
                LuckyRange.from_label(data["bet"]["range"]),
                data["bet"]["number"],
            )
            for entry in data["reveals"]:
                question = entry["p"] if "p" in entry else entry["category"]
                state = reveal(state, question, entry["correct"])
            offer_log = tuple(
                OfferRecord(
                    after_reveal=o["after_reveal"],
                    amount=o["amount"],
                    decision=o["decision"],
                )
                for o in data["offers"]
            )
            state = replace(state, offer_log=offer_log)
            return cls(data["id"], state, data["created"], data["updated"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed snapshot: {exc}") from None


class SessionStore:
    """In-memory id-to-session map with an optional JSON snapshot mirror.

    Mutations hold a per-session lock, so concurrent requests against one
    game serialize while distinct games proceed independently.
    """

    def __init__(self, snapshot_path: str | Path | None = None):
        self._sessions: dict[str, GameSession] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry = threading.Lock()
        self._snapshot_path = Path(snapshot_path) if snapshot_path else None
        if self._snapshot_path is not None and self._snapshot_path.exists():
            self._load()

    def __len__(self) -> int:
        return len(self._sessions)

    def create(self, state: GameState) -> GameSession:
        now = time.time()
        session = GameSession(uuid.uuid4().hex, state, created=now, updated=now)
        with self._registry:
            self._sessions[session.id] = session
            self._locks[session.id] = threading.Lock()
        self._save()
        return session

    def get(self, session_id: str) -> GameSession:
        try:
            return self._sessions[session_id]
        except KeyError:
            raise HTTPException(status_code=404, detail="unknown game id") from None

    def update(self, session_id: str, transform) -> GameSession:
        """Apply ``transform`` to one session's state atomically."""
        with self._registry:
            lock = self._locks.get(session_id)
        if lock is None:
            raise HTTPException(status_code=404, detail="unknown game id")
        with lock:
            session = self._sessions[session_id]
            session.state = transform(session.state)
            session.updated = time.time()
        self._save()
        return session

    def _save(self) -> None:
        if self._snapshot_path is None:
            return
        payload = {"sessions": [s.to_dict() for s in self._sessions.values()]}
        self._snapshot_path.write_text(json.dumps(payload), encoding="utf-8")

    def _load(self) -> None:
        data = json.loads(self._snapshot_path.read_text(encoding="utf-8"))
        for raw in data.get("sessions", ()):
            session = GameSession.from_dict(raw)
            self._sessions[session.id] = session
            self._locks[session.id] = threading.Lock()


# ---------------------------------------------------------------------------
# Application
# ---------------------------------------------------------------------------

def create_app(
    snapshot_path: str | Path | None = None,
    cors_origins: tuple[str, ...] = ("*",),
) -> FastAPI:
    app = FastAPI(title="lucky13 advisor")
    store = SessionStore(snapshot_path)
    app.state.store = store

    if cors_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(cors_origins),
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": str(exc.errors()[:1])})

    @app.exception_handler(HTTPException)
    async def on_http_error(request: Request, exc: HTTPException):
        return JSONResponse(status_code=exc.status_code, content={"error": exc.detail})

    def parse(builder):
        try:
            return builder()
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None

    def game_view(session: GameSession) -> dict:
        state = session.state
        return {
            **session.to_dict(),
            "reveal_count": state.reveal_count,
            "correct_count": state.correct_count,
            "complete": state.is_complete,
            "trajectory": [_point_dict(p) for p in trajectory(state)],
        }

    @app.post("/advise")
    def advise(body: AdviseBody):
        profile = parse(body.to_profile)
        pmf = exact_pmf(profile)
        if body.joint:
            rec = joint_recommend(pmf)
        else:
            rec = recommend(pmf, parse(lambda: parse_utility(body.utility)))
        return _recommendation_dict(rec)

    @app.post("/games", status_code=201)
    def create_game(body: NewGameBody):
        profile = parse(body.to_profile)
        state = parse(
            lambda: new_game(profile, LuckyRange.from_label(body.range), body.number)
        )
        return game_view(store.create(state))

    @app.get("/games/{game_id}")
    def get_game(game_id: str):
        return game_view(store.get(game_id))

    @app.post("/games/{game_id}/reveals")
    def post_reveal(game_id: str, body: RevealBody):
        question = parse(body.question)

        def apply(state: GameState) -> GameState:
            if state.is_complete:
                raise HTTPException(status_code=409, detail="game is fully revealed")
            return parse(lambda: reveal(state, question, body.correct))

        session = store.update(game_id, apply)
        return _point_dict(session.state.point())

    @app.post("/games/{game_id}/offers")
    def post_offer(game_id: str, body: OfferBody):
        result: dict = {}

        def apply(state: GameState) -> GameState:
            if state.is_complete:
                raise HTTPException(status_code=409, detail="game is fully revealed")
            evaluation, updated = parse(lambda: evaluate_offer(state, body.amount))
            result["evaluation"] = evaluation
            return updated

        store.update(game_id, apply)
        return _evaluation_dict(result["evaluation"])

    @app.get("/tables/{model}")
    def get_table(model: str, utility: str = "winnings"):
        if model == "two":
            rows = strategy_table_two_category()
        elif model == "three":
            rows = strategy_table_three_category()
        else:
            raise HTTPException(status_code=404, detail=f"unknown table model {model!r}")
        if utility not in ("winprob", "winnings"):
            raise HTTPException(status_code=400, detail=f"unknown utility {utility!r}")
        return [_row_dict(row, utility) for row in rows]

    return app
