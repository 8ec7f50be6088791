"""JSON-over-HTTP advisor service.

Routes cover the whole elicitation loop: register with triage lists, log in,
search under short-term constraints, give per-item feedback, continue or close
the search. Long-term feedback mutates the persisted account; short-term tags
live only inside the server-side session and die with it.

Per-user mutations are serialized behind one lock; the catalog and case base
are immutable snapshots, so searches can run concurrently.
"""

from __future__ import annotations

import hashlib
import threading
import uuid
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from fastapi import Depends, FastAPI, Header, Query, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .casebase import EmptyCaseBaseError, MovieRecord, preference_ranking
from .orders import PartialPreference, TotalOrder, TriageLists, ValidationError, order_from_triage
from .recommend import (
    ConstraintSet,
    Feedback,
    SessionState,
    apply_longterm_feedback,
    merged_session_preference,
    recommend,
)
from .sampling import SamplerConfig
from .store import DuplicateLoginError, Store

DEFAULT_PAGE_SIZE = 10


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, detail: str = ""):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.detail = detail


class TriageBody(BaseModel):
    like: list[str] = Field(default_factory=list)
    ok: list[str] = Field(default_factory=list)
    dislike: list[str] = Field(default_factory=list)

    def to_triage(self) -> TriageLists:
        return TriageLists(frozenset(self.like), frozenset(self.ok), frozenset(self.dislike))


class RegisterBody(BaseModel):
    login: str
    password: str
    triage: TriageBody = Field(default_factory=TriageBody)


class LoginBody(BaseModel):
    login: str
    password: str


class ConstraintBody(BaseModel):
    actors: list[str] | None = None
    directors: list[str] | None = None
    genres: list[str] | None = None
    min_star_rating: float | None = None
    countries: list[str] | None = None
    year_range: tuple[int, int] | None = None
    mpaa: list[str] | None = None
    max_runtime_minutes: int | None = None

    def to_constraints(self) -> ConstraintSet:
        return ConstraintSet(
            actors=_maybe_set(self.actors),
            directors=_maybe_set(self.directors),
            genres=_maybe_set(self.genres),
            min_star_rating=self.min_star_rating,
            countries=_maybe_set(self.countries),
            year_range=self.year_range,
            mpaa=_maybe_set(self.mpaa),
            max_runtime_minutes=self.max_runtime_minutes,
        )


def _maybe_set(values: list[str] | None) -> frozenset[str] | None:
    return None if values is None else frozenset(values)


class SearchBody(BaseModel):
    constraints: ConstraintBody = Field(default_factory=ConstraintBody)
    n: int = DEFAULT_PAGE_SIZE


class FeedbackItem(BaseModel):
    item: str
    verdict: str | None = None
    tag: str | None = None


class FeedbackBody(BaseModel):
    items: list[FeedbackItem] = Field(default_factory=list)


@dataclass
class SearchSession:
    id: str
    owner: str
    seed: int
    n: int
    state: SessionState
    last_list: list[str] = dc_field(default_factory=list)


def movie_dict(m: MovieRecord) -> dict:
    return {
        "id": m.id, "title": m.title, "director": m.director,
        "actors": list(m.actors), "genres": list(m.genres),
        "star_rating": m.star_rating, "mpaa": m.mpaa, "country": m.country,
        "runtime_minutes": m.runtime_minutes, "year": m.year,
    }


def create_app(store: Store, data_dir: str | Path | None = None,
               sampler: SamplerConfig | None = None) -> FastAPI:
    """Build the advisor app around a loaded store.

    When ``data_dir`` is given, account mutations are written back to it
    immediately (single-writer, coarse lock).
    """
    app = FastAPI(title="diva", version="0.1.0")
    base = sampler or SamplerConfig()
    state = {
        "tokens": {},       # token -> login
        "sessions": {},     # session id -> SearchSession
        "by_owner": {},     # login -> session id
        "counters": {},     # login -> searches issued
    }
    lock = threading.Lock()
    catalog_ids = {m.id for m in store.catalog}

    def persist() -> None:
        if data_dir is not None:
            store.save(data_dir)

    def check_known_items(triage: TriageLists) -> None:
        if not catalog_ids:
            return
        unknown = sorted(triage.items() - catalog_ids)
        if unknown:
            raise ApiError(422, "unknown_movie", f"unknown movie id {unknown[0]!r}")

    def authed(authorization: str | None = Header(default=None)) -> str:
        if not authorization or not authorization.startswith("Bearer "):
            raise ApiError(401, "unauthenticated", "send Authorization: Bearer <token>")
        login = state["tokens"].get(authorization.removeprefix("Bearer "))
        if login is None:
            raise ApiError(401, "unauthenticated", "unknown or expired token")
        return login

    def search_seed(login: str, counter: int) -> int:
        text = f"{store.seed}:{login}:{counter}".encode()
        return int.from_bytes(hashlib.blake2b(text, digest_size=8).digest(), "big") >> 1

    def rank_universe(p: PartialPreference) -> frozenset[str]:
        return frozenset(catalog_ids) | p.domain

    def build_ranking(p: PartialPreference, seed: int) -> tuple[TotalOrder, bool, str | None]:
        """Completed ranking, degraded flag, matched case user (if any)."""
        if not store.casebase.cases or not p.edges:
            by_star = sorted(store.catalog, key=lambda m: (-m.star_rating, m.id))
            order = TotalOrder(tuple(m.id for m in by_star))
            return order, True, None
        cfg = SamplerConfig(base.num_extensions, base.num_iterations, seed,
                            base.position_weighting, base.exhaustive)
        try:
            result = preference_ranking(p, store.casebase, cfg, rank_universe(p))
        except EmptyCaseBaseError:
            by_star = sorted(store.catalog, key=lambda m: (-m.star_rating, m.id))
            return TotalOrder(tuple(m.id for m in by_star)), True, None
        return result.order, False, result.matched_user

    def open_session(sid: str, login: str) -> SearchSession:
        session = state["sessions"].get(sid)
        if session is None:
            raise ApiError(404, "unknown_session", f"no open session {sid!r}; start a new search")
        if session.owner != login:
            raise ApiError(403, "forbidden", "session belongs to another user")
        return session

    def batch_response(session: SearchSession, recs, degraded: bool, matched: str | None,
                       warning: str | None = None) -> dict:
        session.last_list = [m.id for m in recs.movies]
        return {
            "session_id": session.id,
            "movies": [movie_dict(m) for m in recs.movies],
            "relaxed": recs.relaxed,
            "no_matches": recs.no_matches,
            "degraded": degraded,
            "matched_user": matched,
            "warning": warning,
        }

    @app.exception_handler(ApiError)
    async def api_error_handler(_: Request, err: ApiError):
        return JSONResponse(status_code=err.status,
                            content={"code": err.code, "message": err.message, "detail": err.detail})

    @app.exception_handler(ValidationError)
    async def validation_handler(_: Request, err: ValidationError):
        return JSONResponse(status_code=422,
                            content={"code": "validation", "message": str(err), "detail": ""})

    @app.post("/api/users", status_code=201)
    def register(body: RegisterBody):
        triage = body.triage.to_triage()
        check_known_items(triage)
        with lock:
            try:
                account, warning = store.register(body.login, body.password, triage)
            except DuplicateLoginError as err:
                raise ApiError(409, "duplicate_login", str(err))
            persist()
        return {"login": account.login, "warning": warning}

    @app.post("/api/login")
    def login(body: LoginBody):
        if not store.authenticate(body.login, body.password):
            raise ApiError(401, "bad_credentials", "login or password incorrect")
        token = uuid.uuid4().hex
        state["tokens"][token] = body.login
        return {"token": token}

    @app.get("/api/movies")
    def movies(title_prefix: str = Query(default=""), limit: int = Query(default=100, ge=1, le=1000)):
        prefix = title_prefix.casefold()
        found = [m for m in store.catalog if m.title.casefold().startswith(prefix)]
        found.sort(key=lambda m: (m.title.casefold(), m.id))
        return {"movies": [movie_dict(m) for m in found[:limit]], "total": len(found)}

    @app.get("/api/users/{login}/triage")
    def get_triage(login: str, caller: str = Depends(authed)):
        if caller != login:
            raise ApiError(403, "forbidden", "cannot read another user's triage")
        triage = store.accounts[login].triage
        return {"like": sorted(triage.like), "ok": sorted(triage.ok),
                "dislike": sorted(triage.dislike)}

    @app.put("/api/users/{login}/triage")
    def put_triage(login: str, body: TriageBody, caller: str = Depends(authed)):
        if caller != login:
            raise ApiError(403, "forbidden", "cannot edit another user's triage")
        triage = body.to_triage()
        check_known_items(triage)
        with lock:
            store.update_triage(login, triage)
            persist()
        warning = None
        if min(len(triage.like), len(triage.ok), len(triage.dislike)) < 5:
            warning = "recommendations may be unreliable until each triage list has about 5 movies"
        return {"login": login, "warning": warning}

    @app.post("/api/search")
    def search(body: SearchBody, caller: str = Depends(authed)):
        account = store.accounts[caller]
        if not account.triage.items():
            raise ApiError(400, "empty_triage",
                           "triage some movies first (about 5 per list) to get recommendations")
        if body.n < 1:
            raise ApiError(422, "validation", "n must be >= 1")
        with lock:
            counter = state["counters"].get(caller, 0) + 1
            state["counters"][caller] = counter
            previous = state["by_owner"].pop(caller, None)
            if previous is not None:
                state["sessions"].pop(previous, None)
            seed = search_seed(caller, counter)
            ldo = order_from_triage(account.triage)
            order, degraded, matched = build_ranking(ldo, seed)
            session = SearchSession(
                id=uuid.uuid4().hex, owner=caller, seed=seed, n=body.n,
                state=SessionState(constraints=body.constraints.to_constraints()),
            )
            state["sessions"][session.id] = session
            state["by_owner"][caller] = session.id
            recs = recommend(order, store.catalog, session.state, body.n)
        warning = None
        if min(len(account.triage.like), len(account.triage.ok), len(account.triage.dislike)) < 5:
            warning = "triage lists are sparse; recommendations may be unreliable"
        return batch_response(session, recs, degraded, matched, warning)

    @app.post("/api/search/{sid}/feedback")
    def feedback(sid: str, body: FeedbackBody, caller: str = Depends(authed)):
        with lock:
            session = open_session(sid, caller)
            unknown = [i.item for i in body.items if i.item not in session.last_list]
            if unknown:
                raise ApiError(422, "unknown_item",
                               f"{unknown[0]!r} is not in the last recommendation list")
            fb = Feedback.from_rows([(i.item, i.verdict, i.tag) for i in body.items])
            if fb.verdicts:
                account = store.accounts[caller]
                store.update_triage(caller, apply_longterm_feedback(account.triage, fb))
                persist()
            session.state.apply_tags(fb)
        return {"ok": True, "long_term": len(fb.verdicts), "short_term": len(fb.tags)}

    @app.post("/api/search/{sid}/continue")
    def continue_search(sid: str, caller: str = Depends(authed)):
        with lock:
            session = open_session(sid, caller)
            account = store.accounts[caller]
            ldo = order_from_triage(account.triage)
            merged, _dropped = merged_session_preference(ldo, session.state)
            order, degraded, matched = build_ranking(merged, session.seed)
            recs = recommend(order, store.catalog, session.state, session.n)
        return batch_response(session, recs, degraded, matched)

    @app.post("/api/search/{sid}/close")
    def close_search(sid: str, caller: str = Depends(authed)):
        with lock:
            open_session(sid, caller)
            state["sessions"].pop(sid, None)
            if state["by_owner"].get(caller) == sid:
                state["by_owner"].pop(caller, None)
        return {"closed": True}

    return app
