"""Durable state for the advisor service: accounts, catalog, and case base.

Everything is line-delimited JSON in one data directory, written with sorted
keys and sorted records so a round trip is byte-identical. Session state is
deliberately not persisted; it dies with the search.
"""

from __future__ import annotations

import hashlib
import json
import os
import secrets
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Mapping

from .casebase import CaseBase, MovieRecord
from .orders import TriageLists, ValidationError

DATA_DIR_ENV = "DIVA_DATA_DIR"

ACCOUNTS_FILE = "accounts.jsonl"
CATALOG_FILE = "catalog.jsonl"
CASEBASE_FILE = "casebase.jsonl"
META_FILE = "meta.json"

_SCRYPT = {"n": 2 ** 14, "r": 8, "p": 1, "dklen": 32}


class StoreError(Exception):
    pass


class DuplicateLoginError(StoreError):
    pass


class UnknownLoginError(StoreError):
    pass


class LoadError(StoreError):
    """A persisted record could not be parsed; names the file and line."""


def hash_password(password: str, salt: bytes) -> str:
    return hashlib.scrypt(password.encode("utf-8"), salt=salt, **_SCRYPT).hex()


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass
class Account:
    login: str
    salt: str
    digest: str
    triage: TriageLists
    created: str
    updated: str

    def check_password(self, password: str) -> bool:
        return secrets.compare_digest(self.digest, hash_password(password, bytes.fromhex(self.salt)))

    def to_record(self) -> dict:
        return {
            "login": self.login,
            "salt": self.salt,
            "digest": self.digest,
            "triage": {
                "like": sorted(self.triage.like),
                "ok": sorted(self.triage.ok),
                "dislike": sorted(self.triage.dislike),
            },
            "created": self.created,
            "updated": self.updated,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "Account":
        triage = TriageLists(
            frozenset(rec["triage"]["like"]),
            frozenset(rec["triage"]["ok"]),
            frozenset(rec["triage"]["dislike"]),
        )
        return cls(rec["login"], rec["salt"], rec["digest"], triage,
                   rec["created"], rec["updated"])


class Store:
    """In-memory view of the data directory; callers persist explicitly."""

    def __init__(self, accounts: Mapping[str, Account] | None = None,
                 catalog: Iterable[MovieRecord] = (),
                 casebase: CaseBase | None = None,
                 seed: int = 0):
        self.accounts: dict[str, Account] = dict(accounts or {})
        self.catalog: list[MovieRecord] = list(catalog)
        self.casebase: CaseBase = casebase if casebase is not None else CaseBase({})
        self.seed = seed

    # -- account operations ------------------------------------------------

    def register(self, login: str, password: str, triage: TriageLists,
                 now: str | None = None) -> tuple[Account, str | None]:
        """Create an account; returns (account, quality_warning_or_None).

        Sparse triage (any list under 5 items) is allowed but flagged, since
        early recommendations will be unreliable.
        """
        if not login:
            raise ValidationError("login must be non-empty")
        if login in self.accounts:
            raise DuplicateLoginError(f"login {login!r} already registered")
        salt = secrets.token_bytes(16)
        stamp = now or _now()
        account = Account(login, salt.hex(), hash_password(password, salt), triage, stamp, stamp)
        self.accounts[login] = account
        warning = None
        if min(len(triage.like), len(triage.ok), len(triage.dislike)) < 5:
            warning = ("recommendations may be unreliable until each triage list "
                       "has about 5 movies")
        return account, warning

    def authenticate(self, login: str, password: str) -> bool:
        account = self.accounts.get(login)
        return account is not None and account.check_password(password)

    def update_triage(self, login: str, triage: TriageLists, now: str | None = None) -> Account:
        if login not in self.accounts:
            raise UnknownLoginError(f"no such login {login!r}")
        account = self.accounts[login]
        account.triage = triage
        account.updated = now or _now()
        return account

    # -- persistence ---------------------------------------------------------

    def save(self, data_dir: str | Path) -> None:
        data_dir = Path(data_dir)
        data_dir.mkdir(parents=True, exist_ok=True)
        _write_jsonl(data_dir / ACCOUNTS_FILE,
                     (self.accounts[k].to_record() for k in sorted(self.accounts)))
        _write_jsonl(data_dir / CATALOG_FILE, (_movie_record(m) for m in self.catalog))
        _write_jsonl(data_dir / CASEBASE_FILE,
                     ({"user": u, "ratings": dict(sorted(self.casebase.raw_ratings[u].items()))}
                      for u in sorted(self.casebase.raw_ratings)))
        with open(data_dir / META_FILE, "w", encoding="utf-8") as handle:
            json.dump({"seed": self.seed}, handle, sort_keys=True)
            handle.write("\n")

    @classmethod
    def load(cls, data_dir: str | Path) -> "Store":
        data_dir = Path(data_dir)
        accounts = {}
        for rec in _read_jsonl(data_dir / ACCOUNTS_FILE):
            account = Account.from_record(rec)
            accounts[account.login] = account
        catalog = [_movie_from_record(rec) for rec in _read_jsonl(data_dir / CATALOG_FILE)]
        ratings = {rec["user"]: {i: float(v) for i, v in rec["ratings"].items()}
                   for rec in _read_jsonl(data_dir / CASEBASE_FILE)}
        seed = 0
        meta_path = data_dir / META_FILE
        if meta_path.exists():
            with open(meta_path, encoding="utf-8") as handle:
                seed = int(json.load(handle).get("seed", 0))
        return cls(accounts, catalog, CaseBase(ratings), seed)


def resolve_data_dir(option: str | None) -> Path:
    """CLI --data-dir beats the DIVA_DATA_DIR environment variable beats ./diva-data."""
    if option:
        return Path(option)
    env = os.environ.get(DATA_DIR_ENV)
    return Path(env) if env else Path("diva-data")


def _movie_record(m: MovieRecord) -> dict:
    return {
        "id": m.id, "title": m.title, "director": m.director,
        "actors": list(m.actors), "genres": list(m.genres),
        "star_rating": m.star_rating, "mpaa": m.mpaa, "country": m.country,
        "runtime_minutes": m.runtime_minutes, "year": m.year,
    }


def _movie_from_record(rec: dict) -> MovieRecord:
    return MovieRecord(
        id=rec["id"], title=rec["title"], director=rec["director"],
        actors=tuple(rec["actors"]), genres=tuple(rec["genres"]),
        star_rating=float(rec["star_rating"]), mpaa=rec["mpaa"], country=rec["country"],
        runtime_minutes=int(rec["runtime_minutes"]), year=int(rec["year"]),
    )


def _write_jsonl(path: Path, records: Iterable[dict]) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for rec in records:
            handle.write(json.dumps(rec, sort_keys=True, ensure_ascii=False))
            handle.write("\n")


def _read_jsonl(path: Path) -> list[dict]:
    if not path.exists():
        return []
    records = []
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                records.append(json.loads(line))
            except (json.JSONDecodeError, ValueError) as err:
                raise LoadError(f"{path.name} line {line_no}: {err}") from err
    return records
