import numpy as np
import pytest
from fastapi.testclient import TestClient

from diva.evaluation import synth_casebase
from diva.sampling import SamplerConfig
from diva.service import create_app
from diva.store import Store
from diva.synthmovies import synth_catalog


def build_store(tmp_path=None, users=25, movies=50, seed=6):
    cb, _ = synth_casebase(users, movies, 3, 0.5, np.random.default_rng(np.random.SeedSequence(seed)))
    catalog = synth_catalog(movies, np.random.default_rng(np.random.SeedSequence((seed, 1))))
    store = Store(catalog=catalog, casebase=cb, seed=21)
    if tmp_path is not None:
        store.save(tmp_path)
    return store


@pytest.fixture(scope="module")
def store():
    return build_store()


@pytest.fixture()
def client(store):
    app = create_app(store, sampler=SamplerConfig(num_extensions=8, num_iterations=40))
    with TestClient(app) as c:
        yield c
    # module-scoped store: forget accounts created by each test
    store.accounts.clear()


def catalog_ids(client, k):
    movies = client.get("/api/movies", params={"limit": 1000}).json()["movies"]
    return [m["id"] for m in movies][:k]


def register_and_login(client, login="pat", sizes=(5, 5, 5)):
    ids = catalog_ids(client, sum(sizes))
    triage = {
        "like": ids[:sizes[0]],
        "ok": ids[sizes[0]:sizes[0] + sizes[1]],
        "dislike": ids[sizes[0] + sizes[1]:],
    }
    r = client.post("/api/users", json={"login": login, "password": "pw", "triage": triage})
    assert r.status_code == 201, r.text
    token = client.post("/api/login", json={"login": login, "password": "pw"}).json()["token"]
    return {"Authorization": f"Bearer {token}"}, triage


class TestRegistration:
    def test_full_triage_no_warning(self, client):
        _, triage = register_and_login(client)
        assert triage["like"]

    def test_duplicate_login_conflict(self, client):
        register_and_login(client, "dup")
        ids = catalog_ids(client, 3)
        r = client.post("/api/users", json={"login": "dup", "password": "x",
                                            "triage": {"like": ids, "ok": [], "dislike": []}})
        assert r.status_code == 409
        assert r.json()["code"] == "duplicate_login"

    def test_sparse_triage_warns_but_creates(self, client):
        ids = catalog_ids(client, 12)
        r = client.post("/api/users", json={
            "login": "thin", "password": "x",
            "triage": {"like": ids[:4], "ok": ids[4:9], "dislike": ids[9:]}})
        assert r.status_code == 201
        assert "unreliable" in r.json()["warning"]

    def test_overlapping_triage_rejected(self, client):
        ids = catalog_ids(client, 4)
        r = client.post("/api/users", json={
            "login": "bad", "password": "x",
            "triage": {"like": ids[:2], "ok": ids[1:3], "dislike": []}})
        assert r.status_code == 422

    def test_unknown_movie_rejected(self, client):
        r = client.post("/api/users", json={
            "login": "bad2", "password": "x",
            "triage": {"like": ["nope"], "ok": [], "dislike": []}})
        assert r.status_code == 422
        assert r.json()["code"] == "unknown_movie"


class TestAuth:
    def test_endpoints_require_token(self, client):
        assert client.post("/api/search", json={}).status_code == 401
        assert client.post("/api/search/zz/feedback", json={}).status_code == 401
        assert client.post("/api/search/zz/continue").status_code == 401
        assert client.post("/api/search/zz/close").status_code == 401
        assert client.put("/api/users/any/triage", json={}).status_code == 401

    def test_catalog_and_register_open(self, client):
        assert client.get("/api/movies").status_code == 200

    def test_bad_credentials(self, client):
        register_and_login(client, "pat2")
        r = client.post("/api/login", json={"login": "pat2", "password": "nope"})
        assert r.status_code == 401

    def test_cannot_edit_other_triage(self, client):
        hdr, triage = register_and_login(client, "owner")
        register_and_login(client, "other")
        r = client.put("/api/users/other/triage", json=triage, headers=hdr)
        assert r.status_code == 403
        assert client.get("/api/users/other/triage", headers=hdr).status_code == 403

    def test_triage_readback(self, client):
        hdr, triage = register_and_login(client, "reader")
        got = client.get("/api/users/reader/triage", headers=hdr).json()
        assert got == {k: sorted(v) for k, v in triage.items()}


class TestSearch:
    def test_search_returns_list_and_session(self, client):
        hdr, _ = register_and_login(client)
        r = client.post("/api/search", json={"n": 5}, headers=hdr)
        assert r.status_code == 200
        body = r.json()
        assert len(body["movies"]) == 5
        assert body["session_id"]
        assert body["degraded"] is False

    def test_default_page_size_is_ten(self, client):
        hdr, _ = register_and_login(client)
        body = client.post("/api/search", json={}, headers=hdr).json()
        assert len(body["movies"]) == 10

    def test_genre_constraint_respected(self, client):
        hdr, _ = register_and_login(client)
        body = client.post("/api/search", headers=hdr, json={
            "constraints": {"genres": ["crime"]}, "n": 4}).json()
        if not body["relaxed"]:
            assert all("crime" in m["genres"] for m in body["movies"])

    def test_empty_triage_guidance(self, client):
        r = client.post("/api/users", json={"login": "empty", "password": "x",
                                            "triage": {"like": [], "ok": [], "dislike": []}})
        assert r.status_code == 201
        token = client.post("/api/login", json={"login": "empty", "password": "x"}).json()["token"]
        r = client.post("/api/search", json={}, headers={"Authorization": f"Bearer {token}"})
        assert r.status_code == 400
        assert r.json()["code"] == "empty_triage"

    def test_first_search_reproducible_across_instances(self, store):
        results = []
        for _ in range(2):
            app = create_app(store, sampler=SamplerConfig(num_extensions=8, num_iterations=40))
            with TestClient(app) as client:
                hdr, _ = register_and_login(client, "rep")
                body = client.post("/api/search", json={"n": 6}, headers=hdr).json()
                results.append([m["id"] for m in body["movies"]])
            store.accounts.clear()
        assert results[0] == results[1]


class TestFeedbackLoop:
    def test_feedback_validations(self, client):
        hdr, _ = register_and_login(client)
        sid = client.post("/api/search", json={"n": 3}, headers=hdr).json()["session_id"]
        r = client.post(f"/api/search/{sid}/feedback", headers=hdr,
                        json={"items": [{"item": "not-shown", "tag": "near_miss"}]})
        assert r.status_code == 422
        r = client.post("/api/search/nosuch/feedback", headers=hdr, json={"items": []})
        assert r.status_code == 404

    def test_longterm_persists_shortterm_does_not(self, client, store):
        hdr, triage = register_and_login(client)
        body = client.post("/api/search", json={"n": 4}, headers=hdr).json()
        sid = body["session_id"]
        shown = [m["id"] for m in body["movies"]]
        r = client.post(f"/api/search/{sid}/feedback", headers=hdr, json={"items": [
            {"item": shown[0], "verdict": "seen_liked"},
            {"item": shown[1], "tag": "near_miss"},
            {"item": shown[2], "tag": "not_even_close"},
        ]})
        assert r.status_code == 200
        stored = store.accounts["pat"].triage
        assert shown[0] in stored.like
        assert shown[1] not in stored.items() or shown[1] in set(triage["like"] + triage["ok"] + triage["dislike"])
        client.post(f"/api/search/{sid}/close", headers=hdr)
        # tags evaporated with the session; the verdict survived
        assert shown[0] in store.accounts["pat"].triage.like

    def test_continue_never_repeats(self, client):
        hdr, _ = register_and_login(client)
        body = client.post("/api/search", json={"n": 4}, headers=hdr).json()
        sid = body["session_id"]
        first = {m["id"] for m in body["movies"]}
        second_body = client.post(f"/api/search/{sid}/continue", headers=hdr).json()
        second = {m["id"] for m in second_body["movies"]}
        assert first & second == set()
        assert second  # next block is non-empty on this catalog

    def test_continue_after_tags_still_consistent(self, client):
        hdr, _ = register_and_login(client)
        body = client.post("/api/search", json={"n": 4}, headers=hdr).json()
        sid = body["session_id"]
        shown = [m["id"] for m in body["movies"]]
        client.post(f"/api/search/{sid}/feedback", headers=hdr, json={"items": [
            {"item": shown[0], "tag": "near_miss"},
            {"item": shown[1], "tag": "not_even_close"},
        ]})
        nxt = client.post(f"/api/search/{sid}/continue", headers=hdr).json()
        assert not ({m["id"] for m in nxt["movies"]} & set(shown))

    def test_new_search_closes_previous_session(self, client):
        hdr, _ = register_and_login(client)
        sid1 = client.post("/api/search", json={"n": 3}, headers=hdr).json()["session_id"]
        sid2 = client.post("/api/search", json={"n": 3}, headers=hdr).json()["session_id"]
        assert sid1 != sid2
        r = client.post(f"/api/search/{sid1}/continue", headers=hdr)
        assert r.status_code == 404

    def test_closed_session_rejects_continue(self, client):
        hdr, _ = register_and_login(client)
        sid = client.post("/api/search", json={"n": 3}, headers=hdr).json()["session_id"]
        client.post(f"/api/search/{sid}/close", headers=hdr)
        assert client.post(f"/api/search/{sid}/continue", headers=hdr).status_code == 404


class TestMoviesEndpoint:
    def test_title_prefix_filter(self, client):
        all_movies = client.get("/api/movies", params={"limit": 1000}).json()["movies"]
        prefix = all_movies[0]["title"][:3]
        filtered = client.get("/api/movies", params={"title_prefix": prefix}).json()["movies"]
        assert filtered
        assert all(m["title"].casefold().startswith(prefix.casefold()) for m in filtered)


class TestDegradedMode:
    def test_empty_casebase_falls_back_to_star_order(self, tmp_path):
        catalog = synth_catalog(30, np.random.default_rng(3))
        store = Store(catalog=catalog, seed=1)
        app = create_app(store)
        with TestClient(app) as client:
            hdr, _ = register_and_login(client, "solo")
            body = client.post("/api/search", json={"n": 6}, headers=hdr).json()
            assert body["degraded"] is True
            stars = [next(m2.star_rating for m2 in catalog if m2.id == m["id"])
                     for m in body["movies"]]
            assert stars == sorted(stars, reverse=True)


class TestPersistenceAcrossRestarts:
    def test_account_mutations_survive_reload(self, tmp_path):
        store = build_store(tmp_path)
        app = create_app(store, data_dir=tmp_path, sampler=SamplerConfig(8, 40))
        with TestClient(app) as client:
            hdr, _ = register_and_login(client, "keeper")
            body = client.post("/api/search", json={"n": 3}, headers=hdr).json()
            first = body["movies"][0]["id"]
            client.post(f"/api/search/{body['session_id']}/feedback", headers=hdr,
                        json={"items": [{"item": first, "verdict": "seen_liked"}]})
        reloaded = Store.load(tmp_path)
        assert first in reloaded.accounts["keeper"].triage.like
        assert reloaded.accounts["keeper"].check_password("pw")
