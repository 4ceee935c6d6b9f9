import pytest
from fastapi.testclient import TestClient

from cloudide.errors import STATUS_BY_CODE, ToolchainMissing
from cloudide.service import MAX_BODY_BYTES, create_app

from conftest import build_config

HELLO_C = b'#include <stdio.h>\nint main(void){printf("ok\\n");return 0;}\n'


def make_client(tmp_path, java_stub, **overrides) -> TestClient:
    cfg = build_config(tmp_path / "data", java_stub, **overrides)
    return TestClient(create_app(cfg), raise_server_exceptions=False)


def signup(client, username="ada", password="longenough") -> str:
    resp = client.post("/api/register", json={
        "username": username, "email": "%s@example.org" % username,
        "password": password})
    assert resp.status_code == 200, resp.text
    resp = client.post("/api/login", json={"username": username,
                                           "password": password})
    assert resp.status_code == 200, resp.text
    return resp.json()["token"]


def auth(token) -> dict:
    return {"Authorization": "Bearer %s" % token}


# ----- liveness and pages ----------------------------------------------------

def test_healthz_needs_no_auth(client):
    resp = client.get("/healthz")
    assert resp.status_code == 200
    assert resp.json() == {"status": "ok"}


def test_help_page_is_html(client):
    resp = client.get("/help")
    assert resp.status_code == 200
    assert "text/html" in resp.headers["content-type"]
    assert "Run" in resp.text


def test_root_serves_a_page_without_static_dir(client):
    resp = client.get("/")
    assert resp.status_code == 200
    assert "text/html" in resp.headers["content-type"]


def test_root_serves_static_bundle_when_configured(tmp_path, java_stub):
    static = tmp_path / "static"
    static.mkdir()
    (static / "index.html").write_text("<!doctype html><p>bundled ui</p>")
    client = make_client(tmp_path, java_stub, static_dir=static)
    resp = client.get("/")
    assert resp.status_code == 200
    assert "bundled ui" in resp.text


# ----- auth plumbing ---------------------------------------------------------

def test_missing_token_is_401(client):
    for method, path in [("GET", "/api/fs/list"), ("GET", "/api/me"),
                         ("POST", "/api/logout"), ("GET", "/api/admin/stats")]:
        resp = client.request(method, path)
        assert resp.status_code == 401, path
        assert resp.json()["code"] == "UnknownSession"


def test_malformed_authorization_header_is_401(client):
    resp = client.get("/api/me", headers={"Authorization": "Basic abc"})
    assert resp.status_code == 401
    resp = client.get("/api/me", headers={"Authorization": "Bearer bogus"})
    assert resp.status_code == 401


def test_login_failure_is_401_with_uniform_body(client):
    signup(client)
    wrong_pw = client.post("/api/login", json={"username": "ada",
                                               "password": "nope-nope-nope"})
    no_user = client.post("/api/login", json={"username": "ghost",
                                              "password": "nope-nope-nope"})
    assert wrong_pw.status_code == no_user.status_code == 401
    assert wrong_pw.json() == no_user.json()


def test_logout_kills_the_session(client):
    token = signup(client)
    assert client.post("/api/logout", headers=auth(token)).status_code == 200
    assert client.get("/api/me", headers=auth(token)).status_code == 401


# ----- error mapping ---------------------------------------------------------

def test_duplicate_username_is_409(client):
    signup(client)
    resp = client.post("/api/register", json={
        "username": "ada", "email": "again@example.org",
        "password": "longenough"})
    assert resp.status_code == 409
    assert resp.json()["code"] == "DuplicateUsername"


def test_weak_password_is_400(client):
    resp = client.post("/api/register", json={
        "username": "bob", "email": "bob@example.org", "password": "short"})
    assert resp.status_code == 400
    assert resp.json()["code"] == "WeakPassword"


def test_traversal_is_400_path_rejected(client):
    token = signup(client)
    resp = client.get("/api/fs/list", params={"path": "../../etc"},
                      headers=auth(token))
    assert resp.status_code == 400
    assert resp.json()["code"] == "PathRejected"


def test_unknown_path_is_404(client):
    token = signup(client)
    resp = client.get("/api/fs/file", params={"path": "ghost.txt"},
                      headers=auth(token))
    assert resp.status_code == 404
    assert resp.json()["code"] == "UnknownPath"


def test_unsupported_extension_is_400(client):
    token = signup(client)
    client.post("/api/fs/entry", json={"path": "s.py", "kind": "file"},
                headers=auth(token))
    resp = client.post("/api/run", json={"path": "s.py"}, headers=auth(token))
    assert resp.status_code == 400
    assert resp.json()["code"] == "UnsupportedExtension"


def test_validation_error_is_400_invalid_request(client):
    resp = client.post("/api/register", json={"username": "x"})
    assert resp.status_code == 400
    assert resp.json()["code"] == "InvalidRequest"


def test_admin_routes_are_403_for_users(client):
    token = signup(client)
    for method, path in [("GET", "/api/admin/stats"),
                         ("GET", "/api/admin/users"),
                         ("GET", "/api/admin/fs/u-x/list")]:
        resp = client.request(method, path, headers=auth(token))
        assert resp.status_code == 403, path
        assert resp.json()["code"] == "Forbidden"


def test_admin_browse_unknown_user_is_404(client):
    admin = client.post("/api/login", json={
        "username": "admin", "password": "change-me-now"}).json()["token"]
    resp = client.get("/api/admin/fs/u-nope/list", headers=auth(admin))
    assert resp.status_code == 404
    assert resp.json()["code"] == "UnknownUser"


def test_quota_exhaustion_is_413(tmp_path, java_stub):
    client = make_client(tmp_path, java_stub, default_storage_limit_bytes=1000)
    token = signup(client)
    client.post("/api/fs/entry", json={"path": "big.dat", "kind": "file"},
                headers=auth(token))
    resp = client.put("/api/fs/file", params={"path": "big.dat"},
                      content=b"x" * 1001, headers=auth(token))
    assert resp.status_code == 413
    assert resp.json()["code"] == "QuotaExceeded"
    read = client.get("/api/fs/file", params={"path": "big.dat"},
                      headers=auth(token))
    assert read.content == b""  # failed write changed nothing


def test_oversize_body_is_413(client):
    token = signup(client)
    client.post("/api/fs/entry", json={"path": "big.dat", "kind": "file"},
                headers=auth(token))
    resp = client.put("/api/fs/file", params={"path": "big.dat"},
                      content=b"x" * (MAX_BODY_BYTES + 1), headers=auth(token))
    assert resp.status_code == 413
    assert resp.json()["code"] == "RequestTooLarge"


def test_compile_freeze_is_429(tmp_path, java_stub):
    client = make_client(tmp_path, java_stub, max_compiles=0)
    token = signup(client)
    client.post("/api/fs/entry", json={"path": "a.c", "kind": "file"},
                headers=auth(token))
    client.put("/api/fs/file", params={"path": "a.c"}, content=HELLO_C,
               headers=auth(token))
    resp = client.post("/api/run", json={"path": "a.c"}, headers=auth(token))
    assert resp.status_code == 429
    assert resp.json()["code"] == "LimitReached"


def test_status_table_is_total():
    for code, status in STATUS_BY_CODE.items():
        assert 400 <= status <= 599, code


# ----- workspace over HTTP ---------------------------------------------------

def test_file_roundtrip_preserves_bytes(client):
    token = signup(client)
    payload = bytes(range(256)) * 3 + b"\x00\xff\x00"
    client.post("/api/fs/entry", json={"path": "blob.bin", "kind": "file"},
                headers=auth(token))
    wrote = client.put("/api/fs/file", params={"path": "blob.bin"},
                       content=payload, headers=auth(token))
    assert wrote.status_code == 200
    assert wrote.json()["size_bytes"] == len(payload)
    read = client.get("/api/fs/file", params={"path": "blob.bin"},
                      headers=auth(token))
    assert read.content == payload


def test_listing_rename_delete_flow(client):
    token = signup(client)
    client.post("/api/fs/entry", json={"path": "dir", "kind": "folder"},
                headers=auth(token))
    client.post("/api/fs/entry", json={"path": "dir/a.txt", "kind": "file"},
                headers=auth(token))
    listing = client.get("/api/fs/list", params={"path": "dir"},
                         headers=auth(token)).json()
    assert [e["path"] for e in listing["entries"]] == ["dir/a.txt"]

    renamed = client.put("/api/fs/rename",
                         json={"path": "dir/a.txt", "new_path": "dir/b.txt"},
                         headers=auth(token))
    assert renamed.status_code == 200
    assert renamed.json()["path"] == "dir/b.txt"

    assert client.request("DELETE", "/api/fs/entry", params={"path": "dir"},
                          headers=auth(token)).status_code == 200
    root = client.get("/api/fs/list", headers=auth(token)).json()
    assert root["entries"] == []


def test_download_sets_disposition(client):
    token = signup(client)
    client.post("/api/fs/entry", json={"path": "r.txt", "kind": "file"},
                headers=auth(token))
    client.put("/api/fs/file", params={"path": "r.txt"}, content=b"data",
               headers=auth(token))
    resp = client.get("/api/fs/download", params={"path": "r.txt"},
                      headers=auth(token))
    assert resp.status_code == 200
    assert resp.content == b"data"
    assert "attachment" in resp.headers["content-disposition"]
    assert "r.txt" in resp.headers["content-disposition"]


def test_workspaces_are_isolated_per_user(client):
    ada = signup(client, "ada")
    bob = signup(client, "bob")
    client.post("/api/fs/entry", json={"path": "secret.txt", "kind": "file"},
                headers=auth(ada))
    listing = client.get("/api/fs/list", headers=auth(bob)).json()
    assert listing["entries"] == []
    resp = client.get("/api/fs/file", params={"path": "secret.txt"},
                      headers=auth(bob))
    assert resp.status_code == 404


# ----- run / build over HTTP -------------------------------------------------

def test_run_c_source(client):
    token = signup(client)
    client.post("/api/fs/entry", json={"path": "ok.c", "kind": "file"},
                headers=auth(token))
    client.put("/api/fs/file", params={"path": "ok.c"}, content=HELLO_C,
               headers=auth(token))
    resp = client.post("/api/run", json={"path": "ok.c"}, headers=auth(token))
    assert resp.status_code == 200
    body = resp.json()
    assert body["compile_ok"] and body["exit_status"] == 0
    assert body["stdout"] == "ok\n"


def test_build_c_source(client):
    token = signup(client)
    client.post("/api/fs/entry", json={"path": "ok.c", "kind": "file"},
                headers=auth(token))
    client.put("/api/fs/file", params={"path": "ok.c"}, content=HELLO_C,
               headers=auth(token))
    resp = client.post("/api/build", json={"path": "ok.c"}, headers=auth(token))
    assert resp.status_code == 200
    assert resp.json()["artifact_rel_path"] == "ok"
    listing = client.get("/api/fs/list", headers=auth(token)).json()
    assert {e["path"] for e in listing["entries"]} == {"ok", "ok.c"}


# ----- admin over HTTP -------------------------------------------------------

def _admin_token(client) -> str:
    resp = client.post("/api/login", json={"username": "admin",
                                           "password": "change-me-now"})
    assert resp.status_code == 200
    return resp.json()["token"]


def test_admin_stats_and_limits_roundtrip(client):
    admin = _admin_token(client)
    stats = client.get("/api/admin/stats", headers=auth(admin)).json()
    assert stats["registered_users"] >= 1
    resp = client.put("/api/admin/limits", headers=auth(admin),
                      json={"max_total_disk_bytes": 123456, "max_compiles": 9})
    assert resp.status_code == 200
    stats = client.get("/api/admin/stats", headers=auth(admin)).json()
    assert stats["max_total_disk_bytes"] == 123456
    assert stats["max_compiles"] == 9


def test_admin_invalid_limits_are_400(client):
    admin = _admin_token(client)
    resp = client.put("/api/admin/limits", headers=auth(admin),
                      json={"max_total_disk_bytes": 0, "max_compiles": 5})
    assert resp.status_code == 400
    assert resp.json()["code"] == "InvalidLimit"


def test_admin_user_listing_and_update(client):
    token = signup(client)
    me = client.get("/api/me", headers=auth(token)).json()
    admin = _admin_token(client)

    users = client.get("/api/admin/users", headers=auth(admin)).json()["users"]
    ada = next(u for u in users if u["id"] == me["id"])
    assert ada["status"] == "online"
    assert "used_bytes" in ada

    resp = client.put("/api/admin/users/%s" % me["id"], headers=auth(admin),
                      json={"storage_limit_bytes": 2048})
    assert resp.status_code == 200
    users = client.get("/api/admin/users", headers=auth(admin)).json()["users"]
    ada = next(u for u in users if u["id"] == me["id"])
    assert ada["storage_limit_bytes"] == 2048

    # and the new quota bites immediately
    client.post("/api/fs/entry", json={"path": "b.dat", "kind": "file"},
                headers=auth(token))
    resp = client.put("/api/fs/file", params={"path": "b.dat"},
                      content=b"x" * 3000, headers=auth(token))
    assert resp.status_code == 413


def test_admin_browse_is_read_only_view_of_user_space(client):
    token = signup(client)
    me = client.get("/api/me", headers=auth(token)).json()
    client.post("/api/fs/entry", json={"path": "w", "kind": "folder"},
                headers=auth(token))
    admin = _admin_token(client)
    resp = client.get("/api/admin/fs/%s/list" % me["id"], headers=auth(admin))
    assert resp.status_code == 200
    assert [e["path"] for e in resp.json()["entries"]] == ["w"]


# ----- startup contract ------------------------------------------------------

def test_startup_refuses_broken_toolchain(tmp_path, java_stub):
    cfg = build_config(tmp_path / "data", java_stub)
    cfg.toolchains["c"] = {"compile": ["no-such-cc", "{src}", "-o", "{out}"],
                           "run": ["{out}"], "probe": ["no-such-cc", "--version"]}
    with pytest.raises(ToolchainMissing):
        create_app(cfg)


def test_startup_probe_can_be_skipped_for_tooling(tmp_path, java_stub):
    cfg = build_config(tmp_path / "data", java_stub)
    cfg.toolchains["c"] = {"compile": ["no-such-cc", "{src}", "-o", "{out}"],
                           "run": ["{out}"], "probe": ["no-such-cc", "--version"]}
    app = create_app(cfg, validate_toolchains=False)
    with TestClient(app) as tc:
        assert tc.get("/healthz").status_code == 200
