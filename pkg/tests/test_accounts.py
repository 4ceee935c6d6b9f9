import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cloudide.accounts import AccountsService, hash_password, verify_password
from cloudide.errors import (
    AuthFailed, DuplicateUsername, Forbidden, InvalidEmail, InvalidLimit,
    InvalidRequest, UnknownSession, UnknownUser, WeakPassword,
)
from cloudide.store import Store


class FakeClock:
    def __init__(self, start: float = 1_000_000.0):
        self.value = start

    def __call__(self) -> float:
        return self.value

    def advance(self, seconds: float) -> None:
        self.value += seconds


@pytest.fixture()
def clock():
    return FakeClock()


@pytest.fixture()
def accounts(tmp_path, clock):
    store = Store(tmp_path / "t.db", now=clock)
    svc = AccountsService(store, default_storage_limit=10 * 1024 * 1024,
                          session_ttl=3600)
    svc.ensure_bootstrap_admin("admin", "admin@localhost", "rootpw-123")
    yield svc
    store.close()


# ----- password hashing -----------------------------------------------------

def test_hash_roundtrip_and_salt_uniqueness():
    a = hash_password("hunter22")
    b = hash_password("hunter22")
    assert a != b  # per-user salt
    assert verify_password("hunter22", a)
    assert verify_password("hunter22", b)
    assert not verify_password("hunter23", a)


def test_hash_format_is_self_describing():
    digest = hash_password("hunter22")
    scheme, n, r, p, salt, key = digest.split("$")
    assert scheme == "scrypt"
    assert int(n) >= 16384 and int(r) >= 1 and int(p) >= 1
    assert len(bytes.fromhex(salt)) == 16
    assert len(bytes.fromhex(key)) == 64


@settings(max_examples=25, deadline=None)
@given(st.text(min_size=8, max_size=40))
def test_hash_verify_property(password):
    digest = hash_password(password)
    assert verify_password(password, digest)
    assert not verify_password(password + "x", digest)


# ----- registration ---------------------------------------------------------

def test_register_creates_user_without_session(accounts):
    user_id = accounts.register("ada", "ada@example.org", "longenough")
    user = accounts.get_user(user_id)
    assert user.username == "ada"
    assert user.role == "user"
    assert user.storage_limit_bytes == 10 * 1024 * 1024
    assert accounts.live_session_count(user_id) == 0


def test_register_rejects_weak_password(accounts):
    with pytest.raises(WeakPassword):
        accounts.register("ada", "ada@example.org", "short")


def test_register_rejects_bad_email(accounts):
    for email in ["", "nope", "a b@c.d", "a@", "@c.d"]:
        with pytest.raises(InvalidEmail):
            accounts.register("ada", email, "longenough")


def test_register_rejects_empty_username(accounts):
    with pytest.raises(InvalidRequest):
        accounts.register("", "ada@example.org", "longenough")


def test_register_rejects_duplicate_username(accounts):
    accounts.register("ada", "ada@example.org", "longenough")
    with pytest.raises(DuplicateUsername):
        accounts.register("ada", "other@example.org", "longenough")


# ----- login / sessions -----------------------------------------------------

def test_login_yields_distinct_tokens(accounts):
    accounts.register("ada", "ada@example.org", "longenough")
    t1, u1 = accounts.login("ada", "longenough")
    t2, _ = accounts.login("ada", "longenough")
    assert t1 != t2
    assert u1.username == "ada"
    assert accounts.live_session_count(u1.id) == 2


def test_login_failure_is_uniform(accounts):
    accounts.register("ada", "ada@example.org", "longenough")
    with pytest.raises(AuthFailed) as wrong_pw:
        accounts.login("ada", "wrong-password")
    with pytest.raises(AuthFailed) as no_user:
        accounts.login("nobody", "wrong-password")
    # same code and message: username probing learns nothing
    assert wrong_pw.value.code == no_user.value.code
    assert str(wrong_pw.value) == str(no_user.value)


def test_resolve_session_and_logout(accounts):
    accounts.register("ada", "ada@example.org", "longenough")
    token, user = accounts.login("ada", "longenough")
    assert accounts.resolve_session(token).id == user.id
    accounts.logout(token)
    with pytest.raises(UnknownSession):
        accounts.resolve_session(token)
    with pytest.raises(UnknownSession):
        accounts.logout(token)


def test_session_idle_expiry(accounts, clock):
    accounts.register("ada", "ada@example.org", "longenough")
    token, _ = accounts.login("ada", "longenough")
    clock.advance(3599)
    accounts.resolve_session(token)  # activity refreshes the window
    clock.advance(3599)
    accounts.resolve_session(token)
    clock.advance(3601)
    with pytest.raises(UnknownSession):
        accounts.resolve_session(token)


def test_expired_token_looks_like_unknown_token(accounts, clock):
    accounts.register("ada", "ada@example.org", "longenough")
    token, _ = accounts.login("ada", "longenough")
    clock.advance(4000)
    with pytest.raises(UnknownSession) as expired:
        accounts.resolve_session(token)
    with pytest.raises(UnknownSession) as unknown:
        accounts.resolve_session("no-such-token")
    assert str(expired.value) == str(unknown.value)


# ----- password update ------------------------------------------------------

def test_update_password(accounts):
    accounts.register("ada", "ada@example.org", "longenough")
    token, _ = accounts.login("ada", "longenough")
    accounts.update_password(token, "longenough", "evenlonger")
    with pytest.raises(AuthFailed):
        accounts.login("ada", "longenough")
    accounts.login("ada", "evenlonger")


def test_update_password_checks_old_and_strength(accounts):
    accounts.register("ada", "ada@example.org", "longenough")
    token, _ = accounts.login("ada", "longenough")
    with pytest.raises(AuthFailed):
        accounts.update_password(token, "not-the-old-one", "evenlonger")
    with pytest.raises(WeakPassword):
        accounts.update_password(token, "longenough", "tiny")
    accounts.login("ada", "longenough")  # unchanged after both failures


# ----- admin user management ------------------------------------------------

def _admin_token(accounts) -> str:
    token, _ = accounts.login("admin", "rootpw-123")
    return token


def test_bootstrap_admin_only_once(accounts):
    accounts.ensure_bootstrap_admin("admin2", "a2@localhost", "otherpw-123")
    with pytest.raises(AuthFailed):
        accounts.login("admin2", "otherpw-123")


def test_list_users_requires_admin(accounts):
    accounts.register("ada", "ada@example.org", "longenough")
    token, _ = accounts.login("ada", "longenough")
    with pytest.raises(Forbidden):
        accounts.list_users(token)


def test_list_users_online_flag_tracks_live_sessions(accounts):
    uid = accounts.register("ada", "ada@example.org", "longenough")
    admin = _admin_token(accounts)

    by_id = {u.id: u for u in accounts.list_users(admin)}
    assert by_id[uid].status == "offline"

    token, _ = accounts.login("ada", "longenough")
    by_id = {u.id: u for u in accounts.list_users(admin)}
    assert by_id[uid].status == "online"

    accounts.logout(token)
    by_id = {u.id: u for u in accounts.list_users(admin)}
    assert by_id[uid].status == "offline"


def test_update_user_fields(accounts):
    uid = accounts.register("ada", "ada@example.org", "longenough")
    admin = _admin_token(accounts)
    accounts.update_user(admin, uid, email="new@example.org",
                         storage_limit_bytes=5 * 1024 * 1024)
    user = accounts.get_user(uid)
    assert user.email == "new@example.org"
    assert user.storage_limit_bytes == 5 * 1024 * 1024
    # untouched fields survive a partial update
    accounts.update_user(admin, uid, role="admin")
    user = accounts.get_user(uid)
    assert user.email == "new@example.org"
    assert user.role == "admin"


def test_update_user_validation(accounts):
    uid = accounts.register("ada", "ada@example.org", "longenough")
    admin = _admin_token(accounts)
    with pytest.raises(InvalidLimit):
        accounts.update_user(admin, uid, storage_limit_bytes=0)
    with pytest.raises(InvalidLimit):
        accounts.update_user(admin, uid, storage_limit_bytes=-5)
    with pytest.raises(InvalidRequest):
        accounts.update_user(admin, uid, role="superuser")
    with pytest.raises(InvalidEmail):
        accounts.update_user(admin, uid, email="not-an-email")
    with pytest.raises(UnknownUser):
        accounts.update_user(admin, "u-does-not-exist", email="x@y.z")


def test_cannot_demote_the_only_admin(accounts):
    admin = _admin_token(accounts)
    admin_user = accounts.resolve_session(admin)
    with pytest.raises(Forbidden):
        accounts.update_user(admin, admin_user.id, role="user")


def test_demotion_allowed_once_another_admin_exists(accounts):
    uid = accounts.register("ada", "ada@example.org", "longenough")
    admin = _admin_token(accounts)
    admin_user = accounts.resolve_session(admin)
    accounts.update_user(admin, uid, role="admin")
    accounts.update_user(admin, admin_user.id, role="user")
    assert accounts.get_user(admin_user.id).role == "user"


def test_update_user_requires_admin(accounts):
    uid = accounts.register("ada", "ada@example.org", "longenough")
    token, _ = accounts.login("ada", "longenough")
    with pytest.raises(Forbidden):
        accounts.update_user(token, uid, email="x@y.z")


def test_counts(accounts):
    assert accounts.count_registered_users() == 1  # bootstrap admin
    accounts.register("ada", "ada@example.org", "longenough")
    accounts.register("bob", "bob@example.org", "longenough")
    assert accounts.count_registered_users() == 3
    assert accounts.count_active_users() == 0
    accounts.login("ada", "longenough")
    accounts.login("ada", "longenough")  # two sessions, one user
    assert accounts.count_active_users() == 1
