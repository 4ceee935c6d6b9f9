"""User registration, authentication, sessions, roles, and profile limits."""

from __future__ import annotations

import hashlib
import hmac
import re
import secrets
from dataclasses import dataclass

from .errors import (
    AuthFailed,
    DuplicateUsername,
    Forbidden,
    InvalidEmail,
    InvalidLimit,
    InvalidRequest,
    UnknownSession,
    UnknownUser,
    WeakPassword,
)
from .store import Store

MIN_PASSWORD_LENGTH = 8
_EMAIL_RE = re.compile(r"^[^@\s]+@[^@\s]+$")

# scrypt cost: 16 MiB memory, tens of ms per digest.
_SCRYPT_N, _SCRYPT_R, _SCRYPT_P = 16384, 8, 1


def hash_password(password: str) -> str:
    salt = secrets.token_bytes(16)
    digest = hashlib.scrypt(password.encode("utf-8"), salt=salt,
                            n=_SCRYPT_N, r=_SCRYPT_R, p=_SCRYPT_P)
    return "scrypt$%d$%d$%d$%s$%s" % (
        _SCRYPT_N, _SCRYPT_R, _SCRYPT_P, salt.hex(), digest.hex())


def verify_password(password: str, stored: str) -> bool:
    try:
        scheme, n, r, p, salt_hex, digest_hex = stored.split("$")
        if scheme != "scrypt":
            return False
        digest = hashlib.scrypt(password.encode("utf-8"), salt=bytes.fromhex(salt_hex),
                                n=int(n), r=int(r), p=int(p))
        return hmac.compare_digest(digest.hex(), digest_hex)
    except (ValueError, TypeError):
        return False


@dataclass
class User:
    id: str
    username: str
    email: str
    role: str
    storage_limit_bytes: int
    created_at: float

    @property
    def is_admin(self) -> bool:
        return self.role == "admin"


@dataclass
class UserSummary:
    id: str
    username: str
    email: str
    role: str
    storage_limit_bytes: int
    status: str  # "online" | "offline"


class AccountsService:
    """All account state lives in the shared store; methods are safe under
    concurrent request handling (uniqueness and admin-count checks happen
    inside single statements or under the store lock)."""

    def __init__(self, store: Store, default_storage_limit: int, session_ttl: int):
        self.store = store
        self.default_storage_limit = default_storage_limit
        self.session_ttl = session_ttl

    # -- bootstrap -------------------------------------------------------

    def ensure_bootstrap_admin(self, username: str, email: str, password: str) -> None:
        """Create the single admin account on first start; no-op afterwards."""
        with self.store.transaction() as conn:
            count = conn.execute("SELECT COUNT(*) AS c FROM users").fetchone()["c"]
            if count:
                return
            conn.execute(
                "INSERT INTO users (id, username, email, password_digest, role,"
                " storage_limit_bytes, created_at) VALUES (?, ?, ?, ?, 'admin', ?, ?)",
                (_new_user_id(), username, email, hash_password(password),
                 self.default_storage_limit, self.store.now()))

    # -- registration / login --------------------------------------------

    def register(self, username: str, email: str, password: str) -> str:
        """Create a user account. Returns the new user id; the caller still
        has to log in (registration never opens a session)."""
        if not username:
            raise InvalidRequest("username must be non-empty")
        if len(password) < MIN_PASSWORD_LENGTH:
            raise WeakPassword("password must be at least %d characters" % MIN_PASSWORD_LENGTH)
        if not _EMAIL_RE.match(email):
            raise InvalidEmail("email address is not well-formed")
        user_id = _new_user_id()
        try:
            self.store.execute(
                "INSERT INTO users (id, username, email, password_digest, role,"
                " storage_limit_bytes, created_at) VALUES (?, ?, ?, ?, 'user', ?, ?)",
                (user_id, username, email, hash_password(password),
                 self.default_storage_limit, self.store.now()))
        except Exception as exc:
            if "UNIQUE" in str(exc):
                raise DuplicateUsername("username is taken") from None
            raise
        return user_id

    def login(self, username: str, password: str) -> tuple[str, User]:
        """Verify credentials and open a fresh session.

        Unknown user and wrong password are indistinguishable on purpose.
        """
        row = self.store.query_one("SELECT * FROM users WHERE username = ?", (username,))
        if row is None or not verify_password(password, row["password_digest"]):
            raise AuthFailed("invalid credentials")
        token = secrets.token_urlsafe(32)
        now = self.store.now()
        self.store.execute(
            "INSERT INTO sessions (token, user_id, created_at, last_seen_at,"
            " idle_ttl_seconds) VALUES (?, ?, ?, ?, ?)",
            (token, row["id"], now, now, self.session_ttl))
        self.store.set_real_max("last_session_activity", now)
        return token, _user_from_row(row)

    def logout(self, token: str) -> None:
        self.resolve_session(token)  # raises UnknownSession unless live
        self.store.execute("DELETE FROM sessions WHERE token = ?", (token,))

    def resolve_session(self, token: str) -> User:
        """Authenticate a bearer token: resolve the live session, bump its
        last_seen_at, return the user. Expired tokens behave exactly like
        unknown ones."""
        now = self.store.now()
        with self.store.transaction() as conn:
            row = conn.execute(
                "SELECT s.*, u.id AS uid FROM sessions s JOIN users u ON u.id = s.user_id"
                " WHERE s.token = ?", (token,)).fetchone()
            if row is None:
                raise UnknownSession("invalid or expired session")
            if now - row["last_seen_at"] > row["idle_ttl_seconds"]:
                conn.execute("DELETE FROM sessions WHERE token = ?", (token,))
                raise UnknownSession("invalid or expired session")
            conn.execute("UPDATE sessions SET last_seen_at = ? WHERE token = ?", (now, token))
            user_row = conn.execute("SELECT * FROM users WHERE id = ?", (row["uid"],)).fetchone()
        self.store.set_real_max("last_session_activity", now)
        return _user_from_row(user_row)

    # -- account updates ---------------------------------------------------

    def update_password(self, token: str, old_password: str, new_password: str) -> None:
        user = self.resolve_session(token)
        row = self.store.query_one("SELECT password_digest FROM users WHERE id = ?", (user.id,))
        if not verify_password(old_password, row["password_digest"]):
            raise AuthFailed("old password does not match")
        if len(new_password) < MIN_PASSWORD_LENGTH:
            raise WeakPassword("password must be at least %d characters" % MIN_PASSWORD_LENGTH)
        self.store.execute("UPDATE users SET password_digest = ? WHERE id = ?",
                           (hash_password(new_password), user.id))

    # -- admin surface -------------------------------------------------------

    def require_admin(self, token: str) -> User:
        user = self.resolve_session(token)
        if not user.is_admin:
            raise Forbidden("administrator role required")
        return user

    def list_users(self, admin_token: str) -> list[UserSummary]:
        self.require_admin(admin_token)
        now = self.store.now()
        rows = self.store.query(
            "SELECT u.*, EXISTS(SELECT 1 FROM sessions s WHERE s.user_id = u.id"
            "  AND ? - s.last_seen_at <= s.idle_ttl_seconds) AS online "
            "FROM users u ORDER BY u.created_at", (now,))
        return [
            UserSummary(id=r["id"], username=r["username"], email=r["email"],
                        role=r["role"], storage_limit_bytes=r["storage_limit_bytes"],
                        status="online" if r["online"] else "offline")
            for r in rows
        ]

    def update_user(self, admin_token: str, user_id: str, *, email: str | None = None,
                    storage_limit_bytes: int | None = None, role: str | None = None) -> None:
        """Replace the listed fields atomically; anything not passed stays put."""
        self.require_admin(admin_token)
        if storage_limit_bytes is not None and storage_limit_bytes <= 0:
            raise InvalidLimit("storage limit must be positive")
        if role is not None and role not in ("admin", "user"):
            raise InvalidRequest("role must be admin or user")
        if email is not None and not _EMAIL_RE.match(email):
            raise InvalidEmail("email address is not well-formed")
        with self.store.transaction() as conn:
            target = conn.execute("SELECT * FROM users WHERE id = ?", (user_id,)).fetchone()
            if target is None:
                raise UnknownUser("no such user")
            if role == "user" and target["role"] == "admin":
                admins = conn.execute(
                    "SELECT COUNT(*) AS c FROM users WHERE role = 'admin'").fetchone()["c"]
                if admins <= 1:
                    raise Forbidden("cannot demote the only administrator")
            conn.execute(
                "UPDATE users SET email = COALESCE(?, email),"
                " storage_limit_bytes = COALESCE(?, storage_limit_bytes),"
                " role = COALESCE(?, role) WHERE id = ?",
                (email, storage_limit_bytes, role, user_id))

    # -- lookups used by other modules ----------------------------------------

    def get_user(self, user_id: str) -> User:
        row = self.store.query_one("SELECT * FROM users WHERE id = ?", (user_id,))
        if row is None:
            raise UnknownUser("no such user")
        return _user_from_row(row)

    def all_user_ids(self) -> list[str]:
        return [r["id"] for r in self.store.query("SELECT id FROM users")]

    def count_active_users(self) -> int:
        now = self.store.now()
        row = self.store.query_one(
            "SELECT COUNT(DISTINCT user_id) AS c FROM sessions"
            " WHERE ? - last_seen_at <= idle_ttl_seconds", (now,))
        return int(row["c"])

    def count_registered_users(self) -> int:
        return int(self.store.query_one("SELECT COUNT(*) AS c FROM users")["c"])

    def live_session_count(self, user_id: str) -> int:
        now = self.store.now()
        row = self.store.query_one(
            "SELECT COUNT(*) AS c FROM sessions WHERE user_id = ?"
            " AND ? - last_seen_at <= idle_ttl_seconds", (user_id, now))
        return int(row["c"])


def _new_user_id() -> str:
    return "u-" + secrets.token_hex(8)


def _user_from_row(row) -> User:
    return User(id=row["id"], username=row["username"], email=row["email"],
                role=row["role"], storage_limit_bytes=row["storage_limit_bytes"],
                created_at=row["created_at"])
