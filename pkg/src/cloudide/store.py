"""Embedded transactional store: one sqlite file for users, sessions,
limits, and the compile counter.

A single connection guarded by an RLock serializes every statement, so
check-and-set updates (username uniqueness, admin count, compile budget)
are atomic with their reads. Workspace file content lives on disk, not
here.
"""

from __future__ import annotations

import sqlite3
import threading
import time
from pathlib import Path

_SCHEMA = """
CREATE TABLE IF NOT EXISTS users (
    id TEXT PRIMARY KEY,
    username TEXT NOT NULL UNIQUE,
    email TEXT NOT NULL,
    password_digest TEXT NOT NULL,
    role TEXT NOT NULL CHECK (role IN ('admin', 'user')),
    storage_limit_bytes INTEGER NOT NULL CHECK (storage_limit_bytes > 0),
    created_at REAL NOT NULL
);
CREATE TABLE IF NOT EXISTS sessions (
    token TEXT PRIMARY KEY,
    user_id TEXT NOT NULL REFERENCES users(id) ON DELETE CASCADE,
    created_at REAL NOT NULL,
    last_seen_at REAL NOT NULL,
    idle_ttl_seconds INTEGER NOT NULL
);
CREATE TABLE IF NOT EXISTS meta (
    key TEXT PRIMARY KEY,
    int_value INTEGER,
    real_value REAL
);
"""

_META_DEFAULTS = {
    "max_total_disk_bytes": 1024 * 1024 * 1024,
    "max_compiles": 10_000,
    "compiled_files": 0,
}


class Store:
    def __init__(self, db_path: str | Path, now=time.time):
        self.now = now
        self._lock = threading.RLock()
        Path(db_path).parent.mkdir(parents=True, exist_ok=True)
        self._conn = sqlite3.connect(str(db_path), check_same_thread=False)
        self._conn.row_factory = sqlite3.Row
        with self._lock:
            self._conn.execute("PRAGMA journal_mode=WAL")
            self._conn.execute("PRAGMA foreign_keys=ON")
            self._conn.executescript(_SCHEMA)
            for key, value in _META_DEFAULTS.items():
                self._conn.execute(
                    "INSERT OR IGNORE INTO meta (key, int_value) VALUES (?, ?)",
                    (key, value))
            self._conn.commit()

    def close(self) -> None:
        with self._lock:
            self._conn.close()

    # -- primitives ----------------------------------------------------

    def execute(self, sql: str, params=()) -> sqlite3.Cursor:
        """Run one statement and commit. Serialized; rowcount is reliable."""
        with self._lock:
            cur = self._conn.execute(sql, params)
            self._conn.commit()
            return cur

    def query(self, sql: str, params=()) -> list[sqlite3.Row]:
        with self._lock:
            return self._conn.execute(sql, params).fetchall()

    def query_one(self, sql: str, params=()) -> sqlite3.Row | None:
        rows = self.query(sql, params)
        return rows[0] if rows else None

    def transaction(self):
        """Context manager holding the store lock across several statements."""
        return _Txn(self)

    # -- meta ----------------------------------------------------------

    def get_int(self, key: str) -> int:
        row = self.query_one("SELECT int_value FROM meta WHERE key = ?", (key,))
        return int(row["int_value"]) if row and row["int_value"] is not None else 0

    def set_int(self, key: str, value: int) -> None:
        self.execute(
            "INSERT INTO meta (key, int_value) VALUES (?, ?) "
            "ON CONFLICT(key) DO UPDATE SET int_value = excluded.int_value",
            (key, value))

    def get_real(self, key: str) -> float | None:
        row = self.query_one("SELECT real_value FROM meta WHERE key = ?", (key,))
        return float(row["real_value"]) if row and row["real_value"] is not None else None

    def set_real_max(self, key: str, value: float) -> None:
        """Monotonically raise a real-valued meta key (session activity)."""
        self.execute(
            "INSERT INTO meta (key, real_value) VALUES (?, ?) "
            "ON CONFLICT(key) DO UPDATE SET real_value = MAX(COALESCE(real_value, 0), excluded.real_value)",
            (key, value))

    def bump_compile_counter(self, limit_key: str = "max_compiles") -> bool:
        """Atomic check-and-increment of the compile-attempt counter.

        Returns True (and increments) iff the counter is below the current
        budget; otherwise leaves it untouched.
        """
        cur = self.execute(
            "UPDATE meta SET int_value = int_value + 1 "
            "WHERE key = 'compiled_files' AND int_value < "
            "      (SELECT int_value FROM meta WHERE key = ?)",
            (limit_key,))
        return cur.rowcount == 1


class _Txn:
    def __init__(self, store: Store):
        self._store = store

    def __enter__(self) -> sqlite3.Connection:
        self._store._lock.acquire()
        return self._store._conn

    def __exit__(self, exc_type, exc, tb):
        try:
            if exc_type is None:
                self._store._conn.commit()
            else:
                self._store._conn.rollback()
        finally:
            self._store._lock.release()
        return False
