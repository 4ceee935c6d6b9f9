"""Per-user directory trees confined under the storage root, with
byte-accounted quotas.

Layout on disk: `<workspaces_root>/<user_id>/<rel_path>`, mirroring
relative paths byte-for-byte. Every public operation validates its
relative path before touching the filesystem; a path that fails
validation raises PathRejected and has no effect.

Quota model: used bytes is the sum of regular-file sizes under the
user's root (folders cost nothing). The counter is cached per user,
updated atomically with each mutation, and must always equal a full
rescan — tests hold it to that oracle.
"""

from __future__ import annotations

import os
import shutil
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable

from .errors import (
    AlreadyExists,
    NotAFile,
    NotAFolder,
    ParentMissing,
    PathRejected,
    QuotaExceeded,
    UnknownPath,
)

MAX_COMPONENT_LENGTH = 128


def normalize_rel_path(raw: str) -> str:
    """Validate and return the canonical relative path ("" is the root).

    Rejects anything that could escape or alias the workspace root:
    NUL bytes, absolute paths, drive prefixes, backslashes, empty or
    dot/dot-dot components, and oversized components.
    """
    if not isinstance(raw, str):
        raise PathRejected("path must be a string")
    if raw == "":
        return ""
    if "\x00" in raw:
        raise PathRejected("NUL byte in path")
    if "\\" in raw:
        raise PathRejected("backslash in path")
    if raw.startswith("/") or raw.startswith("~"):
        raise PathRejected("absolute path")
    if len(raw) > 1 and raw[1] == ":":
        raise PathRejected("drive prefix")
    parts = raw.split("/")
    for part in parts:
        if part in ("", ".", ".."):
            raise PathRejected("path component %r not allowed" % part)
        if len(part) > MAX_COMPONENT_LENGTH:
            raise PathRejected("path component longer than %d chars" % MAX_COMPONENT_LENGTH)
    return "/".join(parts)


@dataclass
class FileNode:
    rel_path: str
    kind: str  # "file" | "folder"
    size_bytes: int
    modified_at: float


class WorkspaceManager:
    """Owns every user workspace. Mutations within one workspace are
    serialized by a per-user lock; distinct workspaces never contend."""

    def __init__(self, root: str | Path, limit_lookup: Callable[[str], int]):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._limit_lookup = limit_lookup
        self._locks: dict[str, threading.RLock] = {}
        self._used: dict[str, int] = {}
        self._registry_lock = threading.Lock()

    # -- plumbing --------------------------------------------------------

    def _lock_for(self, user_id: str) -> threading.RLock:
        with self._registry_lock:
            lock = self._locks.get(user_id)
            if lock is None:
                lock = self._locks[user_id] = threading.RLock()
            return lock

    def _user_root(self, user_id: str) -> Path:
        path = self.root / user_id
        path.mkdir(parents=True, exist_ok=True)
        return path

    def _abs(self, user_id: str, rel_path: str) -> Path:
        base = self._user_root(user_id)
        return base / rel_path if rel_path else base

    def _ensure_used(self, user_id: str) -> int:
        if user_id not in self._used:
            self._used[user_id] = self.rescan(user_id)
        return self._used[user_id]

    def rescan(self, user_id: str) -> int:
        """Authoritative recount: sum of regular-file sizes under the root."""
        total = 0
        for dirpath, _dirnames, filenames in os.walk(self._user_root(user_id)):
            for name in filenames:
                full = os.path.join(dirpath, name)
                if os.path.isfile(full) and not os.path.islink(full):
                    total += os.path.getsize(full)
        return total

    def used_bytes(self, user_id: str) -> int:
        with self._lock_for(user_id):
            return self._ensure_used(user_id)

    def total_used_bytes(self, user_ids: Iterable[str]) -> int:
        return sum(self.used_bytes(uid) for uid in user_ids)

    # -- operations --------------------------------------------------------

    def create_entry(self, user_id: str, rel_path: str, kind: str) -> FileNode:
        rel = normalize_rel_path(rel_path)
        if rel == "":
            raise PathRejected("cannot create the workspace root")
        if kind not in ("file", "folder"):
            raise PathRejected("kind must be file or folder")
        with self._lock_for(user_id):
            self._ensure_used(user_id)
            target = self._abs(user_id, rel)
            if target.parent != self._abs(user_id, "") and not target.parent.is_dir():
                raise ParentMissing("parent folder does not exist")
            if target.exists() or target.is_symlink():
                raise AlreadyExists("an entry already exists at %s" % rel)
            if kind == "folder":
                target.mkdir()
            else:
                target.touch()
            return self._node(user_id, rel)

    def write_file(self, user_id: str, rel_path: str, content: bytes) -> FileNode:
        """Replace a file's content atomically. All-or-nothing under quota:
        a write that would exceed the owner's limit changes nothing."""
        rel = normalize_rel_path(rel_path)
        with self._lock_for(user_id):
            used = self._ensure_used(user_id)
            target = self._abs(user_id, rel)
            if rel == "" or target.is_dir():
                raise NotAFile("%s is not a file" % (rel or "/"))
            if not target.is_file():
                raise UnknownPath("no file at %s" % rel)
            delta = len(content) - target.stat().st_size
            if used + delta > self._limit_lookup(user_id):
                raise QuotaExceeded("write would exceed the storage limit")
            self._replace_bytes(target, content)
            self._used[user_id] = used + delta
            return self._node(user_id, rel)

    def place_file(self, user_id: str, rel_path: str, content: bytes) -> FileNode:
        """Create-or-replace under quota (used for built artifacts)."""
        rel = normalize_rel_path(rel_path)
        if rel == "":
            raise NotAFile("cannot write the workspace root")
        with self._lock_for(user_id):
            used = self._ensure_used(user_id)
            target = self._abs(user_id, rel)
            if target.is_dir():
                raise NotAFile("%s is not a file" % rel)
            if target.parent != self._abs(user_id, "") and not target.parent.is_dir():
                raise ParentMissing("parent folder does not exist")
            old = target.stat().st_size if target.is_file() else 0
            delta = len(content) - old
            if used + delta > self._limit_lookup(user_id):
                raise QuotaExceeded("artifact would exceed the storage limit")
            self._replace_bytes(target, content)
            self._used[user_id] = used + delta
            return self._node(user_id, rel)

    def read_file(self, user_id: str, rel_path: str) -> bytes:
        rel = normalize_rel_path(rel_path)
        with self._lock_for(user_id):
            target = self._abs(user_id, rel)
            if rel == "" or target.is_dir():
                raise NotAFile("%s is not a file" % (rel or "/"))
            if not target.is_file():
                raise UnknownPath("no file at %s" % rel)
            return target.read_bytes()

    def rename_entry(self, user_id: str, rel_path: str, new_rel_path: str) -> FileNode:
        src = normalize_rel_path(rel_path)
        dst = normalize_rel_path(new_rel_path)
        if src == "" or dst == "":
            raise PathRejected("cannot rename the workspace root")
        with self._lock_for(user_id):
            self._ensure_used(user_id)
            src_abs = self._abs(user_id, src)
            dst_abs = self._abs(user_id, dst)
            if not src_abs.exists():
                raise UnknownPath("no entry at %s" % src)
            if dst_abs.exists() or dst_abs.is_symlink():
                raise AlreadyExists("an entry already exists at %s" % dst)
            if dst_abs.parent != self._abs(user_id, "") and not dst_abs.parent.is_dir():
                raise ParentMissing("destination parent does not exist")
            try:
                os.rename(src_abs, dst_abs)
            except OSError as exc:
                raise PathRejected("rename not possible: %s" % exc.strerror) from None
            return self._node(user_id, dst)

    def delete_entry(self, user_id: str, rel_path: str) -> None:
        rel = normalize_rel_path(rel_path)
        if rel == "":
            raise PathRejected("cannot delete the workspace root")
        with self._lock_for(user_id):
            used = self._ensure_used(user_id)
            target = self._abs(user_id, rel)
            if target.is_dir() and not target.is_symlink():
                freed = 0
                for dirpath, _dirnames, filenames in os.walk(target):
                    for name in filenames:
                        full = os.path.join(dirpath, name)
                        if os.path.isfile(full) and not os.path.islink(full):
                            freed += os.path.getsize(full)
                shutil.rmtree(target)
            elif target.is_file() or target.is_symlink():
                freed = target.stat().st_size
                target.unlink()
            else:
                raise UnknownPath("no entry at %s" % rel)
            self._used[user_id] = used - freed

    def list_tree(self, user_id: str, rel_path: str = "") -> list[FileNode]:
        """Immediate children of a folder, folders first, then by name."""
        rel = normalize_rel_path(rel_path)
        with self._lock_for(user_id):
            target = self._abs(user_id, rel)
            if not target.exists():
                raise UnknownPath("no entry at %s" % rel)
            if not target.is_dir():
                raise NotAFolder("%s is not a folder" % rel)
            nodes = []
            for child in target.iterdir():
                child_rel = "%s/%s" % (rel, child.name) if rel else child.name
                nodes.append(self._node(user_id, child_rel))
            nodes.sort(key=lambda n: (n.kind != "folder", n.rel_path))
            return nodes

    def download_file(self, user_id: str, rel_path: str) -> tuple[bytes, str]:
        """Returns (content, suggested filename = final path component)."""
        rel = normalize_rel_path(rel_path)
        content = self.read_file(user_id, rel)
        return content, rel.rsplit("/", 1)[-1]

    # -- helpers -----------------------------------------------------------

    def _node(self, user_id: str, rel: str) -> FileNode:
        target = self._abs(user_id, rel)
        st = target.stat()
        if target.is_dir():
            return FileNode(rel_path=rel, kind="folder", size_bytes=0, modified_at=st.st_mtime)
        return FileNode(rel_path=rel, kind="file", size_bytes=st.st_size, modified_at=st.st_mtime)

    @staticmethod
    def _replace_bytes(target: Path, content: bytes) -> None:
        tmp = target.parent / (".%s.tmp-%d" % (target.name, threading.get_ident()))
        tmp.write_bytes(content)
        os.replace(tmp, target)
