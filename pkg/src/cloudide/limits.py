"""Warning-limit policy (disk + compile budget) and dashboard statistics.

The compile budget is a lifetime attempt counter: authorize_compile
atomically bumps it while it is below max_compiles and refuses
otherwise. The disk limit is a warning threshold surfaced on the
dashboard; per-user quotas remain the hard gate for writes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .accounts import AccountsService
from .errors import Forbidden, InvalidLimit, LimitReached
from .store import Store
from .workspace import WorkspaceManager


@dataclass
class WarningLimits:
    max_total_disk_bytes: int
    max_compiles: int


@dataclass
class DashboardStats:
    active_users: int
    registered_users: int
    compiled_files: int
    directory_space_bytes: int
    last_active_session: Optional[float]
    max_total_disk_bytes: int
    max_compiles: int
    disk_warning: bool

    def to_dict(self) -> dict:
        return {
            "active_users": self.active_users,
            "registered_users": self.registered_users,
            "compiled_files": self.compiled_files,
            "directory_space_bytes": self.directory_space_bytes,
            "last_active_session": self.last_active_session,
            "max_total_disk_bytes": self.max_total_disk_bytes,
            "max_compiles": self.max_compiles,
            "disk_warning": self.disk_warning,
        }


class LimitsService:
    def __init__(self, store: Store, accounts: AccountsService,
                 workspace: WorkspaceManager):
        self.store = store
        self.accounts = accounts
        self.workspace = workspace

    def seed_limits(self, limits: WarningLimits) -> None:
        """Write initial limits only if the store has never seen any."""
        if self.store.get_int("limits_seeded") == 0:
            self.store.set_int("max_total_disk_bytes", limits.max_total_disk_bytes)
            self.store.set_int("max_compiles", limits.max_compiles)
            self.store.set_int("limits_seeded", 1)

    def authorize_compile(self) -> None:
        """Grant one compile attempt or raise LimitReached. The counter
        increment and the budget check are a single atomic statement."""
        if not self.store.bump_compile_counter():
            raise LimitReached("the compile-attempt budget is exhausted")

    def current_limits(self) -> WarningLimits:
        return WarningLimits(
            max_total_disk_bytes=self.store.get_int("max_total_disk_bytes"),
            max_compiles=self.store.get_int("max_compiles"))

    def set_warning_limits(self, admin_token: str, limits: WarningLimits,
                           reset_compiled_count: bool = False) -> None:
        self.accounts.require_admin(admin_token)
        if limits.max_total_disk_bytes <= 0:
            raise InvalidLimit("disk limit must be positive")
        if limits.max_compiles < 0:
            raise InvalidLimit("compile limit cannot be negative")
        # max_compiles == 0 is a legal freeze: every authorization is denied
        self.store.set_int("max_total_disk_bytes", limits.max_total_disk_bytes)
        self.store.set_int("max_compiles", limits.max_compiles)
        if reset_compiled_count:
            self.store.set_int("compiled_files", 0)

    def get_stats(self, admin_token: str) -> DashboardStats:
        self.accounts.require_admin(admin_token)
        limits = self.current_limits()
        space = self.workspace.total_used_bytes(self.accounts.all_user_ids())
        return DashboardStats(
            active_users=self.accounts.count_active_users(),
            registered_users=self.accounts.count_registered_users(),
            compiled_files=self.store.get_int("compiled_files"),
            directory_space_bytes=space,
            last_active_session=self.store.get_real("last_session_activity"),
            max_total_disk_bytes=limits.max_total_disk_bytes,
            max_compiles=limits.max_compiles,
            disk_warning=space > limits.max_total_disk_bytes,
        )
