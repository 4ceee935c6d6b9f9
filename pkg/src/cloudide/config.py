"""Service configuration: JSON file, environment overrides, defaults.

Schema (all keys optional, defaults below):

    {
      "listen": {"host": "127.0.0.1", "port": 8080},
      "data_root": "./data",
      "default_storage_limit_bytes": 10485760,
      "session_ttl_seconds": 86400,
      "bootstrap_admin": {"username": "admin",
                          "email": "admin@localhost",
                          "password": "change-me-now"},
      "limits": {"max_total_disk_bytes": 1073741824, "max_compiles": 10000},
      "sandbox": {"wall_timeout_ms": 10000,
                  "output_cap_bytes": 65536,
                  "max_concurrent_jobs": <cpu count>},
      "toolchains": {
        "c":    {"compile": [...], "run": [...], "probe": [...]},
        "cpp":  {"compile": [...], "run": [...], "probe": [...]},
        "java": {"compile": [...], "run": [...], "probe": [...]}
      },
      "static_dir": null
    }

Toolchain command entries are token lists; placeholders {src}, {out},
{workdir} and the argv splice point {args} are substituted per token,
never joined into a shell line.

Environment overrides: CLOUDIDE_LISTEN ("host:port") and
CLOUDIDE_DATA_ROOT take precedence over the file.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

DEFAULT_STORAGE_LIMIT = 10 * 1024 * 1024  # 10 MiB per fresh registration

DEFAULT_TOOLCHAINS = {
    "c": {
        "compile": ["gcc", "{src}", "-O2", "-o", "{out}"],
        "run": ["{out}", "{args}"],
        "probe": ["gcc", "--version"],
    },
    "cpp": {
        "compile": ["g++", "{src}", "-O2", "-o", "{out}"],
        "run": ["{out}", "{args}"],
        "probe": ["g++", "--version"],
    },
    "java": {
        "compile": ["javac", "-d", "{workdir}", "{src}"],
        "run": ["java", "-cp", "{workdir}", "{out}", "{args}"],
        "probe": ["javac", "-version"],
    },
}


@dataclass
class SandboxSettings:
    wall_timeout_ms: int = 10_000
    output_cap_bytes: int = 65_536
    max_concurrent_jobs: int = 0  # 0 -> os.cpu_count()

    def resolved_concurrency(self) -> int:
        return self.max_concurrent_jobs or (os.cpu_count() or 1)


@dataclass
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8080
    data_root: Path = Path("./data")
    default_storage_limit_bytes: int = DEFAULT_STORAGE_LIMIT
    session_ttl_seconds: int = 86_400
    admin_username: str = "admin"
    admin_email: str = "admin@localhost"
    admin_password: str = "change-me-now"
    max_total_disk_bytes: int = 1024 * 1024 * 1024
    max_compiles: int = 10_000
    sandbox: SandboxSettings = field(default_factory=SandboxSettings)
    toolchains: dict = field(default_factory=lambda: json.loads(json.dumps(DEFAULT_TOOLCHAINS)))
    static_dir: Path | None = None

    @property
    def workspaces_root(self) -> Path:
        return self.data_root / "workspaces"

    @property
    def scratch_root(self) -> Path:
        return self.data_root / "scratch"

    @property
    def db_path(self) -> Path:
        return self.data_root / "cloudide.db"


def load_config(path: str | Path | None = None, env: dict | None = None) -> ServiceConfig:
    """Build a ServiceConfig from an optional JSON file plus env overrides."""
    env = os.environ if env is None else env
    raw = {}
    if path is not None:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))

    cfg = ServiceConfig()
    listen = raw.get("listen", {})
    cfg.host = listen.get("host", cfg.host)
    cfg.port = int(listen.get("port", cfg.port))
    cfg.data_root = Path(raw.get("data_root", cfg.data_root))
    cfg.default_storage_limit_bytes = int(
        raw.get("default_storage_limit_bytes", cfg.default_storage_limit_bytes))
    cfg.session_ttl_seconds = int(raw.get("session_ttl_seconds", cfg.session_ttl_seconds))

    admin = raw.get("bootstrap_admin", {})
    cfg.admin_username = admin.get("username", cfg.admin_username)
    cfg.admin_email = admin.get("email", cfg.admin_email)
    cfg.admin_password = admin.get("password", cfg.admin_password)

    limits = raw.get("limits", {})
    cfg.max_total_disk_bytes = int(limits.get("max_total_disk_bytes", cfg.max_total_disk_bytes))
    cfg.max_compiles = int(limits.get("max_compiles", cfg.max_compiles))

    sandbox = raw.get("sandbox", {})
    cfg.sandbox = SandboxSettings(
        wall_timeout_ms=int(sandbox.get("wall_timeout_ms", cfg.sandbox.wall_timeout_ms)),
        output_cap_bytes=int(sandbox.get("output_cap_bytes", cfg.sandbox.output_cap_bytes)),
        max_concurrent_jobs=int(sandbox.get("max_concurrent_jobs") or 0),
    )

    for lang, entry in raw.get("toolchains", {}).items():
        base = cfg.toolchains.setdefault(lang, {})
        base.update(entry)

    if raw.get("static_dir"):
        cfg.static_dir = Path(raw["static_dir"])

    if env.get("CLOUDIDE_LISTEN"):
        host, _, port = env["CLOUDIDE_LISTEN"].rpartition(":")
        cfg.host = host or cfg.host
        cfg.port = int(port)
    if env.get("CLOUDIDE_DATA_ROOT"):
        cfg.data_root = Path(env["CLOUDIDE_DATA_ROOT"])
    return cfg


def default_config_json() -> str:
    """The documented config file with every key spelled out."""
    cfg = ServiceConfig()
    doc = {
        "listen": {"host": cfg.host, "port": cfg.port},
        "data_root": str(cfg.data_root),
        "default_storage_limit_bytes": cfg.default_storage_limit_bytes,
        "session_ttl_seconds": cfg.session_ttl_seconds,
        "bootstrap_admin": {
            "username": cfg.admin_username,
            "email": cfg.admin_email,
            "password": cfg.admin_password,
        },
        "limits": {
            "max_total_disk_bytes": cfg.max_total_disk_bytes,
            "max_compiles": cfg.max_compiles,
        },
        "sandbox": {
            "wall_timeout_ms": cfg.sandbox.wall_timeout_ms,
            "output_cap_bytes": cfg.sandbox.output_cap_bytes,
            "max_concurrent_jobs": cfg.sandbox.max_concurrent_jobs,
        },
        "toolchains": DEFAULT_TOOLCHAINS,
        "static_dir": None,
    }
    return json.dumps(doc, indent=2) + "\n"
