"""HTTP facade: JSON API over accounts, workspaces, toolchains, executor,
and limits, plus static hosting for the browser frontend.

Every module error surfaces as {"code", "message"} with its documented
status; bodies never carry stack traces or absolute server paths.
"""

from __future__ import annotations

import urllib.parse
from contextlib import asynccontextmanager
from pathlib import Path
from typing import Optional

from fastapi import Depends, FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import HTMLResponse, JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .accounts import AccountsService, User
from .config import ServiceConfig
from .errors import RequestTooLarge, ServiceError, UnknownSession
from .executor import CompileJob, Executor, SandboxPolicy
from .limits import LimitsService, WarningLimits
from .store import Store
from .toolchains import ToolchainRegistry
from .workspace import FileNode, WorkspaceManager

MAX_BODY_BYTES = 2 * 1024 * 1024

_FALLBACK_INDEX = """<!doctype html>
<html><head><title>cloudide</title></head>
<body>
<h1>cloudide backend is running</h1>
<p>No frontend bundle is configured. The JSON API lives under <code>/api</code>;
see <a href="/help">/help</a> for a quick reference.</p>
</body></html>
"""

_HELP_PAGE = """<!doctype html>
<html><head><title>cloudide help</title></head>
<body>
<h1>Help</h1>
<p>Write C (<code>.c</code>), C++ (<code>.cpp</code>, <code>.cc</code>,
<code>.cxx</code>) or Java (<code>.java</code>) in the editor. The file name
of a Java source must match its public class name.</p>
<ul>
<li><b>Run</b> compiles the open file on the server and shows its output.
Program arguments come from the argument box (split on spaces); program
input comes from the stdin box.</li>
<li><b>Build</b> compiles and places the artifact next to the source so it
can be downloaded.</li>
<li>Right-click entries in the file tree to create, rename, delete, or
download files and folders.</li>
<li>Each account has a storage limit; writes past it are refused.</li>
</ul>
</body></html>
"""


# ----- request bodies -------------------------------------------------------

class RegisterBody(BaseModel):
    username: str
    email: str
    password: str


class LoginBody(BaseModel):
    username: str
    password: str


class PasswordBody(BaseModel):
    old_password: str
    new_password: str


class EntryBody(BaseModel):
    path: str
    kind: str


class RenameBody(BaseModel):
    path: str
    new_path: str


class RunBody(BaseModel):
    path: str
    args: str = ""
    stdin: str = ""


class BuildBody(BaseModel):
    path: str


class LimitsBody(BaseModel):
    max_total_disk_bytes: int
    max_compiles: int
    reset_compiled_count: bool = False


class UserPatch(BaseModel):
    email: Optional[str] = None
    storage_limit_bytes: Optional[int] = None
    role: Optional[str] = None


def _node_json(node: FileNode) -> dict:
    return {"path": node.rel_path, "kind": node.kind,
            "size_bytes": node.size_bytes, "modified_at": node.modified_at}


def create_app(config: ServiceConfig, validate_toolchains: bool = True) -> FastAPI:
    """Wire every module together and return the ASGI app.

    Refuses to come up (ToolchainMissing) unless all configured compiler
    probes answer, matching the startup contract.
    """
    config.data_root.mkdir(parents=True, exist_ok=True)
    registry = ToolchainRegistry(config.toolchains)
    if validate_toolchains:
        registry.validate_toolchains()

    store = Store(config.db_path)
    accounts = AccountsService(store, config.default_storage_limit_bytes,
                               config.session_ttl_seconds)
    accounts.ensure_bootstrap_admin(config.admin_username, config.admin_email,
                                    config.admin_password)
    workspace = WorkspaceManager(
        config.workspaces_root,
        limit_lookup=lambda uid: accounts.get_user(uid).storage_limit_bytes)
    limits = LimitsService(store, accounts, workspace)
    limits.seed_limits(WarningLimits(config.max_total_disk_bytes, config.max_compiles))
    policy = SandboxPolicy(
        wall_timeout_ms=config.sandbox.wall_timeout_ms,
        output_cap_bytes=config.sandbox.output_cap_bytes,
        max_concurrent_jobs=config.sandbox.resolved_concurrency())
    executor = Executor(registry, workspace, limits.authorize_compile,
                        config.scratch_root, policy)

    @asynccontextmanager
    async def lifespan(_app: FastAPI):
        yield
        store.close()

    app = FastAPI(title="cloudide", lifespan=lifespan, docs_url=None, redoc_url=None)
    app.state.config = config
    app.state.store = store
    app.state.accounts = accounts
    app.state.workspace = workspace
    app.state.limits = limits
    app.state.executor = executor
    app.state.registry = registry

    # ----- error surface ----------------------------------------------------

    @app.exception_handler(ServiceError)
    async def service_error(_req: Request, exc: ServiceError):
        return JSONResponse({"code": exc.code, "message": exc.message},
                            status_code=exc.http_status)

    @app.exception_handler(RequestValidationError)
    async def validation_error(_req: Request, exc: RequestValidationError):
        return JSONResponse({"code": "InvalidRequest",
                             "message": "malformed request body or parameters"},
                            status_code=400)

    @app.exception_handler(Exception)
    async def unexpected_error(_req: Request, exc: Exception):
        return JSONResponse({"code": "InternalError", "message": "internal error"},
                            status_code=500)

    @app.middleware("http")
    async def body_cap(request: Request, call_next):
        length = request.headers.get("content-length")
        if length and length.isdigit() and int(length) > MAX_BODY_BYTES:
            return JSONResponse({"code": "RequestTooLarge",
                                 "message": "request body exceeds 2 MiB"},
                                status_code=413)
        return await call_next(request)

    # ----- auth -------------------------------------------------------------

    def current_user(request: Request) -> User:
        header = request.headers.get("authorization", "")
        if not header.startswith("Bearer "):
            raise UnknownSession("invalid or expired session")
        return accounts.resolve_session(header[len("Bearer "):])

    def current_token(request: Request) -> str:
        header = request.headers.get("authorization", "")
        if not header.startswith("Bearer "):
            raise UnknownSession("invalid or expired session")
        return header[len("Bearer "):]

    async def raw_body(request: Request) -> bytes:
        body = await request.body()
        if len(body) > MAX_BODY_BYTES:
            raise RequestTooLarge("request body exceeds 2 MiB")
        return body

    # ----- accounts -----------------------------------------------------------

    @app.post("/api/register")
    def register(body: RegisterBody):
        user_id = accounts.register(body.username, body.email, body.password)
        return {"user_id": user_id}

    @app.post("/api/login")
    def login(body: LoginBody):
        token, user = accounts.login(body.username, body.password)
        return {"token": token, "user_id": user.id, "username": user.username,
                "role": user.role}

    @app.post("/api/logout")
    def logout(token: str = Depends(current_token)):
        accounts.logout(token)
        return {}

    @app.put("/api/password")
    def change_password(body: PasswordBody, token: str = Depends(current_token)):
        accounts.update_password(token, body.old_password, body.new_password)
        return {}

    @app.get("/api/me")
    def me(user: User = Depends(current_user)):
        return {"id": user.id, "username": user.username, "email": user.email,
                "role": user.role, "storage_limit_bytes": user.storage_limit_bytes,
                "used_bytes": workspace.used_bytes(user.id)}

    # ----- workspace ----------------------------------------------------------

    @app.get("/api/fs/list")
    def fs_list(path: str = "", user: User = Depends(current_user)):
        nodes = workspace.list_tree(user.id, path)
        return {"path": path, "entries": [_node_json(n) for n in nodes]}

    @app.post("/api/fs/entry")
    def fs_create(body: EntryBody, user: User = Depends(current_user)):
        return _node_json(workspace.create_entry(user.id, body.path, body.kind))

    @app.delete("/api/fs/entry")
    def fs_delete(path: str, user: User = Depends(current_user)):
        workspace.delete_entry(user.id, path)
        return {}

    @app.get("/api/fs/file")
    def fs_read(path: str, user: User = Depends(current_user)):
        content = workspace.read_file(user.id, path)
        return Response(content=content, media_type="application/octet-stream")

    @app.put("/api/fs/file")
    def fs_write(path: str, user: User = Depends(current_user),
                 body: bytes = Depends(raw_body)):
        return _node_json(workspace.write_file(user.id, path, body))

    @app.put("/api/fs/rename")
    def fs_rename(body: RenameBody, user: User = Depends(current_user)):
        return _node_json(workspace.rename_entry(user.id, body.path, body.new_path))

    @app.get("/api/fs/download")
    def fs_download(path: str, user: User = Depends(current_user)):
        content, filename = workspace.download_file(user.id, path)
        quoted = urllib.parse.quote(filename)
        return Response(
            content=content, media_type="application/octet-stream",
            headers={"Content-Disposition": "attachment; filename*=UTF-8''%s" % quoted,
                     "X-Suggested-Filename": quoted})

    # ----- compile / run -------------------------------------------------------

    @app.post("/api/run")
    def run_source(body: RunBody, user: User = Depends(current_user)):
        job = CompileJob(owner_id=user.id, source_rel_path=body.path,
                         argv_line=body.args, stdin_bytes=body.stdin.encode("utf-8"),
                         mode="run")
        return executor.run_job(job).to_dict()

    @app.post("/api/build")
    def build_artifact(body: BuildBody, user: User = Depends(current_user)):
        job = CompileJob(owner_id=user.id, source_rel_path=body.path,
                         mode="build_artifact")
        return executor.run_job(job).to_dict()

    # ----- admin ---------------------------------------------------------------

    @app.get("/api/admin/stats")
    def admin_stats(token: str = Depends(current_token)):
        return limits.get_stats(token).to_dict()

    @app.put("/api/admin/limits")
    def admin_limits(body: LimitsBody, token: str = Depends(current_token)):
        limits.set_warning_limits(
            token, WarningLimits(body.max_total_disk_bytes, body.max_compiles),
            reset_compiled_count=body.reset_compiled_count)
        return {}

    @app.get("/api/admin/users")
    def admin_users(token: str = Depends(current_token)):
        summaries = accounts.list_users(token)
        return {"users": [
            {"id": s.id, "username": s.username, "email": s.email, "role": s.role,
             "storage_limit_bytes": s.storage_limit_bytes, "status": s.status,
             "used_bytes": workspace.used_bytes(s.id)}
            for s in summaries]}

    @app.put("/api/admin/users/{user_id}")
    def admin_update_user(user_id: str, body: UserPatch,
                          token: str = Depends(current_token)):
        accounts.update_user(token, user_id, email=body.email,
                             storage_limit_bytes=body.storage_limit_bytes,
                             role=body.role)
        return {}

    @app.get("/api/admin/fs/{user_id}/list")
    def admin_browse(user_id: str, path: str = "",
                     token: str = Depends(current_token)):
        accounts.require_admin(token)
        accounts.get_user(user_id)  # UnknownUser on bad target
        nodes = workspace.list_tree(user_id, path)
        return {"path": path, "entries": [_node_json(n) for n in nodes]}

    # ----- liveness / pages ------------------------------------------------------

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.get("/help")
    def help_page():
        return HTMLResponse(_HELP_PAGE)

    static_dir = config.static_dir
    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="static")
    else:
        @app.get("/")
        def index():
            return HTMLResponse(_FALLBACK_INDEX)

    return app
