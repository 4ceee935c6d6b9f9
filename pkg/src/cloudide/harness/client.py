"""Thin HTTP client for a running backend instance.

Only connectivity problems are turned into exceptions; HTTP error statuses
come back as ordinary responses because several checks assert on them.
"""

from __future__ import annotations

from typing import Any, Optional

import httpx

from ..errors import EndpointUnreachable


class ApiClient:
    def __init__(self, endpoint: str, timeout: float = 120.0):
        self.endpoint = endpoint.rstrip("/")
        self._http = httpx.Client(base_url=self.endpoint, timeout=timeout)

    def close(self) -> None:
        self._http.close()

    def __enter__(self) -> "ApiClient":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def request(self, method: str, path: str, token: Optional[str] = None,
                json: Any = None, content: Optional[bytes] = None,
                params: Optional[dict] = None) -> httpx.Response:
        headers = {}
        if token is not None:
            headers["Authorization"] = "Bearer %s" % token
        try:
            return self._http.request(method, path, headers=headers, json=json,
                                      content=content, params=params)
        except httpx.TransportError as exc:
            raise EndpointUnreachable(
                "cannot reach %s: %s" % (self.endpoint, exc)) from exc

    # -- conveniences used by the suites --------------------------------

    def register(self, username: str, email: str, password: str) -> httpx.Response:
        return self.request("POST", "/api/register",
                            json={"username": username, "email": email,
                                  "password": password})

    def login(self, username: str, password: str) -> httpx.Response:
        return self.request("POST", "/api/login",
                            json={"username": username, "password": password})

    def logout(self, token: str) -> httpx.Response:
        return self.request("POST", "/api/logout", token=token)

    def change_password(self, token: str, old: str, new: str) -> httpx.Response:
        return self.request("PUT", "/api/password", token=token,
                            json={"old_password": old, "new_password": new})

    def me(self, token: str) -> httpx.Response:
        return self.request("GET", "/api/me", token=token)

    def fs_list(self, token: str, path: str = "") -> httpx.Response:
        return self.request("GET", "/api/fs/list", token=token,
                            params={"path": path})

    def fs_create(self, token: str, path: str, kind: str) -> httpx.Response:
        return self.request("POST", "/api/fs/entry", token=token,
                            json={"path": path, "kind": kind})

    def fs_write(self, token: str, path: str, data: bytes) -> httpx.Response:
        return self.request("PUT", "/api/fs/file", token=token,
                            content=data, params={"path": path})

    def fs_read(self, token: str, path: str) -> httpx.Response:
        return self.request("GET", "/api/fs/file", token=token,
                            params={"path": path})

    def fs_rename(self, token: str, path: str, new_path: str) -> httpx.Response:
        return self.request("PUT", "/api/fs/rename", token=token,
                            json={"path": path, "new_path": new_path})

    def fs_delete(self, token: str, path: str) -> httpx.Response:
        return self.request("DELETE", "/api/fs/entry", token=token,
                            params={"path": path})

    def fs_download(self, token: str, path: str) -> httpx.Response:
        return self.request("GET", "/api/fs/download", token=token,
                            params={"path": path})

    def run(self, token: str, path: str, args: str = "",
            stdin: str = "") -> httpx.Response:
        return self.request("POST", "/api/run", token=token,
                            json={"path": path, "args": args, "stdin": stdin})

    def build(self, token: str, path: str) -> httpx.Response:
        return self.request("POST", "/api/build", token=token,
                            json={"path": path})

    def admin_stats(self, token: str) -> httpx.Response:
        return self.request("GET", "/api/admin/stats", token=token)

    def admin_limits(self, token: str, max_total_disk_bytes: int,
                     max_compiles: int, reset: bool = False) -> httpx.Response:
        return self.request("PUT", "/api/admin/limits", token=token,
                            json={"max_total_disk_bytes": max_total_disk_bytes,
                                  "max_compiles": max_compiles,
                                  "reset_compiled_count": reset})

    def admin_users(self, token: str) -> httpx.Response:
        return self.request("GET", "/api/admin/users", token=token)

    def admin_update_user(self, token: str, user_id: str, **fields) -> httpx.Response:
        return self.request("PUT", "/api/admin/users/%s" % user_id, token=token,
                            json=fields)

    def admin_browse(self, token: str, user_id: str, path: str = "") -> httpx.Response:
        return self.request("GET", "/api/admin/fs/%s/list" % user_id, token=token,
                            params={"path": path})

    def help_page(self) -> httpx.Response:
        return self.request("GET", "/help")

    def healthz(self) -> httpx.Response:
        return self.request("GET", "/healthz")
