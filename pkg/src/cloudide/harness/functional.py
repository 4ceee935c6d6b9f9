"""Functional suites: scripted admin and user workflows against a live
endpoint, fifteen checks each, run in the order a person would click
through them.

Every check is recorded even when an earlier one failed; a missing
prerequisite simply shows up as that check's failure detail.
"""

from __future__ import annotations

import secrets
from typing import Callable

from ..errors import VerificationFailed
from .client import ApiClient
from .metric import TestReport

_HELLO_C = """\
#include <stdio.h>

int main(void) {
    printf("hello from the workspace\\n");
    return 0;
}
"""

_HELLO_C_SAVED = _HELLO_C.replace(
    '    return 0;', '    printf("saved and rebuilt\\n");\n    return 0;')


def _check(report: TestReport, name: str, fn: Callable[[], None]) -> None:
    try:
        fn()
        report.add(name, True)
    except Exception as exc:
        report.add(name, False, "%s: %s" % (type(exc).__name__, exc))


def _expect(cond: bool, message: str) -> None:
    if not cond:
        raise AssertionError(message)


def run_functional_suite(endpoint: str, suite: str,
                         admin_username: str = "admin",
                         admin_password: str = "change-me-now") -> TestReport:
    if suite == "admin":
        return _admin_suite(endpoint, admin_username, admin_password)
    if suite == "user":
        return _user_suite(endpoint)
    raise VerificationFailed("unknown functional suite %r" % suite)


# ----- admin workflow -------------------------------------------------------

def _admin_suite(endpoint: str, admin_username: str,
                 admin_password: str) -> TestReport:
    report = TestReport("admin")
    ctx: dict = {}
    with ApiClient(endpoint) as client:
        client.healthz()  # raises EndpointUnreachable when the service is down

        # fixture: one managed account the admin can inspect in rows 10-12
        managed = "mgd-%s" % secrets.token_hex(4)
        managed_password = "managed-%s" % secrets.token_hex(8)
        reg = client.register(managed, "%s@harness.local" % managed,
                              managed_password)
        if reg.status_code == 200:
            ctx["managed_id"] = reg.json()["user_id"]

        def login():
            bad = client.login(admin_username, "definitely-not-%s" % admin_password)
            _expect(bad.status_code == 401, "wrong password must be rejected")
            resp = client.login(admin_username, admin_password)
            _expect(resp.status_code == 200, "admin login failed: %s" % resp.text[:200])
            body = resp.json()
            _expect(body.get("role") == "admin", "expected an admin account")
            ctx["token"] = body["token"]
            ctx["admin_id"] = body["user_id"]
        _check(report, "login", login)

        def directory_menu():
            resp = client.admin_browse(ctx["token"], ctx["admin_id"])
            _expect(resp.status_code == 200,
                    "directory browse failed: %s" % resp.text[:200])
            _expect("entries" in resp.json(), "browse payload missing entries")
        _check(report, "directory-management-menu", directory_menu)

        folder = "reports-%s" % secrets.token_hex(3)
        note = "%s/notes.txt" % folder
        renamed = "%s/summary.txt" % folder
        payload = b"alpha beta\n"

        def folder_creation():
            resp = client.fs_create(ctx["token"], folder, "folder")
            _expect(resp.status_code == 200, "mkdir failed: %s" % resp.text[:200])
            listing = client.fs_list(ctx["token"]).json()["entries"]
            _expect(any(e["path"] == folder and e["kind"] == "folder"
                        for e in listing), "new folder missing from listing")
        _check(report, "folder-creation", folder_creation)

        def file_creation():
            resp = client.fs_create(ctx["token"], note, "file")
            _expect(resp.status_code == 200, "create failed: %s" % resp.text[:200])
            wrote = client.fs_write(ctx["token"], note, payload)
            _expect(wrote.status_code == 200, "write failed: %s" % wrote.text[:200])
        _check(report, "file-creation", file_creation)

        def file_renaming():
            resp = client.fs_rename(ctx["token"], note, renamed)
            _expect(resp.status_code == 200, "rename failed: %s" % resp.text[:200])
            names = [e["path"] for e in
                     client.fs_list(ctx["token"], folder).json()["entries"]]
            _expect(renamed in names, "renamed file missing")
            _expect(note not in names, "old name still present")
        _check(report, "file-renaming", file_renaming)

        def file_downloading():
            resp = client.fs_download(ctx["token"], renamed)
            _expect(resp.status_code == 200, "download failed")
            _expect(resp.content == payload, "downloaded bytes differ")
            _expect("attachment" in resp.headers.get("content-disposition", ""),
                    "missing attachment disposition")
        _check(report, "file-downloading", file_downloading)

        def file_deletion():
            resp = client.fs_delete(ctx["token"], renamed)
            _expect(resp.status_code == 200, "delete failed: %s" % resp.text[:200])
            names = [e["path"] for e in
                     client.fs_list(ctx["token"], folder).json()["entries"]]
            _expect(renamed not in names, "deleted file still listed")
        _check(report, "file-deletion", file_deletion)

        def folder_deletion():
            resp = client.fs_delete(ctx["token"], folder)
            _expect(resp.status_code == 200, "rmdir failed: %s" % resp.text[:200])
            names = [e["path"] for e in
                     client.fs_list(ctx["token"]).json()["entries"]]
            _expect(folder not in names, "deleted folder still listed")
        _check(report, "folder-deletion", folder_deletion)

        def warning_limit_update():
            stats = client.admin_stats(ctx["token"])
            _expect(stats.status_code == 200, "stats failed: %s" % stats.text[:200])
            before = stats.json()
            new_disk = before["max_total_disk_bytes"] + 1024 * 1024
            new_compiles = before["max_compiles"] + 7
            resp = client.admin_limits(ctx["token"], new_disk, new_compiles)
            _expect(resp.status_code == 200, "limit update failed: %s" % resp.text[:200])
            after = client.admin_stats(ctx["token"]).json()
            _expect(after["max_total_disk_bytes"] == new_disk
                    and after["max_compiles"] == new_compiles,
                    "stats do not reflect the new limits")
            restored = client.admin_limits(ctx["token"],
                                           before["max_total_disk_bytes"],
                                           before["max_compiles"])
            _expect(restored.status_code == 200, "limit restore failed")
        _check(report, "warning-limit-update", warning_limit_update)

        def user_management_menu():
            resp = client.admin_users(ctx["token"])
            _expect(resp.status_code == 200, "user list failed: %s" % resp.text[:200])
            users = resp.json()["users"]
            _expect(any(u["username"] == admin_username for u in users),
                    "admin account missing from user list")
            ctx["users"] = users
        _check(report, "user-management-menu", user_management_menu)

        def user_info_selection():
            target = next(u for u in ctx["users"] if u["id"] == ctx["managed_id"])
            _expect(target["role"] == "user", "managed account should be a user")
            browse = client.admin_browse(ctx["token"], target["id"])
            _expect(browse.status_code == 200, "cannot browse managed workspace")
            _expect(browse.json()["entries"] == [],
                    "fresh workspace should be empty")
        _check(report, "user-info-selection", user_info_selection)

        def user_info_update():
            new_limit = 5 * 1024 * 1024
            resp = client.admin_update_user(
                ctx["token"], ctx["managed_id"],
                email="%s@updated.local" % managed,
                storage_limit_bytes=new_limit)
            _expect(resp.status_code == 200, "user update failed: %s" % resp.text[:200])
            users = client.admin_users(ctx["token"]).json()["users"]
            target = next(u for u in users if u["id"] == ctx["managed_id"])
            _expect(target["storage_limit_bytes"] == new_limit,
                    "storage limit not applied")
            _expect(target["email"].endswith("@updated.local"),
                    "email not applied")
        _check(report, "user-info-update", user_info_update)

        def account_menu():
            resp = client.me(ctx["token"])
            _expect(resp.status_code == 200, "account view failed")
            _expect(resp.json()["username"] == admin_username,
                    "account view shows the wrong user")
        _check(report, "account-menu", account_menu)

        def password_update():
            interim = "interim-%s" % secrets.token_hex(8)
            resp = client.change_password(ctx["token"], admin_password, interim)
            _expect(resp.status_code == 200, "password change failed: %s"
                    % resp.text[:200])
            relog = client.login(admin_username, interim)
            _expect(relog.status_code == 200, "new password does not work")
            back = client.change_password(relog.json()["token"], interim,
                                          admin_password)
            _expect(back.status_code == 200, "password restore failed")
        _check(report, "password-update", password_update)

        def logout():
            resp = client.logout(ctx["token"])
            _expect(resp.status_code == 200, "logout failed: %s" % resp.text[:200])
            stale = client.me(ctx["token"])
            _expect(stale.status_code == 401, "token survived logout")
        _check(report, "logout", logout)

    return report


# ----- user workflow --------------------------------------------------------

def _user_suite(endpoint: str) -> TestReport:
    report = TestReport("user")
    ctx: dict = {}
    username = "usr-%s" % secrets.token_hex(4)
    password = "secret-%s" % secrets.token_hex(8)
    email = "%s@harness.local" % username

    with ApiClient(endpoint) as client:
        client.healthz()  # raises EndpointUnreachable when the service is down

        def registration():
            resp = client.register(username, email, password)
            _expect(resp.status_code == 200, "register failed: %s" % resp.text[:200])
            body = resp.json()
            _expect("user_id" in body, "register should return the new id")
            _expect("token" not in body, "register must not open a session")
            dup = client.register(username, email, password)
            _expect(dup.status_code == 409, "duplicate username must be rejected")
        _check(report, "registration", registration)

        def login():
            resp = client.login(username, password)
            _expect(resp.status_code == 200, "login failed: %s" % resp.text[:200])
            ctx["token"] = resp.json()["token"]
            listing = client.fs_list(ctx["token"])
            _expect(listing.status_code == 200, "workspace listing failed")
            _expect(listing.json()["entries"] == [], "fresh workspace not empty")
        _check(report, "login", login)

        folder = "proj"
        note = "proj/notes.txt"
        renamed = "proj/final.txt"
        payload = b"draft one\n"

        def folder_creation():
            resp = client.fs_create(ctx["token"], folder, "folder")
            _expect(resp.status_code == 200, "mkdir failed: %s" % resp.text[:200])
        _check(report, "folder-creation", folder_creation)

        def file_creation():
            resp = client.fs_create(ctx["token"], note, "file")
            _expect(resp.status_code == 200, "create failed: %s" % resp.text[:200])
            wrote = client.fs_write(ctx["token"], note, payload)
            _expect(wrote.status_code == 200, "write failed: %s" % wrote.text[:200])
        _check(report, "file-creation", file_creation)

        def file_renaming():
            resp = client.fs_rename(ctx["token"], note, renamed)
            _expect(resp.status_code == 200, "rename failed: %s" % resp.text[:200])
        _check(report, "file-renaming", file_renaming)

        def file_downloading():
            resp = client.fs_download(ctx["token"], renamed)
            _expect(resp.status_code == 200, "download failed")
            _expect(resp.content == payload, "downloaded bytes differ")
        _check(report, "file-downloading", file_downloading)

        def file_deletion():
            resp = client.fs_delete(ctx["token"], renamed)
            _expect(resp.status_code == 200, "delete failed: %s" % resp.text[:200])
        _check(report, "file-deletion", file_deletion)

        def folder_deletion():
            resp = client.fs_delete(ctx["token"], folder)
            _expect(resp.status_code == 200, "rmdir failed: %s" % resp.text[:200])
        _check(report, "folder-deletion", folder_deletion)

        source = "hello.c"

        def code_writing():
            resp = client.fs_create(ctx["token"], source, "file")
            _expect(resp.status_code == 200, "create failed: %s" % resp.text[:200])
            wrote = client.fs_write(ctx["token"], source, _HELLO_C.encode())
            _expect(wrote.status_code == 200, "write failed: %s" % wrote.text[:200])
            back = client.fs_read(ctx["token"], source)
            _expect(back.status_code == 200, "read-back failed")
            _expect(back.content == _HELLO_C.encode(),
                    "stored source differs from what was written")
        _check(report, "code-writing", code_writing)

        def code_compiling():
            resp = client.run(ctx["token"], source)
            _expect(resp.status_code == 200, "run failed: %s" % resp.text[:200])
            body = resp.json()
            _expect(body["compile_ok"], "compile failed: %s"
                    % body.get("compile_stderr", "")[:300])
            _expect(body["exit_status"] == 0, "program exit %r" % body["exit_status"])
            _expect(body["stdout"] == "hello from the workspace\n",
                    "unexpected stdout %r" % body["stdout"][:120])
        _check(report, "code-compiling", code_compiling)

        def file_saving():
            wrote = client.fs_write(ctx["token"], source, _HELLO_C_SAVED.encode())
            _expect(wrote.status_code == 200, "save failed: %s" % wrote.text[:200])
            _expect(wrote.json()["size_bytes"] == len(_HELLO_C_SAVED.encode()),
                    "saved size not reflected")
            back = client.fs_read(ctx["token"], source)
            _expect(back.content == _HELLO_C_SAVED.encode(),
                    "saved content differs")
        _check(report, "file-saving", file_saving)

        def help_page():
            resp = client.help_page()
            _expect(resp.status_code == 200, "help page unavailable")
            _expect("text/html" in resp.headers.get("content-type", ""),
                    "help page is not html")
            _expect(len(resp.text) > 0, "help page is empty")
        _check(report, "help-page", help_page)

        def account_menu():
            resp = client.me(ctx["token"])
            _expect(resp.status_code == 200, "account view failed")
            body = resp.json()
            _expect(body["username"] == username and body["email"] == email,
                    "account view shows the wrong identity")
        _check(report, "account-menu", account_menu)

        def password_update():
            new_password = "rotated-%s" % secrets.token_hex(8)
            resp = client.change_password(ctx["token"], password, new_password)
            _expect(resp.status_code == 200, "password change failed: %s"
                    % resp.text[:200])
            old = client.login(username, password)
            _expect(old.status_code == 401, "old password still accepted")
            new = client.login(username, new_password)
            _expect(new.status_code == 200, "new password rejected")
            ctx["second_token"] = new.json()["token"]
        _check(report, "password-update", password_update)

        def logout():
            resp = client.logout(ctx["token"])
            _expect(resp.status_code == 200, "logout failed: %s" % resp.text[:200])
            stale = client.me(ctx["token"])
            _expect(stale.status_code == 401, "token survived logout")
            if "second_token" in ctx:
                client.logout(ctx["second_token"])
        _check(report, "logout", logout)

    return report
