/** Administrator pages: dashboard with warning limits, user management,
 * and a read-only browser over any user's workspace. */

import { ApiError, type UserRow } from "../api";
import type { Ctx } from "../context";
import { FileTree } from "../tree";
import { clear, el, flash, formatBytes, formatTimestamp } from "../ui";
import { appHeader } from "./chrome";

export type AdminPage = "dashboard" | "users" | "browse";

export function renderAdmin(ctx: Ctx, host: HTMLElement, page: AdminPage): void {
  clear(host);
  const status = el("div", { class: "status-line" });
  const body = el("main", { class: "admin-body" });
  host.append(appHeader(ctx, status), status, body);

  const fail = (err: unknown) => {
    const msg =
      err instanceof ApiError ? `${err.code}: ${err.message}` : String(err);
    flash(status, msg, "error");
  };

  if (page === "dashboard") void renderDashboard(ctx, body, status, fail);
  else if (page === "users") void renderUsers(ctx, body, fail);
  else void renderBrowse(ctx, body, fail);
}

async function renderDashboard(
  ctx: Ctx,
  body: HTMLElement,
  status: HTMLElement,
  fail: (err: unknown) => void,
): Promise<void> {
  let stats;
  try {
    stats = await ctx.api.adminStats();
  } catch (err) {
    fail(err);
    return;
  }

  const cards = el("div", { class: "stat-cards" }, [
    statCard("active users", String(stats.active_users)),
    statCard("registered users", String(stats.registered_users)),
    statCard("compiled files", String(stats.compiled_files)),
    statCard("directory space", formatBytes(stats.directory_space_bytes)),
    statCard("last active session", formatTimestamp(stats.last_active_session)),
  ]);

  const diskInput = numberInput("max-disk", stats.max_total_disk_bytes);
  const compilesInput = numberInput("max-compiles", stats.max_compiles);
  const resetBox = el("input", { type: "checkbox", name: "reset-compiles" });
  const apply = el("button", { class: "primary", type: "submit" }, ["Apply"]);
  const limitsForm = el("form", { class: "limits-form" }, [
    el("h3", {}, ["warning limits"]),
    el("label", { class: "labelled" }, [
      el("span", {}, ["max total disk bytes"]),
      diskInput,
    ]),
    el("label", { class: "labelled" }, [
      el("span", {}, ["max compiled files"]),
      compilesInput,
    ]),
    el("label", { class: "check-label" }, [
      resetBox,
      el("span", {}, ["reset compiled-files counter"]),
    ]),
    apply,
  ]);
  limitsForm.addEventListener("submit", async (ev) => {
    ev.preventDefault();
    try {
      await ctx.api.adminSetLimits(
        Number(diskInput.value),
        Number(compilesInput.value),
        resetBox.checked,
      );
      flash(status, "limits updated", "ok");
      renderAdmin(ctx, body.parentElement as HTMLElement, "dashboard");
    } catch (err) {
      fail(err);
    }
  });

  body.append(el("h2", {}, ["Dashboard"]));
  if (stats.disk_warning) {
    body.append(
      el("div", { class: "warning-banner" }, [
        `warning: directory space ${formatBytes(stats.directory_space_bytes)} exceeds the ${formatBytes(stats.max_total_disk_bytes)} limit`,
      ]),
    );
  }
  body.append(cards, limitsForm);
}

function statCard(label: string, value: string): HTMLElement {
  return el("div", { class: "stat-card", "data-stat": label }, [
    el("div", { class: "stat-value" }, [value]),
    el("div", { class: "stat-label" }, [label]),
  ]);
}

function numberInput(name: string, value: number): HTMLInputElement {
  const input = el("input", {
    type: "number",
    name,
    class: "field",
    min: "0",
  });
  input.value = String(value);
  return input;
}

async function renderUsers(
  ctx: Ctx,
  body: HTMLElement,
  fail: (err: unknown) => void,
): Promise<void> {
  let users: UserRow[];
  try {
    users = await ctx.api.adminUsers();
  } catch (err) {
    fail(err);
    return;
  }

  const rows = users.map((user) => {
    const manage = el("button", { type: "button", class: "manage-button" }, [
      "Manage",
    ]);
    manage.addEventListener("click", async () => {
      const patch = await editUserDialog(user);
      if (!patch) return;
      try {
        await ctx.api.adminUpdateUser(user.id, patch);
        renderAdmin(ctx, body.parentElement as HTMLElement, "users");
      } catch (err) {
        fail(err);
      }
    });
    return el("tr", { "data-username": user.username }, [
      el("td", {}, [user.username]),
      el("td", {}, [user.email]),
      el("td", { class: "col-storage" }, [
        `${formatBytes(user.used_bytes)} / ${formatBytes(user.storage_limit_bytes)}`,
      ]),
      el("td", { class: "col-status" }, [user.status]),
      el("td", {}, [user.role]),
      el("td", {}, [manage]),
    ]);
  });

  body.append(
    el("h2", {}, ["Users"]),
    el("table", { class: "user-table" }, [
      el("thead", {}, [
        el("tr", {}, [
          el("th", {}, ["Username"]),
          el("th", {}, ["Email"]),
          el("th", {}, ["Storage"]),
          el("th", {}, ["Status"]),
          el("th", {}, ["Role"]),
          el("th", {}, [""]),
        ]),
      ]),
      el("tbody", {}, rows),
    ]),
  );
}

/** Modal form for the manage action; resolves null on cancel. */
function editUserDialog(
  user: UserRow,
): Promise<{ email: string; storage_limit_bytes: number; role: string } | null> {
  return new Promise((resolve) => {
    const email = el("input", { type: "email", class: "dialog-input", name: "email" });
    email.value = user.email;
    const storage = el("input", {
      type: "number",
      class: "dialog-input",
      name: "storage",
      min: "1",
    });
    storage.value = String(user.storage_limit_bytes);
    const role = el("select", { class: "dialog-input", name: "role" }, [
      el("option", { value: "user" }, ["user"]),
      el("option", { value: "admin" }, ["admin"]),
    ]);
    (role as HTMLSelectElement).value = user.role;
    const save = el("button", { class: "primary", type: "submit" }, ["Save"]);
    const cancel = el("button", { type: "button" }, ["Cancel"]);
    const form = el("form", { class: "dialog" }, [
      el("label", {}, [`Manage ${user.username}`]),
      el("label", { class: "labelled" }, [el("span", {}, ["email"]), email]),
      el("label", { class: "labelled" }, [
        el("span", {}, ["storage limit bytes"]),
        storage,
      ]),
      el("label", { class: "labelled" }, [el("span", {}, ["role"]), role]),
      el("div", { class: "dialog-buttons" }, [cancel, save]),
    ]);
    const backdrop = el("div", { class: "backdrop" }, [form]);
    const done = (
      value: { email: string; storage_limit_bytes: number; role: string } | null,
    ) => {
      backdrop.remove();
      resolve(value);
    };
    form.addEventListener("submit", (ev) => {
      ev.preventDefault();
      done({
        email: email.value,
        storage_limit_bytes: Number(storage.value),
        role: (role as HTMLSelectElement).value,
      });
    });
    cancel.addEventListener("click", () => done(null));
    document.body.append(backdrop);
  });
}

async function renderBrowse(
  ctx: Ctx,
  body: HTMLElement,
  fail: (err: unknown) => void,
): Promise<void> {
  let users: UserRow[];
  try {
    users = await ctx.api.adminUsers();
  } catch (err) {
    fail(err);
    return;
  }

  const picker = el("select", { class: "field user-picker", name: "user" });
  for (const user of users) {
    picker.append(el("option", { value: user.id }, [user.username]));
  }
  const treeHost = el("div", { class: "browse-tree" });

  const showTree = (userId: string) => {
    clear(treeHost);
    const noop = () => undefined;
    const tree = new FileTree(
      (path) => ctx.api.adminBrowse(userId, path),
      {
        open: noop,
        newFile: noop,
        newFolder: noop,
        rename: noop,
        remove: noop,
        download: noop,
      },
      true, // read-only: admins inspect, they do not edit other trees
    );
    treeHost.append(tree.root);
    void tree.refresh();
  };

  picker.addEventListener("change", () => showTree(picker.value));

  body.append(
    el("h2", {}, ["Directories"]),
    el("label", { class: "labelled" }, [el("span", {}, ["user"]), picker]),
    treeHost,
  );
  if (users.length) showTree(users[0].id);
}
