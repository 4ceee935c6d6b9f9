/** Shared page header: brand, navigation, help link, account menu. */

import type { Ctx } from "../context";
import { clearSession } from "../session";
import { clear, el, flash, formatBytes, promptDialog } from "../ui";

export function appHeader(ctx: Ctx, statusHost: HTMLElement): HTMLElement {
  const session = ctx.session!;
  const nav = el("nav", { class: "top-nav" });
  if (session.role === "admin") {
    nav.append(
      navLink(ctx, "#/admin", "Dashboard"),
      navLink(ctx, "#/admin/users", "Users"),
      navLink(ctx, "#/admin/browse", "Directories"),
      navLink(ctx, "#/ide", "IDE"),
    );
  }

  const helpLink = el(
    "a",
    { class: "help-link", href: ctx.api.base + "/help", target: "_blank" },
    ["Help"],
  );

  const accountButton = el("button", { class: "account-button", type: "button" }, [
    session.username,
  ]);
  const menu = el("div", { class: "account-menu hidden" });
  accountButton.addEventListener("click", async (ev) => {
    ev.stopPropagation();
    if (!menu.classList.contains("hidden")) {
      menu.classList.add("hidden");
      return;
    }
    await fillAccountMenu(ctx, menu, statusHost);
    menu.classList.remove("hidden");
  });
  document.addEventListener("click", () => menu.classList.add("hidden"));

  return el("header", { class: "top-bar" }, [
    el("span", { class: "brand" }, ["cloudide"]),
    nav,
    el("div", { class: "top-right" }, [helpLink, accountButton, menu]),
  ]);
}

function navLink(ctx: Ctx, hash: string, label: string): HTMLElement {
  const active = (location.hash || "#/") === hash;
  const a = el("a", { class: "nav-link" + (active ? " active" : ""), href: hash }, [
    label,
  ]);
  a.addEventListener("click", (ev) => {
    ev.preventDefault();
    ctx.navigate(hash);
  });
  return a;
}

async function fillAccountMenu(
  ctx: Ctx,
  menu: HTMLElement,
  statusHost: HTMLElement,
): Promise<void> {
  clear(menu);
  try {
    const info = await ctx.api.me();
    menu.append(
      el("div", { class: "account-info" }, [
        el("div", { class: "account-name" }, [info.username]),
        el("div", { class: "account-line" }, [info.email]),
        el("div", { class: "account-line" }, [`role: ${info.role}`]),
        el("div", { class: "account-line" }, [
          `storage: ${formatBytes(info.used_bytes)} of ${formatBytes(info.storage_limit_bytes)}`,
        ]),
      ]),
    );
  } catch {
    menu.append(el("div", { class: "account-info" }, ["account unavailable"]));
  }

  const changePw = el("button", { class: "menu-item", type: "button" }, [
    "Change password",
  ]);
  changePw.addEventListener("click", async (ev) => {
    ev.stopPropagation();
    menu.classList.add("hidden");
    const oldPw = await promptDialog("Current password", "", "password");
    if (oldPw === null) return;
    const newPw = await promptDialog(
      "New password (at least 8 characters)",
      "",
      "password",
    );
    if (newPw === null) return;
    try {
      await ctx.api.changePassword(oldPw, newPw);
      flash(statusHost, "password updated", "ok");
    } catch (err) {
      flash(statusHost, String((err as Error).message), "error");
    }
  });

  const signOut = el("button", { class: "menu-item", type: "button" }, [
    "Sign out",
  ]);
  signOut.addEventListener("click", async () => {
    try {
      await ctx.api.logout();
    } catch {
      /* token may already be dead; sign out locally regardless */
    }
    clearSession();
    ctx.setSession(null);
    ctx.navigate("#/login");
  });

  menu.append(changePw, signOut);
}
