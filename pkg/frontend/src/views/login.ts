/** Login and registration page. Registration routes back to sign-in, it
 * never creates a session by itself. */

import { ApiError } from "../api";
import type { Ctx } from "../context";
import { saveSession } from "../session";
import { clear, el, flash } from "../ui";

export function renderLogin(ctx: Ctx, host: HTMLElement): void {
  clear(host);
  const status = el("div", { class: "status-line" });

  const loginUser = field("username");
  const loginPass = field("password", "password");
  const loginButton = el("button", { class: "primary", type: "submit" }, [
    "Sign in",
  ]);
  const loginForm = el("form", { class: "card", "data-view": "login" }, [
    el("h2", {}, ["Sign in"]),
    labelled("Username", loginUser),
    labelled("Password", loginPass),
    loginButton,
  ]);
  loginForm.addEventListener("submit", async (ev) => {
    ev.preventDefault();
    loginButton.disabled = true;
    try {
      const info = await ctx.api.login(loginUser.value, loginPass.value);
      saveSession(info);
      ctx.setSession(info);
      ctx.navigate(info.role === "admin" ? "#/admin" : "#/ide");
    } catch (err) {
      flash(status, errorText(err), "error");
    } finally {
      loginButton.disabled = false;
    }
  });

  const regUser = field("new-username");
  const regEmail = field("email", "email");
  const regPass = field("new-password", "password");
  const regButton = el("button", { type: "submit" }, ["Create account"]);
  const regForm = el("form", { class: "card", "data-view": "register" }, [
    el("h2", {}, ["Register"]),
    labelled("Username", regUser),
    labelled("Email", regEmail),
    labelled("Password (at least 8 characters)", regPass),
    regButton,
  ]);
  regForm.addEventListener("submit", async (ev) => {
    ev.preventDefault();
    regButton.disabled = true;
    try {
      await ctx.api.register(regUser.value, regEmail.value, regPass.value);
      loginUser.value = regUser.value;
      flash(status, "account created, sign in to continue", "ok");
    } catch (err) {
      flash(status, errorText(err), "error");
    } finally {
      regButton.disabled = false;
    }
  });

  host.append(
    el("div", { class: "login-page" }, [
      el("h1", { class: "brand" }, ["cloudide"]),
      status,
      el("div", { class: "login-cards" }, [loginForm, regForm]),
    ]),
  );
}

function field(name: string, type = "text"): HTMLInputElement {
  return el("input", { type, name, class: "field", autocomplete: "off" });
}

function labelled(text: string, input: HTMLElement): HTMLElement {
  return el("label", { class: "labelled" }, [
    el("span", {}, [text]),
    input,
  ]);
}

function errorText(err: unknown): string {
  if (err instanceof ApiError) return `${err.code}: ${err.message}`;
  return String((err as Error).message ?? err);
}
