/** Application shell: session bootstrap and hash routing.
 *
 * Routes: #/login, #/ide, #/admin, #/admin/users, #/admin/browse.
 * Unauthenticated visits land on the login page; non-admins asking for an
 * admin page are sent to the IDE.
 */

import { Api, type SessionInfo } from "./api";
import type { Ctx } from "./context";
import { loadSession } from "./session";
import { renderAdmin, type AdminPage } from "./views/admin";
import { renderIde } from "./views/ide";
import { renderLogin } from "./views/login";

export function boot(root: HTMLElement, api: Api = new Api()): Ctx {
  let session: SessionInfo | null = loadSession();
  if (session) api.token = session.token;

  // render() runs here for every navigate(); the hashchange listener only
  // covers back/forward and hand-edited URLs. Echoes of our own hash
  // assignments are recognized by comparing against the hash already on
  // screen, which stays correct even when several assignments queue up.
  let renderedHash: string | null = null;

  const ctx: Ctx = {
    api,
    get session() {
      return session;
    },
    setSession(info: SessionInfo | null) {
      session = info;
      api.token = info ? info.token : null;
    },
    navigate(hash: string) {
      if (location.hash !== hash) location.hash = hash;
      render();
    },
  };

  function render(): void {
    const hash = location.hash || "#/";
    renderedHash = hash;
    if (!session) {
      renderLogin(ctx, root);
      return;
    }
    if (hash.startsWith("#/admin")) {
      if (session.role !== "admin") {
        ctx.navigate("#/ide");
        return;
      }
      const page: AdminPage =
        hash === "#/admin/users"
          ? "users"
          : hash === "#/admin/browse"
            ? "browse"
            : "dashboard";
      renderAdmin(ctx, root, page);
      return;
    }
    renderIde(ctx, root);
  }

  window.addEventListener("hashchange", () => {
    if ((location.hash || "#/") !== renderedHash) render();
  });
  render();
  return ctx;
}
