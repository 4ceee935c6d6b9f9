import type { Api, SessionInfo } from "./api";

/** Everything a view needs from the application shell. */
export interface Ctx {
  api: Api;
  session: SessionInfo | null;
  setSession(info: SessionInfo | null): void;
  navigate(hash: string): void;
}
