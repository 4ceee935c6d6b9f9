import type { SessionInfo } from "./api";

const KEY = "cloudide.session";

export function saveSession(info: SessionInfo): void {
  localStorage.setItem(KEY, JSON.stringify(info));
}

export function loadSession(): SessionInfo | null {
  const raw = localStorage.getItem(KEY);
  if (!raw) return null;
  try {
    const doc = JSON.parse(raw);
    if (doc && typeof doc.token === "string") return doc as SessionInfo;
  } catch {
    /* corrupt entry, drop it */
  }
  localStorage.removeItem(KEY);
  return null;
}

export function clearSession(): void {
  localStorage.removeItem(KEY);
}
