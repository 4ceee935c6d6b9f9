/** Typed client for the service's JSON API.
 *
 * Every error response has the shape {code, message}; both are carried
 * on ApiError so views can branch on the code and show the message.
 */

export class ApiError extends Error {
  code: string;
  status: number;

  constructor(code: string, message: string, status: number) {
    super(message);
    this.code = code;
    this.status = status;
  }
}

export interface FsNode {
  path: string;
  kind: "file" | "folder";
  size_bytes: number;
  modified_at: number;
}

export interface RunResult {
  compile_ok: boolean;
  compile_stderr: string;
  exit_status: number | string;
  stdout: string;
  stderr: string;
  wall_ms: number;
  truncated: boolean;
  artifact_rel_path: string | null;
}

export interface SessionInfo {
  token: string;
  user_id: string;
  username: string;
  role: "admin" | "user";
}

export interface AccountInfo {
  id: string;
  username: string;
  email: string;
  role: "admin" | "user";
  storage_limit_bytes: number;
  used_bytes: number;
}

export interface UserRow extends AccountInfo {
  status: "online" | "offline";
}

export interface DashboardStats {
  active_users: number;
  registered_users: number;
  compiled_files: number;
  directory_space_bytes: number;
  last_active_session: number | null;
  max_total_disk_bytes: number;
  max_compiles: number;
  disk_warning: boolean;
}

async function toError(resp: Response): Promise<ApiError> {
  let code = "InternalError";
  let message = resp.statusText || "request failed";
  try {
    const body = await resp.json();
    if (body && typeof body.code === "string") {
      code = body.code;
      message = body.message ?? message;
    }
  } catch {
    /* non-JSON error body, keep the status text */
  }
  return new ApiError(code, message, resp.status);
}

export class Api {
  /** Prefix for every request; empty when the SPA is served by the service. */
  base = "";
  token: string | null = null;

  private headers(): Record<string, string> {
    return this.token ? { Authorization: `Bearer ${this.token}` } : {};
  }

  private async request(
    method: string,
    path: string,
    opts: { json?: unknown; body?: BodyInit } = {},
  ): Promise<Response> {
    const headers: Record<string, string> = this.headers();
    let body: BodyInit | undefined = opts.body;
    if (opts.json !== undefined) {
      headers["Content-Type"] = "application/json";
      body = JSON.stringify(opts.json);
    }
    const resp = await fetch(this.base + path, { method, headers, body });
    if (!resp.ok) throw await toError(resp);
    return resp;
  }

  private async json<T>(method: string, path: string, json?: unknown): Promise<T> {
    const resp = await this.request(method, path, { json });
    return (await resp.json()) as T;
  }

  // ----- accounts -----

  register(username: string, email: string, password: string) {
    return this.json<{ user_id: string }>("POST", "/api/register", {
      username,
      email,
      password,
    });
  }

  async login(username: string, password: string): Promise<SessionInfo> {
    const info = await this.json<SessionInfo>("POST", "/api/login", {
      username,
      password,
    });
    this.token = info.token;
    return info;
  }

  async logout(): Promise<void> {
    await this.json("POST", "/api/logout");
    this.token = null;
  }

  changePassword(oldPassword: string, newPassword: string) {
    return this.json<object>("PUT", "/api/password", {
      old_password: oldPassword,
      new_password: newPassword,
    });
  }

  me() {
    return this.json<AccountInfo>("GET", "/api/me");
  }

  // ----- workspace -----

  async list(path = ""): Promise<FsNode[]> {
    const doc = await this.json<{ entries: FsNode[] }>(
      "GET",
      `/api/fs/list?path=${encodeURIComponent(path)}`,
    );
    return doc.entries;
  }

  createEntry(path: string, kind: "file" | "folder") {
    return this.json<object>("POST", "/api/fs/entry", { path, kind });
  }

  deleteEntry(path: string) {
    return this.json<object>(
      "DELETE",
      `/api/fs/entry?path=${encodeURIComponent(path)}`,
    );
  }

  async readFile(path: string): Promise<string> {
    const resp = await this.request(
      "GET",
      `/api/fs/file?path=${encodeURIComponent(path)}`,
    );
    return resp.text();
  }

  writeFile(path: string, content: string | Uint8Array) {
    return this.request("PUT", `/api/fs/file?path=${encodeURIComponent(path)}`, {
      body: content as BodyInit,
    });
  }

  rename(path: string, newPath: string) {
    return this.json<object>("PUT", "/api/fs/rename", {
      path,
      new_path: newPath,
    });
  }

  /** Fetch a file as bytes plus the server-suggested filename. */
  async download(path: string): Promise<{ filename: string; bytes: Uint8Array }> {
    const resp = await this.request(
      "GET",
      `/api/fs/download?path=${encodeURIComponent(path)}`,
    );
    const suggested = resp.headers.get("X-Suggested-Filename");
    const fallback = path.split("/").pop() || "download";
    const filename = suggested ? decodeURIComponent(suggested) : fallback;
    const bytes = new Uint8Array(await resp.arrayBuffer());
    return { filename, bytes };
  }

  // ----- compile and run -----

  run(path: string, args = "", stdin = "") {
    return this.json<RunResult>("POST", "/api/run", { path, args, stdin });
  }

  build(path: string) {
    return this.json<RunResult>("POST", "/api/build", { path });
  }

  // ----- admin -----

  adminStats() {
    return this.json<DashboardStats>("GET", "/api/admin/stats");
  }

  adminSetLimits(maxTotalDiskBytes: number, maxCompiles: number, reset = false) {
    return this.json<object>("PUT", "/api/admin/limits", {
      max_total_disk_bytes: maxTotalDiskBytes,
      max_compiles: maxCompiles,
      reset_compiled_count: reset,
    });
  }

  async adminUsers(): Promise<UserRow[]> {
    const doc = await this.json<{ users: UserRow[] }>("GET", "/api/admin/users");
    return doc.users;
  }

  adminUpdateUser(
    userId: string,
    patch: { email?: string; storage_limit_bytes?: number; role?: string },
  ) {
    return this.json<object>("PUT", `/api/admin/users/${userId}`, patch);
  }

  async adminBrowse(userId: string, path = ""): Promise<FsNode[]> {
    const doc = await this.json<{ entries: FsNode[] }>(
      "GET",
      `/api/admin/fs/${userId}/list?path=${encodeURIComponent(path)}`,
    );
    return doc.entries;
  }
}
