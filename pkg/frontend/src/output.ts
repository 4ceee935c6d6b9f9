/** Output bar under the editor.
 *
 * Program text reaches the DOM exclusively through textContent, so
 * whatever a program prints is shown as text and never parsed as markup.
 */

import { ApiError, type RunResult } from "./api";
import { clear, el } from "./ui";

export class OutputPane {
  readonly root: HTMLElement;
  private body: HTMLElement;
  private running = false;
  onRunningChange: ((running: boolean) => void) | null = null;

  constructor() {
    this.body = el("div", { class: "output-body" }, [
      el("span", { class: "output-hint" }, ["run a file to see its output here"]),
    ]);
    this.root = el("div", { class: "output" }, [
      el("div", { class: "output-title" }, ["output"]),
      this.body,
    ]);
  }

  isRunning(): boolean {
    return this.running;
  }

  setRunning(flag: boolean): void {
    this.running = flag;
    if (flag) {
      clear(this.body);
      this.body.append(
        el("span", { class: "output-running" }, ["compiling and running…"]),
      );
    }
    if (this.onRunningChange) this.onRunningChange(flag);
  }

  render(result: RunResult): void {
    this.setRunning(false);
    clear(this.body);
    if (!result.compile_ok) {
      this.body.append(
        el("div", { class: "output-label output-error" }, ["compile errors"]),
        block("output-compile-errors", result.compile_stderr),
      );
      return;
    }
    if (result.stdout) this.body.append(block("output-stdout", result.stdout));
    if (result.stderr) {
      this.body.append(
        el("div", { class: "output-label" }, ["stderr"]),
        block("output-stderr", result.stderr),
      );
    }
    this.body.append(statusLine(result));
  }

  renderApiError(err: ApiError): void {
    this.setRunning(false);
    clear(this.body);
    const cls =
      err.code === "LimitReached" || err.code === "QuotaExceeded"
        ? "output-limit"
        : err.code === "UnsupportedExtension"
          ? "output-unsupported"
          : "output-error";
    this.body.append(
      el("div", { class: `output-label ${cls}`, "data-code": err.code }, [
        err.code,
      ]),
      block("output-error-message", err.message),
    );
  }
}

function block(cls: string, text: string): HTMLElement {
  const pre = el("pre", { class: `output-block ${cls}` });
  pre.textContent = text;
  return pre;
}

function statusLine(result: RunResult): HTMLElement {
  const parts: HTMLElement[] = [];
  if (result.exit_status === "timeout") {
    parts.push(
      el("span", { class: "output-status output-timeout" }, [
        `timed out after ${result.wall_ms} ms`,
      ]),
    );
  } else if (result.exit_status === "killed-output-cap") {
    parts.push(
      el("span", { class: "output-status output-capped" }, [
        "output limit exceeded, run killed",
      ]),
    );
  } else {
    parts.push(
      el("span", { class: "output-status" }, [
        `exit ${result.exit_status} · ${result.wall_ms} ms`,
      ]),
    );
  }
  if (result.truncated) {
    parts.push(el("span", { class: "output-truncated" }, ["output truncated"]));
  }
  return el("div", { class: "output-statusline" }, parts);
}
