/** Small DOM helpers shared by the views. Text is always assigned through
 * textContent so nothing user- or program-controlled is parsed as markup. */

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  children: (Node | string)[] = [],
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (key === "class") node.className = value;
    else node.setAttribute(key, value);
  }
  for (const child of children) {
    node.append(typeof child === "string" ? document.createTextNode(child) : child);
  }
  return node;
}

export function clear(node: HTMLElement): void {
  while (node.firstChild) node.removeChild(node.firstChild);
}

export function formatBytes(n: number): string {
  if (n < 1024) return `${n} B`;
  if (n < 1024 * 1024) return `${(n / 1024).toFixed(1)} KiB`;
  if (n < 1024 * 1024 * 1024) return `${(n / (1024 * 1024)).toFixed(1)} MiB`;
  return `${(n / (1024 * 1024 * 1024)).toFixed(2)} GiB`;
}

export function formatTimestamp(seconds: number | null): string {
  if (seconds === null) return "never";
  return new Date(seconds * 1000).toLocaleString();
}

/** Modal text prompt; resolves null on cancel. Used instead of
 * window.prompt so flows stay scriptable. */
export function promptDialog(
  label: string,
  initial = "",
  type: "text" | "password" = "text",
): Promise<string | null> {
  return new Promise((resolve) => {
    const input = el("input", {
      type,
      class: "dialog-input",
      value: initial,
    });
    input.value = initial;
    const ok = el("button", { class: "primary", type: "submit" }, ["OK"]);
    const cancel = el("button", { type: "button" }, ["Cancel"]);
    const form = el("form", { class: "dialog" }, [
      el("label", {}, [label]),
      input,
      el("div", { class: "dialog-buttons" }, [cancel, ok]),
    ]);
    const backdrop = el("div", { class: "backdrop" }, [form]);
    const done = (value: string | null) => {
      backdrop.remove();
      resolve(value);
    };
    form.addEventListener("submit", (ev) => {
      ev.preventDefault();
      done(input.value);
    });
    cancel.addEventListener("click", () => done(null));
    backdrop.addEventListener("click", (ev) => {
      if (ev.target === backdrop) done(null);
    });
    document.body.append(backdrop);
    input.focus();
  });
}

export function confirmDialog(question: string): Promise<boolean> {
  return new Promise((resolve) => {
    const yes = el("button", { class: "primary danger", type: "button" }, ["Delete"]);
    const no = el("button", { type: "button" }, ["Cancel"]);
    const box = el("div", { class: "dialog" }, [
      el("label", {}, [question]),
      el("div", { class: "dialog-buttons" }, [no, yes]),
    ]);
    const backdrop = el("div", { class: "backdrop" }, [box]);
    const done = (value: boolean) => {
      backdrop.remove();
      resolve(value);
    };
    yes.addEventListener("click", () => done(true));
    no.addEventListener("click", () => done(false));
    backdrop.addEventListener("click", (ev) => {
      if (ev.target === backdrop) done(false);
    });
    document.body.append(backdrop);
  });
}

/** One-line status bar message; `kind` picks the color. */
export function flash(host: HTMLElement, message: string, kind: "ok" | "error"): void {
  clear(host);
  host.append(el("span", { class: `flash flash-${kind}` }, [message]));
}
