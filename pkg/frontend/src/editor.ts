/** Code editor: a textarea for input with a highlighted mirror behind it.
 *
 * The mirror `pre` renders the highlighter's output; the textarea on top is
 * transparent except for the caret. Both use the same metrics so they line
 * up, and scrolling is forwarded. This keeps the whole editor dependency
 * free and scriptable from tests.
 */

import { highlight } from "./highlight";
import { languageForFilename, type LanguageMode } from "./lang";
import { el } from "./ui";

export class CodeEditor {
  readonly root: HTMLElement;
  readonly textarea: HTMLTextAreaElement;
  private mirror: HTMLElement;
  private savedText = "";
  private path: string | null = null;
  onDirtyChange: ((dirty: boolean) => void) | null = null;

  constructor() {
    this.mirror = el("code", { class: "editor-mirror-code" });
    this.textarea = el("textarea", {
      class: "editor-input",
      spellcheck: "false",
      autocomplete: "off",
      autocapitalize: "off",
      "aria-label": "code editor",
    });
    this.root = el("div", { class: "editor" }, [
      el("pre", { class: "editor-mirror" }, [this.mirror]),
      this.textarea,
    ]);
    this.textarea.addEventListener("input", () => this.render());
    this.textarea.addEventListener("scroll", () => {
      const pre = this.mirror.parentElement!;
      pre.scrollTop = this.textarea.scrollTop;
      pre.scrollLeft = this.textarea.scrollLeft;
    });
    this.textarea.addEventListener("keydown", (ev) => {
      if (ev.key === "Tab") {
        ev.preventDefault();
        this.insertAtCursor("    ");
      }
    });
    this.textarea.disabled = true;
    this.render();
  }

  get openPath(): string | null {
    return this.path;
  }

  get languageMode(): LanguageMode | null {
    return this.path ? languageForFilename(this.path) : null;
  }

  open(path: string, text: string): void {
    this.path = path;
    this.textarea.value = text;
    this.savedText = text;
    this.textarea.disabled = false;
    this.render();
  }

  close(): void {
    this.path = null;
    this.textarea.value = "";
    this.savedText = "";
    this.textarea.disabled = true;
    this.render();
  }

  value(): string {
    return this.textarea.value;
  }

  setValue(text: string): void {
    this.textarea.value = text;
    this.render();
  }

  isDirty(): boolean {
    return this.path !== null && this.textarea.value !== this.savedText;
  }

  markSaved(): void {
    this.savedText = this.textarea.value;
    this.render();
  }

  private insertAtCursor(text: string): void {
    const start = this.textarea.selectionStart ?? this.textarea.value.length;
    const end = this.textarea.selectionEnd ?? start;
    const v = this.textarea.value;
    this.textarea.value = v.slice(0, start) + text + v.slice(end);
    this.textarea.selectionStart = this.textarea.selectionEnd = start + text.length;
    this.render();
  }

  private render(): void {
    // trailing newline keeps the mirror's last line height in sync
    this.mirror.innerHTML = highlight(this.textarea.value, this.languageMode) + "\n";
    if (this.onDirtyChange) this.onDirtyChange(this.isDirty());
  }
}
