/** The user-facing IDE page: file tree, editor, run controls, output bar. */

import { ApiError, type FsNode } from "../api";
import type { Ctx } from "../context";
import { downloads } from "../downloads";
import { CodeEditor } from "../editor";
import { OutputPane } from "../output";
import { FileTree, baseName, parentPath } from "../tree";
import { clear, confirmDialog, el, flash, promptDialog } from "../ui";
import { appHeader } from "./chrome";

function joinPath(parent: string, name: string): string {
  return parent ? `${parent}/${name}` : name;
}

export function renderIde(ctx: Ctx, host: HTMLElement): void {
  clear(host);
  const status = el("div", { class: "status-line" });
  const editor = new CodeEditor();
  editor.close();
  const output = new OutputPane();

  const openName = el("span", { class: "open-name" }, ["no file open"]);
  const dirtyDot = el("span", { class: "dirty-dot hidden", title: "unsaved changes" }, ["●"]);
  editor.onDirtyChange = (dirty) => dirtyDot.classList.toggle("hidden", !dirty);

  const saveButton = el("button", { type: "button", "data-action": "save" }, ["Save"]);
  const runButton = el("button", { class: "primary", type: "button", "data-action": "run" }, ["Run"]);
  const buildButton = el("button", { type: "button", "data-action": "build" }, [
    "Build & download",
  ]);
  output.onRunningChange = (running) => {
    runButton.disabled = running;
    buildButton.disabled = running;
  };

  const argsInput = el("input", {
    type: "text",
    class: "args-input",
    name: "args",
    placeholder: "program arguments",
  });
  const stdinInput = el("textarea", {
    class: "stdin-input",
    name: "stdin",
    placeholder: "stdin",
    rows: "2",
  });

  const fail = (err: unknown) => {
    const msg =
      err instanceof ApiError ? `${err.code}: ${err.message}` : String(err);
    flash(status, msg, "error");
  };

  const saveOpenFile = async (): Promise<boolean> => {
    const path = editor.openPath;
    if (path === null) return false;
    await ctx.api.writeFile(path, editor.value());
    editor.markSaved();
    return true;
  };

  const tree: FileTree = new FileTree(
    (path) => ctx.api.list(path),
    {
      open: async (node: FsNode) => {
        try {
          if (editor.isDirty()) await saveOpenFile();
          const text = await ctx.api.readFile(node.path);
          editor.open(node.path, text);
          openName.textContent = node.path;
          tree.select(node.path);
        } catch (err) {
          fail(err);
        }
      },
      newFile: async (parent) => {
        const name = await promptDialog("New file name");
        if (!name) return;
        try {
          await ctx.api.createEntry(joinPath(parent, name), "file");
          await tree.refresh();
        } catch (err) {
          fail(err);
        }
      },
      newFolder: async (parent) => {
        const name = await promptDialog("New folder name");
        if (!name) return;
        try {
          await ctx.api.createEntry(joinPath(parent, name), "folder");
          await tree.refresh();
        } catch (err) {
          fail(err);
        }
      },
      rename: async (node) => {
        const name = await promptDialog("Rename to", baseName(node.path));
        if (!name || name === baseName(node.path)) return;
        const target = joinPath(parentPath(node.path), name);
        try {
          if (editor.openPath === node.path && editor.isDirty()) await saveOpenFile();
          await ctx.api.rename(node.path, target);
          if (editor.openPath === node.path) {
            editor.open(target, editor.value());
            openName.textContent = target;
          }
          await tree.refresh();
          tree.select(editor.openPath);
        } catch (err) {
          fail(err);
        }
      },
      remove: async (node) => {
        const sure = await confirmDialog(`Delete ${node.path}?`);
        if (!sure) return;
        try {
          await ctx.api.deleteEntry(node.path);
          const open = editor.openPath;
          if (open !== null && (open === node.path || open.startsWith(node.path + "/"))) {
            editor.close();
            openName.textContent = "no file open";
          }
          await tree.refresh();
        } catch (err) {
          fail(err);
        }
      },
      download: async (node) => {
        try {
          const { filename, bytes } = await ctx.api.download(node.path);
          downloads.save(filename, bytes);
          flash(status, `downloaded ${filename}`, "ok");
        } catch (err) {
          fail(err);
        }
      },
    },
  );

  saveButton.addEventListener("click", async () => {
    try {
      if (await saveOpenFile()) {
        flash(status, "saved", "ok");
        await tree.refresh();
        tree.select(editor.openPath);
      }
    } catch (err) {
      fail(err);
    }
  });

  runButton.addEventListener("click", async () => {
    if (output.isRunning()) return;
    const path = editor.openPath;
    if (path === null) {
      flash(status, "open a file first", "error");
      return;
    }
    output.setRunning(true);
    try {
      if (editor.isDirty()) await saveOpenFile();
      const result = await ctx.api.run(path, argsInput.value, stdinInput.value);
      output.render(result);
    } catch (err) {
      if (err instanceof ApiError) output.renderApiError(err);
      else {
        output.setRunning(false);
        fail(err);
      }
    }
  });

  buildButton.addEventListener("click", async () => {
    if (output.isRunning()) return;
    const path = editor.openPath;
    if (path === null) {
      flash(status, "open a file first", "error");
      return;
    }
    output.setRunning(true);
    try {
      if (editor.isDirty()) await saveOpenFile();
      const result = await ctx.api.build(path);
      output.render(result);
      if (result.compile_ok && result.artifact_rel_path) {
        const { filename, bytes } = await ctx.api.download(result.artifact_rel_path);
        downloads.save(filename, bytes);
        flash(status, `artifact ${result.artifact_rel_path} downloaded`, "ok");
        await tree.refresh();
        tree.select(editor.openPath);
      }
    } catch (err) {
      if (err instanceof ApiError) output.renderApiError(err);
      else {
        output.setRunning(false);
        fail(err);
      }
    }
  });

  host.append(
    appHeader(ctx, status),
    status,
    el("div", { class: "ide-layout" }, [
      el("aside", { class: "ide-side" }, [
        el("div", { class: "side-title" }, ["workspace"]),
        tree.root,
      ]),
      el("section", { class: "ide-main" }, [
        el("div", { class: "toolbar" }, [
          openName,
          dirtyDot,
          el("span", { class: "spacer" }),
          saveButton,
          runButton,
          buildButton,
        ]),
        el("div", { class: "run-inputs" }, [argsInput, stdinInput]),
        editor.root,
        output.root,
      ]),
    ]),
  );
  void tree.refresh();
}
