import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import type { FsNode } from "../src/api";
import { FileTree, type TreeActions, baseName, parentPath } from "../src/tree";

const LISTING: Record<string, FsNode[]> = {
  "": [
    { path: "src", kind: "folder", size_bytes: 0, modified_at: 0 },
    { path: "main.c", kind: "file", size_bytes: 10, modified_at: 0 },
  ],
  src: [{ path: "src/util.c", kind: "file", size_bytes: 5, modified_at: 0 }],
};

function makeActions(): TreeActions & { calls: string[] } {
  const calls: string[] = [];
  return {
    calls,
    open: (n) => calls.push(`open:${n.path}`),
    newFile: (p) => calls.push(`newFile:${p}`),
    newFolder: (p) => calls.push(`newFolder:${p}`),
    rename: (n) => calls.push(`rename:${n.path}`),
    remove: (n) => calls.push(`remove:${n.path}`),
    download: (n) => calls.push(`download:${n.path}`),
  };
}

function row(tree: FileTree, path: string): HTMLElement {
  const found = tree.root.querySelector(`[data-path="${path}"]`);
  if (!found) throw new Error(`no row for ${path}`);
  return found as HTMLElement;
}

function menuLabels(): string[] {
  return [...document.querySelectorAll(".context-menu .context-item")].map(
    (b) => b.textContent ?? "",
  );
}

function rightClick(target: HTMLElement): void {
  target.dispatchEvent(
    new MouseEvent("contextmenu", { bubbles: true, cancelable: true }),
  );
}

describe("path helpers", () => {
  it("splits paths on forward slashes", () => {
    expect(baseName("a/b/c.txt")).toBe("c.txt");
    expect(baseName("top.c")).toBe("top.c");
    expect(parentPath("a/b/c.txt")).toBe("a/b");
    expect(parentPath("top.c")).toBe("");
  });
});

describe("FileTree", () => {
  let actions: ReturnType<typeof makeActions>;
  let tree: FileTree;

  beforeEach(async () => {
    document.body.innerHTML = "";
    actions = makeActions();
    tree = new FileTree(async (p) => LISTING[p] ?? [], actions);
    document.body.append(tree.root);
    await tree.refresh();
  });

  afterEach(() => {
    tree.closeMenu();
    vi.useRealTimers();
  });

  it("lists the workspace root", () => {
    expect(row(tree, "src").classList.contains("folder")).toBe(true);
    expect(row(tree, "main.c").classList.contains("file")).toBe(true);
  });

  it("expands folders on click and keeps them expanded across refresh", async () => {
    row(tree, "src").click();
    await vi.waitFor(() => row(tree, "src/util.c"));
    await tree.refresh();
    expect(tree.root.querySelector('[data-path="src/util.c"]')).toBeTruthy();
    // second click collapses
    row(tree, "src").click();
    await vi.waitFor(() => {
      if (tree.root.querySelector('[data-path="src/util.c"]')) {
        throw new Error("still expanded");
      }
    });
  });

  it("opens files on click", () => {
    row(tree, "main.c").click();
    expect(actions.calls).toEqual(["open:main.c"]);
  });

  it("offers the full menu on a folder row", () => {
    rightClick(row(tree, "src"));
    expect(menuLabels()).toEqual([
      "New file",
      "New folder",
      "Rename",
      "Delete",
      "Download",
    ]);
  });

  it("offers file actions on a file row", () => {
    rightClick(row(tree, "main.c"));
    expect(menuLabels()).toEqual(["Rename", "Delete", "Download"]);
  });

  it("offers creation at the root on background right-click", () => {
    rightClick(tree.root);
    expect(menuLabels()).toEqual(["New file", "New folder"]);
  });

  it("routes menu picks to the actions with the right paths", () => {
    rightClick(row(tree, "src"));
    const items = document.querySelectorAll<HTMLButtonElement>(".context-item");
    items[0].click(); // New file inside the folder itself
    expect(actions.calls).toEqual(["newFile:src"]);
    expect(document.querySelector(".context-menu")).toBeNull();

    rightClick(row(tree, "main.c"));
    document.querySelectorAll<HTMLButtonElement>(".context-item")[0].click();
    expect(actions.calls).toEqual(["newFile:src", "rename:main.c"]);
  });

  it("replaces any open menu instead of stacking menus", () => {
    rightClick(row(tree, "src"));
    rightClick(row(tree, "main.c"));
    expect(document.querySelectorAll(".context-menu").length).toBe(1);
    expect(menuLabels()).toEqual(["Rename", "Delete", "Download"]);
  });

  it("closes the menu on Escape and on a click elsewhere", () => {
    rightClick(row(tree, "src"));
    document.dispatchEvent(new KeyboardEvent("keydown", { key: "Escape" }));
    expect(document.querySelector(".context-menu")).toBeNull();

    rightClick(row(tree, "src"));
    document.body.click();
    expect(document.querySelector(".context-menu")).toBeNull();
  });

  it("opens the menu after a long press", () => {
    vi.useFakeTimers();
    const target = row(tree, "main.c");
    target.dispatchEvent(new Event("touchstart", { bubbles: true }));
    vi.advanceTimersByTime(599);
    expect(document.querySelector(".context-menu")).toBeNull();
    vi.advanceTimersByTime(1);
    expect(menuLabels()).toEqual(["Rename", "Delete", "Download"]);
  });

  it("cancels the long press when the finger moves or lifts", () => {
    vi.useFakeTimers();
    const target = row(tree, "main.c");
    target.dispatchEvent(new Event("touchstart", { bubbles: true }));
    vi.advanceTimersByTime(300);
    target.dispatchEvent(new Event("touchend", { bubbles: true }));
    vi.advanceTimersByTime(600);
    expect(document.querySelector(".context-menu")).toBeNull();

    target.dispatchEvent(new Event("touchstart", { bubbles: true }));
    vi.advanceTimersByTime(300);
    target.dispatchEvent(new Event("touchmove", { bubbles: true }));
    vi.advanceTimersByTime(600);
    expect(document.querySelector(".context-menu")).toBeNull();
  });

  it("shows no menus at all in read-only mode", async () => {
    const ro = new FileTree(async (p) => LISTING[p] ?? [], makeActions(), true);
    document.body.append(ro.root);
    await ro.refresh();
    rightClick(row(ro, "src"));
    rightClick(ro.root);
    expect(document.querySelector(".context-menu")).toBeNull();
  });

  it("marks the selected row", () => {
    tree.select("main.c");
    expect(row(tree, "main.c").classList.contains("selected")).toBe(true);
    expect(row(tree, "src").classList.contains("selected")).toBe(false);
    tree.select(null);
    expect(row(tree, "main.c").classList.contains("selected")).toBe(false);
  });
});
