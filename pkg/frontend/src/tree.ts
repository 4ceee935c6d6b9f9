/** Workspace file tree with a right-click context menu.
 *
 * Folder rows expand in place; expansion state survives refreshes. A
 * long press opens the same menu for touch devices, where there is no
 * right mouse button to click.
 */

import type { FsNode } from "./api";
import { clear, el } from "./ui";

export interface TreeActions {
  open(node: FsNode): void;
  newFile(parentPath: string): void;
  newFolder(parentPath: string): void;
  rename(node: FsNode): void;
  remove(node: FsNode): void;
  download(node: FsNode): void;
}

const LONG_PRESS_MS = 600;

export function baseName(path: string): string {
  return path.split("/").pop() ?? path;
}

export function parentPath(path: string): string {
  const parts = path.split("/");
  parts.pop();
  return parts.join("/");
}

interface MenuItem {
  label: string;
  action: () => void;
}

export class FileTree {
  readonly root: HTMLElement;
  private listHost: HTMLElement;
  private expanded = new Set<string>();
  private selectedPath: string | null = null;
  private menu: HTMLElement | null = null;
  private pressTimer: number | null = null;

  constructor(
    private load: (path: string) => Promise<FsNode[]>,
    private actions: TreeActions,
    private readOnly = false,
  ) {
    this.listHost = el("div", { class: "tree-list" });
    this.root = el("div", { class: "tree" }, [this.listHost]);
    this.root.addEventListener("contextmenu", (ev) => {
      // background area: offer creation at the workspace root
      if (ev.target === this.root || ev.target === this.listHost) {
        ev.preventDefault();
        this.openMenu(ev.clientX, ev.clientY, this.rootItems());
      }
    });
    document.addEventListener("click", () => this.closeMenu());
    document.addEventListener("keydown", (ev) => {
      if (ev.key === "Escape") this.closeMenu();
    });
  }

  select(path: string | null): void {
    this.selectedPath = path;
    for (const row of this.listHost.querySelectorAll(".tree-row")) {
      row.classList.toggle("selected", row.getAttribute("data-path") === path);
    }
  }

  async refresh(): Promise<void> {
    const fragment = el("ul", { class: "tree-children" });
    await this.renderChildren("", fragment);
    clear(this.listHost);
    this.listHost.append(fragment);
    this.select(this.selectedPath);
  }

  private async renderChildren(path: string, into: HTMLElement): Promise<void> {
    let nodes: FsNode[];
    try {
      nodes = await this.load(path);
    } catch {
      this.expanded.delete(path);
      return;
    }
    for (const node of nodes) {
      into.append(await this.renderNode(node));
    }
  }

  private async renderNode(node: FsNode): Promise<HTMLElement> {
    const isFolder = node.kind === "folder";
    const row = el("div", {
      class: "tree-row" + (isFolder ? " folder" : " file"),
      "data-path": node.path,
      "data-kind": node.kind,
    }, [
      el("span", { class: "tree-icon" }, [isFolder ? "▸" : "·"]),
      el("span", { class: "tree-name" }, [baseName(node.path)]),
    ]);
    const item = el("li", {}, [row]);

    row.addEventListener("click", (ev) => {
      ev.stopPropagation();
      if (isFolder) {
        if (this.expanded.has(node.path)) this.expanded.delete(node.path);
        else this.expanded.add(node.path);
        void this.refresh();
      } else {
        this.actions.open(node);
      }
    });
    row.addEventListener("contextmenu", (ev) => {
      ev.preventDefault();
      ev.stopPropagation();
      this.openMenu(ev.clientX, ev.clientY, this.nodeItems(node));
    });
    row.addEventListener("touchstart", (ev) => {
      const touch = (ev as TouchEvent).touches?.[0];
      const x = touch ? touch.clientX : 0;
      const y = touch ? touch.clientY : 0;
      this.pressTimer = window.setTimeout(() => {
        this.openMenu(x, y, this.nodeItems(node));
      }, LONG_PRESS_MS);
    });
    for (const evName of ["touchend", "touchmove", "touchcancel"]) {
      row.addEventListener(evName, () => {
        if (this.pressTimer !== null) {
          window.clearTimeout(this.pressTimer);
          this.pressTimer = null;
        }
      });
    }

    if (isFolder && this.expanded.has(node.path)) {
      const icon = row.querySelector(".tree-icon")!;
      icon.textContent = "▾";
      const children = el("ul", { class: "tree-children" });
      await this.renderChildren(node.path, children);
      item.append(children);
    }
    return item;
  }

  private rootItems(): MenuItem[] {
    if (this.readOnly) return [];
    return [
      { label: "New file", action: () => this.actions.newFile("") },
      { label: "New folder", action: () => this.actions.newFolder("") },
    ];
  }

  private nodeItems(node: FsNode): MenuItem[] {
    if (this.readOnly) return [];
    const container = node.kind === "folder" ? node.path : parentPath(node.path);
    const items: MenuItem[] = [];
    if (node.kind === "folder") {
      items.push(
        { label: "New file", action: () => this.actions.newFile(container) },
        { label: "New folder", action: () => this.actions.newFolder(container) },
      );
    }
    items.push(
      { label: "Rename", action: () => this.actions.rename(node) },
      { label: "Delete", action: () => this.actions.remove(node) },
      { label: "Download", action: () => this.actions.download(node) },
    );
    return items;
  }

  private openMenu(x: number, y: number, items: MenuItem[]): void {
    this.closeMenu();
    if (!items.length) return;
    const menu = el("div", { class: "context-menu", role: "menu" });
    for (const item of items) {
      const button = el("button", { class: "context-item", type: "button" }, [
        item.label,
      ]);
      button.addEventListener("click", (ev) => {
        ev.stopPropagation();
        this.closeMenu();
        item.action();
      });
      menu.append(button);
    }
    menu.style.left = `${x}px`;
    menu.style.top = `${y}px`;
    document.body.append(menu);
    this.menu = menu;
  }

  closeMenu(): void {
    if (this.menu) {
      this.menu.remove();
      this.menu = null;
    }
  }
}
