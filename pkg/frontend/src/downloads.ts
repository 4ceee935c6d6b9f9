import { el } from "./ui";

/** Browser download trigger, kept swappable so scripted tests can capture
 * the bytes instead of relying on blob URLs. */
export const downloads = {
  save(filename: string, bytes: Uint8Array): void {
    try {
      const blob = new Blob([bytes as unknown as BlobPart]);
      const url = URL.createObjectURL(blob);
      const anchor = el("a", { href: url, download: filename });
      document.body.append(anchor);
      anchor.click();
      anchor.remove();
      setTimeout(() => URL.revokeObjectURL(url), 0);
    } catch {
      /* no blob URL support in this environment */
    }
  },
};
