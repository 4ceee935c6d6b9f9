/** Client-side mirror of the server's extension-to-language mapping.
 *
 * Must stay in lockstep with the backend: same extensions, case folding,
 * and the rule that a leading dot alone is not an extension.
 */

export type LanguageMode = "c" | "cpp" | "java";

export const EXTENSION_MODES: Record<string, LanguageMode> = {
  ".c": "c",
  ".cpp": "cpp",
  ".cc": "cpp",
  ".cxx": "cpp",
  ".java": "java",
};

export function languageForFilename(filename: string): LanguageMode | null {
  if (!filename) return null;
  const name = filename.split("/").pop() ?? "";
  const dot = name.lastIndexOf(".");
  if (dot <= 0) return null; // ".c" is a dotfile, not a C file
  const ext = name.slice(dot).toLowerCase();
  return EXTENSION_MODES[ext] ?? null;
}
