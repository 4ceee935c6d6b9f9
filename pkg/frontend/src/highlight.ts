/** Lexical highlighter for the three supported languages.
 *
 * Produces an HTML string in which every character of the source has been
 * entity-escaped; the only markup is the span wrappers this module emits.
 */

import type { LanguageMode } from "./lang";

const C_KEYWORDS = [
  "auto", "break", "case", "char", "const", "continue", "default", "do",
  "double", "else", "enum", "extern", "float", "for", "goto", "if", "inline",
  "int", "long", "register", "restrict", "return", "short", "signed",
  "sizeof", "static", "struct", "switch", "typedef", "union", "unsigned",
  "void", "volatile", "while", "_Bool",
];

const CPP_KEYWORDS = [
  ...C_KEYWORDS,
  "alignas", "alignof", "bool", "catch", "class", "constexpr", "const_cast",
  "decltype", "delete", "dynamic_cast", "explicit", "export", "false",
  "friend", "mutable", "namespace", "new", "noexcept", "nullptr", "operator",
  "private", "protected", "public", "reinterpret_cast", "static_assert",
  "static_cast", "template", "this", "throw", "true", "try", "typeid",
  "typename", "using", "virtual", "wchar_t",
];

const JAVA_KEYWORDS = [
  "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char",
  "class", "const", "continue", "default", "do", "double", "else", "enum",
  "extends", "final", "finally", "float", "for", "goto", "if", "implements",
  "import", "instanceof", "int", "interface", "long", "native", "new",
  "package", "private", "protected", "public", "return", "short", "static",
  "strictfp", "super", "switch", "synchronized", "this", "throw", "throws",
  "transient", "try", "var", "void", "volatile", "while",
  "true", "false", "null",
];

const KEYWORDS: Record<LanguageMode, Set<string>> = {
  c: new Set(C_KEYWORDS),
  cpp: new Set(CPP_KEYWORDS),
  java: new Set(JAVA_KEYWORDS),
};

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

function isIdentStart(ch: string): boolean {
  return /[A-Za-z_$]/.test(ch);
}

function isIdentChar(ch: string): boolean {
  return /[A-Za-z0-9_$]/.test(ch);
}

export function highlight(source: string, mode: LanguageMode | null): string {
  if (mode === null) return escapeHtml(source);
  const keywords = KEYWORDS[mode];
  const out: string[] = [];
  let plain = "";
  const flush = () => {
    if (plain) {
      out.push(escapeHtml(plain));
      plain = "";
    }
  };
  const span = (cls: string, text: string) => {
    flush();
    out.push(`<span class="tok-${cls}">${escapeHtml(text)}</span>`);
  };

  const n = source.length;
  let i = 0;
  let lineStart = true; // only whitespace seen since the last newline
  while (i < n) {
    const ch = source[i];
    const next = source[i + 1];

    if (ch === "\n") {
      plain += ch;
      lineStart = true;
      i++;
      continue;
    }

    // preprocessor directive, C and C++ only
    if (lineStart && ch === "#" && mode !== "java") {
      let j = i;
      while (j < n && source[j] !== "\n") j++;
      span("pre", source.slice(i, j));
      i = j;
      lineStart = false;
      continue;
    }
    if (!/\s/.test(ch)) lineStart = false;

    if (ch === "/" && next === "/") {
      let j = i;
      while (j < n && source[j] !== "\n") j++;
      span("com", source.slice(i, j));
      i = j;
      continue;
    }

    if (ch === "/" && next === "*") {
      let j = i + 2;
      while (j < n && !(source[j] === "*" && source[j + 1] === "/")) j++;
      j = Math.min(n, j + 2);
      span("com", source.slice(i, j));
      i = j;
      continue;
    }

    if (ch === '"' || ch === "'") {
      const quote = ch;
      let j = i + 1;
      while (j < n && source[j] !== quote && source[j] !== "\n") {
        if (source[j] === "\\") j++;
        j++;
      }
      if (j < n && source[j] === quote) j++;
      span("str", source.slice(i, j));
      i = j;
      continue;
    }

    if (/[0-9]/.test(ch)) {
      let j = i + 1;
      while (j < n && /[0-9A-Za-z_.]/.test(source[j])) j++;
      span("num", source.slice(i, j));
      i = j;
      continue;
    }

    if (isIdentStart(ch)) {
      let j = i + 1;
      while (j < n && isIdentChar(source[j])) j++;
      const word = source.slice(i, j);
      if (keywords.has(word)) span("kw", word);
      else plain += word;
      i = j;
      continue;
    }

    plain += ch;
    i++;
  }
  flush();
  return out.join("");
}
