"""Language detection and compile/run command templates.

Templates are token vectors, never shell lines: each token may contain
the placeholders {src}, {out}, {workdir}; the special token "{args}"
marks where user argv tokens are spliced in. Instantiation produces an
argument vector handed straight to the OS — there is no point at which
a shell could interpret metacharacters.
"""

from __future__ import annotations

import enum
import shutil
import subprocess
from dataclasses import dataclass
from pathlib import Path

from .errors import ToolchainMissing, UnsupportedExtension


class Language(enum.Enum):
    C = "c"
    CPP = "cpp"
    JAVA = "java"


_EXTENSION_MAP = {
    ".c": Language.C,
    ".cpp": Language.CPP,
    ".cc": Language.CPP,
    ".cxx": Language.CPP,
    ".java": Language.JAVA,
}


def detect_language(filename: str) -> Language:
    """Map a filename's extension to its language (case-insensitive)."""
    if not filename:
        raise UnsupportedExtension("empty filename")
    name = filename.rsplit("/", 1)[-1]
    dot = name.rfind(".")
    ext = name[dot:].lower() if dot > 0 else ""
    try:
        return _EXTENSION_MAP[ext]
    except KeyError:
        raise UnsupportedExtension(
            "cannot compile %r: supported extensions are %s"
            % (filename, ", ".join(sorted(_EXTENSION_MAP)))) from None


@dataclass(frozen=True)
class ToolchainSpec:
    language: Language
    compile_template: tuple[str, ...]
    run_template: tuple[str, ...]
    version_probe: tuple[str, ...]

    def compile_argv(self, src: Path, out: str, workdir: Path) -> list[str]:
        return _fill(self.compile_template, src=str(src), out=out,
                     workdir=str(workdir), args=[])

    def run_argv(self, out: str, args: list[str], workdir: Path) -> list[str]:
        argv = _fill(self.run_template, src="", out=out,
                     workdir=str(workdir), args=args)
        if "{args}" not in self.run_template and args:
            argv.extend(args)
        return argv

    def output_name(self, stem: str, workdir: Path) -> str:
        """Value the {out} placeholder takes for a source with this stem."""
        if self.language is Language.JAVA:
            return stem  # main class name; run with classpath {workdir}
        return str(workdir / stem)

    def artifact_filename(self, stem: str) -> str:
        """Filename of the build product inside the work directory."""
        if self.language is Language.JAVA:
            return stem + ".class"
        return stem


def _fill(template: tuple[str, ...], *, src: str, out: str, workdir: str,
          args: list[str]) -> list[str]:
    argv: list[str] = []
    for token in template:
        if token == "{args}":
            argv.extend(args)
            continue
        argv.append(token.replace("{src}", src).replace("{out}", out)
                    .replace("{workdir}", workdir))
    return argv


class ToolchainRegistry:
    """One ToolchainSpec per language, built from the service config.
    Read-only after construction; safe to share across request handlers."""

    def __init__(self, config_entries: dict):
        self._specs: dict[Language, ToolchainSpec] = {}
        for language in Language:
            entry = config_entries.get(language.value)
            if entry is None:
                raise ToolchainMissing("no toolchain configured for %s" % language.value)
            spec = ToolchainSpec(
                language=language,
                compile_template=tuple(entry["compile"]),
                run_template=tuple(entry["run"]),
                version_probe=tuple(entry["probe"]),
            )
            if not any("{src}" in t for t in spec.compile_template):
                raise ToolchainMissing(
                    "%s compile template must reference {src}" % language.value)
            if not any("{out}" in t for t in spec.run_template):
                raise ToolchainMissing(
                    "%s run template must reference {out}" % language.value)
            self._specs[language] = spec

    def toolchain_for(self, language: Language) -> ToolchainSpec:
        spec = self._specs[language]
        binary = spec.compile_template[0]
        if shutil.which(binary) is None and not Path(binary).exists():
            raise ToolchainMissing("compiler %r for %s not found" % (binary, language.value))
        return spec

    def validate_toolchains(self) -> list[tuple[Language, str]]:
        """Probe every configured toolchain; the service must refuse to
        start unless all three answer. Returns (language, version) pairs."""
        versions = []
        failures = []
        for language in Language:
            spec = self._specs[language]
            try:
                proc = subprocess.run(
                    list(spec.version_probe), capture_output=True, timeout=30)
            except (OSError, subprocess.TimeoutExpired):
                failures.append(language.value)
                continue
            if proc.returncode != 0:
                failures.append(language.value)
                continue
            # javac and friends print the version on stderr
            banner = (proc.stdout or proc.stderr).decode("utf-8", "replace").strip()
            versions.append((language, banner.splitlines()[0] if banner else ""))
        if failures:
            raise ToolchainMissing("toolchain probe failed for: %s" % ", ".join(failures))
        return versions
