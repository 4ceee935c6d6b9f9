from pathlib import Path

import pytest

from cloudide.config import DEFAULT_TOOLCHAINS
from cloudide.errors import ToolchainMissing, UnsupportedExtension
from cloudide.toolchains import (
    Language, ToolchainRegistry, ToolchainSpec, detect_language,
)

from conftest import HAVE_JDK


# ----- language detection ---------------------------------------------------

@pytest.mark.parametrize("filename,language", [
    ("main.c", Language.C),
    ("MAIN.C", Language.C),
    ("prog.cpp", Language.CPP),
    ("prog.cc", Language.CPP),
    ("prog.cxx", Language.CPP),
    ("Prog.CPP", Language.CPP),
    ("Main.java", Language.JAVA),
    ("Main.JAVA", Language.JAVA),
    ("dir/sub/main.c", Language.C),
])
def test_detect_language(filename, language):
    assert detect_language(filename) is language


@pytest.mark.parametrize("filename", [
    "main.py", "main.txt", "main", "main.", ".c", ".java", "archive.tar.gz",
    "c", "java",
])
def test_detect_language_rejects_everything_else(filename):
    with pytest.raises(UnsupportedExtension):
        detect_language(filename)


def test_language_enum_is_closed():
    assert {lang.value for lang in Language} == {"c", "cpp", "java"}


# ----- command templates ----------------------------------------------------

@pytest.fixture()
def registry():
    return ToolchainRegistry(DEFAULT_TOOLCHAINS)


def test_compile_argv_substitutes_tokens(registry):
    spec = registry.toolchain_for(Language.C)
    work = Path("/w")
    argv = spec.compile_argv(work / "x.c", spec.output_name("x", work), work)
    assert argv == ["gcc", "/w/x.c", "-O2", "-o", "/w/x"]


def test_run_argv_splices_args_as_tokens(registry):
    spec = registry.toolchain_for(Language.C)
    work = Path("/w")
    argv = spec.run_argv(spec.output_name("x", work), ["a b", ";rm"], work)
    # each argument is one argv token; nothing is joined into a shell string
    assert argv == ["/w/x", "a b", ";rm"]


def test_run_argv_with_no_args(registry):
    spec = registry.toolchain_for(Language.CPP)
    work = Path("/w")
    assert spec.run_argv(spec.output_name("x", work), [], work) == ["/w/x"]


def test_java_names_use_the_class_not_a_path():
    # template behaviour is checkable even without the binary installed
    spec = ToolchainSpec(
        language=Language.JAVA,
        compile_template=tuple(DEFAULT_TOOLCHAINS["java"]["compile"]),
        run_template=tuple(DEFAULT_TOOLCHAINS["java"]["run"]),
        version_probe=tuple(DEFAULT_TOOLCHAINS["java"]["probe"]),
    )
    work = Path("/w")
    assert spec.output_name("Main", work) == "Main"
    assert spec.artifact_filename("Main") == "Main.class"
    argv = spec.run_argv("Main", ["x"], work)
    assert argv == ["java", "-cp", "/w", "Main", "x"]


def test_c_artifact_is_the_stem(registry):
    spec = registry.toolchain_for(Language.C)
    assert spec.artifact_filename("prog") == "prog"


# ----- registry validation --------------------------------------------------

def test_registry_rejects_template_missing_src():
    entries = dict(DEFAULT_TOOLCHAINS)
    entries["c"] = {"compile": ["gcc", "-O2"], "run": ["{out}"],
                    "probe": ["gcc", "--version"]}
    with pytest.raises(ToolchainMissing):
        ToolchainRegistry(entries)


def test_registry_requires_every_language():
    entries = {k: v for k, v in DEFAULT_TOOLCHAINS.items() if k != "java"}
    with pytest.raises(ToolchainMissing):
        ToolchainRegistry(entries)


def test_missing_binary_surfaces_as_toolchain_missing(tmp_path):
    entries = {
        "c": {"compile": ["definitely-no-such-cc", "{src}", "-o", "{out}"],
              "run": ["{out}"], "probe": ["definitely-no-such-cc", "--version"]},
        "cpp": DEFAULT_TOOLCHAINS["cpp"],
        "java": DEFAULT_TOOLCHAINS["java"],
    }
    registry = ToolchainRegistry(entries)
    with pytest.raises(ToolchainMissing):
        registry.toolchain_for(Language.C)


def test_validate_toolchains_names_the_broken_language(java_stub):
    entries = {
        "c": DEFAULT_TOOLCHAINS["c"],
        "cpp": {"compile": ["no-such-gxx", "{src}", "-o", "{out}"],
                "run": ["{out}"], "probe": ["no-such-gxx", "--version"]},
        "java": {"compile": [str(java_stub), "{src}"],
                 "run": [str(java_stub), "{out}"],
                 "probe": [str(java_stub), "-version"]},
    }
    registry = ToolchainRegistry(entries)
    with pytest.raises(ToolchainMissing) as exc:
        registry.validate_toolchains()
    assert "cpp" in str(exc.value)


def test_validate_toolchains_passes_with_working_probes(java_stub):
    entries = {
        "c": DEFAULT_TOOLCHAINS["c"],
        "cpp": DEFAULT_TOOLCHAINS["cpp"],
        "java": {"compile": [str(java_stub), "{src}"],
                 "run": [str(java_stub), "{out}"],
                 "probe": [str(java_stub), "-version"]},
    }
    registry = ToolchainRegistry(entries)
    probed = registry.validate_toolchains()
    assert {lang for lang, _ in probed} == set(Language)
    assert all(banner for _, banner in probed)


def test_probe_failure_by_nonzero_exit(tmp_path):
    bad = tmp_path / "badcc"
    bad.write_text("#!/bin/sh\nexit 3\n")
    bad.chmod(0o755)
    entries = {
        "c": {"compile": [str(bad), "{src}", "-o", "{out}"],
              "run": ["{out}"], "probe": [str(bad), "--version"]},
        "cpp": DEFAULT_TOOLCHAINS["cpp"],
        "java": DEFAULT_TOOLCHAINS["java"],
    }
    if not HAVE_JDK:
        entries["java"] = entries["cpp"]  # keep the probe set bootable
    registry = ToolchainRegistry(entries)
    with pytest.raises(ToolchainMissing) as exc:
        registry.validate_toolchains()
    assert "c" in str(exc.value)
