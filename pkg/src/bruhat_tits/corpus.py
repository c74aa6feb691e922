"""Golden reports for the shipped descriptor corpus."""

from __future__ import annotations

import io
from pathlib import Path

from .cli import run
from .descriptor import load

COSETS = ("{}", "{}", "3")


def commands_for(path: Path) -> list[tuple[str, list[str]]]:
    desc = load(str(path))
    origin = ",".join(["0"] * desc.rank)
    cmds = [
        ("apartment", ["apartment"]),
        ("facet", ["facet", origin]),
        ("star", ["star", origin]),
        ("cosets", ["cosets", *COSETS]),
        ("verify", ["verify"]),
    ]
    if desc.compare_mode:
        cmds.append(("compare", ["compare"]))
    return cmds


def render_corpus(descriptor_dir: Path) -> dict[str, tuple[int, str]]:
    """Map "<case>/<command>.txt" to (exit code, report text)."""
    out = {}
    for path in sorted(Path(descriptor_dir).glob("*.desc")):
        for name, argv in commands_for(path):
            buf, err = io.StringIO(), io.StringIO()
            code = run([*argv, "--group", str(path)], out=buf, err=err)
            out[f"{path.stem}/{name}.txt"] = (code, buf.getvalue() + err.getvalue())
    return out


def write_corpus(descriptor_dir: Path, report_dir: Path) -> dict[str, int]:
    codes = {}
    for rel, (code, text) in render_corpus(descriptor_dir).items():
        target = Path(report_dir) / rel
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding="utf-8")
        codes[rel] = code
    return codes
