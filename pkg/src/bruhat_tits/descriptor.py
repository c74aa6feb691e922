"""Group descriptor files.

A descriptor is line oriented::

    # comment
    [group]
    label = BC
    rank = 1
    residue_char = 2

    [ray.multipliable]
    case = BC1
    e2 = 1
    gamma = -1/4

    [compare]
    mode = bc

Rationals are written p/q. Unknown sections and keys are rejected with a
line and column. Checks that need the root system (orbit names, case versus
ray type, characteristic) are left to assembly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from . import rootdata
from .echelonnage import CASES, RayCase, ValuedRootDatum, assemble

SECTION_KEYS = {
    "group": {"label", "rank", "residue_char"},
    "ray": {"case", "e2", "gamma"},
    "compare": {"mode", "degrees"},
}
REQUIRED = {
    "group": {"label", "rank"},
    "ray": {"case"},
    "compare": {"mode"},
}

_HEADER = re.compile(r"^\[\s*([A-Za-z_][\w]*)(?:\.([A-Za-z_][\w]*))?\s*\]$")
_KEY = re.compile(r"^([A-Za-z_]\w*)\s*=\s*(.*)$")
_INT = re.compile(r"^[+-]?\d+$")
_RAT = re.compile(r"^[+-]?\d+(?:/\d+)?$")


class DescriptorError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None) -> None:
        self.message = message
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


@dataclass
class GroupDescriptor:
    label: str
    rank: int
    residue_char: int | None
    rays: dict[str, RayCase]
    compare_mode: str | None = None
    degrees: dict[str, Fraction] = field(default_factory=dict)

    def root_system(self) -> rootdata.RootSystem:
        return rootdata.build(self.label, self.rank)

    def datum(self) -> ValuedRootDatum:
        return assemble(self.root_system(), self.rays, self.residue_char)


def _parse_int(text: str, line: int, col: int, what: str) -> int:
    if not _INT.match(text):
        raise DescriptorError(f"{what} must be an integer, got {text!r}", line, col)
    return int(text)


def parse_rational(text: str, line: int | None = None, col: int | None = None) -> Fraction:
    text = text.strip()
    if not _RAT.match(text):
        raise DescriptorError(f"expected a rational p/q, got {text!r}", line, col)
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise DescriptorError("zero denominator", line, col)
    return Fraction(int(num), int(den) if den else 1)


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def parse_descriptor(text: str) -> GroupDescriptor:
    sections: list[tuple[str, str | None, int, dict[str, tuple[str, int, int]]]] = []
    current = None
    seen_headers: set[tuple[str, str | None]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        stripped = body.strip()
        if not stripped:
            continue
        col = len(body) - len(body.lstrip()) + 1
        if stripped.startswith("["):
            m = _HEADER.match(stripped)
            if not m:
                raise DescriptorError(f"malformed section header {stripped!r}", lineno, col)
            kind, sub = m.group(1), m.group(2)
            if kind not in SECTION_KEYS:
                raise DescriptorError(f"unknown section [{kind}]", lineno, col)
            if (kind == "ray") != (sub is not None):
                raise DescriptorError(
                    "ray sections are written [ray.<orbit>]" if kind == "ray" else f"section [{kind}] takes no suffix",
                    lineno,
                    col,
                )
            if (kind, sub) in seen_headers:
                raise DescriptorError(f"duplicate section {stripped}", lineno, col)
            seen_headers.add((kind, sub))
            current = (kind, sub, lineno, {})
            sections.append(current)
            continue
        m = _KEY.match(stripped)
        if not m:
            raise DescriptorError("expected 'key = value' or a [section] header", lineno, col)
        if current is None:
            raise DescriptorError("key outside of any section", lineno, col)
        key, value = m.group(1), m.group(2).strip()
        vcol = col + stripped.index("=") + 1
        vcol += len(stripped[stripped.index("=") + 1 :]) - len(stripped[stripped.index("=") + 1 :].lstrip())
        kind = current[0]
        if key not in SECTION_KEYS[kind]:
            raise DescriptorError(f"unknown key {key!r} in [{kind}]", lineno, col)
        if key in current[3]:
            raise DescriptorError(f"duplicate key {key!r}", lineno, col)
        if not value:
            raise DescriptorError(f"missing value for {key!r}", lineno, vcol)
        current[3][key] = (value, lineno, vcol)

    for kind, sub, lineno, keys in sections:
        missing = REQUIRED[kind] - set(keys)
        if missing:
            name = f"[{kind}.{sub}]" if sub else f"[{kind}]"
            raise DescriptorError(f"section {name} lacks {', '.join(sorted(missing))}", lineno, 1)

    groups = [s for s in sections if s[0] == "group"]
    if not groups:
        raise DescriptorError("missing [group] section", 1, 1)
    g = groups[0][3]
    label_text, ll, lc = g["label"]
    label = label_text.upper()
    if label not in rootdata.LABELS:
        raise DescriptorError(f"unknown root system label {label_text!r}", ll, lc)
    rank = _parse_int(*g["rank"], "rank")
    residue_char = None
    if "residue_char" in g:
        residue_char = _parse_int(*g["residue_char"], "residue_char")
        if not _is_prime(residue_char):
            v, rl, rc = g["residue_char"]
            raise DescriptorError(f"residue_char must be a prime, got {v}", rl, rc)

    rays: dict[str, RayCase] = {}
    for kind, sub, lineno, keys in sections:
        if kind != "ray":
            continue
        case, cl, cc = keys["case"]
        case = case.upper()
        if case not in CASES:
            raise DescriptorError(f"unknown case {keys['case'][0]!r}; expected one of {', '.join(CASES)}", cl, cc)
        e2 = 1
        if "e2" in keys:
            e2 = _parse_int(*keys["e2"], "e2")
            if e2 < 1:
                raise DescriptorError("e2 must be positive", keys["e2"][1], keys["e2"][2])
        gamma = None
        if "gamma" in keys:
            gtext, gl, gc = keys["gamma"]
            gamma = None if gtext == "default" else parse_rational(gtext, gl, gc)
        rays[sub] = RayCase(case, e2, gamma)

    mode = None
    degrees: dict[str, Fraction] = {}
    for kind, sub, lineno, keys in sections:
        if kind != "compare":
            continue
        mode, ml, mc = keys["mode"]
        if mode not in ("exotic", "bc"):
            raise DescriptorError(f"compare mode must be exotic or bc, got {mode!r}", ml, mc)
        if "degrees" in keys:
            dtext, dl, dc = keys["degrees"]
            for item in dtext.split(","):
                name, sep, val = item.partition(":")
                if not sep or not name.strip():
                    raise DescriptorError(f"degrees are written orbit:value, got {item.strip()!r}", dl, dc)
                degrees[name.strip()] = parse_rational(val, dl, dc)
        elif mode == "exotic":
            raise DescriptorError("exotic comparison needs degrees", lineno, 1)

    return GroupDescriptor(label, rank, residue_char, rays, mode, degrees)


def load(path: str) -> GroupDescriptor:
    with open(path, encoding="utf-8") as fh:
        return parse_descriptor(fh.read())
