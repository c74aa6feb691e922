"""Regenerate reports/<case>/<command>.txt from descriptors/*.desc."""

from __future__ import annotations

import sys
from pathlib import Path

from bruhat_tits.corpus import write_corpus

ROOT = Path(__file__).resolve().parent.parent


def main() -> int:
    codes = write_corpus(ROOT / "descriptors", ROOT / "reports")
    for rel, code in sorted(codes.items()):
        print(f"{code}  {rel}")
    return max(codes.values(), default=0)


if __name__ == "__main__":
    sys.exit(main())
