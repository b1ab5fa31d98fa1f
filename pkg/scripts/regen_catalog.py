#!/usr/bin/env python3
"""Rebuild src/hypertheta/data/catalog.json from the in-code builder.

Run after any change to identity_catalog.py's tables; the test suite pins
the shipped file to the builder output (content hash included), so a stale
file fails fast.
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from hypertheta.identity_catalog import build_catalog, save_catalog  # noqa: E402


def main() -> None:
    target = (pathlib.Path(__file__).resolve().parents[1]
              / "src" / "hypertheta" / "data" / "catalog.json")
    target.parent.mkdir(parents=True, exist_ok=True)
    save_catalog(build_catalog(), str(target))
    print(f"wrote {target}")


if __name__ == "__main__":
    main()
