# Versch Forge - Verschiebung Equations Toolkit
# Copyright (C) 2025 Versch Forge Project
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU Affero General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Affero General Public License for more details.
#
# You should have received a copy of the GNU Affero General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.

"""Regenerate the regression corpus from the command lines below."""

import os
import sys
from collections import Counter

# Add parent to path for imports
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from cli import record_entry
from config import settings


# Small, fast runs whose reports are pinned byte for byte
CORPUS_ENTRIES = [
    {
        "name": "kummer_eq_gf16",
        "argv": ["kummer-eq", "--field", "2^4/0x13", "--curve", "1,1,1"],
    },
    {
        "name": "verify_kummer_gf16",
        "argv": ["verify-kummer", "--field", "2^4", "--curve", "1,1,1"],
    },
    {
        "name": "versch_eq_hw1_gf16",
        "argv": ["versch-eq", "--case", "hw1", "--field", "2^4"],
    },
    {
        "name": "specialize_nu4",
        "argv": ["specialize", "--field", "2^6", "--lambda", "2", "--mu", "0"],
    },
    {
        "name": "unknown_flag",
        "argv": ["kummer-eq", "--bogus"],
    },
]


def seed_corpus(directory=None):
    """Clear the corpus directory and record every entry again."""
    directory = directory or settings()["VERSCH_CORPUS_DIR"]
    if os.path.isdir(directory):
        existing = [n for n in os.listdir(directory) if n.endswith(".json")]
        if existing:
            print(f"Corpus already has {len(existing)} entries. Clearing and reseeding...")
            for name in existing:
                os.remove(os.path.join(directory, name))

    codes = Counter()
    for entry in CORPUS_ENTRIES:
        _, code = record_entry(directory, entry["name"], entry["argv"])
        codes[code] += 1
        print(f"Recorded: {entry['name']} (exit {code})")

    print(f"\nSeeded {len(CORPUS_ENTRIES)} corpus entries in {directory}")
    print("\nExit codes:")
    for code, count in sorted(codes.items()):
        print(f"  {code}: {count} entries")
    return len(CORPUS_ENTRIES)


if __name__ == "__main__":
    seed_corpus(sys.argv[1] if len(sys.argv) > 1 else None)
