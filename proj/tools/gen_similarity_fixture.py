#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Writes reference similarity ratios computed by Python's difflib.

Usage: gen_similarity_fixture.py OUT.json [COUNT] [SEED]
"""
import difflib
import json
import random
import sys


def main() -> None:
    out = sys.argv[1]
    count = int(sys.argv[2]) if len(sys.argv) > 2 else 1000
    rng = random.Random(int(sys.argv[3]) if len(sys.argv) > 3 else 20261016)
    alphabets = ["ab", "abc", "abcdefgh", "".join(chr(c) for c in range(0x20, 0x7F))]
    pairs = []
    for _ in range(count):
        alphabet = rng.choice(alphabets)
        a = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 30)))
        b = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 30)))
        # No autojunk: both inputs stay far below its 200-character trigger anyway.
        ratio = difflib.SequenceMatcher(None, a, b, autojunk=False).ratio()
        pairs.append({"a": a, "b": b, "ratio": ratio})
    with open(out, "w") as fh:
        json.dump({"generator": "difflib.SequenceMatcher(autojunk=False).ratio",
                   "pairs": pairs}, fh, indent=0)


if __name__ == "__main__":
    main()
