#!/usr/bin/env python3
# Copyright 2026 The Persuade Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Independent reimplementation of the hashing embedder and the per-position
similarity report. Its output on the metrics fixture is frozen in
data/fixtures/metrics/expected_similarity.json.

usage: similarity_oracle.py <transcript-dir> [dim]
"""
import json
import math
import pathlib
import sys
from itertools import combinations

MASK = (1 << 64) - 1


def fnv1a64(data: bytes) -> int:
    h = 14695981039346656037
    for b in data:
        h ^= b
        h = (h * 1099511628211) & MASK
    return h


def embed(text: str, dim: int):
    v = [0.0] * dim
    tokens, cur = [], bytearray()
    for b in text.encode("utf-8"):
        if (48 <= b <= 57) or (65 <= b <= 90) or (97 <= b <= 122):
            cur.append(b + 32 if 65 <= b <= 90 else b)
        elif cur:
            tokens.append(bytes(cur))
            cur = bytearray()
    if cur:
        tokens.append(bytes(cur))
    for t in tokens:
        h = fnv1a64(t)
        v[h % dim] += -1.0 if h >> 63 else 1.0
    return v


def cosine(a, b):
    dot = sum(x * y for x, y in zip(a, b))
    return dot / math.sqrt(sum(x * x for x in a) * sum(y * y for y in b))


def main():
    root = pathlib.Path(sys.argv[1])
    dim = int(sys.argv[2]) if len(sys.argv) > 2 else 256
    positions = {}
    for f in sorted(root.glob("*.json")):
        d = json.loads(f.read_text())
        if not d["valid"]:
            continue
        prefix = "S-" if d["config"]["mode"] == "static" else "D-"
        for r, turn in enumerate(d["turns"]):
            positions.setdefault(prefix + str(r + 1), []).append(
                (d["claim"]["id"], d["claim"]["dataset"], embed(turn["sender"]["argument"], dim)))
    out = []
    for pos in sorted(positions, key=lambda p: (p[0] != "S", int(p[2:]))):
        items = positions[pos]
        sims, per = [], {}
        for (ia, da, va), (ib, db, vb) in combinations(items, 2):
            if ia == ib:
                continue
            s = cosine(va, vb)
            sims.append(s)
            if da == db:
                per.setdefault(da, []).append(s)
        if not sims:
            continue
        out.append({"position": pos, "messages": len(items), "pairs": len(sims),
                    "mean": sum(sims) / len(sims),
                    "per_dataset": {k: {"pairs": len(v), "mean": sum(v) / len(v)} for k, v in sorted(per.items())}})
    print(json.dumps({"embedder": f"hashing-{dim}", "dimension": dim, "positions": out}, indent=2))


if __name__ == "__main__":
    main()
