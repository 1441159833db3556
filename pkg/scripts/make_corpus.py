"""Regenerate the frozen acceptance corpus (tests/data/corpus.json).

Instances: |V| <= 6, |E| <= 12, 0-3 edge-disjoint triangles, rational
weights, both modes. Seeds are fixed, so the output is reproducible.
"""

import argparse
import json
import random
from pathlib import Path

from tfree.generators import random_instance
from tfree.io import instance_to_json

ROOT = Path(__file__).resolve().parents[1]


def build(count: int, seed0: int = 0) -> list[dict]:
    out = []
    seed = seed0
    while len(out) < count:
        rng = random.Random(10_000 + seed)
        n = rng.randint(2, 6)
        m = rng.randint(1, 12)
        inst = random_instance(
            seed,
            n=n,
            m=m,
            max_triangles=3,
            b_choices=(1, 2, 2, 3),
            mode="factor" if len(out) % 2 == 0 else "matching",
            tri_bias=0.8,
            planted=rng.random() < 0.6,
        )
        item = instance_to_json(inst)
        item["seed"] = seed
        out.append(item)
        seed += 1
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=240)
    ap.add_argument("--output", default=str(ROOT / "tests" / "data" / "corpus.json"))
    args = ap.parse_args()
    corpus = build(args.count)
    Path(args.output).write_text(json.dumps(corpus, indent=1) + "\n")
    print(f"wrote {len(corpus)} instances to {args.output}")


if __name__ == "__main__":
    main()
