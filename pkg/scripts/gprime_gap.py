"""Compare the auxiliary-graph minimum with the family minimum over sampled points.

Prints every point where the two values differ. Verdicts (below 1 or not)
are reported separately since they are what separation relies on.
"""

import argparse

from tfree.io import instance_from_json, loads_json
from tfree.separation import brute_force_min_lhs, min_odd_cut, transform
from tfree.verify import sample_points


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("corpus", nargs="?", default="tests/data/corpus.json")
    ap.add_argument("--points", type=int, default=6)
    args = ap.parse_args()
    with open(args.corpus) as fh:
        items = loads_json(fh.read(), args.corpus)
    n = same = verdict = 0
    for item in items:
        inst = instance_from_json(item)
        if not inst.graph.vertices:
            continue
        for k, p in enumerate(sample_points(inst, args.points, item["seed"])):
            oc = min_odd_cut(transform(inst, p))
            g = oc.value if oc else None
            b = brute_force_min_lhs(inst, p).value
            n += 1
            same += g == b
            verdict += (g is not None and g < 1) == (b is not None and b < 1)
            if g != b:
                print(f"seed {item['seed']} point {k}: G' {g} (S'={sorted(oc.S)}) family {b}")
    print(f"{n} points: minima equal {same}, verdicts agree {verdict}")


if __name__ == "__main__":
    main()
