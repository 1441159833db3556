"""Solve every corpus instance and compare against brute-force enumeration."""

import argparse
import time

from tfree.graph import brute_force_optimum
from tfree.io import instance_from_json, loads_json
from tfree.solver import solve


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("corpus", nargs="?", default="tests/data/corpus.json")
    ap.add_argument("-v", "--verbose", action="store_true")
    args = ap.parse_args()
    with open(args.corpus) as fh:
        items = loads_json(fh.read(), args.corpus)
    t0 = time.time()
    bad = 0
    for item in items:
        inst = instance_from_json(item)
        rep = solve(inst)
        bf = brute_force_optimum(inst)
        ok = (rep.status, rep.optimum) == (bf.status, bf.weight)
        bad += not ok
        if args.verbose or not ok:
            print(f"seed {item.get('seed')}: {inst.mode:8s} {rep.status:10s} {rep.optimum} "
                  f"cuts={len(rep.cuts)} {'ok' if ok else f'MISMATCH brute={bf.weight}'}")
    print(f"{len(items) - bad}/{len(items)} agree in {time.time() - t0:.1f}s")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
