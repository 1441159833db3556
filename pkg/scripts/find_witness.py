"""Search for a point that every classical blossom row accepts but (8) cuts off."""

from tfree.adversarial import constructed_witness, search
from tfree.formulation import eval_cut_lhs
from tfree.io import dumps, instance_to_json, point_to_json, separation_to_json


def main():
    w = search()
    if w is None:
        print("no witness found")
    else:
        print("instance:", dumps(instance_to_json(w.instance)))
        print("point:", dumps(point_to_json(w.point)))
        print("classical blossom minimum:", w.classical_min)
        print("separation:", dumps(separation_to_json(w.separation)))
    inst, point, cut = constructed_witness()
    print("constructed K3 with loops, cut S=%s F0=%s F1=%s lhs %s"
          % (sorted(cut.S), sorted(cut.F0), sorted(cut.F1), eval_cut_lhs(inst, point, cut)))


if __name__ == "__main__":
    main()
