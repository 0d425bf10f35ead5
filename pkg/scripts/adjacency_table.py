"""Print the z-element commutation table against the loop predicate for the 20 parabolics at u0.

Rows where the two sides disagree are marked; they are exactly the diagonal
pairs and pairs involving a reducible class.
"""

from __future__ import annotations

from springer_garside.verify import SUBGROUP_TABLE, G31Instance, adjacency_table


def main() -> None:
    inst = G31Instance.build()
    irreducible = {r.letters: r.irreducible for r in SUBGROUP_TABLE}
    rows = adjacency_table(inst)
    print(f"{'beta1':>6} {'beta2':>6} {'R1':>6} {'R2':>6}  z  pred")
    disagree = 0
    for b1, b2, z, pred in rows:
        r1, r2 = inst.loops_in(b1), inst.loops_in(b2)
        mark = ""
        if z != pred:
            disagree += 1
            why = "diagonal" if b1 == b2 else "reducible" if not (irreducible[inst.letters_of_class(b1)] and irreducible[inst.letters_of_class(b2)]) else "IRREDUCIBLE"
            mark = f"  <- {why}"
        print(f"{b1:>6} {b2:>6} {r1 or '1':>6} {r2 or '1':>6}  {int(z)}  {int(pred)}{mark}")
    print(f"{disagree} of {len(rows)} ordered pairs disagree")


if __name__ == "__main__":
    main()
