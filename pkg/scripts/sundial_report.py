"""Run the sundial procedure on every admissible beta and summarise ladder heights."""

from __future__ import annotations

from collections import Counter

from springer_garside.verify import G31Instance


def main() -> None:
    inst = G31Instance.build()
    P = inst.parabolics
    heights = Counter()
    failures = []
    for beta in P.admissible:
        ladder = P.sundial(beta)
        heights[len(ladder.levels)] += 1
        if not ladder.success:
            failures.append(beta)
    print(f"{len(P.admissible)} admissible beta, {len(failures)} failures {failures[:10]}")
    for h in sorted(heights):
        print(f"  ladder with {h} level(s): {heights[h]}")


if __name__ == "__main__":
    main()
