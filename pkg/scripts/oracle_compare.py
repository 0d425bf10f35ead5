"""Compare the Garside engine with the finite-group oracle on one-object dual braid monoids."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from springer_garside.garside import Garside
from springer_garside.oracle import DualMonoidOracle, compare_with_oracle
from springer_garside.reflection import build_interval, build_root_system
from springer_garside.springer import RegularParams, build_springer_data


@dataclass(frozen=True)
class OracleConfig:
    types: tuple[str, ...] = ("A2", "B2", "A3")
    max_len: int = 4


def run(label: str, max_len: int) -> bool:
    system = build_root_system(label)
    lattice = build_interval(system)
    data = build_springer_data(lattice, RegularParams.from_degree(system.coxeter_number, 1))
    t0 = time.perf_counter()
    res = compare_with_oracle(Garside(data), DualMonoidOracle(system), max_len)
    print(
        f"{label}: {res.normal_forms} normal forms, {res.meets} meets, {res.joins} joins, "
        f"{res.fractions} fractions, {len(res.mismatches)} mismatches ({time.perf_counter() - t0:.1f}s)"
    )
    for m in res.mismatches[:10]:
        print("   ", m)
    return res.passed


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--types", nargs="+", default=list(OracleConfig.types))
    ap.add_argument("--max-len", type=int, default=OracleConfig.max_len)
    args = ap.parse_args()
    cfg = OracleConfig(tuple(args.types), args.max_len)
    results = [run(label, cfg.max_len) for label in cfg.types]
    return 0 if all(results) else 1


if __name__ == "__main__":
    raise SystemExit(main())
