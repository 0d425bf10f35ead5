"""Build the E8 / d=4 groupoid, save it, and report counts and timings."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from springer_garside.dataset import save
from springer_garside.verify import G31Instance


@dataclass(frozen=True)
class BuildConfig:
    type_label: str = "E8"
    d: int = 4
    out: str = "g31.txt.gz"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--type", dest="type_label", default=BuildConfig.type_label)
    ap.add_argument("--d", type=int, default=BuildConfig.d)
    ap.add_argument("--out", default=BuildConfig.out)
    cfg = BuildConfig(**vars(ap.parse_args()))

    t0 = time.perf_counter()
    inst = G31Instance.build(cfg.type_label, cfg.d)
    built = time.perf_counter() - t0
    save(inst.data, cfg.out)
    d, p = inst.data, inst.data.params
    print(f"{cfg.type_label} d={p.d}: h={p.h} p={p.p} q={p.q} eta={p.eta}")
    print(f"interval {len(inst.lattice)}, objects {d.n_objects}, simples {d.n_simples}, relations {d.n_relations()}")
    print(f"built in {built:.1f}s, saved to {cfg.out} in {time.perf_counter() - t0 - built:.1f}s")


if __name__ == "__main__":
    main()
