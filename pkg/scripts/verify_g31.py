"""Run the golden checks and the seeded property suite on the E8 / d=4 groupoid."""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from springer_garside.dataset import load
from springer_garside.verify import G31Instance, VerifyConfig, verify_g31


@dataclass(frozen=True)
class RunConfig:
    dataset: str | None = None
    suite: str = "all"
    seed: int = 0
    samples: int = 500
    depth: int = 6


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dataset", help="saved dataset; rebuilt from scratch when omitted")
    ap.add_argument("--suite", choices=("golden", "properties", "all"), default=RunConfig.suite)
    ap.add_argument("--seed", type=int, default=RunConfig.seed)
    ap.add_argument("--samples", type=int, default=RunConfig.samples)
    ap.add_argument("--depth", type=int, default=RunConfig.depth)
    cfg = RunConfig(**vars(ap.parse_args()))

    inst = G31Instance(load(cfg.dataset)) if cfg.dataset else G31Instance.build()
    report = verify_g31(inst, VerifyConfig(depth=cfg.depth, seed=cfg.seed, samples=cfg.samples), cfg.suite)
    print(report.format())
    return 0 if report.passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
