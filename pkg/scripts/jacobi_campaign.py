"""Randomized Jacobi and cancellation-identity campaign for the tree bracket.

    python scripts/jacobi_campaign.py --rank 3 --max-vertices 7 --trials 2000
"""
import random
import time
from collections import Counter
from dataclasses import dataclass

from _config import parse_config
from tensor_melon.trees import (
    cancellation_disjoint_vertices, cancellation_nested, jacobi_defect, random_tree, serialize,
)


@dataclass
class Config:
    rank: int = 3
    max_vertices: int = 6
    trials: int = 500
    seed: int = 0


def main(cfg: Config) -> None:
    rng = random.Random(cfg.seed)
    failures = Counter()
    terms = 0
    start = time.perf_counter()
    for _ in range(cfg.trials):
        t1, t2, t3 = (random_tree(cfg.rank, cfg.max_vertices, rng) for _ in range(3))
        if jacobi_defect(t1, t2, t3):
            failures["jacobi"] += 1
            print("jacobi defect:", serialize(t1), serialize(t2), serialize(t3))
        for name, (plus, minus) in (
            ("disjoint", cancellation_disjoint_vertices(t1, t2, t3)),
            ("nested 2-3", cancellation_nested(t1, t2, t3)),
            ("nested 3-2", cancellation_nested(t1, t3, t2)),
        ):
            terms += sum(plus.values())
            if plus != minus:
                failures[name] += 1
    took = time.perf_counter() - start
    print(f"trials={cfg.trials} rank={cfg.rank} max_vertices={cfg.max_vertices} seed={cfg.seed}")
    print(f"cancellation terms compared: {terms}")
    print(f"failures: {dict(failures) or 0}")
    print(f"seconds: {took:.1f}")


if __name__ == "__main__":
    main(parse_config(Config, __doc__.splitlines()[0]))
