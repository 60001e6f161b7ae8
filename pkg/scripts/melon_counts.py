"""Count melons two ways: through trees, and by filtering all graphs by degree.

    python scripts/melon_counts.py --max-colors 5 --max-half-order 4 --exhaustive-cap 400000
"""
import time
from dataclasses import dataclass

from _config import parse_config
from tensor_melon.bubbles import enumerate_bubbles, labeled_configurations
from tensor_melon.graph import canonical_form, is_connected
from tensor_melon.jackets import degree
from tensor_melon.melons import count_melonic


@dataclass
class Config:
    min_colors: int = 4
    max_colors: int = 5
    max_half_order: int = 4
    # labeled configurations visited per (c, p) before the exhaustive column is skipped
    exhaustive_cap: int = 20_000


def degree_zero_count(c: int, p: int) -> int:
    seen = set()
    for g in labeled_configurations(c, p):
        if is_connected(g) and degree(g).degree == 0:
            seen.add(canonical_form(g))
    return len(seen)


def main(cfg: Config) -> None:
    print("colors\thalf_order\tvia_trees\tvia_degree\tall_classes\tseconds")
    for c in range(cfg.min_colors, cfg.max_colors + 1):
        for p in range(1, cfg.max_half_order + 1):
            start = time.perf_counter()
            trees = count_melonic(c - 1, p - 1)
            configs = 1
            for k in range(2, p + 1):
                configs *= k
            configs **= c - 1
            if configs <= cfg.exhaustive_cap:
                exhaustive = str(degree_zero_count(c, p))
                total = str(len(enumerate_bubbles(c, p)))
            else:
                exhaustive = total = "-"
            took = time.perf_counter() - start
            print(f"{c}\t{p}\t{trees}\t{exhaustive}\t{total}\t{took:.2f}")


if __name__ == "__main__":
    main(parse_config(Config, __doc__.splitlines()[0]))
