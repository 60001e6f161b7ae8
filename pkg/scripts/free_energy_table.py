"""Free energy of the rank-3 quartic model, term by term, checked against Gaussian moments.

    python scripts/free_energy_table.py --order 3 --check-n 2
"""
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from _config import parse_config
from tensor_melon.bubbles import CouplingMap, enumerate_bubbles
from tensor_melon.feynman import free_energy_series, series_value
from tensor_melon.jackets import fraction_str
from tensor_melon.oracle import MomentSpec, gaussian_moment


@dataclass
class Config:
    order: int = 2
    # one coupling per quartic bubble when true, otherwise only the first
    all_quartics: bool = False
    check_n: int = 2


def main(cfg: Config) -> None:
    quartics = enumerate_bubbles(3, 2)
    chosen = quartics if cfg.all_quartics else quartics[:1]
    names = {b.key: f"q{k}" for k, b in enumerate(quartics)}
    series = free_energy_series(CouplingMap({b: 1 for b in chosen}), cfg.order)
    print("order\texponent\tcoefficient")
    for s in series:
        print(f"{'*'.join(names[k] for k in s.order)}\t{fraction_str(s.n_exponent)}\t{fraction_str(s.coefficient)}")
    if cfg.all_quartics:
        return
    # single coupling: compare order-n coefficients with the joint cumulants at N = check_n
    N, b = cfg.check_n, chosen[0]
    moments = [Fraction(1)] + [gaussian_moment(MomentSpec((b,) * k, 3, N)) for k in range(1, cfg.order + 1)]
    by_n = defaultdict(list)
    for s in series:
        by_n[len(s.order)].append(s)
    # cumulants from moments by the standard recursion
    kappa = [Fraction(0)] * (cfg.order + 1)
    for n in range(1, cfg.order + 1):
        kappa[n] = moments[n] - sum(comb(n - 1, m - 1) * kappa[m] * moments[n - m] for m in range(1, n))
    print(f"\ncheck at N={N}: n\tseries\tcumulant")
    fact = 1
    for n in range(1, cfg.order + 1):
        fact *= n
        predicted = (-1) ** n * Fraction(N) ** (2 * n) * kappa[n] / fact
        print(f"{n}\t{fraction_str(series_value(by_n[n], N))}\t{fraction_str(predicted)}")


if __name__ == "__main__":
    main(parse_config(Config, __doc__.splitlines()[0]))
