"""Closed-form irrationality measures of the quartic's root next to the ratios
observed at the first occurrence of each new maximal degree."""
import argparse
from dataclasses import dataclass

from hypercf.measure import level_peaks, nu0_first, nu0_second, nu_eq
from hypercf.modular_poly import is_prime
from hypercf.quartic import build_lambda0, expand_alpha


@dataclass
class Config:
    hi: int = 23
    count: int = 1500


def main(cfg: Config) -> None:
    print("p,kind,nu0_closed,nu,position,ratio,ratio_float")
    for p in range(5, cfg.hi + 1):
        if not is_prime(p):
            continue
        lam = build_lambda0(p)
        nu0 = (nu0_first(p, lam.k, lam.l) if lam.kind == "first"
               else nu0_second(p, lam.k, lam.meta)[0])
        degs = expand_alpha(p, cfg.count, cross_check=False).degrees()
        peaks = level_peaks(degs)
        pos, r = peaks[-1] if peaks else (0, 0)
        print(f"{p},{lam.kind},{nu0},{nu_eq(p)},{pos},{r},{float(r):.5f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--hi", type=int, default=23)
    ap.add_argument("--count", type=int, default=1500)
    a = ap.parse_args()
    main(Config(a.hi, a.count))
