"""Run the full quartic pipeline (divisibility, degree claims, hypothesis,
two-route expansion, pattern match) over a range of primes and time it."""
import argparse
import time
from dataclasses import dataclass

from hypercf.cli import verify_prime
from hypercf.hyper import precision_cap
from hypercf.modular_poly import is_prime


@dataclass
class Config:
    lo: int = 5
    hi: int = 41
    count: int = 1000


def main(cfg: Config) -> int:
    ok_all = True
    for p in range(cfg.lo, cfg.hi + 1):
        if p <= 3 or not is_prime(p):
            continue
        t = time.perf_counter()
        ok, text = verify_prime(p, cfg.count, precision_cap())
        print(text)
        print(f"  [{time.perf_counter() - t:.1f}s]")
        ok_all &= ok
    return 0 if ok_all else 1


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lo", type=int, default=5)
    ap.add_argument("--hi", type=int, default=41)
    ap.add_argument("--count", type=int, default=1000)
    a = ap.parse_args()
    raise SystemExit(main(Config(a.lo, a.hi, a.count)))
