"""Sample random H(1) / H(2) data, expand, and test perfection.  Writes one CSV
row per spec; a row with perfect=False is a candidate counterexample."""
import argparse
import csv
import json
import random
import sys
import time
from dataclasses import dataclass

from hypercf.hyper import check_h1, check_h2, expand, random_feasible_spec
from hypercf.patterns import verify_perfect


@dataclass
class Config:
    n: int = 40
    letters: int = 500
    max_degree_sum: int = 8000
    primes: tuple = (5, 7, 11, 13)
    seed: int = 0


def main(cfg: Config) -> int:
    rng = random.Random(cfg.seed)
    out = csv.writer(sys.stdout)
    out.writerow(["kind", "p", "k", "shape", "certified", "matched", "perfect", "seconds", "spec"])
    bad = 0
    for i in range(cfg.n):
        kind = "first" if i % 2 == 0 else "second"
        spec = random_feasible_spec(kind, cfg.primes, cfg.letters, cfg.max_degree_sum, rng)
        hyp = check_h1(spec) if kind == "first" else check_h2(spec)
        meta = spec.l if kind == "first" else hyp.gaps
        t = time.perf_counter()
        exp = expand(spec, cfg.letters)
        rep = verify_perfect(exp.word, spec.ctx, kind, meta)
        bad += not rep.perfect
        out.writerow([kind, spec.p, spec.k, meta, exp.certified, rep.matched, rep.perfect,
                      f"{time.perf_counter() - t:.2f}", json.dumps(spec.to_dict())])
    return 1 if bad else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=40)
    ap.add_argument("--letters", type=int, default=500)
    ap.add_argument("--max-degree-sum", type=int, default=8000)
    ap.add_argument("--primes", type=int, nargs="+", default=[5, 7, 11, 13])
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    raise SystemExit(main(Config(a.n, a.letters, a.max_degree_sum, tuple(a.primes), a.seed)))
