"""How deep the m=1, l=2 second-kind expansions can be certified as the
precision cap grows, and whether their constants follow eps1^(-+n)."""
import argparse
import time
from dataclasses import dataclass

from hypercf.hyper import expand, extremal_spec
from hypercf.patterns import check_extremal
from hypercf.pk import v_degree


@dataclass
class Config:
    caps: tuple = (1 << 12, 1 << 14, 1 << 16, 1 << 18, 1 << 20)
    pairs: tuple = ((3, 1), (5, 2), (7, 3), (7, 2))


def main(cfg: Config) -> None:
    print("p,k,cap,certified,constants_ok,deg_last,deg_next,seconds")
    for p, k in cfg.pairs:
        s = extremal_spec(p, k, 1, 2, 2)
        for cap in cfg.caps:
            t = time.perf_counter()
            exp = expand(s, 50, cap=cap)
            rep = check_extremal(exp.word, s.ctx, s.eps1)
            n = exp.certified
            print(f"{p},{k},{cap},{n},{rep.mismatch_position is None},"
                  f"{v_degree(p, k, n - 1)},{v_degree(p, k, n)},{time.perf_counter() - t:.1f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-cap-log2", type=int, default=20)
    a = ap.parse_args()
    main(Config(caps=tuple(1 << e for e in range(12, a.max_cap_log2 + 1, 2))))
