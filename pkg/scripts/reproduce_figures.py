"""Regenerate the degree figures for p = 5 and p = 7 and diff them against the
stored transcriptions."""
import argparse
import time
from dataclasses import dataclass

from hypercf.figures import CAPTION_COUNT, FIGURE_PRIME, figure_degrees, render_figure
from hypercf.quartic import expand_alpha


@dataclass
class Config:
    width: int = 72
    caption_length: bool = False


def main(cfg: Config) -> int:
    status = 0
    for n, p in FIGURE_PRIME.items():
        gold = figure_degrees(n)
        count = CAPTION_COUNT[n] if cfg.caption_length else len(gold)
        t = time.perf_counter()
        degs = expand_alpha(p, count).degrees()
        secs = time.perf_counter() - t
        same = degs[: len(gold)] == gold
        print(f"figure {n} (p={p}): {len(degs)} letters in {secs:.2f}s, "
              f"matches transcription: {same}")
        print(render_figure(degs, cfg.width))
        print()
        status |= not same
    return status


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--width", type=int, default=72)
    ap.add_argument("--caption-length", action="store_true",
                    help="emit the letter counts named in the captions (450 and 430)")
    a = ap.parse_args()
    raise SystemExit(main(Config(a.width, a.caption_length)))
