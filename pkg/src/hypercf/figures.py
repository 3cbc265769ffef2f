"""Golden degree lists for the quartic's root (p = 5 and p = 7) and the
bracketed text layout they are printed in."""
from __future__ import annotations

import hashlib
import re
import textwrap
from importlib import resources
from typing import Sequence

from .errors import InvariantViolation

# figure number -> prime, and the letter count each figure is captioned with
FIGURE_PRIME = {1: 5, 2: 7}
CAPTION_COUNT = {1: 450, 2: 430}


def _data(name: str) -> bytes:
    return resources.files("hypercf").joinpath("data", name).read_bytes()


def manifest() -> dict[str, str]:
    out = {}
    for line in _data("SHA256SUMS").decode().splitlines():
        if line.strip():
            digest, name = line.split()
            out[name] = digest
    return out


def figure_text(n: int) -> str:
    name = f"figure{n}.txt"
    raw = _data(name)
    if hashlib.sha256(raw).hexdigest() != manifest()[name]:
        raise InvariantViolation(f"{name} does not match its checksum")
    return raw.decode()


def parse_figure(text: str) -> list[int]:
    return [int(x) for x in re.findall(r"\d+", text)]


def figure_degrees(n: int) -> list[int]:
    return parse_figure(figure_text(n))


def render_figure(degrees: Sequence[int], width: int = 72) -> str:
    """'[d1, d2, ...]' wrapped at ``width`` columns."""
    body = "[" + ", ".join(str(int(d)) for d in degrees) + "]"
    return textwrap.fill(body, width=width, break_long_words=False, break_on_hyphens=False)


def normalize(text: str) -> str:
    return re.sub(r"\s+", "", text)
