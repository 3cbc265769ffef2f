"""Predicted index words i(n) for perfect expansions and checking a computed
expansion against them.

Index words grow geometrically, so the generators stream; nothing deeper than
the requested prefix is materialized.
"""
from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass, field
from itertools import islice
from typing import Iterator, Sequence

from .contfrac import Word
from .errors import DomainError
from .pk import PkContext, ab_element, classify, closed_degree, proportional


def _check_k(k: int) -> None:
    if k < 1:
        raise DomainError("k must be positive")


# -- first kind --------------------------------------------------------------

def _first_level(k: int, n: int) -> Iterator[int]:
    """V_0 = 0, V_n = n, V_0^[2k], ..., V_{n-1}^[2k]."""
    if n == 0:
        yield 0
        return
    yield n
    for j in range(n):
        for _ in range(2 * k):
            yield from _first_level(k, j)


def iter_first(k: int, l: int) -> Iterator[int]:
    """V_0^[l], V_1^[l], V_2^[l], ... without end."""
    _check_k(k)
    if l < 1:
        raise DomainError("l must be positive")
    n = 0
    while True:
        for _ in range(l):
            yield from _first_level(k, n)
        n += 1


def first_level(k: int, n: int) -> list[int]:
    return list(_first_level(k, n))


def index_word_first(k: int, l: int, budget: int) -> list[int]:
    return list(islice(iter_first(k, l), budget))


# -- second kind -------------------------------------------------------------

def _j_word(k: int, n: int) -> Iterator[int]:
    """J_1 = 0^[2k], 1 and J_{n+1} = (2n, 2n-1, J_n^[2k-1])^[2k-1], 2n, 2n+1."""
    if n == 1:
        yield from [0] * (2 * k)
        yield 1
        return
    yield from _block(k, n - 1, 2 * k - 1)


def _block(k: int, n: int, reps: int) -> Iterator[int]:
    """(2n, 2n-1, J_n^[2k-1])^[reps], 2n, 2n+1."""
    for _ in range(reps):
        yield 2 * n
        yield 2 * n - 1
        for _ in range(2 * k - 1):
            yield from _j_word(k, n)
    yield 2 * n
    yield 2 * n + 1


def j_word(k: int, n: int) -> list[int]:
    _check_k(k)
    if n < 1:
        raise DomainError("J_n is defined for n >= 1")
    return list(_j_word(k, n))


def v_ni(k: int, n: int, li: int) -> list[int]:
    """V_{n,i} for a gap l_i."""
    return list(_block(k, n, li - 1))


def _check_gaps(gaps: Sequence[int]) -> None:
    if not gaps or gaps[0] < 1 or any(g < 2 for g in gaps[1:]):
        raise DomainError("need l_1 >= 1 and l_i >= 2 for i > 1")


def _second_level(k: int, n: int, gaps: Sequence[int]) -> Iterator[int]:
    if n == 0:
        for g in gaps:
            yield from [0] * g
            yield 1
        return
    for g in gaps:
        yield from _block(k, n, g - 1)


def second_level(k: int, n: int, gaps: Sequence[int]) -> list[int]:
    _check_gaps(gaps)
    return list(_second_level(k, n, gaps))


def iter_second(k: int, gaps: Sequence[int]) -> Iterator[int]:
    """V_0, V_1, V_2, ... without end."""
    _check_k(k)
    _check_gaps(gaps)
    n = 0
    while True:
        yield from _second_level(k, n, gaps)
        n += 1


def index_word_second(k: int, gaps: Sequence[int], budget: int) -> list[int]:
    return list(islice(iter_second(k, gaps), budget))


# -- degrees -----------------------------------------------------------------

def kind_letter(kind: str) -> str:
    if kind not in ("first", "second"):
        raise DomainError(f"kind must be 'first' or 'second', got {kind!r}")
    return "A" if kind == "first" else "B"


def index_degrees(p: int, k: int, kind: str, indices: Sequence[int]) -> list[int]:
    ab = kind_letter(kind)
    cache: dict[int, int] = {}
    out = []
    for i in indices:
        if i not in cache:
            cache[i] = closed_degree(p, k, ab, i)
        out.append(cache[i])
    return out


def degree_total(p: int, k: int, kind: str, indices: Sequence[int]) -> int:
    """D(W): the sum of the degrees named by an index word."""
    return sum(index_degrees(p, k, kind, indices))


def predicted_indices(k: int, kind: str, meta, budget: int) -> list[int]:
    """``meta`` is l for the first kind and (l_1, ..., l_m) for the second."""
    if kind_letter(kind) == "A":
        return index_word_first(k, int(meta), budget)
    return index_word_second(k, tuple(meta), budget)


def predicted_degree_sum(p: int, k: int, kind: str, meta, budget: int) -> int:
    return degree_total(p, k, kind, predicted_indices(k, kind, meta, budget))


# -- index multiplicities ----------------------------------------------------
# Deep levels are far too long to stream, but their index multiplicities follow
# the same recursions and give D(W) exactly.

def first_level_counts(k: int, n: int) -> Counter:
    c = Counter({n: 1})
    for j in range(n):
        for i, m in first_level_counts(k, j).items():
            c[i] += 2 * k * m
    return c


def j_counts(k: int, n: int) -> Counter:
    if n == 1:
        return Counter({0: 2 * k, 1: 1})
    return block_counts(k, n - 1, 2 * k - 1)


def block_counts(k: int, n: int, reps: int) -> Counter:
    """Multiplicities in (2n, 2n-1, J_n^[2k-1])^[reps], 2n, 2n+1."""
    c = Counter()
    for i, m in j_counts(k, n).items():
        c[i] += reps * (2 * k - 1) * m
    c[2 * n] += reps + 1
    c[2 * n - 1] += reps
    c[2 * n + 1] += 1
    return +c


def second_level_counts(k: int, n: int, gaps: Sequence[int]) -> Counter:
    _check_gaps(gaps)
    if n == 0:
        return Counter({0: sum(gaps), 1: len(gaps)})
    c = Counter()
    for g in gaps:
        c.update(block_counts(k, n, g - 1))
    return c


def counts_total(p: int, k: int, kind: str, counts: Counter) -> int:
    ab = kind_letter(kind)
    return sum(m * closed_degree(p, k, ab, i) for i, m in counts.items())


# -- verification ------------------------------------------------------------

@dataclass
class PerfectionReport:
    checked: int
    matched: int
    lambdas: list[int] = field(default_factory=list)
    indices: list[int] = field(default_factory=list)
    degrees: list[int] = field(default_factory=list)
    mismatch_position: int | None = None
    reason: str | None = None

    @property
    def perfect(self) -> bool:
        return self.mismatch_position is None

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "index", "lambda", "degree"])
        for n, row in enumerate(zip(self.indices, self.lambdas, self.degrees), start=1):
            w.writerow([n, *row])
        return buf.getvalue()


def verify_perfect(expansion: Word, ctx: PkContext, kind: str, meta) -> PerfectionReport:
    """Compare each letter with lambda_n X_{i(n)}, X = A or B, stopping at the first miss."""
    ab = kind_letter(kind)
    indices = predicted_indices(ctx.k, kind, meta, len(expansion))
    rep = PerfectionReport(checked=len(expansion), matched=0)
    for n, (a, i) in enumerate(zip(expansion, indices), start=1):
        deg = int(a.degree)
        if deg != closed_degree(ctx.p, ctx.k, ab, i):
            rep.mismatch_position, rep.reason = n, "degree mismatch"
            break
        lam = proportional(a, ab_element(ctx, ab, i).poly)
        if lam is None:
            other = classify(ctx, a, ab)
            rep.mismatch_position = n
            rep.reason = "index mismatch" if other is not None else "not proportional"
            break
        rep.lambdas.append(lam)
        rep.indices.append(i)
        rep.degrees.append(deg)
        rep.matched += 1
    return rep


@dataclass
class ExtremalReport:
    depth: int
    lambdas: list[int]
    mismatch_position: int | None = None
    reason: str | None = None


def check_extremal(expansion: Word, ctx: PkContext, eps1: int) -> ExtremalReport:
    """a_n = lambda_n B_{n-1} with lambda_{2n+1} = eps1^-n lambda_1 and
    lambda_{2n+2} = eps1^n lambda_2."""
    p = ctx.p
    lams: list[int] = []
    rep = ExtremalReport(0, lams)
    e_inv = pow(eps1, p - 2, p)
    for n, a in enumerate(expansion, start=1):
        lam = proportional(a, ab_element(ctx, "B", n - 1).poly)
        if lam is None:
            rep.mismatch_position, rep.reason = n, "not proportional to B_{n-1}"
            break
        if n >= 3:
            j = (n - 1) // 2
            want = (pow(e_inv, j, p) * lams[0] if n % 2 else pow(eps1, j, p) * lams[1]) % p
            if lam != want:
                rep.mismatch_position, rep.reason = n, f"lambda_{n} = {lam}, predicted {want}"
                break
        lams.append(lam)
        rep.depth = n
    return rep
