"""Irrationality measures: closed forms for perfect expansions and record-ratio
estimates from degree data.  Everything is exact (``fractions.Fraction``)."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, InvariantViolation


@dataclass
class MeasureReport:
    closed_form: Fraction | None
    empirical_ratios: list[tuple[int, Fraction]] = field(default_factory=list)
    converged: bool | None = None

    @property
    def last_ratio(self) -> Fraction | None:
        return self.empirical_ratios[-1][1] if self.empirical_ratios else None


def nu0_first(p: int, k: int, l: int) -> Fraction:
    """(p - 2k - 1) / l."""
    if l < 1 or not 1 <= k or 2 * k >= p:
        raise DomainError("need l >= 1 and 1 <= k < p/2")
    return Fraction(p - 2 * k - 1, l)


def nu0_second(p: int, k: int, gaps: Sequence[int]) -> tuple[Fraction, int, int]:
    """(nu_0, nu_1, nu_2) for the gap tuple (l_1, ..., l_m)."""
    if not gaps or not 1 <= k or 2 * k >= p:
        raise DomainError("need a nonempty gap tuple and 1 <= k < p/2")
    m = len(gaps)
    l = m + sum(gaps)
    nu1 = m * (p - 2 * k - 1) + l
    nu2 = nu1 + gaps[0] * (p * p - 1) - 2 * k * (p - 1)
    nu0 = (p - 1) * (p - 2 * k + 1) * max(Fraction(1, nu1), Fraction(p, nu2))
    return nu0, nu1, nu2


def nu_eq(p: int) -> Fraction:
    """Measure of the quartic's root: 8/3 when p = 1 mod 3, else 4."""
    if p <= 3:
        raise DomainError("the quartic needs p > 3")
    nu = Fraction(8, 3) if p % 3 == 1 else Fraction(4)
    if not 2 <= nu <= 4:
        raise InvariantViolation("measure outside the range allowed for a quartic")
    return nu


def ratio_at(degrees: Sequence[int], position: int) -> Fraction:
    """deg a_position / sum of the degrees before it (1-based)."""
    if not 2 <= position <= len(degrees):
        raise DomainError("position out of range")
    return Fraction(degrees[position - 1], sum(degrees[: position - 1]))


def record_ratios(degrees: Sequence[int], tail_start: int = 1) -> list[tuple[int, Fraction]]:
    """(position, ratio) where deg a_{n+1} / sum_{i<=n} deg a_i beats every earlier
    ratio from ``tail_start`` on."""
    out: list[tuple[int, Fraction]] = []
    total = 0
    best = None
    for pos, d in enumerate(degrees, start=1):
        if pos > 1 and pos > tail_start:
            r = Fraction(d, total)
            if best is None or r > best:
                best = r
                out.append((pos, r))
        total += d
    return out


def empirical_nu0(degrees: Sequence[int], tail_start: int = 1,
                  target: Fraction | None = None, rel_tol: Fraction = Fraction(1, 20)) -> MeasureReport:
    """Record ratios; ``converged`` compares the last one with ``target``."""
    if not degrees:
        raise DomainError("need at least one degree")
    if not 0 <= tail_start < len(degrees):
        raise DomainError("tail_start must lie inside the data")
    recs = record_ratios(degrees, tail_start)
    rep = MeasureReport(target, recs)
    if target is not None and recs:
        last = recs[-1][1]
        rep.converged = abs(last - target) <= rel_tol * abs(target) if target else last <= rel_tol
    return rep


def level_peaks(degrees: Sequence[int]) -> list[tuple[int, Fraction]]:
    """Ratio at the first occurrence of each new maximal degree.

    Record ratios over-weight the very first letters; first occurrences of
    new maxima are where the limsup is attained for perfect expansions.
    """
    out: list[tuple[int, Fraction]] = []
    total = 0
    top = 0
    for pos, d in enumerate(degrees, start=1):
        if d > top and pos > 1:
            out.append((pos, Fraction(d, total)))
        top = max(top, d)
        total += d
    return out
