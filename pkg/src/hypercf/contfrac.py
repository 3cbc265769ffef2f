"""Continued fractions over F_p[T]: words, continuants, expansions, brackets.

A word is a tuple of :class:`DensePoly` letters; a constant word is a tuple of
ints in ``range(p)``.  Both are plain tuples so slicing and concatenation work
as usual.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence, Tuple

from .errors import DomainError
from .laurent import LaurentSeries
from .modular_poly import DensePoly, divrem, inv

Word = Tuple[DensePoly, ...]
ConstWord = Tuple[int, ...]


@dataclass(frozen=True)
class ConvergentPair:
    """x_n = <a_1..a_n>, y_n = <a_2..a_n>; x_0 = 1, y_0 = 0."""

    x: DensePoly
    y: DensePoly
    n: int


def _field(word: Sequence, p: int | None) -> int:
    if p is not None:
        return p
    for letter in word:
        if isinstance(letter, DensePoly):
            return letter.p
    raise DomainError("cannot infer p from an empty or constant word; pass p")


def continuant(word: Sequence[DensePoly], p: int | None = None) -> DensePoly:
    """<w_1..w_n> via K_n = w_n K_{n-1} + K_{n-2}."""
    p = _field(word, p)
    prev, cur = DensePoly.zero(p), DensePoly.const(1, p)
    for w in word:
        prev, cur = cur, w * cur + prev
    return cur


def convergents(word: Sequence[DensePoly], p: int | None = None) -> Iterator[ConvergentPair]:
    """Yield (x_n, y_n) for n = 0..len(word)."""
    p = _field(word, p)
    one, zero = DensePoly.const(1, p), DensePoly.zero(p)
    x_prev, x = zero, one
    y_prev, y = one, zero
    yield ConvergentPair(x, y, 0)
    for n, a in enumerate(word, start=1):
        x_prev, x = x, a * x + x_prev
        y_prev, y = y, a * y + y_prev
        yield ConvergentPair(x, y, n)


def fold(word: Sequence[DensePoly], p: int | None = None) -> tuple[DensePoly, DensePoly]:
    """[W] as the fraction <W>/<W'>."""
    if not word:
        raise DomainError("[ ] of the empty word is undefined")
    p = _field(word, p)
    return continuant(word, p), continuant(word[1:], p)


def fold_with_tail(word: Sequence[DensePoly], tail: LaurentSeries,
                   n_terms: int = 64) -> LaurentSeries:
    """[w_1, ..., w_n, tail] = (x_n tail + x_{n-1}) / (y_n tail + y_{n-1}).

    ``n_terms`` is the precision used when ``tail`` is exact.
    """
    if not word:
        return tail
    *_, prev, last = convergents(word, tail.p)
    num = tail * last.x + prev.x
    den = tail * last.y + prev.y
    if num.is_exact and den.is_exact:
        return num * den.inverse(n_terms)
    return num / den


def expand_rational(num: DensePoly, den: DensePoly) -> Word:
    """Euclidean algorithm: the unique CF of num/den with non-constant tail letters."""
    if den.is_zero():
        raise DomainError("zero denominator")
    letters = []
    while not den.is_zero():
        q, r = divrem(num, den)
        letters.append(q)
        num, den = den, r
    return tuple(letters)


def expand_series(alpha: LaurentSeries, max_letters: int) -> tuple[Word, int]:
    """Partial quotients of ``alpha`` that its known precision fully determines.

    The known window of ``alpha`` is read as a rational function beta and
    expanded by the Euclidean algorithm.  Letter n is emitted only when
    |alpha - beta| < |y_n|^-2, which forces alpha and beta to share a_1..a_n.
    Returns the word and its length (the certified count).
    """
    if alpha.top is None:
        return (), 0
    if alpha.top < 1:
        raise DomainError("expansion needs |alpha| > 1")
    if alpha.floor is not None and alpha.floor >= 0:
        return (), 0
    num, den = alpha.to_fraction()
    floor = alpha.floor
    letters: list[DensePoly] = []
    deg_y = 0
    while len(letters) < max_letters and not den.is_zero():
        q, r = divrem(num, den)
        if letters:
            deg_y += int(q.degree)
        if floor is not None and not floor < -2 * deg_y:
            break
        letters.append(q)
        num, den = den, r
    return tuple(letters), len(letters)


def bracket(word: Sequence[int], p: int) -> int | None:
    """[c_1, ..., c_n] in F_p, or None when some strict suffix bracket is 0."""
    if not word:
        return None
    val = word[-1] % p
    for c in reversed(word[:-1]):
        if val == 0:
            return None
        val = (c + inv(val, p)) % p
    return val


def scalar_action(y: int, word: Sequence, p: int | None = None) -> tuple:
    """y.W = y w_1, y^-1 w_2, y w_3, ..."""
    p = _field(word, p) if word else (p or 0)
    if not word:
        return ()
    y %= p
    if y == 0:
        raise DomainError("scalar action needs y != 0")
    yi = inv(y, p)
    out = []
    for i, w in enumerate(word):
        s = y if i % 2 == 0 else yi
        out.append(w.scale(s) if isinstance(w, DensePoly) else w * s % p)
    return tuple(out)


def reverse(word: Sequence) -> tuple:
    return tuple(reversed(word))


def repeat(word: Sequence, n: int) -> tuple:
    """W^[n]: the word repeated n times (empty for n = 0)."""
    return tuple(word) * n


def degree_sum(word: Sequence[DensePoly]) -> int:
    return sum(int(w.degree) for w in word)


def evaluate_at(word: Sequence[DensePoly], x: int) -> ConstWord:
    """Letterwise evaluation at T = x, giving a constant word."""
    return tuple(w(x) for w in word)


def word_to_json(word: Sequence[DensePoly]) -> list[list[int]]:
    return [w.to_list() for w in word]


def word_from_json(data: Sequence[Sequence[int]], p: int) -> Word:
    return tuple(DensePoly.from_text(list(c), p) for c in data)
