"""P_k-expansions of first and second kind: the defining equation, certified
expansion of its root, and the hypotheses H(1) / H(2) on the initial data."""
from __future__ import annotations

import json
import os
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .contfrac import Word, bracket, convergents, degree_sum, expand_series
from .errors import DomainError, InvariantViolation, PrecisionError, TheoremViolation
from .laurent import LaurentSeries, from_fraction, frobenius_pow, hensel_root
from .modular_poly import DensePoly, XPoly, dilate, inv
from .pk import PkContext, make_context, proportional

KINDS = ("first", "second")
DEFAULT_CAP = 1 << 20


def precision_cap() -> int:
    raw = os.environ.get("HYPERCF_PRECISION_CAP", "")
    return int(raw) if raw.strip() else DEFAULT_CAP


@dataclass(frozen=True)
class PkExpansionSpec:
    ctx: PkContext
    kind: str
    initial: Word
    eps1: int
    eps2: int
    positions: tuple[int, ...] | None = None

    def __post_init__(self):
        p = self.ctx.p
        if self.kind not in KINDS:
            raise DomainError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if not self.initial:
            raise DomainError("need at least one initial letter")
        for a in self.initial:
            if a.p != p:
                raise DomainError("initial letter over the wrong field")
            if a.is_zero() or a.degree < 1:
                raise DomainError("initial letters must be non-constant")
        if self.eps1 % p == 0 or self.eps2 % p == 0:
            raise DomainError("eps1 and eps2 must be nonzero mod p")
        object.__setattr__(self, "eps1", self.eps1 % p)
        object.__setattr__(self, "eps2", self.eps2 % p)
        if self.positions is not None:
            object.__setattr__(self, "positions", tuple(int(n) for n in self.positions))

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def k(self) -> int:
        return self.ctx.k

    @property
    def l(self) -> int:
        return len(self.initial)

    def to_dict(self) -> dict:
        d = {"p": self.p, "k": self.k, "kind": self.kind,
             "initial": [a.to_list() for a in self.initial],
             "eps1": self.eps1, "eps2": self.eps2}
        if self.positions is not None:
            d["positions"] = list(self.positions)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "PkExpansionSpec":
        try:
            p, k = int(d["p"]), int(d["k"])
            ctx = make_context(p, k)
            initial = tuple(DensePoly.from_text(list(c), p) for c in d["initial"])
            return cls(ctx, d["kind"], initial, int(d["eps1"]), int(d["eps2"]),
                       d.get("positions"))
        except KeyError as e:
            raise DomainError(f"spec is missing field {e}") from None


def load_spec(path: str | Path) -> PkExpansionSpec:
    with open(path, encoding="utf-8") as fh:
        return PkExpansionSpec.from_dict(json.load(fh))


def dump_spec(spec: PkExpansionSpec, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(spec.to_dict(), fh)
        fh.write("\n")


@dataclass
class HypothesisReport:
    satisfied: bool
    message: str = ""
    m: int | None = None
    positions: tuple[int, ...] = ()
    gaps: tuple[int, ...] = ()
    ambiguous: bool = False


# -- the equation ------------------------------------------------------------

def derive_rpq(spec: PkExpansionSpec) -> tuple[int, DensePoly, DensePoly]:
    ctx = spec.ctx
    p = ctx.p
    if spec.kind == "first":
        r, P, Q = p, ctx.Pk, ctx.Qk
    else:
        r, P, Q = p * p, ctx.Pk ** (p - 1), dilate(ctx.Qk, p)
    P, Q = P.scale(spec.eps1), Q.scale(spec.eps2)
    if not Q.degree < P.degree < r:
        raise InvariantViolation(f"need deg Q < deg P < r, got {Q.degree}, {P.degree}, {r}")
    return r, P, Q


def _last_convergents(word: Word, p: int):
    *_, prev, last = convergents(word, p)
    return prev, last


def build_equation(spec: PkExpansionSpec) -> XPoly:
    """y_l X^(r+1) - x_l X^r + (P y_{l-1} - Q y_l) X - P x_{l-1} + Q x_l."""
    r, P, Q = derive_rpq(spec)
    prev, last = _last_convergents(spec.initial, spec.p)
    terms = {
        r + 1: last.y,
        r: -last.x,
        1: P * prev.y - Q * last.y,
        0: Q * last.x - P * prev.x,
    }
    return XPoly({e: c for e, c in terms.items() if not c.is_zero()}, spec.p)


def seed_series(spec: PkExpansionSpec, n_terms: int) -> LaurentSeries:
    _, last = _last_convergents(spec.initial, spec.p)
    return from_fraction(last.x, last.y, n_terms)


@dataclass
class Expansion:
    word: Word
    certified: int
    root: LaurentSeries | None = None
    precision: int = 0
    capped: bool = False
    notes: list[str] = field(default_factory=list)

    def degrees(self) -> list[int]:
        return [int(a.degree) for a in self.word]


def root_series(f: XPoly, seed_of, n_terms: int) -> LaurentSeries:
    return hensel_root(f, seed_of(n_terms), n_terms)


def expand_equation(f: XPoly, seed_of, max_letters: int, start: int,
                    cap: int | None = None) -> Expansion:
    """Certified letters of the root of ``f`` picked out by ``seed_of``.

    Precision doubles from ``start`` until ``max_letters`` are certified or the
    cap is reached; the result then carries whatever was certified.
    """
    cap = precision_cap() if cap is None else cap
    n = max(16, min(start, cap))
    best = Expansion((), 0)
    while True:
        root = root_series(f, seed_of, n)
        word, count = expand_series(root, max_letters)
        if count < best.certified or word[:best.certified] != best.word:
            raise InvariantViolation("certified prefix changed when precision grew")
        best = Expansion(word, count, root, n)
        if count >= max_letters:
            return best
        if n >= cap:
            best.capped = True
            best.notes.append(f"precision cap {cap} reached with {count} letters certified")
            return best
        n = min(2 * n, cap)


def initial_precision(spec: PkExpansionSpec) -> int:
    r, _, _ = derive_rpq(spec)
    return 4 * (degree_sum(spec.initial) + r)


def expand(spec: PkExpansionSpec, max_letters: int, cap: int | None = None,
           start: int | None = None) -> Expansion:
    """First ``max_letters`` partial quotients of the spec's root, certified."""
    if max_letters < 0:
        raise DomainError("max_letters must be nonnegative")
    f = build_equation(spec)
    n0 = initial_precision(spec) if start is None else start
    exp = expand_equation(f, lambda n: seed_series(spec, n), max(max_letters, spec.l), n0, cap)
    head = min(spec.l, exp.certified)
    if exp.word[:head] != spec.initial[:head]:
        bad = next(i for i in range(head) if exp.word[i] != spec.initial[i])
        raise TheoremViolation(f"letter {bad + 1} of the root differs from the initial data")
    exp.word = exp.word[:max_letters]
    exp.certified = min(exp.certified, max_letters)
    return exp


def functional_residual(spec: PkExpansionSpec, root: LaurentSeries) -> LaurentSeries:
    """alpha^r - (P alpha_{l+1} + Q), which must vanish to the known precision."""
    r, P, Q = derive_rpq(spec)
    prev, last = _last_convergents(spec.initial, spec.p)
    num = root * prev.y - LaurentSeries.from_poly(prev.x)
    den = LaurentSeries.from_poly(last.x) - root * last.y
    tail = num / den
    return frobenius_pow(root, r) - (tail * P + LaurentSeries.from_poly(Q))


# -- hypotheses --------------------------------------------------------------

def _linear_constants(word: Word, base: DensePoly) -> list[int] | None:
    out = []
    for a in word:
        lam = proportional(a, base)
        if lam is None:
            return None
        out.append(lam)
    return out


def check_h1(spec: PkExpansionSpec) -> HypothesisReport:
    if spec.kind != "first":
        return HypothesisReport(False, "H(1) applies to first-kind expansions only")
    ctx = spec.ctx
    p = ctx.p
    lam = _linear_constants(spec.initial, ctx.T)
    if lam is None:
        return HypothesisReport(False, "an initial letter is not a multiple of T")
    return h1_constants_ok(p, ctx.k, ctx.omega, lam, spec.eps1, spec.eps2)


def h1_constants_ok(p: int, k: int, omega: int, lam: Sequence[int],
                    eps1: int, eps2: int) -> HypothesisReport:
    word = list(reversed(lam))
    word[-1] = (word[-1] + inv(omega, p) * eps2) % p
    b = bracket(word, p)
    want = 2 * k * eps1 * inv(eps2, p) % p
    if b is None:
        return HypothesisReport(False, "bracket is undefined")
    if b != want:
        return HypothesisReport(False, f"bracket is {b}, need 2k eps1/eps2 = {want}")
    return HypothesisReport(True, "H(1) holds")


def _h2_conditions(p: int, omega: int, lam: Sequence[int], positions: Sequence[int],
                   eps2: int) -> str | None:
    """None when the bracket conditions of H(2) hold for these positions."""
    l = len(lam)
    if not positions or positions[-1] != l:
        return f"last position must be l={l}"
    if positions[0] <= 1:
        return "first position must exceed 1"
    for a, b in zip(positions, positions[1:]):
        if b - a < 3:
            return f"positions {a} and {b} are closer than 3"
    head = bracket(lam[: positions[0] - 1], p)
    if head is None or head == 0:
        return "[lambda_1..lambda_{n_1-1}] is undefined or zero"
    for a, b in zip(positions, positions[1:]):
        if bracket(lam[a:b - 1], p) != 0:
            return f"[lambda_{a + 1}..lambda_{b - 1}] is not 0"
    if eps2 % p != (-omega * head) % p:
        return f"eps2 = {eps2}, need -omega [lambda_1..lambda_{{n_1-1}}] = {(-omega * head) % p}"
    return None


def _search_positions(p: int, omega: int, lam: Sequence[int], eps2: int,
                      allowed: Sequence[bool]) -> list[tuple[int, ...]]:
    """All position tuples (1-based) compatible with H(2), in lexicographic order."""
    l = len(lam)
    found: list[tuple[int, ...]] = []

    def extend(acc: list[int]):
        if len(found) > 1:
            return
        last = acc[-1]
        if last == l:
            found.append(tuple(acc))
            return
        for nxt in range(last + 3, l + 1):
            if allowed[nxt - 1] and bracket(lam[last:nxt - 1], p) == 0:
                extend(acc + [nxt])

    for n1 in range(2, l + 1):
        if not allowed[n1 - 1]:
            continue
        head = bracket(lam[: n1 - 1], p)
        if head is None or head == 0 or eps2 % p != (-omega * head) % p:
            continue
        extend([n1])
    return found


def check_h2(spec: PkExpansionSpec) -> HypothesisReport:
    if spec.kind != "second":
        return HypothesisReport(False, "H(2) applies to second-kind expansions only")
    ctx = spec.ctx
    p, T, B1 = ctx.p, ctx.T, ctx.A1
    tie = int(B1.degree) == 1
    lam: list[int] = []
    is_b0: list[bool] = []
    is_b1: list[bool] = []
    for a in spec.initial:
        c0, c1 = proportional(a, T), proportional(a, B1)
        if c0 is None and c1 is None:
            return HypothesisReport(False, "an initial letter is neither lambda B_0 nor lambda B_1")
        lam.append(c0 if c0 is not None else c1)
        is_b0.append(c0 is not None)
        is_b1.append(c1 is not None)
    if tie and any(c0 != c1 for c0, c1 in zip(is_b0, is_b1)):
        return HypothesisReport(False, "B_0 and B_1 have equal degree but letters differ")

    def report(pos: tuple[int, ...], ambiguous: bool, msg: str) -> HypothesisReport:
        gaps = (pos[0] - 1,) + tuple(b - a - 1 for a, b in zip(pos, pos[1:]))
        return HypothesisReport(True, msg, len(pos), pos, gaps, ambiguous)

    if spec.positions is not None:
        pos = spec.positions
        bad = [n for n in range(1, spec.l + 1)
               if (n in pos and not is_b1[n - 1]) or (n not in pos and not is_b0[n - 1])]
        if bad:
            return HypothesisReport(False, f"letter {bad[0]} does not match the declared positions")
        err = _h2_conditions(p, ctx.omega, lam, pos, spec.eps2)
        if err:
            return HypothesisReport(False, err)
        return report(pos, tie, "H(2) holds at the declared positions")

    if not tie:
        pos = tuple(n for n in range(1, spec.l + 1) if is_b1[n - 1])
        err = _h2_conditions(p, ctx.omega, lam, pos, spec.eps2)
        if err:
            return HypothesisReport(False, err)
        return report(pos, False, "H(2) holds")

    cands = _search_positions(p, ctx.omega, lam, spec.eps2, [True] * spec.l)
    if not cands:
        return HypothesisReport(False, "no choice of positions satisfies the bracket conditions",
                                ambiguous=True)
    msg = "H(2) holds; B_0 and B_1 coincide so positions come from the brackets"
    if len(cands) > 1:
        msg += f"; several position tuples fit, the first is reported"
    return report(cands[0], True, msg)


# -- random specs ------------------------------------------------------------

def _nonzero(rng: random.Random, p: int) -> int:
    return rng.randrange(1, p)


def random_h1_spec(p: int, k: int, l: int, rng: random.Random) -> PkExpansionSpec:
    ctx = make_context(p, k)
    while True:
        lam = [_nonzero(rng, p) for _ in range(l)]
        eps2 = _nonzero(rng, p)
        word = list(reversed(lam))
        word[-1] = (word[-1] + inv(ctx.omega, p) * eps2) % p
        b = bracket(word, p)
        if b:
            eps1 = b * eps2 * inv(2 * k, p) % p
            initial = tuple(ctx.T.scale(c) for c in lam)
            return PkExpansionSpec(ctx, "first", initial, eps1, eps2)


def _random_segment(rng: random.Random, p: int, n: int, zero: bool) -> list[int]:
    """n nonzero constants whose bracket is 0 (``zero``) or defined and nonzero."""
    while True:
        seg = [_nonzero(rng, p) for _ in range(n)]
        if zero:
            rest = bracket(seg[1:], p)
            if not rest:
                continue
            seg[0] = (-inv(rest, p)) % p
            return seg
        if bracket(seg, p):
            return seg


def random_h2_spec(p: int, k: int, gaps: Sequence[int], rng: random.Random) -> PkExpansionSpec:
    """gaps = (l_1, ..., l_m) with l_1 >= 1 and l_i >= 2 afterwards."""
    if not gaps or gaps[0] < 1 or any(g < 2 for g in gaps[1:]):
        raise DomainError("need l_1 >= 1 and l_i >= 2 for i > 1")
    ctx = make_context(p, k)
    lam: list[int] = []
    positions = []
    for i, g in enumerate(gaps):
        lam.extend(_random_segment(rng, p, g, zero=i > 0))
        lam.append(_nonzero(rng, p))
        positions.append(len(lam))
    head = bracket(lam[: gaps[0]], p)
    eps2 = (-ctx.omega * head) % p
    eps1 = _nonzero(rng, p)
    initial = tuple((ctx.A1 if n in positions else ctx.T).scale(c)
                    for n, c in enumerate(lam, start=1))
    return PkExpansionSpec(ctx, "second", initial, eps1, eps2, tuple(positions))


def extremal_spec(p: int, k: int, lam1: int, lam2: int, eps1: int) -> PkExpansionSpec:
    """Second kind with m = 1, l = 2: letters lambda_1 B_0, lambda_2 B_1."""
    ctx = make_context(p, k)
    eps2 = (-ctx.omega * lam1) % p
    return PkExpansionSpec(ctx, "second", (ctx.T.scale(lam1), ctx.A1.scale(lam2)),
                           eps1, eps2, (2,))


def random_feasible_spec(kind: str, primes: Sequence[int], letters: int, max_degree_sum: int,
                         rng: random.Random, max_tries: int = 10_000) -> PkExpansionSpec:
    """A random H(1) or H(2) spec whose predicted expansion to ``letters``
    letters has total degree at most ``max_degree_sum``."""
    from .patterns import predicted_degree_sum

    for _ in range(max_tries):
        p = rng.choice(list(primes))
        k = rng.randrange(1, (p + 1) // 2)
        if kind == "first":
            meta = rng.randrange(1, 9)
        else:
            m = rng.randrange(1, 4)
            meta = (rng.randrange(1, 5),) + tuple(rng.randrange(2, 5) for _ in range(m - 1))
        if predicted_degree_sum(p, k, kind, meta, letters) > max_degree_sum:
            continue
        if kind == "first":
            return random_h1_spec(p, k, meta, rng)
        return random_h2_spec(p, k, meta, rng)
    raise DomainError("no feasible spec found")
