"""Objects indexed by (p, k): omega_k, P_k, Q_k, the constant words v and w,
the words W1 and W2, the sequences A_n and B_n, and type-A/type-B tests."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .contfrac import (
    ConstWord,
    Word,
    bracket,
    expand_rational,
    fold,
    reverse,
    scalar_action,
)
from .errors import DomainError, InvariantViolation
from .laurent import LaurentSeries, from_fraction
from .modular_poly import DensePoly, check_odd_prime, dilate, divrem, inv


@dataclass(frozen=True)
class PkContext:
    p: int
    k: int
    omega: int
    Pk: DensePoly
    Qk: DensePoly
    A1: DensePoly
    v: ConstWord
    w: ConstWord

    @property
    def T(self) -> DensePoly:
        return DensePoly.t(self.p)


@dataclass(frozen=True)
class ABElement:
    kind: str
    n: int
    poly: DensePoly
    degree: int


@dataclass(frozen=True)
class Classification:
    lam: int
    n: int
    ambiguous: bool = False


def omega_k(p: int, k: int) -> int:
    """(-1)^k 2k prod_{1<=i<=k} (1 - 1/2i) in F_p."""
    acc = (-1) ** k * 2 * k % p
    for i in range(1, k + 1):
        acc = acc * (1 - inv(2 * i, p)) % p
    return acc


def q_sum_formula(p: int, k: int) -> DensePoly:
    """Q_k as the integral from 0 to T of (x^2 - 1)^(k-1)."""
    coeffs = [0] * (2 * k)
    for i in range(k):
        c = (-1) ** (k - 1 - i) * math.comb(k - 1, i)
        coeffs[2 * i + 1] = c * inv(2 * i + 1, p) % p
    return DensePoly(coeffs, p)


def v_sequence(p: int, k: int) -> ConstWord:
    v = [(2 * k - 1) % p]
    for i in range(1, 2 * k):
        if i * (2 * k - i) % p == 0:
            raise InvariantViolation(f"i(2k-i) vanishes mod p for i={i}")
        num = (2 * k - 2 * i - 1) * (2 * k - 2 * i + 1)
        v.append(num * inv(i * (2 * k - i), p) * inv(v[-1], p) % p)
    return tuple(v)


def w_sequence(p: int, k: int, v: ConstWord, omega: int) -> ConstWord:
    w = []
    for i in range(1, 2 * k):
        b = bracket(tuple(reversed(v[:i])), p)
        if b is None or b == 0:
            raise InvariantViolation(f"[v_{i},...,v_1] is not in F_p^*")
        w.append(inv(-omega * b, p))
    return tuple(w)


@lru_cache(maxsize=None)
def make_context(p: int, k: int) -> PkContext:
    """Build and cross-validate every (p, k) object."""
    p = check_odd_prime(p)
    if not (isinstance(k, int) and 1 <= k and 2 * k < p):
        raise DomainError(f"need 1 <= k < p/2, got k={k} for p={p}")
    T = DensePoly.t(p)
    Pk = (T * T - 1) ** k
    Tp = DensePoly.monomial(1, p, p)
    A1, rem = divrem(Tp, Pk)
    omega = omega_k(p, k)
    Qk = (A1 * Pk - Tp).scale(inv(omega, p))
    if Qk != q_sum_formula(p, k):
        raise InvariantViolation(f"the two constructions of Q_{k} disagree for p={p}")
    if not Qk.degree < Pk.degree:
        raise InvariantViolation("deg Q_k >= deg P_k")
    if Qk(1) != (-inv(omega, p)) % p:
        raise InvariantViolation("Q_k(1) != -1/omega_k")
    v = v_sequence(p, k)
    if bracket(v, p) != 0:
        raise InvariantViolation("[v_1,...,v_2k] != 0")
    w = w_sequence(p, k, v, omega)
    if omega * w[-1] % p != v[-1]:
        raise InvariantViolation("omega_k w_{2k-1} != v_{2k}")
    ctx = PkContext(p, k, omega, Pk, Qk, A1, v, w)
    if expand_rational(Pk, Qk) != word_w1(ctx):
        raise InvariantViolation("P_k/Q_k does not expand to W1")
    return ctx


def word_w1(ctx: PkContext) -> Word:
    T = ctx.T
    return tuple(T.scale(c) for c in ctx.v)


def word_w2(ctx: PkContext) -> Word:
    """v_1 A_1, w_1.W1, v_2 A_1, ..., w_{2k-1}.W1, v_2k A_1."""
    w1 = word_w1(ctx)
    out: list[DensePoly] = []
    for i in range(2 * ctx.k):
        out.append(ctx.A1.scale(ctx.v[i]))
        if i < 2 * ctx.k - 1:
            out.extend(scalar_action(ctx.w[i], w1))
    return tuple(out)


def w2_fraction(ctx: PkContext) -> tuple[DensePoly, DensePoly]:
    """The pair (P_k^(p-1), Q_k^p)."""
    return ctx.Pk ** (ctx.p - 1), dilate(ctx.Qk, ctx.p)


def check_symmetry(ctx: PkContext, word: Word) -> bool:
    """W = (-omega^2) . W*"""
    return word == scalar_action(-ctx.omega * ctx.omega, reverse(word), ctx.p)


def check_w2_expansion(ctx: PkContext) -> bool:
    w2 = word_w2(ctx)
    return (expand_rational(*w2_fraction(ctx)) == w2
            and check_symmetry(ctx, w2) and len(w2) == 4 * ctx.k ** 2)


def splice_step(A: DensePoly, delta: int, X: LaurentSeries, ctx: PkContext,
                n_terms: int | None = None) -> tuple[Word, LaurentSeries]:
    """A + delta Q_k/P_k + X = [A, delta^-1 . W1, X'].

    X' = X^-1 P_k^-2 + omega^2 delta^-1 Q_k/P_k.  ``n_terms`` sets the relative
    precision of X' when X is exact.
    """
    p = ctx.p
    delta %= p
    if delta == 0:
        raise DomainError("delta must be nonzero")
    if X.top is None:
        raise DomainError("X must be nonzero to precision")
    if not X.top < 0:
        raise DomainError("the splice step needs |X| < 1")
    dinv = inv(delta, p)
    word = (A,) + scalar_action(dinv, word_w1(ctx))
    n = int(X.precision) if not X.is_exact else (n_terms or 64)
    one = DensePoly.const(1, p)
    xinv = X.inverse(n)
    ppinv = from_fraction(one, ctx.Pk * ctx.Pk, n)
    head = xinv.mul(ppinv)
    qp_top = int(ctx.Qk.degree) - int(ctx.Pk.degree)
    qp = from_fraction(ctx.Qk.scale(ctx.omega * ctx.omega * dinv), ctx.Pk,
                       max(1, qp_top - head.floor))
    xprime = head + qp
    return word, xprime


def _tail_series(ctx: PkContext, i: int, n: int) -> LaurentSeries:
    """alpha_i = [v_i T, ..., v_2k T] as a series (1-based i)."""
    num, den = fold(word_w1(ctx)[i - 1:])
    return from_fraction(num, den, n)


def word_w2_by_splicing(ctx: PkContext, n_terms: int = 200) -> tuple[Word, ConstWord]:
    """Rebuild W2 by splicing W1 blocks one step at a time.

    Returns the word and the computed constants delta_i^-1, which must be the w_i.
    Each X' produced is also checked against P^-1 alpha_{i+1}^p + omega^2 w_i Q/P.
    """
    p, k = ctx.p, ctx.k
    omega = ctx.omega
    Pinv = from_fraction(DensePoly.const(1, p), ctx.Pk, n_terms)
    word: list[DensePoly] = []
    ws: list[int] = []
    prev_w = None
    for i in range(1, 2 * k):
        vi = ctx.v[i - 1]
        delta = (-omega * vi) % p if prev_w is None else (-omega * vi + omega * omega * prev_w) % p
        tail = _tail_series(ctx, i + 1, n_terms)
        tail_p = tail.frobenius_pow(p)
        X = Pinv * tail_p.inverse(n_terms)
        letters, xprime = splice_step(ctx.A1.scale(vi), delta, X, ctx)
        word.extend(letters)
        wi = inv(delta, p)
        ws.append(wi)
        expected = Pinv * tail_p + from_fraction(ctx.Qk.scale(omega * omega * wi), ctx.Pk, n_terms)
        if not xprime.agrees_with(expected):
            raise InvariantViolation(f"splice continuation mismatch at step {i}")
        prev_w = wi
    word.append(ctx.A1.scale(ctx.v[-1]))
    return tuple(word), tuple(ws)


# -- the A and B sequences ---------------------------------------------------

def u_degree(p: int, k: int, n: int) -> int:
    return (p ** n * (p - 2 * k - 1) + 2 * k) // (p - 1)


def v_degree(p: int, k: int, n: int) -> int:
    return (p ** n * (p - 2 * k + 1) + 2 * k * (-1) ** n) // (p + 1)


def closed_degree(p: int, k: int, kind: str, n: int) -> int:
    return u_degree(p, k, n) if kind == "A" else v_degree(p, k, n)


@lru_cache(maxsize=None)
def _a_poly(p: int, k: int, n: int) -> DensePoly:
    ctx = make_context(p, k)
    if n == 0:
        return ctx.T
    return divrem(dilate(_a_poly(p, k, n - 1), p), ctx.Pk)[0]


@lru_cache(maxsize=None)
def _b_poly(p: int, k: int, n: int) -> DensePoly:
    ctx = make_context(p, k)
    if n == 0:
        return ctx.T
    if n == 1:
        return ctx.A1
    prev = dilate(_b_poly(p, k, n - 1), p)
    if n % 2 == 0:
        return prev * ctx.Pk
    q, r = divrem(prev, ctx.Pk)
    if not r.is_zero():
        raise InvariantViolation(f"B_{n - 1}^p is not divisible by P_k")
    return q


def ab_element(ctx: PkContext, kind: str, n: int) -> ABElement:
    if kind not in ("A", "B"):
        raise DomainError(f"kind must be 'A' or 'B', got {kind!r}")
    if n < 0:
        raise DomainError("index must be nonnegative")
    poly = (_a_poly if kind == "A" else _b_poly)(ctx.p, ctx.k, n)
    deg = int(poly.degree)
    if deg != closed_degree(ctx.p, ctx.k, kind, n):
        raise InvariantViolation(f"deg {kind}_{n} = {deg} disagrees with the closed form")
    return ABElement(kind, n, poly, deg)


def proportional(f: DensePoly, g: DensePoly) -> int | None:
    """lambda with f = lambda g, or None."""
    if f.is_zero() or g.is_zero() or f.degree != g.degree:
        return None
    lam = f.lead * inv(g.lead, f.p) % f.p
    return lam if f == g.scale(lam) else None


def classify(ctx: PkContext, f: DensePoly, kind: str) -> Classification | None:
    """(lambda, n) with f = lambda A_n (or B_n), preferring the smallest n."""
    if f.is_zero():
        raise DomainError("cannot classify the zero polynomial")
    p, k = ctx.p, ctx.k
    d = int(f.degree)
    if kind == "A" and p - 2 * k - 1 == 0:
        candidates = [0] if d == 1 else []
        lam = proportional(f, ctx.T) if candidates else None
        return Classification(lam, 0, ambiguous=True) if lam is not None else None
    candidates = []
    n = 0
    while True:
        dn = closed_degree(p, k, kind, n)
        if dn == d:
            candidates.append(n)
        if dn > d and n >= 1:
            break
        n += 1
    found = []
    for n in candidates:
        lam = proportional(f, ab_element(ctx, kind, n).poly)
        if lam is not None:
            found.append((lam, n))
    if not found:
        return None
    lam, n = found[0]
    return Classification(lam, n, ambiguous=len(candidates) > 1)
