"""The quartic (9/32)X^4 - T X^3 + X^2 - 8/27 = 0: its special P_k-expansion
data Lambda_0(p), the divisibility of the expansion equation by the quartic,
and the expansion of its root by two independent routes."""
from __future__ import annotations

from dataclasses import dataclass

from .contfrac import bracket, scalar_action
from .errors import DomainError, InvariantViolation
from .hyper import (
    Expansion,
    PkExpansionSpec,
    build_equation,
    check_h1,
    check_h2,
    expand,
    expand_equation,
)
from .laurent import LaurentSeries
from .modular_poly import DensePoly, XPoly, check_odd_prime, frac, inv
from .pk import make_context, word_w1, word_w2


@dataclass(frozen=True)
class Lambda0:
    p: int
    case: str  # "one-mod-3" or "two-mod-3"
    k: int
    r: int
    l: int
    eps: int
    spec: PkExpansionSpec

    @property
    def kind(self) -> str:
        return self.spec.kind

    @property
    def meta(self):
        """l for the first kind, the gap tuple for the second."""
        if self.case == "one-mod-3":
            return self.l
        pos = self.spec.positions
        return (pos[0] - 1,) + tuple(b - a - 1 for a, b in zip(pos, pos[1:]))


def _check_p(p: int) -> int:
    p = check_odd_prime(p)
    if p <= 3:
        raise DomainError("the quartic needs p > 3")
    return p


def quartic_xpoly(p: int) -> XPoly:
    """A(X) = (9/32)X^4 - T X^3 + X^2 - 8/27."""
    p = _check_p(p)
    T = DensePoly.t(p)
    return XPoly({
        4: DensePoly.const(frac(9, 32, p), p),
        3: -T,
        2: DensePoly.const(1, p),
        0: DensePoly.const(-frac(8, 27, p), p),
    }, p)


def build_lambda0(p: int) -> Lambda0:
    p = _check_p(p)
    if p % 3 == 1:
        k = (p - 1) // 3
        ctx = make_context(p, k)
        v, omega = ctx.v, ctx.omega
        r, l = p, (p - 1) // 2
        h = k // 2
        eps = frac(32, 9 * v[h], p)
        hat = word_w1(ctx)[h:]
        tail = list(v[h:2 * k - 1]) + [frac(3 * v[2 * k - 1], 5, p)]
        b = bracket(tail, p)
        if b is None:
            raise InvariantViolation("the bracket defining eps_2 is undefined")
        eps2 = (-eps * omega * b) % p
        kind, positions = "first", None
    else:
        k = (p + 1) // 3
        ctx = make_context(p, k)
        v, w, omega = ctx.v, ctx.w, ctx.omega
        r, l = p * p, 3 * k * k
        wk = w[k // 2 - 1]
        ws = wk if (k // 2) % 2 == 0 else inv(wk, p)
        eps = frac(32, 9 * ws * v[3 * k // 2], p)
        w2 = word_w2(ctx)
        hat = w2[k * k:]
        if hat[0] != ctx.T.scale(ws * v[3 * k // 2]):
            raise InvariantViolation("b_{k^2+1} is not w_{k/2}^(+-1) v_{3k/2+1} T")
        b = bracket(v[3 * k // 2:], p)
        if b is None:
            raise InvariantViolation("the bracket defining eps_2 is undefined")
        eps2 = (-eps * omega * ws * b) % p
        kind = "second"
        positions = tuple(i * (2 * k + 1) - 3 * k // 2 for i in range(1, 3 * k // 2 + 1))
    if len(hat) != l:
        raise InvariantViolation(f"B(p) has {len(hat)} letters, expected l={l}")
    initial = scalar_action(eps, hat)
    sign = 1 if (l + 1) % 2 == 0 else -1
    eps1 = (-eps2 * inv(omega * omega, p) * (eps if sign == 1 else inv(eps, p))) % p
    spec = PkExpansionSpec(ctx, kind, initial, eps1, eps2, positions)
    if initial[0] != ctx.T.scale(frac(32, 9, p)):
        raise InvariantViolation("first letter is not (32/9)T")
    rep = check_h1(spec) if kind == "first" else check_h2(spec)
    if not rep.satisfied:
        raise InvariantViolation(f"Lambda_0({p}) fails its hypothesis: {rep.message}")
    case = "one-mod-3" if kind == "first" else "two-mod-3"
    return Lambda0(p, case, k, r, l, eps, spec)


@dataclass
class DivisibilityReport:
    p: int
    divisible: bool
    deg_u: int
    deg_v: int
    expected_u: int
    expected_v: int

    @property
    def degrees_ok(self) -> bool:
        return self.deg_u == self.expected_u and self.deg_v == self.expected_v

    @property
    def ok(self) -> bool:
        return self.divisible and self.degrees_ok


def check_divisibility(p: int) -> DivisibilityReport:
    lam = build_lambda0(p)
    H = build_equation(lam.spec)
    A = quartic_xpoly(p)
    monic = A * DensePoly.const(frac(32, 9, p), p)
    _, rem = H.divrem_monic(monic)
    k = lam.k
    if lam.case == "one-mod-3":
        eu, ev = k // 2, k // 2 - 1
    else:
        eu = 3 * k * k // 2 - k
        ev = eu - 1
    return DivisibilityReport(p, rem.is_zero(), int(H.coeff(1).degree),
                              int(H.coeff(0).degree), eu, ev)


def _quartic_seed(p: int, n_terms: int) -> LaurentSeries:
    return LaurentSeries.monomial(frac(32, 9, p), 1, p)


def expand_quartic(p: int, count: int, cap: int | None = None) -> Expansion:
    """Expansion of the root of A directly, independent of Lambda_0."""
    A = quartic_xpoly(p)
    return expand_equation(A, lambda n: _quartic_seed(p, n), count, 64, cap)


def expand_alpha(p: int, count: int, cap: int | None = None,
                 cross_check: bool = True) -> Expansion:
    """alpha(p) to ``count`` letters via Lambda_0, checked against the quartic root."""
    lam = build_lambda0(p)
    exp = expand(lam.spec, count, cap)
    if cross_check:
        other = expand_quartic(p, count, cap)
        n = min(exp.certified, other.certified)
        if exp.word[:n] != other.word[:n]:
            bad = next(i for i in range(n) if exp.word[i] != other.word[i])
            raise InvariantViolation(f"the two routes disagree at letter {bad + 1}")
        exp.notes.append(f"quartic route agrees on {n} letters")
    return exp
