"""Truncated Laurent series in 1/T over F_p.

A :class:`LaurentSeries` stores the coefficients of ``T^top, T^(top-1), ...``
in descending order together with ``floor``: every exponent ``<= floor`` is
unknown.  ``floor is None`` marks an exact (finite) series.  Reading an unknown
coefficient raises :class:`PrecisionError`; nothing is ever padded with silent
zeros.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, HenselError, PrecisionError, SingularityError
from .modular_poly import (
    NEG_INF,
    DensePoly,
    XPoly,
    convolve,
    inv,
    is_power_of,
    series_inverse,
)


def _min_floor(a: int | None, b: int | None) -> int | None:
    """Combined floor of a sum: the larger (less precise) of the two."""
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


class LaurentSeries:
    __slots__ = ("p", "top", "coeffs", "floor")

    def __init__(self, p: int, top: int | None, coeffs, floor: int | None):
        arr = np.asarray(coeffs, dtype=np.int64) % p
        if top is None:
            arr = arr[:0]
        else:
            if floor is not None:
                arr = arr[: max(0, top - floor)]
            nz = np.flatnonzero(arr)
            if len(nz) == 0:
                top, arr = None, arr[:0]
            else:
                top -= int(nz[0])
                arr = arr[nz[0]:]
                if floor is None:
                    arr = arr[: np.flatnonzero(arr)[-1] + 1]
                elif len(arr) < top - floor:
                    arr = np.pad(arr, (0, top - floor - len(arr)))
        arr.setflags(write=False)
        self.p = p
        self.top = top
        self.coeffs = arr
        self.floor = floor

    # -- constructors --------------------------------------------------------
    @classmethod
    def from_poly(cls, f: DensePoly) -> "LaurentSeries":
        if f.is_zero():
            return cls(f.p, None, (), None)
        return cls(f.p, int(f.degree), f.coeffs[::-1], None)

    @classmethod
    def zero(cls, p: int, floor: int | None = None) -> "LaurentSeries":
        return cls(p, None, (), floor)

    @classmethod
    def monomial(cls, c: int, e: int, p: int) -> "LaurentSeries":
        return cls(p, e, (c,), None)

    # -- properties -----------------------------------------------------------
    @property
    def is_exact(self) -> bool:
        return self.floor is None

    @property
    def precision(self) -> int | float:
        """Number of known coefficients counted from the leading one."""
        if self.floor is None:
            return math.inf
        if self.top is None:
            return 0
        return self.top - self.floor

    @property
    def valuation(self) -> int | float:
        """Degree of the leading term (the exponent i0 with |a| = |T|^i0)."""
        if self.top is not None:
            return self.top
        if self.floor is None:
            return NEG_INF
        raise PrecisionError(f"series is zero to precision T^{self.floor}; valuation unknown")

    def is_zero_to_precision(self) -> bool:
        return self.top is None

    @property
    def lead(self) -> int:
        return int(self.coeffs[0]) if self.top is not None else 0

    def coefficient(self, e: int) -> int:
        if self.floor is not None and e <= self.floor:
            raise PrecisionError(f"coefficient of T^{e} lies below the known window (floor {self.floor})")
        if self.top is None or e > self.top:
            return 0
        i = self.top - e
        return int(self.coeffs[i]) if i < len(self.coeffs) else 0

    def _window(self, floor: int) -> np.ndarray:
        """Coefficients for exponents top..floor+1 (zero padded when exact)."""
        n = self.top - floor
        arr = self.coeffs[:n]
        if len(arr) < n:
            arr = np.pad(arr, (0, n - len(arr)))
        return arr

    # -- arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            if other.p != self.p:
                raise DomainError("mixing series over different fields")
            return other
        if isinstance(other, DensePoly):
            return LaurentSeries.from_poly(other)
        if isinstance(other, (int, np.integer)):
            return LaurentSeries.from_poly(DensePoly.const(int(other), self.p))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        floor = _min_floor(self.floor, other.floor)
        if self.top is None and other.top is None:
            return LaurentSeries(self.p, None, (), floor)
        top = max(t for t in (self.top, other.top) if t is not None)
        if floor is None:
            lows = [s.top - len(s.coeffs) for s in (self, other) if s.top is not None]
            low = min(lows)
        else:
            low = floor
        if top <= low:
            return LaurentSeries(self.p, None, (), floor)
        out = np.zeros(top - low, dtype=np.int64)
        for s in (self, other):
            if s.top is None:
                continue
            start = top - s.top
            if start >= len(out):
                continue
            seg = s.coeffs[: len(out) - start]
            out[start: start + len(seg)] += seg
        return LaurentSeries(self.p, top, out, floor)

    __radd__ = __add__

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries(self.p, self.top, -self.coeffs, self.floor)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def mul(self, other, floor: int | None = None) -> "LaurentSeries":
        """Product, optionally discarding every exponent ``<= floor``."""
        other = self._coerce(other)
        if self.top is None or other.top is None:
            fl = None
            for a, b in ((self, other), (other, self)):
                if a.top is None and a.floor is not None:
                    cand = a.floor + (b.top if b.top is not None else a.floor)
                    fl = cand if fl is None else max(fl, cand)
            if fl is None and (self.floor is not None or other.floor is not None):
                fl = (self.floor or 0) + (other.floor or 0)
            return LaurentSeries(self.p, None, (), _min_floor(fl, floor))
        top = self.top + other.top
        rel = min(self.precision, other.precision)
        res_floor = None if rel == math.inf else top - int(rel)
        res_floor = _min_floor(res_floor, floor)
        n = None if res_floor is None else top - res_floor
        if n is not None and n <= 0:
            return LaurentSeries(self.p, None, (), res_floor)
        prod = convolve(self.coeffs, other.coeffs, self.p, n)
        return LaurentSeries(self.p, top, prod, res_floor)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return LaurentSeries(self.p, self.top, self.coeffs * (int(other) % self.p), self.floor)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.mul(other)

    __rmul__ = __mul__

    def inverse(self, n_terms: int | None = None) -> "LaurentSeries":
        """1/self.  Exact multi-term series need an explicit ``n_terms``."""
        if self.top is None:
            raise DomainError("cannot invert a series that is zero to precision")
        if self.floor is None:
            if len(self.coeffs) == 1:
                return LaurentSeries(self.p, -self.top, [inv(self.lead, self.p)], None)
            if n_terms is None:
                raise PrecisionError("inverse of a non-monomial exact series needs n_terms")
            n = n_terms
        else:
            n = int(self.precision) if n_terms is None else min(n_terms, int(self.precision))
        u = self._window(self.top - n) if self.floor is None else self.coeffs[:n]
        w = series_inverse(u, n, self.p)
        return LaurentSeries(self.p, -self.top, w, -self.top - n)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_exact and other.top is not None and len(other.coeffs) > 1:
            if self.is_exact:
                raise PrecisionError("exact / exact series division needs a precision; use from_fraction")
            need = int(self.precision) if self.top is not None else 1
            return self * other.inverse(need)
        return self * other.inverse()

    def truncate(self, floor: int) -> "LaurentSeries":
        """Forget every coefficient at exponent ``<= floor``."""
        return LaurentSeries(self.p, self.top, self.coeffs, _min_floor(self.floor, floor))

    def with_precision(self, n_terms: int) -> "LaurentSeries":
        if self.top is None:
            raise PrecisionError("series is zero to precision")
        return self.truncate(self.top - n_terms)

    def exactify(self) -> "LaurentSeries":
        """Treat the known window as an exact Laurent polynomial."""
        return LaurentSeries(self.p, self.top, self.coeffs, None)

    def frobenius_pow(self, r: int) -> "LaurentSeries":
        return frobenius_pow(self, r)

    def polynomial_part(self) -> DensePoly:
        return polynomial_part(self)

    def agrees_with(self, other: "LaurentSeries") -> bool:
        """True when both series coincide on their shared known window."""
        return (self - other).top is None

    def to_fraction(self) -> tuple[DensePoly, DensePoly]:
        """Known window as an exact fraction ``num / T**s`` with s >= 0."""
        if self.top is None:
            return DensePoly.zero(self.p), DensePoly.const(1, self.p)
        low = self.top - len(self.coeffs) + 1
        s = max(0, -low)
        asc = self.coeffs[::-1]
        num = np.zeros(self.top + s + 1, dtype=np.int64)
        num[low + s:] = asc
        return DensePoly(num, self.p), DensePoly.monomial(1, s, self.p)

    def dump(self) -> str:
        if self.top is None:
            return "0"
        return f"T^{self.top}: {[int(c) for c in self.coeffs]}"

    def __repr__(self) -> str:
        tail = "" if self.floor is None else f" + O(T^{self.floor})"
        return f"LaurentSeries({self.dump()}{tail}, p={self.p})"


def from_fraction(num: DensePoly, den: DensePoly, n_terms: int) -> LaurentSeries:
    """Series of num/den with ``n_terms`` known coefficients.

    The result is exact when ``den`` is a monomial.
    """
    if den.is_zero():
        raise DomainError("zero denominator")
    p = num.p
    if num.is_zero():
        return LaurentSeries.zero(p)
    if np.count_nonzero(den.coeffs) == 1:
        c = inv(den.lead, p)
        s = LaurentSeries.from_poly(num.scale(c))
        return LaurentSeries(p, s.top - int(den.degree), s.coeffs, None)
    top = int(num.degree) - int(den.degree)
    w = series_inverse(den.coeffs[::-1], n_terms, p)
    coeffs = convolve(num.coeffs[::-1], w, p, n_terms)
    return LaurentSeries(p, top, coeffs, top - n_terms)


def frobenius_pow(alpha: LaurentSeries, r: int) -> LaurentSeries:
    """alpha**r for r a power of p, by exponent dilation."""
    p = alpha.p
    if not is_power_of(r, p):
        raise DomainError(f"r={r} is not a power of p={p}")
    if r == 1:
        return alpha
    floor = None if alpha.floor is None else alpha.floor * r
    if alpha.top is None:
        return LaurentSeries(p, None, (), floor)
    out = np.zeros((len(alpha.coeffs) - 1) * r + 1, dtype=np.int64)
    out[::r] = alpha.coeffs
    if floor is not None:
        out = np.pad(out, (0, max(0, alpha.top * r - floor - len(out))))
    return LaurentSeries(p, alpha.top * r, out, floor)


def polynomial_part(alpha: LaurentSeries) -> DensePoly:
    """Sum of the terms with nonnegative exponent."""
    if alpha.floor is not None and alpha.floor >= 0:
        raise PrecisionError(f"exponent 0 is not inside the known window (floor {alpha.floor})")
    if alpha.top is None or alpha.top < 0:
        return DensePoly.zero(alpha.p)
    head = alpha.coeffs[: alpha.top + 1]
    return DensePoly(head[::-1], alpha.p)


# -- polynomial equations over the series field --------------------------------

def _power_digits(x: LaurentSeries, e: int, floor: int | None) -> LaurentSeries:
    """x**e, built from Frobenius dilations of x along the base-p digits of e."""
    p = x.p
    factors = []
    scale = 1
    while e:
        e, digit = divmod(e, p)
        if digit:
            factors.extend([frobenius_pow(x, scale)] * digit)
        scale *= p
    if not factors:
        return LaurentSeries.monomial(1, 0, p)
    # exponents of the factors still to come shift the floor a partial product needs
    rest = [0] * len(factors)
    for i in range(len(factors) - 2, -1, -1):
        rest[i] = rest[i + 1] + (factors[i + 1].top or 0)
    result = factors[0]
    for i in range(1, len(factors)):
        need = None if floor is None else floor - rest[i]
        result = result.mul(factors[i], need)
    return result


def eval_xpoly(f: XPoly, x: LaurentSeries, floor: int | None = None) -> LaurentSeries:
    """f(x) as a series, discarding exponents ``<= floor`` when given."""
    p = f.p
    total = LaurentSeries.zero(p)
    if floor is not None:
        total = total.truncate(floor)
    for e, c in f.terms.items():
        need = None if floor is None else floor - int(c.degree)
        if e == 0:
            term = LaurentSeries.from_poly(c)
        else:
            xe = _power_digits(x, e, need)
            term = xe.mul(c, floor)
        total = total + term
    if floor is not None:
        total = total.truncate(floor)
    return total


@dataclass(frozen=True)
class HenselCertificate:
    residual_floor: int
    derivative_valuation: int
    root_floor: int
    iterations: int


def _contraction_ok(f: XPoly, xtop: int, h_val: int, dval: int) -> bool:
    """Newton map is a contraction on |h| <= |T|^h_val around x.

    Checks |f^[j](x)| |h|^(j-1) < |f'(x)| for every Hasse derivative j >= 2,
    bounding |f^[j](x)| termwise.
    """
    p = f.p
    for e, c in f.terms.items():
        for j in range(2, e + 1):
            if math.comb(e, j) % p == 0:
                continue
            if int(c.degree) + (e - j) * xtop + (j - 1) * h_val >= dval:
                return False
    return True


def hensel_root(f: XPoly, seed: LaurentSeries, n_terms: int,
                max_iterations: int = 200) -> LaurentSeries:
    """Root of ``f`` near ``seed`` with ``n_terms`` certified coefficients.

    Newton iteration with precision doubling.  The result is certified by a
    residual check: once f(x) vanishes to a known floor and the Newton map is a
    contraction on the corresponding disc, the unique root lies within that
    disc, so every coefficient above it is exact.
    """
    root, _ = hensel_root_certified(f, seed, n_terms, max_iterations)
    return root


def hensel_root_certified(f: XPoly, seed: LaurentSeries, n_terms: int,
                          max_iterations: int = 200) -> tuple[LaurentSeries, HenselCertificate]:
    if seed.top is None:
        raise DomainError("seed is zero to precision")
    p = f.p
    df = f.derivative()
    top = seed.top
    x = seed.exactify()

    # Hensel condition at the seed
    fpx = eval_xpoly(df, seed)
    if fpx.top is None:
        raise SingularityError("f'(seed) vanishes to working precision")
    dval = fpx.top
    fx0 = eval_xpoly(f, seed)
    fval = fx0.top if fx0.top is not None else fx0.floor
    if fval is None:
        fval = NEG_INF
    if not fval < 2 * dval:
        raise HenselError(f"val f(seed)={fval} is not below 2*val f'(seed)={2 * dval}")

    target = top - n_terms
    # precision ladder from coarse to fine
    ladder = [target]
    while top - ladder[-1] > 16:
        ladder.append(top - (top - ladder[-1]) // 2)
    ladder.reverse()

    iterations = 0
    for level, work_floor in enumerate(ladder):
        final = level == len(ladder) - 1
        while True:
            iterations += 1
            if iterations > max_iterations:
                raise HenselError("Newton iteration did not converge")
            fx = eval_xpoly(f, x, work_floor + dval)
            if fx.top is None:
                break
            need = fx.top - dval - work_floor
            if need <= 0:
                break
            dfx = eval_xpoly(df, x, dval - need)
            if dfx.top is None or dfx.top != dval:
                raise SingularityError("derivative valuation changed during iteration")
            corr = fx.mul(dfx.inverse(need), work_floor)
            x = (x - corr).truncate(work_floor).exactify()
            if not final:
                break

    res_floor = target + dval
    fx = eval_xpoly(f, x, res_floor)
    if fx.top is not None:
        raise HenselError("residual did not vanish at the requested precision")
    dfx = eval_xpoly(df, x, dval - 1)
    if dfx.top != dval:
        raise SingularityError("derivative valuation changed during iteration")
    h_val = res_floor - dval
    if not _contraction_ok(f, int(x.top), h_val, dval):
        raise HenselError("Newton map is not contracting around the computed point")
    root = x.truncate(target)
    if fval != NEG_INF:
        # the root must stay inside the Hensel disc of the seed
        floors = [fl for fl in (fval - dval, root.floor, seed.floor) if fl is not None]
        if (root - seed).truncate(max(floors)).top is not None:
            raise HenselError("root left the Hensel disc of the seed")
    cert = HenselCertificate(res_floor, dval, target, iterations)
    return root, cert
